"""Spreading-power analytics for networks.

Computes the expected infected-cluster degree (expected reach) of network
nodes, generates Chung-Lu scale-free substrates, and validates the metric
with SI, SIS, and competitive-spreading simulations plus a reproducible
experiment harness.  Hot loops run in a compiled extension when available,
with a pure-Python twin selected automatically at import.
"""

from ._engine import COMPILED
from .generate import WeightSeq, chung_lu, pareto_weights, pipeline_graph
from .graph import (Graph, ParseError, PeripheryReport, classify_periphery,
                    cluster_degree, density, largest_connected_component,
                    largest_eigenvalue, load_edge_list, write_edge_list)
from .reach import (ErResult, EwValue, ReachComputer, accessibility,
                    expected_reach, expected_reach_mc, expected_wait,
                    quantize_ew)
from .rngstream import RngStream
from .simulate import (CompetitiveOutcome, CompetitiveSimulator, SiOutcome,
                       SiSimulator, SisOutcome, SisSimulator,
                       epidemic_potential, simulate_competitive, simulate_si,
                       simulate_sis)

__version__ = "0.1.0"

__all__ = [
    "COMPILED", "CompetitiveOutcome", "CompetitiveSimulator", "ErResult",
    "EwValue", "Graph", "ParseError", "PeripheryReport", "ReachComputer",
    "RngStream", "SiOutcome", "SiSimulator", "SisOutcome", "SisSimulator",
    "WeightSeq", "accessibility", "chung_lu", "classify_periphery",
    "cluster_degree", "density", "epidemic_potential", "expected_reach",
    "expected_reach_mc", "expected_wait", "largest_connected_component",
    "largest_eigenvalue", "load_edge_list", "pareto_weights",
    "pipeline_graph", "quantize_ew", "simulate_competitive", "simulate_si",
    "simulate_sis", "write_edge_list", "__version__",
]
