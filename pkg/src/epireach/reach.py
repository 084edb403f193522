"""Spreading-power metrics: expected reach (expected infected-cluster
degree), its Monte Carlo oracle, expected-wait quantization, and the
random-walk accessibility baseline.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from ._engine import kernels
from .graph import Graph
from .rngstream import RngStream

MODES = ("process", "sequence_uniform", "cluster_uniform")

#: enumeration beyond this depth grows factorially and is refused
DEFAULT_X_MAX = 5
#: depth at which a cost warning is emitted
_WARN_DEPTH = 3


@dataclass(frozen=True)
class ErResult:
    """One node's expected reach with enumeration metadata.

    value is the mean terminal cluster degree after ``x`` infection events
    under the chosen weighting mode; ``branches_explored`` counts infection
    sequences (leaves of the expansion), ``truncated_branches`` those that
    absorbed their whole component before depth ``x``.
    """

    seed: int
    x: int
    mode: str
    value: float
    distinct_clusters: int
    branches_explored: int
    truncated_branches: int


@dataclass(frozen=True)
class EwValue:
    """Expected wait: raw = beta / reach, and the hundredth-truncated
    inverse reach used for binning (beta-independent)."""

    raw: float
    quantized: float
    beta: float


def quantize_ew(er: float, bins_per_unit: int = 100) -> float:
    """Truncate 1/er down to the next lower 1/bins_per_unit."""
    if er <= 0:
        raise ValueError("expected reach must be positive")
    return math.floor(bins_per_unit / er) / bins_per_unit


def ew_bin_index(er: float, bins_per_unit: int = 100) -> int:
    """Integer bin key: quantized value = key / bins_per_unit."""
    if er <= 0:
        raise ValueError("expected reach must be positive")
    return math.floor(bins_per_unit / er)


def expected_wait(er: float, beta: float = 1.0) -> EwValue:
    """Inverse-scale a reach value into the expected wait before the next
    infection; the quantized field applies hundredth truncation to 1/er."""
    if er <= 0:
        raise ValueError("expected reach must be positive")
    if beta <= 0:
        raise ValueError("beta must be positive")
    return EwValue(raw=beta / er, quantized=quantize_ew(er), beta=beta)


class ReachComputer:
    """Reusable enumeration workspace for one graph.

    Prefer this over repeated :func:`expected_reach` calls when evaluating
    many nodes; the per-graph buffers are reused across calls.  Not safe for
    concurrent use from multiple threads; use one instance per worker.
    """

    def __init__(self, g: Graph, x_max: int = DEFAULT_X_MAX):
        if x_max > 60:
            raise ValueError("x_max cannot exceed 60 (kernel member buffer)")
        self.graph = g
        self.x_max = x_max
        self._engine = kernels.ReachEngine(g.indptr, g.indices)

    def expected_reach(self, seed: int, x: int, mode: str = "process") -> ErResult:
        g = self.graph
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
        if not 0 <= seed < g.node_count:
            raise ValueError(f"seed {seed} out of range")
        if x < 0 or x > self.x_max:
            raise ValueError(f"x={x} outside [0, {self.x_max}]")
        if x > _WARN_DEPTH:
            warnings.warn(f"enumeration depth {x} grows factorially; "
                          f"expect long runtimes", stacklevel=2)
        deg = g.degree(seed)
        if x == 0:
            return ErResult(seed, x, mode, float(deg), 1, 1, 0)
        if x == 1:
            if deg == 0:
                return ErResult(seed, x, mode, 0.0, 1, 1, 1)
            # closed form, exact in one division: mean over neighbors j of
            # deg(seed) + deg(j) - 2
            total = sum(deg + g.degree(int(j)) - 2 for j in g.neighbors(seed))
            return ErResult(seed, x, mode, total / deg, deg, deg, 0)
        (sum_process, sum_sequence, leaves, truncated,
         distinct, distinct_sum) = self._engine.enumerate(seed, x, True)
        if mode == "process":
            value = sum_process  # branch weights sum to 1
        elif mode == "sequence_uniform":
            value = sum_sequence / leaves
        else:
            value = distinct_sum / distinct
        return ErResult(seed, x, mode, value, distinct, leaves, truncated)

    def value(self, seed: int, x: int, mode: str = "process") -> float:
        """Reach value only, skipping distinct-set bookkeeping when the
        mode does not need it (the batch path used by the harness)."""
        if mode == "cluster_uniform" or x <= 1:
            return self.expected_reach(seed, x, mode).value
        if not 0 <= seed < self.graph.node_count:
            raise ValueError(f"seed {seed} out of range")
        sum_process, sum_sequence, leaves, *_ = self._engine.enumerate(
            seed, x, False)
        return sum_process if mode == "process" else sum_sequence / leaves

    def monte_carlo(self, seed: int, x: int, runs: int,
                    rng: RngStream) -> tuple[float, float]:
        if runs < 1:
            raise ValueError("runs must be >= 1")
        if not 0 <= seed < self.graph.node_count:
            raise ValueError(f"seed {seed} out of range")
        return self._engine.monte_carlo(seed, x, runs, rng.state())


def expected_reach(g: Graph, seed: int, x: int, mode: str = "process",
                   x_max: int = DEFAULT_X_MAX) -> ErResult:
    """Expected cluster degree after ``x`` infection events from ``seed``.

    Modes weight the enumerated infection orders differently: ``process``
    uses the susceptible-infected dynamics probability of each order (the
    default, and the expectation the simulators measure), ``sequence_uniform``
    weights every infection order equally, ``cluster_uniform`` counts every
    distinct terminal member set once.
    """
    return ReachComputer(g, x_max).expected_reach(seed, x, mode)


def expected_reach_mc(g: Graph, seed: int, x: int, runs: int,
                      rng: RngStream) -> tuple[float, float]:
    """Monte Carlo estimate of process-mode expected reach: simulates
    ``runs`` chains of exactly ``x`` infection events (next infection chosen
    proportionally to edges from the cluster) and returns the sample mean
    and standard error of the terminal cluster degree.  Chains that absorb
    their whole component early terminate with value 0."""
    return ReachComputer(g, x_max=max(x, DEFAULT_X_MAX)).monte_carlo(
        seed, x, runs, rng)


def accessibility(g: Graph, node: int, h: int = 3) -> float:
    """Exponential of the entropy of the ``h``-step simple-random-walk
    distribution started at ``node`` (uniform transition to neighbors)."""
    if h < 1:
        raise ValueError("h must be >= 1")
    if not 0 <= node < g.node_count:
        raise ValueError(f"node {node} out of range")
    if g.degree(node) == 0:
        raise ValueError(f"node {node} is isolated: no walks")
    prob = {node: 1.0}
    for _ in range(h):
        nxt: dict[int, float] = {}
        for u in sorted(prob):
            share = prob[u] / g.degree(u)
            for v in g.neighbors(u):
                v = int(v)
                nxt[v] = nxt.get(v, 0.0) + share
        prob = nxt
    entropy = 0.0
    for u in sorted(prob):
        p = prob[u]
        if p > 0.0:
            entropy -= p * math.log(p)
    return math.exp(entropy)
