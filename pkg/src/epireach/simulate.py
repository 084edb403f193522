"""The three spreading-process simulators: continuous-time SI run to a
coverage threshold, discrete-time SIS with unit recovery, and continuous-time
competitive two-strain spreading.

Each simulator is an exact event-driven (or synchronous) stochastic process
over an immutable :class:`~epireach.graph.Graph`; outcomes are bit-identical
for identical inputs and random streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._engine import kernels
from .graph import Graph
from .rngstream import RngStream

WINNER_HUMANS = "humans"
WINNER_ZOMBIES = "zombies"


@dataclass(frozen=True)
class SiOutcome:
    """One SI run: time to the coverage threshold (None when the seed's
    component was exhausted first), final infected count, infection events."""

    seed: int
    tthc: float | None
    final_infected: int
    events: int


@dataclass(frozen=True)
class SisOutcome:
    """One SIS run: whether the infection survived to the horizon, the
    iteration it died at otherwise, and the peak prevalence."""

    seed: int
    persisted: bool
    extinction_iteration: int | None
    max_prevalence: int


@dataclass(frozen=True)
class CompetitiveOutcome:
    """One competitive run; humans win exactly when no zombies remain."""

    winner: str
    final_zombies: int
    final_hunters: int
    final_susceptible: int
    final_removed: int
    elapsed: float


def _check_node(g: Graph, node: int, name: str = "seed") -> None:
    if not 0 <= node < g.node_count:
        raise ValueError(f"{name} {node} out of range")


class SiSimulator:
    """Reusable SI engine for one graph (one instance per worker)."""

    def __init__(self, g: Graph):
        self.graph = g
        self._engine = kernels.SiEngine(g.indptr, g.indices)

    def run(self, seed: int, beta: float, coverage_threshold: float = 0.5,
            rng: RngStream | None = None) -> SiOutcome:
        g = self.graph
        _check_node(g, seed)
        if beta <= 0:
            raise ValueError("beta must be positive")
        if not 0 < coverage_threshold <= 1:
            raise ValueError("coverage_threshold must be in (0, 1]")
        if rng is None:
            rng = RngStream(0)
        target = math.ceil(coverage_threshold * g.node_count)
        tthc, final, events = self._engine.run(seed, beta, target, rng.state())
        return SiOutcome(seed, None if math.isnan(tthc) else tthc,
                         final, events)


class SisSimulator:
    """Reusable SIS engine for one graph."""

    def __init__(self, g: Graph):
        self.graph = g
        self._engine = kernels.SisEngine(g.indptr, g.indices)

    def run(self, seed: int, beta: float, horizon: int = 50,
            rng: RngStream | None = None) -> SisOutcome:
        g = self.graph
        _check_node(g, seed)
        if not 0 <= beta <= 1:
            raise ValueError("beta must be in [0, 1]")
        if horizon < 1:
            raise ValueError("horizon must be >= 1")
        if rng is None:
            rng = RngStream(0)
        persisted, extinction, max_prev = self._engine.run(
            seed, beta, horizon, rng.state())
        return SisOutcome(seed, persisted,
                          None if extinction < 0 else extinction, max_prev)

    def potential(self, seed: int, beta: float, runs: int = 100,
                  horizon: int = 50, rng: RngStream | None = None) -> float:
        """Fraction of runs still alive at the horizon."""
        if runs < 1:
            raise ValueError("runs must be >= 1")
        if rng is None:
            rng = RngStream(0)
        alive = 0
        for i in range(runs):
            if self.run(seed, beta, horizon, rng.derive(i)).persisted:
                alive += 1
        return alive / runs


class CompetitiveSimulator:
    """Reusable competitive-spreading engine for one graph."""

    def __init__(self, g: Graph):
        self.graph = g
        self._engine = kernels.CompetitiveEngine(g.indptr, g.indices)

    def run(self, zombie_seed: int, hunter_seed: int, rate_z: float = 1.0,
            rate_h: float = 1.0, rate_clash: float = 1.0,
            rng: RngStream | None = None) -> CompetitiveOutcome:
        g = self.graph
        _check_node(g, zombie_seed, "zombie_seed")
        _check_node(g, hunter_seed, "hunter_seed")
        if zombie_seed == hunter_seed:
            raise ValueError("zombie and hunter seeds must differ")
        if min(rate_z, rate_h, rate_clash) <= 0:
            raise ValueError("rates must be positive")
        if rng is None:
            rng = RngStream(0)
        nz, nh, ns, nr, elapsed = self._engine.run(
            zombie_seed, hunter_seed, rate_z, rate_h, rate_clash, rng.state())
        winner = WINNER_ZOMBIES if nz > 0 else WINNER_HUMANS
        return CompetitiveOutcome(winner, nz, nh, ns, nr, elapsed)


def simulate_si(g: Graph, seed: int, beta: float,
                coverage_threshold: float = 0.5,
                rng: RngStream | None = None) -> SiOutcome:
    """Exact event-driven SI: waiting times are exponential in the total
    transmission rate beta times the infected-susceptible edge count, and the
    transmitting edge is uniform among those edges.  Stops at
    ceil(coverage_threshold * n) infected or on component exhaustion."""
    return SiSimulator(g).run(seed, beta, coverage_threshold, rng)


def simulate_sis(g: Graph, seed: int, beta: float, horizon: int = 50,
                 rng: RngStream | None = None) -> SisOutcome:
    """Synchronous discrete-time SIS with unit recovery: a susceptible node
    with k infected neighbors becomes infected next step with probability
    1 - (1-beta)**k; every infected node recovers after one step."""
    return SisSimulator(g).run(seed, beta, horizon, rng)


def epidemic_potential(g: Graph, seed: int, beta: float, runs: int = 100,
                       horizon: int = 50,
                       rng: RngStream | None = None) -> float:
    """Fraction of ``runs`` SIS epidemics from ``seed`` persisting to the
    horizon."""
    return SisSimulator(g).potential(seed, beta, runs, horizon, rng)


def simulate_competitive(g: Graph, zombie_seed: int, hunter_seed: int,
                         rate_z: float = 1.0, rate_h: float = 1.0,
                         rate_clash: float = 1.0,
                         rng: RngStream | None = None) -> CompetitiveOutcome:
    """Two hostile contagions in continuous time: zombie-susceptible edges
    convert at rate_z, hunter-susceptible edges at rate_h, and each
    zombie-hunter contact edge removes both endpoints at rate_clash.  Runs
    until no channel is active; humans win exactly when no zombies remain."""
    return CompetitiveSimulator(g).run(zombie_seed, hunter_seed, rate_z,
                                       rate_h, rate_clash, rng)
