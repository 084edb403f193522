"""Immutable undirected graphs in compressed adjacency form, plus the
structural queries every other module builds on: edge-list ingestion,
connected components, cluster degree, hub/periphery classification, and
spectral radius estimation.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra


class ParseError(ValueError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ConvergenceError(RuntimeError):
    """Power iteration did not converge; ``estimate`` holds the last value."""

    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph stored as sorted compressed adjacency.

    ``indptr`` has length ``node_count + 1``; the neighbors of node ``u`` are
    ``indices[indptr[u]:indptr[u+1]]``, sorted ascending.  ``labels`` maps
    internal ids back to the external tokens of the source file (``None``
    for generated graphs, whose labels are the decimal ids).  Instances are
    immutable after construction and safe to share across workers.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...] | None = None
    _label_index: dict[str, int] | None = field(default=None, repr=False)

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr).astype(np.int64)

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return i < len(row) and row[i] == v

    def node_label(self, u: int) -> str:
        return self.labels[u] if self.labels is not None else str(u)

    def resolve_label(self, token: str) -> int:
        """Internal id for an external label (or decimal id if unlabeled)."""
        if self.labels is None:
            u = int(token)
            if not 0 <= u < self.node_count:
                raise ValueError(f"node id {token} out of range")
            return u
        index = self._label_index
        if index is None:
            index = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_label_index", index)
        try:
            return index[token]
        except KeyError:
            raise ValueError(f"unknown node label {token!r}") from None

    def edges(self) -> Iterable[tuple[int, int]]:
        """Yield each undirected edge once, as (u, v) with u < v, sorted."""
        for u in range(self.node_count):
            for v in self.neighbors(u):
                if u < v:
                    yield u, int(v)

    def to_scipy(self) -> csr_matrix:
        data = np.ones(len(self.indices), dtype=np.float64)
        n = self.node_count
        return csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def validate(self) -> None:
        """Check the structural invariants; raises ValueError on violation."""
        n = self.node_count
        if self.indptr[0] != 0 or self.indptr[-1] != len(self.indices):
            raise ValueError("corrupt index pointer")
        if np.any(np.diff(self.indptr) < 0):
            raise ValueError("index pointer not monotone")
        if len(self.indices) and (self.indices.min() < 0 or self.indices.max() >= n):
            raise ValueError("neighbor id out of range")
        for u in range(n):
            row = self.neighbors(u)
            if np.any(np.diff(row) <= 0):
                raise ValueError(f"adjacency of node {u} unsorted or duplicated")
            if np.any(row == u):
                raise ValueError(f"self-loop at node {u}")
            for v in row:
                if not self.has_edge(int(v), u):
                    raise ValueError(f"asymmetric edge ({u}, {v})")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("label map size mismatch")

    @staticmethod
    def from_edges(edges: Iterable[tuple[int, int]], node_count: int,
                   labels: Sequence[str] | None = None) -> "Graph":
        """Build a graph from unique undirected edges (u != v, any order)."""
        pairs = np.asarray(list(edges), dtype=np.int64)
        if pairs.size == 0:
            src = np.empty(0, dtype=np.int64)
            dst = np.empty(0, dtype=np.int32)
        else:
            src = np.concatenate([pairs[:, 0], pairs[:, 1]])
            dst = np.concatenate([pairs[:, 1], pairs[:, 0]]).astype(np.int32)
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(node_count + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        indices = np.ascontiguousarray(dst)
        indptr.flags.writeable = False
        indices.flags.writeable = False
        return Graph(indptr, indices,
                     tuple(labels) if labels is not None else None)


@dataclass(frozen=True)
class PeripheryReport:
    """Hub set, hop distances to the nearest hub, and the resulting periphery.

    ``hop_distance`` is a float array with ``inf`` for nodes unreachable from
    every hub; such nodes count as peripheral.
    """

    hub_set: np.ndarray
    hop_distance: np.ndarray
    peripheral_set: np.ndarray
    hub_fraction: float
    min_hops: int


def as_node_set(nodes: Iterable[int], node_count: int) -> np.ndarray:
    """Normalize to a sorted array of distinct valid node ids."""
    arr = np.unique(np.asarray(list(nodes), dtype=np.int64))
    if arr.size and (arr[0] < 0 or arr[-1] >= node_count):
        raise ValueError("node id out of range")
    return arr


def load_edge_list(source, *, collapse_duplicates: bool = True,
                   drop_self_loops: bool = True,
                   ignore_extra_columns: bool = True) -> Graph:
    """Parse a whitespace-separated edge list into a :class:`Graph`.

    ``source`` may be a path, a string of text, an open file, or an iterable
    of lines.  Lines starting with ``#`` or ``%`` are comments; blank lines
    are skipped.  Node tokens become external labels; internal ids follow
    first appearance.  With the default options duplicate edges collapse,
    self-loops drop, and trailing columns (weights, signs) are discarded.
    """
    if isinstance(source, (str, Path)) and "\n" not in str(source):
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    elif isinstance(source, str):
        lines = source.splitlines()
    elif isinstance(source, io.IOBase):
        lines = source.read().splitlines()
    else:
        lines = [str(line).rstrip("\n") for line in source]

    label_to_id: dict[str, int] = {}
    labels: list[str] = []
    edge_set: set[tuple[int, int]] = set()

    def intern(token: str) -> int:
        node = label_to_id.get(token)
        if node is None:
            node = len(labels)
            label_to_id[token] = node
            labels.append(token)
        return node

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise ParseError("expected at least 2 tokens", lineno)
        if len(tokens) > 2 and not ignore_extra_columns:
            raise ParseError(f"unexpected extra columns ({len(tokens)} tokens)",
                             lineno)
        u, v = intern(tokens[0]), intern(tokens[1])
        if u == v:
            if drop_self_loops:
                continue
            raise ParseError(f"self-loop at {tokens[0]!r}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in edge_set:
            if collapse_duplicates:
                continue
            raise ParseError(f"duplicate edge {tokens[0]} {tokens[1]}", lineno)
        edge_set.add(key)

    if not edge_set:
        raise ParseError("no edges")
    return Graph.from_edges(sorted(edge_set), len(labels), labels)


def write_edge_list(g: Graph, path: str | Path) -> None:
    """Write the canonical form: sorted ``u v`` lines with internal ids,
    plus a ``<path>.labels`` sidecar mapping ``id<TAB>original_label``."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")
    with Path(str(path) + ".labels").open("w", encoding="utf-8") as fh:
        for u in range(g.node_count):
            fh.write(f"{u}\t{g.node_label(u)}\n")


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component, relabeled to 0..k-1.

    Ties on size go to the component containing the smallest internal id
    (ids follow first appearance of the original labels, so this is
    deterministic).  Label maps compose.
    """
    n = g.node_count
    if n == 0:
        return g
    _, comp = connected_components(g.to_scipy(), directed=False)
    sizes = np.bincount(comp)
    best_size = sizes.max()
    # np.argmax on the per-node mask finds the smallest member id among
    # maximum-size components, which identifies the winning component.
    winner = comp[int(np.argmax(sizes[comp] == best_size))]
    keep = np.flatnonzero(comp == winner)
    remap = -np.ones(n, dtype=np.int64)
    remap[keep] = np.arange(len(keep))
    edges = [(remap[u], remap[v]) for u, v in g.edges()
             if remap[u] >= 0 and remap[v] >= 0]
    labels = None
    if g.labels is not None:
        labels = [g.labels[u] for u in keep]
    return Graph.from_edges(edges, len(keep), labels)


def cluster_degree(g: Graph, cluster: Iterable[int]) -> int:
    """Number of edges from nodes inside ``cluster`` to nodes outside it."""
    members = as_node_set(cluster, g.node_count)
    if members.size == 0:
        raise ValueError("cluster must be nonempty")
    inside = np.zeros(g.node_count, dtype=bool)
    inside[members] = True
    total = 0
    internal_ends = 0
    for u in members:
        row = g.neighbors(int(u))
        total += len(row)
        internal_ends += int(inside[row].sum())
    return total - internal_ends


def classify_periphery(g: Graph, hub_fraction: float = 0.6,
                       min_hops: int = 3) -> PeripheryReport:
    """Hubs are nodes with degree strictly greater than ``hub_fraction``
    times the maximum degree; peripheral nodes sit at least ``min_hops``
    hops from every hub (unreachable counts as peripheral)."""
    if g.node_count == 0:
        raise ValueError("empty graph")
    if not 0 < hub_fraction <= 1:
        raise ValueError("hub_fraction must be in (0, 1]")
    if min_hops < 0:
        raise ValueError("min_hops must be >= 0")
    degrees = g.degrees
    threshold = hub_fraction * degrees.max()
    hubs = np.flatnonzero(degrees > threshold).astype(np.int64)
    if hubs.size:
        hops = dijkstra(g.to_scipy(), directed=False, unweighted=True,
                        indices=hubs, min_only=True)
    else:
        hops = np.full(g.node_count, np.inf)
    peripheral = np.flatnonzero(hops >= min_hops).astype(np.int64)
    return PeripheryReport(hub_set=hubs, hop_distance=hops,
                           peripheral_set=peripheral,
                           hub_fraction=hub_fraction, min_hops=min_hops)


def largest_eigenvalue(g: Graph, tol: float = 1e-10,
                       max_iter: int = 10**5) -> float:
    """Spectral radius of the adjacency matrix by power iteration.

    Iterates on A + I (which defeats the +/- oscillation on bipartite
    graphs) starting from the normalized degree vector, and reports the
    Rayleigh quotient of A once successive estimates change by less than
    ``tol``.
    """
    if g.node_count == 0 or g.edge_count == 0:
        raise ValueError("graph must have at least one edge")
    a = g.to_scipy()
    v = g.degrees.astype(np.float64)
    v /= np.linalg.norm(v)
    previous = math.inf
    for _ in range(max_iter):
        av = a @ v
        estimate = float(v @ av)
        if abs(estimate - previous) < tol:
            return estimate
        previous = estimate
        w = av + v
        v = w / np.linalg.norm(w)
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} iterations "
        f"(last estimate {previous})", previous)


def density(g: Graph) -> float:
    """Edges divided by the number of possible edges n(n-1)/2."""
    n = g.node_count
    if n < 2:
        raise ValueError("density requires at least 2 nodes")
    return g.edge_count / (n * (n - 1) / 2)
