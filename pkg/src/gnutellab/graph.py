"""Overlay graph: node/edge bookkeeping, structural metrics, and file I/O.

Nodes are dense integer ids carrying per-servent metadata (address, port,
domain, autonomous system, shared-content counters).  Edges are unordered
pairs modelling open connections between servents.  Metric helpers are pure
and operate on an immutable view of the graph; heavy traversals run on the
compiled kernels when available.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels


class GraphError(Exception):
    """Base error for graph construction and file problems."""


class UnknownNodeError(GraphError):
    pass


class GraphFormatError(GraphError):
    """Parse failure; carries the 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class NodeInfo:
    """Per-servent metadata as reported over the membership protocol.

    `kbytes_shared` is the shared space in kilobytes, matching the unit the
    graph file format and PONG payloads use.
    """

    address: str = ""
    port: int = 6346
    domain: str = ""
    as_label: str = ""
    files_shared: int = 0
    kbytes_shared: int = 0

    def __post_init__(self):
        if self.files_shared < 0 or self.kbytes_shared < 0:
            raise GraphError("shared-content counters must be non-negative")

    @property
    def endpoint(self) -> str:
        """address:port identity, stable across crawls."""
        return f"{self.address}:{self.port}"


class OverlayGraph:
    """Undirected overlay of servents; no self-loops, no duplicate edges."""

    def __init__(self):
        self._adj: dict[int, set[int]] = {}
        self._info: dict[int, NodeInfo] = {}
        self._next_id = 0
        self._edge_count = 0

    # -- mutation ---------------------------------------------------------

    def add_node(self, info: NodeInfo | None = None) -> int:
        node = self._next_id
        self._next_id += 1
        self._adj[node] = set()
        self._info[node] = info if info is not None else NodeInfo(address=f"n{node}")
        return node

    def add_node_with_id(self, node: int, info: NodeInfo) -> int:
        """Insert a node under an explicit id (file loading, snapshots)."""
        if node < 0:
            raise GraphError(f"negative node id {node}")
        if node in self._adj:
            raise GraphError(f"duplicate node id {node}")
        self._adj[node] = set()
        self._info[node] = info
        self._next_id = max(self._next_id, node + 1)
        return node

    def remove_node(self, node: int) -> None:
        self._require(node)
        for other in list(self._adj[node]):
            self._adj[other].discard(node)
            self._edge_count -= 1
        del self._adj[node]
        del self._info[node]

    def add_edge(self, a: int, b: int) -> bool:
        """Add an undirected edge; returns False when it already exists."""
        self._require(a)
        self._require(b)
        if a == b:
            raise GraphError(f"self-loop on node {a}")
        if b in self._adj[a]:
            return False
        self._adj[a].add(b)
        self._adj[b].add(a)
        self._edge_count += 1
        return True

    def remove_edge(self, a: int, b: int) -> None:
        self._require(a)
        self._require(b)
        if b not in self._adj[a]:
            raise GraphError(f"no edge {a}-{b}")
        self._adj[a].discard(b)
        self._adj[b].discard(a)
        self._edge_count -= 1

    def set_info(self, node: int, info: NodeInfo) -> None:
        self._require(node)
        self._info[node] = info

    def relabel(self, node: int, domain: str | None = None, as_label: str | None = None) -> None:
        info = self.info(node)
        if domain is not None:
            info = replace(info, domain=domain)
        if as_label is not None:
            info = replace(info, as_label=as_label)
        self._info[node] = info

    # -- access -----------------------------------------------------------

    def _require(self, node: int) -> None:
        if node not in self._adj:
            raise UnknownNodeError(f"unknown node id {node}")

    def __contains__(self, node: int) -> bool:
        return node in self._adj

    def nodes(self):
        return self._adj.keys()

    def edges(self):
        for a, nbrs in self._adj.items():
            for b in nbrs:
                if a < b:
                    yield a, b

    def neighbors(self, node: int) -> frozenset[int]:
        self._require(node)
        return frozenset(self._adj[node])

    def has_edge(self, a: int, b: int) -> bool:
        return a in self._adj and b in self._adj[a]

    def degree(self, node: int) -> int:
        self._require(node)
        return len(self._adj[node])

    def info(self, node: int) -> NodeInfo:
        self._require(node)
        return self._info[node]

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def copy(self) -> "OverlayGraph":
        g = OverlayGraph()
        g._adj = {n: set(nbrs) for n, nbrs in self._adj.items()}
        g._info = dict(self._info)
        g._next_id = self._next_id
        g._edge_count = self._edge_count
        return g

    def to_csr(self):
        """CSR adjacency over nodes sorted by id: (indptr, indices, order)."""
        order = sorted(self._adj)
        index = {n: i for i, n in enumerate(order)}
        indptr = np.zeros(len(order) + 1, dtype=np.int32)
        for i, n in enumerate(order):
            indptr[i + 1] = indptr[i] + len(self._adj[n])
        indices = np.empty(int(indptr[-1]), dtype=np.int32)
        pos = 0
        for n in order:
            for m in sorted(self._adj[n]):
                indices[pos] = index[m]
                pos += 1
        return indptr, indices, order


# -- distributions ---------------------------------------------------------


@dataclass
class DegreeDistribution:
    """Histogram degree -> number of nodes with exactly that many links."""

    counts: dict[int, int]

    @property
    def total_nodes(self) -> int:
        return sum(self.counts.values())

    @property
    def total_degree(self) -> int:
        return sum(d * c for d, c in self.counts.items())

    def normalized(self) -> dict[int, float]:
        total = self.total_nodes
        if total == 0:
            return {}
        return {d: c / total for d, c in sorted(self.counts.items())}


@dataclass
class PathLengthDistribution:
    """Histogram of pairwise shortest-path hop counts.

    When `sampled` is False the histogram covers every unordered node pair;
    otherwise it covers `sample_size` (source, target) pairs reached by BFS
    from uniformly drawn sources.
    """

    counts: dict[int, int]
    unreachable_pairs: int
    sampled: bool
    sample_size: int

    @property
    def total_pairs(self) -> int:
        return sum(self.counts.values())

    @property
    def max_distance(self) -> int:
        return max(self.counts) if self.counts else 0

    def pct(self, q: float) -> int:
        """Smallest distance d such that a fraction >= q of reachable pairs
        lie within d hops."""
        if not 0 < q <= 1:
            raise ValueError("q must be in (0, 1]")
        total = self.total_pairs
        if total == 0:
            raise GraphError("no reachable pairs")
        acc = 0
        for d in sorted(self.counts):
            acc += self.counts[d]
            if acc >= q * total:
                return d
        return self.max_distance


# -- metrics ----------------------------------------------------------------


def connected_components(graph: OverlayGraph) -> list[set[int]]:
    """Node sets of each component, largest first; ties by smallest id."""
    if graph.node_count == 0:
        return []
    indptr, indices, order = graph.to_csr()
    labels = kernels.component_labels(indptr, indices)
    comps: dict[int, set[int]] = {}
    for idx, lab in enumerate(labels):
        comps.setdefault(int(lab), set()).add(order[idx])
    return sorted(comps.values(), key=lambda s: (-len(s), min(s)))


def largest_component_fraction(graph: OverlayGraph) -> float:
    comps = connected_components(graph)
    if not comps:
        return 0.0
    return len(comps[0]) / graph.node_count


def degree_distribution(graph: OverlayGraph) -> DegreeDistribution:
    counts = Counter(len(graph._adj[n]) for n in graph.nodes())
    return DegreeDistribution(dict(counts))


def average_connections_per_node(graph: OverlayGraph) -> float:
    """Connections per node as edge_count / node_count.

    This is the crawl-report convention (170,000 connections over 50,000
    nodes reads as 3.4); see `mean_degree` for the 2E/N variant.
    """
    if graph.node_count == 0:
        raise GraphError("empty graph")
    return graph.edge_count / graph.node_count


def mean_degree(graph: OverlayGraph) -> float:
    """Average number of incident links per node (2E/N)."""
    if graph.node_count == 0:
        raise GraphError("empty graph")
    return 2 * graph.edge_count / graph.node_count


EXACT_MODE_LIMIT = 2000
DEFAULT_SAMPLE_SOURCES = 1000


def path_length_distribution(
    graph: OverlayGraph,
    mode: str = "auto",
    sources: int = DEFAULT_SAMPLE_SOURCES,
    seed: int = 0,
) -> PathLengthDistribution:
    """Shortest-path histogram, exact (all pairs) or sampled (BFS sources).

    mode "auto" picks exact below 2,000 nodes.  Sampled mode draws distinct
    BFS sources with the given seed and counts every (source, target) pair.
    """
    n = graph.node_count
    if mode not in ("auto", "exact", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "auto":
        mode = "exact" if n < EXACT_MODE_LIMIT else "sampled"
    if n < 2:
        return PathLengthDistribution({}, 0, mode == "sampled", 0)

    indptr, indices, order = graph.to_csr()
    if mode == "exact":
        src = np.arange(n, dtype=np.int32)
        hist, unreachable = kernels.distance_histogram(indptr, indices, src)
        counts = {d: int(c) // 2 for d, c in enumerate(hist) if d > 0 and c}
        return PathLengthDistribution(counts, unreachable // 2, False, n * (n - 1) // 2)

    if sources < 1:
        raise ValueError("sampled mode requires at least one source")
    k = min(sources, n)
    rng = random.Random(seed)
    src = np.asarray(sorted(rng.sample(range(n), k)), dtype=np.int32)
    hist, unreachable = kernels.distance_histogram(indptr, indices, src)
    counts = {d: int(c) for d, c in enumerate(hist) if d > 0 and c}
    return PathLengthDistribution(counts, unreachable, True, k * (n - 1))


def bfs_distances(graph: OverlayGraph, source: int) -> dict[int, int]:
    """Hop distance from source to every reachable node."""
    graph._require(source)
    indptr, indices, order = graph.to_csr()
    index = {n: i for i, n in enumerate(order)}
    dist = kernels.bfs_distances(indptr, indices, index[source])
    return {order[i]: int(d) for i, d in enumerate(dist) if d >= 0}


# -- file format -------------------------------------------------------------

_EMPTY_FIELD = "-"


def _dump_field(value: str) -> str:
    if value == "":
        return _EMPTY_FIELD
    if any(ch.isspace() for ch in value):
        raise GraphError(f"field {value!r} contains whitespace")
    return value


def _load_field(token: str) -> str:
    return "" if token == _EMPTY_FIELD else token


def save_graph(graph: OverlayGraph, path) -> None:
    """Write the line-oriented graph file (see README for the format)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# gnutellab graph: {graph.node_count} nodes, {graph.edge_count} edges\n")
        for node in sorted(graph.nodes()):
            info = graph.info(node)
            fh.write(
                "node {} {} {} {} {} {} {}\n".format(
                    node,
                    _dump_field(info.address),
                    info.port,
                    _dump_field(info.domain),
                    _dump_field(info.as_label),
                    info.files_shared,
                    info.kbytes_shared,
                )
            )
        for a, b in sorted(graph.edges()):
            fh.write(f"edge {a} {b}\n")


def load_graph(path) -> OverlayGraph:
    """Parse a graph file; raises GraphFormatError with the offending line."""
    graph = OverlayGraph()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            kind = parts[0]
            if kind == "node":
                if len(parts) != 8:
                    raise GraphFormatError(
                        f"expected 'node <id> <address> <port> <domain> <as> <files> <kbytes>', got {line!r}",
                        lineno,
                    )
                try:
                    node = int(parts[1])
                    info = NodeInfo(
                        address=_load_field(parts[2]),
                        port=int(parts[3]),
                        domain=_load_field(parts[4]),
                        as_label=_load_field(parts[5]),
                        files_shared=int(parts[6]),
                        kbytes_shared=int(parts[7]),
                    )
                except (ValueError, GraphError) as exc:
                    raise GraphFormatError(str(exc), lineno) from exc
                try:
                    graph.add_node_with_id(node, info)
                except GraphError as exc:
                    raise GraphFormatError(str(exc), lineno) from exc
            elif kind == "edge":
                if len(parts) != 3:
                    raise GraphFormatError(f"expected 'edge <id1> <id2>', got {line!r}", lineno)
                try:
                    a, b = int(parts[1]), int(parts[2])
                except ValueError as exc:
                    raise GraphFormatError(str(exc), lineno) from exc
                if a not in graph or b not in graph:
                    raise GraphFormatError(f"edge {a} {b} references an undeclared node", lineno)
                try:
                    graph.add_edge(a, b)
                except GraphError as exc:
                    raise GraphFormatError(str(exc), lineno) from exc
            else:
                raise GraphFormatError(f"unknown record {kind!r}", lineno)
    return graph


def graphs_equal(a: OverlayGraph, b: OverlayGraph) -> bool:
    """Node sets, edge sets, and node metadata all match."""
    if set(a.nodes()) != set(b.nodes()):
        return False
    if set(a.edges()) != set(b.edges()):
        return False
    return all(a.info(n) == b.info(n) for n in a.nodes())
