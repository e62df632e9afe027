"""Synthetic overlay generators and label assignment.

Two topology families: preferential attachment (pure power-law degree
structure) and a multi-modal configuration model whose histogram is nearly
flat below a knee degree and power-law above it, matching what crawls of
mature file-sharing overlays show.  All generators are deterministic for a
fixed seed.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .graph import GraphError, NodeInfo, OverlayGraph


def _fresh_node_info(i: int) -> NodeInfo:
    return NodeInfo(address=f"10.{(i >> 16) & 255}.{(i >> 8) & 255}.{i & 255}", port=6346)


def generate_preferential_attachment(n: int, m: int, seed: int = 0) -> OverlayGraph:
    """Growth model: each new node attaches m edges biased by current degree.

    Starts from m unconnected nodes; the first arrival links to all of them,
    so the result is always connected.  m=1 yields a tree.
    """
    if m < 1:
        raise GraphError("m must be >= 1")
    if n <= m:
        raise GraphError("n must exceed m")
    rng = random.Random(seed)
    g = OverlayGraph()
    for i in range(n):
        g.add_node(_fresh_node_info(i))

    # endpoints of existing edges; sampling uniformly from this list is
    # sampling nodes proportionally to degree
    repeated: list[int] = []
    targets = list(range(m))
    node = m
    while node < n:
        for t in targets:
            g.add_edge(node, t)
            repeated.append(node)
            repeated.append(t)
        picked: set[int] = set()
        while len(picked) < m:
            picked.add(rng.choice(repeated))
        targets = sorted(picked)
        node += 1
    return g


def _tail_weights(knee: int, tail_exponent: float, max_degree: int) -> list[float]:
    return [d ** (-tail_exponent) for d in range(knee, max_degree + 1)]


def _multimodal_mean(knee: int, tail_exponent: float, max_degree: int, head_weight: float) -> float:
    head_mean = knee / 2  # mean of 1..knee-1
    weights = _tail_weights(knee, tail_exponent, max_degree)
    tail_mean = sum(d * w for d, w in zip(range(knee, max_degree + 1), weights)) / sum(weights)
    return head_weight * head_mean + (1 - head_weight) * tail_mean


def generate_multimodal(
    n: int,
    knee: int,
    tail_exponent: float,
    avg_connections: float,
    seed: int = 0,
    max_degree: int | None = None,
) -> OverlayGraph:
    """Configuration-model overlay with a flat head and power-law tail.

    Degrees below `knee` are drawn uniformly; degrees in [knee, max_degree]
    are drawn proportionally to d^-tail_exponent.  The head/tail mixture is
    solved so that edge_count / node_count targets `avg_connections`.  Stub
    pairs forming self-loops or duplicate edges are rejected and re-paired;
    an odd stub total is fixed by incrementing one node's degree.

    `max_degree` defaults to 3*knee, mirroring the connection limits real
    servents run with; an uncapped tail would collapse pairwise distances
    far below anything observed on deployed overlays.
    """
    if knee < 2:
        raise GraphError("knee must be >= 2")
    if tail_exponent <= 1:
        raise GraphError("tail_exponent must exceed 1")
    if max_degree is None:
        max_degree = min(n - 1, 3 * knee)
    if max_degree < knee:
        raise GraphError("max_degree must be >= knee")

    target_mean = 2 * avg_connections
    head_mean = knee / 2
    lo = _multimodal_mean(knee, tail_exponent, max_degree, 1.0)  # all head
    hi = _multimodal_mean(knee, tail_exponent, max_degree, 0.0)  # all tail
    if not (min(lo, hi) <= target_mean <= max(lo, hi)):
        raise GraphError(
            f"avg_connections {avg_connections} unreachable: mean degree must lie in "
            f"[{min(lo, hi) / 2:.2f}, {max(lo, hi) / 2:.2f}] connections per node"
        )
    tail_mean = hi
    head_weight = (tail_mean - target_mean) / (tail_mean - head_mean)

    rng = random.Random(seed)
    tail_degrees = list(range(knee, max_degree + 1))
    tail_w = _tail_weights(knee, tail_exponent, max_degree)

    degrees = []
    for _ in range(n):
        if rng.random() < head_weight:
            degrees.append(rng.randint(1, knee - 1))
        else:
            degrees.append(rng.choices(tail_degrees, weights=tail_w)[0])
    if sum(degrees) % 2:
        i = rng.randrange(n)
        while degrees[i] >= max_degree:
            i = rng.randrange(n)
        degrees[i] += 1

    g = OverlayGraph()
    for i in range(n):
        g.add_node(_fresh_node_info(i))

    stubs: list[int] = []
    for node, d in enumerate(degrees):
        stubs.extend([node] * d)
    # pair stubs; rejected pairs go back into the pool for a bounded number
    # of reshuffle rounds, leftovers are dropped
    for _ in range(20):
        if len(stubs) < 2:
            break
        rng.shuffle(stubs)
        rejected: list[int] = []
        for i in range(0, len(stubs) - 1, 2):
            a, b = stubs[i], stubs[i + 1]
            if a == b or g.has_edge(a, b):
                rejected.append(a)
                rejected.append(b)
            else:
                g.add_edge(a, b)
        if len(stubs) % 2:
            rejected.append(stubs[-1])
        if len(rejected) == len(stubs):
            break
        stubs = rejected
    return g


# -- label assignment --------------------------------------------------------


@dataclass(frozen=True)
class IndependentLabels:
    """Draw every node's domain and AS i.i.d. from fixed distributions."""

    domain_dist: dict[str, float]
    as_dist: dict[str, float]


@dataclass(frozen=True)
class TopologyCorrelatedLabels:
    """One domain/AS per breadth-first territory of ~locality*n nodes."""

    locality: float


def _check_distribution(dist: dict[str, float], what: str) -> None:
    if not dist:
        raise GraphError(f"empty {what} distribution")
    total = sum(dist.values())
    if abs(total - 1.0) > 1e-9:
        raise GraphError(f"{what} distribution sums to {total}, expected 1")


def assign_labels(graph: OverlayGraph, scheme, seed: int = 0) -> None:
    """Attach domain/AS labels to every node in place, per the scheme."""
    rng = random.Random(seed)
    if isinstance(scheme, IndependentLabels):
        _check_distribution(scheme.domain_dist, "domain")
        _check_distribution(scheme.as_dist, "AS")
        domains = sorted(scheme.domain_dist)
        d_weights = [scheme.domain_dist[d] for d in domains]
        ases = sorted(scheme.as_dist)
        a_weights = [scheme.as_dist[a] for a in ases]
        nodes = sorted(graph.nodes())
        d_picks = rng.choices(domains, weights=d_weights, k=len(nodes))
        a_picks = rng.choices(ases, weights=a_weights, k=len(nodes))
        for node, dom, asn in zip(nodes, d_picks, a_picks):
            graph.relabel(node, domain=dom, as_label=asn)
    elif isinstance(scheme, TopologyCorrelatedLabels):
        # territories are carved deterministically from the topology, so the
        # seed plays no role here
        if not 0 < scheme.locality <= 1:
            raise GraphError("locality must be in (0, 1]")
        from collections import deque

        territory = max(1, round(scheme.locality * graph.node_count))
        unvisited = set(graph.nodes())
        group = 0
        for seed_node in sorted(graph.nodes()):
            if seed_node not in unvisited:
                continue
            members = []
            queue = deque([seed_node])
            unvisited.discard(seed_node)
            while queue and len(members) < territory:
                node = queue.popleft()
                members.append(node)
                for nb in sorted(graph.neighbors(node)):
                    if nb in unvisited:
                        unvisited.discard(nb)
                        queue.append(nb)
            # nodes pulled into the queue but not placed go back to the pool
            unvisited.update(queue)
            for node in members:
                graph.relabel(node, domain=f"d{group}.local", as_label=f"AS{group}")
            group += 1
    else:
        raise GraphError(f"unknown labelling scheme {scheme!r}")


def uniform_distribution(prefix: str, count: int) -> dict[str, float]:
    """Equal-mass label distribution dom0..dom{count-1}."""
    if count < 1:
        raise GraphError("count must be >= 1")
    return {f"{prefix}{i}": 1.0 / count for i in range(count)}


def top_heavy_distribution(
    prefix: str, total: int, top_count: int, top_mass: float
) -> dict[str, float]:
    """`top_count` labels share `top_mass`, the rest share the remainder."""
    if not 0 < top_mass < 1 or top_count >= total:
        raise GraphError("need 0 < top_mass < 1 and top_count < total")
    dist = {}
    for i in range(total):
        if i < top_count:
            dist[f"{prefix}{i}"] = top_mass / top_count
        else:
            dist[f"{prefix}{i}"] = (1 - top_mass) / (total - top_count)
    return dist
