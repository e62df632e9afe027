"""Pure-Python traversal kernels over CSR adjacency.

Reference implementation for `gnutellab.kernels`; `_speedups.pyx` mirrors
these semantics exactly.  Graphs are passed as a CSR pair (indptr, indices)
of int32 numpy arrays describing an undirected adjacency (each edge stored
in both directions).
"""

from collections import deque

import numpy as np

BACKEND = "python"


def bfs_distances(indptr, indices, source):
    """Hop distances from `source` to every node; -1 where unreachable."""
    n = len(indptr) - 1
    ptr = indptr.tolist()
    adj = indices.tolist()
    dist = [-1] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for k in range(ptr[u], ptr[u + 1]):
            v = adj[k]
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return np.asarray(dist, dtype=np.int32)


def distance_histogram(indptr, indices, sources):
    """BFS from each source, tallying how many nodes sit at each distance.

    Returns (counts, unreachable): counts[d] is the number of (source,
    target) pairs at distance d >= 1; targets unreachable from a source
    each contribute 1 to `unreachable`.  Sources never count themselves.
    """
    n = len(indptr) - 1
    ptr = indptr.tolist()
    adj = indices.tolist()
    counts = [0] * (n + 1)
    unreachable = 0
    dist = [-1] * n
    for s in sources:
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        reached = 1
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for k in range(ptr[u], ptr[u + 1]):
                v = adj[k]
                if dist[v] < 0:
                    dist[v] = du
                    counts[du] += 1
                    reached += 1
                    queue.append(v)
        unreachable += n - reached
    last = 0
    for d in range(n + 1):
        if counts[d]:
            last = d
    return np.asarray(counts[: last + 1], dtype=np.int64), unreachable


def component_labels(indptr, indices):
    """Connected-component label per node, numbered by smallest member."""
    n = len(indptr) - 1
    ptr = indptr.tolist()
    adj = indices.tolist()
    labels = [-1] * n
    current = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = current
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for k in range(ptr[u], ptr[u + 1]):
                v = adj[k]
                if labels[v] < 0:
                    labels[v] = current
                    queue.append(v)
        current += 1
    return np.asarray(labels, dtype=np.int32)
