# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled traversal kernels; semantics match gnutellab._pure exactly."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def bfs_distances(indptr, indices, source):
    """Hop distances from `source` to every node; -1 where unreachable."""
    cdef cnp.int32_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int32)
    cdef cnp.int32_t[::1] adj = np.ascontiguousarray(indices, dtype=np.int32)
    cdef Py_ssize_t n = ptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0
    cdef cnp.int32_t u, v, du
    cdef Py_ssize_t k
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u] + 1
        for k in range(ptr[u], ptr[u + 1]):
            v = adj[k]
            if dist[v] < 0:
                dist[v] = du
                queue[tail] = v
                tail += 1
    return dist_arr


def distance_histogram(indptr, indices, sources):
    """BFS from each source, tallying how many nodes sit at each distance.

    Returns (counts, unreachable): counts[d] is the number of (source,
    target) pairs at distance d >= 1; targets unreachable from a source
    each contribute 1 to `unreachable`.  Sources never count themselves.
    """
    cdef cnp.int32_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int32)
    cdef cnp.int32_t[::1] adj = np.ascontiguousarray(indices, dtype=np.int32)
    cdef cnp.int32_t[::1] srcs = np.ascontiguousarray(sources, dtype=np.int32)
    cdef Py_ssize_t n = ptr.shape[0] - 1
    counts_arr = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] counts = counts_arr
    dist_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef long long unreachable = 0, reached
    cdef Py_ssize_t head, tail, i, k, si
    cdef cnp.int32_t s, u, v, du
    for si in range(srcs.shape[0]):
        s = srcs[si]
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        reached = 1
        head = 0
        tail = 0
        queue[tail] = s
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u] + 1
            for k in range(ptr[u], ptr[u + 1]):
                v = adj[k]
                if dist[v] < 0:
                    dist[v] = du
                    counts[du] += 1
                    reached += 1
                    queue[tail] = v
                    tail += 1
        unreachable += n - reached
    cdef Py_ssize_t last = 0
    for i in range(n + 1):
        if counts[i]:
            last = i
    return counts_arr[: last + 1], int(unreachable)


def component_labels(indptr, indices):
    """Connected-component label per node, numbered by smallest member."""
    cdef cnp.int32_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int32)
    cdef cnp.int32_t[::1] adj = np.ascontiguousarray(indices, dtype=np.int32)
    cdef Py_ssize_t n = ptr.shape[0] - 1
    labels_arr = np.full(n, -1, dtype=np.int32)
    cdef cnp.int32_t[::1] labels = labels_arr
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef Py_ssize_t head, tail, k, start
    cdef cnp.int32_t u, v, current = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = current
        head = 0
        tail = 0
        queue[tail] = start
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(ptr[u], ptr[u + 1]):
                v = adj[k]
                if labels[v] < 0:
                    labels[v] = current
                    queue[tail] = v
                    tail += 1
        current += 1
    return labels_arr
