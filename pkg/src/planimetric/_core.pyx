# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: grid Dijkstra and closed-polyline simplicity test.

Signatures and results match :mod:`planimetric._fallback` exactly.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef inline void _push(double* keys, Py_ssize_t* nodes, Py_ssize_t* size,
                       double key, Py_ssize_t node) noexcept nogil:
    cdef Py_ssize_t i = size[0]
    cdef Py_ssize_t parent
    size[0] += 1
    while i > 0:
        parent = (i - 1) >> 1
        if keys[parent] <= key:
            break
        keys[i] = keys[parent]
        nodes[i] = nodes[parent]
        i = parent
    keys[i] = key
    nodes[i] = node


cdef inline void _pop(double* keys, Py_ssize_t* nodes, Py_ssize_t* size,
                      double* key_out, Py_ssize_t* node_out) noexcept nogil:
    cdef Py_ssize_t n, i, child
    cdef double last_key
    cdef Py_ssize_t last_node
    key_out[0] = keys[0]
    node_out[0] = nodes[0]
    size[0] -= 1
    n = size[0]
    if n == 0:
        return
    last_key = keys[n]
    last_node = nodes[n]
    i = 0
    while True:
        child = 2 * i + 1
        if child >= n:
            break
        if child + 1 < n and keys[child + 1] < keys[child]:
            child += 1
        if keys[child] >= last_key:
            break
        keys[i] = keys[child]
        nodes[i] = nodes[child]
        i = child
    keys[i] = last_key
    nodes[i] = last_node


def dijkstra_grid(double[:, :, ::1] weights, long[:, ::1] offsets,
                  Py_ssize_t start, long[::1] targets):
    """Single-source shortest paths on an implicit 2-D grid graph.

    ``weights[i, j, k]`` is the cost of the edge from node ``(i, j)`` to
    ``(i + offsets[k, 0], j + offsets[k, 1])``; non-finite entries are absent
    edges. Nodes are numbered row-major. Stops once every target is settled.
    Returns ``(dist, pred)`` flat arrays; unreachable nodes keep ``inf``/-1.
    """
    cdef Py_ssize_t nx = weights.shape[0], ny = weights.shape[1]
    cdef Py_ssize_t nk = weights.shape[2], n = nx * ny
    cdef Py_ssize_t ntarget = targets.shape[0]
    dist_arr = np.full(n, np.inf)
    pred_arr = np.full(n, -1, dtype=np.int64)
    cdef double[::1] dist = dist_arr
    cdef cnp.int64_t[::1] pred = pred_arr
    cdef unsigned char[::1] done = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] is_target = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t remaining = 0, t, k, u, v, ui, uj, vi, vj
    cdef double du, w, alt
    cdef Py_ssize_t cap = n * nk + 1, size = 0
    cdef double* keys = <double*> malloc(cap * sizeof(double))
    cdef Py_ssize_t* nodes = <Py_ssize_t*> malloc(cap * sizeof(Py_ssize_t))
    if keys == NULL or nodes == NULL:
        free(keys)
        free(nodes)
        raise MemoryError()
    for t in range(ntarget):
        if not is_target[targets[t]]:
            is_target[targets[t]] = 1
            remaining += 1
    try:
        with nogil:
            dist[start] = 0.0
            _push(keys, nodes, &size, 0.0, start)
            while size > 0:
                _pop(keys, nodes, &size, &du, &u)
                if done[u]:
                    continue
                done[u] = 1
                if is_target[u]:
                    remaining -= 1
                    if remaining == 0:
                        break
                ui = u // ny
                uj = u - ui * ny
                for k in range(nk):
                    w = weights[ui, uj, k]
                    if not (w < INFINITY):
                        continue
                    vi = ui + offsets[k, 0]
                    vj = uj + offsets[k, 1]
                    if vi < 0 or vi >= nx or vj < 0 or vj >= ny:
                        continue
                    v = vi * ny + vj
                    if done[v]:
                        continue
                    alt = du + w
                    if alt < dist[v]:
                        dist[v] = alt
                        pred[v] = u
                        _push(keys, nodes, &size, alt, v)
    finally:
        free(keys)
        free(nodes)
    return dist_arr, pred_arr


cdef inline double _orient(double ax, double ay, double bx, double by,
                           double cx, double cy) noexcept nogil:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def closed_polyline_is_simple(double[::1] x, double[::1] y):
    """True iff no two non-adjacent edges of the closed loop intersect."""
    cdef Py_ssize_t n = x.shape[0], i, j, i1, j1
    cdef double o1, o2, o3, o4
    cdef bint simple = True
    with nogil:
        for i in range(n):
            i1 = (i + 1) % n
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                j1 = (j + 1) % n
                o1 = _orient(x[i], y[i], x[i1], y[i1], x[j], y[j])
                o2 = _orient(x[i], y[i], x[i1], y[i1], x[j1], y[j1])
                if (o1 > 0 and o2 > 0) or (o1 < 0 and o2 < 0):
                    continue
                o3 = _orient(x[j], y[j], x[j1], y[j1], x[i], y[i])
                o4 = _orient(x[j], y[j], x[j1], y[j1], x[i1], y[i1])
                if (o3 > 0 and o4 > 0) or (o3 < 0 and o4 < 0):
                    continue
                simple = False
                break
            if not simple:
                break
    return simple
