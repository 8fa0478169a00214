"""Pure-Python versions of the compiled kernels in ``_core.pyx``."""
import heapq

import numpy as np


def dijkstra_grid(weights, offsets, start, targets):
    nx, ny, nk = weights.shape
    n = nx * ny
    dist = np.full(n, np.inf)
    pred = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    wlist = weights.reshape(n, nk).tolist()
    offs = [(int(a), int(b)) for a, b in np.asarray(offsets)]
    pending = {int(t) for t in targets}
    distl = [np.inf] * n
    distl[start] = 0.0
    heap = [(0.0, int(start))]
    while heap:
        du, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        pending.discard(u)
        if not pending:
            break
        ui, uj = divmod(u, ny)
        row = wlist[u]
        for k, (di, dj) in enumerate(offs):
            w = row[k]
            if not w < np.inf:
                continue
            vi, vj = ui + di, uj + dj
            if vi < 0 or vi >= nx or vj < 0 or vj >= ny:
                continue
            v = vi * ny + vj
            if done[v]:
                continue
            alt = du + w
            if alt < distl[v]:
                distl[v] = alt
                pred[v] = u
                heapq.heappush(heap, (alt, v))
    dist[:] = distl
    return dist, pred


def closed_polyline_is_simple(x, y, chunk=256):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    x1, y1 = np.roll(x, -1), np.roll(y, -1)
    idx = np.arange(n)

    def orient(ax, ay, bx, by, cx, cy):
        return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)

    for lo in range(0, n, chunk):
        i = idx[lo:lo + chunk, None]
        j = idx[None, :]
        valid = (j >= i + 2) & ~((i == 0) & (j == n - 1))
        o1 = orient(x[i], y[i], x1[i], y1[i], x[j], y[j])
        o2 = orient(x[i], y[i], x1[i], y1[i], x1[j], y1[j])
        o3 = orient(x[j], y[j], x1[j], y1[j], x[i], y[i])
        o4 = orient(x[j], y[j], x1[j], y1[j], x1[i], y1[i])
        sep_a = ((o1 > 0) & (o2 > 0)) | ((o1 < 0) & (o2 < 0))
        sep_b = ((o3 > 0) & (o4 > 0)) | ((o3 < 0) & (o4 < 0))
        if np.any(valid & ~sep_a & ~sep_b):
            return False
    return True
