"""Hot numeric kernels: BFS hop counts, Dijkstra, and the delta triple scan.

Each kernel has a numba @njit implementation and a vectorized numpy/scipy
fallback. The fallback path is selected by setting the environment variable
``TESSHYP_PURE_NUMPY=1`` before import (or automatically when numba is not
installed). Both paths produce identical results up to floating-point
operation order; within a path, results are deterministic and independent of
thread count.

Graphs are passed as CSR adjacency: ``indptr`` (int64, len n+1), ``indices``
(int64) and ``weights`` (float64) aligned with ``indices``.
"""

from __future__ import annotations

import os

import numpy as np

UNREACHED = -1


def _want_numba() -> bool:
    if os.environ.get("TESSHYP_PURE_NUMPY", "").strip().lower() in ("1", "true", "yes"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _want_numba()


# ---------------------------------------------------------------------------
# numpy / scipy fallback implementations
# ---------------------------------------------------------------------------

def bfs_hops_numpy(indptr, indices, source):
    """Hop counts from ``source``; UNREACHED for unreachable vertices."""
    n = indptr.shape[0] - 1
    hops = np.full(n, UNREACHED, dtype=np.int64)
    hops[source] = 0
    frontier = np.array([source], dtype=np.int64)
    d = 0
    while frontier.size:
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        base = np.repeat(starts, counts)
        offset = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        nbrs = indices[base + offset]
        new = np.unique(nbrs[hops[nbrs] == UNREACHED])
        d += 1
        hops[new] = d
        frontier = new
    return hops


def dijkstra_scipy(indptr, indices, weights, source):
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import dijkstra as _dijkstra

    n = indptr.shape[0] - 1
    mat = csr_matrix((weights, indices, indptr), shape=(n, n))
    return _dijkstra(mat, directed=False, indices=source)


def delta_scan_numpy(products, x_lo, x_hi):
    """Max over triples (x, y, z) with x in [x_lo, x_hi) of

        min(P[x, z], P[z, y]) - P[x, y]

    plus the lexicographically smallest maximizing (x, y, z).
    """
    n = products.shape[0]
    rows = products[x_lo:x_hi]
    best = -np.inf
    bx = by = bz = -1
    for z in range(n):
        m = np.minimum(rows[:, z][:, None], products[z, :][None, :]) - rows
        flat = int(np.argmax(m))
        val = m.flat[flat]
        x = x_lo + flat // n
        y = flat % n
        if val > best or (val == best and (x, y, z) < (bx, by, bz)):
            best = float(val)
            bx, by, bz = x, y, z
    return best, bx, by, bz


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if NUMBA_ENABLED:
    from numba import njit

    @njit(cache=True, nogil=True)
    def _bfs_hops_numba(indptr, indices, source):
        n = indptr.shape[0] - 1
        hops = np.full(n, UNREACHED, dtype=np.int64)
        hops[source] = 0
        queue = np.empty(n, dtype=np.int64)
        queue[0] = source
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            du = hops[u]
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if hops[v] == UNREACHED:
                    hops[v] = du + 1
                    queue[tail] = v
                    tail += 1
        return hops

    @njit(cache=True, nogil=True)
    def _dijkstra_numba(indptr, indices, weights, source):
        n = indptr.shape[0] - 1
        dist = np.full(n, np.inf, dtype=np.float64)
        dist[source] = 0.0
        done = np.zeros(n, dtype=np.uint8)
        # binary heap of (key, vertex), lazily deleted
        cap = max(16, indices.shape[0] + n)
        hkey = np.empty(cap, dtype=np.float64)
        hval = np.empty(cap, dtype=np.int64)
        size = 0
        hkey[0] = 0.0
        hval[0] = source
        size = 1
        while size > 0:
            kd = hkey[0]
            u = hval[0]
            size -= 1
            hkey[0] = hkey[size]
            hval[0] = hval[size]
            i = 0
            while True:
                l = 2 * i + 1
                r = l + 1
                s = i
                if l < size and hkey[l] < hkey[s]:
                    s = l
                if r < size and hkey[r] < hkey[s]:
                    s = r
                if s == i:
                    break
                hkey[i], hkey[s] = hkey[s], hkey[i]
                hval[i], hval[s] = hval[s], hval[i]
                i = s
            if done[u]:
                continue
            if kd > dist[u]:
                continue
            done[u] = 1
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                nd = kd + weights[p]
                if nd < dist[v]:
                    dist[v] = nd
                    j = size
                    hkey[j] = nd
                    hval[j] = v
                    size += 1
                    while j > 0:
                        parent = (j - 1) // 2
                        if hkey[parent] <= hkey[j]:
                            break
                        hkey[parent], hkey[j] = hkey[j], hkey[parent]
                        hval[parent], hval[j] = hval[j], hval[parent]
                        j = parent
        return dist

    @njit(cache=True, nogil=True)
    def _delta_scan_numba(products, x_lo, x_hi):
        n = products.shape[0]
        best = -np.inf
        bx = -1
        by = -1
        bz = -1
        for x in range(x_lo, x_hi):
            for y in range(n):
                pxy = products[x, y]
                for z in range(n):
                    a = products[x, z]
                    b = products[z, y]
                    m = a if a < b else b
                    d = m - pxy
                    if d > best:
                        best = d
                        bx = x
                        by = y
                        bz = z
        return best, bx, by, bz

    def bfs_hops(indptr, indices, source):
        return _bfs_hops_numba(indptr, indices, source)

    def dijkstra(indptr, indices, weights, source):
        return _dijkstra_numba(indptr, indices, weights, source)

    def delta_scan(products, x_lo, x_hi):
        best, bx, by, bz = _delta_scan_numba(products, x_lo, x_hi)
        return float(best), int(bx), int(by), int(bz)

else:
    bfs_hops = bfs_hops_numpy
    dijkstra = dijkstra_scipy
    delta_scan = delta_scan_numpy


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
