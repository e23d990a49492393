"""Hot numeric kernels.

Each kernel has a loop implementation (numba-jitted when the numba path is
active, see backend.py) and, where a vectorized formulation exists, a numpy
fallback. Both paths produce identical floating-point results because they
accumulate in the same element order.
"""

import math

import numpy as np

from .backend import USE_NUMBA, maybe_jit


def _bfs_all_pairs_loops(indptr, indices, n):
    # Unreachable pairs are capped at n so distances index a bounded table.
    dist = np.full((n, n), n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for src in range(n):
        dist[src, src] = 0
        queue[0] = src
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[src, u]
            for j in range(indptr[u], indptr[u + 1]):
                w = indices[j]
                if dist[src, w] == n and w != src:
                    dist[src, w] = du + 1
                    queue[tail] = w
                    tail += 1
    return dist


def _jacobi_sweeps_loops(a, v, tol, max_sweeps):
    """Cyclic Jacobi rotations on symmetric a (in place), right-multiplying the
    rotations into v. Row-cyclic (p, q) order keeps the result deterministic.
    Returns the number of completed sweeps."""
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if off <= tol:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return max_sweeps


def _segment_add_loops(out, msgs, dst):
    for e in range(dst.shape[0]):
        row = dst[e]
        for j in range(msgs.shape[1]):
            out[row, j] += msgs[e, j]
    return out


def _matmul_stable_loops(x, w):
    """Matmul whose per-element accumulation order over k is fixed and row
    independent, so permuting rows of x permutes rows of the result bitwise."""
    n, kdim = x.shape
    m = w.shape[1]
    out = np.zeros((n, m), dtype=x.dtype)
    for i in range(n):
        for k in range(kdim):
            xv = x[i, k]
            for j in range(m):
                out[i, j] += xv * w[k, j]
    return out


bfs_all_pairs_kernel = maybe_jit(_bfs_all_pairs_loops)
jacobi_sweeps_kernel = maybe_jit(_jacobi_sweeps_loops)

if USE_NUMBA:
    segment_add_kernel = maybe_jit(_segment_add_loops)
    matmul_stable_kernel = maybe_jit(_matmul_stable_loops)
else:

    def segment_add_kernel(out, msgs, dst):
        # np.add.at accumulates sequentially in index order, matching the loop.
        np.add.at(out, dst, msgs)
        return out

    def matmul_stable_kernel(x, w):
        # Pairwise reduction over axis 1 applies the same pattern to every row.
        return (x[:, :, None] * w[None, :, :]).sum(axis=1)
