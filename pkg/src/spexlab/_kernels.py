"""Numba kernels for exhaustive scans over labelled graphs.

A labelled graph on ``n`` vertices is an int64 code whose bit ``k`` is the
``k``-th vertex pair in graph6 order ((0,1), (0,2), (1,2), (0,3), ...).
Scans walk a range of reflected-Gray-code indices so consecutive graphs
differ in one edge.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True, nogil=True)
def trailing_zeros(x):
    c = 0
    while not (x & 1):
        x >>= 1
        c += 1
    return c


@njit(cache=True, nogil=True)
def has_disjoint(code, cyc_edges, cyc_verts, t, present, stack, used):
    """True iff ``t`` pairwise vertex-disjoint template cycles lie in ``code``."""
    k = 0
    for i in range(cyc_edges.shape[0]):
        if code & cyc_edges[i] == cyc_edges[i]:
            present[k] = cyc_verts[i]
            k += 1
    if k < t:
        return False
    if t == 1:
        return True
    # stack[d] = index chosen at depth d; used vertex masks accumulate
    depth = 0
    stack[0] = -1
    used[0] = 0
    while depth >= 0:
        stack[depth] += 1
        i = stack[depth]
        if i > k - (t - depth):
            depth -= 1
            continue
        if present[i] & used[depth]:
            continue
        if depth == t - 1:
            return True
        used[depth + 1] = used[depth] | present[i]
        depth += 1
        stack[depth] = i
    return False


@njit(cache=True, nogil=True)
def scan_max_edges_free(lo, hi, floor, cyc_edges, cyc_verts, t, out):
    """Max edge count over free graphs with Gray index in [lo, hi).

    Graphs with fewer edges than the running best (initially ``floor``) are
    skipped without a freeness test.  Codes attaining the best are written
    to ``out``.  Returns (best, stored, overflow, checked).
    """
    present = np.empty(cyc_edges.shape[0], dtype=np.int64)
    stack = np.empty(t + 1, dtype=np.int64)
    used = np.empty(t + 1, dtype=np.int64)
    best = floor
    stored = 0
    overflow = False
    checked = 0
    code = lo ^ (lo >> 1)
    e = popcount(code)
    for idx in range(lo, hi):
        if idx != lo:
            code ^= np.int64(1) << trailing_zeros(idx)
            e = popcount(code)
        if e < best:
            continue
        checked += 1
        if has_disjoint(code, cyc_edges, cyc_verts, t, present, stack, used):
            continue
        if e > best:
            best = e
            stored = 0
            overflow = False
        if stored < out.shape[0]:
            out[stored] = code
            stored += 1
        else:
            overflow = True
    return best, stored, overflow, checked


@njit(cache=True, nogil=True)
def _matching_number(adj, n):
    # f[mask] = matching number of the subgraph induced by mask
    size = 1 << n
    f = np.zeros(size, dtype=np.int64)
    for mask in range(1, size):
        v = trailing_zeros(mask)
        rest = mask & ~(1 << v)
        b = f[rest]
        nb = adj[v] & rest
        while nb:
            u = trailing_zeros(nb)
            nb &= nb - 1
            c = 1 + f[rest & ~(1 << u)]
            if c > b:
                b = c
        f[mask] = b
    return f[size - 1]


@njit(cache=True, nogil=True)
def scan_max_edges_bounded(lo, hi, n, pair_u, pair_v, nu, delta, floor, out):
    """Max edge count over graphs with max degree <= delta and matching
    number <= nu, Gray index in [lo, hi)."""
    deg = np.zeros(n, dtype=np.int64)
    adj = np.zeros(n, dtype=np.int64)
    best = floor
    stored = 0
    overflow = False
    code = lo ^ (lo >> 1)
    m = pair_u.shape[0]
    for k in range(m):
        if code >> k & 1:
            deg[pair_u[k]] += 1
            deg[pair_v[k]] += 1
    e = popcount(code)
    for idx in range(lo, hi):
        if idx != lo:
            k = trailing_zeros(idx)
            code ^= np.int64(1) << k
            step = 1 if code >> k & 1 else -1
            deg[pair_u[k]] += step
            deg[pair_v[k]] += step
            e += step
        if e < best:
            continue
        ok = True
        for v in range(n):
            if deg[v] > delta:
                ok = False
                break
        if not ok:
            continue
        for v in range(n):
            adj[v] = 0
        for k in range(m):
            if code >> k & 1:
                adj[pair_u[k]] |= 1 << pair_v[k]
                adj[pair_v[k]] |= 1 << pair_u[k]
        if _matching_number(adj, n) > nu:
            continue
        if e > best:
            best = e
            stored = 0
            overflow = False
        if stored < out.shape[0]:
            out[stored] = code
            stored += 1
        else:
            overflow = True
    return best, stored, overflow


@njit(cache=True, nogil=True)
def scan_max_rho_free(lo, hi, n, pair_u, pair_v, cyc_edges, cyc_verts, t, floor, tie, out_codes, out_rho, skipped):
    """Max spectral radius over free graphs with Gray index in [lo, hi).

    A graph whose maximum degree is below ``best - tie`` is skipped before
    any freeness or eigenvalue work, since the spectral radius never
    exceeds the maximum degree.  Every 997th skipped code is kept in
    ``skipped`` for spot checks.  Returns (best, stored, overflow,
    evaluated, n_skipped, n_kept_skipped).
    """
    present = np.empty(cyc_edges.shape[0], dtype=np.int64)
    stack = np.empty(t + 1, dtype=np.int64)
    used = np.empty(t + 1, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    a = np.zeros((n, n), dtype=np.float64)
    best = floor
    stored = 0
    overflow = False
    evaluated = 0
    n_skipped = 0
    kept = 0
    m = pair_u.shape[0]
    code = lo ^ (lo >> 1)
    for k in range(m):
        if code >> k & 1:
            deg[pair_u[k]] += 1
            deg[pair_v[k]] += 1
    for idx in range(lo, hi):
        if idx != lo:
            k = trailing_zeros(idx)
            code ^= np.int64(1) << k
            step = 1 if code >> k & 1 else -1
            deg[pair_u[k]] += step
            deg[pair_v[k]] += step
        dmax = 0
        for v in range(n):
            if deg[v] > dmax:
                dmax = deg[v]
        if dmax < best - tie:
            n_skipped += 1
            if n_skipped % 997 == 0 and kept < skipped.shape[0]:
                skipped[kept] = code
                kept += 1
            continue
        if has_disjoint(code, cyc_edges, cyc_verts, t, present, stack, used):
            continue
        for i in range(n):
            for j in range(n):
                a[i, j] = 0.0
        for k in range(m):
            if code >> k & 1:
                a[pair_u[k], pair_v[k]] = 1.0
                a[pair_v[k], pair_u[k]] = 1.0
        rho = np.linalg.eigvalsh(a)[n - 1]
        evaluated += 1
        if rho < best - tie:
            continue
        if rho > best:
            best = rho
        if stored == out_codes.shape[0]:
            # compact: drop entries no longer within the tie window
            w = 0
            for i in range(stored):
                if out_rho[i] >= best - tie:
                    out_codes[w] = out_codes[i]
                    out_rho[w] = out_rho[i]
                    w += 1
            stored = w
        if stored < out_codes.shape[0]:
            out_codes[stored] = code
            out_rho[stored] = rho
            stored += 1
        else:
            overflow = True
    return best, stored, overflow, evaluated, n_skipped, kept
