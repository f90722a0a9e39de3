"""Compiled depth-first search kernels.

Words are int8 arrays of letters 0/1/2. Each kernel starts from a prefix that is
assumed valid and explores every extension that creates no square of period
``<= max_period`` at the right end.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _suffix_square(w, n, max_period):
    top = n // 2
    if max_period < top:
        top = max_period
    for p in range(1, top + 1):
        eq = True
        for i in range(p):
            if w[n - 1 - i] != w[n - 1 - p - i]:
                eq = False
                break
        if eq:
            return True
    return False


@njit(cache=True, nogil=True)
def count_subtree(prefix, n_max, max_period, budget):
    """Count extensions of ``prefix`` by length and by per-letter occurrence count.

    Returns ``(table, nodes, exceeded)`` where ``table[n, x, j]`` is the number of
    valid words of length ``n`` extending the prefix that contain letter ``x``
    exactly ``j`` times.
    """
    L = prefix.shape[0]
    table = np.zeros((n_max + 1, 3, n_max + 1), dtype=np.int64)
    w = np.zeros(n_max + 1, dtype=np.int8)
    nxt = np.zeros(n_max + 2, dtype=np.int8)
    cnt = np.zeros(3, dtype=np.int64)
    for i in range(L):
        w[i] = prefix[i]
        cnt[prefix[i]] += 1
    for x in range(3):
        table[L, x, cnt[x]] += 1
    nodes = 1
    depth = L
    nxt[depth] = 0
    while True:
        if depth == n_max or nxt[depth] == 3:
            if depth == L:
                break
            depth -= 1
            cnt[w[depth]] -= 1
            continue
        x = nxt[depth]
        nxt[depth] += 1
        w[depth] = x
        n = depth + 1
        if _suffix_square(w, n, max_period):
            continue
        nodes += 1
        if nodes > budget:
            return table, nodes, True
        cnt[x] += 1
        for y in range(3):
            table[n, y, cnt[y]] += 1
        depth = n
        nxt[depth] = 0
    return table, nodes, False


@njit(cache=True, nogil=True)
def extent_search(k, n_bound, budget):
    """Square-free words with at most ``k`` letters a, up to length ``n_bound``.

    Returns ``(hit, reach, nodes, exceeded)``: ``hit[n]`` is set when some word of
    length ``n`` has exactly ``k`` letters a, ``reach[n]`` when some word of length
    ``n`` with at most ``k`` letters a exists. Letter c is only allowed after the
    first b (the b<->c swap preserves existence).
    """
    hit = np.zeros(n_bound + 1, dtype=np.bool_)
    reach = np.zeros(n_bound + 1, dtype=np.bool_)
    w = np.zeros(n_bound + 1, dtype=np.int8)
    nxt = np.zeros(n_bound + 2, dtype=np.int8)
    reach[0] = True
    if k == 0:
        hit[0] = True
    n_a = 0
    n_b = 0
    nodes = 1
    depth = 0
    nxt[0] = 0
    while True:
        if depth == n_bound or nxt[depth] == 3:
            if depth == 0:
                break
            depth -= 1
            if w[depth] == 0:
                n_a -= 1
            elif w[depth] == 1:
                n_b -= 1
            continue
        x = nxt[depth]
        nxt[depth] += 1
        if x == 0 and n_a == k:
            continue
        if x == 2 and n_b == 0:
            continue
        w[depth] = x
        n = depth + 1
        if _suffix_square(w, n, n // 2):
            continue
        nodes += 1
        if nodes > budget:
            return hit, reach, nodes, True
        if x == 0:
            n_a += 1
        elif x == 1:
            n_b += 1
        reach[n] = True
        if n_a == k:
            hit[n] = True
        depth = n
        nxt[depth] = 0
    return hit, reach, nodes, False
