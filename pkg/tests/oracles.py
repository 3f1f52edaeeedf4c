"""Independent brute-force oracles.

Nothing here calls the search, embedding or optimisation code under test;
graphs are plain ``(n, edge tuples)`` data and groups plain tuples.
"""

from __future__ import annotations

import sys
from itertools import permutations

import numpy as np


def closed_subsets(r: int) -> list[frozenset]:
    """All subgroups of S_r by include/exclude search over elements.

    An element set is kept iff it holds the identity and every product of
    two members. Decisions run in sorted order; a branch dies as soon as two
    decided members have a product that was decided out.
    """
    elems = sorted(permutations(range(r)))
    pos = {p: i for i, p in enumerate(elems)}

    def mul(p, q):
        return tuple(p[i] for i in q)

    table = [[pos[mul(a, b)] for b in elems] for a in elems]
    N = len(elems)
    out = []
    chosen = [None] * N

    def ok_so_far(i):
        inc = [j for j in range(i + 1) if chosen[j]]
        for a in inc:
            for b in inc:
                c = table[a][b]
                if c <= i and not chosen[c]:
                    return False
        return True

    def rec(i):
        if i == N:
            inc = [j for j in range(N) if chosen[j]]
            if all(chosen[table[a][b]] for a in inc for b in inc):
                out.append(frozenset(elems[j] for j in inc))
            return
        for v in ((True,) if i == 0 else (True, False)):  # identity is element 0
            chosen[i] = v
            if ok_so_far(i):
                rec(i + 1)
        chosen[i] = None

    rec(0)
    return out


def orbit_min(t, group):
    return min(tuple(t[i] for i in g) for g in group)


def candidate_edges(n, r, group):
    return sorted({orbit_min(t, group) for t in permutations(range(n), r)})


def brute_homs(hn, hedges, gn, gedges, group):
    """Injective maps sending every H edge onto a G edge, by trying all of them."""
    gset = {orbit_min(e, group) for e in gedges}
    count = 0
    for psi in permutations(range(gn), hn):
        if all(orbit_min([psi[v] for v in e], group) in gset for e in hedges):
            count += 1
    return count


def copy_masks(n, r, group, members):
    """Edge-index sets of every copy of every member inside the complete graph."""
    edges = candidate_edges(n, r, group)
    index = {e: i for i, e in enumerate(edges)}
    masks = set()
    for hn, hedges in members:
        if hn > n:
            continue
        for psi in permutations(range(n), hn):
            masks.add(frozenset(index[orbit_min([psi[v] for v in e], group)] for e in hedges))
    return edges, masks


def enumerate_free_subsets(num_edges, masks, cap=5 * 10 ** 6):
    """Walk every copy-free edge subset; return (max size, subsets seen).

    Raises ``OverflowError`` once more than ``cap`` subsets have been seen.
    """
    sys.setrecursionlimit(max(10000, sys.getrecursionlimit()))
    by_last = [[] for _ in range(num_edges)]
    for c in masks:
        by_last[max(c)].append(sum(1 << i for i in c))
    best = 0
    seen = 0

    def rec(i, inc, k):
        nonlocal best, seen
        if i == num_edges:
            seen += 1
            if seen > cap:
                raise OverflowError("free-subset enumeration cap reached")
            best = max(best, k)
            return
        rec(i + 1, inc, k)
        new = inc | (1 << i)
        if all(c & new != c for c in by_last[i]):
            rec(i + 1, new, k + 1)

    rec(0, 0, 0)
    return best, seen


def milp_max_free(num_edges, masks):
    """Exact max |S| with no copy inside S, as a 0/1 program (HiGHS)."""
    from scipy.optimize import Bounds, LinearConstraint, milp

    if num_edges == 0:
        return 0
    masks = [sorted(c) for c in masks]
    c = -np.ones(num_edges)
    constraints = []
    if masks:
        A = np.zeros((len(masks), num_edges))
        for row, m in enumerate(masks):
            A[row, m] = 1
        ub = np.array([len(m) - 1 for m in masks], dtype=float)
        constraints.append(LinearConstraint(A, -np.inf, ub))
    res = milp(c, constraints=constraints, integrality=np.ones(num_edges),
               bounds=Bounds(0, 1))
    assert res.success, res.message
    return int(round(-res.fun))


def max_free_oracle(n, r, group, members, cap=5 * 10 ** 6):
    """Naive enumeration when it fits under ``cap``, else the 0/1 program."""
    edges, masks = copy_masks(n, r, group, members)
    try:
        best, _ = enumerate_free_subsets(len(edges), masks, cap)
        return best, "enumeration"
    except OverflowError:
        return milp_max_free(len(edges), masks), "milp"


def simplex_grid_max(poly_terms, n, resolution):
    """Max of ``sum c * prod x_R`` over the grid ``{a / resolution}`` on the simplex."""
    best = 0.0
    terms = list(poly_terms.items())
    for comp in compositions(resolution, n):
        x = [a / resolution for a in comp]
        v = sum(c * np.prod([x[i] for i in R]) for R, c in terms)
        best = max(best, v)
    return best


def compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def complete_graph_grid_max(k, resolution):
    """Grid maximum of ``sum_{i<j} x_i x_j`` on the simplex by exact DP.

    On the simplex the form equals ``(1 - sum x_i^2) / 2``, so the grid
    maximum minimises ``sum a_i^2`` over compositions of ``resolution``.
    """
    INF = float("inf")
    best = [INF] * (resolution + 1)
    best[0] = 0
    for _ in range(k):
        nxt = [INF] * (resolution + 1)
        for used in range(resolution + 1):
            if best[used] == INF:
                continue
            for a in range(resolution - used + 1):
                v = best[used] + a * a
                if v < nxt[used + a]:
                    nxt[used + a] = v
        best = nxt
    return (1 - best[resolution] / resolution ** 2) / 2


def finite_difference_gradient(f, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(len(x)):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def poly_eval(terms, x):
    return sum(c * np.prod([x[i] for i in R]) for R, c in terms.items())


def blowup_edge_count(edges, group, t):
    """Orbit-edges of the t-blowup: clone every tuple of the relation, divide by |group|."""
    relation = {tuple(e[i] for i in g) for e in edges for g in group}
    total = sum(int(np.prod([t[v] for v in tup])) for tup in relation)
    assert total % len(group) == 0
    return total // len(group)
