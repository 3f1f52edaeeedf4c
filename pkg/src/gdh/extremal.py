"""Exact extremal numbers ex_T(n, F) by branch and bound.

Candidate orbit-edges on ``n`` vertices are indexed in sorted order and
every copy of every forbidden member inside the complete GDH is recorded as
a bitmask over those indices. The search decides edges in index order
(include first, then exclude) and keeps the set of still-includable edges
up to date, so freeness is checked incrementally on the newest edge.

Pruning uses ``current + clique_cover(includable)``, where the cover is a
greedy clique partition of the conflict graph formed by two-edge copies.
Isomorphic branches are cut by requiring the first three included edges to
form a lexicographically minimal index set under vertex permutations.
That is sound: the lex-minimal relabelling of any optimum has a lex-minimal
prefix, since sorted prefixes of supersets can only get smaller.

Work is split into independent subtrees keyed by the second included edge.
Subtrees never share bounds, so node counts and results do not depend on the
number of workers.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from math import comb
from typing import Iterable

import numpy as np

from .core import (
    GDH,
    Family,
    TheoryMismatch,
    TheorySignature,
    all_edges,
    complete_gdh,
    iter_embeddings,
)

DEFAULT_BUDGET = 10 ** 8
SYMMETRY_DEPTH = 3
SYMMETRY_MAX_N = 7


@dataclass
class SearchResult:
    n: int
    best_edge_count: int
    witness: GDH
    exhaustive: bool
    nodes_explored: int
    density_bound: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "best_edge_count": self.best_edge_count,
            "exhaustive": self.exhaustive,
            "nodes_explored": self.nodes_explored,
            "density_bound": self.density_bound,
            "witness": {"n": self.witness.n,
                        "edges": [list(e) for e in self.witness.sorted_edges]},
        }


class _Problem:
    """Static data shared by every subtree of one search."""

    def __init__(self, theory: TheorySignature, n: int, fam: Family):
        self.theory = theory
        self.n = n
        self.edges = all_edges(theory, n)
        self.index = {e: i for i, e in enumerate(self.edges)}
        E = len(self.edges)
        self.num_edges = E

        copies = set()
        host = complete_gdh(theory, n)
        for F in fam:
            if F.n > n:
                continue
            for psi in iter_embeddings(F, host):
                mask = 0
                for e in F.edges:
                    mask |= 1 << self.index[theory.canonical([psi[v] for v in e])]
                copies.add(mask)
        self.copies = _minimal_sets(copies)

        self.forbidden0 = 0
        self.copies_without = [[] for _ in range(E)]
        self.conflicts = [0] * E
        for c in self.copies:
            if c & (c - 1) == 0:
                self.forbidden0 |= c
                continue
            rest = c
            while rest:
                bit = rest & -rest
                e = bit.bit_length() - 1
                self.copies_without[e].append(c ^ bit)
                rest ^= bit
            if bin(c).count("1") == 2:
                lo = c & -c
                hi = c ^ lo
                self.conflicts[lo.bit_length() - 1] |= hi
                self.conflicts[hi.bit_length() - 1] |= lo
        self.full = (1 << E) - 1

        self.perm_table = None
        if 2 <= n <= SYMMETRY_MAX_N and E > 0:
            rows = []
            for sigma in permutations(range(n)):
                rows.append([self.index[theory.canonical([sigma[v] for v in e])]
                             for e in self.edges])
            self.perm_table = np.array(rows, dtype=np.int32)
        self._canon_cache: dict[tuple[int, ...], bool] = {}

    def forbid_after(self, e: int, inc: int) -> int:
        """Edges that would complete a copy once ``e`` joins ``inc``."""
        out = 0
        for c in self.copies_without[e]:
            rest = c & ~inc
            if rest & (rest - 1) == 0:
                out |= rest
        return out

    def cover_bound(self, allowed: int) -> int:
        conflicts = self.conflicts
        count = 0
        while allowed:
            bit = allowed & -allowed
            allowed ^= bit
            cand = allowed & conflicts[bit.bit_length() - 1]
            while cand:
                b = cand & -cand
                allowed ^= b
                cand = (cand ^ b) & conflicts[b.bit_length() - 1]
            count += 1
        return count

    def is_canonical(self, members: tuple[int, ...]) -> bool:
        """Is the sorted index set lex-minimal among its vertex relabellings?"""
        if self.perm_table is None:
            return True
        hit = self._canon_cache.get(members)
        if hit is not None:
            return hit
        images = np.sort(self.perm_table[:, list(members)], axis=1)
        target = np.array(members)
        diff = images != target
        first = np.argmax(diff, axis=1)
        rows = np.arange(images.shape[0])
        smaller = diff[rows, first] & (images[rows, first] < target[first])
        ok = not bool(smaller.any())
        self._canon_cache[members] = ok
        return ok

    def greedy(self, seed: int = 0, rounds: int = 8) -> int:
        """Best mask from greedy insertion over a few fixed orders."""
        rng = random.Random(seed)
        order = list(range(self.num_edges))
        best_mask, best_cnt = 0, -1
        for k in range(rounds):
            if k:
                rng.shuffle(order)
            inc, allowed, cnt = 0, self.full & ~self.forbidden0, 0
            for e in order:
                if allowed >> e & 1:
                    bit = 1 << e
                    allowed &= ~(self.forbid_after(e, inc) | bit)
                    inc |= bit
                    cnt += 1
            if cnt > best_cnt:
                best_mask, best_cnt = inc, cnt
        return best_mask

    def to_gdh(self, mask: int) -> GDH:
        edges = [self.edges[i] for i in range(self.num_edges) if mask >> i & 1]
        return GDH(self.theory, self.n, frozenset(edges))


def _minimal_sets(masks: Iterable[int]) -> list[int]:
    """Drop copies that contain another copy; they add no constraint."""
    masks = sorted(set(masks), key=lambda c: (bin(c).count("1"), c))
    if len(masks) > 20000:
        return masks
    kept: list[int] = []
    for c in masks:
        if not any(k & c == k for k in kept):
            kept.append(c)
    return kept


class _BudgetExceeded(Exception):
    pass


def _solve_subtree(problem: _Problem, inc: int, allowed: int, best: int, budget: int):
    """Exhaust one subtree; return (best_count, best_mask or 0, nodes, finished)."""
    state = {"nodes": 0, "best": best, "mask": 0}
    copies_without = problem.copies_without

    def dfs(inc: int, cnt: int, allowed: int):
        state["nodes"] += 1
        if state["nodes"] > budget:
            raise _BudgetExceeded
        if not allowed:
            if cnt > state["best"]:
                state["best"], state["mask"] = cnt, inc
            return
        if cnt + bin(allowed).count("1") <= state["best"]:
            return
        if cnt + problem.cover_bound(allowed) <= state["best"]:
            return
        bit = allowed & -allowed
        e = bit.bit_length() - 1
        new_inc = inc | bit
        if cnt >= SYMMETRY_DEPTH or problem.is_canonical(_members(new_inc)):
            forb = 0
            for c in copies_without[e]:
                rest = c & ~new_inc
                if rest & (rest - 1) == 0:
                    forb |= rest
            dfs(new_inc, cnt + 1, (allowed ^ bit) & ~forb)
        dfs(inc, cnt, allowed ^ bit)

    try:
        dfs(inc, bin(inc).count("1"), allowed)
        finished = True
    except _BudgetExceeded:
        finished = False
    return state["best"], state["mask"], state["nodes"], finished


def _members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        bit = mask & -mask
        out.append(bit.bit_length() - 1)
        mask ^= bit
    return tuple(out)


_WORKER_PROBLEM: _Problem | None = None


def _init_worker(problem: _Problem):
    global _WORKER_PROBLEM
    _WORKER_PROBLEM = problem


def _run_task(task):
    inc, allowed, best, budget = task
    return _solve_subtree(_WORKER_PROBLEM, inc, allowed, best, budget)


def _check_family(theory: TheorySignature, fam: Family) -> None:
    if fam.theory != theory:
        raise TheoryMismatch("family theory differs from search theory")
    for i, F in enumerate(fam):
        if F.num_edges == 0:
            raise ValueError(f"family member {i} has no edges; every graph would contain it")


def extremal_number(theory: TheorySignature, n: int, fam: Family,
                    budget: int = DEFAULT_BUDGET, threads: int = 1) -> SearchResult:
    """Largest F-free GDH on ``n`` vertices.

    With ``exhaustive`` false the count is only a lower bound. For ``n < r``
    the density bound is reported as 1.0 (the edgeless graph is complete).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_family(theory, fam)
    problem = _Problem(theory, n, fam)

    incumbent = problem.greedy()
    best = bin(incumbent).count("1")
    nodes = 1
    tasks = []
    start = problem.full & ~problem.forbidden0
    if start & 1:
        # every edge is a relabelling of edge 0, so some optimum contains it
        after0 = (start ^ 1) & ~problem.forbid_after(0, 1)
        rest = after0
        while rest:
            bit = rest & -rest
            rest ^= bit
            j = bit.bit_length() - 1
            inc = 1 | bit
            if not problem.is_canonical((0, j)):
                continue
            allowed = (after0 & ~((bit << 1) - 1)) & ~problem.forbid_after(j, inc)
            tasks.append((inc, allowed, best, budget))

    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(threads, initializer=_init_worker,
                                 initargs=(problem,)) as pool:
            outcomes = list(pool.map(_run_task, tasks, chunksize=1))
    else:
        outcomes = [_solve_subtree(problem, *t) for t in tasks]

    finished = True
    for cnt, mask, used, done in outcomes:
        nodes += used
        finished &= done
        if cnt > best and mask:
            best, incumbent = cnt, mask
    exhaustive = finished and nodes <= budget
    witness = problem.to_gdh(incumbent)
    max_edges = theory.max_edges(n)
    dens = best / max_edges if max_edges else 1.0
    return SearchResult(n, best, witness, exhaustive, nodes, dens)


def density_bound_sequence(theory: TheorySignature, fam: Family, n_range: Iterable[int],
                           budget: int = DEFAULT_BUDGET, threads: int = 1
                           ) -> list[tuple[int, float]]:
    out = []
    for n in n_range:
        res = extremal_number(theory, n, fam, budget=budget, threads=threads)
        if not res.exhaustive:
            raise RuntimeError(f"search at n={n} exceeded the node budget")
        out.append((n, res.density_bound))
    return out


def langlois_construction(n: int) -> GDH:
    """2->1 GDH with heads in the first ``n//3`` vertices and tails in the rest."""
    if n < 3:
        raise ValueError("construction needs n >= 3")
    theory = TheorySignature.two_to_one()
    h = n // 3
    heads, tails = range(h), range(h, n)
    edges = {(b1, b2, x) for x in heads for b1 in tails for b2 in tails if b1 < b2}
    return GDH(theory, n, frozenset(edges))


def langlois_edge_count(n: int) -> int:
    return (n // 3) * comb(n - n // 3, 2)


def two_path_family() -> Family:
    """The 2->1 configuration {ab->c, cd->e}: one edge's head is a tail of the next."""
    theory = TheorySignature.two_to_one()
    F = GDH.from_tuples(theory, 5, [(0, 1, 2), (2, 3, 4)])
    return Family(theory, (F,))


def restrict_family(fam: Family, k: int) -> Family:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return Family(fam.theory, tuple(F for F in fam if F.n <= k))
