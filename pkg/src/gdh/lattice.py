"""Moving GDHs and families between theories ``T' <= T`` (fine group inside coarse group)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .core import GDH, Family, TheoryMismatch, TheorySignature, is_isomorphic

PROJECTION_LIMIT = 10 ** 6


@dataclass(frozen=True)
class TheoryPair:
    fine: TheorySignature
    coarse: TheorySignature

    def __post_init__(self):
        if not self.fine.group.is_subgroup_of(self.coarse.group):
            raise ValueError("fine theory group is not a subgroup of the coarse group")

    @property
    def ratio(self) -> int:
        return self.coarse.m // self.fine.m

    def fine_edges_in(self, coarse_edge) -> list[tuple[int, ...]]:
        """The ``ratio`` fine orbit-edges inside one coarse orbit-edge, sorted."""
        return sorted({self.fine.canonical(t) for t in self.coarse.orbit(coarse_edge)})


def _expect(G: GDH, theory: TheorySignature, side: str) -> None:
    if G.theory != theory:
        raise TheoryMismatch(f"input graph is not over the {side} theory")


def min_container(Gf: GDH, pair: TheoryPair) -> GDH:
    _expect(Gf, pair.fine, "fine")
    edges = {pair.coarse.canonical(e) for e in Gf.edges}
    return GDH(pair.coarse, Gf.n, frozenset(edges))


def expand_all(Gc: GDH, pair: TheoryPair) -> GDH:
    _expect(Gc, pair.coarse, "coarse")
    edges = {f for e in Gc.edges for f in pair.fine_edges_in(e)}
    return GDH(pair.fine, Gc.n, frozenset(edges))


def orient_k(Gc: GDH, pair: TheoryPair, k: int, seed: int = 0) -> GDH:
    """Replace each coarse edge by ``k`` of its fine edges, picked by a seeded draw."""
    _expect(Gc, pair.coarse, "coarse")
    if not 1 <= k <= pair.ratio:
        raise ValueError(f"k must lie in 1..{pair.ratio}")
    rng = random.Random(seed)
    edges = set()
    for e in Gc.sorted_edges:
        edges.update(rng.sample(pair.fine_edges_in(e), k))
    return GDH(pair.fine, Gc.n, frozenset(edges))


def one_per_container(F: GDH, pair: TheoryPair) -> list[GDH]:
    """Every fine graph with exactly one edge inside each edge of ``F``, up to isomorphism."""
    _expect(F, pair.coarse, "coarse")
    choices = [pair.fine_edges_in(e) for e in F.sorted_edges]
    total = pair.ratio ** len(choices)
    if total > PROJECTION_LIMIT:
        raise ValueError(f"projection would enumerate {total} graphs (limit {PROJECTION_LIMIT})")
    reps: dict[tuple, list[GDH]] = {}
    for pick in product(*choices):
        G = GDH(pair.fine, F.n, frozenset(pick))
        bucket = reps.setdefault(tuple(sorted(G.degrees)), [])
        if not any(is_isomorphic(G, H) for H in bucket):
            bucket.append(G)
    return [G for bucket in reps.values() for G in bucket]


def project_family(fam: Family, pair: TheoryPair) -> Family:
    if fam.theory != pair.coarse:
        raise TheoryMismatch("family is not over the coarse theory")
    members: list[GDH] = []
    for F in fam:
        for G in one_per_container(F, pair):
            if not any(is_isomorphic(G, H) for H in members):
                members.append(G)
    return Family(pair.fine, tuple(members))
