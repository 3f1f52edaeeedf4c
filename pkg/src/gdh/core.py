"""GDH models over a fixed theory: edges, density, substructures, embeddings."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

from .perm_group import (
    Permutation,
    PermutationGroup,
    closure,
    symmetric_group,
    trivial_group,
)

Edge = tuple[int, ...]


class TheoryMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TheorySignature:
    """Arity ``r`` and position group ``group``; ``m`` is the group order."""

    r: int
    group: PermutationGroup

    def __post_init__(self):
        if self.group.r != self.r:
            raise ValueError(f"group acts on {self.group.r} points, arity is {self.r}")
        if not self.group.is_closed():
            raise ValueError("theory group is not closed under composition")

    @property
    def m(self) -> int:
        return self.group.order

    @property
    def edges_per_set(self) -> int:
        """Distinct orbit-edges supported by one r-set, ``r!/m``."""
        return factorial(self.r) // self.m

    def canonical(self, t: Sequence[int]) -> Edge:
        # hot path: skip validation done by perm_group.canonical_rep
        return min(tuple(t[i] for i in m) for m in self.group._position_maps)

    def orbit(self, t: Sequence[int]) -> set[Edge]:
        return self.group.orbit(t)

    def max_edges(self, n: int) -> int:
        return self.edges_per_set * comb(n, self.r)

    @classmethod
    def from_generators(cls, r: int, gens: Iterable[Sequence[int]]) -> "TheorySignature":
        return cls(r, closure(r, [Permutation(tuple(g)) for g in gens]))

    @classmethod
    def trivial(cls, r: int) -> "TheorySignature":
        return cls(r, trivial_group(r))

    @classmethod
    def symmetric(cls, r: int) -> "TheorySignature":
        return cls(r, symmetric_group(r))

    @classmethod
    def two_to_one(cls) -> "TheorySignature":
        """3-edges with two unordered tails (positions 0, 1) and a head (position 2)."""
        return cls.from_generators(3, [(1, 0, 2)])

    def __repr__(self):
        gens = [list(g.images) for g in self.group.generators()]
        return f"TheorySignature(r={self.r}, m={self.m}, gens={gens})"


def _check_theory(a: "GDH | Family", b: "GDH | Family") -> None:
    if a.theory != b.theory:
        raise TheoryMismatch(f"{a.theory!r} vs {b.theory!r}")


@dataclass(frozen=True)
class GDH:
    """A GDH on vertices ``0..n-1`` holding canonical orbit-edges."""

    theory: TheorySignature
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        object.__setattr__(self, "edges", frozenset(self.edges))

    @classmethod
    def from_tuples(cls, theory: TheorySignature, n: int, tuples: Iterable[Sequence[int]]) -> "GDH":
        """Build from any orbit representatives, validating each tuple."""
        edges = {_validated(theory, n, t) for t in tuples}
        return cls(theory, n, frozenset(edges))

    @property
    def r(self) -> int:
        return self.theory.r

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def relation_size(self) -> int:
        """Size of the underlying relation, ``m * e``."""
        return self.theory.m * len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def has_edge(self, t: Sequence[int]) -> bool:
        return self.theory.canonical(t) in self.edges

    def add_edge(self, t: Sequence[int]) -> "GDH":
        return add_edge(self, t)

    def density(self) -> float:
        return density(self)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    def __repr__(self):
        return f"GDH(n={self.n}, m={self.theory.m}, edges={list(self.sorted_edges)})"


@dataclass(frozen=True)
class Family:
    theory: TheorySignature
    members: tuple[GDH, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        for f in self.members:
            _check_theory(self, f)

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[GDH]:
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]


def _validated(theory: TheorySignature, n: int, t: Sequence[int]) -> Edge:
    t = tuple(int(v) for v in t)
    if len(t) != theory.r:
        raise ValueError(f"edge {t} has {len(t)} vertices, arity is {theory.r}")
    if len(set(t)) != len(t):
        raise ValueError(f"edge {t} repeats a vertex")
    for v in t:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
    return theory.canonical(t)


def empty_gdh(theory: TheorySignature, n: int) -> GDH:
    return GDH(theory, n)


def add_edge(G: GDH, t: Sequence[int]) -> GDH:
    e = _validated(G.theory, G.n, t)
    if e in G.edges:
        return G
    return GDH(G.theory, G.n, G.edges | {e})


def all_edges(theory: TheorySignature, n: int) -> list[Edge]:
    """Every orbit-edge on ``n`` vertices, sorted."""
    out = set()
    for R in combinations(range(n), theory.r):
        for t in permutations(R):
            out.add(theory.canonical(t))
    return sorted(out)


def complete_gdh(theory: TheorySignature, n: int) -> GDH:
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    return GDH(theory, n, frozenset(all_edges(theory, n)))


def density(G: GDH) -> float:
    if G.n < G.r:
        raise ValueError(f"density needs n >= r (n={G.n}, r={G.r})")
    return G.num_edges / G.theory.max_edges(G.n)


def induced(G: GDH, S: Iterable[int]) -> GDH:
    """Substructure on ``S``, relabelled ``0..|S|-1`` in increasing order."""
    S = sorted(set(S))
    for v in S:
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} out of range for n={G.n}")
    relabel = {v: i for i, v in enumerate(S)}
    edges = {G.theory.canonical([relabel[v] for v in e])
             for e in G.edges if all(v in relabel for v in e)}
    return GDH(G.theory, len(S), frozenset(edges))


def relabel(G: GDH, mapping: Sequence[int], n: int | None = None) -> GDH:
    """Image of ``G`` under an injective vertex map ``mapping[v]``."""
    n = G.n if n is None else n
    edges = {G.theory.canonical([mapping[v] for v in e]) for e in G.edges}
    return GDH(G.theory, n, frozenset(edges))


def _embeddings(H: GDH, G: GDH) -> Iterator[tuple[int, ...]]:
    """Yield every injective homomorphism ``H -> G`` in lexicographic order.

    Vertices of H are assigned in index order; a G vertex is a candidate
    only if its edge participation is at least the H vertex's. Each H edge
    is tested as soon as its last vertex is placed.
    """
    _check_theory(H, G)
    if H.n > G.n:
        return
    canon = G.theory.canonical
    gedges = G.edges
    hdeg, gdeg = H.degrees, G.degrees
    # edges of H checked when vertex v is placed (v = max vertex of the edge)
    closing: list[list[Edge]] = [[] for _ in range(H.n)]
    for e in H.edges:
        closing[max(e)].append(e)
    cands = [[w for w in range(G.n) if gdeg[w] >= hdeg[v]] for v in range(H.n)]
    psi = [-1] * H.n
    used = [False] * G.n

    def extend(v: int):
        if v == H.n:
            yield tuple(psi)
            return
        for w in cands[v]:
            if used[w]:
                continue
            psi[v] = w
            if all(canon([psi[a] for a in e]) in gedges for e in closing[v]):
                used[w] = True
                yield from extend(v + 1)
                used[w] = False
        psi[v] = -1

    yield from extend(0)


def iter_embeddings(H: GDH, G: GDH) -> Iterator[tuple[int, ...]]:
    return _embeddings(H, G)


def find_embedding(H: GDH, G: GDH) -> tuple[int, ...] | None:
    """First injective homomorphism ``H -> G`` found, or None."""
    _check_theory(H, G)
    if H.n > G.n or H.num_edges > G.num_edges:
        return None
    return next(_embeddings(H, G), None)


def is_embedding(H: GDH, G: GDH, psi: Sequence[int]) -> bool:
    if len(psi) != H.n or len(set(psi)) != H.n:
        return False
    return all(G.has_edge([psi[v] for v in e]) for e in H.edges)


def count_injective_homs(H: GDH, G: GDH) -> int:
    _check_theory(H, G)
    return sum(1 for _ in _embeddings(H, G))


def automorphism_count(H: GDH) -> int:
    # an injective hom H -> H permutes vertices and maps edges injectively
    # into a set of the same size, so it is an automorphism
    return count_injective_homs(H, H)


def count_copies(H: GDH, G: GDH) -> int:
    homs = count_injective_homs(H, G)
    aut = automorphism_count(H)
    assert homs % aut == 0
    return homs // aut


def is_isomorphic(A: GDH, B: GDH) -> bool:
    if A.theory != B.theory or A.n != B.n or A.num_edges != B.num_edges:
        return False
    if sorted(A.degrees) != sorted(B.degrees):
        return False
    return find_embedding(A, B) is not None


def is_family_free(G: GDH, fam: Family) -> bool:
    _check_theory(G, fam)
    return all(find_embedding(F, G) is None for F in fam)


def single_edge(theory: TheorySignature) -> GDH:
    return GDH(theory, theory.r, frozenset([tuple(range(theory.r))]))
