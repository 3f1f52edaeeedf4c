"""Permutations of tuple positions, subgroup closure and tuple orbits.

Permutations are 0-based: ``Permutation((1, 0, 2))`` swaps positions 0 and 1.
A group acts on an r-tuple ``t`` by reading positions through the
permutation, ``t -> (t[p(0)], ..., t[p(r-1)])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from math import factorial
from typing import Iterable, Sequence

MAX_SUBGROUP_ARITY = 5


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {list(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, r: int) -> "Permutation":
        return cls(tuple(range(r)))

    @property
    def r(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.r
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(self.r))

    def act(self, t: Sequence[int]) -> tuple[int, ...]:
        """Apply to a tuple's positions."""
        return tuple(t[i] for i in self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p∘q``: apply ``q`` first, then ``p``."""
    if p.r != q.r:
        raise ValueError(f"arity mismatch: {p.r} vs {q.r}")
    return Permutation(tuple(p.images[i] for i in q.images))


class PermutationGroup:
    """A permutation group on ``r`` points stored by full element list."""

    def __init__(self, r: int, elements: Iterable[Permutation]):
        self.r = r
        self.elements: frozenset[Permutation] = frozenset(elements)
        for g in self.elements:
            if g.r != r:
                raise ValueError(f"element {g} does not act on {r} points")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted_elements)

    def __contains__(self, p):
        return p in self.elements

    def __eq__(self, other):
        return (isinstance(other, PermutationGroup)
                and self.r == other.r and self.elements == other.elements)

    def __hash__(self):
        return hash((self.r, self.elements))

    def __repr__(self):
        return f"PermutationGroup(r={self.r}, order={self.order})"

    @cached_property
    def sorted_elements(self) -> tuple[Permutation, ...]:
        return tuple(sorted(self.elements))

    @cached_property
    def _position_maps(self) -> tuple[tuple[int, ...], ...]:
        return tuple(g.images for g in self.sorted_elements)

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return self.r == other.r and self.elements <= other.elements

    def is_closed(self) -> bool:
        """Exhaustive group-axiom check."""
        if Permutation.identity(self.r) not in self.elements:
            return False
        return all(compose(a, b) in self.elements for a in self.elements
                   for b in self.elements)

    def generators(self) -> list[Permutation]:
        """A small generating set, picked greedily in sorted order."""
        gens: list[Permutation] = []
        span = trivial_group(self.r)
        for g in self.sorted_elements:
            if g not in span.elements:
                gens.append(g)
                span = closure(self.r, gens)
        return gens

    def orbit(self, t: Sequence[int]) -> set[tuple[int, ...]]:
        return tuple_orbit(t, self)

    def canonical(self, t: Sequence[int]) -> tuple[int, ...]:
        return canonical_rep(t, self)


def trivial_group(r: int) -> PermutationGroup:
    return PermutationGroup(r, [Permutation.identity(r)])


def symmetric_group(r: int) -> PermutationGroup:
    return PermutationGroup(r, (Permutation(p) for p in permutations(range(r))))


def closure(r: int, generators: Iterable[Permutation | Sequence[int]]) -> PermutationGroup:
    """Smallest group on ``r`` points containing ``generators``."""
    gens = [g if isinstance(g, Permutation) else Permutation(tuple(g)) for g in generators]
    for g in gens:
        if g.r != r:
            raise ValueError(f"generator {g} has arity {g.r}, expected {r}")
    elements = {Permutation.identity(r)}
    frontier = list(elements)
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                b = compose(g, a)
                if b not in elements:
                    elements.add(b)
                    fresh.append(b)
        frontier = fresh
    # finite group: closure under products with generators already gives inverses
    return PermutationGroup(r, elements)


def enumerate_subgroups(r: int) -> list[PermutationGroup]:
    """All subgroups of S_r, sorted by order then element list.

    Every subgroup of S_r with r <= 5 is generated by at most two elements,
    so closing all pairs of elements finds the full lattice.
    """
    if r < 1:
        raise ValueError("arity must be positive")
    if r > MAX_SUBGROUP_ARITY:
        raise ValueError(f"exhaustive subgroup enumeration is capped at r <= {MAX_SUBGROUP_ARITY}")
    elements = symmetric_group(r).sorted_elements
    found: dict[frozenset, PermutationGroup] = {}
    cyclic = {}
    for g in elements:
        grp = closure(r, [g])
        cyclic[g] = grp
        found.setdefault(grp.elements, grp)
    for a, b in combinations(elements, 2):
        if b in cyclic[a].elements or a in cyclic[b].elements:
            continue
        grp = closure(r, [a, b])
        found.setdefault(grp.elements, grp)
    return sorted(found.values(), key=lambda g: (g.order, g.sorted_elements))


def _check_distinct(t: Sequence[int]) -> None:
    if len(set(t)) != len(t):
        raise ValueError(f"tuple has repeated entries: {tuple(t)}")


def tuple_orbit(t: Sequence[int], g: PermutationGroup) -> set[tuple[int, ...]]:
    if len(t) != g.r:
        raise ValueError(f"tuple length {len(t)} does not match arity {g.r}")
    _check_distinct(t)
    return {tuple(t[i] for i in m) for m in g._position_maps}


def canonical_rep(t: Sequence[int], g: PermutationGroup) -> tuple[int, ...]:
    """Lexicographically smallest member of the orbit of ``t``."""
    if len(t) != g.r:
        raise ValueError(f"tuple length {len(t)} does not match arity {g.r}")
    _check_distinct(t)
    return min(tuple(t[i] for i in m) for m in g._position_maps)


def order_divides_factorial(g: PermutationGroup) -> bool:
    return factorial(g.r) % g.order == 0
