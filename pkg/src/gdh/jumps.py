"""Jump certificates, degeneracy witnesses and the known jump/nonjump values."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .core import Family, TheorySignature, find_embedding, single_edge
from .extremal import DEFAULT_BUDGET, extremal_number
from .lagrangian import LagrangianConfig, blowup, blowup_density


@dataclass
class DegenerateWitness:
    member: int
    t: tuple[int, ...]
    embedding: tuple[int, ...]


def degenerate_witness(fam: Family, t_cap: int | None = None) -> DegenerateWitness | None:
    """Find a member inside a ``(t, ..., t)``-blowup of one edge.

    ``t`` grows from 1 up to ``min(|V_F|, t_cap)``; a member on ``v`` vertices
    that fits in some blowup already fits with ``t = v``. A hit means the
    family has Turán density 0. No hit with ``t_cap`` at least the largest
    member size means the density is at least ``m / r^r``.
    """
    theory = fam.theory
    if t_cap is None:
        t_cap = max((F.n for F in fam), default=1)
    if t_cap < 1:
        raise ValueError("t_cap must be positive")
    S = single_edge(theory)
    for i, F in enumerate(fam):
        for t in range(1, min(F.n, t_cap) + 1):
            psi = find_embedding(F, blowup(S, [t] * theory.r))
            if psi is not None:
                return DegenerateWitness(i, (t,) * theory.r, psi)
    return None


@dataclass
class JumpCertificate:
    alpha: float
    family: Family
    n_used: int
    pi_upper: float
    member_blowup_lbs: list[float]
    valid: bool
    reason: str = ""
    exhaustive: bool = True
    nodes_explored: int = 0

    def recheck(self) -> bool:
        return (self.exhaustive and self.pi_upper <= self.alpha
                and all(b > self.alpha for b in self.member_blowup_lbs))

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "n_used": self.n_used,
            "pi_upper": self.pi_upper,
            "member_blowup_lbs": self.member_blowup_lbs,
            "valid": self.valid,
            "reason": self.reason,
            "exhaustive": self.exhaustive,
            "nodes_explored": self.nodes_explored,
        }


def certify_jump(alpha: float, fam: Family, n_used: int, budget: int = DEFAULT_BUDGET,
                 config: LagrangianConfig | None = None, threads: int = 1) -> JumpCertificate:
    """Check a finite family against ``pi <= alpha < b(F)`` for every member.

    ``pi_upper`` is an exact extremal density at ``n_used``, which bounds the
    Turán density from above because those densities never increase in n.
    Member blowup densities are ascent values, i.e. lower bounds, which is
    the safe direction for ``b(F) > alpha``.
    """
    if len(fam) == 0:
        raise ValueError("certificate needs a nonempty family")
    res = extremal_number(fam.theory, n_used, fam, budget=budget, threads=threads)
    cfg = config or LagrangianConfig(threads=threads)
    lbs = [blowup_density(F, cfg).value for F in fam]
    cert = JumpCertificate(alpha, fam, n_used, res.density_bound, lbs, False,
                           exhaustive=res.exhaustive, nodes_explored=res.nodes_explored)
    if not res.exhaustive:
        cert.reason = f"extremal search at n={n_used} hit the node budget"
    elif res.density_bound > alpha:
        cert.reason = f"density bound {res.density_bound:.6g} exceeds alpha"
    elif any(b <= alpha for b in lbs):
        i = next(i for i, b in enumerate(lbs) if b <= alpha)
        cert.reason = f"member {i} blowup density {lbs[i]:.6g} does not exceed alpha"
    else:
        cert.valid = True
        cert.reason = "pi_upper <= alpha < every member blowup density"
    return cert


@dataclass
class NonjumpEntry:
    value: Fraction
    k: int
    source: str = "demonstrated nonjump 5r!/(2r^r) for r-graphs, pushed down the subgroup lattice"


def nonjump_catalog(theory: TheorySignature) -> list[NonjumpEntry]:
    """Known nonjumps ``5 m k / (2 r^r)`` for ``k = 1..r!/m`` (r >= 3)."""
    r, m = theory.r, theory.m
    if r < 3:
        raise ValueError("no nonjumps exist for r = 2: every alpha in [0, 1) is a jump")
    return [NonjumpEntry(Fraction(5 * m * k, 2 * r ** r), k)
            for k in range(1, factorial(r) // m + 1)]


@dataclass(frozen=True)
class Interval:
    """Half-open interval ``[lo, hi)``."""

    lo: Fraction
    hi: Fraction
    note: str = field(default="", compare=False)

    def __contains__(self, x) -> bool:
        return self.lo <= x < self.hi


def jump_interval(theory: TheorySignature) -> Interval:
    """Every alpha in ``[0, m/r^r)`` is a jump."""
    note = "for r = 2 every alpha in [0, 1) is a jump" if theory.r == 2 else ""
    return Interval(Fraction(0), Fraction(theory.m, theory.r ** theory.r), note)


def supersaturation_constant(epsilon: float, l: int, k: int) -> float:
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    if not l >= k >= 1:
        raise ValueError("need l >= k >= 1")
    return (epsilon / 2) / comb(l, k)


LE_ALPHA = "<= alpha"
GE_ALPHA_PLUS_C = ">= alpha + c"
BOUND_IN_GAP = "bound in gap (inconclusive)"
REFUTES = "inside forbidden gap (alpha, alpha + c): refutes the jump pair"


def gap_check(alpha: float, c: float, pi_upper: float, exact: bool = False) -> str:
    """Place a density against the gap ``(alpha, alpha + c)``.

    An upper bound landing in the gap says nothing; only an exact Turán
    density there refutes ``(alpha, c)``.
    """
    if pi_upper <= alpha:
        return LE_ALPHA
    if pi_upper >= alpha + c:
        return GE_ALPHA_PLUS_C
    return REFUTES if exact else BOUND_IN_GAP
