"""Blowups, edge polynomials and blowup density.

The blowup density of ``G`` is ``m * max p_G(x)`` over the probability
simplex, where ``p_G`` is the multilinear edge polynomial. The maximum is
approached with multi-start projected gradient ascent, so reported values
are lower bounds.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import factorial, prod
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .core import GDH, TheorySignature

SIMPLEX_TOL = 1e-12
VALUE_TOL = 1e-9


def blowup(G: GDH, t: Sequence[int]) -> GDH:
    """``t``-blowup: vertex ``i`` becomes ``t[i]`` consecutive clones."""
    t = [int(x) for x in t]
    if len(t) != G.n:
        raise ValueError(f"blowup vector has length {len(t)}, expected {G.n}")
    if any(x <= 0 for x in t):
        raise ValueError("blowup sizes must be positive")
    offsets = np.concatenate([[0], np.cumsum(t)]).tolist()
    clones = [range(offsets[i], offsets[i + 1]) for i in range(G.n)]
    canon = G.theory.canonical
    edges = set()
    for e in G.edges:
        for image in product(*(clones[v] for v in e)):
            edges.add(canon(image))
    return GDH(G.theory, offsets[-1], frozenset(edges))


@dataclass(frozen=True)
class EdgePolynomial:
    """``sum_R e_R * prod_{i in R} x_i`` over r-sets ``R``."""

    n: int
    r: int
    terms: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        object.__setattr__(self, "terms", dict(sorted(self.terms.items())))

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.terms:
            return np.zeros((0, self.r), dtype=np.int64), np.zeros(0)
        idx = np.array(list(self.terms), dtype=np.int64).reshape(-1, self.r)
        coef = np.array(list(self.terms.values()), dtype=np.float64)
        return idx, coef

    def __call__(self, x) -> float:
        return evaluate(self, x)

    def exact(self, x: Sequence[Fraction | int]) -> Fraction:
        return sum((c * prod(Fraction(x[i]) for i in R) for R, c in self.terms.items()),
                   Fraction(0))


def edge_polynomial(G: GDH) -> EdgePolynomial:
    terms: dict[tuple[int, ...], int] = {}
    for e in G.edges:
        R = tuple(sorted(e))
        terms[R] = terms.get(R, 0) + 1
    return EdgePolynomial(G.n, G.r, terms)


def evaluate(p: EdgePolynomial, x) -> float:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (p.n,):
        raise ValueError(f"point has shape {x.shape}, expected ({p.n},)")
    idx, coef = p.arrays()
    return float(_kernels.poly_value(idx, coef, x))


def gradient(p: EdgePolynomial, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (p.n,):
        raise ValueError(f"point has shape {x.shape}, expected ({p.n},)")
    idx, coef = p.arrays()
    out = np.empty(p.n)
    _kernels.poly_gradient(idx, coef, x, out)
    return out


def project_simplex(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    out = np.empty_like(v)
    _kernels.project_simplex(v, out)
    return out


def check_simplex(x, tol: float = SIMPLEX_TOL) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0) or abs(x.sum() - 1.0) > tol:
        raise ValueError("not a point of the probability simplex")
    return x


@dataclass
class LagrangianConfig:
    starts: int = 100
    seed: int = 0
    max_iter: int = 100_000
    tol: float = 1e-12
    drop: float = 1e-10
    agree_top: int = 10
    agree_tol: float = VALUE_TOL
    threads: int = 1


@dataclass
class LagrangianResult:
    value: float
    argmax: tuple[float, ...]
    starts_used: int
    converged: bool
    start_values: tuple[float, ...] = field(default=(), repr=False)
    max_sum_error: float = 0.0
    min_weight: float = 0.0
    iterations: int = 0

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "argmax": list(self.argmax),
            "starts_used": self.starts_used,
            "converged": self.converged,
        }


def starting_points(n: int, starts: int, seed: int) -> np.ndarray:
    """Uniform point followed by ``starts - 1`` Dirichlet(1) draws."""
    rng = np.random.default_rng(seed)
    pts = np.empty((max(starts, 1), n))
    pts[0] = 1.0 / n
    if starts > 1:
        pts[1:] = rng.dirichlet(np.ones(n), size=starts - 1)
    return pts


def blowup_density(G: GDH, config: LagrangianConfig | None = None) -> LagrangianResult:
    cfg = config or LagrangianConfig()
    p = edge_polynomial(G)
    m = G.theory.m
    if not p.terms:
        return LagrangianResult(0.0, tuple([1.0 / G.n] * G.n) if G.n else (), 0, True)
    idx, coef = p.arrays()
    pts = starting_points(G.n, cfg.starts, cfg.seed)

    def run(x0):
        return _kernels.ascend(idx, coef, x0, cfg.max_iter, cfg.tol, cfg.drop)

    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            runs = list(pool.map(run, pts))
    else:
        runs = [run(x0) for x0 in pts]

    values = [m * float(f) for _, f, _, _ in runs]
    best = max(range(len(runs)), key=lambda i: (values[i], -i))
    x = runs[best][0]
    top = sorted(values, reverse=True)[:cfg.agree_top]
    return LagrangianResult(
        value=m * evaluate(p, x),
        argmax=tuple(float(v) for v in x),
        starts_used=len(runs),
        converged=top[0] - top[-1] <= cfg.agree_tol,
        start_values=tuple(values),
        max_sum_error=max(float(s[0]) for _, _, _, s in runs),
        min_weight=min(float(s[1]) for _, _, _, s in runs),
        iterations=sum(int(it) for _, _, it, _ in runs),
    )


def uniform_lower_bound(G: GDH) -> float:
    if G.n == 0:
        return 0.0
    p = edge_polynomial(G)
    return G.theory.m * evaluate(p, np.full(G.n, 1.0 / G.n))


def support_scan(G: GDH, max_n: int = 12) -> tuple[float, tuple[int, ...]]:
    """Best ``m * p_G`` over uniform weightings of vertex subsets.

    A heuristic cross-check for the ascent, not a certificate.
    """
    if G.n > max_n:
        raise ValueError(f"support scan is limited to n <= {max_n}")
    p = edge_polynomial(G)
    best, best_support = 0.0, ()
    for k in range(G.r, G.n + 1):
        for S in combinations(range(G.n), k):
            x = np.zeros(G.n)
            x[list(S)] = 1.0 / k
            v = G.theory.m * evaluate(p, x)
            if v > best + VALUE_TOL:
                best, best_support = v, S
    return best, best_support


def blowup_density_sequence(theory: TheorySignature, t: int, exact: bool = False):
    """Density of the ``(t, ..., t)``-blowup of one edge, ``m t^r (tr-r)!/(tr)!``."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    r = theory.r
    value = Fraction(theory.m * t ** r * factorial(t * r - r), factorial(t * r))
    return value if exact else float(value)
