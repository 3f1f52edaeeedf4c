"""Compiled inner loops for the simplex ascent.

Edge polynomials are passed as ``idx`` (terms x r vertex indices) and
``coef`` (term coefficients).
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def poly_value(idx, coef, x):
    total = 0.0
    for t in range(idx.shape[0]):
        prod = coef[t]
        for k in range(idx.shape[1]):
            prod *= x[idx[t, k]]
        total += prod
    return total


@njit(cache=True, nogil=True)
def poly_gradient(idx, coef, x, out):
    out[:] = 0.0
    r = idx.shape[1]
    for t in range(idx.shape[0]):
        for k in range(r):
            prod = coef[t]
            for j in range(r):
                if j != k:
                    prod *= x[idx[t, j]]
            out[idx[t, k]] += prod


@njit(cache=True, nogil=True)
def project_simplex(v, out):
    """Euclidean projection of ``v`` onto the probability simplex."""
    n = v.shape[0]
    u = np.sort(v)[::-1]
    css = 0.0
    theta = 0.0
    for k in range(n):
        css += u[k]
        t = (css - 1.0) / (k + 1)
        if u[k] - t > 0.0:
            theta = t
    s = 0.0
    for i in range(n):
        w = v[i] - theta
        out[i] = w if w > 0.0 else 0.0
        s += out[i]
    # absorb rounding so the iterate sums to one
    if s > 0.0:
        for i in range(n):
            out[i] /= s


@njit(cache=True, nogil=True)
def _polish(idx, coef, x, max_iter, tol, stats):
    n = x.shape[0]
    g = np.empty(n)
    y = np.empty(n)
    trial = np.empty(n)
    f = poly_value(idx, coef, x)
    step = 1.0
    it = 0
    while it < max_iter:
        it += 1
        poly_gradient(idx, coef, x, g)
        fy = -1.0
        while True:
            for i in range(n):
                trial[i] = x[i] + step * g[i]
            project_simplex(trial, y)
            fy = poly_value(idx, coef, y)
            if fy >= f or step < 1e-30:
                break
            step *= 0.5
        if fy < f:
            break
        move = 0.0
        s = 0.0
        for i in range(n):
            d = abs(y[i] - x[i])
            if d > move:
                move = d
            x[i] = y[i]
            s += x[i]
            if x[i] < stats[1]:
                stats[1] = x[i]
        if abs(s - 1.0) > stats[0]:
            stats[0] = abs(s - 1.0)
        f = fy
        if move < tol:
            break
        step *= 2.0
    return f, it


@njit(cache=True, nogil=True)
def ascend(idx, coef, x0, max_iter, tol, drop):
    """Projected gradient ascent from ``x0`` with one support-drop pass.

    Returns ``(x, p(x), iterations, stats)`` where ``stats[0]`` is the largest
    ``|sum(x) - 1|`` and ``stats[1]`` the smallest coordinate over all iterates.
    """
    x = x0.copy()
    stats = np.zeros(2)
    stats[1] = 1.0
    f, it = _polish(idx, coef, x, max_iter, tol, stats)
    kept = x.copy()
    dropped = False
    s = 0.0
    for i in range(x.shape[0]):
        if 0.0 < x[i] < drop:
            x[i] = 0.0
            dropped = True
        s += x[i]
    if dropped and s > 0.0:
        for i in range(x.shape[0]):
            x[i] /= s
        f2, it2 = _polish(idx, coef, x, max_iter, tol, stats)
        it += it2
        if f2 >= f:
            f = f2
        else:
            x[:] = kept
    elif dropped:
        x[:] = kept
    return x, f, it, stats
