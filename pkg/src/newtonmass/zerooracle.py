"""Brute-force zero counting for systems in one or two variables, and a Monte
Carlo volume estimator.  These are the independent ground truth that the
Newton-number bounds are tested against.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import CommonComponentError, ConvergenceError, UnsupportedDimension
from .exactpoly import ZERO, GaussianRational, Polynomial, evaluate_many
from .hull import RatPolytope

MAX_SWEEPS = 500
RESIDUAL_TOL = 1e-8
SIMPLE_TOL = 1e-6
DEDUP_RADIUS = 1e-6


# ----------------------------------------------------------------------
# univariate roots


def _coefficients(p: Polynomial) -> np.ndarray:
    """Dense complex coefficients, highest degree first."""
    if p.n != 1:
        raise UnsupportedDimension("expected a univariate polynomial")
    deg = p.total_degree()
    coeffs = np.zeros(deg + 1, dtype=complex)
    for (e,), c in p.terms.items():
        coeffs[deg - e] = complex(c)
    return coeffs


def _durand_kerner(coeffs: np.ndarray) -> Tuple[np.ndarray, bool]:
    a = coeffs / coeffs[0]
    deg = len(a) - 1
    # Fujiwara-type radius for the initial circle
    radius = 2 * max(abs(a[k]) ** (1.0 / k) for k in range(1, deg + 1))
    radius = max(radius, 1e-3)
    angles = 2 * np.pi * np.arange(deg) / deg + 0.4
    z = radius * np.exp(1j * angles) * (1 + 0.01 * np.arange(deg) / deg)
    for _ in range(MAX_SWEEPS):
        num = np.polyval(a, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        den = np.prod(diff, axis=1)
        step = num / den
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(z))):
            return z, True
    return z, False


def _polish(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    d = np.polyder(coeffs)
    out = z.copy()
    for k, r in enumerate(z):
        cur, best = r, abs(np.polyval(coeffs, r))
        for _ in range(8):
            dv = np.polyval(d, cur)
            if dv == 0:
                break
            nxt = cur - np.polyval(coeffs, cur) / dv
            val = abs(np.polyval(coeffs, nxt))
            if not val < best:
                break
            cur, best = nxt, val
        out[k] = cur
    return out


def _monic_residual(coeffs: np.ndarray, z: np.ndarray) -> float:
    a = coeffs / coeffs[0]
    return float(np.max(np.abs(np.polyval(a, z)))) if len(z) else 0.0


def roots_univariate(p: Polynomial) -> List[complex]:
    """All deg(p) complex roots, listed with multiplicity, by Durand-Kerner iteration."""
    coeffs = _coefficients(p) if isinstance(p, Polynomial) else np.asarray(p, dtype=complex)
    if len(coeffs) < 2:
        raise ValueError("roots need a polynomial of degree >= 1")
    # factor out roots at 0 exactly
    nz = len(coeffs) - 1
    while nz > 0 and coeffs[nz] == 0:
        nz -= 1
    zero_roots = len(coeffs) - 1 - nz
    core = coeffs[: nz + 1]
    if len(core) < 2:
        return [0j] * zero_roots
    roots, converged = _durand_kerner(core)
    if not converged and _monic_residual(core, roots) > RESIDUAL_TOL:
        raise ConvergenceError(f"Durand-Kerner did not converge in {MAX_SWEEPS} sweeps")
    roots = _polish(core, roots)
    roots = sorted(list(roots) + [0j] * zero_roots, key=lambda r: (round(r.real, 9), round(r.imag, 9)))
    return [complex(r) for r in roots]


def roots_rescaled(coeffs: np.ndarray) -> List[complex]:
    """roots_univariate with retries on the scaled variable z = s*w when the plain run fails."""
    for s in (1.0, 0.5, 2.0, 0.1, 10.0):
        deg = len(coeffs) - 1
        scaled = coeffs * s ** np.arange(deg, -1, -1)
        try:
            return [s * r for r in roots_univariate(scaled)]
        except ConvergenceError:
            continue
    raise ConvergenceError("no scaling made Durand-Kerner converge")


# ----------------------------------------------------------------------
# resultants


def _as_univariate_in(p: Polynomial, var: int) -> List[Polynomial]:
    """Coefficients of p as a polynomial in variable `var`, each a polynomial in the
    remaining variable (n = 1), lowest degree first."""
    keep = 1 - var
    deg = p.degree_in(var)
    out = [dict() for _ in range(deg + 1)]
    for key, c in p.terms.items():
        out[key[var]][(key[keep],)] = c
    return [Polynomial(1, d) for d in out]


def _divide_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient of univariate a by b; the division is known to be exact."""
    rem = dict(a.terms)
    db = b.total_degree()
    lead = b.coefficient((db,))
    quot = {}
    while rem:
        da = max(k[0] for k in rem)
        if da < db:
            raise ArithmeticError("inexact division in fraction-free elimination")
        coef = rem[(da,)] / lead
        quot[(da - db,)] = coef
        for (e,), c in b.terms.items():
            key = (e + da - db,)
            v = rem.get(key, ZERO) - coef * c
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return Polynomial(1, quot)


def _bareiss_det(m: List[List[Polynomial]]) -> Polynomial:
    size = len(m)
    m = [list(row) for row in m]
    one = Polynomial.constant(1, 1)
    prev = one
    sign = 1
    for k in range(size - 1):
        if m[k][k].is_zero():
            swap = next((r for r in range(k + 1, size) if not m[r][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(1)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = _divide_exact(num, prev)
        prev = m[k][k]
    det = m[size - 1][size - 1]
    return det if sign > 0 else -det


def sylvester_matrix(p1: Polynomial, p2: Polynomial, eliminate: int) -> List[List[Polynomial]]:
    a = _as_univariate_in(p1, eliminate)[::-1]  # highest first
    b = _as_univariate_in(p2, eliminate)[::-1]
    m, k = len(a) - 1, len(b) - 1
    zero = Polynomial.zero(1)
    size = m + k
    rows = []
    for i in range(k):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - k - 1 - i))
    return rows


def sylvester_resultant(p1: Polynomial, p2: Polynomial, eliminate: int = 1) -> Polynomial:
    """Res_{z_eliminate}(p1, p2), a polynomial in the other variable."""
    if p1.n != 2 or p2.n != 2:
        raise UnsupportedDimension("resultants are implemented for two variables")
    if p1.degree_in(eliminate) < 1 or p2.degree_in(eliminate) < 1:
        raise ValueError("both polynomials need positive degree in the eliminated variable")
    res = _bareiss_det(sylvester_matrix(p1, p2, eliminate))
    if res.is_zero():
        raise CommonComponentError("resultant vanishes identically: common component")
    return res


# ----------------------------------------------------------------------
# zero counting


@dataclass
class Zero:
    point: Tuple[complex, ...]
    residual: float
    jacobian_abs: float


@dataclass
class ZeroSet:
    zeros: List[Zero] = field(default_factory=list)
    resultant_degree: Optional[int] = None

    @property
    def count(self) -> int:
        return len(self.zeros)

    @property
    def certified_simple(self) -> bool:
        return all(z.jacobian_abs > SIMPLE_TOL for z in self.zeros)


def _partials(p: Polynomial) -> List[Polynomial]:
    out = []
    for k in range(p.n):
        terms = {}
        for key, c in p.terms.items():
            if key[k]:
                nk = key[:k] + (key[k] - 1,) + key[k + 1:]
                terms[nk] = c * key[k]
        out.append(Polynomial(p.n, terms))
    return out


def _newton_2d(p1, p2, grads, z, steps=40):
    z = np.array(z, dtype=complex)
    best = z
    best_res = np.inf
    for _ in range(steps):
        pts = z[None, :]
        f = np.array([evaluate_many(p1, pts)[0], evaluate_many(p2, pts)[0]])
        res = abs(f[0]) + abs(f[1])
        if not np.isfinite(res):
            break
        if res < best_res:
            best, best_res = z.copy(), res
        J = np.array([[evaluate_many(g, pts)[0] for g in grads[0]],
                      [evaluate_many(g, pts)[0] for g in grads[1]]])
        try:
            dz = np.linalg.solve(J, f)
        except np.linalg.LinAlgError:
            break
        z = z - dz
        if np.all(np.abs(dz) < 1e-16 * np.maximum(1, np.abs(z))):
            break
    pts = z[None, :]
    res = abs(evaluate_many(p1, pts)[0]) + abs(evaluate_many(p2, pts)[0])
    if res < best_res:
        best, best_res = z, res
    return best, best_res


def _restrict(p: Polynomial, var: int, value: complex) -> np.ndarray:
    """Coefficients (highest first) of p with the other variable fixed to value."""
    keep = 1 - var
    deg = p.degree_in(var)
    coeffs = np.zeros(deg + 1, dtype=complex)
    for key, c in p.terms.items():
        coeffs[deg - key[var]] += complex(c) * value ** key[keep]
    return coeffs


def _trim(coeffs: np.ndarray) -> np.ndarray:
    scale = np.max(np.abs(coeffs)) if len(coeffs) else 0.0
    k = 0
    while k < len(coeffs) - 1 and abs(coeffs[k]) <= 1e-12 * scale:
        k += 1
    return coeffs[k:]


def _cluster(values: Sequence[complex], radius: float) -> List[complex]:
    centres: List[List[complex]] = []
    for v in values:
        for group in centres:
            if abs(group[0] - v) <= radius * max(1.0, abs(v)):
                group.append(v)
                break
        else:
            centres.append([v])
    return [complex(np.mean(g)) for g in centres]


def _count_1d(p: Polynomial) -> ZeroSet:
    if p.is_zero():
        raise CommonComponentError("the zero polynomial has no discrete zero set")
    if p.total_degree() < 1:
        return ZeroSet([], 0)
    coeffs = _coefficients(p)
    roots = _cluster(roots_rescaled(coeffs), 1e-4)
    d = np.polyder(coeffs)
    zeros = [Zero((r,), abs(np.polyval(coeffs, r)), abs(np.polyval(d, r))) for r in roots]
    return ZeroSet(zeros, p.total_degree())


def count_common_zeros_2d(p1: Polynomial, p2: Polynomial) -> ZeroSet:
    """Common zeros of two polynomials in two variables by elimination.

    The resultant in y gives candidate x-coordinates; for each, the y-roots
    of both restricted polynomials are candidates.  Every candidate is
    Newton-polished on the full system and kept when its residual drops below
    1e-8; survivors closer than 1e-6 are merged.
    """
    if p1.n != 2 or p2.n != 2:
        raise UnsupportedDimension("count_common_zeros_2d needs two polynomials in two variables")
    if p1.is_zero() or p2.is_zero():
        raise CommonComponentError("a zero polynomial has no discrete zero set")

    var = 1
    if p1.degree_in(1) < 1 or p2.degree_in(1) < 1:
        var = 0
    if p1.degree_in(var) < 1 or p2.degree_in(var) < 1:
        # one polynomial depends on a single variable; solve it directly
        return _count_split(p1, p2)
    res = sylvester_resultant(p1, p2, eliminate=var)
    keep = 1 - var
    if res.total_degree() < 1:
        return ZeroSet([], 0)
    cand_keep = _cluster(roots_rescaled(_coefficients(res)), 1e-4)
    candidates = []
    for a in cand_keep:
        for p in (p1, p2):
            coeffs = _trim(_restrict(p, var, a))
            if len(coeffs) < 2:
                continue
            for b in roots_rescaled(coeffs):
                pt = [0j, 0j]
                pt[keep], pt[var] = a, b
                candidates.append(pt)
    return _finish(p1, p2, candidates, res.total_degree())


def _count_split(p1, p2) -> ZeroSet:
    candidates = []
    for p, other in ((p1, p2), (p2, p1)):
        for k in (0, 1):
            if p.degree_in(1 - k) == 0 and p.degree_in(k) >= 1:
                uni = Polynomial(1, {(key[k],): c for key, c in p.terms.items()})
                for a in _cluster(roots_rescaled(_coefficients(uni)), 1e-4):
                    coeffs = _trim(_restrict(other, 1 - k, a))
                    if len(coeffs) < 2:
                        if abs(coeffs[0]) < RESIDUAL_TOL:
                            raise CommonComponentError("common component along a coordinate line")
                        continue
                    for b in roots_rescaled(coeffs):
                        pt = [0j, 0j]
                        pt[k], pt[1 - k] = a, b
                        candidates.append(pt)
    return _finish(p1, p2, candidates, None)


def _finish(p1, p2, candidates, res_degree) -> ZeroSet:
    grads = (_partials(p1), _partials(p2))
    found: List[Zero] = []
    for c in candidates:
        z, r = _newton_2d(p1, p2, grads, c)
        if not r < RESIDUAL_TOL:
            continue
        if any(np.max(np.abs(z - np.array(f.point))) <= DEDUP_RADIUS * max(1.0, np.max(np.abs(z)))
               for f in found):
            continue
        pts = z[None, :]
        J = np.array([[evaluate_many(g, pts)[0] for g in grads[0]],
                      [evaluate_many(g, pts)[0] for g in grads[1]]])
        found.append(Zero((complex(z[0]), complex(z[1])), float(r), float(abs(np.linalg.det(J)))))
    found.sort(key=lambda f: (round(f.point[0].real, 8), round(f.point[0].imag, 8),
                              round(f.point[1].real, 8), round(f.point[1].imag, 8)))
    return ZeroSet(found, res_degree)


def count_zeros(polys: Sequence[Polynomial]) -> ZeroSet:
    """Dispatch on dimension: one polynomial in one variable or two in two."""
    polys = list(polys)
    n = polys[0].n
    if n == 1 and len(polys) == 1:
        return _count_1d(polys[0])
    if n == 2 and len(polys) == 2:
        return count_common_zeros_2d(*polys)
    raise UnsupportedDimension("the zero oracle handles square systems with n <= 2")


# ----------------------------------------------------------------------
# Monte Carlo volume


def monte_carlo_volume(P: RatPolytope, N: int = 1_000_000, seed: int = 0,
                       chunk: int = 250_000) -> float:
    """Hit ratio of N uniform points in the bounding box, times the box volume."""
    if P.is_degenerate():
        return 0.0
    V = np.array([[float(c) for c in v] for v in P.vertices])
    lo, hi = V.min(axis=0), V.max(axis=0)
    box = float(np.prod(hi - lo))
    if box == 0:
        return 0.0
    A = np.array([[float(c) for c in a] for a, _ in P.facets])
    b = np.array([float(b) for _, b in P.facets])
    margin = 1e-12 * (1 + np.abs(b))
    rng = np.random.default_rng(seed)
    hits = 0
    left = N
    while left > 0:
        m = min(chunk, left)
        X = lo + rng.random((m, P.n)) * (hi - lo)
        hits += int(np.count_nonzero(np.all(X @ A.T <= b + margin, axis=1)))
        left -= m
    return box * hits / N
