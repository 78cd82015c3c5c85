"""Polyhedral indicators Psi_{u,x} of u = log|P| and u = (1/q) log sum |P_k|^q.

An indicator is stored through its convex image psi(t) = max_{g in G} <g, t>,
where the generator set G is a finite subset of the nonnegative orthant.  In
the original variables Psi(y) = psi(log|y_1|, ..., log|y_n|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from numbers import Rational
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatch, UnsupportedDimension, ZeroPolynomialError
from .exactpoly import (
    MAX_DIM,
    GaussianRational,
    PolyMap,
    Polynomial,
    as_point,
    evaluate_many,
    support_at,
)
from .hull import hull

Generator = Tuple[Fraction, ...]


def _as_generator(g) -> Generator:
    g = tuple(Fraction(c) for c in g)
    if any(c < 0 for c in g):
        raise ValueError(f"indicator generators must be nonnegative, got {g}")
    return g


class PolyhedralIndicator:
    """Indicator with convex image t -> max over generators g of <g, t>."""

    __slots__ = ("n", "generators")

    def __init__(self, generators: Iterable, n: int | None = None):
        gens = sorted({_as_generator(g) for g in generators})
        if not gens:
            raise ValueError("an indicator needs at least one generator")
        dims = {len(g) for g in gens}
        if len(dims) != 1:
            raise DimensionMismatch("generators have mixed dimensions")
        d = dims.pop()
        if n is not None and n != d:
            raise DimensionMismatch(f"generators have dimension {d}, expected {n}")
        if not 1 <= d <= MAX_DIM:
            raise UnsupportedDimension(f"dimension must be in 1..{MAX_DIM}")
        object.__setattr__(self, "n", d)
        object.__setattr__(self, "generators", tuple(gens))

    def __setattr__(self, name, value):
        raise AttributeError("PolyhedralIndicator is immutable")

    def canonical(self) -> "PolyhedralIndicator":
        """Same indicator, keeping only the vertices of conv(G)."""
        return PolyhedralIndicator(hull(self.generators).vertices, self.n)

    def equivalent(self, other: "PolyhedralIndicator") -> bool:
        return self.n == other.n and self.canonical().generators == other.canonical().generators

    def __eq__(self, other):
        if not isinstance(other, PolyhedralIndicator):
            return NotImplemented
        return self.n == other.n and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        gens = ", ".join("(" + ", ".join(str(c) for c in g) + ")" for g in self.generators)
        return f"PolyhedralIndicator({{{gens}}})"

    def psi(self, t):
        return eval_psi(self, t)

    def __call__(self, y):
        return eval_Psi(self, y)


@dataclass(frozen=True)
class UFunctionSpec:
    """A function u in the logarithmic growth class, given by a polynomial payload.

    ``kind`` is ``"log-abs"`` for u = log|P| or ``"log-sum"`` for
    u = (1/q) log sum_k |P_k|^q.
    """

    kind: str
    payload: object
    basepoint: Tuple[GaussianRational, ...] = field(default=None)

    def __post_init__(self):
        if self.kind == "log-abs":
            if not isinstance(self.payload, Polynomial):
                raise TypeError("log-abs payload must be a Polynomial")
            if self.payload.is_zero():
                raise ZeroPolynomialError("log|0| is identically -inf")
        elif self.kind == "log-sum":
            if not isinstance(self.payload, PolyMap):
                raise TypeError("log-sum payload must be a PolyMap")
            if any(p.is_zero() for p in self.payload.components):
                raise ZeroPolynomialError("map has a zero component")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")
        object.__setattr__(self, "basepoint", as_point(self.basepoint, self.payload.n))

    @classmethod
    def log_abs(cls, p: Polynomial, at=None) -> "UFunctionSpec":
        return cls("log-abs", p, at)

    @classmethod
    def log_sum(cls, m: PolyMap, at=None) -> "UFunctionSpec":
        return cls("log-sum", m, at)

    @property
    def n(self) -> int:
        return self.payload.n

    @property
    def components(self) -> Tuple[Polynomial, ...]:
        if self.kind == "log-abs":
            return (self.payload,)
        return self.payload.components

    @property
    def q(self) -> float:
        return float(self.payload.q) if self.kind == "log-sum" else 1.0

    def at(self, x) -> "UFunctionSpec":
        return UFunctionSpec(self.kind, self.payload, x)

    def values(self, Z) -> np.ndarray:
        """u evaluated at the rows of Z (shape (N, n)); -inf on the zero set."""
        Z = np.atleast_2d(np.asarray(Z, dtype=complex))
        with np.errstate(divide="ignore"):
            logs = [np.log(np.abs(evaluate_many(p, Z))) for p in self.components]
        if len(logs) == 1:
            return logs[0]
        return combine_logs(np.vstack(logs), self.q)


def combine_logs(logs: np.ndarray, q: float) -> np.ndarray:
    """(1/q) log sum_k exp(q * logs[k]), stable and -inf aware."""
    top = np.max(logs, axis=0)
    safe = np.where(np.isfinite(top), top, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.sum(np.exp(q * (logs - safe)), axis=0)
        out = safe + np.log(s) / q
    return np.where(np.isneginf(top), -np.inf, out)


# ----------------------------------------------------------------------
# construction


def from_polynomial_at(p: Polynomial, x=None) -> PolyhedralIndicator:
    """Psi_{log|p|, x}: generators are the exponents of the Taylor expansion at x."""
    return PolyhedralIndicator(support_at(p, x), p.n)


def from_map_at(m: PolyMap, x=None) -> PolyhedralIndicator:
    if any(p.is_zero() for p in m.components):
        raise ZeroPolynomialError("map has a zero component")
    gens = set()
    for p in m.components:
        gens |= support_at(p, x)
    return PolyhedralIndicator(gens, m.n)


def indicator_of(u: UFunctionSpec, x=None) -> PolyhedralIndicator:
    """Indicator of u at x (default: u's basepoint)."""
    x = u.basepoint if x is None else x
    if u.kind == "log-abs":
        return from_polynomial_at(u.payload, x)
    return from_map_at(u.payload, x)


def sup_combine(indicators: Sequence[PolyhedralIndicator]) -> PolyhedralIndicator:
    indicators = list(indicators)
    if not indicators:
        raise ValueError("sup of an empty family")
    n = indicators[0].n
    if any(phi.n != n for phi in indicators):
        raise DimensionMismatch("indicators have different dimensions")
    gens = [g for phi in indicators for g in phi.generators]
    return PolyhedralIndicator(gens, n).canonical()


def standard_indicator(n: int) -> PolyhedralIndicator:
    """Indicator of log|z| (up to a bounded term): max_k log|y_k|."""
    return PolyhedralIndicator([tuple(int(j == k) for j in range(n)) for k in range(n)], n)


def s_indicator(a: Sequence) -> PolyhedralIndicator:
    """S_a(y) = max_k a_k^{-1} log|y_k| for a positive weight vector a."""
    a = [Fraction(c) for c in a]
    if any(c <= 0 for c in a):
        raise ValueError("weights must be positive")
    n = len(a)
    return PolyhedralIndicator(
        [tuple(1 / a[k] if j == k else Fraction(0) for j in range(n)) for k in range(n)], n
    )


# ----------------------------------------------------------------------
# evaluation


def eval_psi(phi: PolyhedralIndicator, t):
    """max_g <g, t>; exact (a Fraction) when every entry of t is rational."""
    if len(t) != phi.n:
        raise DimensionMismatch(f"direction has dimension {len(t)}, expected {phi.n}")
    if all(isinstance(c, (int, Rational)) for c in t):
        t = [Fraction(c) for c in t]
        return max(sum(g_k * t_k for g_k, t_k in zip(g, t)) for g in phi.generators)
    t = [float(c) for c in t]
    return max(math.fsum(float(g_k) * t_k for g_k, t_k in zip(g, t)) for g in phi.generators)


def eval_Psi(phi: PolyhedralIndicator, y) -> float:
    """Psi(y) = max_g sum_k g_k log|y_k|, with 0 * log 0 = 0."""
    if len(y) != phi.n:
        raise DimensionMismatch(f"point has dimension {len(y)}, expected {phi.n}")
    mods = [abs(complex(c)) for c in y]
    logs = [math.log(m) if m > 0 else -math.inf for m in mods]
    best = -math.inf
    for g in phi.generators:
        val = 0.0
        for g_k, l_k in zip(g, logs):
            if g_k == 0:
                continue
            if l_k == -math.inf:
                val = -math.inf
                break
            val += float(g_k) * l_k
        best = max(best, val)
    return best


def eval_Psi_many(phi: PolyhedralIndicator, Y) -> np.ndarray:
    """Vectorised eval_Psi over the rows of Y (shape (N, n))."""
    Y = np.atleast_2d(np.asarray(Y, dtype=complex))
    if Y.shape[1] != phi.n:
        raise DimensionMismatch(f"expected points of shape (N, {phi.n})")
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(Y))
    G = np.array([[float(c) for c in g] for g in phi.generators])
    best = np.full(Y.shape[0], -np.inf)
    for g in G:
        mask = g > 0
        if mask.any():
            val = logs[:, mask] @ g[mask]
        else:
            val = np.zeros(Y.shape[0])
        best = np.maximum(best, val)
    return best


# ----------------------------------------------------------------------
# growth characteristics


def _unit(n, k):
    return tuple(Fraction(int(j == k)) for j in range(n))


def sigma(phi: PolyhedralIndicator) -> Fraction:
    """Logarithmic type psi(1, ..., 1)."""
    return eval_psi(phi, (Fraction(1),) * phi.n)


def multitype(phi: PolyhedralIndicator) -> Tuple[Fraction, ...]:
    return tuple(eval_psi(phi, _unit(phi.n, k)) for k in range(phi.n))


def _positive_direction(a, n):
    if len(a) != n:
        raise DimensionMismatch(f"direction has dimension {len(a)}, expected {n}")
    a = tuple(Fraction(c) for c in a)
    if any(c <= 0 for c in a):
        raise ValueError(f"direction must be strictly positive, got {a}")
    return a


def directional_lelong_inf(phi: PolyhedralIndicator, a) -> Fraction:
    return eval_psi(phi, _positive_direction(a, phi.n))


def lelong_at_point(u: UFunctionSpec, x=None, a=None) -> Fraction:
    """Directional Lelong number of u at x: min over generators of <a, g>."""
    phi = indicator_of(u, x)
    a = (Fraction(1),) * phi.n if a is None else _positive_direction(a, phi.n)
    return min(sum(g_k * a_k for g_k, a_k in zip(g, a)) for g in phi.generators)


def positive_closure(phi: PolyhedralIndicator, x) -> PolyhedralIndicator:
    """Indicator of phi at the point x: coordinates with x_k != 0 get t_k -> t_k^+."""
    if len(x) != phi.n:
        raise DimensionMismatch(f"point has dimension {len(x)}, expected {phi.n}")
    free = [k for k, c in enumerate(x) if complex(c) != 0]
    gens = set()
    for g in phi.generators:
        for r in range(len(free) + 1):
            for S in combinations(free, r):
                gens.add(tuple(Fraction(0) if k in S else c for k, c in enumerate(g)))
    return PolyhedralIndicator(gens, phi.n)


def downward_closure(points: Iterable[Sequence[int]]) -> frozenset:
    out = set()
    for K in points:
        out.update(product(*(range(int(e) + 1) for e in K)))
    return frozenset(out)


def generic_indicator(u: UFunctionSpec) -> PolyhedralIndicator:
    """Psi_u, the indicator at a generic point: exponents J with d^J P not identically 0."""
    gens = set()
    for p in u.components:
        gens |= downward_closure(p.support)
    return PolyhedralIndicator(gens, u.n)


def is_I0(phi: PolyhedralIndicator) -> bool:
    """True iff Psi is locally bounded off the origin.

    For every nonempty proper coordinate set S some generator must vanish on S,
    otherwise Psi = -inf on the coordinate subspace {y_k = 0, k in S}.
    """
    n = phi.n
    for r in range(1, n):
        for S in combinations(range(n), r):
            if not any(all(g[k] == 0 for k in S) for g in phi.generators):
                return False
    return True


def majorant_constant(u: UFunctionSpec, x=None, samples: int = 64) -> float:
    """max of u on the unit torus centred at x, i.e. g'(u, x, 0).

    Lattice maximum polished by local search; still a lower estimate of the
    true maximum.
    """
    from .numericlab import TorusSpec, torus_max

    if samples < 1:
        raise ValueError("samples must be >= 1")
    x = u.basepoint if x is None else as_point(x, u.n)
    spec = TorusSpec([complex(c) for c in x], [0.0] * u.n, max(8, samples))
    return torus_max(u, spec, refine=True)
