"""Exact sparse multivariate polynomials over the Gaussian rationals Q(i).

A :class:`Polynomial` maps exponent tuples to :class:`GaussianRational`
coefficients.  Values are immutable; every operation returns a new object
and never stores a zero coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatch, UnsupportedDimension, ZeroPolynomialError

MAX_DIM = 4

Exponent = Tuple[int, ...]


class GaussianRational:
    """Complex number ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("cannot combine a GaussianRational real part with im")
            re, im = re.re, re.im
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value)
        if isinstance(value, float):
            return cls(Fraction(value))
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.im and not self.im:
            return GaussianRational(self.re * o.re)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational((self.re * o.re + self.im * o.im) / d,
                                (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / self ** (-k)
        result, base = GaussianRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # comparisons / conversions -----------------------------------------
    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return "i" if self.im == 1 else f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imag = "i" if mag == 1 else f"{mag}*i"
        return f"({self.re} {sign} {imag})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def as_point(x, n: int) -> Tuple[GaussianRational, ...]:
    """Coerce a sequence (or None for the origin) to an exact point of dimension n."""
    if x is None:
        return (ZERO,) * n
    pt = tuple(GaussianRational.coerce(c) for c in x)
    if len(pt) != n:
        raise DimensionMismatch(f"point has dimension {len(pt)}, expected {n}")
    return pt


def _check_dim(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_DIM:
        raise UnsupportedDimension(f"dimension must be in 1..{MAX_DIM}, got {n}")


class Polynomial:
    """Sparse polynomial in ``n`` variables with Gaussian rational coefficients."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Sequence[int], object] | Iterable = ()):
        _check_dim(n)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for key, coeff in items:
            key = tuple(int(e) for e in key)
            if len(key) != n:
                raise DimensionMismatch(f"exponent {key} does not have length {n}")
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            c = GaussianRational.coerce(coeff)
            if key in clean:
                c = clean[key] + c
            clean[key] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", {k: v for k, v in clean.items() if v})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, k: int) -> "Polynomial":
        exps = [0] * n
        exps[k] = 1
        return cls(n, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): c})

    # basic views ------------------------------------------------------
    @property
    def terms(self) -> Mapping[Exponent, GaussianRational]:
        return MappingProxyType(self._terms)

    @property
    def support(self) -> frozenset:
        return frozenset(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(k) for k in self._terms)

    def degree_in(self, k: int) -> int:
        if not self._terms:
            return -1
        return max(key[k] for key in self._terms)

    def coefficient(self, exps: Sequence[int]) -> GaussianRational:
        return self._terms.get(tuple(exps), ZERO)

    def is_constant(self) -> bool:
        return all(not any(k) for k in self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items()))

    # arithmetic -------------------------------------------------------
    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise DimensionMismatch(f"dimensions differ: {self.n} vs {other.n}")
            return other
        return Polynomial.constant(self.n, GaussianRational.coerce(other))

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ZERO) + c
        return Polynomial(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, ZERO) + c1 * c2
        return Polynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result, base = Polynomial.constant(self.n, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = GaussianRational.coerce(c)
        return Polynomial(self.n, {k: v * c for k, v in self._terms.items()})

    # equality ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        try:
            return self == Polynomial.constant(self.n, GaussianRational.coerce(other))
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.n, frozenset(self._terms.items()))))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.n}, {dict(sorted(self._terms.items()))!r})"

    def __str__(self):
        return format_polynomial(self)

    def __call__(self, *z):
        return evaluate(self, z)


@dataclass(frozen=True)
class PolyMap:
    """A polynomial mapping (P_1, ..., P_m) together with the exponent weight q
    used by u = (1/q) log sum |P_k|^q."""

    components: Tuple[Polynomial, ...]
    q: Fraction = Fraction(2)

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a polynomial map needs at least one component")
        n = comps[0].n
        for p in comps:
            if p.n != n:
                raise DimensionMismatch("map components must share one dimension")
        q = Fraction(self.q)
        if q <= 0:
            raise ValueError("q must be positive")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "q", q)

    @property
    def n(self) -> int:
        return self.components[0].n

    def __len__(self):
        return len(self.components)


# ----------------------------------------------------------------------
# module-level operations


def add(p: Polynomial, r: Polynomial) -> Polynomial:
    return p + r


def mul(p: Polynomial, r: Polynomial) -> Polynomial:
    return p * r


def taylor_shift(p: Polynomial, x0) -> Polynomial:
    """Return q with q(s) = p(x0 + s).

    The substitution z_k -> z_k + a_k is applied one variable at a time by
    binomial expansion, so the coefficient of s^J comes out as
    (d^J p)(x0) / J!.
    """
    x0 = as_point(x0, p.n)
    terms = dict(p.terms)
    for k, a in enumerate(x0):
        if not a:
            continue
        top = max((key[k] for key in terms), default=0)
        apow = [ONE]
        for _ in range(top):
            apow.append(apow[-1] * a)
        out = {}
        for key, c in terms.items():
            e = key[k]
            for i in range(e + 1):
                newkey = key[:k] + (i,) + key[k + 1:]
                out[newkey] = out.get(newkey, ZERO) + c * (math.comb(e, i) * apow[e - i])
        terms = {key: c for key, c in out.items() if c}
    return Polynomial(p.n, terms)


def support_at(p: Polynomial, x0=None) -> frozenset:
    """Exponents J with d^J p (x0) != 0, i.e. the support of the expansion at x0."""
    if p.is_zero():
        raise ZeroPolynomialError("the support at a point is undefined for the zero polynomial")
    return taylor_shift(p, x0).support


def partial_degrees(p: Polynomial) -> Tuple[int, ...]:
    if p.is_zero():
        raise ZeroPolynomialError("partial degrees of the zero polynomial are undefined")
    return tuple(max(key[k] for key in p.terms) for k in range(p.n))


def _horner(items, z, k, zero):
    # items: list of (exponent, coefficient); evaluates in variables k.. of z
    if k == len(z):
        total = zero
        for _, c in items:
            total = total + c
        return total
    groups = {}
    for key, c in items:
        groups.setdefault(key[k], []).append((key, c))
    acc = zero
    prev = None
    for e in sorted(groups, reverse=True):
        if prev is not None:
            acc = acc * z[k] ** (prev - e)
        acc = acc + _horner(groups[e], z, k + 1, zero)
        prev = e
    if prev:
        acc = acc * z[k] ** prev
    return acc


def evaluate(p: Polynomial, z: Sequence[complex]) -> complex:
    """Floating-point evaluation at a complex point (nested Horner scheme)."""
    z = tuple(complex(v) for v in z)
    if len(z) != p.n:
        raise DimensionMismatch(f"point has dimension {len(z)}, expected {p.n}")
    items = [(k, complex(c)) for k, c in p.terms.items()]
    return complex(_horner(items, z, 0, 0j))


def evaluate_exact(p: Polynomial, z) -> GaussianRational:
    z = as_point(z, p.n)
    return _horner(list(p.terms.items()), z, 0, ZERO)


def evaluate_many(p: Polynomial, Z: np.ndarray) -> np.ndarray:
    """Vectorised evaluation at the rows of a complex array of shape (N, n)."""
    Z = np.asarray(Z, dtype=complex)
    if Z.ndim != 2 or Z.shape[1] != p.n:
        raise DimensionMismatch(f"expected points of shape (N, {p.n}), got {Z.shape}")
    out = np.zeros(Z.shape[0], dtype=complex)
    if p.is_zero():
        return out
    degs = partial_degrees(p)
    powers = []
    for k in range(p.n):
        table = np.ones((degs[k] + 1, Z.shape[0]), dtype=complex)
        for e in range(1, degs[k] + 1):
            table[e] = table[e - 1] * Z[:, k]
        powers.append(table)
    for key, c in sorted(p.terms.items()):
        mono = np.full(Z.shape[0], complex(c))
        for k, e in enumerate(key):
            if e:
                mono = mono * powers[k][e]
        out += mono
    return out


def format_polynomial(p: Polynomial, names: Sequence[str] | None = None) -> str:
    """Render in the system-file grammar, e.g. ``x^2*y - 1``."""
    if names is None:
        names = ["x", "y", "z", "w"][: p.n] if p.n <= 4 else [f"x{k}" for k in range(p.n)]
    if p.is_zero():
        return "0"
    pieces = []
    # graded reverse order: highest total degree first
    for key, c in sorted(p.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0]))):
        mono = "*".join(
            names[k] if e == 1 else f"{names[k]}^{e}" for k, e in enumerate(key) if e
        )
        negative = (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
        mag = -c if negative else c
        if c.im != 0:
            coef = str(mag)  # "(a + b*i)" or "b*i"
        else:
            coef = str(mag.re)
            if "/" in coef and mono:
                coef = f"({coef})"
        if mono:
            body = mono if mag == 1 else f"{coef}*{mono}"
        else:
            body = coef
        pieces.append(("-" if negative else "+", body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
