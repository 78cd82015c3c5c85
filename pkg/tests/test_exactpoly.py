from __future__ import annotations

import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newtonmass.errors import DimensionMismatch, UnsupportedDimension, ZeroPolynomialError
from newtonmass.exactpoly import (
    GaussianRational,
    PolyMap,
    Polynomial,
    add,
    as_point,
    evaluate,
    evaluate_exact,
    evaluate_many,
    format_polynomial,
    mul,
    partial_degrees,
    support_at,
    taylor_shift,
)
from newtonmass.indicator import downward_closure

from strategies import gaussian, nonzero_polynomials, points, polynomials

X = Polynomial.variable(2, 0)
Y = Polynomial.variable(2, 1)
ONE = Polynomial.constant(2, 1)
x1 = Polynomial.variable(1, 0)


def _scale(p, z):
    """Sum of |c_J| |z^J|, the natural size for rounding errors in p(z)."""
    return sum(abs(complex(c)) * float(np.prod([max(1.0, abs(v)) ** e for v, e in zip(z, key)]))
               for key, c in p.terms.items())


class TestGaussianRational:
    def test_reduced_form(self):
        c = GaussianRational(Fraction(2, -4), Fraction(6, 3))
        assert c.re == Fraction(-1, 2) and c.re.denominator == 2
        assert c.im == 2

    def test_arithmetic(self):
        a = GaussianRational(1, 2)
        b = GaussianRational(Fraction(1, 2), -1)
        assert a * b == GaussianRational(Fraction(5, 2), 0)
        assert (a / b) * b == a
        assert a - a == 0
        assert a ** 2 == GaussianRational(-3, 4)
        assert a.conjugate() == GaussianRational(1, -2)
        assert a.abs2() == 5

    def test_equality_is_structural(self):
        assert GaussianRational(Fraction(2, 4)) == GaussianRational(Fraction(1, 2))
        assert hash(GaussianRational(3)) == hash(GaussianRational(Fraction(6, 2)))

    def test_immutable(self):
        with pytest.raises(AttributeError):
            GaussianRational(1).re = Fraction(2)

    def test_str(self):
        assert str(GaussianRational(Fraction(1, 2), Fraction(3, 4))) == "(1/2 + 3/4*i)"
        assert str(GaussianRational(0, 1)) == "i"

    @given(gaussian, gaussian)
    def test_complex_agrees(self, a, b):
        assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-9


class TestPolynomial:
    def test_add_examples(self):
        assert (X**2 + ONE) + Polynomial.constant(2, -1) == X**2
        p = X * Y - ONE
        assert p + Polynomial.zero(2) == p
        assert add(X + Y, X - Y) == X.scale(2)

    def test_mul_examples(self):
        assert mul(X, Y) == Polynomial.monomial((1, 1))
        assert (X - ONE) * (X + ONE) == X**2 - ONE
        assert (X * Y + ONE) * Polynomial.zero(2) == Polynomial.zero(2)

    def test_zero_is_empty(self):
        z = Polynomial.zero(3)
        assert z.is_zero() and dict(z.terms) == {}

    def test_no_zero_coefficients(self):
        p = Polynomial(2, {(1, 0): 1, (0, 1): 0})
        assert p.support == {(1, 0)}
        assert (X + Y - X).support == {(0, 1)}

    def test_dimension_checks(self):
        with pytest.raises(DimensionMismatch):
            X + x1
        with pytest.raises(UnsupportedDimension):
            Polynomial.variable(5, 0)
        with pytest.raises(DimensionMismatch):
            Polynomial(2, {(1,): 1})
        with pytest.raises(ValueError):
            Polynomial(2, {(-1, 0): 1})

    def test_polymap_validation(self):
        with pytest.raises(DimensionMismatch):
            PolyMap((X, x1))
        with pytest.raises(ValueError):
            PolyMap((X,), q=0)
        assert PolyMap((X, Y)).n == 2

    def test_partial_degrees(self):
        assert partial_degrees(X**2 * Y - ONE) == (2, 1)
        assert partial_degrees(Polynomial.constant(2, 5)) == (0, 0)
        assert partial_degrees(X**3 + Y**3) == (3, 3)

    @given(polynomials(), polynomials(), polynomials())
    @settings(max_examples=40, deadline=None)
    def test_ring_axioms(self, p, q, r):
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert p * (q + r) == p * q + p * r
        assert all(c for c in (p * q).terms.values())


class TestTaylorShift:
    def test_examples(self):
        assert taylor_shift(x1**2, (1,)) == x1**2 + x1.scale(2) + Polynomial.constant(1, 1)
        assert taylor_shift(X * Y - ONE, (0, 0)) == X * Y - ONE
        expected = X**3 + (X**2).scale(3) + X.scale(3) + Y
        assert taylor_shift(X**3 + Y, (1, -1)) == expected

    @given(polynomials(), points())
    @settings(max_examples=40, deadline=None)
    def test_round_trip(self, p, a):
        back = taylor_shift(taylor_shift(p, a), tuple(-c for c in a))
        assert back == p
        assert taylor_shift(p, None) == p

    @given(polynomials(max_deg=4), points())
    @settings(max_examples=25, deadline=None)
    def test_shift_evaluates_consistently(self, p, a):
        shifted = taylor_shift(p, a)
        rng = np.random.default_rng(0)
        for s in rng.normal(size=(100, 2)) + 1j * rng.normal(size=(100, 2)):
            z = [complex(c) + v for c, v in zip(a, s)]
            rhs = evaluate(p, z)
            assert abs(evaluate(shifted, s) - rhs) <= 1e-10 * max(1.0, _scale(p, z))


    @given(st.data())
    @settings(max_examples=30, deadline=None)
    def test_generic_support_is_downward_closed(self, data):
        # generic coefficients: random nonzero integers from a wide range
        exps = data.draw(st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=4))
        rng = np.random.default_rng(len(exps))
        p = Polynomial(2, {e: int(rng.integers(1, 10**6)) for e in exps})
        x0 = (GaussianRational(Fraction(int(rng.integers(1, 50)), 7)),
              GaussianRational(Fraction(-int(rng.integers(1, 50)), 11), 1))
        assert support_at(p, x0) == downward_closure(support_at(p))


class TestSupportAt:
    def test_examples(self):
        assert support_at(X**2 * Y**3) == {(2, 3)}
        assert support_at(X**3 + Y, (1, -1)) == {(3, 0), (2, 0), (1, 0), (0, 1)}
        assert support_at(X**2 * Y - ONE) == {(2, 1), (0, 0)}

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            support_at(Polynomial.zero(2))


class TestEvaluate:
    def test_examples(self):
        assert evaluate_exact(X**2 * Y - ONE, (1, 1)) == 0
        assert evaluate_exact(X**3 + Y, (1, -1)) == 0
        assert evaluate(X**3 + Y, (1, -1)) == 0

    @given(nonzero_polynomials(max_deg=5, max_terms=8), points())
    @settings(max_examples=50, deadline=None)
    def test_float_matches_exact(self, p, z):
        exact = complex(evaluate_exact(p, z))
        approx = evaluate(p, [complex(c) for c in z])
        assert abs(approx - exact) <= 1e-12 * max(abs(exact), _scale(p, [complex(c) for c in z]))

    def test_many_matches_single(self):
        p = (X**3 + Y.scale(GaussianRational(0, 2)) - ONE) * (X * Y + ONE)
        rng = np.random.default_rng(3)
        Z = rng.normal(size=(50, 2)) + 1j * rng.normal(size=(50, 2))
        vals = evaluate_many(p, Z)
        assert vals.shape == (50,)
        for z, v in zip(Z, vals):
            assert cmath.isclose(v, evaluate(p, z), rel_tol=1e-12, abs_tol=1e-12)

    def test_as_point(self):
        assert as_point(None, 3) == (0, 0, 0)
        with pytest.raises(DimensionMismatch):
            as_point((1, 2), 3)


def test_format_polynomial():
    p = X**2 * Y - ONE
    assert format_polynomial(p, ("x", "y")) == "x^2*y - 1"
    q = (X.scale(GaussianRational(Fraction(1, 2), Fraction(3, 4)))
         + Polynomial.constant(2, GaussianRational(0, 1)))
    assert format_polynomial(q, ("x", "y")) == "(1/2 + 3/4*i)*x + i"
    assert format_polynomial(Polynomial.zero(2), ("x", "y")) == "0"
