from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newtonmass.errors import DimensionMismatch, ZeroPolynomialError
from newtonmass.exactpoly import GaussianRational, PolyMap, Polynomial
from newtonmass.indicator import (
    PolyhedralIndicator,
    UFunctionSpec,
    combine_logs,
    directional_lelong_inf,
    eval_Psi,
    eval_Psi_many,
    eval_psi,
    from_map_at,
    from_polynomial_at,
    generic_indicator,
    indicator_of,
    is_I0,
    lelong_at_point,
    majorant_constant,
    multitype,
    positive_closure,
    s_indicator,
    sigma,
    standard_indicator,
    sup_combine,
)

from strategies import directions, generator_sets, pos_fraction, small_fraction

X = Polynomial.variable(2, 0)
Y = Polynomial.variable(2, 1)
ONE = Polynomial.constant(2, 1)
F = Fraction


def gens(*pts):
    return frozenset(tuple(F(c) for c in p) for p in pts)


def ind(*pts):
    return PolyhedralIndicator(pts)


class TestConstruction:
    def test_polynomial_examples(self):
        assert set(from_polynomial_at(X**3 + Y).generators) == gens((3, 0), (0, 1))
        assert set(from_polynomial_at(X**3 + Y, (1, -1)).generators) == gens((3, 0), (2, 0), (1, 0), (0, 1))
        assert set(from_polynomial_at(X**2 * Y**3).generators) == gens((2, 3))

    def test_map_examples(self):
        m = PolyMap((X**2 * Y - ONE, X * Y**2 - ONE))
        assert set(from_map_at(m).generators) == gens((0, 0), (2, 1), (1, 2))
        m = PolyMap((X**3 + Y, Y**3 + X))
        assert set(from_map_at(m).generators) == gens((3, 0), (0, 1), (0, 3), (1, 0))
        p = X**3 + Y
        assert from_map_at(PolyMap((p,)), (1, -1)) == from_polynomial_at(p, (1, -1))

    def test_map_is_sup_of_components(self):
        comps = (X**2 * Y - ONE, X * Y**2 + X, Y**3)
        x = (1, GaussianRational(0, 1))
        joined = sup_combine([from_polynomial_at(p, x) for p in comps])
        assert from_map_at(PolyMap(comps), x).equivalent(joined)

    def test_validation(self):
        with pytest.raises(ValueError):
            ind((-1, 0))
        with pytest.raises(ValueError):
            PolyhedralIndicator([])
        with pytest.raises(ZeroPolynomialError):
            from_polynomial_at(Polynomial.zero(2))
        with pytest.raises(ZeroPolynomialError):
            from_map_at(PolyMap((X, Polynomial.zero(2))))

    def test_immutable(self):
        phi = ind((1, 0))
        with pytest.raises(AttributeError):
            phi.generators = ()

    def test_sup_combine(self):
        assert set(sup_combine([ind((3, 0)), ind((0, 3))]).generators) == gens((3, 0), (0, 3))
        phi = ind((0, 0), (2, 1), (1, 2))
        assert sup_combine([phi, phi]).equivalent(phi)
        with pytest.raises(DimensionMismatch):
            sup_combine([ind((1, 0)), ind((1,))])


class TestEvaluation:
    def test_psi_examples(self):
        assert eval_psi(ind((2, 1), (1, 2), (0, 0)), (1, 1)) == 3
        assert eval_psi(ind((2, 1), (1, 2)), (0, 0)) == 0
        assert eval_psi(ind((3, 0), (0, 1), (0, 3), (1, 0)), (1, -1)) == 3

    def test_Psi_examples(self):
        assert eval_Psi(ind((1, 0), (0, 1)), (math.e, 1)) == pytest.approx(1.0)
        assert eval_Psi(ind((1, 1)), (0, 5)) == -math.inf
        assert eval_Psi(ind((1, 1), (0, 0)), (0, 5)) == 0

    def test_Psi_many_matches(self):
        phi = ind((0, 0), (2, 1), (1, 2), (0, 3))
        rng = np.random.default_rng(1)
        Y = rng.normal(size=(40, 2)) + 1j * rng.normal(size=(40, 2))
        Y[0, 0] = 0
        Y[1] = 0
        want = [eval_Psi(phi, y) for y in Y]
        assert np.allclose(eval_Psi_many(phi, Y), want)

    @given(generator_sets(), directions(2, positive=False), pos_fraction)
    def test_homogeneity(self, G, t, c):
        phi = PolyhedralIndicator(G)
        assert eval_psi(phi, tuple(c * x for x in t)) == c * eval_psi(phi, t)

    @given(generator_sets(), directions(2, positive=False), directions(2))
    def test_monotone(self, G, t, d):
        phi = PolyhedralIndicator(G)
        assert eval_psi(phi, t) <= eval_psi(phi, tuple(a + b for a, b in zip(t, d)))

    @given(generator_sets(), directions(2, positive=False), directions(2, positive=False))
    def test_convex(self, G, t, s):
        phi = PolyhedralIndicator(G)
        mid = tuple((a + b) / 2 for a, b in zip(t, s))
        assert eval_psi(phi, mid) <= (eval_psi(phi, t) + eval_psi(phi, s)) / 2

    @given(generator_sets(), generator_sets(), directions(2, positive=False))
    def test_sup_pointwise(self, G1, G2, t):
        p1, p2 = PolyhedralIndicator(G1), PolyhedralIndicator(G2)
        assert eval_psi(sup_combine([p1, p2]), t) == max(eval_psi(p1, t), eval_psi(p2, t))

    @given(generator_sets(max_size=10))
    @settings(max_examples=30, deadline=None)
    def test_canonical_preserves_psi(self, G):
        phi = PolyhedralIndicator(G)
        can = phi.canonical()
        assert set(can.generators) <= set(phi.generators)
        rng = np.random.default_rng(len(G))
        for num, den in zip(rng.integers(-50, 50, size=(1000, 2)), rng.integers(1, 20, size=(1000, 2))):
            t = (F(int(num[0]), int(den[0])), F(int(num[1]), int(den[1])))
            assert eval_psi(can, t) == eval_psi(phi, t)

    def test_canonical_drops_interior(self):
        phi = ind((0, 0), (2, 0), (0, 2), (1, 1), (F(1, 2), F(1, 2)))
        assert set(phi.canonical().generators) == gens((0, 0), (2, 0), (0, 2))
        assert phi.equivalent(ind((0, 0), (2, 0), (0, 2)))


class TestGrowth:
    def test_examples(self):
        phi = ind((0, 0), (2, 1), (1, 2))
        assert sigma(phi) == 3
        assert multitype(phi) == (2, 2)
        assert directional_lelong_inf(phi, (1, 1)) == 3
        assert sigma(standard_indicator(2)) == 1

    def test_dense_multitype(self):
        p = Polynomial(2, {(i, j): 1 for i in range(4) for j in range(3)})
        assert multitype(from_polynomial_at(p)) == (3, 2)

    @given(generator_sets(n=3))
    def test_characteristics_are_psi_values(self, G):
        phi = PolyhedralIndicator(G)
        assert sigma(phi) == eval_psi(phi, (1, 1, 1))
        assert multitype(phi) == tuple(eval_psi(phi, e) for e in [(1, 0, 0), (0, 1, 0), (0, 0, 1)])

    def test_directional_requires_positive(self):
        with pytest.raises(ValueError):
            directional_lelong_inf(ind((1, 0)), (1, 0))

    def test_s_indicator(self):
        phi = s_indicator((2, 3))
        assert set(phi.generators) == gens((F(1, 2), 0), (0, F(1, 3)))
        with pytest.raises(ValueError):
            s_indicator((1, 0))


class TestLelong:
    def test_examples(self):
        assert lelong_at_point(UFunctionSpec.log_abs(X**2 * Y**3)) == 5
        assert lelong_at_point(UFunctionSpec.log_abs(X**3 + Y), (1, -1)) == 1
        assert lelong_at_point(UFunctionSpec.log_abs(X**3 + Y + ONE)) == 0

    def test_weighted(self):
        u = UFunctionSpec.log_abs(X**2 + Y**3)
        assert lelong_at_point(u, None, (3, 2)) == 6
        assert lelong_at_point(u, None, (1, 1)) == 2


class TestClosures:
    def test_positive_closure_examples(self):
        assert set(positive_closure(ind((1, 1)), (1, 1)).generators) == gens((1, 1), (1, 0), (0, 1), (0, 0))
        phi = ind((2, 1), (0, 3))
        assert positive_closure(phi, (0, 0)) == phi
        assert set(positive_closure(ind((2, 0)), (0, 1)).generators) == gens((2, 0))

    @given(generator_sets(), directions(2, positive=False))
    @settings(max_examples=40, deadline=None)
    def test_positive_closure_is_psi_of_positive_part(self, G, t):
        phi = PolyhedralIndicator(G)
        pc = positive_closure(phi, (1, GaussianRational(0, 2)))
        assert positive_closure(pc, (1, 1)) == pc
        assert eval_psi(pc, t) == eval_psi(phi, tuple(max(c, 0) for c in t))

    def test_generic_examples(self):
        u = UFunctionSpec.log_abs(X * Y)
        assert set(generic_indicator(u).generators) == gens((0, 0), (1, 0), (0, 1), (1, 1))
        u = UFunctionSpec.log_abs(X**2 * Y - ONE)
        assert set(generic_indicator(u).generators) == gens(*[(i, j) for i in range(3) for j in range(2)])
        d = 3
        dense = Polynomial(2, {(i, j): 1 for i in range(d + 1) for j in range(d + 1 - i)})
        assert set(generic_indicator(UFunctionSpec.log_abs(dense)).generators) == set(dense.support) and \
            set(from_polynomial_at(dense).generators) == gens(*dense.support)

    def test_generic_dominates_pointwise(self):
        u = UFunctionSpec.log_sum(PolyMap((X**2 * Y - ONE, X * Y**2 + X.scale(3))))
        g = generic_indicator(u)
        rng = np.random.default_rng(5)
        for _ in range(20):
            x = tuple(GaussianRational(F(int(a), 7), F(int(b), 5)) for a, b in rng.integers(-20, 20, size=(2, 2)))
            phi = indicator_of(u, x)
            for a in rng.integers(1, 30, size=(10, 2)):
                a = tuple(F(int(c), 3) for c in a)
                assert eval_psi(phi, a) <= eval_psi(g, a)


class TestI0:
    def test_examples(self):
        assert is_I0(ind((1, 0), (0, 1)))
        assert not is_I0(ind((1, 1)))
        assert is_I0(ind((0, 0)))

    def test_three_dimensional(self):
        assert is_I0(standard_indicator(3))
        assert not is_I0(ind((1, 1, 0), (0, 0, 1)))


class TestUFunction:
    def test_log_sum_values(self):
        m = PolyMap((X, Y), q=2)
        u = UFunctionSpec.log_sum(m)
        z = np.array([[3, 4j]])
        assert u.values(z)[0] == pytest.approx(math.log(5))

    def test_combine_logs(self):
        # rows are components, columns are points
        logs = np.array([[0.0, math.log(3)], [-np.inf, math.log(4)]])
        out = combine_logs(logs, 2.0)
        assert out[0] == pytest.approx(0.0)
        assert out[1] == pytest.approx(math.log(5))

    def test_at_and_dimension(self):
        u = UFunctionSpec.log_abs(X + ONE)
        assert u.n == 2 and u.at((1, 0)).basepoint == (1, 0)


class TestMajorant:
    def test_examples(self):
        x = Polynomial.variable(1, 0)
        assert majorant_constant(UFunctionSpec.log_abs(x)) == pytest.approx(0.0, abs=1e-12)
        assert majorant_constant(UFunctionSpec.log_abs(x + Polynomial.constant(1, 1))) == \
            pytest.approx(math.log(2), abs=1e-6)
        assert majorant_constant(UFunctionSpec.log_abs(X**2 * Y**3)) == pytest.approx(0.0, abs=1e-12)
