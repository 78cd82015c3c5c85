from __future__ import annotations

from fractions import Fraction

from newtonmass.exactpoly import PolyMap, Polynomial
from newtonmass.indicator import UFunctionSpec
from newtonmass.verify import dyson_sum, lelong_at_zero, random_directions, run_zero_oracle, verify_system

from conftest import corpus_systems

X = Polynomial.variable(2, 0)
Y = Polynomial.variable(2, 1)
ONE = Polynomial.constant(2, 1)


def test_random_directions_are_positive_and_reproducible():
    a = random_directions(3, 20, seed=5)
    assert a == random_directions(3, 20, seed=5)
    assert all(len(t) == 3 and all(isinstance(c, Fraction) and c > 0 for c in t) for t in a)


def test_lelong_at_exact_zero():
    # (x^2 - y^3, x*y) vanishes at the origin with Lelong number min <(1,1), g> = 2
    u = UFunctionSpec.log_sum(PolyMap((X**2 - Y**3, X * Y)))
    assert lelong_at_zero(u, (0j, 0j), simple=False) == 2


def test_lelong_fallback_for_irrational_zero():
    u = UFunctionSpec.log_sum(PolyMap((X**2 - ONE.scale(2), Y - ONE)))
    assert lelong_at_zero(u, (2 ** 0.5 + 0j, 1 + 0j), simple=True) == 1


def test_dyson_sum_counts_simple_zeros():
    u = UFunctionSpec.log_sum(PolyMap((X**2 * Y - ONE, X * Y**2 - ONE)))
    zs = run_zero_oracle(u)
    assert dyson_sum(u, zs) == 3


def test_oracle_skipped_outside_scope():
    x3 = Polynomial.variable(3, 0)
    assert run_zero_oracle(UFunctionSpec.log_abs(x3)) is None
    assert run_zero_oracle(UFunctionSpec.log_sum(PolyMap((X, Y, X * Y)))) is None


def test_corpus_passes_every_check():
    for name, sf in corpus_systems():
        checks = verify_system(sf.to_ufunction(), directions=20, majorization_points=1000)
        assert checks and all(c.passed for c in checks), (name, [c for c in checks if not c.passed])
