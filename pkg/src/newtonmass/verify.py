"""The inequality suite run by ``newtonmass verify``.

Each check returns a :class:`Check`; a system passes when every applicable
check passes.  Zero-based checks only run for square systems with n <= 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .errors import UnsupportedDimension
from .exactpoly import GaussianRational, evaluate_exact
from .indicator import UFunctionSpec, generic_indicator, indicator_of, is_I0, lelong_at_point
from .numericlab import PolarGrid, majorization_check, tangent_l1
from .polytope import bound_chain, directional_bound, mass_decomposition, newton_number
from .zerooracle import ZeroSet, count_zeros

# tangent grids per dimension; the tensor grid has (n_radii * n_angles)^n points
TANGENT_GRIDS = {
    1: PolarGrid(0.5, 2.0, 64, 128),
    2: PolarGrid(0.5, 2.0, 16, 32),
    3: PolarGrid(0.5, 2.0, 4, 8),
    4: PolarGrid(0.5, 2.0, 2, 6),
}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


def random_directions(n: int, count: int, seed: int = 0, max_num: int = 20, max_den: int = 10):
    """Strictly positive rational directions with small numerators and denominators."""
    rng = np.random.default_rng(seed)
    nums = rng.integers(1, max_num + 1, size=(count, n))
    dens = rng.integers(1, max_den + 1, size=(count, n))
    return [tuple(Fraction(int(a), int(b)) for a, b in zip(rn, rd)) for rn, rd in zip(nums, dens)]


def _round_gaussian(value: complex, tol: float = 1e-9) -> Optional[GaussianRational]:
    parts = []
    for v in (value.real, value.imag):
        f = Fraction(v).limit_denominator(10 ** 6)
        if abs(float(f) - v) > tol:
            return None
        parts.append(f)
    return GaussianRational(*parts)


def lelong_at_zero(u: UFunctionSpec, point, simple: bool) -> Fraction:
    """Lelong number of u at a numerically located zero.

    When the zero rounds to a Gaussian rational that is an exact common zero,
    the number is computed exactly; otherwise 1 is used (exact for simple
    zeros and a lower bound for multiple ones).
    """
    exact = [_round_gaussian(complex(c)) for c in point]
    if all(c is not None for c in exact) and all(
        not evaluate_exact(p, exact) for p in u.components
    ):
        return lelong_at_point(u, exact)
    return Fraction(1)


def dyson_sum(u: UFunctionSpec, zeros: ZeroSet) -> Fraction:
    return sum((lelong_at_zero(u, z.point, zeros.certified_simple) ** u.n for z in zeros.zeros),
               Fraction(0))


def run_zero_oracle(u: UFunctionSpec) -> Optional[ZeroSet]:
    if u.n > 2 or len(u.components) != u.n:
        return None
    return count_zeros(u.components)


def verify_system(u: UFunctionSpec, directions: int = 100, majorization_points: int = 10_000,
                  slack: float = 1e-6, seed: int = 0) -> List[Check]:
    checks: List[Check] = []
    phi = indicator_of(u)
    generic = generic_indicator(u)
    chain = bound_chain(u)
    n0, ng, bmt = chain.as_tuple()
    checks.append(Check("kou_chain", n0 <= ng <= bmt, f"{n0} <= {ng} <= {bmt}"))

    zs = run_zero_oracle(u)
    if zs is not None:
        checks.append(Check("zero_count", zs.count <= n0,
                            f"{zs.count} zeros <= Newton number {n0}"))
        total = dyson_sum(u, zs)
        checks.append(Check("dyson", total <= bmt, f"sum nu^n = {total} <= {bmt}"))

    if is_I0(phi):
        mass = mass_decomposition(phi)
        checks.append(Check("mass_split", mass.tau_prime + mass.tau_doubleprime == mass.total,
                            f"{mass.tau_prime} + {mass.tau_doubleprime} = {mass.total}"))

    bad = []
    targets = [("generic", generic, ng)]
    if is_I0(phi):
        targets.append(("at_point", phi, n0))
    for a in random_directions(u.n, directions, seed):
        for label, ind, mass in targets:
            if directional_bound(ind, a) < mass:
                bad.append((label, a))
    checks.append(Check("directional", not bad,
                        f"{directions} directions, {len(bad)} below the Newton number"))

    rep = majorization_check(u, trial_points=majorization_points, slack=slack)
    checks.append(Check("majorization", rep.ok,
                        f"C = {rep.constant:.6g}, {rep.violations} violations, "
                        f"max excess {rep.max_excess:.3g}"))

    grid = TANGENT_GRIDS[u.n]
    d1 = tangent_l1(u, m=1, grid=grid)
    d16 = tangent_l1(u, m=16, grid=grid)
    checks.append(Check("tangent", d16 <= d1, f"L1 distance {d1:.4g} (m=1) -> {d16:.4g} (m=16)"))
    return checks
