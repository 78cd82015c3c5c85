"""Floating-point checks of the asymptotic statements about indicators.

All sampling is deterministic: equi-angular lattices on tori, Halton points
for the majorization test, midpoint polar grids for the L1 tangent distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize
from scipy.special import ndtri
from scipy.stats import qmc

from .exactpoly import GaussianRational, Polynomial, taylor_shift
from .indicator import (
    PolyhedralIndicator,
    UFunctionSpec,
    combine_logs,
    eval_Psi_many,
    indicator_of,
    majorant_constant,
)

MEAN_CLIP = -1.0e6
L1_CLIP = 1.0e3

DEFAULT_SAMPLES = {1: 1024, 2: 96, 3: 24, 4: 12}
DEFAULT_SCHEDULE = (1.0, 2.0, 4.0, 8.0, 16.0)


@dataclass(frozen=True)
class TorusSpec:
    """T_t(x) = {z : |z_k - x_k| = exp(t_k)} sampled on an equi-angular lattice."""

    x: tuple
    t: tuple
    samples_per_axis: int = 64

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(complex(c) for c in self.x))
        object.__setattr__(self, "t", tuple(float(c) for c in self.t))
        if len(self.x) != len(self.t):
            raise ValueError("centre and radius exponents differ in length")
        if self.samples_per_axis < 8:
            raise ValueError("samples_per_axis must be at least 8")

    @property
    def n(self) -> int:
        return len(self.x)

    def angles(self) -> np.ndarray:
        """Lattice angles, shape (samples^n, n)."""
        step = 2 * np.pi / self.samples_per_axis
        axis = np.arange(self.samples_per_axis) * step
        mesh = np.meshgrid(*([axis] * self.n), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)


@lru_cache(maxsize=256)
def _shifted(p: Polynomial, x: tuple):
    # exponents and complex coefficients of p(x + s)
    q = taylor_shift(p, tuple(GaussianRational.coerce(c) for c in x))
    items = sorted(q.terms.items())
    J = np.array([k for k, _ in items], dtype=float)
    c = np.array([complex(v) for _, v in items])
    return J, c


def _log_abs_on_torus(p: Polynomial, x: tuple, t: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """log|p(x + e^{t + i theta})| with the dominant modulus factored out."""
    J, c = _shifted(p, x)
    weights = J @ t
    top = weights.max()
    scaled = c * np.exp(weights - top)
    vals = np.exp(1j * (theta @ J.T)) @ scaled
    with np.errstate(divide="ignore"):
        return top + np.log(np.abs(vals))


def u_on_torus(u: UFunctionSpec, x, t, theta) -> np.ndarray:
    x = tuple(complex(c) for c in x)
    t = np.asarray(t, dtype=float)
    theta = np.atleast_2d(np.asarray(theta, dtype=float))
    logs = [_log_abs_on_torus(p, x, t, theta) for p in u.components]
    if len(logs) == 1:
        return logs[0]
    return combine_logs(np.vstack(logs), u.q)


def _refine_max(u, spec: TorusSpec, theta, vals, starts=4) -> float:
    best = float(np.max(vals))
    t = np.array(spec.t)
    order = np.argsort(-vals, kind="stable")[:starts]

    def neg(th):
        v = u_on_torus(u, spec.x, t, th[None, :])[0]
        return -v if np.isfinite(v) else 1e300

    for idx in order:
        res = minimize(neg, theta[idx], method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000})
        best = max(best, -float(res.fun))
    return best


def torus_max(u: UFunctionSpec, spec: TorusSpec, refine: bool = False) -> float:
    """g'(u, x, t): the maximum of u over the lattice on T_t(x)."""
    theta = spec.angles()
    vals = u_on_torus(u, spec.x, spec.t, theta)
    if refine:
        return _refine_max(u, spec, theta, vals)
    return float(np.max(vals))


def torus_mean(u: UFunctionSpec, spec: TorusSpec) -> float:
    """g(u, x, t): equal-weight lattice mean, with u clipped below at -1e6."""
    vals = u_on_torus(u, spec.x, spec.t, spec.angles())
    # the clamp only absorbs summation rounding when u is constant on the lattice
    return min(float(np.mean(np.maximum(vals, MEAN_CLIP))), float(np.max(vals)))


def psi_estimate(u: UFunctionSpec, x=None, t: Sequence = (), R_schedule=DEFAULT_SCHEDULE,
                 samples_per_axis: Optional[int] = None) -> list:
    """Sequence (g'(u,x,Rt) - g'(u,x,0)) / R along an increasing schedule of R."""
    R_schedule = [float(r) for r in R_schedule]
    if len(R_schedule) < 3 or any(b <= a for a, b in zip(R_schedule, R_schedule[1:])):
        raise ValueError("R_schedule must be increasing with at least 3 entries")
    x = u.basepoint if x is None else x
    x = tuple(complex(c) for c in x)
    t = np.array([float(c) for c in t])
    if len(t) != u.n:
        raise ValueError("direction has the wrong dimension")
    N = samples_per_axis or DEFAULT_SAMPLES[u.n]
    theta = TorusSpec(x, [0.0] * u.n, N).angles()
    base = float(np.max(u_on_torus(u, x, np.zeros(u.n), theta)))
    return [float(np.max(u_on_torus(u, x, R * t, theta)) - base) / R for R in R_schedule]


@dataclass
class MajorizationReport:
    constant: float
    points: int
    violations: int
    max_excess: float  # max of u(z) - Psi(z - x) - C over the sample

    @property
    def ok(self) -> bool:
        return self.violations == 0


def _ball_points(n: int, count: int, radius: float) -> np.ndarray:
    # Halton directions in C^n = R^{2n}, log-uniform radii in [1e-3, radius]
    sampler = qmc.Halton(d=2 * n + 1, scramble=False)
    sampler.fast_forward(1)
    h = sampler.random(count)
    h = np.clip(h, 1e-12, 1 - 1e-12)
    g = ndtri(h[:, : 2 * n])
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    lo = math.log(1e-3)
    r = np.exp(lo + h[:, 2 * n] * (math.log(radius) - lo))
    w = g * r[:, None]
    return w[:, :n] + 1j * w[:, n:]


def majorization_check(u: UFunctionSpec, x=None, trial_points: int = 10_000, slack: float = 1e-6,
                       indicator: Optional[PolyhedralIndicator] = None,
                       radius: float = 1e3, samples: int = 64) -> MajorizationReport:
    """Check u(z) <= Psi_{u,x}(z - x) + C over quasi-random z, C = g'(u, x, 0)."""
    if trial_points < 1:
        raise ValueError("trial_points must be >= 1")
    x = u.basepoint if x is None else x
    xc = np.array([complex(c) for c in x])
    phi = indicator if indicator is not None else indicator_of(u, x)
    C = majorant_constant(u, x, samples)
    w = _ball_points(u.n, trial_points, radius)
    lhs = u.values(w + xc)
    rhs = eval_Psi_many(phi, w)
    with np.errstate(invalid="ignore"):
        excess = lhs - rhs - C
    excess = np.where(np.isneginf(lhs), -np.inf, excess)
    excess = np.where(np.isnan(excess), np.inf, excess)
    return MajorizationReport(C, trial_points, int(np.sum(excess > slack)), float(np.max(excess)))


@dataclass(frozen=True)
class PolarGrid:
    """Midpoint grid on the product of annuli r_min <= |z_k| <= r_max."""

    r_min: float = 0.5
    r_max: float = 2.0
    n_radii: int = 16
    n_angles: int = 32

    def points(self, n: int):
        dr = (self.r_max - self.r_min) / self.n_radii
        radii = self.r_min + (np.arange(self.n_radii) + 0.5) * dr
        angles = (np.arange(self.n_angles) + 0.5) * (2 * np.pi / self.n_angles)
        rr, aa = np.meshgrid(radii, angles, indexing="ij")
        axis = (rr * np.exp(1j * aa)).ravel()
        axis_w = rr.ravel()  # polar area element r dr dtheta
        mesh = np.meshgrid(*([axis] * n), indexing="ij")
        wmesh = np.meshgrid(*([axis_w] * n), indexing="ij")
        Z = np.stack([m.ravel() for m in mesh], axis=1)
        W = np.prod(np.stack([m.ravel() for m in wmesh], axis=1), axis=1)
        return Z, W / W.sum()


def tangent_l1(u: UFunctionSpec, x=None, m: int = 1, grid: PolarGrid = PolarGrid()) -> float:
    """Normalised discrete L1 distance between m^{-1} u(x + z^m) and Psi_{u,x}(z)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if grid.r_min <= 0:
        raise ValueError("the grid must stay off the coordinate axes")
    x = u.basepoint if x is None else x
    xc = np.array([complex(c) for c in x])
    Z, W = grid.points(u.n)
    lhs = np.clip(u.values(xc + Z ** m) / m, -L1_CLIP, L1_CLIP)
    rhs = np.clip(eval_Psi_many(indicator_of(u, x), Z), -L1_CLIP, L1_CLIP)
    return float(np.sum(W * np.abs(lhs - rhs)))
