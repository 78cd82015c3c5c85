"""Newton polyhedra at infinity and the Monge-Ampere mass bounds built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotInI0Error
from .hull import RatPolytope, hull, volume
from .indicator import (
    PolyhedralIndicator,
    UFunctionSpec,
    _positive_direction,
    eval_psi,
    generic_indicator,
    indicator_of,
    is_I0,
    multitype,
)

__all__ = [
    "MassReport",
    "BoundChain",
    "hull",
    "volume",
    "theta_plus",
    "newton_number",
    "mass_decomposition",
    "directional_bound",
    "multitype_bound",
    "bound_chain",
]


@dataclass(frozen=True)
class MassReport:
    """Total mass of (dd^c Phi)^n split into the atom at 0 and the torus part."""

    total: Fraction
    tau_prime: Fraction
    tau_doubleprime: Fraction

    def __post_init__(self):
        if self.tau_prime + self.tau_doubleprime != self.total:
            raise ValueError("mass parts do not add up to the total")
        if self.tau_prime < 0 or self.tau_doubleprime < 0:
            raise ValueError("mass parts must be nonnegative")


@dataclass(frozen=True)
class BoundChain:
    at_point: Fraction  # n! Vol(Theta^+_{u,x})
    generic: Fraction  # n! Vol(Theta^+_u)
    multitype: Fraction  # n! sigma_1 ... sigma_n

    def as_tuple(self):
        return (self.at_point, self.generic, self.multitype)

    def is_monotone(self) -> bool:
        return self.at_point <= self.generic <= self.multitype


def theta_plus(phi: PolyhedralIndicator) -> RatPolytope:
    """{a : <a, t> <= max(psi(t), 0) for all t} = conv(G u {0})."""
    origin = (Fraction(0),) * phi.n
    return hull(list(phi.generators) + [origin], phi.n)


def newton_number(phi: PolyhedralIndicator) -> Fraction:
    return math.factorial(phi.n) * theta_plus(phi).volume


def mass_decomposition(phi: PolyhedralIndicator) -> MassReport:
    if not is_I0(phi):
        raise NotInI0Error("mass decomposition needs an indicator bounded off the origin")
    nfact = math.factorial(phi.n)
    total = nfact * theta_plus(phi).volume
    # the torus maps to t = 0, where the subdifferential of psi is conv(G)
    torus = nfact * hull(phi.generators, phi.n).volume
    return MassReport(total, total - torus, torus)


def directional_bound(phi: PolyhedralIndicator, a: Sequence) -> Fraction:
    a = _positive_direction(a, phi.n)
    prod = Fraction(1)
    for c in a:
        prod *= c
    return eval_psi(phi, a) ** phi.n / prod


def multitype_bound(phi: PolyhedralIndicator) -> Fraction:
    out = Fraction(math.factorial(phi.n))
    for s in multitype(phi):
        out *= s
    return out


def bound_chain(u: UFunctionSpec) -> BoundChain:
    """Newton number at the basepoint, generic Newton number, multitype bound."""
    generic = generic_indicator(u)
    chain = BoundChain(
        newton_number(indicator_of(u)),
        newton_number(generic),
        multitype_bound(generic),
    )
    if not chain.is_monotone():
        raise AssertionError(f"bound chain is not nondecreasing: {chain.as_tuple()}")
    return chain
