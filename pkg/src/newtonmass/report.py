"""JSON report assembly.  Exact rationals are written as strings ("3", "-7/2");
floating-point values as JSON numbers (infinities as the strings "inf"/"-inf")."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from importlib import resources
from typing import Iterable, List, Optional, Sequence

from .exactpoly import GaussianRational, format_polynomial
from .indicator import (
    UFunctionSpec,
    generic_indicator,
    indicator_of,
    is_I0,
    lelong_at_point,
    multitype,
    sigma,
)
from .parse import SystemFile
from .polytope import bound_chain, directional_bound, mass_decomposition, theta_plus
from .zerooracle import ZeroSet

SCHEMA_VERSION = "1.0"


def rat(x) -> str:
    return str(Fraction(x))


def gauss(c: GaussianRational) -> dict:
    return {"re": rat(c.re), "im": rat(c.im)}


def num(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def vec(v: Iterable) -> List[str]:
    return [rat(c) for c in v]


def load_schema() -> dict:
    text = resources.files("newtonmass").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)


def system_header(sf: SystemFile, u: UFunctionSpec) -> dict:
    return {
        "file": sf.source,
        "variables": list(sf.variables),
        "polynomials": {name: format_polynomial(p, sf.variables) for name, p in sf.polynomials},
        "basepoint": [gauss(c) for c in u.basepoint],
        "q": rat(sf.q),
    }


def indicator_section(u: UFunctionSpec) -> dict:
    phi = indicator_of(u)
    return {
        "generators": [vec(g) for g in phi.generators],
        "vertices": [vec(g) for g in phi.canonical().generators],
        "sigma": rat(sigma(phi)),
        "multitype": vec(multitype(phi)),
        "lelong_at_basepoint": rat(lelong_at_point(u)),
        "in_I0": is_I0(phi),
        "generic_generators": [vec(g) for g in generic_indicator(u).generators],
    }


def newton_section(u: UFunctionSpec) -> dict:
    phi = indicator_of(u)
    P = theta_plus(phi)
    out = {
        "theta_plus_vertices": [vec(v) for v in P.vertices],
        "volume": rat(P.volume),
        "newton_number": rat(math.factorial(u.n) * P.volume),
        "mass": None,
    }
    if is_I0(phi):
        m = mass_decomposition(phi)
        out["mass"] = {"total": rat(m.total), "tau_prime": rat(m.tau_prime),
                       "tau_doubleprime": rat(m.tau_doubleprime)}
    return out


def bounds_section(u: UFunctionSpec, directions: Sequence[Sequence[Fraction]] = ()) -> dict:
    chain = bound_chain(u)
    phi = indicator_of(u)
    generic = generic_indicator(u)
    return {
        "chain": {"newton_at_basepoint": rat(chain.at_point),
                  "newton_generic": rat(chain.generic),
                  "multitype_bound": rat(chain.multitype)},
        "multitype": vec(multitype(generic)),
        "directional": [
            {"direction": vec(a),
             "at_basepoint": rat(directional_bound(phi, a)),
             "generic": rat(directional_bound(generic, a))}
            for a in directions
        ],
    }


def zeros_section(zs: ZeroSet) -> dict:
    return {
        "count": zs.count,
        "certified_simple": zs.certified_simple,
        "resultant_degree": zs.resultant_degree,
        "zeros": [
            {"point": [[num(c.real), num(c.imag)] for c in z.point],
             "residual": num(z.residual),
             "jacobian_abs": num(z.jacobian_abs)}
            for z in zs.zeros
        ],
    }


def verify_section(checks) -> dict:
    return {
        "passed": all(c.passed for c in checks),
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
    }


def document(command: str, systems: List[dict]) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "systems": systems}
