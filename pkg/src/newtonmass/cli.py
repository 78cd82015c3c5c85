"""Command-line entry point: ``newtonmass {indicator,newton,bounds,zeros,verify} PATH``.

Exit codes: 0 success, 1 inequality violation, 2 parse error, 3 degenerate
input (zero polynomial, common component), 4 unsupported dimension.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import report
from .errors import (
    CommonComponentError,
    DimensionMismatch,
    ParseError,
    UnsupportedDimension,
    ZeroPolynomialError,
)
from .indicator import UFunctionSpec, indicator_of
from .parse import SystemFile, load_system, parse_point
from .polytope import theta_plus
from .svg import render_polygon
from .verify import verify_system
from .zerooracle import count_zeros

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_DEGENERATE, EXIT_DIMENSION = range(5)


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _join(v) -> str:
    return "(" + ", ".join(str(c) for c in v) + ")"


def _rational_point(text: str) -> Tuple[Fraction, ...]:
    pt = parse_point(text)
    if any(c.im != 0 for c in pt):
        raise ParseError("direction entries must be real", 1, 1)
    return tuple(c.re for c in pt)


# ----------------------------------------------------------------------
# per-command handlers: each returns (text lines, json section, exit code)


def _indicator(u: UFunctionSpec, sf: SystemFile, args):
    sec = report.indicator_section(u)
    lines = [
        "generators: " + ", ".join(_join(g) for g in sec["generators"]),
        "vertices: " + ", ".join(_join(g) for g in sec["vertices"]),
        f"sigma = {sec['sigma']}",
        "multitype = " + _join(sec["multitype"]),
        f"Lelong number at basepoint = {sec['lelong_at_basepoint']}",
        f"I0 = {'yes' if sec['in_I0'] else 'no'}",
    ]
    return lines, {"indicator": sec}, EXIT_OK


def _newton(u: UFunctionSpec, sf: SystemFile, args):
    sec = report.newton_section(u)
    lines = [
        "Theta+ vertices: " + ", ".join(_join(v) for v in sec["theta_plus_vertices"]),
        f"volume = {sec['volume']}",
        f"Newton number = {sec['newton_number']}",
    ]
    if sec["mass"] is not None:
        lines.append(f"tau' = {sec['mass']['tau_prime']}, tau'' = {sec['mass']['tau_doubleprime']}")
    else:
        lines.append("tau'/tau'': not defined (indicator outside I0)")
    if args.svg:
        if u.n != 2:
            raise _Fail(EXIT_DIMENSION, "--svg is only available for two variables")
        Path(args.svg).write_text(render_polygon(theta_plus(indicator_of(u))), encoding="utf-8")
        lines.append(f"SVG written to {args.svg}")
    return lines, {"newton": sec}, EXIT_OK


def _bounds(u: UFunctionSpec, sf: SystemFile, args):
    dirs = [_rational_point(d) for d in args.direction or ()]
    for a in dirs:
        if len(a) != u.n:
            raise DimensionMismatch(f"direction {_join(a)} has {len(a)} entries, expected {u.n}")
    sec = report.bounds_section(u, dirs)
    ch = sec["chain"]
    lines = [
        f"Newton number at basepoint = {ch['newton_at_basepoint']}",
        f"generic Newton number = {ch['newton_generic']}",
        f"multitype bound = {ch['multitype_bound']}",
        f"chain: {ch['newton_at_basepoint']} <= {ch['newton_generic']} <= {ch['multitype_bound']}",
    ]
    for d in sec["directional"]:
        lines.append(f"direction {_join(d['direction'])}: bound at basepoint = {d['at_basepoint']}, "
                     f"generic = {d['generic']}")
    return lines, {"bounds": sec}, EXIT_OK


def _zeros(u: UFunctionSpec, sf: SystemFile, args):
    if u.n > 2:
        raise UnsupportedDimension("the zero oracle handles n <= 2")
    zs = count_zeros(sf.polys)
    lines = [f"{zs.count} common zeros ({'all simple' if zs.certified_simple else 'not certified simple'})"]
    for z in zs.zeros:
        coords = ", ".join(f"{c.real:.10g}{c.imag:+.10g}i" for c in z.point)
        lines.append(f"  ({coords})  residual {z.residual:.2e}")
    return lines, {"zeros": report.zeros_section(zs)}, EXIT_OK


def _verify(u: UFunctionSpec, sf: SystemFile, args):
    checks = verify_system(u)
    lines = [f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}" for c in checks]
    sec = report.verify_section(checks)
    return lines, {"verify": sec}, EXIT_OK if sec["passed"] else EXIT_VIOLATION


HANDLERS: dict = {
    "indicator": _indicator,
    "newton": _newton,
    "bounds": _bounds,
    "zeros": _zeros,
    "verify": _verify,
}


def _files(path: Path) -> List[Path]:
    if path.is_dir():
        return sorted(p for p in path.iterdir() if p.suffix == ".sys" and p.is_file())
    return [path]


def _run_file(path: Path, command: str, args) -> Tuple[List[str], dict, int]:
    header: dict = {"file": str(path), "variables": [], "polynomials": {}, "basepoint": [], "q": "2"}
    try:
        sf = load_system(path)
        at = parse_point(args.at, sf.n) if args.at else None
        u = sf.to_ufunction(at)
        header = report.system_header(sf, u)
        lines, sec, code = HANDLERS[command](u, sf, args)
        header.update(sec)
        return lines, header, code
    except ParseError as exc:
        return [f"parse error: {exc}"], dict(header, error=f"parse error: {exc}"), EXIT_PARSE
    except (ZeroPolynomialError, CommonComponentError) as exc:
        return [f"degenerate input: {exc}"], dict(header, error=f"degenerate input: {exc}"), EXIT_DEGENERATE
    except UnsupportedDimension as exc:
        return [f"unsupported dimension: {exc}"], dict(header, error=f"unsupported dimension: {exc}"), EXIT_DIMENSION
    except DimensionMismatch as exc:
        return [f"parse error: {exc}"], dict(header, error=f"parse error: {exc}"), EXIT_PARSE
    except _Fail as exc:
        return [str(exc)], dict(header, error=str(exc)), exc.code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newtonmass",
        description="Polyhedral indicators, Newton polyhedra and Monge-Ampere mass bounds "
                    "for polynomial systems.",
    )
    parser.add_argument("command", choices=sorted(HANDLERS))
    parser.add_argument("path", help="system file, or a directory of *.sys files")
    parser.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
    parser.add_argument("--svg", metavar="PATH", help="write the Newton polygon as SVG (newton, n = 2)")
    parser.add_argument("--at", metavar="POINT", help="basepoint override, e.g. '(1, -1)'")
    parser.add_argument("--direction", metavar="T", action="append",
                        help="direction for directional bounds, e.g. '(2, 3)'; repeatable")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    path = Path(args.path)
    if not path.exists():
        print(f"newtonmass: {path}: no such file or directory", file=sys.stderr)
        return EXIT_PARSE
    files = _files(path)
    if args.svg and len(files) > 1:
        print("newtonmass: --svg needs a single system file", file=sys.stderr)
        return EXIT_PARSE
    code = EXIT_OK
    systems = []
    for f in files:
        lines, sec, rc = _run_file(f, args.command, args)
        code = max(code, rc)
        systems.append(sec)
        if not args.json:
            if len(files) > 1 or args.command == "verify":
                status = "ok" if rc == EXIT_OK else "FAILED"
                print(f"{f}: {status}")
            stream = sys.stdout if rc == EXIT_OK or rc == EXIT_VIOLATION else sys.stderr
            for line in lines:
                print(line, file=stream)
    if args.json:
        json.dump(report.document(args.command, systems), sys.stdout, indent=2)
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
