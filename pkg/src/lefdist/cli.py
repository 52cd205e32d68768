"""Command-line front end.

Subcommands: mapping-torus, flow, suspension, surface-suspension,
nilfoliation, selberg, gauss-bonnet, verify.  JSON is the canonical output
format; ``table`` is a lossy human rendering.  Exit codes: 0 success,
1 domain error (a named precondition was violated, or a verify check
failed), 2 I/O or parse error.

Output is byte-stable for fixed inputs: no timestamps unless
``--emit-run-info`` asks for the separate run-info block.  The environment
variable LEFSCHETZ_SEED fixes the randomized verify battery.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .curvature import (
    MetricGrid,
    flat_torus_grid,
    gaussian_curvature,
    integrate_curvature,
    random_torus_metric,
    sphere_grid,
    sphere_patch_grid,
)
from .distributions import AtomicDistribution, num_from_str, num_to_str
from .errors import PreconditionError
from .lefschetz import GradedMap, ToralAutomorphism
from .lie_cohomology import LieAlgebra, abelian, filiform, heisenberg, sl2
from .linalg import IntMatrix, RationalMatrix
from .models import (
    ClosedOrbitSpec,
    ConjugacyClassData,
    HomogeneousSpec,
    SuspensionSpec,
    flow_distribution,
    mapping_torus,
    nil_foliation,
    selberg_report,
    surface_suspension_traces,
    suspension,
)
from .verify import battery_seed, run_suite

SMOOTH_NOTE = "smooth constants are densities relative to the reference volume form, vol(G) = 1"


def _parse_number(v):
    """JSON number or string to an exact Fraction / inexact float."""
    if isinstance(v, bool):
        raise ValueError(f"expected a number, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return v
    return num_from_str(str(v))


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _wrap(model: str, distribution: AtomicDistribution, metadata: dict, **extra) -> dict:
    out = {"model": model}
    out.update(extra)
    out["metadata"] = metadata
    out["distribution"] = distribution.to_json_obj()
    return out


# -- subcommand handlers -------------------------------------------------------


def _cmd_mapping_torus(args) -> dict:
    if args.matrix is not None:
        source = ToralAutomorphism(IntMatrix.from_json_obj(json.loads(args.matrix)))
        desc = "toral"
    else:
        obj = _load_json(args.input)
        if "matrix" in obj:
            source = ToralAutomorphism(IntMatrix.from_json_obj(obj["matrix"]))
            desc = "toral"
        elif "graded" in obj:
            source = GradedMap(tuple(RationalMatrix.from_json_obj(m) for m in obj["graded"]))
            desc = "graded"
        else:
            raise KeyError("input JSON needs a 'matrix' or 'graded' field")
    d = mapping_torus(source, args.window)
    meta = {
        "source": desc,
        "truncation": f"atoms emitted for |k| <= {args.window}",
        "convention": args.convention,
    }
    return _wrap("mapping_torus", d, meta, window=args.window)


def _orbit_from_json(obj: dict) -> ClosedOrbitSpec:
    length = _parse_number(obj["length"])
    if "return_map" in obj:
        return ClosedOrbitSpec(length, return_map=RationalMatrix.from_json_obj(obj["return_map"]))
    if "signs" in obj:
        signs = {int(k): int(v) for k, v in obj["signs"].items()}
        return ClosedOrbitSpec(length, signs=signs)
    raise KeyError("orbit needs a 'return_map' or 'signs' field")


def _cmd_flow(args) -> dict:
    obj = _load_json(args.input)
    orbits = [_orbit_from_json(o) for o in obj["orbits"]]
    window = _parse_number(args.window)
    d = flow_distribution(orbits, window, tolerance=args.tolerance)
    meta = {
        "orbits": len(orbits),
        "truncation": f"atoms emitted for |k l(c)| <= {args.window}",
        "convention": args.convention,
    }
    if args.tolerance is not None:
        meta["tolerance"] = args.tolerance
    return _wrap("flow", d, meta, window=args.window)


def _cmd_suspension(args) -> dict:
    if args.input is not None:
        obj = _load_json(args.input)
        betti = obj.get("betti")
        if betti is not None:
            from .lie_cohomology import GradedDims

            betti = GradedDims(tuple(int(b) for b in betti))
        spec = SuspensionSpec(_parse_number(obj["vol_g"]), int(obj["chi_x"]), betti)
    else:
        if args.chi is None:
            raise ValueError("give --chi (and optionally --vol), or --input")
        spec = SuspensionSpec(_parse_number(args.vol), args.chi)
    d = suspension(spec)
    meta = {
        "vol_g": num_to_str(spec.vol_g),
        "chi_x": spec.chi_x,
        "chi_lambda": num_to_str(spec.vol_g * spec.chi_x),
        "valid_on": "the whole group",
    }
    return _wrap("suspension", d, meta)


def _cmd_surface_suspension(args) -> dict:
    s = surface_suspension_traces(args.genus, _parse_number(args.vol))
    meta = {
        "genus": s.genus,
        "beta_lambda": [num_to_str(b) for b in s.betti_lambda],
        "chi_lambda": num_to_str(s.chi_lambda),
        "interpretation": SMOOTH_NOTE,
    }
    out = {"model": "surface_suspension", "genus": s.genus, "metadata": meta}
    out["traces"] = {str(i): t.to_json_obj() for i, t in enumerate(s.traces)}
    out["distribution"] = s.lefschetz.to_json_obj()
    return out


_CATALOG = {
    "heisenberg": lambda arg: heisenberg(int(arg) if arg else 1),
    "abelian": lambda arg: abelian(int(arg)),
    "filiform": lambda arg: filiform(int(arg)),
    "sl2": lambda arg: sl2(),
}


def _resolve_algebra(spec: str) -> LieAlgebra:
    if os.path.exists(spec):
        return LieAlgebra.from_json_obj(_load_json(spec))
    name, _, arg = spec.partition(":")
    if name in _CATALOG:
        return _CATALOG[name](arg)
    raise FileNotFoundError(
        f"algebra {spec!r} is neither a file nor a catalog name "
        f"({', '.join(sorted(_CATALOG))}, with ':n' for a dimension argument)"
    )


def _cmd_nilfoliation(args) -> dict:
    r = nil_foliation(_resolve_algebra(args.algebra))
    meta = {"interpretation": SMOOTH_NOTE}
    out = {"model": "nil_foliation", "dims": list(r.dims), "metadata": meta}
    out["traces"] = {str(i): t.to_json_obj() for i, t in enumerate(r.traces)}
    out["distribution"] = r.lefschetz.to_json_obj()
    out["corollary_check"] = {
        "applicable": r.corollary.applicable,
        "passed": r.corollary.passed,
        "detail": r.corollary.detail,
    }
    return out


def _class_from_json(obj: dict) -> ConjugacyClassData:
    label = str(obj["label"])
    if obj.get("is_identity"):
        return ConjugacyClassData(label, None, is_identity=True)
    vol = _parse_number(obj.get("vol_centralizer", 1))
    if "lefschetz" in obj:
        return ConjugacyClassData(label, _parse_number(obj["lefschetz"]), vol)
    if "matrix" in obj:
        t = ToralAutomorphism(IntMatrix.from_json_obj(obj["matrix"]))
        return ConjugacyClassData(label, GradedMap.from_toral(t, int(label)), vol)
    if "graded" in obj:
        gm = GradedMap(tuple(RationalMatrix.from_json_obj(m) for m in obj["graded"]))
        return ConjugacyClassData(label, gm, vol)
    raise KeyError(f"class {label!r} needs 'lefschetz', 'matrix' or 'graded'")


def _cmd_selberg(args) -> dict:
    obj = _load_json(args.input)
    spec = HomogeneousSpec(
        _parse_number(obj["vol_quotient"]),
        int(obj["chi_x"]),
        tuple(_class_from_json(c) for c in obj["classes"]),
        obj.get("group_kind", "abstract"),
    )
    d = selberg_report(spec)
    meta = {
        "group_kind": spec.group_kind,
        "classes": len(spec.classes),
        "orbital_integrals": "symbolic unless group_kind is 'R'",
    }
    return _wrap("selberg", d, meta)


_BUILTIN_GRIDS = {
    "flat": lambda n, rng: flat_torus_grid(n),
    "sphere": lambda n, rng: sphere_grid(n),
    "sphere-patch": lambda n, rng: sphere_patch_grid(n),
    "random": lambda n, rng: random_torus_metric(rng, n),
}


def _cmd_gauss_bonnet(args) -> dict:
    if args.input is not None:
        if args.input.endswith(".csv"):
            with open(args.input, "r", encoding="utf-8") as fh:
                grid = MetricGrid.from_csv(fh.read())
        else:
            grid = MetricGrid.from_json_obj(_load_json(args.input))
        source = args.input
    else:
        import random as _random

        rng = _random.Random(battery_seed())
        grid = _BUILTIN_GRIDS[args.builtin](args.grid, rng)
        source = f"builtin:{args.builtin}"
    k = gaussian_curvature(grid)
    integral = integrate_curvature(grid)
    return {
        "model": "gauss_bonnet",
        "source": source,
        "grid": [grid.nu, grid.nv],
        "topology": grid.topology,
        "metadata": {"stencils": "second-order central/one-sided finite differences"},
        "curvature_min": float(k.min()),
        "curvature_max": float(k.max()),
        "integral_over_2pi": integral,
        "chi_estimate": round(integral),
    }


def _cmd_verify(args) -> dict:
    seed = battery_seed()
    checks = run_suite(args.suite, seed)
    return {
        "model": "verify",
        "suite": args.suite,
        "seed": seed,
        "passed": all(c.passed for c in checks),
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks
        ],
    }


# -- rendering -----------------------------------------------------------------


def _render_table(obj: dict) -> str:
    lines = []

    def emit(key, value, indent=0):
        pad = "  " * indent
        if key == "atoms" and isinstance(value, list):
            lines.append(f"{pad}atoms:")
            if not value:
                lines.append(f"{pad}  (none)")
            for a in value:
                lines.append(f"{pad}  at {a['at']:>12}   coeff {a['coeff']}")
        elif key == "checks" and isinstance(value, list):
            lines.append(f"{pad}checks:")
            for c in value:
                mark = "PASS" if c["passed"] else "FAIL"
                detail = f"  [{c['detail']}]" if c.get("detail") else ""
                lines.append(f"{pad}  {mark}  {c['name']}{detail}")
        elif isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k, v in value.items():
                emit(k, v, indent + 1)
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: {value}")
        else:
            lines.append(f"{pad}{key}: {value}")

    for k, v in obj.items():
        emit(k, v)
    return "\n".join(lines) + "\n"


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lefdist",
        description="Lefschetz distributions of Lie foliations: closed-form example families",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--output", metavar="PATH", help="write the report to a file")
    common.add_argument(
        "--emit-run-info",
        action="store_true",
        help="include a run_info block (timestamps); off by default to keep output byte-stable",
    )

    p = sub.add_parser("mapping-torus", parents=[common], help="mapping torus of a toral automorphism or graded map")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", help='inline integer matrix, e.g. "[[2,1],[1,1]]"')
    src.add_argument("--input", help="JSON file with a 'matrix' or 'graded' field")
    p.add_argument("--window", type=int, default=3, metavar="K")
    p.add_argument("--convention", choices=("paper", "classical"), default="paper")
    p.set_defaults(handler=_cmd_mapping_torus)

    p = sub.add_parser("flow", parents=[common], help="codimension-one flow with prescribed closed orbits")
    p.add_argument("--input", required=True, help="JSON file with an 'orbits' list")
    p.add_argument("--window", required=True, metavar="T")
    p.add_argument("--tolerance", type=float, metavar="T", help="inexact atom merge tolerance")
    p.add_argument("--convention", choices=("paper", "classical"), default="paper")
    p.set_defaults(handler=_cmd_flow)

    p = sub.add_parser("suspension", parents=[common], help="suspension foliation over a compact group")
    p.add_argument("--vol", default="1", help="vol(G), exact ('3/2') or inexact ('~1.5')")
    p.add_argument("--chi", type=int, help="Euler characteristic of the fiber")
    p.add_argument("--input", help="JSON file with vol_g, chi_x and optional betti")
    p.set_defaults(handler=_cmd_suspension)

    p = sub.add_parser("surface-suspension", parents=[common], help="genus-g hyperbolic surface suspension traces")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--vol", default="1")
    p.set_defaults(handler=_cmd_surface_suspension)

    p = sub.add_parser("nilfoliation", parents=[common], help="nilpotent homogeneous foliation traces")
    p.add_argument(
        "--algebra",
        required=True,
        help="Lie algebra JSON file, or catalog name (heisenberg, abelian:n, filiform:n, sl2)",
    )
    p.set_defaults(handler=_cmd_nilfoliation)

    p = sub.add_parser("selberg", parents=[common], help="Selberg-type report for a homogeneous bundle")
    p.add_argument("--input", required=True, help="JSON homogeneous-space spec")
    p.set_defaults(handler=_cmd_selberg)

    p = sub.add_parser("gauss-bonnet", parents=[common], help="integrate Gauss curvature of a metric grid")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="MetricGrid JSON or CSV file")
    src.add_argument("--builtin", choices=sorted(_BUILTIN_GRIDS), help="generate a canonical grid")
    p.add_argument("--grid", type=int, default=256, metavar="N", help="builtin grid resolution")
    p.set_defaults(handler=_cmd_gauss_bonnet)

    p = sub.add_parser("verify", parents=[common], help="run the cross-oracle battery")
    p.add_argument(
        "--suite",
        default="all",
        choices=("all", "linalg", "lefschetz", "cohomology", "models", "curvature"),
    )
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    if args.emit_run_info:
        report["run_info"] = {"timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z")}
    if args.format == "table":
        text = _render_table(report)
    else:
        text = json.dumps(report, indent=2) + "\n"
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"input error: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not report["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
