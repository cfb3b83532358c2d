"""Batch command-line front end.

Every subcommand emits one deterministic report to stdout, as canonical JSON
(sorted keys, exact integers, rationals as "p/q" strings, no floats) or as
tab-delimited text.  Exit codes: 0 success, 1 usage error, 2 verification
failure.  With --plot-dir, report figures are rendered to PNG files next to
the stream output.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .fgl import by_kind, lazard_basis
from .schubert import torsion_index
from .series import ContextError
from .torus_module import TorusModel, duality_check
from .twisted import TwistedContext, invariants_truncated
from .weyl import RootDatum, UsageError, load_json, preset, preset_help, weyl_group

SCHEMA = "cobweyl.report/1"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def resolve_datum(selector: str) -> RootDatum:
    if selector.endswith(".json") or os.path.sep in selector:
        if not os.path.exists(selector):
            raise UsageError(f"no root-datum file {selector!r}")
        return load_json(selector)
    return preset(selector)


def _jsonable(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, bool) or isinstance(value, int) or value is None:
        return value
    return str(value)


def _render_text(obj, indent=0, key=None) -> list[str]:
    pad = "  " * indent
    label = f"{pad}{key}" if key is not None else pad.rstrip()
    lines: list[str] = []
    if isinstance(obj, dict):
        if key is not None:
            lines.append(label)
        for k, v in obj.items():
            lines.extend(_render_text(v, indent + (key is not None), k))
    elif isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            lines.append(f"{label}\t" + "\t".join(str(v) for v in obj))
        else:
            lines.append(label)
            for i, v in enumerate(obj):
                lines.extend(_render_text(v, indent + 1, f"[{i}]"))
    else:
        lines.append(f"{label}\t{obj}")
    return lines


def emit(report: dict, fmt: str, out) -> None:
    payload = _jsonable(report)
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2))
        out.write("\n")
    else:
        out.write("\n".join(_render_text(payload)))
        out.write("\n")


def make_report(command: str, params: dict, result: dict, warnings: list) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "params": params,
        "result": result,
        "warnings": warnings,
    }


# -- subcommand implementations ------------------------------------------------


def cmd_lazard(args) -> tuple[dict, int]:
    lb = lazard_basis(args.max_degree)
    result: dict = {}
    if args.what in ("ranks", "all"):
        result["ranks"] = lb.ranks()
    if args.what in ("basis", "all"):
        basis = {}
        for d in range(args.max_degree + 1):
            basis[str(d)] = [str(p) for p in lb.basis_polys(d)]
        result["basis"] = basis
    if args.what in ("pn", "all"):
        pn = {}
        for n in range(args.max_degree + 1):
            el = lb.pn(n)
            coords = el.integral_coords() or {}
            pn[str(n)] = {
                "poly": str(el.poly),
                "coords": coords.get(n, [1] if n == 0 else []),
            }
        result["pn"] = pn
    params = {"max_degree": args.max_degree, "what": args.what}
    return make_report("lazard", params, result, []), 0


def cmd_fgl(args) -> tuple[dict, int]:
    law = by_kind(args.kind, args.order)
    result: dict = {"kind": law.kind, "order": law.order}
    if args.what in ("law", "all"):
        coeffs = []
        for (i, j), poly in sorted(
            ((key, val) for key, val in _law_coefficients(law).items())
        ):
            coeffs.append({"i": i, "j": j, "coefficient": str(poly)})
        result["coefficients"] = coeffs
    if args.what in ("inverse", "all"):
        result["inverse"] = str(law.inverse_series())
    if args.what in ("nseries", "all"):
        R = law.univariate_ring(law.order)
        t = R.gen("x")
        result["nseries"] = {
            str(n): str(law.n_series(n, t)) for n in range(-args.nmax, args.nmax + 1)
        }
    params = {"kind": args.kind, "order": args.order, "what": args.what}
    if args.what in ("nseries", "all"):
        params["nmax"] = args.nmax
    return make_report("fgl", params, result, []), 0


def _law_coefficients(law):
    out = {}
    xi, yi = law.ring.index("x"), law.ring.index("y")
    for e in law.F.terms:
        key = (e[xi], e[yi])
        if key not in out:
            poly = law.coefficient(*key)
            if not poly.is_zero():
                out[key] = poly
    return out


def cmd_weyl(args) -> tuple[dict, int]:
    rd = resolve_datum(args.group)
    W = weyl_group(rd)
    result = {
        "name": rd.name,
        "rank": rd.rank,
        "order": len(W),
        "length_generating_function": W.length_generating_function(),
        "positive_roots": W.positive_root_count() if rd.nsimple else 0,
        "cartan": rd.cartan(),
        "elements": [
            {"word": list(e.word), "length": e.length, "matrix": [list(r) for r in e.matrix]}
            for e in W
        ],
    }
    return make_report("weyl", {"group": args.group}, result, []), 0


def cmd_torsion(args) -> tuple[dict, int]:
    rd = resolve_datum(args.group)
    report = torsion_index(rd, args.component_count)
    result = {
        "name": report.name,
        "torsion_index": report.tau,
        "connected_torsion_index": report.connected_tau,
        "component_count": report.component_count,
        "per_degree": [
            {
                "degree": d.degree,
                "exponent": d.exponent,
                "divisors": list(d.divisors),
                "matrix_shape": list(d.matrix_shape),
            }
            for d in report.per_degree
        ],
    }
    params = {"group": args.group, "component_count": args.component_count}
    return make_report("torsion-index", params, result, []), 0


def _parse_character(text: str, rank: int) -> tuple[int, ...]:
    try:
        vec = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad character {text!r}: expected comma-separated integers") from exc
    if len(vec) != rank:
        raise UsageError(f"character {text!r} has {len(vec)} entries, rank is {rank}")
    return vec


def cmd_twisted(args) -> tuple[dict, int]:
    rd = resolve_datum(args.group)
    order = args.order + 2 if args.invariants else args.order
    law = by_kind(args.law, order)
    ctx = TwistedContext(law, rd, args.order)
    result: dict = {"group": rd.name, "law": args.law, "order": args.order}
    warnings: list = []
    if args.character:
        chars = {}
        for text in args.character:
            vec = _parse_character(text, rd.rank)
            chars[",".join(str(x) for x in vec)] = str(ctx.character_class(vec))
        result["characters"] = chars
    if args.invariants:
        blocks = invariants_truncated(ctx, coeff_bound=args.coeff_bound, stability=True)
        rows = []
        for b in blocks:
            rows.append(
                {
                    "level": b.level,
                    "rank": b.rank,
                    "space_dim": b.space_dim,
                    "components": [list(c) for c in b.components],
                    "stable": b.stable,
                }
            )
            if b.stable is False:
                warnings.append(f"level {b.level}: truncated invariants not stable at order {args.order}")
        result["invariants"] = rows
    params = {
        "group": args.group,
        "law": args.law,
        "order": args.order,
        "characters": list(args.character or []),
        "invariants": bool(args.invariants),
        "coeff_bound": args.coeff_bound,
    }
    return make_report("twisted", params, result, warnings), 0


def cmd_btpair(args) -> tuple[dict, int]:
    model = TorusModel(args.rank, args.max_degree)
    from .torus_module import tuples_upto

    tups = tuples_upto(args.rank, args.max_degree)
    result: dict = {"rank": args.rank, "max_degree": args.max_degree}
    if args.what in ("matrix", "all"):
        ring = model.dual_ring()
        rows = []
        for k in tups:
            exps = [0] * len(ring.gens)
            for i, e in enumerate(k, start=1):
                exps[ring.index(f"t{i}")] = e
            A = ring.monomial(tuple(exps), 1)
            rows.append(
                {
                    "k": list(k),
                    "values": [str(model.pairing(A, model.basis_class(m)).poly) for m in tups],
                }
            )
        result["tuples"] = [list(m) for m in tups]
        result["pairing_matrix"] = rows
    if args.what in ("dual", "all"):
        result["dual_basis"] = {
            ",".join(str(x) for x in mp): str(model.dual_basis_series(mp)) for mp in tups
        }
    params = {"rank": args.rank, "max_degree": args.max_degree, "what": args.what}
    return make_report("btpair", params, result, []), 0


def cmd_coinv(args) -> tuple[dict, int]:
    rd = resolve_datum(args.group)
    from .torus_module import EquivariantModel

    bound = max(args.degree, args.max_degree or args.degree)
    eq = EquivariantModel(rd, bound)
    report = eq.coinvariants(args.degree)
    result = {
        "group": rd.name,
        "degree": report.degree,
        "lattice_rank": report.lattice_rank,
        "free_rank": report.free_rank,
        "torsion": list(report.torsion),
        "layout": [
            {"m": list(m), "coefficient_index": b} for m, b in report.layout
        ],
        "quotient_basis": [list(r) for r in report.reps.data],
        "stable": report.stable,
    }
    params = {"group": args.group, "degree": args.degree}
    return make_report("coinv", params, result, []), 0


def cmd_verify_duality(args) -> tuple[dict, int]:
    rd = resolve_datum(args.group)
    report = duality_check(
        rd, args.max_degree, invert=args.invert_tau, component_count=args.component_count
    )
    warnings = []
    degrees = []
    for d in report.degrees:
        degrees.append(
            {
                "degree": d.degree,
                "verdict": d.verdict,
                "coinvariants_free_rank": d.coinvariants_free_rank,
                "coinvariants_torsion": list(d.coinvariants_torsion),
                "generator_rank": d.generator_rank,
                "generator_torsion": list(d.generator_torsion),
                "sigma_rank": d.sigma_rank,
                "pairing_divisors": list(d.pairing_divisors),
                "kernel_match": d.kernel_match,
                "averaged_rank_match": d.averaged_rank_match,
                "invariants_stable": d.invariants_stable,
                "rational_check": d.q_check,
                "integral_check": d.z_check,
            }
        )
        if not d.invariants_stable:
            warnings.append(f"degree {d.degree}: truncated invariants unstable; verdict is rational-only")
    result = {
        "group": report.name,
        "torsion_index": report.tau,
        "inverted": report.inverted,
        "max_degree": report.max_degree,
        "filtration_cut": report.filtration_cut,
        "degrees": degrees,
        "ok": report.ok,
    }
    params = {
        "group": args.group,
        "max_degree": args.max_degree,
        "invert_tau": args.invert_tau,
        "component_count": args.component_count,
    }
    return make_report("verify-duality", params, result, warnings), (0 if report.ok else 2)


# -- wiring ---------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="cobweyl", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--plot-dir", default=None, help="render report figures into this directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lazard", parents=[common], help="coefficient-lattice bases and ranks")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--what", choices=("ranks", "basis", "pn", "all"), default="ranks")
    p.set_defaults(fn=cmd_lazard)

    p = sub.add_parser("fgl", parents=[common], help="formal group law data")
    p.add_argument("--kind", choices=("additive", "multiplicative", "universal"), required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--what", choices=("law", "inverse", "nseries", "all"), default="law")
    p.add_argument("--nmax", type=int, default=3)
    p.set_defaults(fn=cmd_fgl)

    p = sub.add_parser("weyl", parents=[common], help="root datum and Weyl group enumeration")
    p.add_argument("--group", required=True, help=preset_help() + ", or a root-datum JSON path")
    p.set_defaults(fn=cmd_weyl)

    p = sub.add_parser("torsion-index", parents=[common], help="torsion index via the characteristic map")
    p.add_argument("--group", required=True)
    p.add_argument("--component-count", type=int, default=1)
    p.set_defaults(fn=cmd_torsion)

    p = sub.add_parser("twisted", parents=[common], help="twisted group algebra computations")
    p.add_argument("--group", required=True)
    p.add_argument("--law", choices=("additive", "multiplicative", "universal"), default="universal")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--character", action="append", help="comma-separated character, repeatable")
    p.add_argument("--invariants", action="store_true", help="compute truncated invariant ranks per level")
    p.add_argument("--coeff-bound", type=int, default=None)
    p.set_defaults(fn=cmd_twisted)

    p = sub.add_parser("btpair", parents=[common], help="characteristic pairing matrix and dual basis")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--what", choices=("matrix", "dual", "all"), default="matrix")
    p.set_defaults(fn=cmd_btpair)

    p = sub.add_parser("coinv", parents=[common], help="Weyl coinvariants of one degree slice")
    p.add_argument("--group", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(fn=cmd_coinv)

    p = sub.add_parser("verify-duality", parents=[common], help="degreewise duality verification")
    p.add_argument("--group", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--invert-tau", type=int, default=None,
                   help="override the inverted integer (default: the computed "
                        "torsion index; 0 inverts everything, i.e. works over Q)")
    p.add_argument("--component-count", type=int, default=1)
    p.set_defaults(fn=cmd_verify_duality)

    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report, code = args.fn(args)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except (ContextError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    emit(report, args.format, out)
    if args.plot_dir:
        from . import plots

        for path in plots.render(report, args.plot_dir):
            err.write(f"wrote {path}\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
