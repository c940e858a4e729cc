"""Command line interface: ``nlsa <command> ...``.

Exit codes: 0 success, 1 a validation or conformance failure was found,
2 bad input or parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import io as nio
from .algebra import NLieSuperalgebra, validate_algebra
from .catalog import brute_force_enumerate, build_catalog
from .conformance import theorem_conformance
from .engel import condition_star, condition_star_star, engel_scan
from .errors import BudgetExceeded, FiniteFieldRequired, NLSAError
from .lattice import (
    DEFAULT_BUDGET,
    count_graded_subspaces,
    enumerate_graded_subspaces,
    frattini_phi,
    invariance_number,
    is_s_star,
    jacobson,
)
from .representations import validate_representation
from .scalars import parse_field
from .series import derived_k_series, ideal_power_series, nilpotency_class

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _jsonable(obj):
    """Tuples become lists so a report survives a JSON round trip unchanged."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar_text(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(v)}")
    else:
        lines.append(f"{pad}{_scalar_text(obj)}")
    return lines


def _scalar_text(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return "none"
    return str(v)


def emit(report: dict, mode: str, out: TextIO) -> None:
    if mode == "machine":
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(_render_text(report)) + "\n")


def _load(path: str) -> tuple[dict, NLieSuperalgebra]:
    doc = nio.load_document(path)
    return doc, nio.algebra_from_dict(doc)


def _header(A: NLieSuperalgebra) -> dict:
    return {
        "field": str(A.field),
        "arity": A.arity,
        "alpha": A.alpha,
        "dims": list(A.dims),
        "basis": [f"{nm}:{p}" for nm, p in A.basis],
    }


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------
def cmd_validate(args) -> tuple[int, dict]:
    doc, A = _load(args.file)
    rep = validate_algebra(A)
    report = {"command": "validate", "file": args.file, "algebra": _header(A), "validation": rep.to_dict()}
    ok = rep.ok
    if "module" in doc:
        rho = nio.representation_from_dict(doc, A)
        rrep = validate_representation(rho)
        report["representation"] = rrep.to_dict()
        ok = ok and rrep.ok
    return (EXIT_OK if ok else EXIT_FAIL), report


def _lattice_section(A: NLieSuperalgebra, budget: int) -> dict:
    try:
        cat = enumerate_graded_subspaces(A, budget)
    except (BudgetExceeded, FiniteFieldRequired) as exc:
        return {"skipped": str(exc)}
    names = A.names
    F_A, phi = frattini_phi(A, cat)
    J = jacobson(A, cat)
    v = invariance_number(A, catalog=cat)
    star = condition_star(A, cat)
    ss = is_s_star(A, cat)
    return {
        "size": len(cat),
        "subalgebras": len(cat.subalgebras),
        "ideals": len(cat.ideals),
        "frattini": F_A.describe(names),
        "phi": phi.describe(names),
        "jacobson": J.describe(names),
        "condition_star": star.status,
        "condition_star_witness": star.witness.describe(names) if star.witness is not None else None,
        "invariance_number": v.to_dict(names),
        "s_star": ss.s_star,
        "s_star_violating": ss.violating.describe(names) if ss.violating is not None else None,
    }


def analysis_report(A: NLieSuperalgebra, budget: int | None, seed: int) -> dict:
    names = A.names
    lat_budget = DEFAULT_BUDGET if budget is None else budget
    full = A.full_space()
    series = ideal_power_series(A, full)
    derived = {str(k): derived_k_series(A, full, k).to_dict(names) for k in range(2, A.arity + 1)}
    scan = engel_scan(A, lat_budget, seed=seed)
    ss = condition_star_star(A, lat_budget, seed=seed)
    return {
        "power_series": series.to_dict(names),
        "nilpotency_class": nilpotency_class(A),
        "derived_series": derived,
        "engel": scan.to_dict(A),
        "condition_star_star": {
            "status": ss.status,
            "checked": ss.checked,
            "witness": [_vec(A, v) for v in ss.witness] if ss.witness is not None else None,
        },
        "lattice": _lattice_section(A, lat_budget),
    }


def _vec(A, v) -> str:
    from .engel import vec_str

    return vec_str(A, v)


def cmd_analyze(args) -> tuple[int, dict]:
    _, A = _load(args.file)
    rep = validate_algebra(A)
    report = {"command": "analyze", "file": args.file, "algebra": _header(A), "validation": rep.to_dict()}
    if not rep.ok:
        return EXIT_FAIL, report
    report.update(analysis_report(A, args.budget, args.seed))
    return EXIT_OK, report


def cmd_lattice(args) -> tuple[int, dict]:
    _, A = _load(args.file)
    rep = validate_algebra(A)
    report = {"command": "lattice", "file": args.file, "algebra": _header(A), "validation": rep.to_dict()}
    if not rep.ok:
        return EXIT_FAIL, report
    budget = DEFAULT_BUDGET if args.budget is None else args.budget
    try:
        cat = enumerate_graded_subspaces(A, budget)
    except (BudgetExceeded, FiniteFieldRequired) as exc:
        raise InputError(str(exc)) from exc
    names = A.names
    d0, d1 = A.dims
    rows = []
    for U, flags in zip(cat.subspaces, cat.flag_table()):
        rows.append({"subspace": U.describe(names), "dims": list(U.dims), **flags})
    report["count"] = len(cat)
    report["expected_count"] = count_graded_subspaces(d0, d1, A.field.p)
    report["subspaces"] = rows
    report.update({k: v for k, v in _lattice_section(A, budget).items() if k != "size"})
    return EXIT_OK, report


def cmd_conformance(args) -> tuple[int, dict]:
    if (args.file is None) == (args.corpus is None):
        raise InputError("give exactly one of FILE or --corpus DIR")
    if args.file is not None:
        items = [(args.file, _load(args.file)[1])]
    else:
        items = [(str(p), A) for p, A in nio.read_corpus(args.corpus)]
    budget = DEFAULT_BUDGET if args.budget is None else args.budget
    results = []
    any_fail = False
    for path, A in items:
        val = validate_algebra(A)
        entry = {"file": path, "algebra": _header(A)}
        if not val.ok:
            entry["validation"] = val.to_dict()
            entry["ok"] = False
            any_fail = True
        else:
            conf = theorem_conformance(A, budget=budget, seed=args.seed)
            entry.update(conf.to_dict())
            any_fail = any_fail or not conf.ok
        results.append(entry)
    report = {"command": "conformance", "ok": not any_fail, "algebras": results}
    return (EXIT_FAIL if any_fail else EXIT_OK), report


def cmd_catalog(args) -> tuple[int, dict]:
    params = {}
    for key in ("n", "d0", "d1", "alpha"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    F = parse_field(args.field)
    try:
        A = build_catalog(args.name, F, **params)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    nio.save_algebra(A, args.out)
    return EXIT_OK, {"command": "catalog", "name": args.name, "params": params, "field": str(F),
                     "out": args.out, "algebra": _header(A)}


def cmd_enumerate(args) -> tuple[int, dict]:
    budget = 10**7 if args.budget is None else args.budget
    stream = brute_force_enumerate(args.dim_even, args.dim_odd, args.arity, args.prime, args.alpha,
                                   budget=budget, indexed=True)
    paths = nio.write_corpus(stream, args.out)
    return EXIT_OK, {"command": "enumerate", "count": len(paths), "out": args.out,
                     "files": [p.name for p in paths]}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------
def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--report", choices=("text", "machine"), help="report format (default text)",
                        **(kw or {"default": "text"}))
    parser.add_argument("--budget", type=int, help="enumeration budget (subspaces, tuples or assignments)",
                        **(kw or {"default": None}))
    parser.add_argument("--seed", type=int, help="seed for sampled scans", **(kw or {"default": 0}))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlsa", description="Exact computations with n-Lie superalgebras.")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check grading, skew symmetry and the identity")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", parents=[common], help="series, class, Engel scan, conditions, radicals")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lattice", parents=[common], help="dump the graded subspace lattice with flags")
    p.add_argument("file")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("conformance", parents=[common], help="run the theorem checks")
    p.add_argument("file", nargs="?")
    p.add_argument("--corpus", metavar="DIR")
    p.set_defaults(func=cmd_conformance)

    p = sub.add_parser("catalog", parents=[common], help="write a named algebra to a file")
    p.add_argument("name", choices=("paper_bc", "abelian", "act3", "vector_product"))
    p.add_argument("--field", default="F3")
    p.add_argument("--n", type=int)
    p.add_argument("--d0", type=int)
    p.add_argument("--d1", type=int)
    p.add_argument("--alpha", type=int, choices=(0, 1))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("enumerate", parents=[common], help="write every valid algebra of a shape over F_p")
    p.add_argument("--dim-even", type=int, required=True)
    p.add_argument("--dim-odd", type=int, required=True)
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--alpha", type=int, choices=(0, 1), default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_enumerate)
    return parser


def run_command(argv: Sequence[str] | None = None, out: TextIO | None = None) -> tuple[int, dict | None]:
    """Parse ``argv``, run the command, write its report; return ``(exit code, report)``."""
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    try:
        code, report = args.func(args)
    except (InputError, NLSAError, ValueError, OSError) as exc:
        code, report = EXIT_INPUT, {"command": args.command, "error": f"{type(exc).__name__}: {exc}"}
    report = _jsonable(report)
    emit(report, args.report, out)
    return code, report


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run_command(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
