"""Command-line front end.

Exit status: 0 when the command succeeded, 1 when a verification failed,
2 for usage errors (bad arguments, unknown or table-only catalog rows, size
caps).  With ``--json`` the payload is printed as canonical JSON with every
rational written as a ``"p/q"`` string.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from . import __version__
from .bspec import BSpecError, parse_b_spec, render_factored
from .cherednik import CherednikParams, identity_suite, params_from_bfunction, spherical_delta
from .errors import DimensionTooLarge, NotRationalSplit, RadcompError, Unsupported
from .phv import (
    FAMILIES,
    TABLE_ONLY,
    build_invariant,
    catalog_entry,
    catalog_rows,
    check_b0_identity,
    dual_operator,
    extract_bfunction,
    omega0_annihilates,
    radial_component,
    size_cap,
)
from .poly import UniPoly
from .quiver import build_quiver, emit_dot, fmt_q, quiver_json
from .rep_theory import INFINITE, global_dimension, lowest_weights, verma_lattice

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# negative rationals, k-lists and windows such as "-2..4" are positional values, not options
_NEGATIVE_VALUE = re.compile(r"^-\d+(/\d+)?((\.\.|,)-?\d+(/\d+)?)*$")


class UsageError(Exception):
    pass


def poly_json(p: UniPoly) -> dict:
    return {
        "coefficients": [fmt_q(c) for c in p.coeffs],
        "text": p.render("s"),
        "factored": render_factored(p),
    }


def _dim_json(d) -> str:
    return "inf" if d == INFINITE else str(d)


# --------------------------------------------------------------------------
# commands; each returns (exit code, payload dict, text lines)


def _entry(name: str, size: int, max_terms: int | None):
    if name not in FAMILIES and name not in TABLE_ONLY:
        raise UsageError(f"unknown catalog entry {name!r}; see 'catalog'")
    try:
        entry = catalog_entry(name, size)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not entry.constructible:
        raise UsageError(f"{name} is a table-only row ({entry.row}); no invariant constructor")
    if max_terms is None and size > size_cap(name):
        raise UsageError(f"{name} size {size} exceeds the cap {size_cap(name)}; pass --max-terms to lift it")
    return entry


def cmd_catalog(args):
    rows = []
    for e in catalog_rows():
        rows.append({
            "name": e.name,
            "row": e.row,
            "group": e.group,
            "family": e.family,
            "deg_f": e.deg_f,
            "constructible": e.constructible,
            "size_cap": size_cap(e.name) if e.constructible else None,
            "b": render_factored(e.expected_b) if e.expected_b is not None else None,
            "example_size": e.size_param,
        })
    lines = [f"{r['name']:16} {r['row']:6} deg {r['deg_f']:<3} b = {r['b']}"
             + ("" if r["constructible"] else "   [table only]") for r in rows]
    return EXIT_OK, {"entries": rows}, lines


def cmd_bfunction(args):
    entry = _entry(args.entry, args.size, args.max_terms)
    f = build_invariant(entry)
    report = extract_bfunction(f, dual_operator(f, entry.metric), entry.deg_f, max_terms=args.max_terms)
    match = report.matches(entry.expected_b)
    payload = {
        "entry": entry.name,
        "size": entry.size_param,
        "b": poly_json(report.b),
        "c": fmt_q(report.c),
        "monic_b": poly_json(report.monic),
        "roots": [fmt_q(r) for r in sorted(report.roots)],
        "table_expected": poly_json(entry.expected_b) if entry.expected_b is not None else None,
        "match": match,
    }
    lines = [
        f"b(s)      = {render_factored(report.b)}",
        f"c         = {fmt_q(report.c)}",
        f"table     = {render_factored(entry.expected_b)}",
        f"match     = {'yes' if match else 'NO'}",
    ]
    return (EXIT_OK if match else EXIT_FAIL), payload, lines


def _verify_items(entry, depth: int, max_terms):
    f = build_invariant(entry)
    delta = dual_operator(f, entry.metric)
    n = entry.deg_f
    items = []

    def add(name, ok, detail=""):
        items.append({"name": name, "pass": bool(ok), "detail": detail})

    report = extract_bfunction(f, delta, n, max_terms=max_terms)
    add("bfunction matches table", report.matches(entry.expected_b), render_factored(report.b))
    params = params_from_bfunction(report.lambdas, report.c)
    for check in identity_suite(params):
        add(f"spherical: {check.name}", check.passed, f"{check.lhs} vs {check.rhs}")
    rad = radial_component(delta, f, -1, max_terms=max_terms)
    sph = spherical_delta(params)
    add("rad(Delta) = delta", rad == sph, rad.render())
    checks = omega0_annihilates(f, delta, report.b, depth, max_terms=max_terms) if depth >= 0 else []
    add(f"Omega0 f^m = 0 for m <= {depth}", all(ok for _, ok in checks),
        ", ".join(str(m) for m, ok in checks if not ok) or "all zero")
    b0 = check_b0_identity(f, entry.metric)
    add("b(0) = Delta(f) = sum i! a_i a*_i", b0 == report.b(0), fmt_q(b0))
    return items


def cmd_verify(args):
    entry = _entry(args.entry, args.size, args.max_terms)
    if args.depth < 0:
        raise UsageError("depth must be nonnegative")
    items = _verify_items(entry, args.depth, args.max_terms)
    ok = all(i["pass"] for i in items)
    payload = {"entry": entry.name, "size": entry.size_param, "depth": args.depth, "items": items, "all_pass": ok}
    lines = [f"[{'PASS' if i['pass'] else 'FAIL'}] {i['name']}" for i in items]
    return (EXIT_OK if ok else EXIT_FAIL), payload, lines


def _parse_b(text: str) -> UniPoly:
    try:
        return parse_b_spec(text)
    except BSpecError as exc:
        raise UsageError(f"cannot parse b-function {text!r}: {exc}") from None


def lattice_dot(lat) -> str:
    lines = ["digraph verma {", "  rankdir=BT;"]
    for v in lat.vertices:
        label = f"M({fmt_q(v)}) dim L = {_dim_json(lat.dims[v])}"
        lines.append(f"  {json.dumps(fmt_q(v))} [label={json.dumps(label)}];")
    for a, c in lat.reduced_edges:
        lines.append(f"  {json.dumps(fmt_q(a))} -> {json.dumps(fmt_q(c))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_verma(args):
    b = _parse_b(args.b_spec)
    try:
        lws = lowest_weights(b)
    except NotRationalSplit as exc:
        raise UsageError(str(exc)) from None
    lat = verma_lattice(b, args.bound)
    gl = global_dimension(b)
    payload = {
        "b": poly_json(b),
        "lowest_weights": [fmt_q(x) for x in lws],
        "vertices": [fmt_q(v) for v in lat.vertices],
        "inclusions": [{"sub": fmt_q(a), "super": fmt_q(c)} for a, c in lat.edges],
        "hasse": [{"sub": fmt_q(a), "super": fmt_q(c)} for a, c in lat.reduced_edges],
        "simple_dimensions": {fmt_q(v): _dim_json(d) for v, d in lat.dims.items()},
        "gldim": gl.render(),
        "gldim_witness": gl.witness,
    }
    if args.dot:
        return EXIT_OK, payload, lattice_dot(lat).rstrip("\n").split("\n")
    lines = [f"lowest weights: {', '.join(fmt_q(x) for x in lws)}"]
    for chain in lat.chains():
        lines.append("chain: " + " < ".join(f"M({fmt_q(x)})" for x in chain))
    for v, d in lat.dims.items():
        lines.append(f"dim L({fmt_q(v)}) = {_dim_json(d)}")
    lines.append(f"gldim = {gl.render()} ({gl.witness})")
    return EXIT_OK, payload, lines


def _parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"window must look like LO..HI, got {text!r}") from None
    if hi < lo:
        raise UsageError("window upper end is below the lower end")
    return lo, hi


def cmd_quiver(args):
    b = _parse_b(args.b_spec)
    try:
        rep = Fraction(args.class_rep)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"class representative must be rational, got {args.class_rep!r}") from None
    try:
        g = build_quiver(b, rep, _parse_window(args.window))
    except NotRationalSplit as exc:
        raise UsageError(str(exc)) from None
    payload = quiver_json(g)
    return EXIT_OK, payload, emit_dot(g).rstrip("\n").split("\n")


def cmd_cherednik_check(args):
    if args.n < 1:
        raise UsageError("n must be positive")
    trials = []
    if args.k:
        try:
            ks = [Fraction(x) for x in args.k.split(",")] if args.k.strip() else []
            c = Fraction(args.c)
        except (ValueError, ZeroDivisionError):
            raise UsageError("k-list and c must be rationals") from None
        if len(ks) != args.n - 1:
            raise UsageError(f"need {args.n - 1} multiplicities k_1..k_{args.n - 1}, got {len(ks)}")
        trials.append(CherednikParams.from_nonzero(args.n, ks, c))
    else:
        rng = random.Random(args.seed)
        for _ in range(args.trials):
            ks = [Fraction(rng.randint(-20, 20), rng.randint(1, 12)) for _ in range(args.n - 1)]
            c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            trials.append(CherednikParams.from_nonzero(args.n, ks, c))
    results = []
    for p in trials:
        checks = identity_suite(p)
        results.append({
            "k": [fmt_q(x) for x in p.k],
            "c": fmt_q(p.c),
            "bstar": poly_json(p.bstar()),
            "identities": [{"name": ch.name, "pass": ch.passed} for ch in checks],
        })
    ok = all(i["pass"] for r in results for i in r["identities"])
    payload = {"n": args.n, "seed": args.seed if not args.k else None, "trials": results, "all_pass": ok}
    lines = []
    for r in results:
        flags = "".join("." if i["pass"] else "F" for i in r["identities"])
        lines.append(f"k = ({', '.join(r['k'])}) c = {r['c']}: {flags}")
    lines.append("all identities hold" if ok else "IDENTITY FAILURE")
    return (EXIT_OK if ok else EXIT_FAIL), payload, lines


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON payload")
    common.add_argument("--dot", action="store_true", help="print DOT output where available")
    common.add_argument("--max-terms", type=int, default=None, metavar="N",
                        help="lift the per-family size caps and abort once an intermediate "
                             "polynomial exceeds N terms")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized trials (default 0)")

    parser = argparse.ArgumentParser(
        prog="radcomp",
        description="Exact computations for b-functions, radial components and U-modules.",
        epilog=__doc__.split("\n\n")[1],
        parents=[common],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"radcomp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="list the catalog rows")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("bfunction", parents=[common], help="extract the b-function of a catalog entry")
    p.add_argument("entry")
    p.add_argument("size", type=int)
    p.set_defaults(func=cmd_bfunction)

    p = sub.add_parser("verify", parents=[common], help="run the identity suite for a catalog entry")
    p.add_argument("entry")
    p.add_argument("size", type=int)
    p.add_argument("depth", type=int, nargs="?", default=4, help="check Omega0 f^m = 0 for m <= depth")
    p.set_defaults(func=cmd_verify)

    bhelp = ("b-function: factored '(s+1)(s+3/2)', with optional leading scalar and "
             "'[...]^k' groups, or an ascending coefficient list '[2,3,1]'")
    p = sub.add_parser("verma", parents=[common], help="Verma lattice, simple dimensions, gldim",
                       description=bhelp)
    p.add_argument("b_spec", help=bhelp)
    p.add_argument("bound", type=int, nargs="?", default=None,
                   help="search singular vectors up to this index (default: exact from the roots)")
    p.set_defaults(func=cmd_verma)

    p = sub.add_parser("quiver", parents=[common], help="weight-space quiver as DOT (or JSON)",
                       description=bhelp)
    p.add_argument("b_spec", help=bhelp)
    p.add_argument("class_rep", help="rational representative of the weight class")
    p.add_argument("window", help="integer offsets LO..HI")
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("cherednik-check", parents=[common], help="spherical identity suite for given n, k")
    p.add_argument("n", type=int)
    p.add_argument("k", nargs="?", default=None, help="comma-separated k_1..k_{n-1}; omit for random trials")
    p.add_argument("--c", default="1", help="scale c (default 1)")
    p.add_argument("--trials", type=int, default=5, help="random trials when k is omitted")
    p.set_defaults(func=cmd_cherednik_check)
    for prs in [parser, *sub.choices.values()]:
        prs._negative_number_matcher = _NEGATIVE_VALUE
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        code, payload, lines = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Unsupported, DimensionTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RadcompError as exc:
        print(f"verification error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
