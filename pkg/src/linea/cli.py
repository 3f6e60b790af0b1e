"""Command line front end: ``linea <verb> [options]``.

Every verb writes deterministic JSON to stdout (``--pretty`` switches to a
human layout where one exists).  Exit status: 0 on success, 1 when a
verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .arrangements import (LineArrangement, certified_generic, defining_ideal, named,
                           random_generic, split_staircase, staircase)
from .betti import graded_betti, pdim_of, reg_of
from .exactnum import format_rational_function, reciprocal_series, first_negative
from .hilbert import (formula_profile, hh_series, hilbert_profile, regularity_alpha)
from .ideals import Ideal
from .koszul import (Filtration, MalformedFiltration, classification_grid, classify,
                     construct_filtration_thm43, five_p6_case, render_grid, specializations,
                     verify_filtration)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2
NAMED = ("three_p4", "four_p3_special", "five_p6")


class InputError(ValueError):
    pass


def _emit(obj, pretty_text: Optional[str] = None, pretty: bool = False):
    if pretty and pretty_text is not None:
        print(pretty_text)
    else:
        print(json.dumps(obj, sort_keys=True))


def _default_seed() -> int:
    raw = os.environ.get("LINEA_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"LINEA_SEED must be an integer, got {raw!r}")


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")


def _load_arrangement(ref: str) -> LineArrangement:
    if ref in NAMED:
        return named(ref)
    return LineArrangement.from_json(_read_json(ref))


def _load_ideal(path: str) -> Ideal:
    return Ideal.from_json(_read_json(path))


def _ideal_from_args(args) -> Ideal:
    if getattr(args, "ideal", None):
        return _load_ideal(args.ideal)
    if getattr(args, "arrangement", None):
        return defining_ideal(_load_arrangement(args.arrangement))
    if args.lines is None or args.dim is None:
        raise InputError("give --ideal, --arrangement, or --lines with --dim")
    return defining_ideal(random_generic(args.lines, args.dim, args.seed))


# -- verbs ------------------------------------------------------------------------

def cmd_arrangement(args) -> int:
    if args.named:
        A = named(args.named, args.a, args.b)
    elif args.lines is None or args.dim is None:
        raise InputError("give --named, or --lines with --dim")
    elif args.kind == "staircase":
        A = staircase(args.lines, args.dim)
    elif args.kind == "two-block":
        A = split_staircase(args.lines, args.dim, args.seed)[0]
    elif args.certify:
        A, _notes = certified_generic(args.lines, args.dim, args.seed)
    else:
        A = random_generic(args.lines, args.dim, args.seed)
    out = A.to_json()
    if args.with_ideal:
        out["ideal"] = defining_ideal(A).to_json()
    _emit(out)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    if args.ideal or args.arrangement:
        if args.method == "formula":
            raise InputError("the formula method needs --lines and --dim")
        I = _ideal_from_args(args)
        prof = hilbert_profile(I, args.max_deg, args.method, exact=args.exact)
        series = prof.series if prof.series is not None else hilbert_profile(I, 0, "gb").series
        _emit({"values": prof.as_list(), "series": format_rational_function(series)})
        return EXIT_OK
    if args.lines is None or args.dim is None:
        raise InputError("give --ideal, --arrangement, or --lines with --dim")
    if args.method == "formula":
        prof = formula_profile(args.lines, args.dim, args.max_deg)
    else:
        I = defining_ideal(random_generic(args.lines, args.dim, args.seed))
        prof = hilbert_profile(I, args.max_deg, args.method, exact=args.exact)
    _emit(prof.as_list())
    return EXIT_OK


def cmd_betti(args) -> int:
    I = _ideal_from_args(args)
    imax = I.nvars if args.imax is None else args.imax
    jmax = args.jmax
    if jmax is None:
        if args.lines is None or args.dim is None:
            raise InputError("--jmax is required for an ideal given by file")
        jmax = imax + regularity_alpha(args.lines, args.dim)
    table = graded_betti(I, imax, jmax, exact=args.exact)
    out = {"table": table.to_json(), "text": table.render()}
    if not table.truncated:
        out["pdim"] = pdim_of(table)
        out["reg"] = reg_of(table)
    _emit(out, table.render(), args.pretty)
    return EXIT_OK


def cmd_classify(args) -> int:
    c = classify(args.lines, args.dim)
    _emit(c.to_json(), f"{args.lines} lines in P^{args.dim}: {c.verdict}"
          + (f" ({c.reason})" if c.reason else ""), args.pretty)
    return EXIT_OK


def cmd_froberg(args) -> int:
    H = hh_series(args.lines, args.dim)
    coeffs = reciprocal_series(H, args.terms)
    out = {"series": format_rational_function(H), "reciprocal": coeffs,
           "first_negative": first_negative(coeffs)}
    _emit(out)
    return EXIT_OK


def _verify_pair(pair):
    J, F = five_p6_case(*pair)
    return verify_filtration(J, F, label=f"a={pair[0]}, b={pair[1]}").to_json()


def cmd_filtration(args) -> int:
    if args.action == "build":
        if args.lines is None or args.dim is None:
            raise InputError("filtration build needs --lines and --dim")
        J, F = construct_filtration_thm43(args.lines, args.dim, args.seed)
        _emit({"ideal": J.to_json(), "filtration": F.to_json()})
        return EXIT_OK
    bundled = args.filtration is None and args.arrangement in (None, "five_p6")
    if bundled:
        pairs = specializations(args.seeds, args.seed)
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                reports = list(pool.map(_verify_pair, pairs))
        else:
            reports = [_verify_pair(p) for p in pairs]
    else:
        if args.filtration is None or args.arrangement is None:
            raise InputError("give both --arrangement and --filtration")
        J = defining_ideal(_load_arrangement(args.arrangement))
        F = Filtration.from_json(_read_json(args.filtration), J.nvars)
        reports = [verify_filtration(J, F, label=args.filtration).to_json()]
    accepted = all(r["accepted"] for r in reports)
    text = "\n".join(f"{r['label']}: {'accepted' if r['accepted'] else 'REJECTED'}, "
                     f"{r['members']} ideals ({r['distinct']} distinct), {r['steps']} steps"
                     for r in reports)
    _emit({"accepted": accepted, "reports": reports}, text, args.pretty)
    return EXIT_OK if accepted else EXIT_FAILED


def cmd_table(args) -> int:
    grid = classification_grid(args.max_lines, args.max_dim)
    cells = [{"m": m, "n": n, **c.to_json()} for (m, n), c in sorted(grid.items())]
    _emit(cells, render_grid(grid), args.pretty)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, seed: int):
    p.add_argument("--seed", type=int, default=seed, help="seed (default: $LINEA_SEED or 0)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent tasks")
    p.add_argument("--exact", action="store_true", help="force exact rational linear algebra")
    p.add_argument("--pretty", action="store_true", help="human-readable output")


def _space(p: argparse.ArgumentParser, required: bool = False):
    p.add_argument("--lines", type=int, required=required, help="number of lines m")
    p.add_argument("--dim", type=int, required=required, help="ambient dimension n")


def build_parser(seed: int = 0) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linea", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("arrangement", help="emit a line arrangement as JSON")
    _common(p, seed)
    _space(p)
    p.add_argument("--named", choices=NAMED)
    p.add_argument("--a", help="first parameter of five_p6")
    p.add_argument("--b", help="second parameter of five_p6")
    p.add_argument("--kind", choices=("generic", "staircase", "two-block"), default="generic")
    p.add_argument("--certify", action="store_true", help="reseed until the genericity certificate holds")
    p.add_argument("--with-ideal", action="store_true", help="include the defining ideal")
    p.set_defaults(func=cmd_arrangement)

    p = sub.add_parser("hilbert", help="Hilbert function values")
    _common(p, seed)
    _space(p)
    p.add_argument("--ideal")
    p.add_argument("--arrangement")
    p.add_argument("--max-deg", type=int, default=5)
    p.add_argument("--method", choices=("formula", "gb", "linalg"), default="gb")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("betti", help="graded Betti table of S/J")
    _common(p, seed)
    _space(p)
    p.add_argument("--ideal")
    p.add_argument("--arrangement")
    p.add_argument("--imax", type=int)
    p.add_argument("--jmax", type=int)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("classify", help="Koszul verdict for m generic lines in P^n")
    _common(p, seed)
    _space(p, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("froberg", help="coefficients of 1/H(-t)")
    _common(p, seed)
    _space(p, required=True)
    p.add_argument("--terms", type=int, default=20)
    p.set_defaults(func=cmd_froberg)

    p = sub.add_parser("filtration", help="verify or build Koszul filtrations")
    p.add_argument("action", choices=("verify", "build"))
    _common(p, seed)
    _space(p)
    p.add_argument("--arrangement", help="arrangement file or named arrangement")
    p.add_argument("--filtration", help="filtration file")
    p.add_argument("--seeds", type=int, default=3, help="parameter specializations to verify")
    p.set_defaults(func=cmd_filtration)

    p = sub.add_parser("table", help="classification grid")
    _common(p, seed)
    p.add_argument("--max-lines", type=int, default=12)
    p.add_argument("--max-dim", type=int, default=12)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        seed = _default_seed()
    except InputError as exc:
        print(f"linea: {exc}", file=sys.stderr)
        return EXIT_INPUT
    parser = build_parser(seed)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, MalformedFiltration, ValueError) as exc:
        print(f"linea: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
