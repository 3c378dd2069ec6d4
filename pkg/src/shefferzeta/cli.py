"""Command-line front end.

Exit codes: 0 when everything passes, 1 on a verification failure or a
cross-check disagreement, 2 on bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Iterable, List, Optional, Sequence

from .bernoulli_euler import (
    BERNOULLI_VARIANTS,
    EULER_VARIANTS,
    ZETA_VARIANTS,
    bernoulli_via_moment,
    euler_via,
    zeta_even_ratio,
)
from .classical import bernoulli_number, euler_number
from .exact import format_rational
from .identities import REGISTRY, run_all
from .numchecks import NUMERIC_REGISTRY, run_numeric
from .numeric import MIN_PREC
from .sheffer import P_ROUTES, Q_ROUTES, gen_p, gen_q

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

FORMATS = ("pretty", "json", "csv")


class UsageError(Exception):
    pass


def _prec(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid precision {s!r}") from None
    if v < MIN_PREC:
        raise argparse.ArgumentTypeError(f"precision must be >= {MIN_PREC}")
    return v


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {s!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _tol(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid tolerance {s!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return v


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default="pretty")
    p.add_argument("--output", metavar="PATH", help="write to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shefferzeta",
        description="Sheffer sequences p_n, q_n, Bernoulli/Euler numbers and zeta-value identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="print p_n or q_n")
    g.add_argument("seq", choices=("p", "q"))
    g.add_argument("n", type=_nonneg_int)
    g.add_argument("--route", help=f"p: {', '.join(P_ROUTES)}; q: {', '.join(Q_ROUTES)}")
    g.add_argument("--all-routes", action="store_true", help="build by every route and report agreement")
    _common(g)

    nb = sub.add_parser("numbers", help="Bernoulli, Euler or zeta(2n)/pi^2n tables")
    nb.add_argument("kind", choices=("bernoulli", "euler", "zeta-even-ratio"))
    nb.add_argument("n_max", nargs="?", type=_positive_int, help="largest index")
    nb.add_argument("--n-max", dest="n_max_opt", type=_positive_int)
    nb.add_argument("--variant", help="formula used for the even-index entries")
    nb.add_argument("--cross-check", action="store_true", help="recompute by every variant")
    _common(nb)

    v = sub.add_parser("verify", help="run the exact and/or numeric identity checks")
    v.add_argument("scope", choices=("exact", "numeric", "all"))
    v.add_argument("--ids", action="append", help="comma-separated check ids (repeatable)")
    v.add_argument("--n-max", type=_positive_int, default=20)
    v.add_argument("--prec", type=_prec, default=30)
    v.add_argument("--tol", type=_tol, default=None, help="override every numeric tolerance")
    _common(v)
    return parser


# ---------------------------------------------------------------- output


def _csv(rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _jsonl(objs: Iterable[object]) -> str:
    return "".join(json.dumps(o, sort_keys=True) + "\n" for o in objs)


# ---------------------------------------------------------------- commands


def cmd_gen(args) -> tuple:
    routes = P_ROUTES if args.seq == "p" else Q_ROUTES
    build = gen_p if args.seq == "p" else gen_q
    if args.route is not None and args.route not in routes:
        raise UsageError(f"route {args.route!r} is not valid for {args.seq}; choose from {', '.join(routes)}")
    name = f"{args.seq}_{args.n}"
    if args.all_routes:
        polys = {r: build(args.n, r) for r in routes}
        agree = len(set(polys.values())) == 1
        if args.format == "json":
            text = json.dumps({"seq": name, "routes": {r: p.to_json() for r, p in polys.items()}, "agree": agree},
                              sort_keys=True) + "\n"
        elif args.format == "csv":
            rows = [("route", "power", "coefficient")]
            for r, p in polys.items():
                rows += [(r, k, format_rational(c)) for k, c in enumerate(p.coeffs)]
            rows.append(("agree", "", str(agree).lower()))
            text = _csv(rows)
        else:
            text = "".join(f"{r}: {p.pretty()}\n" for r, p in polys.items())
            text += f"agree: {'yes' if agree else 'NO'}\n"
        return text, EXIT_OK if agree else EXIT_FAIL

    p = build(args.n, args.route or routes[0])
    if args.format == "json":
        text = p.dumps() + "\n"
    elif args.format == "csv":
        text = _csv([("power", "coefficient")] + [(k, format_rational(c)) for k, c in enumerate(p.coeffs)])
    else:
        text = p.pretty() + "\n"
    return text, EXIT_OK


def _number_rows(kind: str, n_max: int, variant: Optional[str]):
    """(index, value, {variant: value}) for each printed index."""
    rows = []
    if kind == "bernoulli":
        variants = BERNOULLI_VARIANTS
        for i in range(n_max + 1):
            if i >= 3 and i % 2:
                continue
            if i >= 2:
                by = {v: bernoulli_via_moment(i // 2, v) for v in variants}
                rows.append((i, by[variant] if variant else bernoulli_number(i), by))
            else:
                rows.append((i, bernoulli_number(i), {}))
    elif kind == "euler":
        variants = EULER_VARIANTS
        for i in range(0, n_max + 1, 2):
            by = {v: euler_via(i // 2, v) for v in variants if not (v == "thm2" and i == 0)}
            rows.append((i, by[variant] if variant else euler_number(i), by))
    else:
        for i in range(2, n_max + 1, 2):
            by = {v: zeta_even_ratio(i // 2, v) for v in ZETA_VARIANTS}
            rows.append((i, by[variant or ZETA_VARIANTS[0]], by))
    return rows


def cmd_numbers(args) -> tuple:
    n_max = args.n_max_opt if args.n_max_opt is not None else args.n_max
    if n_max is None:
        raise UsageError("n_max is required (positional or --n-max)")
    if args.n_max is not None and args.n_max_opt is not None and args.n_max != args.n_max_opt:
        raise UsageError("conflicting n_max values")
    allowed = {"bernoulli": BERNOULLI_VARIANTS, "euler": EULER_VARIANTS, "zeta-even-ratio": ZETA_VARIANTS}[args.kind]
    if args.variant is not None and args.variant not in allowed:
        raise UsageError(f"variant {args.variant!r} is not valid for {args.kind}; choose from {', '.join(allowed)}")
    rows = _number_rows(args.kind, n_max, args.variant)
    ok = True
    out = []
    for i, val, by in rows:
        agree = all(v == val for v in by.values())
        ok = ok and agree
        out.append((i, val, by, agree))

    cross = args.cross_check
    if args.format == "json":
        objs = []
        for i, val, by, agree in out:
            o = {"index": i, "value": format_rational(val)}
            if cross:
                o["variants"] = {k: format_rational(v) for k, v in by.items()}
                o["agree"] = agree
            objs.append(o)
        text = _jsonl(objs)
    elif args.format == "csv":
        head = ["index", "value"] + (["agree"] if cross else [])
        body = [[i, format_rational(val)] + ([str(agree).lower()] if cross else []) for i, val, by, agree in out]
        text = _csv([head] + body)
    else:
        lines = []
        for i, val, by, agree in out:
            line = f"{i}: {format_rational(val)}"
            if cross and not agree:
                bad = ", ".join(f"{k}={format_rational(v)}" for k, v in by.items() if v != val)
                line += f"  DISAGREE ({bad})"
            lines.append(line)
        if cross:
            lines.append("all variants agree" if ok else "variants disagree")
        text = "\n".join(lines) + "\n"
    return text, EXIT_FAIL if (cross and not ok) else EXIT_OK


def _split_ids(raw: Optional[List[str]]) -> Optional[List[str]]:
    if not raw:
        return None
    ids = [s.strip() for chunk in raw for s in chunk.split(",") if s.strip()]
    return list(dict.fromkeys(ids))


def cmd_verify(args) -> tuple:
    ids = _split_ids(args.ids)
    exact_ids = numeric_ids = None
    if ids is not None:
        known = set(REGISTRY) if args.scope == "exact" else set(NUMERIC_REGISTRY) if args.scope == "numeric" \
            else set(REGISTRY) | set(NUMERIC_REGISTRY)
        unknown = [i for i in ids if i not in known]
        if unknown:
            raise UsageError(f"unknown check: {', '.join(unknown)}")
        exact_ids = [i for i in ids if i in REGISTRY]
        numeric_ids = [i for i in ids if i in NUMERIC_REGISTRY]

    exact_reports, numeric_results = [], []
    if args.scope in ("exact", "all") and (exact_ids is None or exact_ids):
        exact_reports = run_all(args.n_max, exact_ids)
    if args.scope in ("numeric", "all") and (numeric_ids is None or numeric_ids):
        numeric_results = run_numeric(numeric_ids, args.prec, args.tol, probes=True)

    ok = all(r.passed for r in exact_reports) and all(r.passed for r in numeric_results if r.asserted)

    if args.format == "json":
        text = "".join(r.dumps() + "\n" for r in exact_reports)
        text += "".join(r.dumps() + "\n" for r in numeric_results)
    elif args.format == "csv":
        rows = [("kind", "id", "params", "pass", "detail")]
        for r in exact_reports:
            rows.append(("exact", r.id, f"n={r.n_range[0]}..{r.n_range[1]}", str(r.passed).lower(),
                         f"{r.substantive} substantive"))
        for r in numeric_results:
            params = ";".join(f"{k}={v}" for k, v in r.params.items())
            detail = r.error or f"rel_diff={r.to_json()['rel_diff']}"
            if not r.asserted:
                detail += " (reported only)"
            rows.append(("numeric", r.id, params, str(r.passed).lower(), detail))
        text = _csv(rows)
    else:
        lines = []
        for r in exact_reports:
            status = "skip" if r.skipped else "PASS" if r.passed else "FAIL"
            line = f"{status}  {r.id}  n={r.n_range[0]}..{r.n_range[1]}  ({r.substantive} substantive)"
            if r.counterexample:
                line += f"  first failure at n={r.counterexample['n']}"
            lines.append(line)
        for r in numeric_results:
            status = "PASS" if r.passed else "FAIL"
            if not r.asserted:
                status = "info"
            params = " ".join(f"{k}={v}" for k, v in r.params.items())
            detail = r.error or f"rel_diff={r.to_json()['rel_diff']} tol={r.tol:g}"
            lines.append(f"{status}  {r.id}  {params}  {detail}")
        lines.append("all checks passed" if ok else "some checks FAILED")
        text = "\n".join(lines) + "\n"
    return text, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"gen": cmd_gen, "numbers": cmd_numbers, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        text, code = COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
