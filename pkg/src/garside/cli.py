"""
Command-line interface.

Braid arguments are either inline words (``"n=3; 1 -2 D"``) or paths to files
holding a word or a canonical JSON record. Exit codes: 0 yes/success, 1 no,
2 usage or parse error, 3 unresolved or budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
from pathlib import Path

from . import normal_form as nf
from . import stats
from .fast import AUTO, EXACT, FAST, Verdict, decide_conjugacy, runtime_probe
from .summit import (
    DEFAULT_BUDGET,
    FULL,
    RESTRICTED,
    RSSS,
    USS,
    BudgetExhausted,
    generate_invariant_set,
    power_and_cycle,
)

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_UNRESOLVED = 0, 1, 2, 3
JOBS_ENV = "GARSIDE_JOBS"


class UsageError(Exception):
    pass


def read_braid(arg: str) -> nf.CanonicalBraid:
    text = arg
    if not arg.lstrip().startswith("n="):
        path = Path(arg)
        if not path.is_file():
            raise UsageError(f"{arg!r} is neither an inline word (n=...) nor a readable file")
        text = path.read_text()
    if text.lstrip().startswith("{"):
        try:
            return nf.from_json(text)
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad canonical JSON in {arg}: {exc}") from None
    return nf.word_to_braid(text)


def _emit(obj, out: str | None = None, raw: bool = False) -> None:
    text = obj if raw else json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _int_list(s: str) -> list[int]:
    try:
        return [int(t) for t in s.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def _default_jobs() -> int:
    v = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(v))
    except ValueError:
        return 1


def _seed(args) -> int:
    return args.seed if args.seed is not None else secrets.randbits(32)


# ---------------------------------------------------------------------------
# subcommands


def cmd_nf(args) -> int:
    x = read_braid(args.braid)
    if args.expand:
        _emit(nf.format_word(nf.render(x)), args.out, raw=True)
    else:
        _emit(nf.to_json(x), args.out)
    return EXIT_YES


def cmd_conj(args) -> int:
    x, y = read_braid(args.x), read_braid(args.y)
    if x.n != y.n:
        raise UsageError(f"braid index mismatch: {x.n} vs {y.n}")
    cert = decide_conjugacy(x, y, mode=args.mode, policy=args.policy, budget=args.budget)
    _emit(cert.to_json(), args.out)
    if cert.verdict is Verdict.CONJUGATE:
        return EXIT_YES
    if cert.verdict is Verdict.UNRESOLVED:
        return EXIT_UNRESOLVED
    return EXIT_NO


def _cmd_set(args, kind: str) -> int:
    x = read_braid(args.braid)
    try:
        res = generate_invariant_set(x, kind, args.policy, args.budget)
    except BudgetExhausted as exc:
        _emit({
            "schema_version": nf.SCHEMA_VERSION,
            "kind": kind,
            "policy": args.policy,
            "status": "budget exhausted",
            "budget": exc.budget,
            "elements": exc.elements,
            "orbits": exc.orbits,
        }, args.out)
        return EXIT_UNRESOLVED
    _emit(dict(res.to_json(), status="complete"), args.out)
    return EXIT_YES


def cmd_uss(args) -> int:
    return _cmd_set(args, USS)


def cmd_rsss(args) -> int:
    return _cmd_set(args, RSSS)


def cmd_dtable(args) -> int:
    table = stats.d_bound_table(args.n_list, args.k_list)
    if args.format == "csv":
        _emit(table.to_csv(), args.out, raw=True)
    else:
        _emit(table.to_json(), args.out)
    return EXIT_YES


def cmd_mc(args) -> int:
    seed = _seed(args)
    try:
        res = stats.mc_experiment(args.experiment, args.n, args.k, args.samples, seed, jobs=args.jobs)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if args.format == "csv":
        _emit(stats.DescentTable([res.to_row()]).to_csv(), args.out, raw=True)
    else:
        _emit(res.to_json(), args.out)
    return EXIT_YES


def cmd_pacycle(args) -> int:
    x = read_braid(args.braid)
    res = power_and_cycle(x, args.max_power, args.max_cyclings)
    if res is None:
        _emit({
            "schema_version": nf.SCHEMA_VERSION,
            "found": False,
            "max_power": args.max_power,
            "max_cyclings": args.max_cyclings,
        }, args.out)
        return EXIT_UNRESOLVED
    _emit(res.to_json(), args.out)
    return EXIT_YES


def cmd_probe(args) -> int:
    seed = _seed(args)
    rep = runtime_probe(args.n, args.k, args.trials, seed, args.doublings)
    _emit(dict(rep, schema_version=nf.SCHEMA_VERSION), args.out)
    return EXIT_YES


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="garside", description="Garside normal forms, summit sets and braid conjugacy.")
    p.add_argument("--out", help="write output to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("nf", help="canonical form of a braid")
    s.add_argument("braid", help="inline word 'n=<int>; ...' or a file")
    s.add_argument("--expand", action="store_true", help="print the canonical form as a word")
    s.set_defaults(func=cmd_nf)

    s = sub.add_parser("conj", help="decide conjugacy of two braids")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--mode", choices=(FAST, EXACT, AUTO), default=AUTO)
    s.add_argument("--policy", choices=(RESTRICTED, FULL), default=RESTRICTED)
    s.add_argument("--budget", type=int, default=50_000)
    s.set_defaults(func=cmd_conj)

    for name, func in (("uss", cmd_uss), ("rsss", cmd_rsss)):
        s = sub.add_parser(name, help=f"generate the {name.upper()} of a braid")
        s.add_argument("braid")
        s.add_argument("--policy", choices=(RESTRICTED, FULL), default=RESTRICTED)
        s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        s.set_defaults(func=func)

    s = sub.add_parser("dtable", help="table of recursive descent bounds")
    s.add_argument("--n-list", type=_int_list, default=list(stats.GRID_N))
    s.add_argument("--k-list", type=_int_list, default=list(stats.GRID_K))
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_dtable)

    s = sub.add_parser("mc", help="Monte-Carlo experiment on random braids")
    s.add_argument("--experiment", required=True, choices=sorted(stats.EXPERIMENTS))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--seed", type=int)
    s.add_argument("--jobs", type=int, default=_default_jobs(), help=f"worker processes (default ${JOBS_ENV} or 1)")
    s.add_argument("--format", choices=("csv", "json"), default="json")
    s.set_defaults(func=cmd_mc)

    s = sub.add_parser("pacycle", help="power-and-cycle search for a cyclically weighted conjugate")
    s.add_argument("braid")
    s.add_argument("--max-power", type=int)
    s.add_argument("--max-cyclings", type=int)
    s.set_defaults(func=cmd_pacycle)

    s = sub.add_parser("probe", help="time the fast USS path on random braids")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--trials", type=int, default=5)
    s.add_argument("--doublings", type=int, default=2)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_probe)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except nf.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
