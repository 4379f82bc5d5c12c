"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage or
input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Iterator, Optional, Sequence

import numpy as np

from . import cycmap, dh, ffpoly
from .report import ReportRow, RowWriter, dumps

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    """``"12"`` or ``"2..100"`` into an inclusive ``(lo, hi)``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        v = int(text)
        return v, v
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None


def parse_ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing required flag(s): {', '.join(missing)}")


def _load_map_file(path: str):
    try:
        with open(path) as fh:
            data = json.load(fh)
        return cycmap.load_mapping(data)
    except (OSError, json.JSONDecodeError, ValueError, TypeError) as exc:
        raise UsageError(f"bad mapping file {path}: {exc}") from None


def _ctx(args) -> ffpoly.PrimeFieldCtx:
    _need(args, "p", "n")
    try:
        return ffpoly.make_ctx(args.p, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- index ----------------------------------------------------------------------

def cmd_index(args, out) -> int:
    f = _load_map_file(args.map_file)
    if isinstance(f, cycmap.ExpMap):
        payload = cycmap.compute_index(f).to_dict()
    else:
        if f.n > 64:
            raise UsageError("bivariate index search is limited to n <= 64")
        payload = {
            "n": f.n,
            "pairs": [
                cycmap.bi_representable_at(f, a, b).to_dict()
                for a, b in cycmap.minimal_index_pairs(f)
            ],
        }
    out.write(dumps(payload) + "\n")
    return EXIT_OK


# -- verify ---------------------------------------------------------------------

def _thm5_rows(args) -> Iterator[ReportRow]:
    ctx = _ctx(args)
    maps: list[tuple[str, cycmap.ExpMap]] = []
    if args.map is not None:
        maps.append((args.map, _resolve_uni_map(args.map, ctx.n)))
    if args.samples:
        _need(args, "seed")
        rng = np.random.default_rng(args.seed)
        for k in range(args.samples):
            m = cycmap.random_cyclotomic(ctx.n, rng)
            maps.append((f"random[{k}]", cycmap.to_expmap(m)))
    if not maps:
        maps.append(("d", dh.dh_uni(ctx.n)))
    for label, f in maps:
        rep = ffpoly.thm5_check(f, ctx)
        yield _bound_row("t5", {"p": ctx.p, "n": ctx.n, "map": label}, rep)


def _thm6_rows(args, n_values: Sequence[int], count: int) -> Iterator[ReportRow]:
    rng = np.random.default_rng(args.seed)
    for n in n_values:
        for k in range(count):
            m = cycmap.random_bi_cyclotomic(n, rng)
            rep = ffpoly.thm6_check(m, n)
            params = {"n": n, "sample": k, "ell1": m.ell1, "ell2": m.ell2, "r1": m.r1, "r2": m.r2}
            yield _bound_row("t6", params, rep)


def _bound_row(tid: str, params: dict, rep: ffpoly.BoundReport) -> ReportRow:
    bound = [rep.bound.numerator, rep.bound.denominator]
    return ReportRow(
        tid, params, rep.observed, rep.passed, expected={"at_least": bound},
        witness=rep.context if not rep.passed else None,
    )


def _verify_rows(args) -> Iterator[ReportRow]:
    t = args.theorem
    if t == "t1":
        lo, hi = args.n if args.n is not None else (2, 100)
        return dh.verify_thm1(lo, hi)
    if t == "t2":
        return dh.verify_thm2(args.primes_up_to if args.primes_up_to is not None else 101)
    if t == "t3":
        return dh.verify_thm3(args.n_max if args.n_max is not None else 12)
    if t == "t4":
        _need(args, "seed")
        return dh.verify_thm4(args.n_max or 20, args.samples or 25, args.seed)
    if t == "t5":
        if args.n is not None:
            args.n = args.n[0]
        return _thm5_rows(args)
    if t == "t6":
        _need(args, "seed")
        lo, hi = args.n if args.n is not None else (12, 12)
        if not 1 <= lo <= hi <= 40:
            raise UsageError("t6 needs 1 <= n <= 40")
        return _thm6_rows(args, range(lo, hi + 1), args.samples or 50)
    raise UsageError(f"unknown theorem {t}")  # pragma: no cover


def cmd_verify(args, out) -> int:
    try:
        rows = _verify_rows(args)
        writer = RowWriter(out, args.format)
        for row in rows:
            writer.write(row)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK if writer.ok else EXIT_FAIL


# -- coincidences ---------------------------------------------------------------

def cmd_coincidences(args, out) -> int:
    n = args.n
    if n is None or n < 1:
        raise UsageError("--n must be a positive integer")
    if args.kind == "uni":
        _need(args, "r", "a")
        rep = dh.uni_coincidences(n, args.r, args.a)
    else:
        _need(args, "r1", "r2", "a")
        rep = dh.bi_coincidences(n, args.r1, args.r2, args.a)
    out.write(dumps(rep.to_dict()) + "\n")
    return EXIT_OK if rep.within_bound else EXIT_FAIL


# -- ff -------------------------------------------------------------------------

def _resolve_uni_map(spec: str, n: int) -> cycmap.ExpMap:
    if spec == "d":
        return dh.dh_uni(n)
    f = _load_map_file(spec)
    if not isinstance(f, cycmap.ExpMap) or f.n != n:
        raise UsageError(f"{spec}: expected a univariate map with n={n}")
    return f


def cmd_ff(args, out) -> int:
    ctx = _ctx(args)
    action = args.action
    if action == "interpolate":
        _need(args, "values")
        if len(args.values) != ctx.n:
            raise UsageError(f"--values needs exactly {ctx.n} entries")
        poly = ffpoly.interpolate_subgroup(ctx, args.values)
        out.write(dumps({"p": ctx.p, "n": ctx.n, "gamma": ctx.gamma, "terms": poly.to_list()}) + "\n")
        return EXIT_OK
    if action == "thm5":
        f = _resolve_uni_map(args.map or "d", ctx.n)
        rep = ffpoly.thm5_check(f, ctx)
        out.write(dumps(rep.to_dict()) + "\n")
        return EXIT_OK if rep.passed else EXIT_FAIL
    if action == "thm6":
        if ctx.n > 40:
            raise UsageError("thm6 is limited to n <= 40")
        if args.map == "D":
            rep = ffpoly.thm6_check(dh.dh_bi(ctx.n))
            out.write(dumps(rep.to_dict()) + "\n")
            return EXIT_OK if rep.passed else EXIT_FAIL
        _need(args, "random", "seed")
        writer = RowWriter(out, args.format).write_all(_thm6_rows(args, [ctx.n], args.random))
        return EXIT_OK if writer.ok else EXIT_FAIL
    if action == "vandermonde":
        _need(args, "u")
        ell1 = args.ell1 or ctx.n
        ell2 = args.ell2 or ctx.n
        try:
            rep = ffpoly.vandermonde_witness(
                ctx, args.u, args.N, ell1, ell2, args.r1 or 0, args.r2 or 0
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        out.write(dumps(rep.to_dict()) + "\n")
        return EXIT_OK if rep.passed else EXIT_FAIL
    raise UsageError(f"unknown ff action {action}")  # pragma: no cover


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dhindex", description="Index of cyclotomic and Diffie-Hellman mappings."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="minimal index (pair) of a mapping file")
    p_index.add_argument("map_file")

    p_verify = sub.add_parser("verify", help="run a theorem sweep")
    p_verify.add_argument("theorem", choices=["t1", "t2", "t3", "t4", "t5", "t6"])
    p_verify.add_argument("--n", type=parse_range, help="N or LO..HI")
    p_verify.add_argument("--n-max", type=int)
    p_verify.add_argument("--primes-up-to", type=int)
    p_verify.add_argument("--samples", type=int)
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--p", type=int)
    p_verify.add_argument("--map", help="FILE or d")
    p_verify.add_argument("--format", choices=["json", "csv"], default="json")

    p_co = sub.add_parser("coincidences", help="agreement points with d or D")
    p_co.add_argument("kind", choices=["uni", "bi"])
    p_co.add_argument("--n", type=int, required=True)
    p_co.add_argument("--r", type=int)
    p_co.add_argument("--r1", type=int)
    p_co.add_argument("--r2", type=int)
    p_co.add_argument("--a", type=int)

    p_ff = sub.add_parser("ff", help="prime-field subgroup computations")
    p_ff.add_argument("action", choices=["interpolate", "thm5", "thm6", "vandermonde"])
    p_ff.add_argument("--p", type=int, required=True)
    p_ff.add_argument("--n", type=int, required=True)
    p_ff.add_argument("--values", type=parse_ints)
    p_ff.add_argument("--map", help="FILE, d or D")
    p_ff.add_argument("--random", type=int)
    p_ff.add_argument("--seed", type=int)
    p_ff.add_argument("--u", type=parse_ints)
    p_ff.add_argument("--N", type=int, default=0)
    p_ff.add_argument("--ell1", type=int)
    p_ff.add_argument("--ell2", type=int)
    p_ff.add_argument("--r1", type=int)
    p_ff.add_argument("--r2", type=int)
    p_ff.add_argument("--format", choices=["json", "csv"], default="json")
    return parser


COMMANDS = {
    "index": cmd_index,
    "verify": cmd_verify,
    "coincidences": cmd_coincidences,
    "ff": cmd_ff,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"dhindex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
