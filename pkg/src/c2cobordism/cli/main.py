"""``c2cob``: dimension tables, expression evaluation, verification suites and the cache.

Exit codes: 0 success, 1 parse or I/O error, 2 verification failure,
3 truncation exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .. import verify
from ..cache import CacheError, cache_load, cache_save, load_or_build, validate
from ..context import C2Context
from ..equivariant import (EqClass, NotInImage, dim_image, dim_presented, geometric_fixed,
                           gamma_underlying_series, homotopy_fixed, membership, restrict)
from ..extended import ExtClass, ext_phi, ext_phi_rank, ext_restrict
from ..formal_group import build_c_table, build_fgl
from ..kernel import TruncationError, WindowError
from ..omega import OmegaDimensionError
from ..report import CheckReport
from .evaluate import EvalError, evaluate
from .parser import ParseError, parse

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_TRUNC = 0, 1, 2, 3
CACHE_ENV = "C2COB_CACHE"
VIEWS = {"normal": 0, "phi": 0, "restrict": 0, "hfp": 1, "gamma-series": 1}


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


# output --------------------------------------------------------------------------------

class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, record: dict, text: str):
        if self.fmt == "json":
            print(json.dumps(record, sort_keys=True), file=self.stream)
        else:
            print(text, file=self.stream)


# context -------------------------------------------------------------------------------

def make_context(args) -> tuple[C2Context, CheckReport | None]:
    if args.N < 2:
        raise CliError("--N must be at least 2")
    window = args.N + 2 if args.window is None else args.window
    if window < 0:
        raise CliError("--window must be >= 0")
    if args.cache:
        ctx, rep, _ = load_or_build(args.cache, args.N, window)
        return C2Context(ctx), rep
    return C2Context.build(args.N, window), None


def _require_valid(rep: CheckReport | None):
    if rep is not None and not rep.passed:
        raise CliError(f"cache failed validation: {rep.counterexample}", EXIT_VERIFY)


def _check_degree(C: C2Context, n: int):
    if n < 0:
        raise CliError("--max-degree must be >= 0")
    if n > C.N:
        raise TruncationError(f"--max-degree {n} exceeds the truncation N = {C.N}")


# table ---------------------------------------------------------------------------------

def cmd_table(args, out: Output) -> int:
    C, rep = make_context(args)
    _require_valid(rep)
    top = C.N if args.max_degree is None else args.max_degree
    _check_degree(C, top)
    if args.ring == "omega":
        for n in range(top + 1):
            d = C.omega.dims[n]
            out.emit({"ring": "omega", "degree": n, "dim": d}, f"omega degree={n} dim={d}")
    elif args.ring == "phi":
        ring = C.fp.phi_ring
        for n in range(top + 1):
            d = len(ring.monomials_of_degree(n))
            out.emit({"ring": "phi", "degree": n, "dim": d}, f"phi degree={n} dim={d}")
    elif args.ring == "c2":
        R = C.eq
        for n in range(top + 1):
            p, q = dim_presented(R, n), dim_image(R, n)
            out.emit({"ring": "c2", "degree": n, "presented": p, "image": q, "match": p == q},
                     f"c2 degree={n} presented={p} image={q} match={'true' if p == q else 'false'}")
    else:
        s = args.sigma_weight
        if s < 0:
            raise CliError("--sigma-weight must be >= 0")
        for t in range(top + 1):
            dim, rank = ext_phi_rank(C.eq, s, t)
            out.emit({"ring": "ext", "sigma_weight": s, "degree": t, "dim": dim,
                      "phi_rank": rank, "phi_injective": rank == dim},
                     f"ext s={s} degree={t} dim={dim} phi_rank={rank} "
                     f"phi_injective={'true' if rank == dim else 'false'}")
    return EXIT_OK


# eval ----------------------------------------------------------------------------------

def canonical(c: EqClass) -> EqClass:
    """The representative picked by ``membership`` in each degree."""
    R = c.R
    img = geometric_fixed(c)
    acc = R.zero()
    for n in sorted(img.degrees()):
        acc = acc + membership(R, img.homogeneous_part(n))
    return acc


def _parse_show(show: list[str] | None) -> tuple[str, int | None]:
    if not show:
        return "normal", None
    view, rest = show[0], show[1:]
    if view not in VIEWS:
        raise CliError(f"unknown view {view!r}; choose from {', '.join(VIEWS)}")
    if len(rest) != VIEWS[view]:
        need = "an integer K" if VIEWS[view] else "no argument"
        raise CliError(f"--show {view} takes {need}")
    if rest:
        try:
            K = int(rest[0])
        except ValueError:
            raise CliError(f"--show {view}: K must be an integer, got {rest[0]!r}") from None
        if K < 0:
            raise CliError(f"--show {view}: K must be >= 0")
        return view, K
    return view, None


def cmd_eval(args, out: Output) -> int:
    view, K = _parse_show(args.show)
    node = parse(args.expr)
    C, rep = make_context(args)
    _require_valid(rep)
    value = evaluate(C.eq, node)
    if isinstance(value, ExtClass):
        if view == "normal":
            text = value.render()
        elif view == "phi":
            text = ext_phi(value).render()
        elif view == "restrict":
            text = ext_restrict(value).render()
        else:
            raise CliError(f"--show {view} applies to classes without a and u")
        out.emit({"expr": args.expr, "view": view, "s": value.s, "t": value.t, "result": text},
                 text)
        return EXIT_OK
    if view == "normal":
        text = canonical(value).render()
    elif view == "phi":
        text = geometric_fixed(value).render()
    elif view == "restrict":
        text = restrict(value).render()
    elif view == "hfp":
        text = homotopy_fixed(value, K).render()
    else:
        series = gamma_underlying_series(value, K)
        lines = [f"Gamma^{n}: {p.render()}" for n, p in enumerate(series)]
        out.emit({"expr": args.expr, "view": view,
                  "result": [p.render() for p in series]}, "\n".join(lines))
        return EXIT_OK
    out.emit({"expr": args.expr, "view": view, "result": text}, text)
    return EXIT_OK


# verify --------------------------------------------------------------------------------

def cmd_verify(args, out: Output) -> int:
    C, rep = make_context(args)
    top = args.max_degree
    if top is not None:
        _check_degree(C, top)
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    reports = [rep] if rep is not None else []
    for name in names:
        try:
            reports.extend(verify.SUITES[name](C, top))
        except (TruncationError, WindowError):
            raise
        except (OmegaDimensionError, ArithmeticError, ValueError) as exc:
            # a corrupted table can break a suite before it finishes
            bad = CheckReport(name)
            bad.fail(f"{type(exc).__name__}: {exc}")
            reports.append(bad)
    ok = True
    for r in reports:
        ok &= r.passed
        text = "\n".join([r.summary()] + [f"  {line}" for line in r.lines])
        out.emit({"check": r.name, "passed": r.passed, "counterexample": r.counterexample,
                  "notes": list(r.lines)}, text)
    return EXIT_OK if ok else EXIT_VERIFY


# cache ---------------------------------------------------------------------------------

def cmd_cache(args, out: Output) -> int:
    if args.action == "save":
        window = args.N + 2 if args.window is None else args.window
        ctx = build_c_table(build_fgl(args.N), window)
        try:
            cache_save(ctx, args.path)
        except OSError as exc:
            raise CliError(f"cannot write {args.path!r}: {exc.strerror}") from None
        out.emit({"action": "save", "path": args.path, "N": ctx.N, "window": ctx.e_hi},
                 f"saved N={ctx.N} window={ctx.e_hi} to {args.path}")
        return EXIT_OK
    ctx = cache_load(args.path)
    rep = validate(ctx)
    out.emit({"action": "load", "path": args.path, "N": ctx.N, "window": ctx.e_hi,
              "a_records": len(ctx.a), "c_records": len(ctx.c), "valid": rep.passed,
              "counterexample": rep.counterexample},
             f"loaded N={ctx.N} window={ctx.e_hi} nonzero a={len(ctx.a)} c={len(ctx.c)}\n"
             + rep.summary())
    return EXIT_OK if rep.passed else EXIT_VERIFY


# parser --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="c2cob", description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=10, help="truncation degree (default 10)")
    ap.add_argument("--window", type=int, default=None,
                    help="e-window of the reciprocal table (default N+2)")
    ap.add_argument("--cache", default=os.environ.get(CACHE_ENV) or None,
                    help=f"coefficient cache file (default ${CACHE_ENV})")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="per-degree dimensions")
    t.add_argument("--ring", choices=("omega", "phi", "c2", "ext"), required=True)
    t.add_argument("--max-degree", type=int, default=None)
    t.add_argument("--sigma-weight", type=int, default=0)
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("eval", help="evaluate a class expression")
    e.add_argument("expr")
    e.add_argument("--show", nargs="+", metavar="VIEW",
                   help="normal | phi | restrict | hfp K | gamma-series K")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=list(verify.SUITES) + ["all"], default="all")
    v.add_argument("--max-degree", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cache", help="save or load the coefficient cache")
    c.add_argument("action", choices=("save", "load"))
    c.add_argument("path")
    c.set_defaults(func=cmd_cache)
    return ap


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; that code is reserved for verification
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    out = Output(args.format, stdout)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_USAGE
    except CacheError as exc:
        print(f"cache error: {exc}", file=stderr)
        return EXIT_USAGE
    except (TruncationError, WindowError) as exc:
        print(f"truncation exceeded: {exc}", file=stderr)
        return EXIT_TRUNC
    except CliError as exc:
        print(f"error: {exc}", file=stderr)
        return exc.code
    except (EvalError, NotInImage, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
