"""Deterministic text cache of the a- and c-tables.

Format::

    cobordism-cache v1 N=<int> window=<int>
    a <i> <j> = <poly>        (i <= j, sorted)
    c <i> <j> = <poly>        (sorted)

Polynomials use the canonical rendering.  Writes go to a temporary file in
the same directory that is then renamed over the target.
"""

from __future__ import annotations

import os
import re
import tempfile

from .formal_group import (FglContext, build_c_table, build_fgl, check_fgl_axioms,
                           check_reciprocal, model_ring)
from .report import CheckReport

HEADER_RE = re.compile(r"^cobordism-cache v(\d+) N=(\d+) window=(-?\d+)$")
RECORD_RE = re.compile(r"^([ac]) (-?\d+) (-?\d+) = (.+)$")
VERSION = 1


class CacheError(ValueError):
    pass


def serialize(ctx: FglContext) -> str:
    if ctx.e_hi is None:
        raise CacheError("the reciprocal table has not been built")
    lines = [f"cobordism-cache v{VERSION} N={ctx.N} window={ctx.e_hi}"]
    N = ctx.N
    for i in range(1, N + 1):
        for j in range(i, N + 2 - i):
            lines.append(f"a {i} {j} = {ctx.a_coeff(i, j).render()}")
    for i in range(0, ctx.y_max + 1):
        for j in range(-i - 1, min(ctx.e_hi, N - i - 1) + 1):
            lines.append(f"c {i} {j} = {ctx.c_coeff(i, j).render()}")
    return "\n".join(lines) + "\n"


def cache_save(ctx: FglContext, path: str | os.PathLike) -> None:
    text = serialize(ctx)
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".cobordism-cache-", dir=folder)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def parse_cache(text: str) -> FglContext:
    """Parse a cache file.  Missing records read as zero; validation is separate."""
    lines = text.splitlines()
    if not lines:
        raise CacheError("empty cache file")
    head = HEADER_RE.match(lines[0].strip())
    if head is None:
        raise CacheError(f"bad cache header {lines[0]!r}")
    version, N, window = (int(g) for g in head.groups())
    if version != VERSION:
        raise CacheError(f"unsupported cache version v{version} (expected v{VERSION})")
    if N < 2:
        raise CacheError(f"cache truncation N={N} is below 2")
    B = model_ring(N)
    a, c = {}, {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        rec = RECORD_RE.match(line)
        if rec is None:
            raise CacheError(f"line {lineno}: malformed record {line!r}")
        kind, i, j, body = rec.group(1), int(rec.group(2)), int(rec.group(3)), rec.group(4)
        try:
            poly = B.parse(body)
        except ValueError as exc:
            raise CacheError(f"line {lineno}: {exc}") from None
        table = a if kind == "a" else c
        if (i, j) in table:
            raise CacheError(f"line {lineno}: duplicate record {kind} {i} {j}")
        if poly:
            table[(i, j)] = poly
    ctx = FglContext(N=N, B=B, exp=None, log=None, a=a, c=c, y_max=N - 1, e_hi=window)
    return ctx


def cache_load(path: str | os.PathLike) -> FglContext:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CacheError(f"cannot read cache {os.fspath(path)!r}: {exc.strerror}") from None
    return parse_cache(text)


def validate(ctx: FglContext) -> CheckReport:
    """Re-check the stored tables: gradings, 2-torsion, associativity and F * (1/F) = 1."""
    rep = CheckReport("cache")
    for (i, j), v in ctx.a.items():
        if i > j or i < 1 or i + j - 1 > ctx.N:
            rep.fail(f"a record ({i},{j}) out of range")
    for (i, j), v in ctx.c.items():
        if i < 0 or i > ctx.y_max or j < -i - 1 or i + j + 1 > ctx.N:
            rep.fail(f"c record ({i},{j}) out of range")
    for sub in (check_fgl_axioms(ctx), check_reciprocal(ctx)):
        rep.lines.extend(sub.lines)
        if not sub.passed:
            rep.fail(sub.counterexample)
    return rep


def restrict_context(ctx: FglContext, N: int) -> FglContext:
    """The tables of ``ctx`` cut down to truncation degree ``N <= ctx.N``."""
    if N > ctx.N:
        raise ValueError("can only restrict to a smaller truncation")
    if N == ctx.N:
        return ctx
    B = model_ring(N)

    def move(p):
        return B.parse(p.render())

    a = {k: move(v) for k, v in ctx.a.items() if k[0] + k[1] - 1 <= N}
    c = {k: move(v) for k, v in ctx.c.items() if k[0] + k[1] + 1 <= N and k[0] <= N - 1}
    return FglContext(N=N, B=B, exp=None, log=None, a=a, c=c, y_max=N - 1, e_hi=ctx.e_hi)


def tables_agree(big: FglContext, small: FglContext) -> bool:
    """True when ``big`` reproduces every record of ``small`` (``big.N >= small.N``)."""
    over = restrict_context(big, small.N)

    def rendered(table, window=None):
        return {k: v.render() for k, v in table.items()
                if v and (window is None or k[1] <= window)}

    return (rendered(over.a) == rendered(small.a)
            and rendered(over.c, small.e_hi) == rendered(small.c, small.e_hi))


def load_or_build(path: str | os.PathLike | None, N: int,
                  window: int) -> tuple[FglContext, CheckReport | None, bool]:
    """Context for truncation ``N``: from the cache when it covers ``N``, else rebuilt.

    Returns ``(ctx, validation report or None, rewritten)``.  A cache with a
    smaller ``N`` is replaced by a fresh build after checking that the fresh
    tables agree with the cached ones on the overlap.
    """
    if path is None or not os.path.exists(path):
        ctx = build_c_table(build_fgl(N), window)
        if path is not None:
            cache_save(ctx, path)
        return ctx, None, path is not None
    cached = cache_load(path)
    rep = validate(cached)
    if cached.N >= N:
        return restrict_context(cached, N), rep, False
    fresh = build_c_table(build_fgl(N), max(window, cached.e_hi or window))
    if not tables_agree(fresh, cached):
        rep.fail(f"cached tables (N={cached.N}) disagree with a fresh build on the overlap")
    cache_save(fresh, path)
    return fresh, rep, True
