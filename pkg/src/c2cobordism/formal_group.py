"""The universal [2]-torsion formal group law and the table of 1/F(e, y).

Everything is computed inside the model ring B = F_2[b_1, b_2, ...] with
``|b_i| = i``, where the law is ``F(y, z) = exp(log y + log z)`` for
``exp(x) = x + sum b_i x^(i+1)``.  Over F_2 the sum ``log x + log x`` vanishes,
so ``F(x, x) = 0`` and associativity hold by construction; they are still
checked coefficientwise because every later table is derived from ``a``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .kernel import (F2Poly, Homomorphism, PolyRing, Series, WindowError, invert_F,
                     series_reversion)
from .report import CheckReport

log = logging.getLogger(__name__)


def model_ring(N: int) -> PolyRing:
    return PolyRing([(f"b{i}", i) for i in range(1, N + 1)], N)


@dataclass
class FglContext:
    N: int
    B: PolyRing
    exp: Series | None
    log: Series | None
    a: dict[tuple[int, int], F2Poly]
    c: dict[tuple[int, int], F2Poly] = field(default_factory=dict)
    y_max: int = -1
    e_hi: int | None = None

    @property
    def window(self) -> int | None:
        return self.e_hi

    def a_coeff(self, i: int, j: int) -> F2Poly:
        """``a_{i,j}`` including the unit terms ``a_{1,0} = a_{0,1} = 1``."""
        if (i, j) in ((1, 0), (0, 1)):
            return self.B.one()
        if i == 0 or j == 0:
            return self.B.zero()
        if i > j:
            i, j = j, i
        if i + j - 1 > self.N:
            return self.B.zero()
        return self.a.get((i, j), self.B.zero())

    def c_coeff(self, i: int, j: int) -> F2Poly:
        """``c_{i,j}``, the coefficient of ``y^i e^j`` in ``1/F(e, y)``."""
        if self.e_hi is None:
            raise WindowError("reciprocal table not built")
        if i < 0 or j < -i - 1:
            return self.B.zero()
        if i + j + 1 > self.N:
            # beyond the truncation: zero in the truncated ring
            return self.B.zero()
        if i > self.y_max or j > self.e_hi:
            raise WindowError(f"c[{i},{j}] outside certified window (y <= {self.y_max}, e <= {self.e_hi})")
        return self.c.get((i, j), self.B.zero())


def _series_ring(B: PolyRing, names: tuple[str, ...]) -> tuple[PolyRing, Homomorphism]:
    """B extended by weight -1 series variables; truncation on B-degree."""
    S = PolyRing(list(zip(B.vars.names, B.vars.weights)) + [(n, -1) for n in names], B.N)
    embed = Homomorphism(B, {i: S.var(i) for i in range(len(B.vars))}, S.one(), S.zero())
    return S, embed


def fgl_apply(ctx: FglContext, S: PolyRing, embed: Homomorphism, U: F2Poly, V: F2Poly,
              a=None) -> F2Poly:
    """``F(U, V) = sum a_{i,j} U^i V^j`` inside a series ring ``S``."""
    a = ctx.a_coeff if a is None else a
    top = ctx.N + 1
    Upow = [S.one()]
    Vpow = [S.one()]
    for _ in range(top):
        Upow.append(Upow[-1] * U)
        Vpow.append(Vpow[-1] * V)
    acc: set[int] = set()
    for i in range(top + 1):
        for j in range(top + 1 - i):
            coeff = a(i, j)
            if not coeff:
                continue
            acc ^= (embed(coeff) * Upow[i] * Vpow[j]).terms
    return F2Poly(S, frozenset(acc))


def _split(S: PolyRing, B: PolyRing, poly: F2Poly, k: int) -> dict[tuple[int, ...], F2Poly]:
    """Group the terms of ``poly`` by the exponents of the last ``k`` series variables."""
    nb = len(B.vars)
    out: dict[tuple[int, ...], set[int]] = {}
    for m in poly.terms:
        ex = S.vars.exponents(m)
        out.setdefault(ex[nb:nb + k], set()).add(B.vars.monomial(ex[:nb]))
    return {key: F2Poly(B, frozenset(v)) for key, v in out.items()}


def build_fgl(N: int) -> FglContext:
    """Coefficients ``a_{i,j}`` (``i, j >= 1``, ``i + j - 1 <= N``) of the model law."""
    if N < 2:
        raise ValueError("truncation degree N must be >= 2")
    B = model_ring(N)
    exp = Series(B, {1: B.one(), **{i + 1: B.var(f"b{i}") for i in range(1, N + 1)}}, 0, N + 1)
    lg = series_reversion(exp)
    S, embed = _series_ring(B, ("y", "z"))
    y, z = S.var("y"), S.var("z")
    sum_logs = S.zero()
    for k, c in lg.coeffs.items():
        sum_logs = sum_logs + embed(c) * (y ** k + z ** k)
    F = S.zero()
    power = S.one()
    for k in range(1, N + 2):
        power = power * sum_logs
        c = exp.coeffs.get(k)
        if c:
            F = F + embed(c) * power
    a = {}
    for (i, j), coeff in _split(S, B, F, 2).items():
        if i >= 1 and j >= 1 and i <= j and i + j - 1 <= N:
            a[(i, j)] = coeff
    ctx = FglContext(N=N, B=B, exp=exp, log=lg, a=a)
    log.debug("built F_MO through degree %d: %d nonzero a-coefficients", N, len(a))
    return ctx


def check_fgl_axioms(ctx: FglContext) -> CheckReport:
    """Unitality, symmetry, [2]-torsion and associativity through degree N."""
    rep = CheckReport("fgl")
    N, B = ctx.N, ctx.B
    for i in range(1, N + 2):
        for j in range(1, N + 2 - i):
            aij = ctx.a_coeff(i, j)
            if aij != ctx.a_coeff(j, i):
                rep.fail(f"symmetry fails at a[{i},{j}]")
            if aij and aij.degree() != i + j - 1:
                rep.fail(f"a[{i},{j}] not homogeneous of degree {i + j - 1}")
    if ctx.a_coeff(1, 1):
        rep.fail("a[1,1] != 0")
    for s in range(1, N + 2):
        total = B.zero()
        for i in range(0, s + 1):
            total = total + ctx.a_coeff(i, s - i)
        if total:
            rep.fail(f"F(x,x) has nonzero x^{s} coefficient {total}")
    rep.note("unitality F(x,0)=x holds by table layout (a[i,0] = delta_{i,1})")
    assoc = check_associativity(ctx)
    rep.lines.extend(assoc.lines)
    if not assoc.passed:
        rep.fail(assoc.counterexample)
    return rep


def check_associativity(ctx: FglContext, N: int | None = None, a=None) -> CheckReport:
    """``F(F(x,y),z) = F(x,F(y,z))`` coefficientwise through B-degree ``N``."""
    rep = CheckReport("associativity")
    N = ctx.N if N is None else N
    B = ctx.B
    S, embed = _series_ring(B, ("x", "y", "z"))
    x, y, z = S.var("x"), S.var("y"), S.var("z")
    left = fgl_apply(ctx, S, embed, fgl_apply(ctx, S, embed, x, y, a), z, a)
    right = fgl_apply(ctx, S, embed, x, fgl_apply(ctx, S, embed, y, z, a), a)
    diff = (left + right).truncated(None)
    bad = [m for m in diff.terms if S.vars.trunc_degree(m) <= N]
    if bad:
        vt = S.vars
        first = min(bad, key=lambda m: (vt.trunc_degree(m), m))
        nb = len(B.vars)
        ex = vt.exponents(first)
        rep.fail(f"coefficient of x^{ex[nb]} y^{ex[nb + 1]} z^{ex[nb + 2]} differs "
                 f"(degree {vt.trunc_degree(first)})")
        rep.data["first_degree"] = vt.trunc_degree(first)
    else:
        rep.note(f"associativity holds through degree {N}")
    return rep


def build_c_table(ctx: FglContext, e_window_hi: int | None = None) -> FglContext:
    """Fill in ``c_{i,j}`` for ``i + j + 1 <= N``, ``-i-1 <= j <= e_window_hi``."""
    N = ctx.N
    e_hi = N if e_window_hi is None else e_window_hi
    y_max = N - 1
    F = {(1, 0): ctx.B.one(), (0, 1): ctx.B.one()}
    for (i, j), v in ctx.a.items():
        F[(i, j)] = v
        F[(j, i)] = v
    inv = invert_F(F, y_max, (-y_max - 1, e_hi), ctx.B)
    c = {}
    for i in range(0, y_max + 1):
        for j in range(-i - 1, min(e_hi, N - i - 1) + 1):
            v = inv[(i, j)]
            if v:
                c[(i, j)] = v
    ctx.c = c
    ctx.y_max = y_max
    ctx.e_hi = e_hi
    rep = check_reciprocal(ctx)
    if not rep.passed:
        raise RuntimeError(f"reciprocal table failed its postconditions: {rep.counterexample}")
    return ctx


def check_reciprocal(ctx: FglContext) -> CheckReport:
    """Homogeneity of the table and ``F(e,y) * (1/F) = 1`` on the certified window."""
    rep = CheckReport("reciprocal")
    N = ctx.N
    for (i, j), v in ctx.c.items():
        if v.degree() != i + j + 1:
            rep.fail(f"c[{i},{j}] not homogeneous of degree {i + j + 1}")
    # coefficient of y^s e^t in the product is homogeneous of degree s + t
    checked = 0
    for s in range(0, ctx.y_max + 1):
        for t in range(-s, min(ctx.e_hi, N - s) + 1):
            acc: set[int] = set()
            for p in range(0, N + 2):
                for q in range(0, s + 1):
                    a = ctx.a_coeff(p, q)
                    if not a:
                        continue
                    cv = ctx.c_coeff(s - q, t - p)
                    if cv:
                        acc ^= (a * cv).terms
            expect = {0} if (s, t) == (0, 0) else set()
            if acc != expect:
                rep.fail(f"F*(1/F) coefficient at y^{s} e^{t} is wrong")
            checked += 1
    rep.note(f"F*(1/F) = 1 on {checked} coefficients (y <= {ctx.y_max}, e <= {ctx.e_hi})")
    rep.data["window"] = (ctx.y_max, ctx.e_hi)
    return rep


def check_negative_pattern(ctx: FglContext, i_max: int | None = None) -> CheckReport:
    """``c_{i,-i-1} = 1`` and ``c_{i,l} = 0`` for the other negative ``l``."""
    rep = CheckReport("negative-pattern")
    i_max = ctx.y_max if i_max is None else i_max
    offenders = []
    for i in range(0, i_max + 1):
        if ctx.c_coeff(i, -i - 1) != 1:
            rep.fail(f"c[{i},{-i - 1}] != 1")
        for ell in range(-i, 0):
            v = ctx.c_coeff(i, ell)
            if v:
                offenders.append(f"c[{i},{ell}] = {v}")
                rep.fail(f"c[{i},{ell}] = {v} is nonzero")
    rep.data["nonzero_off_pattern"] = offenders
    rep.note(f"checked i <= {i_max}: {len(offenders)} nonzero entries off the leading term")
    return rep


def fgl_context(N: int, e_window_hi: int | None = None) -> FglContext:
    return build_c_table(build_fgl(N), e_window_hi)
