"""The extended ring Omega^{C2}_<>: classes ``a`` and ``u`` over Omega^{C2}_*.

Normal form in sigma-weight ``s`` and degree ``t``:

    sum_{j < s} lambda_j a^j u^(s-j)  +  a^s m,

with ``lambda_j`` in Omega_* and ``m`` in Omega^{C2}_*.  Products are reduced
with ``u M = res(M) u + Gamma(M) a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .equivariant import EqClass, EquivariantRing, geometric_fixed, relation, restrict
from .kernel import (ColumnIndex, Eliminator, F2Poly, PolyRing, TruncationError, gf2_rank,
                     prefix_embedding)
from .report import CheckReport

# a term a^p u^q M is stored as (p, q, M)
Term = tuple[int, int, EqClass]


def _gamma_monomial(R: EquivariantRing, m: int, peel: str, memo: dict) -> F2Poly:
    key = (m, peel)
    got = memo.get(key)
    if got is not None:
        return got
    vt = R.ring.vars
    ds = [idx for idx, _ in vt.support(m) if idx >= R.k_x]
    if not ds:
        got = R.ring.zero()
    else:
        idx = ds[0] if peel == "first" else ds[-1]
        i, j = R.pair_of[idx]
        if i + j + 2 > R.N:
            raise TruncationError(f"Gamma d({i},{j}) = d({i},{j + 1}) lies above N = {R.N}")
        rest = m - vt.units[idx]
        rest_poly = F2Poly(R.ring, frozenset((rest,)))
        nxt = R.ring.var(R.d_index[(i, j + 1)])
        got = R.c(i, j).poly * _gamma_monomial(R, rest, peel, memo) + nxt * rest_poly
    memo[key] = got
    return got


def gamma(m: EqClass, peel: str = "first") -> EqClass:
    """The Conner-Floyd operation: Omega_*-linear, ``Gamma(1) = 0``,
    ``Gamma(d(i,j) mu) = c(i,j) Gamma(mu) + d(i,j+1) mu``.

    ``peel`` picks which generator factor the recursion removes first.
    """
    if peel not in ("first", "last"):
        raise ValueError("peel must be 'first' or 'last'")
    R = m.R
    if m.poly and max(m.poly.degrees()) + 1 > R.N:
        raise TruncationError(f"Gamma raises degree past N = {R.N}")
    memo = R.gamma_memo
    acc: set[int] = set()
    for mono in m.poly.terms:
        acc ^= _gamma_monomial(R, mono, peel, memo).terms
    return EqClass(R, F2Poly(R.ring, frozenset(acc)))


def push_u(m: EqClass) -> tuple[F2Poly, EqClass]:
    """``u m = r u + g a`` with ``r = res(m)`` and ``g = Gamma(m)``."""
    return restrict(m), gamma(m)


@dataclass(frozen=True)
class ExtClass:
    R: EquivariantRing
    s: int
    t: int
    lambdas: tuple[F2Poly, ...]
    m: EqClass

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("sigma-weight must be >= 0")
        if len(self.lambdas) != self.s:
            raise ValueError("need exactly s coefficients lambda_0..lambda_{s-1}")
        for j, lam in enumerate(self.lambdas):
            if lam and lam.degree() != self.t - (self.s - j):
                raise ValueError(f"lambda_{j} must have degree {self.t - (self.s - j)}")
        if self.m.poly and self.m.degree != self.t:
            raise ValueError(f"m must be homogeneous of degree {self.t}")

    def terms(self) -> list[Term]:
        R = self.R
        out = [(j, self.s - j, R.omega(lam)) for j, lam in enumerate(self.lambdas) if lam]
        if self.m.poly:
            out.append((self.s, 0, self.m))
        return out

    def __add__(self, other: "ExtClass") -> "ExtClass":
        _same_grading(self, other)
        return ExtClass(self.R, self.s, self.t,
                        tuple(p + q for p, q in zip(self.lambdas, other.lambdas)),
                        self.m + other.m)

    def __mul__(self, other: "ExtClass") -> "ExtClass":
        return ext_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, ExtClass):
            return NotImplemented
        return (self.s == other.s and self.t == other.t and self.lambdas == other.lambdas
                and self.m == other.m)

    def __hash__(self):
        return hash((self.s, self.t, self.lambdas, hash(self.m)))

    def is_zero(self) -> bool:
        return not any(self.lambdas) and not self.m

    def render(self) -> str:
        parts = []
        for j, lam in enumerate(self.lambdas):
            if lam:
                parts.append(_render_term(lam.render(), len(lam) > 1, j, self.s - j))
        if self.m.poly:
            parts.append(_render_term(self.m.render(), len(self.m.poly) > 1, self.s, 0))
        return " + ".join(parts) if parts else "0"

    __str__ = render


def _render_term(coeff: str, paren: bool, p: int, q: int) -> str:
    mon = []
    if q:
        mon.append("u" if q == 1 else f"u^{q}")
    if p:
        mon.append("a" if p == 1 else f"a^{p}")
    if not mon:
        return coeff
    body = "*".join(mon)
    if coeff == "1":
        return body
    return f"({coeff})*{body}" if paren else f"{coeff}*{body}"


def _same_grading(x: ExtClass, y: ExtClass):
    if x.R is not y.R:
        raise ValueError("classes from different rings")
    if (x.s, x.t) != (y.s, y.t):
        raise ValueError(f"cannot add classes of bidegree (s={x.s}, t={x.t}) and (s={y.s}, t={y.t})")


def normalize(R: EquivariantRing, s: int, t: int, terms: Iterable[Term]) -> ExtClass:
    """Reduce ``sum a^p u^q M`` (all with ``p + q = s``) to normal form.

    ``u^q M = sum_{k<q} res(Gamma^k M) a^k u^(q-k) + a^q Gamma^q M``.
    """
    lambdas = [R.X.zero() for _ in range(s)]
    m = R.zero()
    for p, q, M in terms:
        if p + q != s:
            raise ValueError(f"term a^{p} u^{q} does not have sigma-weight {s}")
        if not M.poly:
            continue
        if M.degree is None or M.degree + q != t:
            raise ValueError(f"term a^{p} u^{q} ({M}) does not have degree {t}")
        cur = M
        for k in range(q):
            lambdas[p + k] = lambdas[p + k] + restrict(cur)
            cur = gamma(cur)
        m = m + cur
    return ExtClass(R, s, t, tuple(lambdas), m)


def ext_from(R: EquivariantRing, a_pow: int, u_pow: int, coeff: EqClass | F2Poly | int = 1,
             t: int | None = None) -> ExtClass:
    """The class ``a^a_pow u^u_pow coeff`` in normal form."""
    if a_pow < 0 or u_pow < 0:
        raise ValueError("exponents must be >= 0")
    if isinstance(coeff, int):
        coeff = R.one() if coeff % 2 else R.zero()
    elif isinstance(coeff, F2Poly):
        coeff = R.omega(coeff)
    if t is None:
        t = (coeff.degree or 0) + u_pow
    return normalize(R, a_pow + u_pow, t, [(a_pow, u_pow, coeff)])


def ext_mul(x: ExtClass, y: ExtClass) -> ExtClass:
    if x.R is not y.R:
        raise ValueError("classes from different rings")
    prod = [(p1 + p2, q1 + q2, M1 * M2)
            for p1, q1, M1 in x.terms() for p2, q2, M2 in y.terms()]
    return normalize(x.R, x.s + y.s, x.t + y.t, prod)


def omega_u_ring(R: EquivariantRing) -> PolyRing:
    """Omega_*[u], the non-equivariant extended ring."""
    if R.omega_u is None:
        X = R.X
        R.omega_u = PolyRing(list(zip(X.vars.names, X.vars.weights)) + [("u", 1)], R.N)
    return R.omega_u


def ext_restrict(x: ExtClass) -> F2Poly:
    """Restriction to Omega_*[u]: ``a -> 0``, ``u -> u``, ``d(i,j) -> c(i,j)``."""
    ring = omega_u_ring(x.R)
    embed = prefix_embedding(x.R.X, ring)
    if x.s == 0:
        return embed(restrict(x.m))
    return embed(x.lambdas[0]) * ring.var("u") ** x.s


def ext_transfer(R: EquivariantRing, w: F2Poly, s: int, t: int) -> ExtClass:
    """Transfer Omega_*[u] -> Omega^{C2}_<>, which is zero."""
    return ExtClass(R, s, t, tuple(R.X.zero() for _ in range(s)), R.zero())


def ext_phi_terms(R: EquivariantRing, terms: Iterable[Term]) -> F2Poly:
    """``a -> 1``, ``u -> d0``, ``M -> eps(M)`` applied to unreduced terms."""
    fp = R.fp
    d0 = fp.d(0)
    out = fp.phi_ring.zero()
    for _, q, M in terms:
        out = out + d0 ** q * geometric_fixed(M)
    return out


def ext_phi(x: ExtClass) -> F2Poly:
    return ext_phi_terms(x.R, x.terms())


def u_relation_terms(R: EquivariantRing, i: int, j: int) -> list[Term]:
    """``u (d(i,j) + c(i,j)) + a d(i,j+1)`` as unreduced terms."""
    return [(0, 1, R.d(i, j) + R.c(i, j)), (1, 0, R.d(i, j + 1))]


def check_ext_relations(R: EquivariantRing) -> CheckReport:
    """ext_phi kills both relation families, and normalization kills the u-relations."""
    rep = CheckReport("ext-relations")
    count = 0
    for a, (i, j) in enumerate(R.pairs):
        if i + j + 2 <= R.N:
            terms = u_relation_terms(R, i, j)
            count += 1
            if ext_phi_terms(R, terms):
                rep.fail(f"ext_phi does not kill u(d({i},{j}) + c) + a d({i},{j + 1})")
            if not normalize(R, 1, i + j + 2, terms).is_zero():
                rep.fail(f"normal form of the u-relation for d({i},{j}) is nonzero")
        for (k, ell) in R.pairs[a + 1:]:
            if (i + j + 1) + (k + ell + 2) > R.N:
                continue
            count += 1
            if ext_phi_terms(R, [(0, 0, relation(R, i, j, k, ell))]):
                rep.fail(f"ext_phi does not kill the relation for d({i},{j}), d({k},{ell})")
    rep.note(f"{count} relations checked through degree {R.N}")
    rep.data["count"] = count
    return rep


def eq_basis(R: EquivariantRing, n: int) -> list[EqClass]:
    """Monomials of degree ``n`` whose eps-images form a basis of Omega^{C2}_n."""
    if n < 0:
        return []
    monos, _, _ = R._solver(n)
    cols = ColumnIndex()
    elim = Eliminator()
    out = []
    for m in monos:
        before = elim.rank
        elim.add(cols.bits(R.eps.monomial(m).terms), 0)
        if elim.rank > before:
            out.append(EqClass(R, R.ring.from_monomials([m])))
    return out


def ext_basis(R: EquivariantRing, s: int, t: int) -> list[ExtClass]:
    """A basis of the bidegree ``(s, t)`` part, read off the normal form."""
    X = R.X
    zero_l = tuple(X.zero() for _ in range(s))
    out = []
    for j in range(s):
        n = t - (s - j)
        if n < 0:
            continue
        for m in X.monomials_of_degree(n):
            lam = list(zero_l)
            lam[j] = X.from_monomials([m])
            out.append(ExtClass(R, s, t, tuple(lam), R.zero()))
    for m in eq_basis(R, t):
        out.append(ExtClass(R, s, t, zero_l, m))
    return out


def ext_phi_rank(R: EquivariantRing, s: int, t: int) -> tuple[int, int]:
    """``(dimension, rank of ext_phi)`` in bidegree ``(s, t)``."""
    basis = ext_basis(R, s, t)
    cols = {}
    rows = []
    for x in basis:
        v = 0
        for mono in ext_phi(x).terms:
            v |= 1 << cols.setdefault(mono, len(cols))
        rows.append(v)
    return len(basis), gf2_rank(rows)
