"""Geometric, homotopy and Tate fixed points, and the ring R.

Coefficients from Omega_* are carried as polynomials in the generators
``x(g)``, so every ring here has the ``x`` variables as a prefix:

* Phi = Omega_*[d0, d1, ...] with ``|d_i| = i + 1``;
* Omega_*[[e]] and Omega_*((e)) as :class:`Series` over the ``x`` ring;
* R = Omega_*[e, d(i,j)] / (d(i,j) + c(i,j) + e d(i,j+1)), with ``|e| = -1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .formal_group import FglContext
from .kernel import (ColumnIndex, Eliminator, F2Poly, PolyRing, Series, TruncationError,
                     WindowError, prefix_embedding, prefix_projection)
from .omega import OmegaBasis
from .report import CheckReport


def _d_index_pairs(N: int) -> list[tuple[int, int]]:
    """``(i, j)`` with ``i >= 1``, ``j >= 0`` and ``i + j + 1 <= N``, by degree then ``i``."""
    return [(i, deg - 1 - i) for deg in range(2, N + 1) for i in range(1, deg)]


def _laurent_mul(p: dict, q: dict, hi: int | None) -> dict:
    out: dict[int, F2Poly] = {}
    for i, a in p.items():
        for j, b in q.items():
            k = i + j
            if hi is not None and k > hi:
                continue
            prod = a * b
            if not prod:
                continue
            prev = out.get(k)
            out[k] = prod if prev is None else prev + prod
    return {k: v for k, v in out.items() if v}


def _laurent_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for k, v in q.items():
        out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if v}


class FixedPoints:
    """Shared rings and coefficient tables for one truncation degree."""

    def __init__(self, ob: OmegaBasis):
        self.ob = ob
        self.fgl: FglContext = ob.fgl
        self.N = ob.N
        self.X: PolyRing = ob.X
        N = self.N
        x_entries = list(zip(self.X.vars.names, self.X.vars.weights))
        self.phi_ring = PolyRing(x_entries + [(f"d{i}", i + 1) for i in range(N)], N)
        self.x_to_phi = prefix_embedding(self.X, self.phi_ring)
        self.phi_split = prefix_projection(self.phi_ring, self.X)
        self._c: dict[tuple[int, int], F2Poly] = {}
        self._eps: dict[tuple[int, int], F2Poly] = {}
        self._rows: dict[int, dict[int, F2Poly]] = {}
        self._hfp_rows: dict[tuple[int, int], dict[int, F2Poly]] = {}
        self._phi_mono: dict[int, dict[int, F2Poly]] = {0: {0: self.X.one()}}

    # coefficients --------------------------------------------------------------
    def c(self, i: int, j: int) -> F2Poly:
        """``c_{i,j}`` written in the generators ``x(g)``."""
        key = (i, j)
        got = self._c.get(key)
        if got is None:
            raw = self.fgl.c_coeff(i, j)
            got = self.ob.express(raw, i + j + 1) if raw else self.X.zero()
            self._c[key] = got
        return got

    def d(self, i: int) -> F2Poly:
        return self.phi_ring.var(f"d{i}")

    def eps_generator(self, i: int, j: int) -> F2Poly:
        """``eps(d_{i,j}) = d_i d_0^j + sum_{-i-1 <= l < j} c_{i,l} d_0^{j-l}`` in Phi."""
        key = (i, j)
        got = self._eps.get(key)
        if got is None:
            if i + j + 1 > self.N:
                raise TruncationError(f"d({i},{j}) has degree {i + j + 1} > N = {self.N}")
            d0 = self.d(0)
            got = self.d(i) * d0 ** j
            for ell in range(-i - 1, j):
                coeff = self.c(i, ell)
                if coeff:
                    got = got + self.x_to_phi(coeff) * d0 ** (j - ell)
            self._eps[key] = got
        return got

    # phi: Phi -> Omega_*((e)) ----------------------------------------------------
    def phi_row(self, i: int) -> dict[int, F2Poly]:
        """``phi(d_i) = sum_j c_{i,j} e^j`` as a finite Laurent dict (truncated coefficients)."""
        got = self._rows.get(i)
        if got is None:
            got = {}
            for j in range(-i - 1, self.N - i):
                v = self.c(i, j)
                if v:
                    got[j] = v
            self._rows[i] = got
        return got

    def _phi_d_monomial(self, dm: int) -> dict[int, F2Poly]:
        got = self._phi_mono.get(dm)
        if got is None:
            vt = self.phi_ring.vars
            k = len(self.X.vars)
            idx, _ = vt.support(dm)[0]
            rest = self._phi_d_monomial(dm - vt.units[idx])
            got = _laurent_mul(rest, self.phi_row(idx - k), None)
            self._phi_mono[dm] = got
        return got

    def phi_laurent(self, p: F2Poly) -> dict[int, F2Poly]:
        if p.ring.vars is not self.phi_ring.vars:
            raise ValueError("phi expects an element of Omega_*[d0, d1, ...]")
        out: dict[int, set[int]] = {}
        for m in p.terms:
            xm, dm = self.phi_split(m)
            xpart = F2Poly(self.X, frozenset((xm,)))
            for j, coeff in self._phi_d_monomial(dm).items():
                out.setdefault(j, set()).symmetric_difference_update((xpart * coeff).terms)
        return {j: F2Poly(self.X, frozenset(v)) for j, v in out.items() if v}

    def certified_hi(self, degree: int) -> int:
        """Top e-exponent whose coefficient is exact for a degree-``degree`` element."""
        return self.N - degree

    # homotopy fixed points ----------------------------------------------------------
    def hfp_row(self, i: int, j: int) -> dict[int, F2Poly]:
        """``sum_{l >= 0} c_{i,j+l} e^l`` as a Laurent dict."""
        key = (i, j)
        got = self._hfp_rows.get(key)
        if got is None:
            got = {}
            for ell in range(0, self.N - i - j):
                v = self.c(i, j + ell)
                if v:
                    got[ell] = v
            self._hfp_rows[key] = got
        return got


def _series(ring: PolyRing, coeffs: dict, lo: int, hi: int) -> Series:
    return Series(ring, {k: v for k, v in coeffs.items() if k <= hi}, min(lo, hi + 1), hi)


def _max_degree(p: F2Poly) -> int:
    return max(p.degrees()) if p else 0


def phi_map(fp: FixedPoints, p: F2Poly, K: int | None = None) -> Series:
    """Image in Omega_*((e)) under ``d_i -> sum_j c_{i,j} e^j``.

    The result is exact on its reported window; the top is capped by the
    truncation (coefficients of ``e^j`` have degree ``deg p + j``).
    """
    coeffs = fp.phi_laurent(p)
    hi = fp.certified_hi(_max_degree(p))
    if K is not None:
        hi = min(hi, K)
    lo = min(coeffs, default=0)
    lo = min(lo, 0)
    return _series(fp.X, coeffs, lo, hi)


def hfp_to_tate(h: Series) -> Series:
    """Localization Omega_*[[e]] -> Omega_*((e)); on windows this is the identity."""
    if h.lo < 0:
        raise ValueError("homotopy fixed point series must start at e^0")
    return Series(h.ring, h.coeffs, h.lo, h.hi)


# ---------------------------------------------------------------------------------
# the ring R
# ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class RElem:
    """``f0 + e * f1`` with ``f0`` free of ``e`` and ``f1`` in ``e`` and the ``d(i,0)`` only."""

    f0: F2Poly
    f1: F2Poly

    def combined(self, rr: "RRing") -> F2Poly:
        return self.f0 + rr.e * self.f1


class RRing:
    """Omega_*[e, d(i,j)] with the rewrite ``e d(i,j) -> d(i,j-1) + c(i,j-1)``."""

    def __init__(self, fp: FixedPoints):
        self.fp = fp
        self.N = fp.N
        X = fp.X
        self.pairs = _d_index_pairs(self.N)
        entries = list(zip(X.vars.names, X.vars.weights))
        entries += [(f"d({i},{j})", i + j + 1) for i, j in self.pairs]
        entries.append(("e", -1))
        self.ring = PolyRing(entries, self.N)
        vt = self.ring.vars
        self.k_x = len(X.vars)
        self.e_index = vt.index["e"]
        self.e_unit = vt.units[self.e_index]
        self.e = self.ring.var("e")
        self.x_embed = prefix_embedding(X, self.ring)
        self.d_index = {pair: vt.index[f"d({pair[0]},{pair[1]})"] for pair in self.pairs}
        self.pair_of = {v: k for k, v in self.d_index.items()}
        self.positive = [i for i in range(len(vt)) if vt.weights[i] > 0]

    def d(self, i: int, j: int) -> F2Poly:
        return self.ring.var(self.d_index[(i, j)])

    def c(self, i: int, j: int) -> F2Poly:
        return self.x_embed(self.fp.c(i, j))

    def _reducible(self, m: int) -> list[int]:
        """Indices of ``d(i,j)``, ``j >= 1``, present in ``m`` when ``e`` divides ``m``."""
        vt = self.ring.vars
        if not vt.exponent(m, self.e_index):
            return []
        return [idx for idx, _ in vt.support(m)
                if idx in self.pair_of and self.pair_of[idx][1] >= 1]

    def _rewrite(self, m: int, idx: int) -> F2Poly:
        vt = self.ring.vars
        i, j = self.pair_of[idx]
        rest = m - self.e_unit - vt.units[idx]
        restp = F2Poly(self.ring, frozenset((rest,)))
        return restp * (self.d(i, j - 1) + self.c(i, j - 1))

    def check_truncation(self, p: F2Poly):
        vt = self.ring.vars
        for m in p.terms:
            if vt.trunc_degree(m) > self.N:
                raise TruncationError(f"monomial {vt.render_monomial(m)} exceeds N = {self.N}")


def r_normal_form(rr: RRing, expr: F2Poly, rng: random.Random | None = None) -> RElem:
    """Rewrite until ``e`` only multiplies monomials in the ``d(i,0)``.

    Each step removes one factor of ``e``, so the process terminates.  With
    ``rng`` given, the monomial and the factor rewritten are picked at random.
    """
    if expr.ring.vars is not rr.ring.vars:
        raise ValueError("expression does not live in R")
    rr.check_truncation(expr)
    vt = rr.ring.vars
    terms = set(expr.terms)
    while True:
        pending = [m for m in terms if rr._reducible(m)]
        if not pending:
            break
        if rng is None:
            m = max(pending, key=vt.sort_key)
            idx = rr._reducible(m)[0]
        else:
            m = rng.choice(sorted(pending))
            idx = rng.choice(rr._reducible(m))
        terms ^= {m}
        terms ^= rr._rewrite(m, idx).terms
    f0, f1 = set(), set()
    for m in terms:
        if vt.exponent(m, rr.e_index):
            f1.add(m - rr.e_unit)
        else:
            f0.add(m)
    return RElem(F2Poly(rr.ring, frozenset(f0)), F2Poly(rr.ring, frozenset(f1)))


def _r_eps_image(rr: RRing, p: F2Poly, top: int) -> frozenset[int]:
    """``d0^top * eps(p)`` with ``e -> d0^-1``; requires ``top`` >= every e-exponent."""
    fp = rr.fp
    vt = rr.ring.vars
    d0_unit = fp.phi_ring.vars.units[fp.phi_ring.vars.index["d0"]]
    acc: set[int] = set()
    for m in p.terms:
        k = vt.exponent(m, rr.e_index)
        img = fp.phi_ring.one()
        for idx, ex in vt.support(m):
            if idx == rr.e_index:
                continue
            if idx < rr.k_x:
                img = img * fp.phi_ring.var(vt.names[idx]) ** ex
            else:
                i, j = rr.pair_of[idx]
                img = img * fp.eps_generator(i, j) ** ex
        shift = (top - k) * d0_unit
        acc ^= {t + shift for t in img.terms}
    return frozenset(acc)


def _r_hfp_image(rr: RRing, p: F2Poly, hi: int) -> dict[int, F2Poly]:
    fp = rr.fp
    vt = rr.ring.vars
    out: dict[int, F2Poly] = {}
    for m in p.terms:
        k = vt.exponent(m, rr.e_index)
        img = {k: fp.X.one()}
        for idx, ex in vt.support(m):
            if idx == rr.e_index:
                continue
            if idx < rr.k_x:
                row = {0: fp.X.var(vt.names[idx])}
            else:
                row = fp.hfp_row(*rr.pair_of[idx])
            for _ in range(ex):
                img = _laurent_mul(img, row, hi)
        out = _laurent_add(out, img)
    return {k: v for k, v in out.items() if k <= hi}


def r_equal(rr: RRing, r1: RElem | F2Poly, r2: RElem | F2Poly) -> bool:
    """Equality in R, decided by the images in Omega_*[d0^{+-1}, d1, ...] and Omega_*[[e]]."""
    p = r1.combined(rr) if isinstance(r1, RElem) else r1
    q = r2.combined(rr) if isinstance(r2, RElem) else r2
    diff = p + q
    if not diff:
        return True
    rr.check_truncation(diff)
    vt = rr.ring.vars
    top = max(vt.exponent(m, rr.e_index) for m in diff.terms)
    if _r_eps_image(rr, diff, top):
        return False
    low = min(vt.degree(m) for m in diff.terms)
    return not _r_hfp_image(rr, diff, rr.N - low)


# ---------------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------------

def _r_slice(rr: RRing, n: int, M: int) -> list[int]:
    """Monomials of R of total degree ``n`` whose positive part has degree <= ``M``."""
    out = []
    for p in range(max(n, 0), M + 1):
        for m in rr.ring.monomials_of_degree(p, rr.positive):
            out.append(m + (p - n) * rr.e_unit)
    return out


def r_relations(rr: RRing, M: int) -> list[F2Poly]:
    """``d(i,j) + c(i,j) + e d(i,j+1)`` for every pair with all terms of positive degree <= M."""
    rels = []
    for i, j in rr.pairs:
        if i + j + 2 <= M:
            rels.append(rr.d(i, j) + rr.c(i, j) + rr.e * rr.d(i, j + 1))
    return rels


def _relation_span(rr: RRing, relations: Sequence[F2Poly], n: int, M: int):
    vt = rr.ring.vars
    for r in relations:
        degs = r.degrees()
        if len(degs) != 1:
            raise ValueError(f"relation {r} is not homogeneous")
        dr = degs.pop()
        pr = max(vt.trunc_degree(m) for m in r.terms)
        for q in range(0, M - pr + 1):
            a = dr + q - n
            if a < 0:
                continue
            for mu in rr.ring.monomials_of_degree(q, rr.positive):
                shift = mu + a * rr.e_unit
                yield frozenset(t + shift for t in r.terms)


def check_e_regular(rr: RRing, n: int, M: int | None = None,
                    extra_relations: Sequence[F2Poly] = ()) -> CheckReport:
    """Multiplication by ``e`` from the degree-``n`` slice of R to degree ``n - 1`` is injective.

    Both slices are cut at positive degree ``M`` (default N) and presented by
    the defining relations that fit; injectivity is a rank comparison.
    """
    M = rr.N if M is None else M
    if M > rr.N:
        raise TruncationError(f"filtration {M} exceeds N = {rr.N}")
    rep = CheckReport(f"e-regular[{n}]")
    rels = list(r_relations(rr, M)) + list(extra_relations)
    cols = ColumnIndex()
    top = Eliminator()
    for terms in _relation_span(rr, rels, n, M):
        top.add(cols.bits(terms))
    W = _r_slice(rr, n, M)
    cols.bits(W)
    dim_n = len(W) - top.rank
    cols_b = ColumnIndex()
    low = Eliminator()
    for terms in _relation_span(rr, rels, n - 1, M):
        low.add(cols_b.bits(terms))
    base = low.rank
    for m in W:
        low.add(cols_b.bits((m + rr.e_unit,)))
    dim_image = low.rank - base
    rep.data.update(degree=n, filtration=M, dim=dim_n, dim_e_image=dim_image)
    if dim_image != dim_n:
        rep.fail(f"e has a kernel of dimension {dim_n - dim_image} in degree {n} (filtration {M})")
    else:
        rep.note(f"degree {n}: e injective on a {dim_n}-dimensional slice (filtration {M})")
    return rep


def _tate_columns(fp: FixedPoints, n: int, lo: int, hi: int) -> int:
    return sum(len(fp.X.monomials_of_degree(n + j)) for j in range(lo, hi + 1) if n + j >= 0)


def _tate_rank(fp: FixedPoints, n: int, K: int) -> tuple[int, int, int, int]:
    """(rank, target dimension, domain dimension, top exponent) on the window ``[-K, top]``."""
    top = min(K, fp.certified_hi(n))
    cols = ColumnIndex()
    elim = Eliminator()
    domain = 0
    for j in range(0, top + 1):
        for m in fp.X.monomials_of_degree(n + j):
            elim.add(cols.bits(((j, m),)))
            domain += 1
    for m in fp.phi_ring.monomials_of_degree(n):
        p = F2Poly(fp.phi_ring, frozenset((m,)))
        img = fp.phi_laurent(p)
        keys = [(j, t) for j, c in img.items() if -K <= j <= top for t in c.terms]
        elim.add(cols.bits(keys))
        domain += 1
    target = _tate_columns(fp, n, -K, top)
    return elim.rank, target, domain, top


def check_tate_square(fp: FixedPoints, n: int, K: int | None = None,
                      expected_kernel: int | None = None) -> CheckReport:
    """Surjectivity of Omega_*[[e]]_n + Phi_n -> Omega_*((e))_n and the kernel dimension.

    Runs on the window ``[-K, min(K, N - n)]`` and again with ``K + 1``.
    """
    if n > fp.N:
        raise TruncationError(f"degree {n} exceeds N = {fp.N}")
    K = fp.N + 2 if K is None else K
    rep = CheckReport(f"tate[{n}]")
    results = []
    for k in (K, K + 1):
        rank, target, domain, top = _tate_rank(fp, n, k)
        kernel = domain - rank
        results.append((k, top, rank, target, kernel))
        rep.note(f"degree {n}, window [-{k}, {top}]: rank {rank}/{target}, kernel {kernel}")
        if rank != target:
            rep.fail(f"degree {n}: not surjective on window [-{k}, {top}] ({rank} < {target})")
    if results[0][4] != results[1][4]:
        rep.fail(f"degree {n}: kernel changes from {results[0][4]} to {results[1][4]} "
                 f"when the window grows")
    kernel = results[0][4]
    rep.data.update(degree=n, window=(-K, results[0][1]), kernel=kernel,
                    surjective=all(r[2] == r[3] for r in results))
    if expected_kernel is not None and kernel != expected_kernel:
        rep.fail(f"degree {n}: kernel dimension {kernel} != expected {expected_kernel}")
    return rep


def fixed_points(ob: OmegaBasis) -> FixedPoints:
    return FixedPoints(ob)


__all__ = [
    "FixedPoints", "RElem", "RRing", "WindowError", "check_e_regular", "check_tate_square",
    "fixed_points", "hfp_to_tate", "phi_map", "r_equal", "r_normal_form", "r_relations",
]
