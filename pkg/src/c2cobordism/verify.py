"""Verification suites.  Each returns a list of :class:`CheckReport`."""

from __future__ import annotations

import os
import random
import tempfile
from typing import Callable

from . import cache as cache_mod
from .context import C2Context
from .equivariant import (EqClass, EquivariantRing, check_completeness, check_relations,
                          dim_image, gamma_underlying_series, restrict)
from .extended import (ExtClass, check_ext_relations, ext_mul, ext_phi, ext_restrict,
                       ext_transfer, gamma)
from .fixed_points import (RRing, check_e_regular, check_tate_square, r_equal,
                           r_normal_form)
from .formal_group import (build_c_table, build_fgl, check_associativity, check_fgl_axioms,
                           check_negative_pattern, check_reciprocal)
from .kernel import F2Poly, TruncationError
from .omega import OmegaDimensionError, is_admissible, partition_count
from .report import CheckReport
from .sw import (class_with_profile, pairing_rank, sw_numbers_of_class,
                 sw_numbers_projective_product)

DEFAULT_SEED = 20240601


# random elements -----------------------------------------------------------------------

class _Monomials:
    def __init__(self, ring):
        self.ring = ring
        self._cache: dict = {}

    def of_degree(self, n: int, variables=None) -> list[int]:
        key = (n, None if variables is None else tuple(variables))
        got = self._cache.get(key)
        if got is None:
            got = self.ring.monomials_of_degree(n, variables) if n >= 0 else []
            self._cache[key] = got
        return got


def random_poly(mons: _Monomials, n: int, rng: random.Random, max_terms: int = 4,
                variables=None) -> F2Poly:
    pool = mons.of_degree(n, variables)
    if not pool:
        return mons.ring.zero()
    k = rng.randint(1, min(max_terms, len(pool)))
    return mons.ring.from_monomials(rng.sample(pool, k))


def random_class(R: EquivariantRing, n: int, rng: random.Random, max_terms: int = 4) -> EqClass:
    mons = getattr(R, "_random_mons", None)
    if mons is None:
        mons = R._random_mons = _Monomials(R.ring)
    return EqClass(R, random_poly(mons, n, rng, max_terms))


def random_r_expr(rr: RRing, n: int, rng: random.Random, max_terms: int = 4) -> F2Poly:
    """Random element of R of total degree ``n`` with positive part of degree <= N."""
    mons = getattr(rr, "_random_mons", None)
    if mons is None:
        mons = rr._random_mons = _Monomials(rr.ring)
    terms = set()
    for _ in range(rng.randint(1, max_terms)):
        p = rng.randint(max(n, 0), rr.N)
        pool = mons.of_degree(p, rr.positive)
        if pool:
            terms ^= {rng.choice(pool) + (p - n) * rr.e_unit}
    return F2Poly(rr.ring, frozenset(terms))


def random_ext(R: EquivariantRing, s: int, t: int, rng: random.Random) -> ExtClass:
    mons = getattr(R, "_random_xmons", None)
    if mons is None:
        mons = R._random_xmons = _Monomials(R.X)
    lambdas = tuple(random_poly(mons, t - (s - j), rng, 2) if rng.random() < 0.7 else R.X.zero()
                    for j in range(s))
    m = random_class(R, t, rng, 3) if rng.random() < 0.8 else R.zero()
    return ExtClass(R, s, t, lambdas, m)


# suites ------------------------------------------------------------------------------

def suite_fgl(C: C2Context, max_degree: int | None = None) -> list[CheckReport]:
    rep = check_fgl_axioms(C.fgl)
    out = [rep]
    if max_degree is not None and max_degree != C.N:
        out.append(check_associativity(C.fgl, min(max_degree, C.N)))
    return out


def suite_reciprocal(C: C2Context, max_degree: int | None = None) -> list[CheckReport]:
    i_max = C.fgl.y_max if max_degree is None else min(max_degree - 1, C.fgl.y_max)
    return [check_reciprocal(C.fgl), check_negative_pattern(C.fgl, i_max)]


def suite_omega(C: C2Context, max_degree: int | None = None) -> list[CheckReport]:
    top = C.N if max_degree is None else min(max_degree, C.N)
    rep = CheckReport("omega")
    # Omega_* is spanned by the coefficients only when they form a formal group law
    assoc = check_associativity(C.fgl, top)
    if not assoc.passed:
        deg = assoc.data["first_degree"]
        rep.fail(f"degree {deg}: the a-table is not associative ({assoc.counterexample})")
        rep.data["degree"] = deg
        return [rep]
    try:
        ob = C.omega
    except OmegaDimensionError as exc:
        rep.fail(f"degree {exc.degree}: {exc}")
        rep.data["degree"] = exc.degree
        return [rep]
    for n in range(0, top + 1):
        want = partition_count(n)
        got = ob.dims[n]
        rep.note(f"dim Omega_{n} = {got} (partitions: {want})")
        if got != want:
            rep.fail(f"degree {n}: dim {got} != {want}")
    for g in range(1, top + 1):
        has = g in ob.generators
        if has != is_admissible(g):
            rep.fail(f"degree {g}: generator {'present' if has else 'missing'}")
        if has:
            gen = ob.generators[g]
            rep.note(f"x({g}) = {gen.source}")
    return [rep]


def suite_relations(C: C2Context, max_degree: int | None = None) -> list[CheckReport]:
    return [check_relations(C.eq)]


def suite_completeness(C: C2Context, max_degree: int | None = None) -> list[CheckReport]:
    return [check_completeness(C.eq, max_degree)]


def suite_tate(C: C2Context, max_degree: int | None = None,
               window: int | None = None) -> list[CheckReport]:
    top = min(8, C.N) if max_degree is None else min(max_degree, C.N)
    out = []
    for n in range(0, top + 1):
        out.append(check_tate_square(C.fp, n, window, expected_kernel=dim_image(C.eq, n)))
    return out


def suite_rmodel(C: C2Context, max_degree: int | None = None, samples: int = 1000,
                 seed: int = DEFAULT_SEED) -> list[CheckReport]:
    rr = C.r
    top = min(8, C.N) if max_degree is None else min(max_degree, C.N)
    out = [check_e_regular(rr, n) for n in range(0, top + 1)]
    control = CheckReport("e-regular-control")
    fake = rr.e * rr.d(1, 0)
    bad = [n for n in range(0, top + 1) if not check_e_regular(rr, n, extra_relations=[fake])]
    if bad:
        control.note(f"fake relation e*d(1,0) = 0 detected in degrees {bad}")
    else:
        control.fail("adding e*d(1,0) = 0 was not detected")
    out.append(control)
    rng = random.Random(seed)
    nf = CheckReport("r-normal-form")
    for k in range(samples):
        n = rng.randint(0, top)
        expr = random_r_expr(rr, n, rng)
        a = r_normal_form(rr, expr)
        again = r_normal_form(rr, a.combined(rr))
        if again != a:
            nf.fail(f"sample {k}: normal form not idempotent for {expr}")
        b = r_normal_form(rr, expr, rng)
        if not r_equal(rr, a, b):
            nf.fail(f"sample {k}: rewrite orders disagree for {expr}")
        if not r_equal(rr, a, expr):
            nf.fail(f"sample {k}: normal form changes the element {expr}")
    nf.note(f"{samples} random inputs: idempotent, order-independent (via r_equal) and sound")
    out.append(nf)
    return out


def suite_extended(C: C2Context, max_degree: int | None = None, samples: int = 200,
                   products: int = 500, seed: int = DEFAULT_SEED) -> list[CheckReport]:
    R = C.eq
    N = C.N
    rng = random.Random(seed)
    out = []

    wd = CheckReport("gamma-well-defined")
    count = 0
    for a, (i, j) in enumerate(R.pairs):
        for (k, ell) in R.pairs[a:]:
            if (i + j + 1) + (k + ell + 1) + 1 > N:
                continue
            mu = R.d(i, j) * R.d(k, ell)
            count += 1
            if gamma(mu, "first") != gamma(mu, "last"):
                wd.fail(f"Gamma(d({i},{j}) d({k},{ell})) depends on the peeling order")
    wd.note(f"{count} generator pairs")
    out.append(wd)

    leib = CheckReport("gamma-leibniz")
    series = CheckReport("gamma-series")
    for k in range(samples):
        n1 = rng.randint(0, N - 2)
        n2 = rng.randint(0, N - 1 - n1)
        m1, m2 = random_class(R, n1, rng), random_class(R, n2, rng)
        lhs = gamma(m1 * m2)
        rhs = R.omega(restrict(m1)) * gamma(m2) + gamma(m1) * m2
        if lhs != rhs:
            leib.fail(f"sample {k}: Gamma({m1} * {m2}) breaks the Leibniz rule")
        depth = min(4, N - n1)
        ser = gamma_underlying_series(m1, depth)
        cur = m1
        for step in range(0, depth + 1):
            if restrict(cur) != ser[step]:
                series.fail(f"sample {k}: res(Gamma^{step} {m1}) != entry {step}")
            if step < depth:
                cur = gamma(cur)
    leib.note(f"{samples} random pairs")
    series.note(f"{samples} random classes, Gamma^n for n <= 4")
    out += [leib, series]

    out.append(check_ext_relations(R))

    prod = CheckReport("ext-products")
    tr = CheckReport("transfer")
    for k in range(products):
        s1 = rng.randint(0, 4)
        s2 = rng.randint(0, 4 - s1)
        t1 = rng.randint(0, 8)
        t2 = rng.randint(0, 8 - t1)
        x, y = random_ext(R, s1, t1, rng), random_ext(R, s2, t2, rng)
        try:
            z = ext_mul(x, y)
        except TruncationError as exc:
            prod.fail(f"sample {k}: {exc}")
            continue
        if (z.s, z.t) != (s1 + s2, t1 + t2):
            prod.fail(f"sample {k}: bigrading ({z.s}, {z.t}) != ({s1 + s2}, {t1 + t2})")
        if ext_mul(y, x) != z:
            prod.fail(f"sample {k}: product not commutative")
        if ext_phi(z) != ext_phi(x) * ext_phi(y):
            prod.fail(f"sample {k}: ext_phi is not multiplicative")
        if ext_restrict(z) != ext_restrict(x) * ext_restrict(y):
            prod.fail(f"sample {k}: ext_restrict is not multiplicative")
        w = ext_restrict(x)
        if not ext_transfer(R, w, s1, t1).is_zero():
            tr.fail("transfer is nonzero")
    prod.note(f"{products} random products with s <= 4, t <= 8")
    tr.note(f"transfer Omega_*[u] -> extended ring is zero on {products} samples")
    out += [prod, tr]
    return out


def suite_sw(C: C2Context, max_degree: int | None = None) -> list[CheckReport]:
    ob = C.omega
    top = min(8, C.N) if max_degree is None else min(max_degree, C.N)
    inj = CheckReport("sw-injective")
    for n in range(0, top + 1):
        r = pairing_rank(ob, n)
        inj.note(f"degree {n}: pairing rank {r}, dim {ob.dims[n]}")
        if r != ob.dims[n]:
            inj.fail(f"degree {n}: SW numbers do not separate Omega_{n}")

    rp = CheckReport("sw-rp")
    bad = []
    for i in range(1, min(6, top - 1) + 1):
        got = sw_numbers_of_class(ob, C.fgl.c_coeff(i, 0), i + 1)
        want = sw_numbers_projective_product([i + 1])
        if got == want:
            rp.note(f"c({i},0) has the SW numbers of RP^{i + 1}")
        else:
            bad.append(i)
            rp.fail(f"c({i},0) does not have the SW numbers of RP^{i + 1}")
    rp.data["mismatch"] = bad

    odd = CheckReport("sw-bounding")
    for n in (1, 3):
        if not sw_numbers_projective_product([n]).is_zero():
            odd.fail(f"RP^{n} has a nonzero SW number")
    odd.note("RP^1 and RP^3 have vanishing SW numbers")

    # [RP^i, gamma] = sum_k [RP^{i-k}] d_k, so the fixed data of RP^{i+1}_sigma is
    # sum_k [RP^{i-k}] d_k + d_0^{i+1}; its phi-image lies in Omega_*[[e]] and the
    # constant term is [RP^{i+1}]
    corr = CheckReport("sw-rp-fixed-data")
    fp = C.fp
    rpx = {0: ob.X.one()}
    for n in range(1, top + 1):
        rpx[n] = class_with_profile(ob, sw_numbers_projective_product([n]))
    for i in range(1, top):
        elt = fp.d(0) ** (i + 1)
        for k in range(0, i + 1):
            elt = elt + fp.x_to_phi(rpx[i - k]) * fp.d(k)
        img = fp.phi_laurent(elt)
        if any(j < 0 for j in img):
            corr.fail(f"i={i}: phi-image of the fixed data has negative powers of e")
        if img.get(0, ob.X.zero()) != rpx[i + 1]:
            corr.fail(f"i={i}: constant term is not [RP^{i + 1}]")
    corr.note(f"fixed data of RP^(i+1)_sigma restricts to [RP^(i+1)] for i < {top}")
    return [inj, rp, odd, corr]


def suite_persistence(C: C2Context, max_degree: int | None = None) -> list[CheckReport]:
    rt = CheckReport("cache-roundtrip")
    with tempfile.TemporaryDirectory() as tmp:
        p1 = os.path.join(tmp, "a.cache")
        p2 = os.path.join(tmp, "b.cache")
        cache_mod.cache_save(C.fgl, p1)
        loaded = cache_mod.cache_load(p1)
        cache_mod.cache_save(loaded, p2)
        with open(p1, "rb") as f1, open(p2, "rb") as f2:
            if f1.read() != f2.read():
                rt.fail("save/load/save is not byte-identical")
        v = cache_mod.validate(loaded)
        if not v.passed:
            rt.fail(f"reloaded tables fail validation: {v.counterexample}")
    rt.note("save -> load -> save byte-identical")
    st = CheckReport("rebuild-stability")
    big_N = C.N + 2
    big = build_c_table(build_fgl(big_N), (C.window or C.N) + 2)
    if not cache_mod.tables_agree(big, C.fgl):
        st.fail(f"rebuild at N={big_N} does not reproduce the N={C.N} tables")
    st.note(f"rebuild at N={big_N} reproduces every N={C.N} record")
    return [rt, st]


SUITES: dict[str, Callable[..., list[CheckReport]]] = {
    "fgl": suite_fgl,
    "reciprocal": suite_reciprocal,
    "omega": suite_omega,
    "tate": suite_tate,
    "rmodel": suite_rmodel,
    "relations": suite_relations,
    "completeness": suite_completeness,
    "extended": suite_extended,
    "sw": suite_sw,
    "persistence": suite_persistence,
}
