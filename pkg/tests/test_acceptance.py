"""Acceptance criteria 1-11 at N = 10, exact.

Each criterion prints one PASS/FAIL line (also collected into the terminal
summary).  Criteria 2 and 10 are known not to hold as stated for this law; they
are checked as stated and marked strict xfail, so an unexpected pass shows up.
Run directly with ``python3 tests/test_acceptance.py`` for the bare list.
"""

from __future__ import annotations

import sys

import pytest

from c2cobordism import verify
from c2cobordism.context import C2Context
from c2cobordism.equivariant import check_completeness, check_relations, dim_image
from c2cobordism.formal_group import check_fgl_axioms, check_negative_pattern, check_reciprocal
from c2cobordism.kernel import Series, series_compose

CRITERIA = {}
KNOWN_FAILURES = {2, 10}


def criterion(k: int, title: str):
    def wrap(fn):
        CRITERIA[k] = (title, fn)
        return fn
    return wrap


def _all(reports):
    bad = [r for r in reports if not r.passed]
    if bad:
        return False, f"{bad[0].name}: {bad[0].counterexample}"
    return True, f"{len(reports)} checks"


def _partitions(n, allowed):
    def rec(rem, largest):
        if rem == 0:
            return 1
        return sum(rec(rem - p, p) for p in allowed if p <= min(rem, largest))
    return rec(n, n)


@criterion(1, "FGL axioms through degree 10")
def c1(C):
    fgl = C.fgl
    B = fgl.B
    # F(x, 0) = x read straight off the table
    unital = all(not fgl.a_coeff(i, 0) for i in range(2, C.N + 2)) and fgl.a_coeff(1, 0) == 1
    rep = check_fgl_axioms(fgl)
    if not unital:
        return False, "F(x,0) != x"
    x = Series(B, {1: B.one()}, 0, fgl.exp.hi)
    if series_compose(fgl.exp, fgl.log) != x:
        return False, "exp(log x) != x"
    return rep.passed, rep.counterexample or "unitality, symmetry, F(x,x)=0, associativity"


@criterion(2, "reciprocal coefficients and negative pattern for i <= 9")
def c2(C):
    return _all([check_reciprocal(C.fgl), check_negative_pattern(C.fgl, 9)])


@criterion(3, "Thom dimension count and one generator per admissible degree, n <= 10")
def c3(C):
    ob = C.omega
    for n in range(0, 11):
        allowed = [p for p in range(1, n + 1) if (p + 1) & p]
        if ob.dims[n] != _partitions(n, allowed):
            return False, f"degree {n}: dim {ob.dims[n]}"
    gens = sorted(ob.generators)
    want = [g for g in range(1, 11) if (g + 1) & g]
    if gens != want:
        return False, f"generators in degrees {gens}, expected {want}"
    return True, "dims 1,0,1,0,2,1,3,1,5,3,8; generators " + ",".join(map(str, gens))


@criterion(4, "eps annihilates every relation in range")
def c4(C):
    rep = check_relations(C.eq)
    return rep.passed, rep.counterexample or f"{rep.data['count']} relations"


@criterion(5, "dim_presented = dim_image for n <= 10, anchors 1,0,2,2")
def c5(C):
    rep = check_completeness(C.eq, 10)
    table = rep.data["table"]
    anchors = [p for _, p, _ in table[:4]]
    if anchors != [1, 0, 2, 2]:
        return False, f"anchors {anchors}"
    return rep.passed, rep.counterexample or "dims " + ",".join(str(p) for _, p, _ in table)


@criterion(6, "Tate square surjective, kernel = dim_image, stable under window growth, n <= 8")
def c6(C):
    reps = verify.suite_tate(C, 8)
    ok, why = _all(reps)
    if ok and len(reps) != 9:
        return False, "not every degree 0..8 was checked"
    return ok, why


@criterion(7, "R-model: e-regular through degree 8; normal form on 1000 random inputs")
def c7(C):
    return _all(verify.suite_rmodel(C, 8, samples=1000))


def _extended(C):
    if not hasattr(C, "_ext_reports"):
        C._ext_reports = {r.name: r for r in verify.suite_extended(C, samples=200, products=500)}
    return C._ext_reports


@criterion(8, "Gamma: well-defined on pairs, Leibniz and series on 200 classes, n <= 4")
def c8(C):
    reps = _extended(C)
    return _all([reps["gamma-well-defined"], reps["gamma-leibniz"], reps["gamma-series"]])


@criterion(9, "extended ring: relations, ext_restrict multiplicative, transfer 0, 500 products")
def c9(C):
    reps = _extended(C)
    return _all([reps["ext-relations"], reps["ext-products"], reps["transfer"]])


@criterion(10, "SW numbers of c(i,0) equal those of RP^(i+1), i <= 6; RP^1, RP^3 vanish")
def c10(C):
    reps = {r.name: r for r in verify.suite_sw(C, 8)}
    return _all([reps["sw-rp"], reps["sw-bounding"]])


@criterion(11, "cache round trip byte-identical; rebuild at N = 12 reproduces N = 10")
def c11(C):
    return _all(verify.suite_persistence(C))


def evaluate(C, k):
    title, fn = CRITERIA[k]
    passed, detail = fn(C)
    line = f"{'PASS' if passed else 'FAIL'} criterion {k}: {title} -- {detail}"
    return passed, line


@pytest.mark.parametrize("k", [
    pytest.param(k, marks=pytest.mark.xfail(strict=True, reason="does not hold as stated"))
    if k in KNOWN_FAILURES else k
    for k in range(1, 12)
])
def test_criterion(C, k, request):
    passed, line = evaluate(C, k)
    print(line)
    request.config.acceptance_lines.append(line)
    assert passed, line


def test_known_failure_patterns(C):
    # criterion 2: first offender c[2,-1]; c[i,-i+1] = b2 throughout
    rep = check_negative_pattern(C.fgl, 9)
    assert rep.data["nonzero_off_pattern"][:1] == ["c[2,-1] = b2"]
    b2 = C.fgl.B.var("b2")
    assert all(C.fgl.c_coeff(i, -i + 1) == b2 for i in range(2, 10))
    # criterion 10: mismatch exactly at i = 3, 5, and the corrected fixed data holds
    reps = {r.name: r for r in verify.suite_sw(C, 8)}
    assert reps["sw-rp"].data["mismatch"] == [3, 5]
    assert reps["sw-rp-fixed-data"].passed
    assert dim_image(C.eq, 3) == 2


if __name__ == "__main__":
    ctx = C2Context.build(10)
    ok = True
    for k in sorted(CRITERIA):
        passed, line = evaluate(ctx, k)
        ok &= passed
        print(line)
    sys.exit(0 if ok else 1)
