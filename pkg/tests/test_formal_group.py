import pytest

from c2cobordism.formal_group import (FglContext, build_c_table, build_fgl, check_associativity,
                                      check_fgl_axioms, check_negative_pattern, check_reciprocal,
                                      fgl_context, model_ring)
from c2cobordism.kernel import PolyRing, Series, series_compose, series_reversion


@pytest.fixture(scope="module")
def ctx6():
    return fgl_context(6)


def test_requires_N_at_least_two():
    with pytest.raises(ValueError):
        build_fgl(1)


def test_low_coefficients(ctx6):
    B = ctx6.B
    assert not ctx6.a_coeff(1, 1)
    assert ctx6.a_coeff(1, 2) == B.var("b2")
    assert ctx6.a_coeff(2, 1) == B.var("b2")
    assert ctx6.a_coeff(1, 0) == B.one() and ctx6.a_coeff(0, 1) == B.one()
    assert not ctx6.a_coeff(2, 0)


def test_log_is_the_inverse_of_exp(ctx6):
    x = Series(ctx6.B, {1: ctx6.B.one()}, 0, ctx6.exp.hi)
    assert series_compose(ctx6.exp, ctx6.log) == x
    assert series_compose(ctx6.log, ctx6.exp) == x


def test_reversion_example_from_b1():
    # f = x + b1 x^2 inverts to x + b1 x^2 + b1^3 x^4 + ... with no x^3 term
    B = PolyRing([("b1", 1)], None)
    b1 = B.var("b1")
    g = series_reversion(Series(B, {1: B.one(), 2: b1}, 0, 5))
    assert g[2] == b1 and not g[3] and g[4] == b1 ** 3


def oracle_F(N):
    """exp(log y + log z) expanded with plain dictionaries, independent of the library."""
    B = model_ring(N)
    b = {i: B.var(f"b{i}") for i in range(1, N + 1)}
    top = N + 1

    def mul(p, q):
        out = {}
        for (i1, j1), c1 in p.items():
            for (i2, j2), c2 in q.items():
                k = (i1 + i2, j1 + j2)
                if sum(k) <= top:
                    out[k] = out.get(k, B.zero()) + c1 * c2
        return {k: v for k, v in out.items() if v}

    # log by solving exp(log x) = x degree by degree
    lg = {1: B.one()}
    for k in range(2, top + 1):
        # coefficient of x^k in exp(lg) with the current lg
        series = dict(lg)
        acc = {}
        cur = dict(series)
        for m in range(1, top + 1):
            c = B.one() if m == 1 else b.get(m - 1, B.zero())
            for deg, v in cur.items():
                if deg <= top:
                    acc[deg] = acc.get(deg, B.zero()) + c * v
            nxt = {}
            for d1, v1 in cur.items():
                for d2, v2 in series.items():
                    if d1 + d2 <= top:
                        nxt[d1 + d2] = nxt.get(d1 + d2, B.zero()) + v1 * v2
            cur = nxt
        err = acc.get(k, B.zero())
        if err:
            lg[k] = lg.get(k, B.zero()) + err
    s = {}
    for k, c in lg.items():
        s[(k, 0)] = s.get((k, 0), B.zero()) + c
        s[(0, k)] = s.get((0, k), B.zero()) + c
    s = {k: v for k, v in s.items() if v}
    F = {}
    power = {(0, 0): B.one()}
    for m in range(1, top + 1):
        power = mul(power, s)
        c = B.one() if m == 1 else b.get(m - 1, B.zero())
        for k, v in power.items():
            F[k] = F.get(k, B.zero()) + c * v
    return {k: v for k, v in F.items() if v}


def test_a_table_matches_direct_expansion():
    N = 6
    ctx = build_fgl(N)
    F = oracle_F(N)
    for i in range(0, N + 2):
        for j in range(0, N + 2 - i):
            if i + j - 1 <= N:
                want = F[(i, j)].render() if (i, j) in F else "0"
                assert ctx.a_coeff(i, j).render() == want, (i, j)


def test_axioms_hold(ctx6):
    rep = check_fgl_axioms(ctx6)
    assert rep.passed, rep.counterexample


def test_additive_law_is_associative():
    B = model_ring(4)
    ctx = FglContext(N=4, B=B, exp=None, log=None, a={})
    assert check_associativity(ctx).passed


def test_low_degree_slice_passes(ctx6):
    assert check_associativity(ctx6, 3).passed


@pytest.mark.parametrize("symmetric", [True, False])
def test_flipping_a12_breaks_associativity(ctx6, symmetric):
    B = ctx6.B

    def a(i, j):
        v = ctx6.a_coeff(i, j)
        if (i, j) == (1, 2) or (symmetric and (i, j) == (2, 1)):
            v = v + B.var("b1") ** 2
        return v

    rep = check_associativity(ctx6, a=a)
    assert not rep.passed
    # total x, y, z degree 3 is blind to a_{1,2} once a_{1,1} = 0; the first
    # discrepancy is the x y^2 z^2 coefficient, of B-degree 4
    assert rep.data["first_degree"] == 4
    assert "x^1 y^2 z^2" in rep.counterexample


def test_reciprocal_table(ctx6):
    B = ctx6.B
    assert ctx6.c_coeff(0, -1) == B.one()
    assert all(not ctx6.c_coeff(0, j) for j in range(0, 6))
    assert ctx6.c_coeff(1, 0) == B.var("b2")
    for i in range(ctx6.y_max + 1):
        assert ctx6.c_coeff(i, -i - 1) == B.one()
    assert check_reciprocal(ctx6).passed


def test_homogeneity(ctx6):
    for (i, j), v in ctx6.a.items():
        assert v.degree() == i + j - 1
    for (i, j), v in ctx6.c.items():
        assert v.degree() == i + j + 1


def test_negative_pattern_does_not_hold(ctx6):
    # c_{i,-i+1} = b2 for every i >= 2; the first offender is c_{2,-1}
    rep = check_negative_pattern(ctx6)
    assert not rep.passed
    assert rep.counterexample == "c[2,-1] = b2 is nonzero"
    b2 = ctx6.B.var("b2")
    for i in range(2, ctx6.y_max + 1):
        assert ctx6.c_coeff(i, -i + 1) == b2


def test_refinement_reproduces_lower_tables():
    small, big = fgl_context(5, 7), fgl_context(7, 7)
    for (i, j), v in small.a.items():
        assert big.a_coeff(i, j).render() == v.render()
    for (i, j), v in small.c.items():
        assert big.c_coeff(i, j).render() == v.render()


def test_window_sizes():
    ctx = build_c_table(build_fgl(4), 2)
    assert ctx.e_hi == 2
    assert max(j for (_, j) in ctx.c) <= 2
