import pytest
from hypothesis import given, settings, strategies as st

from c2cobordism.kernel import (Eliminator, Homomorphism, PolyRing, Series,
                                TruncationError, VarTableMismatch, WindowError, gf2_rank,
                                graded_quotient_dim, invert_F, prefix_embedding,
                                prefix_projection, series_compose, series_reversion)

R = PolyRing([("x", 1), ("y", 2), ("z", 3)], 8)
FREE = PolyRing([("x", 1), ("y", 2), ("z", 3)], None)

monomials = st.builds(lambda a, b, c: (a, b, c),
                      st.integers(0, 3), st.integers(0, 2), st.integers(0, 1))


def polys(ring):
    return st.lists(monomials, max_size=5).map(
        lambda ms: ring.from_monomials(ring.vars.monomial(m) for m in ms))


# basics -------------------------------------------------------------------------------

def test_render_and_order():
    x, y, z = R.var("x"), R.var("y"), R.var("z")
    p = z + x * y + x ** 3 + 1
    # ascending by degree, then by packed value (x is most significant)
    assert p.render() == "1 + z + x*y + x^3"
    assert R.zero().render() == "0"
    assert (x ** 2 * y).render() == "x^2*y"


def test_parse_inverts_render():
    p = R.var("z") * R.var("x") + R.var("y") ** 2 + R.one()
    assert R.parse(p.render()) == p
    assert R.parse("0") == R.zero()
    with pytest.raises(ValueError):
        R.parse("w + x")


def test_characteristic_two():
    x = R.var("x")
    assert x + x == R.zero()
    assert (x + 1) ** 2 == x ** 2 + 1


def test_truncation_counts_weighted_degree():
    z = R.var("z")
    assert z ** 2 * R.var("y") != R.zero()  # degree 8 survives
    assert (z ** 3) == R.zero()  # degree 9 > 8
    assert FREE.var("z") ** 3 != FREE.zero()


def test_mixed_rings_rejected():
    other = PolyRing([("x", 1), ("y", 2), ("z", 3)], 8)
    with pytest.raises(VarTableMismatch):
        R.var("x") + other.var("x")


def test_homogeneous_parts():
    x, y = R.var("x"), R.var("y")
    p = x ** 2 + y + x
    assert p.degrees() == {1, 2}
    assert p.degree() is None
    assert p.homogeneous_part(2) == x ** 2 + y


def test_monomials_of_degree_counts_partitions():
    # parts 1, 2, 3: 1, 1, 2, 3, 4, 5, 7
    assert [len(R.monomials_of_degree(n)) for n in range(7)] == [1, 1, 2, 3, 4, 5, 7]


def test_homomorphism_substitution():
    x, y, z = FREE.var("x"), FREE.var("y"), FREE.var("z")
    T = PolyRing([("t", 1)], None)
    t = T.var("t")
    h = Homomorphism(FREE, {0: t, 1: t ** 2 + t, 2: T.zero()}, T.one(), T.zero())
    assert h(x * y + z) == t ** 3 + t ** 2
    assert h(FREE.one()) == T.one()


def test_prefix_embedding_and_projection():
    small = PolyRing([("x", 1)], None)
    big = PolyRing([("x", 1), ("d", 1)], None)
    emb = prefix_embedding(small, big)
    assert emb(small.var("x") ** 2 + 1) == big.var("x") ** 2 + 1
    split = prefix_projection(big, small)
    m = (big.var("x") ** 2 * big.var("d")).sorted_terms()[0]
    head, rest = split(m)
    assert small.mono_from(head) == small.var("x") ** 2
    assert big.mono_from(rest) == big.var("d")


@settings(max_examples=60, deadline=None)
@given(polys(FREE), polys(FREE), polys(FREE))
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + p == FREE.zero()


@settings(max_examples=60, deadline=None)
@given(polys(FREE), polys(FREE))
def test_frobenius(p, q):
    assert (p + q) ** 2 == p ** 2 + q ** 2
    assert p.square() == p * p


@settings(max_examples=60, deadline=None)
@given(polys(FREE), polys(FREE))
def test_truncation_is_a_ring_map(p, q):
    # truncating after multiplying equals multiplying truncated factors, then truncating
    lhs = (p * q).truncated(R.trunc)
    rhs = (p.truncated(R.trunc) * q.truncated(R.trunc)).truncated(R.trunc)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(polys(FREE))
def test_render_parse_round_trip(p):
    assert FREE.parse(p.render()) == p


# linear algebra -----------------------------------------------------------------------

def test_rank_small_cases():
    assert gf2_rank([0b11, 0b01, 0b10]) == 2
    assert gf2_rank([]) == 0
    assert gf2_rank([0b100, 0b010, 0b001, 0b111]) == 3


def test_eliminator_tags_record_combination():
    e = Eliminator()
    e.add(0b110, 0b01)
    e.add(0b011, 0b10)
    residual, tag = e.reduce(0b101)
    assert residual == 0 and tag == 0b11


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 255), max_size=10))
def test_rank_matches_span_size(rows):
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    assert 2 ** gf2_rank(rows) == len(span)


def test_quotient_dim_of_polynomial_ring():
    ring = PolyRing([("x", 1), ("y", 1)], None)
    x, y = ring.var("x"), ring.var("y")
    # F2[x,y]/(xy): 1, 2, 2, 2, ...
    dims = [graded_quotient_dim(ring, [0, 1], [x * y], n) for n in range(5)]
    assert dims == [1, 2, 2, 2, 2]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(["x*y", "x^2", "y^2", "x^2 + y^2", "x*y + y^2"]), max_size=3),
       st.sampled_from(["x^2", "x*y", "y^2"]), st.integers(2, 5))
def test_more_relations_never_grow_the_quotient(rels, extra, n):
    ring = PolyRing([("x", 1), ("y", 1)], None)
    base = [ring.parse(r) for r in rels]
    a = graded_quotient_dim(ring, [0, 1], base, n)
    b = graded_quotient_dim(ring, [0, 1], base + [ring.parse(extra)], n)
    assert b <= a


# series -------------------------------------------------------------------------------

S = PolyRing([("b1", 1), ("b2", 2), ("b3", 3)], None)


def test_series_window_is_enforced():
    f = Series(S, {1: S.one()}, 0, 4)
    with pytest.raises(WindowError):
        f[5]
    assert f[3] == S.zero()


def test_reversion_oracle_geometric_series():
    # f = x/(1+x) = x + x^2 + x^3 + ... over F2 has inverse x/(1+x) as well
    f = Series(S, {k: S.one() for k in range(1, 7)}, 0, 6)
    g = series_reversion(f)
    assert g == f


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(["0", "1", "b1", "b2", "b1^2 + b3"]), min_size=4, max_size=4))
def test_reversion_is_a_two_sided_inverse(cs):
    coeffs = {1: S.one()}
    for k, c in enumerate(cs, start=2):
        coeffs[k] = S.parse(c)
    f = Series(S, coeffs, 0, 5)
    g = series_reversion(f)
    x = Series(S, {1: S.one()}, 0, 5)
    assert series_compose(f, g) == x
    assert series_compose(g, f) == x


def test_invert_F_additive_law():
    # F(e, y) = e + y: 1/(e + y) = sum_i y^i e^(-i-1)
    F = {(1, 0): S.one(), (0, 1): S.one()}
    inv = invert_F(F, 4, (-5, 3), S)
    for i in range(5):
        for j in range(-i - 1, 4):
            assert inv[(i, j)] == (S.one() if j == -i - 1 else S.zero())
    with pytest.raises(WindowError):
        inv[(5, 0)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["0", "b1", "b2", "b1^2"]), st.sampled_from(["0", "b2", "b3"]))
def test_invert_F_is_a_reciprocal(a11, a12):
    F = {(1, 0): S.one(), (0, 1): S.one(), (1, 1): S.parse(a11), (1, 2): S.parse(a12),
         (2, 1): S.parse(a12)}
    y_max, e_hi = 3, 2
    inv = invert_F(F, y_max, (-y_max - 1, e_hi), S)
    for s in range(y_max + 1):
        for t in range(-s, e_hi + 1):
            acc = S.zero()
            for (p, q), a in F.items():
                if a and q <= s and inv.certified(s - q, t - p):
                    acc = acc + a * inv[(s - q, t - p)]
            assert acc == (S.one() if (s, t) == (0, 0) else S.zero()), (s, t)


def test_truncation_error_is_value_error():
    assert issubclass(TruncationError, ValueError)
