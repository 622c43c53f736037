import random

import pytest

from c2cobordism.equivariant import relation, restrict
from c2cobordism.extended import (ExtClass, check_ext_relations, eq_basis, ext_basis, ext_from,
                                  ext_mul, ext_phi, ext_phi_rank, ext_phi_terms, ext_restrict,
                                  ext_transfer, gamma, normalize, omega_u_ring, push_u,
                                  u_relation_terms)
from c2cobordism.kernel import TruncationError
from c2cobordism.verify import random_class, random_ext


def test_push_u_examples(C):
    R = C.eq
    r, g = push_u(R.one())
    assert r == R.X.one() and not g
    for i, j in [(1, 0), (2, 1), (3, 0)]:
        r, g = push_u(R.d(i, j))
        assert r == C.fp.c(i, j)
        assert g == R.d(i, j + 1)
    r, g = push_u(R.x(2))
    assert r == C.omega.x(2) and not g


def test_gamma_rules(C):
    R = C.eq
    assert not gamma(R.one())
    assert not gamma(R.x(4))
    with pytest.raises(TruncationError):
        gamma(R.d(9, 0))
    with pytest.raises(ValueError):
        gamma(R.d(1, 0), peel="middle")


def test_gamma_respects_relations(C):
    # Gamma is well defined on the quotient: it kills a relation up to relations
    R = C.eq
    for pairs in [(1, 0, 1, 1), (1, 0, 2, 0), (1, 1, 2, 0)]:
        rel = relation(R, *pairs)
        assert rel.poly and gamma(rel) == R.zero()


def test_gamma_leibniz_random(C):
    R = C.eq
    rng = random.Random(3)
    for _ in range(50):
        n1 = rng.randint(0, 4)
        n2 = rng.randint(0, 9 - n1)
        m1, m2 = random_class(R, n1, rng), random_class(R, n2, rng)
        assert gamma(m1 * m2) == R.omega(restrict(m1)) * gamma(m2) + gamma(m1) * m2


def test_normal_form_example(C):
    R = C.eq
    x = ext_from(R, 0, 1, R.d(1, 0))
    assert x.render() == "x(2)*u + d(1,1)*a"
    assert (x.s, x.t) == (1, 3)
    y = ext_from(R, 0, 2, R.d(1, 0))
    assert (y.s, y.t) == (2, 4)


def test_constructor_validation(C):
    R = C.eq
    with pytest.raises(ValueError):
        ExtClass(R, 1, 2, (), R.zero())
    with pytest.raises(ValueError):
        ExtClass(R, 1, 2, (R.X.one(),), R.zero())
    with pytest.raises(ValueError):
        ExtClass(R, 0, 2, (), R.d(2, 0))
    with pytest.raises(ValueError):
        normalize(R, 2, 2, [(1, 0, R.d(1, 0))])


def test_addition_requires_same_bidegree(C):
    R = C.eq
    with pytest.raises(ValueError):
        ext_from(R, 1, 0) + ext_from(R, 0, 1)
    x = ext_from(R, 0, 1, R.d(1, 0))
    assert (x + x).is_zero()


def test_u_relations_vanish(C):
    R = C.eq
    for i, j in [(1, 0), (1, 2), (3, 1)]:
        terms = u_relation_terms(R, i, j)
        assert normalize(R, 1, i + j + 2, terms).is_zero()
        assert not ext_phi_terms(R, terms)


def test_ext_relations_report(C):
    rep = check_ext_relations(C.eq)
    assert rep.passed, rep.counterexample


def test_ext_phi_values(C):
    R, fp = C.eq, C.fp
    assert ext_phi(ext_from(R, 1, 0)) == fp.phi_ring.one()
    assert ext_phi(ext_from(R, 0, 1)) == fp.d(0)
    assert ext_phi(ext_from(R, 2, 1, R.d(1, 0))) == fp.d(0) * fp.eps_generator(1, 0)


def test_ext_restrict(C):
    R = C.eq
    ring = omega_u_ring(R)
    u = ring.var("u")
    assert ext_restrict(ext_from(R, 1, 0)) == ring.zero()
    assert ext_restrict(ext_from(R, 0, 2)) == u ** 2
    x2 = ring.var("x(2)")
    assert ext_restrict(ext_from(R, 0, 1, R.d(1, 0))) == x2 * u


def test_random_products(C):
    R = C.eq
    rng = random.Random(11)
    for _ in range(60):
        s1, s2 = rng.randint(0, 2), rng.randint(0, 2)
        t1 = rng.randint(0, 4)
        t2 = rng.randint(0, 8 - t1)
        x, y = random_ext(R, s1, t1, rng), random_ext(R, s2, t2, rng)
        z = ext_mul(x, y)
        assert (z.s, z.t) == (s1 + s2, t1 + t2)
        assert z == ext_mul(y, x)
        assert ext_phi(z) == ext_phi(x) * ext_phi(y)
        assert ext_restrict(z) == ext_restrict(x) * ext_restrict(y)


def test_associativity_of_products(C):
    R = C.eq
    rng = random.Random(5)
    for _ in range(20):
        xs = [random_ext(R, rng.randint(0, 2), rng.randint(0, 2), rng) for _ in range(3)]
        a, b, c = xs
        assert ext_mul(ext_mul(a, b), c) == ext_mul(a, ext_mul(b, c))


def test_transfer_is_zero(C):
    R = C.eq
    assert ext_transfer(R, C.omega.x(2), 1, 3).is_zero()


def test_bases_and_phi_rank(C):
    R = C.eq
    assert len(eq_basis(R, 4)) == 7
    assert len(ext_basis(R, 0, 4)) == 7
    # s = 1, t = 2: lambda_0 in Omega_1 = 0, m in Omega^{C2}_2 (dim 2)
    assert ext_phi_rank(R, 1, 2) == (2, 2)
    for s in range(3):
        for t in range(7):
            dim, rank = ext_phi_rank(R, s, t)
            assert dim == rank
