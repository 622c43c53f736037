"""Stiefel-Whitney numbers: an oracle independent of the formal group law.

Two routes to the same numbers.  Products of projective spaces are handled
from the total class ``w(RP^n) = (1+x)^(n+1)``.  Elements of B are paired
against SW monomials through H_*(BO) = F_2[b_1, b_2, ...]; the raw pairing
produces normal numbers, which are converted to tangential ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .kernel import Eliminator, F2Poly, PolyRing
from .omega import NotInSubring, OmegaBasis


def partitions(n: int, largest: int | None = None):
    """Partitions of ``n`` as non-increasing tuples."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class SwProfile:
    degree: int
    values: dict

    def __post_init__(self):
        if set(self.values) != set(partitions(self.degree)):
            raise ValueError("profile keys must be exactly the partitions of the degree")

    def is_zero(self) -> bool:
        return not any(self.values.values())

    def vector(self) -> tuple[int, ...]:
        return tuple(self.values[lam] for lam in partitions(self.degree))

    def __eq__(self, other):
        return isinstance(other, SwProfile) and self.degree == other.degree and self.values == other.values

    def __hash__(self):
        return hash((self.degree, self.vector()))

    def render(self) -> str:
        def mono(lam):
            return "*".join(f"w{p}" for p in lam) if lam else "1"
        return ", ".join(f"{mono(lam)}={v}" for lam, v in self.values.items())


def _w_ring(n: int) -> PolyRing:
    return PolyRing([(f"w{i}", i) for i in range(1, n + 1)], n)


def _monomial_partition(ring: PolyRing, m: int) -> tuple[int, ...]:
    parts = []
    for i, e in ring.vars.support(m):
        parts.extend([ring.vars.weights[i]] * e)
    return tuple(sorted(parts, reverse=True))


def sw_numbers_projective_product(dims: list[int]) -> SwProfile:
    """Tangential SW numbers of ``RP^{n_1} x ... x RP^{n_k}``."""
    if not dims or any(d < 1 for d in dims):
        raise ValueError("dims must be a nonempty list of positive integers")
    n = sum(dims)
    k = len(dims)
    X = PolyRing([(f"t{r}", 1) for r in range(k)], n)
    caps = dims

    def cut(p: F2Poly) -> F2Poly:
        vt = X.vars
        return F2Poly(X, frozenset(m for m in p.terms
                                   if all(vt.exponent(m, r) <= caps[r] for r in range(k))))

    total = X.one()
    for r, d in enumerate(dims):
        total = cut(total * (X.one() + X.var(r)) ** (d + 1))
    w = {i: total.homogeneous_part(i) for i in range(0, n + 1)}
    top = X.vars.monomial(dims)
    values = {}
    for lam in partitions(n):
        prod = X.one()
        for part in lam:
            prod = cut(prod * w[part])
        values[lam] = prod.coefficient_of(top)
    return SwProfile(n, values)


@lru_cache(maxsize=None)
def _matrix_count_mod2(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    """Parity of the number of 0/1 matrices with the given row and column sums."""
    if not rows:
        return 1 if not any(cols) else 0
    first, rest = rows[0], rows[1:]
    total = 0

    def choose(pos: int, need: int, cur: list[int]):
        nonlocal total
        if need == 0:
            nxt = tuple(sorted((c for c in cur), reverse=True))
            total ^= _matrix_count_mod2(rest, nxt)
            return
        if pos == len(cur) or len(cur) - pos < need:
            return
        if cur[pos] > 0:
            cur[pos] -= 1
            choose(pos + 1, need - 1, cur)
            cur[pos] += 1
        choose(pos + 1, need, cur)

    choose(0, first, list(cols))
    return total


def pairing(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """``<w_lam, b_mu>``: the coefficient of ``x^mu`` in ``prod_r e_{lam_r}(x_1..x_k)``."""
    if sum(lam) != sum(mu):
        return 0
    return _matrix_count_mod2(tuple(lam), tuple(sorted(mu, reverse=True)))


def _b_partition(B: PolyRing, m: int) -> tuple[int, ...]:
    parts = []
    for i, e in B.vars.support(m):
        parts.extend([B.vars.weights[i]] * e)
    return tuple(sorted(parts, reverse=True))


def raw_numbers(B: PolyRing, elt: F2Poly, n: int) -> dict:
    """Pair a degree-``n`` element of B with every SW monomial."""
    out = {lam: 0 for lam in partitions(n)}
    for m in elt.terms:
        mu = _b_partition(B, m)
        for lam in out:
            out[lam] ^= pairing(lam, mu)
    return out


@lru_cache(maxsize=None)
def _dual_expansions(n: int) -> dict:
    """For each partition, the monomials in the original classes making up ``wbar_lam``.

    ``wbar = w^{-1}``; used to turn normal numbers into tangential ones and back.
    """
    W = _w_ring(n)
    total = W.one()
    for i in range(1, n + 1):
        total = total + W.var(i - 1)
    reduced = total + W.one()
    inverse = W.one()
    power = W.one()
    for _ in range(n):
        power = power * reduced
        inverse = inverse + power
    wbar = {i: inverse.homogeneous_part(i) for i in range(1, n + 1)}
    out = {}
    for lam in partitions(n):
        prod = W.one()
        for part in lam:
            prod = prod * wbar[part]
        out[lam] = [_monomial_partition(W, m) for m in prod.terms]
    return out


def dualize(values: dict, n: int) -> dict:
    """Normal numbers to tangential numbers (the map is an involution)."""
    exp = _dual_expansions(n)
    return {lam: sum(values[k] for k in exp[lam]) % 2 for lam in values}


def sw_numbers_of_class(ob: OmegaBasis, elt: F2Poly, n: int) -> SwProfile:
    """Tangential SW numbers of the cobordism class represented by ``elt`` in B."""
    if elt and not ob.contains(elt):
        raise NotInSubring(f"{elt} is not in Omega_{n}")
    if elt and elt.degree() != n:
        raise NotInSubring(f"{elt} is not homogeneous of degree {n}")
    return SwProfile(n, dualize(raw_numbers(ob.B, elt, n), n))


def _profile_bits(profile: SwProfile) -> int:
    v = 0
    for k, bit in enumerate(profile.vector()):
        v |= bit << k
    return v


def pairing_rank(ob: OmegaBasis, n: int) -> int:
    """Rank of the SW map on Omega_n; equals ``dim Omega_n`` when it is injective."""
    elim = Eliminator()
    for m in ob.X.monomials_of_degree(n):
        elim.add(_profile_bits(sw_numbers_of_class(ob, ob.evaluate(ob.X.mono_from(m)), n)))
    return elim.rank


def class_with_profile(ob: OmegaBasis, profile: SwProfile) -> F2Poly | None:
    """The element of Omega_n (as a polynomial in the ``x(g)``) with the given SW numbers."""
    n = profile.degree
    monos = ob.X.monomials_of_degree(n)
    elim = Eliminator()
    for k, m in enumerate(monos):
        elt = ob.evaluate(ob.X.mono_from(m))
        elim.add(_profile_bits(sw_numbers_of_class(ob, elt, n)), 1 << k)
    residual, tag = elim.reduce(_profile_bits(profile))
    if residual:
        return None
    return ob.X.from_monomials(m for k, m in enumerate(monos) if tag >> k & 1)
