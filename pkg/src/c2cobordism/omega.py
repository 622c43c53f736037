"""The unoriented cobordism ring inside the model ring B.

Omega_* is the subring of B generated by the coefficients ``a_{i,j}``.  Each
degree gets an F_2-basis, each admissible degree (not of the form 2^k - 1)
one new polynomial generator ``x(g)``, and elements of B can be rewritten as
polynomials in the ``x(g)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .formal_group import FglContext
from .kernel import ColumnIndex, Eliminator, F2Poly, Homomorphism, PolyRing
from .kernel.linalg import InhomogeneousError


class NotInSubring(ValueError):
    pass


class OmegaDimensionError(RuntimeError):
    def __init__(self, degree: int, got: int, expected: int):
        super().__init__(f"dim Omega_{degree} = {got}, expected {expected}")
        self.degree = degree
        self.got = got
        self.expected = expected


def is_admissible(g: int) -> bool:
    """True when ``g >= 1`` is not of the form ``2^k - 1``."""
    return g >= 1 and (g + 1) & g != 0


def thom_excluded(n: int) -> set[int]:
    out, k = set(), 1
    while (1 << k) - 1 <= n:
        out.add((1 << k) - 1)
        k += 1
    return out


def partition_count(n: int, excluded: frozenset[int] | set[int] | None = None) -> int:
    """Number of partitions of ``n`` into parts outside ``excluded``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    excluded = thom_excluded(n) if excluded is None else excluded
    return _partition_count(n, frozenset(p for p in excluded if p <= n))


@lru_cache(maxsize=None)
def _partition_count(n: int, excluded: frozenset[int]) -> int:
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        if part in excluded:
            continue
        for t in range(part, n + 1):
            ways[t] += ways[t - part]
    return ways[n]


@dataclass
class Generator:
    degree: int
    name: str
    rep: F2Poly
    source: str


@dataclass
class OmegaBasis:
    fgl: FglContext
    N: int
    A: PolyRing
    a_to_B: Homomorphism
    dims: dict[int, int]
    basis: dict[int, list[F2Poly]]
    generators: dict[int, Generator] = field(default_factory=dict)
    X: PolyRing | None = None
    x_to_B: Homomorphism | None = None
    _solvers: dict = field(default_factory=dict, repr=False)

    @property
    def B(self) -> PolyRing:
        return self.fgl.B

    def x(self, g: int) -> F2Poly:
        return self.X.var(f"x({g})")

    def evaluate(self, p: F2Poly) -> F2Poly:
        """Image in B of a polynomial in the generators."""
        return self.x_to_B(p)

    def _solver(self, n: int):
        got = self._solvers.get(n)
        if got is None:
            monos = self.X.monomials_of_degree(n)
            cols = ColumnIndex()
            elim = Eliminator()
            for k, m in enumerate(monos):
                img = self.x_to_B.monomial(m)
                elim.add(cols.bits(img.terms), 1 << k)
            got = (monos, cols, elim)
            self._solvers[n] = got
        return got

    def express(self, elt: F2Poly, n: int | None = None) -> F2Poly:
        """Rewrite a homogeneous element of B as a polynomial in the ``x(g)``."""
        if not elt:
            return self.X.zero()
        d = elt.degree()
        if d is None or (n is not None and d != n):
            raise InhomogeneousError(f"{elt} is not homogeneous of degree {n}")
        if d > self.N:
            raise ValueError(f"degree {d} exceeds truncation {self.N}")
        monos, cols, elim = self._solver(d)
        before = len(cols)
        v = cols.bits(elt.terms)
        if len(cols) != before:
            raise NotInSubring(f"{elt} has monomials outside Omega_{d}")
        residual, tag = elim.reduce(v)
        if residual:
            raise NotInSubring(f"{elt} is not in Omega_{d}")
        picked = []
        k = 0
        while tag:
            if tag & 1:
                picked.append(monos[k])
            tag >>= 1
            k += 1
        return self.X.from_monomials(picked)

    def contains(self, elt: F2Poly) -> bool:
        try:
            self.express(elt)
        except (NotInSubring, InhomogeneousError):
            return False
        return True


def a_ring(N: int) -> PolyRing:
    entries = []
    for d in range(1, N + 1):
        for i in range(1, (d + 1) // 2 + 1):
            j = d + 1 - i
            entries.append((f"a({i},{j})", d))
    return PolyRing(entries, N)


def compute_omega_basis(ctx: FglContext, N: int | None = None) -> OmegaBasis:
    """Degreewise bases of the subring generated by the ``a_{i,j}``.

    Raises :class:`OmegaDimensionError` naming the first degree whose rank
    disagrees with the partition count.
    """
    N = ctx.N if N is None else N
    A = a_ring(N)
    images = {}
    for idx, name in enumerate(A.vars.names):
        i, j = map(int, name[2:-1].split(","))
        images[idx] = ctx.a_coeff(i, j)
    hom = Homomorphism(A, images, ctx.B.one(), ctx.B.zero())
    dims, basis = {}, {}
    for n in range(0, N + 1):
        cols = ColumnIndex()
        elim = Eliminator()
        chosen = []
        for m in A.monomials_of_degree(n):
            img = hom.monomial(m)
            if elim.add(cols.bits(img.terms)):
                chosen.append(img)
        dims[n] = elim.rank
        basis[n] = chosen
        expected = partition_count(n)
        if elim.rank != expected:
            raise OmegaDimensionError(n, elim.rank, expected)
    return OmegaBasis(fgl=ctx, N=N, A=A, a_to_B=hom, dims=dims, basis=basis)


def choose_generators(ob: OmegaBasis) -> OmegaBasis:
    """Greedy graded-lex choice of one indecomposable ``a``-monomial per admissible degree."""
    N = ob.N
    gens: dict[int, Generator] = {}
    for g in range(1, N + 1):
        prev = [(f"x({h})", h) for h in sorted(gens)]
        Xg = PolyRing(prev, N)
        to_B = Homomorphism(Xg, {k: gens[h].rep for k, (_, h) in enumerate(prev)}, ob.B.one(), ob.B.zero())
        cols = ColumnIndex()
        elim = Eliminator()
        for m in Xg.monomials_of_degree(g):
            elim.add(cols.bits(to_B.monomial(m).terms))
        new = ob.dims[g] - elim.rank
        expected = 1 if is_admissible(g) else 0
        if new != expected:
            raise OmegaDimensionError(g, new, expected)
        if not new:
            continue
        for m in ob.A.monomials_of_degree(g):
            img = ob.a_to_B.monomial(m)
            if img and elim.add(cols.bits(img.terms)):
                gens[g] = Generator(g, f"x({g})", img, ob.A.vars.render_monomial(m))
                break
    ob.generators = gens
    order = sorted(gens)
    ob.X = PolyRing([(gens[g].name, g) for g in order], N)
    ob.x_to_B = Homomorphism(ob.X, {k: gens[g].rep for k, g in enumerate(order)}, ob.B.one(), ob.B.zero())
    ob._solvers = {}
    for n in range(0, N + 1):
        monos, _, elim = ob._solver(n)
        if elim.rank != len(monos) or len(monos) != ob.dims[n]:
            raise OmegaDimensionError(n, elim.rank, ob.dims[n])
    return ob


def omega_ring(ctx: FglContext) -> OmegaBasis:
    return choose_generators(compute_omega_basis(ctx))
