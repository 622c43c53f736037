"""The presented ring Omega^{C2}_* and its maps.

Classes are polynomials over Omega_* in the generators ``d(i,j)`` (degree
``i + j + 1``).  They are stored unreduced; equality is decided by the
embedding ``eps`` into Phi = Omega_*[d0, d1, ...], which is injective.
"""

from __future__ import annotations

from .kernel import (ColumnIndex, Eliminator, F2Poly, Homomorphism, PolyRing, Series,
                     TruncationError, graded_quotient_dim, poly_mul, prefix_embedding)
from .fixed_points import FixedPoints, _d_index_pairs, _laurent_add, _laurent_mul
from .report import CheckReport


class NotInImage(ValueError):
    pass


class EquivariantRing:
    """Variables ``x(g)`` then ``d(i,j)``; the maps eps, restriction and Hfp."""

    def __init__(self, fp: FixedPoints):
        self.fp = fp
        self.N = fp.N
        self.X = fp.X
        self.pairs = _d_index_pairs(self.N)
        entries = list(zip(self.X.vars.names, self.X.vars.weights))
        entries += [(f"d({i},{j})", i + j + 1) for i, j in self.pairs]
        self.ring = PolyRing(entries, self.N)
        vt = self.ring.vars
        self.k_x = len(self.X.vars)
        self.x_embed = prefix_embedding(self.X, self.ring)
        self.d_index = {p: vt.index[f"d({p[0]},{p[1]})"] for p in self.pairs}
        self.pair_of = {v: k for k, v in self.d_index.items()}
        self.d_vars = [self.d_index[p] for p in self.pairs]
        phi = fp.phi_ring
        images = {}
        res = {}
        for idx in range(len(vt)):
            if idx < self.k_x:
                images[idx] = phi.var(vt.names[idx])
                res[idx] = self.X.var(idx)
            else:
                i, j = self.pair_of[idx]
                images[idx] = fp.eps_generator(i, j)
                res[idx] = fp.c(i, j)
        self.eps = Homomorphism(self.ring, images, phi.one(), phi.zero())
        self.res = Homomorphism(self.ring, res, self.X.one(), self.X.zero())
        self._solvers: dict[int, tuple] = {}
        self.gamma_memo: dict = {}
        self.omega_u: PolyRing | None = None

    # constructors ----------------------------------------------------------------
    def cls(self, poly: F2Poly) -> "EqClass":
        return EqClass(self, poly)

    def zero(self) -> "EqClass":
        return EqClass(self, self.ring.zero())

    def one(self) -> "EqClass":
        return EqClass(self, self.ring.one())

    def d(self, i: int, j: int) -> "EqClass":
        if i < 1 or j < 0:
            raise ValueError(f"d({i},{j}) needs i >= 1 and j >= 0")
        if i + j + 1 > self.N:
            raise TruncationError(f"d({i},{j}) has degree {i + j + 1} > N = {self.N}")
        return EqClass(self, self.ring.var(self.d_index[(i, j)]))

    def x(self, g: int) -> "EqClass":
        name = f"x({g})"
        if name not in self.X.vars.index:
            raise ValueError(f"no generator x({g}) (degree {g} is excluded or beyond N)")
        return EqClass(self, self.ring.var(name))

    def omega(self, w: F2Poly) -> "EqClass":
        """An Omega_* element (polynomial in the ``x(g)``) as a class with trivial action."""
        return EqClass(self, self.x_embed(w))

    def c(self, i: int, j: int) -> "EqClass":
        return self.omega(self.fp.c(i, j))

    # linear algebra in one degree ------------------------------------------------------
    def _solver(self, n: int):
        got = self._solvers.get(n)
        if got is None:
            monos = self.ring.monomials_of_degree(n)
            cols = ColumnIndex()
            elim = Eliminator()
            for k, m in enumerate(monos):
                elim.add(cols.bits(self.eps.monomial(m).terms), 1 << k)
            got = (monos, cols, elim)
            self._solvers[n] = got
        return got

    def relations(self, max_degree: int | None = None) -> list[F2Poly]:
        """``(d(i,j) + c(i,j)) d(k,l+1) + d(i,j+1) (d(k,l) + c(k,l))`` for all pairs in range."""
        top = self.N if max_degree is None else max_degree
        out = []
        for a, (i, j) in enumerate(self.pairs):
            for (k, ell) in self.pairs[a + 1:]:
                if (i + j + 1) + (k + ell + 2) > top:
                    continue
                out.append(relation(self, i, j, k, ell).poly)
        return out


class EqClass:
    """An element of Omega^{C2}_*; ``==`` compares eps-images."""

    __slots__ = ("R", "poly")

    def __init__(self, R: EquivariantRing, poly: F2Poly):
        if poly.ring.vars is not R.ring.vars:
            raise ValueError("polynomial does not live in the equivariant ring")
        self.R = R
        self.poly = poly

    def _lift(self, other) -> "EqClass":
        if isinstance(other, EqClass):
            return other
        if isinstance(other, int):
            return self.R.one() if other % 2 else self.R.zero()
        if isinstance(other, F2Poly) and other.ring.vars is self.R.X.vars:
            return self.R.omega(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return EqClass(self.R, self.poly + other.poly)

    __radd__ = __add__

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return EqClass(self.R, _product(self.R, self.poly, other.poly))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.R.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return eq(self, other)

    def __hash__(self):
        return hash(geometric_fixed(self).terms)

    def __bool__(self):
        return bool(geometric_fixed(self))

    @property
    def degree(self) -> int | None:
        if not self.poly:
            return None
        return self.poly.degree()

    def render(self) -> str:
        return self.poly.render()

    __str__ = render

    def __repr__(self):
        return f"EqClass({self.render()!r})"


def _product(R: EquivariantRing, p: F2Poly, q: F2Poly) -> F2Poly:
    """Product that refuses to drop terms above the truncation."""
    out = poly_mul(p, q, None)
    vt = R.ring.vars
    for m in out.terms:
        if vt.degree(m) > R.N:
            raise TruncationError(f"product has degree {vt.degree(m)} > N = {R.N}")
    return out


# operations --------------------------------------------------------------------------

def twisted_projective(R: EquivariantRing, m: int, j: int) -> EqClass:
    """The class of ``Gamma^j RP^m_sigma``: zero for ``m = 1``, else ``d(m-1, j)``."""
    if m < 1 or j < 0:
        raise ValueError("need m >= 1 and j >= 0")
    if m == 1:
        return R.zero()
    return R.d(m - 1, j)


def geometric_fixed(c: EqClass) -> F2Poly:
    return c.R.eps(c.poly)


def eq(c1: EqClass, c2: EqClass) -> bool:
    if c1.R is not c2.R:
        raise ValueError("classes from different rings")
    return not c1.R.eps(c1.poly + c2.poly)


def restrict(c: EqClass) -> F2Poly:
    """Underlying Omega_* class, ``d(i,j) -> c(i,j)``; returned in the ``x(g)``."""
    return c.R.res(c.poly)


def transfer(R: EquivariantRing, w: F2Poly | None = None) -> EqClass:
    """Transfer Omega_* -> Omega^{C2}_*, which is zero."""
    return R.zero()


def _hfp_laurent(c: EqClass, hi: int) -> dict[int, F2Poly]:
    R = c.R
    vt = R.ring.vars
    out: dict[int, F2Poly] = {}
    for m in c.poly.terms:
        img = {0: R.X.one()}
        for idx, ex in vt.support(m):
            row = {0: R.X.var(idx)} if idx < R.k_x else R.fp.hfp_row(*R.pair_of[idx])
            for _ in range(ex):
                img = _laurent_mul(img, row, hi)
        out = _laurent_add(out, img)
    return out


def homotopy_fixed(c: EqClass, K: int) -> Series:
    """Image in Omega_*[[e]] under ``d(i,j) -> sum_l c(i,j+l) e^l``, exact through ``e^hi``.

    ``hi`` is ``K`` capped at ``N - deg c``.
    """
    top = max(c.poly.degrees()) if c.poly else 0
    hi = min(K, c.R.N - top)
    if hi < 0:
        raise TruncationError(f"degree {top} leaves no certified coefficients at N = {c.R.N}")
    coeffs = _hfp_laurent(c, hi)
    return Series(c.R.X, coeffs, 0, hi)


def gamma_underlying_series(c: EqClass, K: int) -> list[F2Poly]:
    """``[(Gamma^n c)^e]`` for ``n = 0..hi``, read off the homotopy fixed points."""
    h = homotopy_fixed(c, K)
    return [h[n] for n in range(0, h.hi + 1)]


def relation(R: EquivariantRing, i: int, j: int, k: int, ell: int) -> EqClass:
    return ((R.d(i, j) + R.c(i, j)) * R.d(k, ell + 1)
            + R.d(i, j + 1) * (R.d(k, ell) + R.c(k, ell)))


def dim_presented(R: EquivariantRing, n: int) -> int:
    if n > R.N:
        raise TruncationError(f"degree {n} exceeds N = {R.N}")
    return graded_quotient_dim(R.ring, range(len(R.ring.vars)), R.relations(n), n)


def dim_image(R: EquivariantRing, n: int) -> int:
    if n > R.N:
        raise TruncationError(f"degree {n} exceeds N = {R.N}")
    return R._solver(n)[2].rank


def membership(R: EquivariantRing, p: F2Poly) -> EqClass:
    """A preimage of ``p`` under eps, or :class:`NotInImage`."""
    if p.ring.vars is not R.fp.phi_ring.vars:
        raise ValueError("membership expects an element of Omega_*[d0, d1, ...]")
    if not p:
        return R.zero()
    n = p.degree()
    if n is None:
        raise ValueError(f"{p} is not homogeneous")
    if n > R.N:
        raise TruncationError(f"degree {n} exceeds N = {R.N}")
    monos, cols, elim = R._solver(n)
    before = len(cols)
    v = cols.bits(p.terms)
    if len(cols) != before:
        raise NotInImage(f"{p} is not in the image of Omega^C2_{n}")
    residual, tag = elim.reduce(v)
    if residual:
        raise NotInImage(f"{p} is not in the image of Omega^C2_{n}")
    picked = [monos[k] for k in range(len(monos)) if tag >> k & 1]
    return EqClass(R, R.ring.from_monomials(picked))


def check_relations(R: EquivariantRing) -> CheckReport:
    """eps kills every relation with all indices in range."""
    rep = CheckReport("relations")
    count = 0
    for a, (i, j) in enumerate(R.pairs):
        for (k, ell) in R.pairs[a + 1:]:
            if (i + j + 1) + (k + ell + 2) > R.N:
                continue
            count += 1
            if geometric_fixed(relation(R, i, j, k, ell)):
                rep.fail(f"eps does not kill the relation for d({i},{j}), d({k},{ell})")
    rep.note(f"{count} relations checked through degree {R.N}")
    rep.data["count"] = count
    return rep


def check_completeness(R: EquivariantRing, max_degree: int | None = None) -> CheckReport:
    """``dim_presented(n) = dim_image(n)`` degree by degree."""
    top = R.N if max_degree is None else max_degree
    rep = CheckReport("completeness")
    table = []
    for n in range(0, top + 1):
        p, q = dim_presented(R, n), dim_image(R, n)
        table.append((n, p, q))
        rep.note(f"degree {n}: presented {p}, image {q}{'' if p == q else '  MISMATCH'}")
        if p != q:
            rep.fail(f"degree {n}: presented dimension {p} != image dimension {q}")
    rep.data["table"] = table
    return rep


def equivariant_ring(fp: FixedPoints) -> EquivariantRing:
    return EquivariantRing(fp)
