"""Sparse multivariate polynomials over F_2 with weighted gradings.

A monomial is packed into a single Python int: every variable owns a fixed
bit field, variable 0 in the most significant field.  Multiplying monomials
is then integer addition, and comparing two packed monomials of equal degree
is the lexicographic comparison of their exponent vectors.  A polynomial is a
frozenset of packed monomials (coefficient 1 for every member).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

FIELD_BITS = 8
_MASK = (1 << FIELD_BITS) - 1


class VarTableMismatch(ValueError):
    pass


class TruncationError(ValueError):
    """A request needs degrees beyond the truncation N."""


@dataclass(frozen=True)
class TruncCtx:
    """Keep only monomials of (positive-weight) degree <= N."""

    N: int

    def __post_init__(self):
        if self.N < 0:
            raise ValueError("truncation degree must be >= 0")


class VarTable:
    """Ordered, immutable list of ``(name, weight)`` pairs."""

    def __init__(self, entries: Iterable[tuple[str, int]]):
        entries = [(str(n), int(w)) for n, w in entries]
        names = [n for n, _ in entries]
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        self.names: tuple[str, ...] = tuple(names)
        self.weights: tuple[int, ...] = tuple(w for _, w in entries)
        self.index = {n: i for i, n in enumerate(self.names)}
        k = len(entries)
        self._shift = tuple(FIELD_BITS * (k - 1 - i) for i in range(k))
        self.units = tuple(1 << s for s in self._shift)
        self._deg: dict[int, int] = {0: 0}
        self._tdeg: dict[int, int] = {0: 0}

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"VarTable({list(zip(self.names, self.weights))!r})"

    def monomial(self, exps: Mapping[int | str, int] | Sequence[int]) -> int:
        if isinstance(exps, Mapping):
            items = exps.items()
        else:
            items = enumerate(exps)
        m = 0
        for v, e in items:
            i = self.index[v] if isinstance(v, str) else v
            if e < 0 or e > _MASK:
                raise ValueError(f"exponent {e} out of range")
            m += e << self._shift[i]
        return m

    def exponent(self, m: int, i: int) -> int:
        return (m >> self._shift[i]) & _MASK

    def exponents(self, m: int) -> tuple[int, ...]:
        return tuple((m >> s) & _MASK for s in self._shift)

    def support(self, m: int) -> list[tuple[int, int]]:
        """Nonzero ``(variable index, exponent)`` pairs of a monomial."""
        out = []
        for i, s in enumerate(self._shift):
            e = (m >> s) & _MASK
            if e:
                out.append((i, e))
        return out

    def degree(self, m: int) -> int:
        d = self._deg.get(m)
        if d is None:
            d = sum(self.weights[i] * e for i, e in self.support(m))
            self._deg[m] = d
        return d

    def trunc_degree(self, m: int) -> int:
        """Degree counted over positive-weight variables only.

        Equal to :meth:`degree` when no variable has weight <= 0; for series
        variables like ``e`` (weight -1) it measures the coefficient degree.
        """
        d = self._tdeg.get(m)
        if d is None:
            d = sum(self.weights[i] * e for i, e in self.support(m) if self.weights[i] > 0)
            self._tdeg[m] = d
        return d

    def render_monomial(self, m: int) -> str:
        if m == 0:
            return "1"
        parts = []
        for i, e in self.support(m):
            parts.append(self.names[i] if e == 1 else f"{self.names[i]}^{e}")
        return "*".join(parts)

    def sort_key(self, m: int):
        # graded lex, ascending; the packed int orders exponent vectors lexicographically
        return (self.degree(m), m)


class PolyRing:
    """A :class:`VarTable` together with a default truncation."""

    def __init__(self, entries: Iterable[tuple[str, int]] | VarTable, N: int | None = None):
        self.vars = entries if isinstance(entries, VarTable) else VarTable(entries)
        self.trunc = TruncCtx(N) if N is not None else None

    def __repr__(self):
        return f"PolyRing({self.vars!r}, N={self.N})"

    @property
    def N(self):
        return None if self.trunc is None else self.trunc.N

    def zero(self) -> "F2Poly":
        return F2Poly(self, frozenset())

    def one(self) -> "F2Poly":
        return F2Poly(self, frozenset((0,)))

    def var(self, name: str | int) -> "F2Poly":
        i = self.vars.index[name] if isinstance(name, str) else name
        return F2Poly(self, frozenset((self.vars.units[i],)))

    def mono(self, exps) -> "F2Poly":
        return F2Poly(self, frozenset((self.vars.monomial(exps),)))

    def mono_from(self, m: int) -> "F2Poly":
        """The polynomial consisting of the single packed monomial ``m``."""
        return F2Poly(self, frozenset((m,)))

    def from_monomials(self, monos: Iterable[int]) -> "F2Poly":
        acc: set[int] = set()
        for m in monos:
            acc ^= {m}
        return F2Poly(self, frozenset(acc))

    def admits(self, m: int) -> bool:
        return self.trunc is None or self.vars.trunc_degree(m) <= self.trunc.N

    def parse(self, text: str) -> "F2Poly":
        """Inverse of :meth:`F2Poly.render` (canonical ``name^exp`` products joined by `` + ``)."""
        text = text.strip()
        if text == "0":
            return self.zero()
        acc: set[int] = set()
        for term in text.split(" + "):
            term = term.strip()
            if term == "1":
                acc ^= {0}
                continue
            exps: dict[int, int] = {}
            for factor in term.split("*"):
                name, _, ex = factor.partition("^")
                if name not in self.vars.index:
                    raise ValueError(f"unknown variable {name!r} in {term!r}")
                try:
                    e = int(ex) if ex else 1
                except ValueError:
                    raise ValueError(f"bad exponent in {factor!r}") from None
                i = self.vars.index[name]
                exps[i] = exps.get(i, 0) + e
            acc ^= {self.vars.monomial(exps)}
        return F2Poly(self, frozenset(acc))

    def monomials_of_degree(self, n: int, variables: Sequence[int] | None = None) -> list[int]:
        """All monomials of weighted degree ``n`` in the given positive-weight variables."""
        vt = self.vars
        if variables is None:
            variables = range(len(vt))
        variables = [i for i in variables if vt.weights[i] > 0]
        out: list[int] = []

        def rec(pos: int, remaining: int, acc: int):
            if remaining == 0:
                out.append(acc)
                return
            if pos == len(variables):
                return
            i = variables[pos]
            w = vt.weights[i]
            e = 0
            while e * w <= remaining:
                rec(pos + 1, remaining - e * w, acc + e * vt.units[i])
                e += 1

        rec(0, n, 0)
        out.sort(key=vt.sort_key)
        return out


class F2Poly:
    """Immutable polynomial over F_2.  ``terms`` is the set of monomials present."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: frozenset[int] = frozenset()):
        self.ring = ring
        self.terms = terms

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.one() if other % 2 else self.ring.zero()
        return poly_add(self, other)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, int):
            return self if other % 2 else self.ring.zero()
        if not isinstance(other, F2Poly):
            return NotImplemented
        return poly_mul(self, other, self.ring.trunc)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self if other % 2 else self.ring.zero()
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base.square()
        return result

    def square(self) -> "F2Poly":
        # Frobenius: (sum m)^2 = sum m^2 in characteristic 2
        ring = self.ring
        return F2Poly(ring, frozenset(m + m for m in self.terms if ring.admits(m + m)))

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == (frozenset((0,)) if other % 2 else frozenset())
        if not isinstance(other, F2Poly):
            return NotImplemented
        return self.ring.vars is other.ring.vars and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_terms())

    # grading ----------------------------------------------------------------
    def degrees(self) -> set[int]:
        return {self.ring.vars.degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int | None:
        """Degree of a homogeneous nonzero polynomial, else ``None``."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def homogeneous_part(self, n: int) -> "F2Poly":
        vt = self.ring.vars
        return F2Poly(self.ring, frozenset(m for m in self.terms if vt.degree(m) == n))

    def truncated(self, t: TruncCtx | None) -> "F2Poly":
        if t is None:
            return self
        vt = self.ring.vars
        return F2Poly(self.ring, frozenset(m for m in self.terms if vt.trunc_degree(m) <= t.N))

    def uses(self, i: int) -> bool:
        vt = self.ring.vars
        return any(vt.exponent(m, i) for m in self.terms)

    def sorted_terms(self) -> list[int]:
        return sorted(self.terms, key=self.ring.vars.sort_key)

    def coefficient_of(self, m: int) -> int:
        return 1 if m in self.terms else 0

    def map_monomials(self, ring: PolyRing, f) -> "F2Poly":
        return ring.from_monomials(f(m) for m in self.terms)

    # rendering --------------------------------------------------------------
    def render(self) -> str:
        if not self.terms:
            return "0"
        vt = self.ring.vars
        return " + ".join(vt.render_monomial(m) for m in self.sorted_terms())

    __str__ = render

    def __repr__(self):
        return f"F2Poly({self.render()!r})"


def _check_same(p: F2Poly, q: F2Poly):
    if p.ring.vars is not q.ring.vars:
        raise VarTableMismatch("polynomials live over different variable tables")


def poly_add(p: F2Poly, q: F2Poly) -> F2Poly:
    _check_same(p, q)
    return F2Poly(p.ring, p.terms ^ q.terms)


def poly_mul(p: F2Poly, q: F2Poly, t: TruncCtx | None = None) -> F2Poly:
    """Product with every monomial of degree > ``t.N`` discarded."""
    _check_same(p, q)
    if not p.terms or not q.terms:
        return p.ring.zero()
    vt = p.ring.vars
    if len(p.terms) > len(q.terms):
        p, q = q, p
    acc: set[int] = set()
    if t is None:
        for a in p.terms:
            for b in q.terms:
                m = a + b
                if m in acc:
                    acc.remove(m)
                else:
                    acc.add(m)
        return F2Poly(p.ring, frozenset(acc))
    N = t.N
    pa = sorted(((vt.trunc_degree(m), m) for m in p.terms))
    qb = sorted(((vt.trunc_degree(m), m) for m in q.terms))
    for da, a in pa:
        room = N - da
        for db, b in qb:
            if db > room:
                break
            m = a + b
            if m in acc:
                acc.remove(m)
            else:
                acc.add(m)
    return F2Poly(p.ring, frozenset(acc))


def poly_sum(ring: PolyRing, polys: Iterable[F2Poly]) -> F2Poly:
    acc: set[int] = set()
    for p in polys:
        acc ^= p.terms
    return F2Poly(ring, frozenset(acc))


class Homomorphism:
    """Ring map out of a polynomial ring, given by images of the variables.

    Images may be any ring elements supporting ``+`` and ``*`` (polynomials,
    series).  Monomial images are memoised by peeling one variable at a time.
    """

    def __init__(self, source: PolyRing, images: Mapping[int, object], one, zero):
        self.source = source
        self.images = dict(images)
        self.one = one
        self.zero = zero
        self._memo: dict[int, object] = {0: one}
        self._poly_target = isinstance(one, F2Poly)

    def monomial(self, m: int):
        got = self._memo.get(m)
        if got is not None:
            return got
        vt = self.source.vars
        i, _ = vt.support(m)[0]
        if i not in self.images:
            raise KeyError(f"no image for variable {vt.names[i]}")
        val = self.monomial(m - vt.units[i]) * self.images[i]
        self._memo[m] = val
        return val

    def __call__(self, p: F2Poly):
        if p.ring.vars is not self.source.vars:
            raise VarTableMismatch("homomorphism applied outside its source ring")
        if self._poly_target:
            acc: set[int] = set()
            for m in p.terms:
                acc ^= self.monomial(m).terms
            return F2Poly(self.one.ring, frozenset(acc))
        total = self.zero
        for m in p.sorted_terms():
            total = total + self.monomial(m)
        return total


def prefix_embedding(src: PolyRing, dst: PolyRing):
    """Inclusion of ``src`` into ``dst`` when ``dst`` starts with the variables of ``src``.

    Returns a function on polynomials; monomials are moved by a single shift.
    """
    k = len(src.vars)
    if dst.vars.names[:k] != src.vars.names or dst.vars.weights[:k] != src.vars.weights:
        raise VarTableMismatch("source variables are not a prefix of the target")
    shift = FIELD_BITS * (len(dst.vars) - k)

    def embed(p: F2Poly) -> F2Poly:
        if p.ring.vars is not src.vars:
            raise VarTableMismatch("embedding applied outside its source ring")
        return F2Poly(dst, frozenset(m << shift for m in p.terms))

    return embed


def prefix_projection(src: PolyRing, dst: PolyRing):
    """Split monomials of ``src`` into (prefix monomial in ``dst``, rest) when ``dst`` is a prefix."""
    k = len(dst.vars)
    if src.vars.names[:k] != dst.vars.names:
        raise VarTableMismatch("target variables are not a prefix of the source")
    shift = FIELD_BITS * (len(src.vars) - k)
    low = (1 << shift) - 1

    def split(m: int) -> tuple[int, int]:
        return m >> shift, m & low

    return split
