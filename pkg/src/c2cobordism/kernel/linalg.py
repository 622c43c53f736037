"""Degreewise linear algebra over F_2 on int bitsets."""

from __future__ import annotations

from typing import Iterable, Sequence

from .poly import F2Poly, PolyRing


class InhomogeneousError(ValueError):
    pass


class ColumnIndex:
    """Assigns bit positions to monomials on first sight."""

    def __init__(self):
        self._col: dict[int, int] = {}
        self._mono: list[int] = []

    def __len__(self):
        return len(self._mono)

    def bits(self, monos: Iterable[int]) -> int:
        v = 0
        for m in monos:
            c = self._col.get(m)
            if c is None:
                c = len(self._mono)
                self._col[m] = c
                self._mono.append(m)
            v ^= 1 << c
        return v

    def monomials(self, v: int) -> list[int]:
        out = []
        while v:
            low = v & -v
            out.append(self._mono[low.bit_length() - 1])
            v ^= low
        return out


class Eliminator:
    """Incremental row echelon form keyed by leading bit.

    Every stored row carries a ``tag`` bitset recording which inserted
    vectors it combines, so membership queries can return a certificate.
    """

    def __init__(self):
        self.pivots: dict[int, tuple[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        pivots = self.pivots
        while v:
            top = v.bit_length() - 1
            hit = pivots.get(top)
            if hit is None:
                break
            v ^= hit[0]
            tag ^= hit[1]
        # clear lower pivot bits too so the residual is canonical
        if v:
            rest = v
            out = 0
            while rest:
                top = rest.bit_length() - 1
                hit = pivots.get(top)
                if hit is not None:
                    rest ^= hit[0]
                    tag ^= hit[1]
                else:
                    out |= 1 << top
                    rest ^= 1 << top
            v = out
        return v, tag

    def add(self, v: int, tag: int = 0) -> bool:
        """Insert a row; returns True when it was independent."""
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        self.pivots[v.bit_length() - 1] = (v, tag)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0


def gf2_rank(rows: Iterable[int]) -> int:
    e = Eliminator()
    for r in rows:
        e.add(r)
    return e.rank


def graded_slice_rank(vectors: Sequence[F2Poly], n: int) -> int:
    """F_2-dimension of the span of the degree-``n`` components."""
    cols = ColumnIndex()
    return gf2_rank(cols.bits(v.homogeneous_part(n).terms) for v in vectors)


def relation_multiples(ring: PolyRing, variables: Sequence[int], relations: Sequence[F2Poly], n: int):
    """Yield ``r * m`` for every relation ``r`` and monomial ``m`` with ``deg(r m) = n``."""
    vt = ring.vars
    by_degree: dict[int, list[int]] = {}
    for r in relations:
        if not r:
            continue
        d = r.degree()
        if d is None:
            raise InhomogeneousError(f"relation {r} is not homogeneous")
        if d > n:
            continue
        if d not in by_degree:
            by_degree[d] = ring.monomials_of_degree(n - d, variables)
        for m in by_degree[d]:
            yield frozenset(t + m for t in r.terms)


def graded_quotient_dim(ring: PolyRing, variables: Sequence[int], relations: Sequence[F2Poly], n: int) -> int:
    """Dimension of the degree-``n`` slice of ``F_2[variables] / (relations)``."""
    if ring.N is not None and n > ring.N:
        raise ValueError(f"degree {n} exceeds truncation {ring.N}")
    monos = ring.monomials_of_degree(n, variables)
    cols = ColumnIndex()
    cols.bits(monos)
    rank = gf2_rank(cols.bits(terms) for terms in relation_multiples(ring, variables, relations, n))
    return len(monos) - rank
