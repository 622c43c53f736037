"""Windowed Laurent series in one variable with polynomial coefficients.

A :class:`Series` is exact on the closed window ``[lo, hi]``: every
coefficient below ``lo`` is zero and nothing is known above ``hi``.
Arithmetic propagates the window, so results always state what they certify.
"""

from __future__ import annotations

from typing import Mapping

from .poly import F2Poly, PolyRing


class WindowError(ValueError):
    """A coefficient outside the certified window was requested."""


class Series:
    __slots__ = ("ring", "coeffs", "lo", "hi")

    def __init__(self, ring: PolyRing, coeffs: Mapping[int, F2Poly], lo: int, hi: int):
        if lo > hi + 1:
            raise ValueError(f"bad window ({lo}, {hi})")
        self.ring = ring
        self.lo = lo
        self.hi = hi
        self.coeffs = {k: c for k, c in coeffs.items() if c and lo <= k <= hi}
        for k, c in coeffs.items():
            if c and k < lo:
                raise ValueError(f"coefficient at {k} lies below the window start {lo}")

    @classmethod
    def constant(cls, c: F2Poly, hi: int) -> "Series":
        return cls(c.ring, {0: c}, 0, hi)

    @classmethod
    def monomial(cls, ring: PolyRing, k: int, hi: int, c: F2Poly | None = None) -> "Series":
        return cls(ring, {k: ring.one() if c is None else c}, min(k, hi + 1), hi)

    @property
    def window(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def __getitem__(self, k: int) -> F2Poly:
        if k > self.hi:
            raise WindowError(f"exponent {k} beyond certified window {self.window}")
        return self.coeffs.get(k, self.ring.zero())

    def valuation(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            if other.ring.vars is not self.ring.vars:
                raise ValueError("series over different coefficient rings")
            return other
        if isinstance(other, F2Poly):
            return Series.constant(other, self.hi)
        if isinstance(other, int):
            return Series.constant(self.ring.one() if other % 2 else self.ring.zero(), self.hi)
        raise TypeError(type(other))

    def __add__(self, other):
        other = self._coerce(other)
        hi = min(self.hi, other.hi)
        zero = self.ring.zero()
        out = {k: self.coeffs.get(k, zero) + other.coeffs.get(k, zero)
               for k in set(self.coeffs) | set(other.coeffs) if k <= hi}
        return Series(self.ring, out, min(self.lo, other.lo), hi)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        other = self._coerce(other)
        lo = self.lo + other.lo
        hi = min(self.hi + other.lo, other.hi + self.lo)
        out: dict[int, set[int]] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                if k > hi:
                    continue
                out.setdefault(k, set()).symmetric_difference_update((a * b).terms)
        return Series(self.ring, {k: F2Poly(self.ring, frozenset(v)) for k, v in out.items()}, lo, hi)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        if k == 0:
            return Series.constant(self.ring.one(), self.hi)
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def shift(self, k: int) -> "Series":
        """Multiply by ``var^k`` (exact: shifts the window)."""
        return Series(self.ring, {i + k: c for i, c in self.coeffs.items()}, self.lo + k, self.hi + k)

    def restrict(self, hi: int) -> "Series":
        if hi > self.hi:
            raise WindowError(f"cannot extend window {self.window} to {hi}")
        return Series(self.ring, self.coeffs, min(self.lo, hi + 1), hi)

    def agrees_with(self, other: "Series") -> bool:
        """Equality on the common certified window."""
        hi = min(self.hi, other.hi)
        lo = min(self.lo, other.lo)
        return all(self.coeffs.get(k, self.ring.zero()) == other.coeffs.get(k, other.ring.zero())
                   for k in range(lo, hi + 1))

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.window == other.window and self.agrees_with(other)

    def __hash__(self):
        return hash((self.lo, self.hi, frozenset((k, c.terms) for k, c in self.coeffs.items())))

    def render(self, var: str = "e") -> str:
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mon:
                parts.append(c.render() if len(c) == 1 else f"({c.render()})")
            elif c == 1:
                parts.append(mon)
            else:
                cs = c.render() if len(c) == 1 else f"({c.render()})"
                parts.append(f"{cs}*{mon}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({var}^{self.hi + 1})"

    def __repr__(self):
        return f"Series({self.render()})"


# one-variable power series ---------------------------------------------------

def series_compose(f: Series, g: Series) -> Series:
    """``f(g(x))`` for power series, ``g`` without constant term."""
    if f.lo < 0 or g.lo < 0:
        raise ValueError("composition needs power series")
    if g[0]:
        raise ValueError("inner series must have zero constant term")
    hi = min(f.hi, g.hi)
    ring = f.ring
    total = Series(ring, {}, 0, hi)
    power = Series(ring, {0: ring.one()}, 0, hi)
    g = Series(ring, g.coeffs, 1, hi)
    for k in range(0, hi + 1):
        c = f.coeffs.get(k)
        if c:
            total = total + Series(ring, {i: c * v for i, v in power.coeffs.items()}, 0, hi)
        power = power * g
        power = Series(ring, power.coeffs, 0, hi)
    return total


def series_reversion(f: Series) -> Series:
    """The compositional inverse ``g`` with ``f(g(x)) = x`` through ``f.hi``."""
    ring = f.ring
    if f[0] or f[1] != 1:
        raise ValueError("reversion needs f = x + higher order terms")
    hi = f.hi
    g = Series(ring, {1: ring.one()}, 0, hi)
    for k in range(2, hi + 1):
        err = series_compose(f, g)[k]
        if err:
            coeffs = dict(g.coeffs)
            coeffs[k] = coeffs.get(k, ring.zero()) + err
            g = Series(ring, coeffs, 0, hi)
    return g


# two-variable inverse ----------------------------------------------------------

class InverseTable:
    """Coefficients ``c[(i, j)]`` of ``y^i e^j`` in ``1/F(e, y)``.

    Certified for ``0 <= i <= y_max`` and ``lo_i <= j <= e_hi`` with
    ``lo_i = -i - 1``; coefficients are exact modulo the coefficient ring's
    truncation.
    """

    def __init__(self, ring: PolyRing, coeffs: dict[tuple[int, int], F2Poly], y_max: int, e_hi: int):
        self.ring = ring
        self.coeffs = coeffs
        self.y_max = y_max
        self.e_hi = e_hi

    def certified(self, i: int, j: int) -> bool:
        return 0 <= i <= self.y_max and -i - 1 <= j <= self.e_hi

    def __getitem__(self, key: tuple[int, int]) -> F2Poly:
        i, j = key
        if not self.certified(i, j):
            raise WindowError(f"c[{i},{j}] outside certified window y<={self.y_max}, e in [-i-1, {self.e_hi}]")
        return self.coeffs.get(key, self.ring.zero())


def _bimul(p: dict, q: dict, y_max: int, e_cap: int) -> dict:
    out: dict[tuple[int, int], set[int]] = {}
    for (ea, ya), a in p.items():
        for (eb, yb), b in q.items():
            y = ya + yb
            e = ea + eb
            if y > y_max or e > e_cap:
                continue
            out.setdefault((e, y), set()).symmetric_difference_update((a * b).terms)
    ring = next(iter(p.values())).ring if p else None
    return {k: F2Poly(ring, frozenset(v)) for k, v in out.items() if v}


def invert_F(F: Mapping[tuple[int, int], F2Poly], y_max: int, e_window: tuple[int, int],
             ring: PolyRing) -> InverseTable:
    """Reciprocal of ``F(e, y) = e + y + sum a[i,j] e^i y^j``.

    ``F`` maps ``(e-exponent, y-exponent)`` to coefficients.  Uses
    ``1/F = e^-1 sum_m (e^-1 (F - e))^m``, which converges y-adically because
    ``F - e`` is divisible by ``y``.
    """
    if y_max < 0:
        raise ValueError("y_max must be >= 0")
    F = {k: v for k, v in F.items() if v}
    if F.get((1, 0)) != ring.one() or F.get((0, 1)) != ring.one():
        raise ValueError("F must have leading terms e + y")
    if (0, 0) in F:
        raise ValueError("F must have zero constant term")
    if any(y == 0 and e != 1 for (e, y) in F):
        raise ValueError("F(e, 0) must equal e")
    _, e_hi = e_window
    # T = e^-1 (F - e): e-exponents >= -1, y-exponents >= 1.  Every factor carries
    # at least one y, so at most y_max further factors can lower e by one each.
    e_cap = e_hi + 1 + y_max
    T = {(e - 1, y): c for (e, y), c in F.items() if (e, y) != (1, 0)}
    total: dict[tuple[int, int], set[int]] = {(0, 0): {0}}
    power = {(0, 0): ring.one()}
    for _ in range(y_max):
        power = _bimul(power, T, y_max, e_cap)
        for k, v in power.items():
            total.setdefault(k, set()).symmetric_difference_update(v.terms)
    coeffs = {}
    for (e, y), v in total.items():
        if v and e - 1 <= e_hi:
            coeffs[(y, e - 1)] = F2Poly(ring, frozenset(v))
    return InverseTable(ring, coeffs, y_max, e_hi)
