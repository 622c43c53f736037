"""One object holding every ring built at a given truncation degree."""

from __future__ import annotations

from functools import cached_property

from .equivariant import EquivariantRing
from .fixed_points import FixedPoints, RRing
from .formal_group import FglContext, fgl_context
from .omega import OmegaBasis, omega_ring


class C2Context:
    """Lazily built tower: FGL tables, Omega_*, fixed points, R and Omega^{C2}_*."""

    def __init__(self, fgl: FglContext):
        self.fgl = fgl
        self.N = fgl.N

    @classmethod
    def build(cls, N: int = 10, window: int | None = None) -> "C2Context":
        window = N + 2 if window is None else window
        return cls(fgl_context(N, window))

    @property
    def window(self) -> int | None:
        return self.fgl.e_hi

    @cached_property
    def omega(self) -> OmegaBasis:
        return omega_ring(self.fgl)

    @cached_property
    def fp(self) -> FixedPoints:
        return FixedPoints(self.omega)

    @cached_property
    def eq(self) -> EquivariantRing:
        return EquivariantRing(self.fp)

    @cached_property
    def r(self) -> RRing:
        return RRing(self.fp)
