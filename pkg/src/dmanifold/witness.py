"""Witness points: explicit points of a zero locus used by pointwise checks."""

from dataclasses import dataclass

import numpy as np

from .errors import WitnessError
from .poly import to_scalar

__all__ = ["DEFAULT_WITNESS_TOL", "WitnessPoint", "as_witness", "require_witness"]

DEFAULT_WITNESS_TOL = 1e-9


@dataclass(frozen=True)
class WitnessPoint:
    """Coordinates that are either all exact rationals or all floats.

    ``tolerance`` is 0 for exact points; float points carry the bound used for
    ``|s_i| <= tolerance`` and for rank pivots.
    """

    coords: tuple
    tolerance: float = 0.0

    def __post_init__(self):
        coords = tuple(self.coords)
        if any(isinstance(c, (float, np.floating)) for c in coords):
            coords = tuple(float(c) for c in coords)
            tol = self.tolerance if self.tolerance > 0 else DEFAULT_WITNESS_TOL
        else:
            coords = tuple(to_scalar(c) for c in coords)
            tol = 0.0
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "tolerance", float(tol))

    @property
    def exact(self):
        return self.tolerance == 0.0

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def is_zero_of(self, polys):
        vals = [p.eval(self.coords) for p in polys]
        if self.exact:
            return all(v == 0 for v in vals)
        return all(abs(v) <= self.tolerance for v in vals)

    def satisfies(self, inequalities):
        return all(p.eval(self.coords) > 0 for p in inequalities)

    def image(self, polys):
        """The point ``(p(self) for p in polys)`` carrying the same tolerance."""
        vals = tuple(p.eval(self.coords) for p in polys)
        return WitnessPoint(vals, self.tolerance)

    def to_json(self):
        if self.exact:
            return [str(c) if c.denominator != 1 else str(c.numerator) for c in self.coords]
        return [float(c) for c in self.coords]


def as_witness(point, tolerance=DEFAULT_WITNESS_TOL):
    """Coerce a sequence or :class:`WitnessPoint` to a :class:`WitnessPoint`.

    Strings such as ``"1/2"`` are exact; floats make the point approximate.
    """
    if isinstance(point, WitnessPoint):
        return point
    coords = tuple(point)
    if any(isinstance(c, (float, np.floating)) for c in coords):
        return WitnessPoint(coords, tolerance)
    if any(isinstance(c, str) and any(ch in c for ch in ".eE") for c in coords):
        return WitnessPoint(tuple(float(c) for c in coords), tolerance)
    return WitnessPoint(coords)


def require_witness(point, n, polys, domain=(), what="point"):
    """Raise :class:`WitnessError` unless ``point`` is a zero of ``polys`` inside ``domain``."""
    if len(point) != n:
        raise WitnessError(f"{what} has {len(point)} coordinates, expected {n}")
    if not point.is_zero_of(polys):
        raise WitnessError(f"{what} {point.to_json()} is not a zero of the section "
                           f"(tolerance {point.tolerance:g})")
    if not point.satisfies(domain):
        raise WitnessError(f"{what} {point.to_json()} lies outside the domain")
