"""Two-term complexes of free modules and their strict 2-category.

A :class:`VComplex` is ``phi: E1 -> E2`` with ``E1 = R^r1`` and ``E2 = R^r2``
over an :class:`~dmanifold.cinf_ring.FgRing` ``R``. A 1-morphism to
``psi: F1 -> F2`` is a pair ``(f1, f2)`` with ``psi f1 = f2 phi``; a
2-morphism ``f => g`` is a matrix ``eta: E2 -> F1`` with ``g1 = f1 + eta phi``
and ``g2 = f2 + psi eta``. All matrices are stored in normal form, so equality
of stored values is equality in the ring.
"""

from dataclasses import dataclass

import numpy as np

from .cinf_ring import FgRing
from .errors import DimensionError, InvalidMorphism
from .linalg import DEFAULT_PIVOT_TOL, rank
from .polymatrix import PolyMatrix
from .witness import as_witness

__all__ = [
    "VComplex",
    "VMor",
    "VTwoMor",
    "MorClass",
    "OrientationLine",
    "compose_vmor",
    "vcompose",
    "hcompose",
    "classify_matrices",
    "classify_at",
    "orientation_line",
]


def _check_shape(mat, rows, cols, nvars, what):
    if not isinstance(mat, PolyMatrix):
        raise TypeError(f"{what} must be a PolyMatrix")
    if mat.shape != (rows, cols) or mat.nvars != nvars:
        raise DimensionError(
            f"{what} has shape {mat.shape} in {mat.nvars} variables, "
            f"expected {(rows, cols)} in {nvars}")


def _residual_report(residual, label):
    return [{"entry": [i, j], "condition": label, "residual": str(residual[i, j])}
            for i in range(residual.rows) for j in range(residual.cols) if residual[i, j]]


class VComplex:
    """``phi: R^r1 -> R^r2`` (an ``r2 x r1`` matrix) of virtual rank ``r2 - r1``."""

    __slots__ = ("ring", "r1", "r2", "phi")

    def __init__(self, ring, r1, r2, phi):
        if not isinstance(ring, FgRing):
            raise TypeError("ring must be an FgRing")
        _check_shape(phi, r2, r1, ring.n, "phi")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "r2", r2)
        object.__setattr__(self, "phi", phi.reduce(ring.ideal))

    def __setattr__(self, name, value):
        raise AttributeError("VComplex is immutable")

    @property
    def rank(self):
        return self.r2 - self.r1

    def identity(self):
        n = self.ring.n
        return VMor(self, self, PolyMatrix.identity(self.r1, n), PolyMatrix.identity(self.r2, n))

    def dual(self):
        """The transposed complex ``phi^T: (E2)* -> (E1)*``."""
        return VComplex(self.ring, self.r2, self.r1, self.phi.T)

    def __eq__(self, other):
        if not isinstance(other, VComplex):
            return NotImplemented
        return (self.ring == other.ring and self.r1 == other.r1
                and self.r2 == other.r2 and self.phi == other.phi)

    def __hash__(self):
        return hash((self.ring, self.r1, self.r2, self.phi))

    def __repr__(self):
        return f"VComplex(r1={self.r1}, r2={self.r2}, phi={self.phi.to_strings()})"


class VMor:
    """Chain map ``(f1, f2)`` from ``source`` to ``target``.

    Raises :class:`InvalidMorphism` unless ``psi f1 = f2 phi`` in the ring.
    """

    __slots__ = ("source", "target", "f1", "f2")

    def __init__(self, source, target, f1, f2):
        if source.ring != target.ring:
            raise DimensionError("source and target live over different rings")
        n = source.ring.n
        _check_shape(f1, target.r1, source.r1, n, "f1")
        _check_shape(f2, target.r2, source.r2, n, "f2")
        ideal = source.ring.ideal
        residual = (target.phi @ f1 - f2 @ source.phi).reduce(ideal)
        if not residual.is_zero():
            raise InvalidMorphism("chain-map identity psi*f1 = f2*phi fails",
                                  _residual_report(residual, "chain map"))
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "f1", f1.reduce(ideal))
        object.__setattr__(self, "f2", f2.reduce(ideal))

    def __setattr__(self, name, value):
        raise AttributeError("VMor is immutable")

    @property
    def ring(self):
        return self.source.ring

    def zero_2mor(self):
        return VTwoMor(self, self, PolyMatrix.zeros(self.target.r1, self.source.r2, self.ring.n))

    def __eq__(self, other):
        if not isinstance(other, VMor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.f1 == other.f1 and self.f2 == other.f2)

    def __hash__(self):
        return hash((self.source, self.target, self.f1, self.f2))

    def __repr__(self):
        return f"VMor(f1={self.f1.to_strings()}, f2={self.f2.to_strings()})"


class VTwoMor:
    """2-morphism ``eta: f => g`` between parallel chain maps."""

    __slots__ = ("f", "g", "eta")

    def __init__(self, f, g, eta):
        if f.source != g.source or f.target != g.target:
            raise DimensionError("2-morphism between non-parallel 1-morphisms")
        E, F = f.source, f.target
        ideal = E.ring.ideal
        _check_shape(eta, F.r1, E.r2, E.ring.n, "eta")
        r1 = (g.f1 - f.f1 - eta @ E.phi).reduce(ideal)
        r2 = (g.f2 - f.f2 - F.phi @ eta).reduce(ideal)
        if not (r1.is_zero() and r2.is_zero()):
            raise InvalidMorphism(
                "2-morphism identities fail",
                _residual_report(r1, "g1 = f1 + eta*phi") + _residual_report(r2, "g2 = f2 + psi*eta"))
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "eta", eta.reduce(ideal))

    def __setattr__(self, name, value):
        raise AttributeError("VTwoMor is immutable")

    @classmethod
    def from_eta(cls, f, eta):
        """The 2-morphism out of ``f`` with matrix ``eta``; the target is determined."""
        E, F = f.source, f.target
        g = VMor(E, F, f.f1 + eta @ E.phi, f.f2 + F.phi @ eta)
        return cls(f, g, eta)

    def __eq__(self, other):
        if not isinstance(other, VTwoMor):
            return NotImplemented
        return self.f == other.f and self.g == other.g and self.eta == other.eta

    def __hash__(self):
        return hash((self.f, self.g, self.eta))


def compose_vmor(g, f):
    """``g o f``: apply ``f`` first."""
    if f.target != g.source:
        raise DimensionError("1-morphisms are not composable")
    return VMor(f.source, g.target, g.f1 @ f.f1, g.f2 @ f.f2)


def vcompose(zeta, eta):
    """Vertical composite of ``eta: f => g`` and ``zeta: g => h``."""
    if eta.g != zeta.f:
        raise DimensionError("2-morphisms are not vertically composable")
    return VTwoMor(eta.f, zeta.g, zeta.eta + eta.eta)


def hcompose(zeta, eta):
    """Horizontal composite ``zeta * eta: g o f => g~ o f~``.

    ``eta: f => f~`` goes between complexes ``E -> F`` and ``zeta: g => g~``
    between ``F -> G``; the matrix is ``g1 eta + zeta f2 + zeta psi eta``.
    """
    if eta.f.target != zeta.f.source:
        raise DimensionError("2-morphisms are not horizontally composable")
    psi = eta.f.target.phi
    lam = zeta.f.f1 @ eta.eta + zeta.eta @ eta.f.f2 + zeta.eta @ psi @ eta.eta
    return VTwoMor(compose_vmor(zeta.f, eta.f), compose_vmor(zeta.g, eta.g), lam)


@dataclass(frozen=True)
class MorClass:
    """Pointwise classification flags of a chain map.

    ``on_locus`` is False when the point is not a zero of the ring's ideal, in
    which case the flags carry no geometric meaning.
    """

    weakly_injective: bool
    injective: bool
    weakly_surjective: bool
    surjective: bool
    equivalence: bool
    on_locus: bool = True

    def consistent(self):
        return ((not self.equivalence or (self.injective and self.surjective))
                and (not self.injective or self.weakly_injective)
                and (not self.surjective or (self.weakly_injective and self.weakly_surjective)))

    def as_dict(self):
        return {
            "weakly_injective": self.weakly_injective,
            "injective": self.injective,
            "weakly_surjective": self.weakly_surjective,
            "surjective": self.surjective,
            "equivalence": self.equivalence,
            "on_locus": self.on_locus,
        }


def classify_matrices(phi, psi, f1, f2, *, tol=DEFAULT_PIVOT_TOL, modulus=None):
    """Classify the chain map ``(f1, f2): (phi: E1->E2) -> (psi: F1->F2)`` over a field.

    With ``M = [f1; -phi]: E1 -> F1+E2`` and ``N = [psi | f2]: F1+E2 -> F2``
    (so ``N M = 0``):

    * a left inverse ``gamma`` of ``M`` exists iff ``M`` is injective;
    * a right inverse ``delta`` of ``N`` exists iff ``N`` is surjective;
    * adding ``M gamma + delta N = 1`` forces ``im M = ker N``;
    * ``gamma delta = 0`` can always be arranged once ``M`` is injective and ``N``
      surjective, by taking ``gamma`` to vanish on a complement of ``im M``
      containing ``im delta``.
    """
    dtype = object if modulus is None and np.asarray(phi).dtype == object else None
    phi, psi, f1, f2 = (np.asarray(a, dtype=dtype) for a in (phi, psi, f1, f2))
    r1 = phi.shape[1]
    q2 = psi.shape[0]
    q1 = psi.shape[1]
    r2 = phi.shape[0]
    M = np.concatenate([f1, -phi], axis=0).reshape(q1 + r2, r1)
    N = np.concatenate([psi, f2], axis=1).reshape(q2, q1 + r2)
    if modulus is not None:
        M, N = M % modulus, N % modulus
    rank_m = rank(M, tol=tol, modulus=modulus)
    rank_n = rank(N, tol=tol, modulus=modulus)
    wi = rank_m == r1
    ws = rank_n == q2
    inj = wi and rank_m + rank_n == q1 + r2
    surj = wi and ws
    return MorClass(wi, inj, ws, surj, inj and surj)


def classify_at(m, point, *, tol=DEFAULT_PIVOT_TOL):
    """Classify the chain map ``m`` at a point by evaluating it there."""
    pt = as_witness(point)
    n = m.ring.n
    if len(pt) != n:
        raise DimensionError(f"point has {len(pt)} coordinates, ring has {n} variables")
    coords = pt.coords
    on_locus = pt.is_zero_of(m.ring.ideal.generators)
    rtol = tol if pt.exact else max(tol, pt.tolerance)
    mats = [mat.eval(coords) for mat in (m.source.phi, m.target.phi, m.f1, m.f2)]
    flags = classify_matrices(*mats, tol=rtol)
    return MorClass(flags.weakly_injective, flags.injective, flags.weakly_surjective,
                    flags.surjective, flags.equivalence, on_locus)


@dataclass(frozen=True)
class OrientationLine:
    """The line ``L = (Lambda^dual_rank F)* (x) Lambda^rank G``.

    For a complex ``phi: E1 -> E2`` the factor ``F`` is ``E1`` and ``G`` is
    ``E2``. With both trivialised, ``L`` has the canonical generator
    ``(e_1^ ^ .. ^ e_r1^) (x) (e'_1 ^ .. ^ e'_r2)`` and an orientation is a sign.
    """

    dual_rank: int
    rank: int
    dual_factor: str = "E1"
    factor: str = "E2"

    def describe(self):
        return f"Lambda^{self.dual_rank}({self.dual_factor})* (x) Lambda^{self.rank}({self.factor})"

    def swapped(self):
        return OrientationLine(self.rank, self.dual_rank, self.factor, self.dual_factor)


def orientation_line(c):
    return OrientationLine(c.r1, c.r2)
