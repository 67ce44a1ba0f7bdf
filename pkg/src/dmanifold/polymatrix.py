"""Rectangular matrices of polynomials sharing a variable count."""

import numpy as np

from .errors import DimensionError
from .poly import Poly, to_scalar

__all__ = ["PolyMatrix", "jacobian"]


class PolyMatrix:
    """Immutable ``rows x cols`` matrix of :class:`Poly` entries.

    Shapes with a zero dimension are allowed and keep their other dimension,
    which matters for maps to or from the zero bundle.
    """

    __slots__ = ("rows", "cols", "nvars", "_entries")

    def __init__(self, entries, nvars, rows=None, cols=None):
        entries = tuple(tuple(row) for row in entries)
        if rows is None:
            rows = len(entries)
        if cols is None:
            if not entries:
                raise DimensionError("cols is required for a matrix with no rows")
            cols = len(entries[0])
        if len(entries) != rows:
            raise DimensionError(f"expected {rows} rows, got {len(entries)}")
        for row in entries:
            if len(row) != cols:
                raise DimensionError("ragged matrix")
            for p in row:
                if not isinstance(p, Poly):
                    raise TypeError("PolyMatrix entries must be Poly")
                if p.nvars != nvars:
                    raise DimensionError(
                        f"entry in {p.nvars} variables, matrix in {nvars} variables")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    # constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, rows, cols, nvars):
        z = Poly.zero(nvars)
        return cls([[z] * cols for _ in range(rows)], nvars, rows, cols)

    @classmethod
    def identity(cls, size, nvars):
        z, o = Poly.zero(nvars), Poly.one(nvars)
        return cls([[o if i == j else z for j in range(size)] for i in range(size)],
                   nvars, size, size)

    @classmethod
    def from_scalars(cls, values, nvars, rows=None, cols=None):
        return cls([[Poly.const(v, nvars) for v in row] for row in values], nvars, rows, cols)

    @classmethod
    def column(cls, polys, nvars):
        polys = list(polys)
        return cls([[p] for p in polys], nvars, len(polys), 1)

    @classmethod
    def row(cls, polys, nvars):
        polys = list(polys)
        return cls([polys], nvars, 1, len(polys))

    # access --------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._entries[i][j]

    def tolist(self):
        return [list(row) for row in self._entries]

    def entries(self):
        for row in self._entries:
            yield from row

    def is_zero(self):
        return all(not p for p in self.entries())

    # algebra -------------------------------------------------------------

    def _check_same(self, other):
        if not isinstance(other, PolyMatrix):
            raise TypeError("expected a PolyMatrix")
        if self.shape != other.shape or self.nvars != other.nvars:
            raise DimensionError(
                f"shape/variable mismatch {self.shape}/{self.nvars} vs "
                f"{other.shape}/{other.nvars}")

    def __add__(self, other):
        self._check_same(other)
        return PolyMatrix([[a + b for a, b in zip(r, s)]
                           for r, s in zip(self._entries, other._entries)],
                          self.nvars, self.rows, self.cols)

    def __sub__(self, other):
        self._check_same(other)
        return PolyMatrix([[a - b for a, b in zip(r, s)]
                           for r, s in zip(self._entries, other._entries)],
                          self.nvars, self.rows, self.cols)

    def __neg__(self):
        return self.map(lambda p: -p)

    def __matmul__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        if self.nvars != other.nvars:
            raise DimensionError("matrices over different variable counts")
        z = Poly.zero(self.nvars)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self._entries[i][k]
                    if a:
                        b = other._entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.nvars, self.rows, other.cols)

    def scale(self, c):
        if isinstance(c, Poly):
            return self.map(lambda p: p * c)
        c = to_scalar(c)
        return self.map(lambda p: p.scale(c))

    def map(self, fn):
        return PolyMatrix([[fn(p) for p in row] for row in self._entries],
                          self.nvars, self.rows, self.cols)

    def subs_mod(self, images, nvars, ideal):
        """Substitute ``images`` and reduce each entry modulo ``ideal``."""
        from .groebner import substitute_mod
        return PolyMatrix([[substitute_mod(p, images, ideal) for p in row] for row in self._entries],
                          nvars, self.rows, self.cols)

    @property
    def T(self):
        return PolyMatrix([[self._entries[i][j] for i in range(self.rows)]
                           for j in range(self.cols)], self.nvars, self.cols, self.rows)

    def hstack(self, other):
        if self.rows != other.rows or self.nvars != other.nvars:
            raise DimensionError("hstack needs equal row counts")
        return PolyMatrix([list(a) + list(b) for a, b in zip(self._entries, other._entries)],
                          self.nvars, self.rows, self.cols + other.cols)

    def vstack(self, other):
        if self.cols != other.cols or self.nvars != other.nvars:
            raise DimensionError("vstack needs equal column counts")
        return PolyMatrix(self.tolist() + other.tolist(), self.nvars,
                          self.rows + other.rows, self.cols)

    def block(self, row_slice, col_slice):
        rows = range(self.rows)[row_slice]
        cols = range(self.cols)[col_slice]
        return PolyMatrix([[self._entries[i][j] for j in cols] for i in rows],
                          self.nvars, len(rows), len(cols))

    def reduce(self, ideal):
        """Entrywise normal form modulo ``ideal``."""
        if ideal.nvars != self.nvars:
            raise DimensionError("ideal and matrix disagree on variable count")
        return self.map(ideal.normal_form)

    def in_ideal(self, ideal):
        return all(ideal.contains(p) for p in self.entries())

    def equal_mod(self, other, ideal):
        return (self - other).in_ideal(ideal)

    def subs(self, images, nvars):
        """Substitute the polynomial map ``images`` into every entry."""
        images = list(images)
        return PolyMatrix([[p.subs_into(images, nvars) for p in row] for row in self._entries],
                          nvars, self.rows, self.cols)

    def eval(self, point):
        """Numeric matrix at ``point``: object array of ``mpq`` or float array."""
        vals = [[p.eval(point) for p in row] for row in self._entries]
        exact = not any(isinstance(x, (float, np.floating)) for x in point)
        if exact:
            out = np.empty((self.rows, self.cols), dtype=object)
            for i, row in enumerate(vals):
                for j, v in enumerate(row):
                    out[i, j] = v
            return out
        return np.array(vals, dtype=float).reshape(self.rows, self.cols)

    # comparison / text -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.nvars == other.nvars
                and self._entries == other._entries)

    def __hash__(self):
        return hash((self.shape, self.nvars, self._entries))

    def to_strings(self, names=None):
        return [[p.to_string(names) for p in row] for row in self._entries]

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols}, {self.to_strings()})"


def jacobian(polys, nvars):
    """The ``k x n`` matrix of partial derivatives ``d polys[i] / d x_j``."""
    polys = list(polys)
    for p in polys:
        if p.nvars != nvars:
            raise DimensionError(f"polynomial in {p.nvars} variables, expected {nvars}")
    return PolyMatrix([[p.diff(j) for j in range(nvars)] for p in polys],
                      nvars, len(polys), nvars)
