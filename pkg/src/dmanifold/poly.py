"""Exact multivariate polynomials over the rationals.

Polynomials are immutable maps from exponent tuples to nonzero ``gmpy2.mpq``
coefficients. All polynomials carry their variable count; arithmetic between
polynomials in different numbers of variables raises :class:`DimensionError`.

The global monomial order is graded reverse lexicographic with
``x_0 > x_1 > ... > x_{n-1}``.
"""

from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational
from operator import add

import gmpy2
import numpy as np

from .errors import DimensionError

__all__ = [
    "Scalar",
    "to_scalar",
    "monomial_key",
    "Poly",
    "variables",
]

Scalar = gmpy2.mpq
_MPQ = type(gmpy2.mpq(0))
_MPZ = type(gmpy2.mpz(0))


def to_scalar(value):
    """Convert ``value`` to an exact rational.

    Accepts integers, ``Fraction``/``mpq`` values and strings such as
    ``"-3/4"``. Floats are rejected: coefficients must be exact.
    """
    if isinstance(value, _MPQ):
        return value
    if isinstance(value, (bool, float, np.floating)):
        raise TypeError(f"inexact coefficient {value!r}; use int, Fraction or 'p/q'")
    if isinstance(value, (Integral, _MPZ)):
        return gmpy2.mpq(int(value))
    if isinstance(value, Fraction):
        return gmpy2.mpq(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return gmpy2.mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        text = value.strip()
        try:
            return gmpy2.mpq(text)
        except ValueError:
            raise ValueError(f"not a rational literal: {value!r}") from None
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


@lru_cache(maxsize=1 << 16)
def monomial_key(exp):
    """Sort key realising grevlex: larger key means larger monomial."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _format_scalar(c):
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Poly:
    """A polynomial in ``nvars`` variables with rational coefficients.

    Instances are immutable and hashable. Build them with :meth:`var`,
    :meth:`const`, :meth:`from_terms`, or by parsing text with
    :func:`dmanifold.parse.parse_poly`.
    """

    __slots__ = ("nvars", "_terms", "_hash", "_lm")

    def __init__(self, nvars, terms=None):
        if nvars < 0:
            raise ValueError("variable count must be nonnegative")
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars:
                    raise DimensionError(
                        f"exponent {exp} has length {len(exp)}, expected {nvars}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = to_scalar(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_lm", None)

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already exact, nonzero, correct length
        p = object.__new__(cls)
        object.__setattr__(p, "nvars", nvars)
        object.__setattr__(p, "_terms", terms)
        object.__setattr__(p, "_hash", None)
        object.__setattr__(p, "_lm", None)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, value, nvars):
        c = to_scalar(value)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars):
        return cls.const(1, nvars)

    @classmethod
    def var(cls, index, nvars):
        if not 0 <= index < nvars:
            raise DimensionError(f"variable index {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = 1
        return cls._raw(nvars, {tuple(exp): gmpy2.mpq(1)})

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def from_terms(cls, nvars, terms):
        return cls(nvars, dict(terms))

    # inspection --------------------------------------------------------

    @property
    def terms(self):
        """A copy of the exponent -> coefficient map."""
        return dict(self._terms)

    def items(self):
        """Terms in decreasing monomial order."""
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, gmpy2.mpq(0))

    def degree(self):
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def leading_monomial(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        if self._lm is None:
            object.__setattr__(self, "_lm", max(self._terms, key=monomial_key))
        return self._lm

    def leading_coefficient(self):
        return self._terms[self.leading_monomial()]

    def coefficient(self, exp):
        return self._terms.get(tuple(exp), gmpy2.mpq(0))

    # arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionError(
                    f"polynomials in {self.nvars} and {other.nvars} variables")
            return other
        try:
            return Poly.const(other, self.nvars)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp)
            if v is None:
                out[exp] = c
            else:
                v = v + c
                if v:
                    out[exp] = v
                else:
                    del out[exp]
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return Poly._raw(self.nvars, {})
        out = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(map(add, ea, eb))
                v = out.get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, Integral) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        c = to_scalar(c)
        if not c:
            return Poly._raw(self.nvars, {})
        return Poly._raw(self.nvars, {e: v * c for e, v in self._terms.items()})

    def mul_monomial(self, exp, coeff=1):
        coeff = to_scalar(coeff)
        if not coeff:
            return Poly._raw(self.nvars, {})
        return Poly._raw(self.nvars, {
            tuple(x + y for x, y in zip(e, exp)): c * coeff
            for e, c in self._terms.items()})

    def monic(self):
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    # calculus and substitution -----------------------------------------

    def diff(self, index):
        """Partial derivative with respect to variable ``index``."""
        if not 0 <= index < self.nvars:
            raise DimensionError(f"variable index {index} out of range")
        out = {}
        for exp, c in self._terms.items():
            k = exp[index]
            if k:
                e = list(exp)
                e[index] = k - 1
                out[tuple(e)] = c * k
        return Poly._raw(self.nvars, out)

    def gradient(self):
        return [self.diff(j) for j in range(self.nvars)]

    def subs(self, images):
        """Compose with a polynomial map.

        ``images`` holds one polynomial per variable of ``self``; all images
        share a common variable count which becomes the result's.
        """
        images = list(images)
        if len(images) != self.nvars:
            raise DimensionError(
                f"need {self.nvars} images for substitution, got {len(images)}")
        if not images:
            raise DimensionError("substitution into a 0-variable polynomial needs an explicit "
                                 "target variable count; use subs_into")
        return self.subs_into(images, images[0].nvars)

    def subs_into(self, images, nvars):
        images = list(images)
        if len(images) != self.nvars:
            raise DimensionError(
                f"need {self.nvars} images for substitution, got {len(images)}")
        for im in images:
            if im.nvars != nvars:
                raise DimensionError("substitution images disagree on variable count")
        powers = [{0: Poly.one(nvars)} for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        result = Poly.zero(nvars)
        for exp, c in self._terms.items():
            term = Poly.const(c, nvars)
            for i, k in enumerate(exp):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def embed(self, nvars, offset=0):
        """View as a polynomial in ``nvars`` variables, shifting indices by ``offset``."""
        if offset < 0 or offset + self.nvars > nvars:
            raise DimensionError("embedding does not fit")
        pad_after = nvars - offset - self.nvars
        return Poly._raw(nvars, {
            (0,) * offset + e + (0,) * pad_after: c for e, c in self._terms.items()})

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple, np.ndarray)):
            point = point[0]
        return self.eval(point)

    def eval(self, point):
        """Evaluate at ``point``.

        Exact rationals (ints, ``Fraction``, ``mpq``, ``"p/q"`` strings) give an
        exact ``mpq``; if any coordinate is a float the result is a float.
        """
        point = list(point)
        if len(point) != self.nvars:
            raise DimensionError(
                f"point of length {len(point)} for polynomial in {self.nvars} variables")
        if any(isinstance(x, (float, np.floating)) for x in point):
            xs = [float(x) for x in point]
            total = 0.0
            for exp, c in self._terms.items():
                term = float(c)
                for x, k in zip(xs, exp):
                    if k:
                        term *= x ** k
                total += term
            return total
        xs = [to_scalar(x) for x in point]
        total = gmpy2.mpq(0)
        for exp, c in self._terms.items():
            term = c
            for x, k in zip(xs, exp):
                if k:
                    term = term * x ** k
            total += term
        return total

    def compile(self):
        """Return a vectorised float evaluator ``f(X) -> values`` for X of shape (N, n)."""
        if not self._terms:
            return lambda X: np.zeros(np.asarray(X, dtype=float).shape[0])
        exps = np.array(list(self._terms.keys()), dtype=float).reshape(len(self._terms), self.nvars)
        coeffs = np.array([float(c) for c in self._terms.values()])

        def evaluate(X):
            X = np.asarray(X, dtype=float)
            if self.nvars == 0:
                return np.full(X.shape[0], coeffs.sum())
            mons = np.prod(X[:, None, :] ** exps[None, :, :], axis=2)
            return mons @ coeffs

        return evaluate

    # comparison / hashing / text ---------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            c = to_scalar(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({(0,) * self.nvars: c} if c else {})

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.nvars, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def to_string(self, names=None):
        """Canonical text in decreasing grevlex order, e.g. ``x^2 - 1/2*x*y + 3``."""
        if names is None:
            names = default_names(self.nvars)
        if len(names) != self.nvars:
            raise DimensionError("wrong number of variable names")
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self.items():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}"
                for i, k in enumerate(exp) if k)
            mag = abs(c)
            if not mono:
                body = _format_scalar(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_format_scalar(mag)}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Poly({self.nvars}, {self.to_string()!r})"

    def __reduce__(self):
        return (Poly, (self.nvars, dict(self._terms)))


def default_names(n):
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i}" for i in range(n)]


def variables(n):
    """The coordinate functions ``x_0 .. x_{n-1}`` as polynomials."""
    return [Poly.var(i, n) for i in range(n)]
