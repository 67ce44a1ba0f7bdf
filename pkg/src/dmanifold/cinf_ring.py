"""Finitely generated rings Q[x]/I standing in for C-infinity rings C(R^n)/I.

A :class:`FgRing` is a presentation; its elements are represented by
polynomials and compared through normal forms. Ring morphisms are given by the
images of the source generators and are validated when constructed.
"""

from dataclasses import dataclass

from .errors import DimensionError, InvalidMorphism
from .groebner import DEFAULT_MAX_STEPS, Ideal
from .poly import Poly
from .polymatrix import PolyMatrix, jacobian

__all__ = [
    "FgRing",
    "RingMor",
    "CotModule",
    "quotient_op",
    "cotangent",
    "cotangent_pushforward",
]


class FgRing:
    """The presentation ``Q[x_0..x_{n-1}] / I``."""

    __slots__ = ("n", "ideal")

    def __init__(self, n, ideal=None):
        if ideal is None:
            ideal = Ideal.zero(n)
        elif not isinstance(ideal, Ideal):
            ideal = Ideal(list(ideal), n)
        if ideal.nvars != n:
            raise DimensionError(f"ideal in {ideal.nvars} variables for a ring in {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "ideal", ideal)

    def __setattr__(self, name, value):
        raise AttributeError("FgRing is immutable")

    @classmethod
    def from_generators(cls, n, generators, max_steps=DEFAULT_MAX_STEPS):
        return cls(n, Ideal(list(generators), n, max_steps=max_steps))

    def element(self, p):
        """Canonical representative of ``p`` in this ring."""
        return self.ideal.normal_form(p)

    def equal(self, a, b):
        return self.ideal.contains(a - b)

    def gens(self):
        return [Poly.var(i, self.n) for i in range(self.n)]

    def __eq__(self, other):
        if not isinstance(other, FgRing):
            return NotImplemented
        return self.n == other.n and self.ideal == other.ideal

    def __hash__(self):
        return hash((self.n, self.ideal))

    def __repr__(self):
        return f"FgRing(n={self.n}, {self.ideal!r})"


def quotient_op(f, args, ring):
    """Apply the operation of the polynomial ``f`` to ring elements ``args``.

    >>> from dmanifold.parse import parse_poly
    >>> R = FgRing.from_generators(1, [parse_poly("x^2", ["x"])])
    >>> quotient_op(parse_poly("u*v", ["u", "v"]), [parse_poly("x", ["x"])] * 2, R)
    Poly(1, '0')
    """
    args = list(args)
    if len(args) != f.nvars:
        raise DimensionError(f"operation of arity {f.nvars} applied to {len(args)} arguments")
    return ring.element(f.subs_into(args, ring.n))


class RingMor:
    """Morphism ``Q[y]/J -> Q[x]/I`` sending ``y_i`` to ``images[i]``.

    Raises :class:`InvalidMorphism` unless every generator of ``J`` maps into ``I``.
    """

    __slots__ = ("source", "target", "images")

    def __init__(self, source, target, images):
        images = tuple(images)
        if len(images) != source.n:
            raise DimensionError(f"need {source.n} generator images, got {len(images)}")
        for p in images:
            if p.nvars != target.n:
                raise DimensionError("generator image has the wrong variable count")
        bad = []
        for idx, c in enumerate(source.ideal.generators):
            r = target.ideal.normal_form(c.subs_into(images, target.n))
            if r:
                bad.append({"generator": idx, "residual": str(r)})
        if bad:
            raise InvalidMorphism("source ideal does not map into target ideal", bad)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", tuple(target.element(p) for p in images))

    def __setattr__(self, name, value):
        raise AttributeError("RingMor is immutable")

    @classmethod
    def identity(cls, ring):
        return cls(ring, ring, ring.gens())

    def __call__(self, p):
        return self.target.element(p.subs_into(self.images, self.target.n))

    def then(self, other):
        """The composite ``other o self`` (apply ``self`` first)."""
        if self.target != other.source:
            raise DimensionError("morphisms are not composable")
        return RingMor(self.source, other.target, [other(p) for p in self.images])

    def __eq__(self, other):
        if not isinstance(other, RingMor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))


@dataclass(frozen=True)
class CotModule:
    """Presentation of the cotangent module: free on ``dx_0..dx_{rank-1}``
    modulo one relation row ``dg`` per generator ``g`` of the ideal."""

    ring: FgRing
    rank: int
    relations: PolyMatrix


def cotangent(ring):
    gens = list(ring.ideal.generators)
    if gens:
        rel = jacobian(gens, ring.n)
    else:
        rel = PolyMatrix.zeros(0, ring.n, ring.n)
    return CotModule(ring, ring.n, rel)


def cotangent_pushforward(phi):
    """Matrix of ``dy_i -> sum_j d(images_i)/dx_j dx_j``, reduced mod the target ideal.

    Row ``i`` is the image of ``dy_i``; the result is ``m x n``.
    """
    return jacobian(phi.images, phi.target.n).reduce(phi.target.ideal)


def compose_pushforwards(first, second):
    """Pushforward of ``second o first`` assembled from the two factors.

    Equals ``cotangent_pushforward(first.then(second))`` by the chain rule.
    """
    inner = cotangent_pushforward(first).subs(second.images, second.target.n)
    return (inner @ cotangent_pushforward(second)).reduce(second.target.ideal)
