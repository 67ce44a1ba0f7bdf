"""Ideals, reduced Groebner bases and normal forms (grevlex).

Every :class:`Ideal` computes its reduced Groebner basis at construction, so
membership and normal forms are canonical. The basis computation is
Buchberger's algorithm with the Gebauer-Moeller pair criteria and a hard cap
on the number of S-polynomial reductions.
"""

import heapq
from functools import lru_cache
from operator import add, sub

import gmpy2

from .errors import DimensionError, GroebnerCapExceeded
from .poly import Poly, monomial_key

__all__ = [
    "DEFAULT_MAX_STEPS",
    "Ideal",
    "normal_form",
    "ideal_member",
    "ideal_square",
    "spoly",
    "buchberger",
    "substitute_mod",
    "groebner_certificate",
]

DEFAULT_MAX_STEPS = 20000


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Reducer:
    """Reduction data for a list of monic polynomials."""

    def __init__(self, polys):
        self.entries = []
        for g in polys:
            lm = g.leading_monomial()
            tail = [(e, c) for e, c in g._terms.items() if e != lm]
            self.entries.append((lm, tail))

    def find(self, mono):
        for lm, tail in self.entries:
            if _divides(lm, mono):
                return lm, tail
        return None

    def reduce(self, p, full=True):
        """Remainder of ``p`` on division by the stored polynomials.

        With ``full=False`` only the leading term is reduced until it is
        irreducible (top reduction).
        """
        n = p.nvars
        work = dict(p._terms)
        heap = [(_neg_key(e), e) for e in work]
        heapq.heapify(heap)
        remainder = {}
        while heap:
            _, mono = heapq.heappop(heap)
            c = work.pop(mono, None)
            if c is None:
                continue
            hit = self.find(mono)
            if hit is None:
                remainder[mono] = c
                if not full:
                    for e, v in work.items():
                        remainder[e] = v
                    break
                continue
            lm, tail = hit
            shift = tuple(map(sub, mono, lm))
            for e, v in tail:
                t = tuple(map(add, e, shift))
                old = work.get(t)
                if old is None:
                    work[t] = -c * v
                    heapq.heappush(heap, (_neg_key(t), t))
                else:
                    new = old - c * v
                    if new:
                        work[t] = new
                    else:
                        del work[t]
        return Poly._raw(n, remainder)


@lru_cache(maxsize=1 << 16)
def _neg_key(e):
    deg, rev = monomial_key(e)
    return (-deg, tuple(-x for x in rev))


def spoly(f, g):
    """S-polynomial of ``f`` and ``g``."""
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = _lcm(lf, lg)
    a = f.mul_monomial(tuple(x - y for x, y in zip(lcm, lf)), 1 / f.leading_coefficient())
    b = g.mul_monomial(tuple(x - y for x, y in zip(lcm, lg)), 1 / g.leading_coefficient())
    return a - b


def _update(G, lms, pairs, h_index):
    """Gebauer-Moeller update after appending ``G[h_index]``."""
    lmh = lms[h_index]
    C = list(range(h_index))
    D = []
    while C:
        i = C.pop()
        lcm_ih = _lcm(lms[i], lmh)
        if _coprime(lms[i], lmh):
            D.append(i)
            continue
        dominated = False
        for j in C + D:
            if _divides(_lcm(lms[j], lmh), lcm_ih):
                dominated = True
                break
        if not dominated:
            D.append(i)
    E = [i for i in D if not _coprime(lms[i], lmh)]
    kept = []
    for (a, b) in pairs:
        lcm_ab = _lcm(lms[a], lms[b])
        if (_divides(lmh, lcm_ab)
                and _lcm(lms[a], lmh) != lcm_ab
                and _lcm(lms[b], lmh) != lcm_ab):
            continue
        kept.append((a, b))
    kept.extend((i, h_index) for i in E)
    return kept


def buchberger(polys, max_steps=DEFAULT_MAX_STEPS):
    """Reduced Groebner basis of the ideal generated by ``polys``.

    Returns a list of monic polynomials sorted by increasing leading monomial.
    Raises :class:`GroebnerCapExceeded` after ``max_steps`` S-polynomial
    reductions.
    """
    polys = [p for p in polys if p]
    if not polys:
        return []
    n = polys[0].nvars
    G = []
    lms = []
    pairs = []
    alive = []
    for p in sorted(polys, key=lambda q: monomial_key(q.leading_monomial())):
        r = _Reducer([G[i] for i in range(len(G)) if alive[i]]).reduce(p)
        if not r:
            continue
        r = r.monic()
        if r.is_constant():
            return [Poly.one(n)]
        G.append(r)
        lms.append(r.leading_monomial())
        alive.append(True)
        pairs = _update(G, lms, pairs, len(G) - 1)
    steps = 0
    while pairs:
        pairs.sort(key=lambda ab: monomial_key(_lcm(lms[ab[0]], lms[ab[1]])), reverse=True)
        a, b = pairs.pop()
        steps += 1
        if steps > max_steps:
            raise GroebnerCapExceeded(max_steps, len(G))
        s = spoly(G[a], G[b])
        r = _Reducer(G).reduce(s)
        if not r:
            continue
        r = r.monic()
        if r.is_constant():
            return [Poly.one(n)]
        G.append(r)
        lms.append(r.leading_monomial())
        alive.append(True)
        pairs = _update(G, lms, pairs, len(G) - 1)
    return _reduce_basis(G)


def _reduce_basis(G):
    # minimal: drop elements whose leading monomial is divisible by another's
    G = sorted(G, key=lambda g: monomial_key(g.leading_monomial()))
    minimal = []
    for g in G:
        lm = g.leading_monomial()
        if any(_divides(h.leading_monomial(), lm) for h in minimal):
            continue
        minimal = [h for h in minimal if not _divides(lm, h.leading_monomial())]
        minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lm = g.leading_monomial()
        tail = Poly._raw(g.nvars, {e: c for e, c in g._terms.items() if e != lm})
        tail = _Reducer(others).reduce(tail) if others else tail
        reduced.append((tail + Poly._raw(g.nvars, {lm: gmpy2.mpq(1)})).monic())
    return sorted(reduced, key=lambda g: monomial_key(g.leading_monomial()))


class Ideal:
    """An ideal of Q[x_0..x_{n-1}] with its reduced grevlex Groebner basis.

    Parameters
    ----------
    generators : sequence of Poly
        Generators, all in ``nvars`` variables.
    nvars : int, optional
        Required when ``generators`` is empty.
    max_steps : int
        Cap on S-polynomial reductions during the basis computation.
    """

    __slots__ = ("nvars", "generators", "basis", "_reducer", "_nf_cache")

    def __init__(self, generators, nvars=None, max_steps=DEFAULT_MAX_STEPS):
        generators = tuple(generators)
        if nvars is None:
            if not generators:
                raise DimensionError("nvars is required for an ideal with no generators")
            nvars = generators[0].nvars
        for g in generators:
            if not isinstance(g, Poly):
                raise TypeError("ideal generators must be Poly instances")
            if g.nvars != nvars:
                raise DimensionError(
                    f"generator in {g.nvars} variables for an ideal in {nvars} variables")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "basis", tuple(buchberger(generators, max_steps)))
        object.__setattr__(self, "_reducer", _Reducer(self.basis))
        object.__setattr__(self, "_nf_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Ideal is immutable")

    @classmethod
    def zero(cls, nvars):
        return cls((), nvars)

    def is_zero(self):
        return not self.basis

    def is_unit(self):
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def normal_form(self, p):
        if not isinstance(p, Poly):
            raise TypeError("normal_form expects a Poly")
        if p.nvars != self.nvars:
            raise DimensionError(
                f"polynomial in {p.nvars} variables, ideal in {self.nvars} variables")
        if not self.basis or not p:
            return p
        cached = self._nf_cache.get(p)
        if cached is None:
            cached = self._reducer.reduce(p)
            if len(self._nf_cache) < 100000:
                self._nf_cache[p] = cached
        return cached

    def contains(self, p):
        return not self.normal_form(p)

    __contains__ = contains

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.basis)

    def square(self):
        return ideal_square(self)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.nvars == other.nvars and self.basis == other.basis

    def __hash__(self):
        return hash((self.nvars, self.basis))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"Ideal(<{gens}> in {self.nvars} variables)"


def normal_form(p, ideal):
    """Unique remainder of ``p`` modulo the reduced basis of ``ideal``."""
    return ideal.normal_form(p)


def ideal_member(p, ideal):
    return ideal.contains(p)


def ideal_square(ideal, max_steps=DEFAULT_MAX_STEPS):
    """The ideal generated by all pairwise products of the generators."""
    gens = [g for g in ideal.generators if g]
    products = [gens[i] * gens[j] for i in range(len(gens)) for j in range(i, len(gens))]
    return Ideal(products, ideal.nvars, max_steps=max_steps)


def groebner_certificate(ideal):
    """Independent checks that ``ideal.basis`` is the reduced Groebner basis of its generators.

    Returns a dict of booleans: every S-polynomial of the basis reduces to zero,
    every generator reduces to zero, and each basis element is monic with no
    term divisible by another basis element's leading monomial.
    """
    B = list(ideal.basis)
    reducer = _Reducer(B) if B else None

    def nf(p):
        return reducer.reduce(p) if reducer else p

    spolys = all(not nf(spoly(B[i], B[j])) for i in range(len(B)) for j in range(i + 1, len(B)))
    generators = all(not nf(g) for g in ideal.generators)
    lms = [g.leading_monomial() for g in B]
    reduced = all(
        g.leading_coefficient() == 1
        and not any(_divides(lms[j], e) for j in range(len(B)) if j != i for e in g._terms)
        for i, g in enumerate(B))
    return {"s_polynomials_reduce_to_zero": spolys, "generators_reduce_to_zero": generators,
            "basis_is_reduced": reduced,
            "ok": spolys and generators and reduced}


def substitute_mod(p, images, ideal):
    """Normal form of ``p(images)`` modulo ``ideal``, reducing as it goes.

    Equal to ``ideal.normal_form(p.subs_into(images, ideal.nvars))`` because
    normal forms respect sums and products, but intermediate powers never grow.
    """
    n = ideal.nvars
    images = [ideal.normal_form(q) for q in images]
    if len(images) != p.nvars:
        raise DimensionError(f"need {p.nvars} images for substitution, got {len(images)}")
    powers = [{0: Poly.one(n), 1: q} for q in images]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = ideal.normal_form(power(i, k - 1) * images[i])
        return cache[k]

    total = {}
    for exp, c in p._terms.items():
        term = ideal.normal_form(Poly.const(c, n))
        for i, k in enumerate(exp):
            if k:
                term = ideal.normal_form(term * power(i, k))
        for e, v in term._terms.items():
            total[e] = total.get(e, 0) + v
    return Poly._raw(n, {e: v for e, v in total.items() if v})
