"""Random standard models and morphisms that come with exact witness points.

Sections are built to vanish at a random rational point, so every generated
object can be checked pointwise without solving polynomial systems.
"""

from fractions import Fraction

import numpy as np

from dmanifold import Poly, PolyMatrix, StdModel, StdMor
from dmanifold.laws import random_poly


def vanishing(rng, n, degree=3, terms=3):
    p = random_poly(rng, n, degree, terms)
    return p - Poly.const(p.constant_term(), n)


def rational(rng):
    return Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4)))


def translate(polys, v, n):
    """``p(x - v)`` for each ``p``."""
    images = [Poly.var(i, n) - Poly.const(v[i], n) for i in range(n)]
    return [p.subs_into(images, n) for p in polys]


def _invertible(rng, size):
    while True:
        A = rng.integers(-2, 3, size=(size, size))
        if size == 0 or round(np.linalg.det(A)) in (1, -1):
            return A


def _inverse(A):
    inv = np.rint(np.linalg.inv(A)).astype(int) if len(A) else A
    assert np.array_equal(A @ inv, np.eye(len(A), dtype=int))
    return inv


def witnessed_morphism(rng, max_dim=3):
    """``(f, v)`` with ``f`` a valid morphism and ``v`` a zero of its source."""
    m = int(rng.integers(1, max_dim + 1))
    l = int(rng.integers(0, 2))
    t = [vanishing(rng, m) + Poly.var(int(rng.integers(0, m)), m) for _ in range(l)]
    etale_shape = rng.random() < 0.4
    n = m if etale_shape else int(rng.integers(1, max_dim + 1))
    extras = 0 if etale_shape else int(rng.integers(0, max_dim - l + 1))
    if etale_shape:
        L = _invertible(rng, m)
        h = [sum((Poly.var(j, n).scale(int(L[i][j])) for j in range(n) if L[i][j]), Poly.zero(n))
             for i in range(m)]
    else:
        h = [vanishing(rng, n, 2, 3) for _ in range(m)]
    A = _invertible(rng, l)
    t_h = [q.subs_into(h, n) for q in t]
    s = [sum((t_h[j].scale(int(A[i][j])) for j in range(l) if A[i][j]), Poly.zero(n))
         for i in range(l)]
    s += [vanishing(rng, n) + Poly.var(int(rng.integers(0, n)), n) for _ in range(extras)]
    k = len(s)
    Ai = _inverse(A)
    hhat = [[Poly.const(int(Ai[i][j]), n) for j in range(l)] + [Poly.zero(n)] * extras
            for i in range(l)]
    if k:
        for row in hhat:
            c = int(rng.integers(0, k))
            row[c] = row[c] + vanishing(rng, n, 1, 1) * s[int(rng.integers(0, k))]
        h = [q + vanishing(rng, n, 1, 1) * s[int(rng.integers(0, k))] * s[int(rng.integers(0, k))]
             for q in h]
    # move the witness away from the origin: conjugate by translations
    v = [rational(rng) for _ in range(n)]
    w = [rational(rng) for _ in range(m)]
    X = StdModel(n, k, translate(s, v, n))
    Y = StdModel(m, l, translate(t, w, m))
    f = [q + Poly.const(c, n) for q, c in zip(translate(h, v, n), w)]
    fhat = PolyMatrix([translate(row, v, n) for row in hhat], n, l, k)
    return StdMor(X, Y, f, fhat), [str(c) for c in v]


def witnessed_model(rng, max_dim=3):
    n = int(rng.integers(0, max_dim + 1))
    k = int(rng.integers(0, max_dim + 1))
    s = [vanishing(rng, n) + (Poly.var(int(rng.integers(0, n)), n) if n and rng.random() < .5
                              else Poly.zero(n)) for _ in range(k)]
    v = [rational(rng) for _ in range(n)]
    return StdModel(n, k, translate(s, v, n)), v


def witnessed_fibre_inputs(rng, max_dim=2):
    """``(X, g, Y, h, point)`` with ``point`` a zero of the fibre product."""
    X, v = witnessed_model(rng, max_dim)
    Y, w = witnessed_model(rng, max_dim)
    p = int(rng.integers(0, 3))
    target = [rational(rng) for _ in range(p)]
    g = [q + Poly.const(c, X.n) for q, c in zip(translate([vanishing(rng, X.n, 2) for _ in range(p)],
                                                          v, X.n), target)]
    h = [q + Poly.const(c, Y.n) for q, c in zip(translate([vanishing(rng, Y.n, 2) for _ in range(p)],
                                                          w, Y.n), target)]
    return X, g, Y, h, [str(c) for c in v + w]
