"""Concrete isomorphisms between fibre products and their orientation signs.

Each law ``A ~ eps B`` is checked by writing down the canonical isomorphism
``A -> B`` as a standard-model 1-morphism, validating it, and comparing
``o_A * (sign of the isomorphism) * o_B`` with ``eps``.
"""

import itertools

from dmanifold import (
    Poly, PolyMatrix, StdModel, StdMor, fibre_product, iso_sign_at, validate_mor,
)


def toy_model(n, k, orient=1):
    """A model with ``n`` variables and rank ``k``; the origin is always a zero."""
    s = [Poly.var(i, n) ** 2 if i < n else Poly.zero(n) for i in range(k)]
    return StdModel(n, k, s, orient=orient)


def linear_map(X, p):
    """``p`` components, each the sum of the variables (or zero on a point)."""
    total = sum((Poly.var(i, X.n) for i in range(X.n)), Poly.zero(X.n))
    return [total] * p


def permutation(order, signs, nvars):
    """Matrix sending source block coordinate ``order[i]`` to target row ``i``."""
    k = len(order)
    rows = [[signs[i] if j == order[i] else 0 for j in range(k)] for i in range(k)]
    return PolyMatrix.from_scalars(rows, nvars, k, k)


def _iso(A, B, images, fhat):
    v = validate_mor(A, B, images, fhat)
    assert v.ok, v.violations
    return iso_sign_at(v.value, [0] * A.n)


def commutativity_eps(nx, kx, ny, ky, p, ox=1, oy=1):
    """Observed sign for ``X x_Z Y ~ eps Y x_Z X`` with ``Z = R^p``."""
    X, Y = toy_model(nx, kx, ox), toy_model(ny, ky, oy)
    A = fibre_product(X, linear_map(X, p), Y, linear_map(Y, p), p).W
    B = fibre_product(Y, linear_map(Y, p), X, linear_map(X, p), p).W
    n = A.n
    xs = [Poly.var(i, n) for i in range(n)]
    order = [kx + i for i in range(ky)] + list(range(kx)) + [kx + ky + i for i in range(p)]
    signs = [1] * (kx + ky) + [-1] * p
    sign = _iso(A, B, xs[nx:] + xs[:nx], permutation(order, signs, n))
    return A.orient * sign * B.orient


def mixed_eps(shapes, a, b):
    """Observed sign for ``V x_{YxZ} (W x X) ~ eps (V x_Y W) x_Z X`` with ``Y = R^a, Z = R^b``."""
    (nv, kv), (nw, kw), (nx, kx) = shapes
    V, W, X = (toy_model(*s) for s in shapes)
    e, f = linear_map(V, a), linear_map(V, b)
    g, h = linear_map(W, a), linear_map(X, b)
    WX = fibre_product(W, [], X, [], 0).W
    m = nw + nx
    left = fibre_product(V, e + f, WX, [q.embed(m, 0) for q in g] + [q.embed(m, nw) for q in h],
                         a + b).W
    VW = fibre_product(V, e, W, g, a).W
    right = fibre_product(VW, [q.embed(nv + nw, 0) for q in f], X, h, b).W
    n = left.n
    # left blocks E_V, E_W, E_X, R^a, R^b; right blocks E_V, E_W, R^a, E_X, R^b
    base = kv + kw
    order = (list(range(base)) + [base + kx + i for i in range(a)]
             + [base + i for i in range(kx)] + [base + kx + a + i for i in range(b)])
    sign = _iso(left, right, [Poly.var(i, n) for i in range(n)],
                permutation(order, [1] * len(order), n))
    return left.orient * sign * right.orient


def shapes_with_vdim(v, extra=(0, 1)):
    """``(n, k)`` pairs of virtual dimension ``v`` with small rank."""
    low = max(0, -v)
    return [(v + k, k) for k in (low + e for e in extra)]


VDIMS = range(-2, 4)


def commutativity_cases(ps=range(3)):
    for vx, vy, p in itertools.product(VDIMS, VDIMS, ps):
        for (nx, kx), (ny, ky) in itertools.product(shapes_with_vdim(vx), shapes_with_vdim(vy)):
            yield (nx, kx, ny, ky, p), (-1) ** ((vx - p) * (vy - p))
