"""Fibre products of standard models over ``R^p`` and their orientations.

For ``g: X -> R^p`` and ``h: Y -> R^p`` the product is the standard model
``W = S_{V_X x V_Y, E_X + E_Y + R^p, (s(x), t(y), g(x) - h(y))}`` with
projections ``e = (x, [1 | 0 | 0])`` and ``f = (y, [0 | 1 | 0])``. The
2-morphism ``g o e => h o f`` has matrix ``[0 | 0 | -1]``.

Orientation convention
----------------------
Orient ``W`` by ``o_W = o_X o_Y (-1)^(vdim X (rank E_Y + p))`` relative to the
standard bases of ``Lambda^top E_W`` and ``Lambda^top T*V_W`` in the block
order above. With isomorphism signs counted as ``sign det Df * sign det fhat``
this choice satisfies the commutativity law with sign
``(-1)^((vdim X - p)(vdim Y - p))``, strict associativity, and the
mixed-product law with sign ``(-1)^(vdim Z (vdim Y + vdim W))``.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .linalg import DEFAULT_PIVOT_TOL, rank
from .polymatrix import PolyMatrix
from .standard import (
    StdModel, StdMor, StdTwoMor, cotangent_complex, omega, pullback_vmor, variables,
)
from .witness import as_witness

__all__ = [
    "FibreData",
    "fibre_product",
    "orientation_parity",
    "orient_fibre_product",
    "swap_sign",
    "d_transverse_at",
    "manifold_target",
    "map_to_euclidean",
    "cotangent_exact_at",
    "iso_sign_at",
]

log = logging.getLogger(__name__)


def manifold_target(p):
    """The manifold ``R^p`` as the standard model ``S_{R^p,0,0}``."""
    return StdModel(p, 0, ())


def map_to_euclidean(X, g):
    """The 1-morphism ``(g, 0): X -> R^p`` given polynomial components ``g``."""
    g = list(g)
    return StdMor(X, manifold_target(len(g)), g, PolyMatrix.zeros(0, X.k, X.n))


def orientation_parity(vdim_x, rank_y, p):
    """Exponent of the sign ``sigma`` in the fibre-product orientation convention."""
    return (vdim_x * (rank_y + p)) % 2


def orient_fibre_product(orient_x, orient_y, vdim_x, rank_y, p):
    """Orientation sign of ``X x_{R^p} Y``.

    ``sigma`` depends on ``rank E_Y`` and not only on virtual dimensions: the
    bundle blocks ``E_Y`` and ``R^p`` of ``W`` sit between ``E_X`` and the base.
    """
    if orient_x not in (1, -1) or orient_y not in (1, -1):
        raise ValueError("orientations are +1 or -1")
    sigma = -1 if orientation_parity(vdim_x, rank_y, p) else 1
    return orient_x * orient_y * sigma


def swap_sign(n_x, k_x, n_y, k_y, p):
    """Sign of the isomorphism ``X x_{R^p} Y -> Y x_{R^p} X`` swapping the factors.

    The base swap contributes ``(-1)^(n_X n_Y)``; the bundle map swaps the
    ``E_X``, ``E_Y`` blocks and negates the ``R^p`` block since ``g - h`` becomes
    ``h - g``.
    """
    return -1 if (n_x * n_y + k_x * k_y + p) % 2 else 1


def _names(X, Y):
    names = list(X.names) + list(Y.names)
    if len(set(names)) == len(names):
        return names
    return [f"{a}_1" for a in X.names] + [f"{b}_2" for b in Y.names]


@dataclass(frozen=True)
class FibreData:
    X: StdModel
    Y: StdModel
    p: int
    g: tuple
    h: tuple
    W: StdModel
    e: StdMor
    f: StdMor
    eta: StdTwoMor

    @property
    def vdim(self):
        return self.W.vdim


def fibre_product(X, g, Y, h, p=None):
    """Construct ``W = X x_{g, R^p, h} Y`` with its projections and 2-morphism."""
    g, h = tuple(g), tuple(h)
    if p is None:
        p = len(g)
    if len(g) != p or len(h) != p:
        raise DimensionError(f"maps must have {p} components")
    for q in g:
        if q.nvars != X.n:
            raise DimensionError("g must be a map on X")
    for q in h:
        if q.nvars != Y.n:
            raise DimensionError("h must be a map on Y")
    nx, ny, kx, ky = X.n, Y.n, X.k, Y.k
    n = nx + ny
    xs = [q.embed(n, 0) for q in X.s]
    ys = [q.embed(n, nx) for q in Y.s]
    diff = [a.embed(n, 0) - b.embed(n, nx) for a, b in zip(g, h)]
    domain = [q.embed(n, 0) for q in X.domain] + [q.embed(n, nx) for q in Y.domain]
    orient = orient_fibre_product(X.orient, Y.orient, X.vdim, ky, p)
    W = StdModel(n, kx + ky + p, xs + ys + diff, domain, orient, _names(X, Y))
    k = W.k

    def block(rows, start):
        return PolyMatrix.from_scalars(
            [[1 if j == start + i else 0 for j in range(k)] for i in range(rows)], n, rows, k)

    wvars = variables(n)
    e = StdMor(W, X, wvars[:nx], block(kx, 0))
    f = StdMor(W, Y, wvars[nx:], block(ky, kx))
    ge = map_to_euclidean(W, [q.embed(n, 0) for q in g])
    hf = map_to_euclidean(W, [q.embed(n, nx) for q in h])
    eta = StdTwoMor(ge, hf, block(p, kx + ky).scale(-1))
    return FibreData(X, Y, p, g, h, W, e, f, eta)


def d_transverse_at(g, h, pairs, *, tol=DEFAULT_PIVOT_TOL):
    """d-transversality of ``g: X -> Z`` and ``h: Y -> Z`` at witness pairs.

    ``g`` and ``h`` are :class:`StdMor` instances. At ``(v, w)`` the map
    ``alpha = [ghat(v)^T; -hhat(w)^T; dt_Z(z)^T]`` from ``E_Z*`` must have full
    column rank ``rank E_Z``. Over a manifold target ``E_Z = 0`` and this always
    holds.
    """
    if g.target != h.target:
        raise DimensionError("g and h must share a target")
    Z = g.target
    pairs = list(pairs)
    if not pairs:
        log.warning("d_transverse_at called with no witness pairs; vacuously true")
        return []
    out = []
    for v, w in pairs:
        v = g.source.check_witness(v, "first witness")
        w = h.source.check_witness(w, "second witness")
        zv, zw = g.image(v), h.image(w)
        tol_pt = max(tol, v.tolerance, w.tolerance)
        if any(abs(a - b) > tol_pt for a, b in zip(zv.coords, zw.coords)):
            raise DimensionError("witness pair does not have g(v) = h(w)")
        if Z.k == 0:
            out.append(True)
            continue
        a = np.concatenate([
            np.asarray(g.fhat.T.eval(v.coords)),
            -np.asarray(h.fhat.T.eval(w.coords)),
            np.asarray(Z.ds().T.eval(zv.coords)),
        ], axis=0)
        exact = v.exact and w.exact
        out.append(rank(a if exact else a.astype(float), tol=tol_pt) == Z.k)
    return out


def iso_sign_at(m, point):
    """``sign det Df * sign det fhat`` of an isomorphism at a point (0 if singular)."""
    if m.source.n != m.target.n or m.source.k != m.target.k:
        raise DimensionError("an isomorphism needs equal dimensions and ranks")
    pt = as_witness(point)
    out = 1
    for mat in (m.df(), m.fhat):
        if mat.rows == 0:
            continue
        d = _det(mat.eval(pt.coords))
        if d == 0:
            return 0
        out *= 1 if d > 0 else -1
    return out


def _det(a):
    a = [list(r) for r in a]
    if a and not isinstance(a[0][0], (float, np.floating)):
        n = len(a)
        det = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c] != 0), None)
            if piv is None:
                return 0
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det *= a[c][c]
            for i in range(c + 1, n):
                if a[i][c] != 0:
                    fct = a[i][c] / a[c][c]
                    a[i] = [x - fct * y for x, y in zip(a[i], a[c])]
        return det
    return float(np.linalg.det(np.asarray(a, dtype=float)))


def _coker_sequence_ranks(phi_b, phi_c, alpha, beta, tol):
    """Exactness of ``A -> coker phi_b -> coker phi_c -> 0`` at a point.

    ``alpha``, ``beta`` are matrices between the ambient spaces. Returns
    ``(composite_zero, middle_exact, surjective)``.
    """
    def rk(*blocks):
        rows = blocks[0].shape[0]
        cols = sum(b.shape[1] for b in blocks)
        if rows == 0 or cols == 0:
            return 0
        return rank(np.concatenate(blocks, axis=1), tol=tol)

    dim_b, dim_c = phi_b.shape[0], phi_c.shape[0]
    r_b, r_c = rk(phi_b), rk(phi_c)
    image = rk(phi_b, alpha) - r_b
    # kernel of coker phi_b -> coker phi_c is the preimage of im phi_c mod im phi_b
    kernel = dim_b - (rk(phi_c, beta) - r_c) - r_b
    composite_zero = rk(phi_c, beta @ alpha) == r_c
    surjective = rk(phi_c, beta) == dim_c
    return composite_zero, image == kernel, surjective


def cotangent_exact_at(data, point, *, tol=DEFAULT_PIVOT_TOL):
    """Check ``(g e)*(T*Z) -> e*(T*X) + f*(T*Y) -> T*W -> 0`` at a witness of ``W``.

    Cotangent spaces are cokernels of the cotangent complexes at the point and
    the maps are the ``f2`` blocks of omega chain maps pulled back to ``W``.
    Returns ``(composite_zero, middle_exact, surjective)``.
    """
    W = data.W
    pt = W.check_witness(point)
    exact = pt.exact
    rtol = tol if exact else max(tol, pt.tolerance)

    def ev(mat):
        a = mat.eval(pt.coords)
        return a if exact else np.asarray(a, dtype=float)

    om_e, om_f = omega(data.e), omega(data.f)
    om_g = pullback_vmor(omega(map_to_euclidean(data.X, data.g)), data.e)
    om_h = pullback_vmor(omega(map_to_euclidean(data.Y, data.h)), data.f)
    phi_b = _block_diag(ev(om_g.target.phi),
                        ev(om_h.target.phi), exact)
    phi_c = ev(cotangent_complex(W).phi)
    alpha = np.concatenate([ev(om_g.f2), -ev(om_h.f2)], axis=0)
    beta = np.concatenate([ev(om_e.f2), ev(om_f.f2)], axis=1)
    return _coker_sequence_ranks(phi_b, phi_c, alpha, beta, rtol)


def _block_diag(a, b, exact):
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]),
                   dtype=object if exact else float)
    out[:a.shape[0], :a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out
