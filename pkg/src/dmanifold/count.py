"""Signed virtual counts of compact virtual-dimension-0 standard models.

The section ``s`` is replaced by ``s - eps*u`` for a random unit vector ``u``;
the zeros of the perturbed section in a box are located by Newton iteration
started from a uniform grid, and each transverse zero contributes
``sign det ds~``. The count is accepted only if every ``(seed, eps)`` replica
gives the same value.
"""

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import CountError, DimensionError
from .fibre import fibre_product
from .polymatrix import jacobian

__all__ = ["CountProblem", "CountResult", "virtual_count", "intersection_number", "find_zeros"]

log = logging.getLogger(__name__)

MAX_DIM = 3


@dataclass(frozen=True)
class CountProblem:
    """Inputs for :func:`virtual_count`.

    ``box`` is a sequence of ``(lo, hi)`` pairs, one per variable. ``margin`` is
    the minimum of ``|s|`` required on the box boundary; it defaults to four
    times the largest perturbation.
    """

    X: object
    box: tuple
    epsilons: tuple = (1e-3, 2e-3, 4e-3)
    seeds: tuple = (0, 1, 2, 3, 4)
    grid: int = 32
    newton_iterations: int = 50
    newton_tol: float = 1e-12
    dedupe_radius: float = 1e-6
    det_threshold: float = 1e-9
    max_resamples: int = 5
    margin: float = None


@dataclass
class CountResult:
    count: int
    replicas: list = field(default_factory=list)

    def as_dict(self):
        return {"count": self.count, "replicas": self.replicas}


class _Section:
    """Vectorised float evaluators for a polynomial section and its Jacobian."""

    def __init__(self, s, n):
        self.k = len(s)
        self.n = n
        self._s = [p.compile() for p in s]
        jac = jacobian(s, n)
        self._j = [[jac[i, j].compile() for j in range(n)] for i in range(self.k)]

    def values(self, X):
        return np.stack([f(X) for f in self._s], axis=1)

    def jacobians(self, X):
        out = np.empty((X.shape[0], self.k, self.n))
        for i, row in enumerate(self._j):
            for j, f in enumerate(row):
                out[:, i, j] = f(X)
        return out


def _grid(box, density):
    axes = [np.linspace(lo, hi, density) for lo, hi in box]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _boundary_grid(box, density):
    pts = []
    n = len(box)
    for axis in range(n):
        for end in (0, 1):
            sub = [b for a, b in enumerate(box) if a != axis]
            face = _grid(sub, density) if sub else np.zeros((1, 0))
            col = np.full((face.shape[0], 1), box[axis][end], dtype=float)
            pts.append(np.concatenate([face[:, :axis], col, face[:, axis:]], axis=1))
    return np.concatenate(pts, axis=0)


def _newton(sec, shift, X, iterations, tol):
    """Damped Newton on ``s(x) - shift`` from every row of ``X``."""
    X = X.copy()
    F = sec.values(X) - shift
    norm = np.linalg.norm(F, axis=1)
    for _ in range(iterations):
        active = norm > tol
        if not active.any():
            break
        J = sec.jacobians(X[active])
        try:
            step = np.linalg.solve(J, -F[active][..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = np.stack([np.linalg.lstsq(j, -f, rcond=None)[0]
                             for j, f in zip(J, F[active])])
        lam = np.ones(step.shape[0])
        base = norm[active]
        Xa = X[active]
        best_x, best_f, best_n = Xa.copy(), F[active].copy(), base.copy()
        pending = np.ones(step.shape[0], dtype=bool)
        for _ in range(12):
            trial = Xa + lam[:, None] * step
            ft = sec.values(trial) - shift
            nt = np.linalg.norm(ft, axis=1)
            better = pending & np.isfinite(nt) & (nt < base)
            best_x[better], best_f[better], best_n[better] = trial[better], ft[better], nt[better]
            pending &= ~better
            if not pending.any():
                break
            lam[pending] *= 0.5
        X[active], F[active], norm[active] = best_x, best_f, best_n
    return X, norm


def find_zeros(s, n, box, shift, *, grid=32, iterations=50, tol=1e-12, radius=1e-6):
    """Zeros of ``s(x) - shift`` inside ``box``, sorted, with ``det ds`` at each."""
    sec = _Section(s, n)
    X0 = _grid(box, grid)
    X, norm = _newton(sec, shift, X0, iterations, tol)
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])
    scale = max(1.0, float(np.max(np.abs(shift))) if np.size(shift) else 1.0)
    ok = (norm <= max(tol, 1e-10) * scale) & np.all(X >= lo, axis=1) & np.all(X <= hi, axis=1)
    zeros = []
    for x in X[ok][np.lexsort(X[ok].T[::-1])] if ok.any() else []:
        if not any(np.linalg.norm(x - z) <= radius for z in zeros):
            zeros.append(x)
    if not zeros:
        return np.zeros((0, n)), np.zeros(0)
    Z = np.array(zeros)
    dets = np.linalg.det(sec.jacobians(Z)) if n else np.ones(len(Z))
    return Z, dets


def _check_problem(p):
    X = p.X
    if X.n != X.k:
        raise DimensionError(f"virtual counts need vdim 0, got n={X.n}, k={X.k}")
    if X.n > MAX_DIM:
        raise DimensionError(f"counting is limited to n <= {MAX_DIM}")
    if len(p.box) != X.n:
        raise DimensionError("box must have one interval per variable")
    if any(lo >= hi for lo, hi in p.box):
        raise DimensionError("box intervals must satisfy lo < hi")
    if not p.epsilons or not p.seeds:
        raise DimensionError("need at least one epsilon and one seed")


def virtual_count(p):
    """Signed count of zeros of a generic small perturbation of the section.

    Raises :class:`CountError` on a boundary-margin violation, on persistent
    non-transverse zeros, or when replicas disagree.
    """
    _check_problem(p)
    X = p.X
    n = X.n
    box = [tuple(map(float, b)) for b in p.box]
    if n == 0:
        # a point: the section has no components and the point is its own zero
        c = X.orient
        return CountResult(c, [{"seed": s, "epsilon": e, "count": c, "zeros": [[]], "signs": [1],
                                "resamples": 0} for s in p.seeds for e in p.epsilons])
    sec = _Section(X.s, n)
    eps_max = max(p.epsilons)
    margin = p.margin if p.margin is not None else 4 * eps_max
    boundary = _boundary_grid(box, max(p.grid, 2))
    bmin = float(np.min(np.linalg.norm(sec.values(boundary), axis=1)))
    if bmin <= margin:
        raise CountError("zero locus is not safely inside the box",
                         {"boundary_min_norm": bmin, "margin": margin})
    if X.domain:
        G = _grid(box, min(p.grid, 16))
        for q in X.domain:
            if np.min(q.compile()(G)) <= 0:
                raise CountError("box is not contained in the model's domain",
                                 {"inequality": str(q)})

    replicas = []
    for seed, eps in itertools.product(p.seeds, p.epsilons):
        rng = np.random.default_rng(seed)
        for attempt in range(p.max_resamples + 1):
            u = rng.standard_normal(n)
            u /= np.linalg.norm(u)
            Z, dets = find_zeros(X.s, n, box, eps * u, grid=p.grid,
                                 iterations=p.newton_iterations, tol=p.newton_tol,
                                 radius=p.dedupe_radius)
            if np.all(np.abs(dets) > p.det_threshold):
                break
        else:
            raise CountError("non-transverse zeros persist after resampling",
                             {"seed": seed, "epsilon": eps, "zeros": Z.tolist()})
        signs = [int(np.sign(d)) for d in dets]
        replicas.append({
            "seed": int(seed), "epsilon": float(eps), "resamples": attempt,
            "direction": [float(x) for x in u],
            "zeros": [[float(x) for x in z] for z in Z],
            "signs": signs,
            "count": X.orient * sum(signs),
        })
    values = sorted({r["count"] for r in replicas})
    if len(values) != 1:
        raise CountError("replicas disagree", {"counts": [r["count"] for r in replicas],
                                               "replicas": replicas})
    return CountResult(values[0], replicas)


def intersection_number(X, f, Xp, fp, p, box, **options):
    """Count of ``X x_{f, R^p, f'} X'`` for ``vdim X + vdim X' = p``.

    ``box`` covers the variables of ``X`` followed by those of ``X'``.
    """
    if X.vdim + Xp.vdim - p != 0:
        raise DimensionError("the fibre product must have virtual dimension 0")
    data = fibre_product(X, f, Xp, fp, p)
    return virtual_count(CountProblem(data.W, tuple(box), **options))
