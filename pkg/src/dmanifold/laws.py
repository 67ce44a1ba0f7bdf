"""Seeded random configurations and the strict 2-category law suite.

Valid configurations are built so that validity holds by construction:

* chain maps: the target of ``f`` is ``F1 = E1 + R^a`` with ``f1 = P [1; 0]`` and
  ``psi = [f2 phi | psi'] P^-1`` for a unipotent polynomial matrix ``P``, then
  ``f`` is moved along a random 2-morphism;
* standard-model morphisms are built backwards from the target: for
  ``Y = (m, l, t)`` and an affine map ``h``, the source section is
  ``(A t(h), extras)`` and ``hhat = [A^-1 | 0]``, perturbed by elements of
  ``I_s`` (for ``hhat``) and ``I_s^2`` (for ``h``).
"""

import time
from dataclasses import dataclass, field

import gmpy2
import numpy as np

from .cinf_ring import FgRing
from .errors import InvalidMorphism
from .poly import Poly
from .polymatrix import PolyMatrix
from .standard import (
    StdModel, StdMor, StdTwoMor, compose_mor, hcompose_2mor, mor_equal, two_mor_equal,
    vcompose_2mor,
)
from .vvect import VComplex, VMor, VTwoMor, compose_vmor, hcompose, vcompose

__all__ = [
    "LawReport",
    "random_poly",
    "random_matrix",
    "random_ring",
    "random_vcomplex",
    "random_vmor_from",
    "random_v2mor",
    "random_std_chain",
    "random_std_2mor",
    "vvect_laws",
    "std_laws",
    "run_law_suite",
]


def random_poly(rng, nvars, degree=3, terms=3, coeff=3):
    """Sum of up to ``terms`` random monomials of total degree at most ``degree``."""
    out = {}
    for _ in range(int(rng.integers(0, terms + 1))):
        d = int(rng.integers(0, degree + 1))
        exp = [0] * nvars
        for _ in range(d if nvars else 0):
            exp[int(rng.integers(0, nvars))] += 1
        c = int(rng.integers(-coeff, coeff + 1))
        if c:
            out[tuple(exp)] = out.get(tuple(exp), 0) + c
    return Poly(nvars, {e: c for e, c in out.items() if c})


def random_matrix(rng, rows, cols, nvars, degree=2, terms=2):
    return PolyMatrix([[random_poly(rng, nvars, degree, terms) for _ in range(cols)]
                       for _ in range(rows)], nvars, rows, cols)


def _unipotent(rng, size, nvars, steps=3):
    """A random product of elementary matrices and its inverse."""
    P = PolyMatrix.identity(size, nvars)
    Pinv = PolyMatrix.identity(size, nvars)
    if size < 2:
        return P, Pinv
    for _ in range(steps):
        i, j = rng.choice(size, 2, replace=False)
        c = random_poly(rng, nvars, 1, 2)
        E = [[Poly.one(nvars) if a == b else Poly.zero(nvars) for b in range(size)]
             for a in range(size)]
        Einv = [row[:] for row in E]
        E[i][j] = c
        Einv[i][j] = -c
        P = P @ PolyMatrix(E, nvars, size, size)
        Pinv = PolyMatrix(Einv, nvars, size, size) @ Pinv
    return P, Pinv


_RING_LIBRARY = [
    (1, ["x^2"]),
    (1, ["x^3"]),
    (1, []),
    (2, ["x^2", "y^2"]),
    (2, ["x^2 - y", "y^2"]),
    (2, ["x*y", "x^2 - y^2"]),
    (3, ["x^2", "y^2", "z^2", "x*y*z"]),
]


def random_ring(rng):
    from .parse import parse_poly
    n, gens = _RING_LIBRARY[int(rng.integers(0, len(_RING_LIBRARY)))]
    names = ["x", "y", "z"][:n]
    return FgRing.from_generators(n, [parse_poly(g, names) for g in gens])


def _small_degree(ring):
    # the free ring in one variable is the only non-Artinian entry; keep degrees low there
    return 1 if ring.ideal.is_zero() else 2


def random_vcomplex(rng, ring, max_rank=2):
    r1 = int(rng.integers(0, max_rank + 1))
    r2 = int(rng.integers(0, max_rank + 1))
    return VComplex(ring, r1, r2, random_matrix(rng, r2, r1, ring.n, _small_degree(ring)))


def random_vmor_from(rng, E, max_rank=3):
    """A random valid chain map out of ``E`` into a freshly built target."""
    n = E.ring.n
    deg = _small_degree(E.ring)
    a = int(rng.integers(0, max(0, max_rank - E.r1) + 1))
    q1 = E.r1 + a
    q2 = int(rng.integers(0, max_rank + 1))
    P, Pinv = _unipotent(rng, q1, n)
    f2 = random_matrix(rng, q2, E.r2, n, deg)
    psi_extra = random_matrix(rng, q2, a, n, deg)
    psi = (f2 @ E.phi).hstack(psi_extra) @ Pinv
    F = VComplex(E.ring, q1, q2, psi)
    embed = PolyMatrix.identity(E.r1, n).vstack(PolyMatrix.zeros(a, E.r1, n))
    f = VMor(E, F, P @ embed, f2)
    return VTwoMor.from_eta(f, random_matrix(rng, q1, E.r2, n, deg)).g


def random_v2mor(rng, f):
    deg = _small_degree(f.ring)
    return VTwoMor.from_eta(f, random_matrix(rng, f.target.r1, f.source.r2, f.ring.n, deg))


# standard models -------------------------------------------------------------

def _affine_map(rng, n, m):
    out = []
    for _ in range(m):
        p = Poly.const(int(rng.integers(-2, 3)), n)
        for j in range(n):
            c = int(rng.integers(-2, 3))
            if c:
                p = p + Poly.var(j, n).scale(c)
        out.append(p)
    return out


def _invertible_constant(rng, size):
    while True:
        A = rng.integers(-2, 3, size=(size, size))
        if size == 0 or round(np.linalg.det(A)) in (1, -1):
            return A


def _int_inverse(A):
    M = [[gmpy2.mpq(int(x)) for x in row] for row in A]
    n = len(M)
    inv = [[gmpy2.mpq(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if M[i][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        d = M[c][c]
        M[c] = [x / d for x in M[c]]
        inv[c] = [x / d for x in inv[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[c])]
    return inv


def _source_over(rng, Y, max_dim=3):
    """A random model ``X`` and valid morphism ``X -> Y`` built from ``Y``."""
    n = int(rng.integers(max(1, 0), max_dim + 1))
    extras = int(rng.integers(0, max_dim - Y.k + 1))
    extras = min(extras, n)
    h = _affine_map(rng, n, Y.n)
    A = _invertible_constant(rng, Y.k)
    t_h = [t.subs_into(h, n) for t in Y.s]
    s = []
    for i in range(Y.k):
        acc = Poly.zero(n)
        for j in range(Y.k):
            if A[i][j]:
                acc = acc + t_h[j].scale(int(A[i][j]))
        s.append(acc)
    for _ in range(extras):
        p = random_poly(rng, n, 3, 2)
        while not p or p.is_constant():
            p = random_poly(rng, n, 3, 2) + Poly.var(int(rng.integers(0, n)), n)
        s.append(p)
    X = StdModel(n, len(s), s)
    Ainv = _int_inverse(A)
    hhat = PolyMatrix([[Poly.const(Ainv[i][j], n) for j in range(Y.k)]
                       + [Poly.zero(n)] * extras for i in range(Y.k)], n, Y.k, X.k)
    if X.k:
        gens = list(X.s)
        bump = PolyMatrix([[random_poly(rng, n, 1, 1) * gens[int(rng.integers(0, X.k))]
                            for _ in range(X.k)] for _ in range(Y.k)], n, Y.k, X.k)
        hhat = hhat + bump
        h = [q + random_poly(rng, n, 0, 1) * gens[int(rng.integers(0, X.k))]
             * gens[int(rng.integers(0, X.k))] for q in h]
    return X, StdMor(X, Y, h, hhat)


def _random_target(rng, max_dim=3):
    m = int(rng.integers(1, max_dim + 1))
    l = int(rng.integers(0, 2))
    t = []
    for _ in range(l):
        p = random_poly(rng, m, 3, 2)
        t.append(p + Poly.var(int(rng.integers(0, m)), m))
    return StdModel(m, l, t)


def random_std_chain(rng, length=3, max_dim=3):
    """Models ``X_0 -> X_1 -> ... -> X_length`` with valid morphisms between them."""
    Y = _random_target(rng, max_dim)
    models, mors = [Y], []
    for _ in range(length):
        X, f = _source_over(rng, models[0], max_dim)
        models.insert(0, X)
        mors.insert(0, f)
    return models, mors


def random_std_2mor(rng, f, degree=1):
    lam = random_matrix(rng, f.target.n, f.source.k, f.source.n, degree, 3)
    return StdTwoMor.from_lambda(f, lam)


# law suites ---------------------------------------------------------------------

@dataclass
class LawReport:
    passed: dict = field(default_factory=dict)
    failed: dict = field(default_factory=dict)
    cases: int = 0
    seconds: float = 0.0

    def record(self, law, ok, case):
        self.passed.setdefault(law, 0)
        if ok:
            self.passed[law] += 1
        else:
            self.failed.setdefault(law, []).append(case)

    @property
    def ok(self):
        return not self.failed

    def as_dict(self):
        return {"cases": self.cases, "passed": dict(sorted(self.passed.items())),
                "failed": {k: v for k, v in sorted(self.failed.items())},
                "ok": self.ok, "seconds": round(self.seconds, 3)}


def vvect_laws(seed=0, cases=200):
    """Strict 2-category laws for chain maps; equality is equality of normal forms."""
    report = LawReport()
    start = time.perf_counter()
    for case in range(cases):
        rng = np.random.default_rng([seed, case])
        ring = random_ring(rng)
        E = random_vcomplex(rng, ring)
        f = random_vmor_from(rng, E)
        g = random_vmor_from(rng, f.target)
        h = random_vmor_from(rng, g.target)
        report.record("1-composition associative",
                      compose_vmor(h, compose_vmor(g, f)) == compose_vmor(compose_vmor(h, g), f), case)
        report.record("1-composition unital",
                      compose_vmor(f.target.identity(), f) == f
                      and compose_vmor(f, E.identity()) == f, case)
        eta = random_v2mor(rng, f)
        eta2 = random_v2mor(rng, eta.g)
        eta3 = random_v2mor(rng, eta2.g)
        report.record("vertical associative",
                      vcompose(eta3, vcompose(eta2, eta)) == vcompose(vcompose(eta3, eta2), eta), case)
        report.record("vertical unital",
                      vcompose(eta, f.zero_2mor()) == eta and vcompose(eta.g.zero_2mor(), eta) == eta,
                      case)
        zeta = random_v2mor(rng, g)
        theta = random_v2mor(rng, h)
        report.record("horizontal associative",
                      hcompose(theta, hcompose(zeta, eta)) == hcompose(hcompose(theta, zeta), eta), case)
        zeta2 = random_v2mor(rng, zeta.g)
        lhs = hcompose(vcompose(zeta2, zeta), vcompose(eta2, eta))
        rhs = vcompose(hcompose(zeta2, eta2), hcompose(zeta, eta))
        report.record("interchange", lhs == rhs, case)
        report.cases += 1
    report.seconds = time.perf_counter() - start
    return report


def std_laws(seed=0, cases=200):
    """Strict 2-category laws for standard models, up to the O(s)/O(s^2) congruences."""
    report = LawReport()
    start = time.perf_counter()
    for case in range(cases):
        rng = np.random.default_rng([seed, case])
        try:
            models, (f, g, h) = random_std_chain(rng, 3)
        except InvalidMorphism as exc:  # pragma: no cover - construction is valid by design
            report.record("generator produced a valid chain", False, {"case": case, "error": str(exc)})
            continue
        X = models[0]
        report.record("1-composition associative",
                      mor_equal(compose_mor(h, compose_mor(g, f)), compose_mor(compose_mor(h, g), f)),
                      case)
        report.record("1-composition unital",
                      mor_equal(compose_mor(f.target.identity(), f), f)
                      and mor_equal(compose_mor(f, X.identity()), f), case)
        eta = random_std_2mor(rng, f)
        eta2 = random_std_2mor(rng, eta.b)
        eta3 = random_std_2mor(rng, eta2.b)
        report.record("vertical associative",
                      two_mor_equal(vcompose_2mor(eta3, vcompose_2mor(eta2, eta)),
                                    vcompose_2mor(vcompose_2mor(eta3, eta2), eta)), case)
        report.record("vertical unital",
                      two_mor_equal(vcompose_2mor(eta, StdTwoMor.identity(f)), eta)
                      and two_mor_equal(vcompose_2mor(StdTwoMor.identity(eta.b), eta), eta), case)
        zeta = random_std_2mor(rng, g)
        theta = random_std_2mor(rng, h)
        report.record("horizontal associative",
                      two_mor_equal(hcompose_2mor(theta, hcompose_2mor(zeta, eta)),
                                    hcompose_2mor(hcompose_2mor(theta, zeta), eta)), case)
        zeta2 = random_std_2mor(rng, zeta.b)
        lhs = hcompose_2mor(vcompose_2mor(zeta2, zeta), vcompose_2mor(eta2, eta))
        rhs = vcompose_2mor(hcompose_2mor(zeta2, eta2), hcompose_2mor(zeta, eta))
        report.record("interchange", two_mor_equal(lhs, rhs), case)
        report.cases += 1
    report.seconds = time.perf_counter() - start
    return report


def run_law_suite(seed=0, cases=200):
    return {"vvect": vvect_laws(seed, cases).as_dict(), "standard": std_laws(seed, cases).as_dict()}
