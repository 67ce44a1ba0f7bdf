"""Standard-model d-manifolds ``S_{V,E,s}`` and their 1- and 2-morphisms.

A model is ``(n, k, s, domain, orient)``: ``V`` is the open subset of ``R^n``
where every domain polynomial is positive, ``E = V x R^k`` and ``s`` is the
section. ``I_s`` and ``I_s^2`` are computed when the model is built.

A 1-morphism ``(f, fhat): S_{V,E,s} -> S_{W,F,t}`` satisfies
``fhat s = t o f`` modulo ``I_s^2``; two of them are equal when their maps agree
mod ``I_s^2`` and their bundle parts mod ``I_s``. A 2-morphism is a matrix
``Lam: E -> f*(TW)`` with ``g = f + Lam s`` mod ``I_s^2`` and
``ghat = fhat + dt(f) Lam`` mod ``I_s``; two are equal when the matrices agree
mod ``I_s``.
"""

from dataclasses import dataclass, field

from .cinf_ring import FgRing
from .errors import DimensionError, InvalidMorphism
from .groebner import DEFAULT_MAX_STEPS, Ideal, ideal_square, substitute_mod
from .linalg import DEFAULT_PIVOT_TOL, rank
from .poly import Poly, default_names, variables
from .polymatrix import PolyMatrix, jacobian
from .vvect import VComplex, VMor, classify_at
from .witness import as_witness, require_witness

__all__ = [
    "StdModel",
    "StdMor",
    "StdTwoMor",
    "Validation",
    "make_std_model",
    "validate_mor",
    "mor_equal",
    "compose_mor",
    "validate_2mor",
    "two_mor_equal",
    "vcompose_2mor",
    "hcompose_2mor",
    "cotangent_complex",
    "pullback_vmor",
    "omega",
    "etale_at",
    "etale_ranks",
    "EtaleVerdict",
    "classify_mor_at",
    "standard_embedding",
    "is_manifold_at",
]


class StdModel:
    """The standard model ``S_{V,E,s}`` with ``vdim = n - k``."""

    __slots__ = ("n", "k", "s", "domain", "orient", "names", "I_s", "I_s2", "ring")

    def __init__(self, n, k, s, domain=(), orient=1, names=None, max_steps=DEFAULT_MAX_STEPS):
        s = tuple(s)
        domain = tuple(domain)
        if n < 0 or k < 0:
            raise DimensionError("dimensions must be nonnegative")
        if len(s) != k:
            raise DimensionError(f"section has {len(s)} components but rank is {k}")
        for p in s + domain:
            if not isinstance(p, Poly):
                raise TypeError("section and domain entries must be Poly")
            if p.nvars != n:
                raise DimensionError(f"polynomial in {p.nvars} variables, model has {n}")
        if orient not in (1, -1):
            raise ValueError("orient must be +1 or -1")
        names = tuple(names) if names is not None else tuple(default_names(n))
        if len(names) != n:
            raise DimensionError("wrong number of variable names")
        I_s = Ideal(s, n, max_steps=max_steps)
        sets = object.__setattr__
        sets(self, "n", n)
        sets(self, "k", k)
        sets(self, "s", s)
        sets(self, "domain", domain)
        sets(self, "orient", orient)
        sets(self, "names", names)
        sets(self, "I_s", I_s)
        sets(self, "I_s2", ideal_square(I_s, max_steps=max_steps))
        sets(self, "ring", FgRing(n, I_s))

    def __setattr__(self, name, value):
        raise AttributeError("StdModel is immutable")

    @property
    def vdim(self):
        return self.n - self.k

    def section_column(self):
        return PolyMatrix.column(self.s, self.n)

    def ds(self):
        return jacobian(self.s, self.n)

    def with_orient(self, orient):
        return StdModel(self.n, self.k, self.s, self.domain, orient, self.names)

    def restrict(self, inequalities):
        """The same model on the smaller open set cut out by extra ``> 0`` conditions."""
        return StdModel(self.n, self.k, self.s, self.domain + tuple(inequalities),
                        self.orient, self.names)

    def check_witness(self, point, what="witness"):
        pt = as_witness(point)
        require_witness(pt, self.n, self.s, self.domain, what)
        return pt

    def identity(self):
        return StdMor(self, self, variables(self.n), PolyMatrix.identity(self.k, self.n))

    def _key(self):
        return (self.n, self.k, self.s, self.domain, self.orient)

    def __eq__(self, other):
        if not isinstance(other, StdModel):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        sec = ", ".join(p.to_string(self.names) for p in self.s)
        return f"StdModel(n={self.n}, k={self.k}, s=[{sec}], orient={self.orient:+d})"


def make_std_model(n, k, s, domain=(), orient=1, names=None, max_steps=DEFAULT_MAX_STEPS):
    return StdModel(n, k, s, domain, orient, names, max_steps)


@dataclass(frozen=True)
class Validation:
    """Outcome of a validity check: ``value`` on success, ``violations`` otherwise."""

    ok: bool
    value: object = None
    violations: list = field(default_factory=list)


def _mor_violations(source, target, f, fhat):
    n, m = source.n, target.n
    f = tuple(f)
    if len(f) != m:
        raise DimensionError(f"map has {len(f)} components, target has {m} variables")
    for p in f:
        if p.nvars != n:
            raise DimensionError("map component has the wrong variable count")
    if fhat.shape != (target.k, source.k) or fhat.nvars != n:
        raise DimensionError(
            f"fhat has shape {fhat.shape}, expected {(target.k, source.k)}")
    t_of_f = [substitute_mod(t, f, source.I_s2) for t in target.s]
    lhs = fhat @ source.section_column()
    out = []
    for i in range(target.k):
        r = source.I_s2.normal_form(lhs[i, 0] - t_of_f[i])
        if r:
            out.append({"condition": "fhat*s = t(f) mod I_s^2", "component": i,
                        "residual": r.to_string(source.names)})
    return out


class StdMor:
    """1-morphism ``(f, fhat)``; raises :class:`InvalidMorphism` if invalid.

    ``f`` is stored modulo ``I_s^2`` and ``fhat`` modulo ``I_s``.
    """

    __slots__ = ("source", "target", "f", "fhat")

    def __init__(self, source, target, f, fhat):
        bad = _mor_violations(source, target, f, fhat)
        if bad:
            raise InvalidMorphism("not a 1-morphism of standard models", bad)
        sets = object.__setattr__
        sets(self, "source", source)
        sets(self, "target", target)
        sets(self, "f", tuple(source.I_s2.normal_form(p) for p in f))
        sets(self, "fhat", fhat.reduce(source.I_s))

    def __setattr__(self, name, value):
        raise AttributeError("StdMor is immutable")

    def df(self):
        return jacobian(self.f, self.source.n)

    def dt_along(self):
        """``dt`` of the target section composed with ``f`` (``l x m``)."""
        return self.target.ds().subs(self.f, self.source.n)

    def image(self, point):
        return as_witness(point).image(self.f)

    def maps_into_domain(self, witnesses):
        """True when every witness maps into the target's domain."""
        return all(self.image(w).satisfies(self.target.domain) for w in witnesses)

    def __eq__(self, other):
        if not isinstance(other, StdMor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.f == other.f and self.fhat == other.fhat)

    def __hash__(self):
        return hash((self.source, self.target, self.f, self.fhat))

    def __repr__(self):
        names = self.source.names
        return (f"StdMor(f=[{', '.join(p.to_string(names) for p in self.f)}], "
                f"fhat={self.fhat.to_strings(names)})")


def validate_mor(source, target, f, fhat):
    bad = _mor_violations(source, target, f, fhat)
    if bad:
        return Validation(False, None, bad)
    return Validation(True, StdMor(source, target, f, fhat))


def _same_ends(a, b):
    if a.source != b.source or a.target != b.target:
        raise DimensionError("morphisms do not share source and target")


def mor_equal(a, b):
    _same_ends(a, b)
    X = a.source
    return (all(X.I_s2.contains(p - q) for p, q in zip(a.f, b.f))
            and a.fhat.equal_mod(b.fhat, X.I_s))


def compose_mor(g, f):
    """``g o f = (g(f), ghat(f) fhat)``; apply ``f`` first."""
    if f.target != g.source:
        raise DimensionError("1-morphisms are not composable")
    X = f.source
    gf = [substitute_mod(p, f.f, X.I_s2) for p in g.f]
    ghat_f = g.fhat.subs_mod(f.f, X.n, X.I_s)
    return StdMor(X, g.target, gf, (ghat_f @ f.fhat).reduce(X.I_s))


def _two_mor_violations(a, b, lam):
    _same_ends(a, b)
    X = a.source
    if lam.shape != (a.target.n, X.k) or lam.nvars != X.n:
        raise DimensionError(f"Lambda has shape {lam.shape}, expected {(a.target.n, X.k)}")
    out = []
    lam_s = lam @ X.section_column()
    for i in range(a.target.n):
        r = X.I_s2.normal_form(b.f[i] - a.f[i] - lam_s[i, 0])
        if r:
            out.append({"condition": "g = f + Lambda*s mod I_s^2", "component": i,
                        "residual": r.to_string(X.names)})
    rhs = (b.fhat - a.fhat - a.dt_along() @ lam).reduce(X.I_s)
    for i in range(rhs.rows):
        for j in range(rhs.cols):
            if rhs[i, j]:
                out.append({"condition": "ghat = fhat + dt(f)*Lambda mod I_s",
                            "component": [i, j], "residual": rhs[i, j].to_string(X.names)})
    return out


class StdTwoMor:
    """2-morphism ``Lam: a => b``; ``Lam`` is stored modulo ``I_s``."""

    __slots__ = ("a", "b", "lam")

    def __init__(self, a, b, lam):
        _same_ends(a, b)
        if lam.nvars == a.source.n:
            # only the class mod I_s matters, and reducing first keeps the checks small
            lam = lam.reduce(a.source.I_s)
        bad = _two_mor_violations(a, b, lam)
        if bad:
            raise InvalidMorphism("not a 2-morphism of standard models", bad)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "lam", lam.reduce(a.source.I_s))

    def __setattr__(self, name, value):
        raise AttributeError("StdTwoMor is immutable")

    @classmethod
    def identity(cls, a):
        return cls(a, a, PolyMatrix.zeros(a.target.n, a.source.k, a.source.n))

    @classmethod
    def from_lambda(cls, a, lam):
        """The 2-morphism out of ``a`` along ``Lam``, with target ``(f + Lam s, fhat + dt(f) Lam)``."""
        X = a.source
        lam_s = lam @ X.section_column()
        b = StdMor(X, a.target, [a.f[i] + lam_s[i, 0] for i in range(a.target.n)],
                   a.fhat + a.dt_along() @ lam)
        return cls(a, b, lam)

    def __eq__(self, other):
        if not isinstance(other, StdTwoMor):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.lam == other.lam

    def __hash__(self):
        return hash((self.a, self.b, self.lam))


def validate_2mor(a, b, lam):
    bad = _two_mor_violations(a, b, lam)
    if bad:
        return Validation(False, None, bad)
    return Validation(True, StdTwoMor(a, b, lam))


def two_mor_equal(x, y):
    if not (mor_equal(x.a, y.a) and mor_equal(x.b, y.b)):
        return False
    return x.lam.equal_mod(y.lam, x.a.source.I_s)


def vcompose_2mor(zeta, eta):
    """``eta: f => g`` followed by ``zeta: g => h``."""
    if not mor_equal(eta.b, zeta.a):
        raise DimensionError("2-morphisms are not vertically composable")
    return StdTwoMor(eta.a, zeta.b, eta.lam + zeta.lam)


def hcompose_2mor(zeta, eta):
    """Horizontal composite ``zeta * eta: g o f => g~ o f~``.

    With ``eta: f => f~`` (matrix ``L``) and ``zeta: g => g~`` (matrix ``M``)
    the composite matrix is ``M(f) fhat + dg(f) L + M(f) dt(f) L``, obtained by
    expanding ``g~(f~)`` to first order in ``s``.
    """
    f, g = eta.a, zeta.a
    if f.target != g.source:
        raise DimensionError("2-morphisms are not horizontally composable")
    X = f.source
    n = X.n
    m_f = zeta.lam.subs_mod(f.f, n, X.I_s)
    dg_f = g.df().subs_mod(f.f, n, X.I_s)
    dt_lam = (f.target.ds().subs_mod(f.f, n, X.I_s) @ eta.lam).reduce(X.I_s)
    lam = m_f @ f.fhat + dg_f @ eta.lam + m_f @ dt_lam
    return StdTwoMor(compose_mor(g, f), compose_mor(zeta.b, eta.b), lam)


# cotangent complexes -------------------------------------------------------

def cotangent_complex(X):
    """``ds^T: E* -> T*V`` over ``Q[x]/I_s``, of rank ``vdim X``."""
    return VComplex(X.ring, X.k, X.n, X.ds().T)


def pullback_vmor(vm, f):
    """Pull a chain map over the target ring of ``f`` back along ``f``."""
    ring = f.source.ring
    n = f.source.n

    def pull(c):
        return VComplex(ring, c.r1, c.r2, c.phi.subs(f.f, n))

    return VMor(pull(vm.source), pull(vm.target), vm.f1.subs(f.f, n), vm.f2.subs(f.f, n))


def omega(m):
    """The cotangent chain map ``f*(T*Y) -> T*X`` with components ``(fhat^T, df^T)``."""
    X = m.source
    pulled = VComplex(X.ring, m.target.k, m.target.n, m.dt_along().T)
    return VMor(pulled, cotangent_complex(X), m.fhat.T, m.df().T)


@dataclass(frozen=True)
class EtaleVerdict:
    point: tuple
    etale: bool
    rank_m: int
    rank_n: int
    omega_equivalence: bool

    @property
    def agrees(self):
        return self.etale == self.omega_equivalence


def etale_ranks(source, target, f, fhat, point, *, tol=DEFAULT_PIVOT_TOL):
    """Ranks of ``M = [ds(v); df(v)]`` and ``N = [fhat(v) | -dt(f(v))]`` and the verdict.

    ``(f, fhat)`` need not be a valid 1-morphism; this is the pointwise test of
    ``0 -> T_v V -> E_v + T_w W -> F_w -> 0``.
    """
    pt = as_witness(point)
    v = pt.coords
    n = source.n
    df = jacobian(f, n)
    dt_f = target.ds().subs(f, n)
    M = source.ds().vstack(df).eval(v)
    N = fhat.hstack(-dt_f).eval(v)
    rtol = tol if pt.exact else max(tol, pt.tolerance)
    rm, rn = rank(M, tol=rtol), rank(N, tol=rtol)
    ok = rm == n and rn == target.k and rm + rn == source.k + target.n
    return ok, rm, rn


def etale_at(m, points, *, tol=DEFAULT_PIVOT_TOL):
    """Pointwise exactness of ``0 -> T_v V -> E_v + T_w W -> F_w -> 0``.

    ``M = [ds(v); df(v)]`` and ``N = [fhat(v) | -dt(w)]``; the verdict is
    ``rank M = n``, ``rank N = l`` and ``rank M + rank N = k + m``. Each verdict
    also carries the equivalence flag of ``omega(m)`` at ``v`` for comparison.
    """
    X = m.source
    om = omega(m)
    out = []
    for raw in points:
        pt = X.check_witness(raw)
        ok, rm, rn = etale_ranks(X, m.target, m.f, m.fhat, pt, tol=tol)
        rtol = tol if pt.exact else max(tol, pt.tolerance)
        eq = classify_at(om, pt, tol=rtol).equivalence
        out.append(EtaleVerdict(tuple(pt.to_json()), ok, rm, rn, eq))
    return out


def _witness_injective(m, points):
    images = [m.image(p) for p in points]
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            a, b = images[i], images[j]
            if points[i].coords == points[j].coords:
                continue
            tol = max(a.tolerance, b.tolerance)
            if all(abs(x - y) <= tol for x, y in zip(a.coords, b.coords)):
                return False
    return True


def classify_mor_at(m, points, *, tol=DEFAULT_PIVOT_TOL):
    """Submersion/immersion/embedding flags of ``m`` at each witness.

    The embedding flags also need injectivity of ``f``, which is only checked on
    the supplied witness set; ``"embedding_scope": "witness set"`` records that.
    """
    X = m.source
    pts = [X.check_witness(p) for p in points]
    om = omega(m)
    injective_on_witnesses = _witness_injective(m, pts)
    out = []
    for pt in pts:
        rtol = tol if pt.exact else max(tol, pt.tolerance)
        c = classify_at(om, pt, tol=rtol)
        out.append({
            "point": pt.to_json(),
            "w_submersion": c.weakly_injective,
            "submersion": c.injective,
            "w_immersion": c.weakly_surjective,
            "immersion": c.surjective,
            "etale": c.equivalence,
            "w_embedding": c.weakly_surjective and injective_on_witnesses,
            "embedding": c.surjective and injective_on_witnesses,
            "embedding_scope": "witness set",
        })
    return out


def standard_embedding(X):
    """``(id, 0): S_{V,E,s} -> S_{V,0,0}``."""
    V = StdModel(X.n, 0, (), X.domain, 1, X.names)
    return StdMor(X, V, variables(X.n), PolyMatrix.zeros(0, X.k, X.n))


def is_manifold_at(X, point, *, tol=DEFAULT_PIVOT_TOL):
    """True when ``ds(v)`` has full row rank ``k`` (the cotangent complex splits at ``v``)."""
    pt = X.check_witness(point)
    rtol = tol if pt.exact else max(tol, pt.tolerance)
    return rank(X.ds().eval(pt.coords), tol=rtol) == X.k
