import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dmanifold import (
    DimensionError, InvalidMorphism, PolyMatrix, StdModel, StdMor, StdTwoMor, WitnessError,
    classify_mor_at, compose_mor, compose_vmor, cotangent_complex, etale_at, hcompose_2mor,
    is_manifold_at, make_std_model, mor_equal, omega, pullback_vmor, standard_embedding,
    two_mor_equal, validate_2mor, validate_mor, vcompose_2mor,
)
from dmanifold.laws import random_std_2mor, random_std_chain
from helpers import P, mat, model

XY = ("x", "y")


# models ----------------------------------------------------------------------

def test_model_dimensions():
    assert make_std_model(1, 0, []).vdim == 1
    assert make_std_model(1, 1, [P("x^2")]).vdim == 0
    assert make_std_model(0, 1, [P("0", ())]).vdim == -1


def test_model_shape_errors():
    with pytest.raises(DimensionError):
        make_std_model(1, 2, [P("x")])
    with pytest.raises(DimensionError):
        make_std_model(1, 1, [P("x", XY)])
    with pytest.raises(ValueError):
        make_std_model(1, 1, [P("x")], orient=0)


def test_ideals_are_eager():
    X = model(["x^2"])
    assert X.I_s.basis == (P("x^2"),) and X.I_s2.basis == (P("x^4"),)


def test_witness_checks():
    X = model(["x^2 - 1"], domain=["x"])
    assert X.check_witness(["1"]).exact
    with pytest.raises(WitnessError):
        X.check_witness(["-1"])            # outside the domain x > 0
    with pytest.raises(WitnessError):
        X.check_witness(["2"])             # not a zero
    assert not X.check_witness([1.0 + 1e-12]).exact
    with pytest.raises(WitnessError):
        X.check_witness([1.001])


# 1-morphisms -----------------------------------------------------------------

def test_identity_is_valid():
    X = model(["x^2 - y^3", "x*y"], XY)
    assert validate_mor(X, X, [P("x", XY), P("y", XY)], PolyMatrix.identity(2, 2)).ok


def test_sign_flip_is_valid():
    assert validate_mor(model(["x^2"]), model(["-x^2"]), [P("x")], mat([["-1"]])).ok


@pytest.mark.parametrize("fhat, ok", [("x^3", True), ("x", True), ("1", False)])
def test_validity_examples(fhat, ok):
    v = validate_mor(model(["x"]), model(["x^2"]), [P("x^2")], mat([[fhat]]))
    assert v.ok is ok
    if not ok:
        assert v.violations[0]["residual"] == "x"
        with pytest.raises(InvalidMorphism):
            StdMor(model(["x"]), model(["x^2"]), [P("x^2")], mat([[fhat]]))


def test_validate_shape_errors():
    X = model(["x"])
    with pytest.raises(DimensionError):
        validate_mor(X, X, [P("x"), P("x")], mat([["1"]]))
    with pytest.raises(DimensionError):
        validate_mor(X, X, [P("x")], mat([["1", "1"]]))


def test_morphism_equality_examples():
    X = model(["x"])
    Y = model(["y"], ("y",))
    a = StdMor(X, Y, [P("x")], mat([["1"]]))
    assert mor_equal(a, a)
    assert mor_equal(a, StdMor(X, Y, [P("x + x^2")], mat([["1 + x"]])))
    assert not mor_equal(a, StdMor(X, Y, [P("2*x")], mat([["2"]])))


def test_composition_examples():
    X, Y = model(["x"]), model(["x^2"])
    f = StdMor(X, Y, [P("x^2")], mat([["x^3"]]))
    assert mor_equal(compose_mor(Y.identity(), f), f)
    assert mor_equal(compose_mor(f, X.identity()), f)
    Z = model(["-x^4"])
    g = StdMor(Y, Z, [P("x^2")], mat([["-x^2"]]))
    gf = compose_mor(g, f)
    assert validate_mor(X, Z, gf.f, gf.fhat).ok
    with pytest.raises(DimensionError):
        compose_mor(f, g)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_composites_validate(seed):
    models, (f, g, h) = random_std_chain(np.random.default_rng(seed), 3)
    for m in (compose_mor(g, f), compose_mor(h, compose_mor(g, f))):
        assert validate_mor(m.source, m.target, m.f, m.fhat).ok


# 2-morphisms -----------------------------------------------------------------

def test_zero_lambda_is_identity():
    X = model(["x^2"])
    a = X.identity()
    assert validate_2mor(a, a, PolyMatrix.zeros(1, 1, 1)).ok


def test_two_morphism_example():
    X = model(["x"])
    f = StdMor(X, X, [P("x")], mat([["1"]]))
    g = StdMor(X, X, [P("2*x")], mat([["2"]]))
    eta = StdTwoMor(f, g, mat([["1"]]))
    assert two_mor_equal(eta, StdTwoMor(f, g, mat([["1 + 5*x"]])))
    assert not validate_2mor(f, g, mat([["0"]])).ok


def test_lambda_is_defined_mod_s():
    X = model(["x^2"])
    f = X.identity()
    eta = StdTwoMor.from_lambda(f, mat([["3"]]))
    shifted = StdTwoMor(f, eta.b, mat([["3 + x^2*(x + 1)"]]))
    assert two_mor_equal(eta, shifted)


def test_vertical_and_horizontal_zero():
    X = model(["x^2"])
    f = X.identity()
    z = StdTwoMor.identity(f)
    assert two_mor_equal(vcompose_2mor(z, z), z)
    assert two_mor_equal(hcompose_2mor(z, z), StdTwoMor.identity(compose_mor(f, f)))


def test_horizontal_with_identities_is_the_2morphism():
    rng = np.random.default_rng(4)
    _, (f, _, _) = random_std_chain(rng, 3)
    eta = random_std_2mor(rng, f)
    left = hcompose_2mor(StdTwoMor.identity(f.target.identity()), eta)
    right = hcompose_2mor(eta, StdTwoMor.identity(f.source.identity()))
    assert left.lam.equal_mod(eta.lam, f.source.I_s)
    assert right.lam.equal_mod(eta.lam, f.source.I_s)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_interchange_on_random_quadruples(seed):
    rng = np.random.default_rng(seed)
    _, (f, g, _) = random_std_chain(rng, 3)
    eta = random_std_2mor(rng, f)
    eta2 = random_std_2mor(rng, eta.b)
    zeta = random_std_2mor(rng, g)
    zeta2 = random_std_2mor(rng, zeta.b)
    lhs = hcompose_2mor(vcompose_2mor(zeta2, zeta), vcompose_2mor(eta2, eta))
    rhs = vcompose_2mor(hcompose_2mor(zeta2, eta2), hcompose_2mor(zeta, eta))
    assert two_mor_equal(lhs, rhs)


# cotangent complexes and omega -----------------------------------------------

def test_cotangent_complex_examples():
    c = cotangent_complex(StdModel(1, 0, ()))
    assert (c.r1, c.r2, c.rank) == (0, 1, 1)
    c = cotangent_complex(model(["x^2"]))
    assert c.phi == mat([["2*x"]]) and c.rank == 0
    c = cotangent_complex(model(["x - y"], XY))
    assert c.phi.to_strings(XY) == [["1"], ["-1"]] and c.rank == 1


def test_omega_examples():
    X = model(["x^2"])
    assert omega(X.identity()) == cotangent_complex(X).identity()
    m = StdMor(X, model(["-x^2"]), [P("x")], mat([["-1"]]))
    om = omega(m)
    assert om.f1 == mat([["-1"]]) and om.f2 == mat([["1"]])
    R = StdModel(1, 0, ())
    sq = StdMor(R, R, [P("x^2")], PolyMatrix.zeros(0, 0, 1))
    assert omega(sq).f2 == mat([["2*x"]])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_omega_is_functorial(seed):
    _, (f, g, _) = random_std_chain(np.random.default_rng(seed), 3)
    direct = omega(compose_mor(g, f))
    assembled = compose_vmor(omega(f), pullback_vmor(omega(g), f))
    assert direct == assembled


# pointwise verdicts ----------------------------------------------------------

def test_etale_examples():
    sq = model(["x^2"])
    [v] = etale_at(sq.identity(), [["0"]])
    assert v.etale and v.agrees
    [v] = etale_at(StdMor(sq, model(["-x^2"]), [P("x")], mat([["-1"]])), [["0"]])
    assert (v.etale, v.rank_m, v.rank_n) == (True, 1, 1)
    [v] = etale_at(StdMor(model(["x"]), sq, [P("x^2")], mat([["x^3"]])), [["0"]])
    assert (v.etale, v.rank_m, v.rank_n, v.agrees) == (False, 1, 0, True)


def test_classification_examples():
    sq = model(["x^2"])
    [c] = classify_mor_at(standard_embedding(sq), [["0"]])
    assert c["immersion"] and c["embedding"]
    plane, line = StdModel(2, 0, (), names=XY), StdModel(1, 0, ())
    proj = StdMor(plane, line, [P("x", XY)], PolyMatrix.zeros(0, 0, 2))
    [c] = classify_mor_at(proj, [["0", "0"]])
    assert c["submersion"] and not c["immersion"]
    obstructed, point = StdModel(0, 1, [P("0", ())]), StdModel(0, 0, ())
    [c] = classify_mor_at(StdMor(obstructed, point, [], PolyMatrix.zeros(0, 1, 0)), [[]])
    assert c["immersion"] and not c["submersion"]


def test_embedding_needs_witness_injectivity():
    X = model(["x^2 - 1"])
    R = StdModel(1, 0, ())
    fold = StdMor(X, R, [P("x^2")], PolyMatrix.zeros(0, 1, 1))
    flags = classify_mor_at(fold, [["1"], ["-1"]])
    assert all(c["immersion"] for c in flags)
    assert not any(c["embedding"] for c in flags)


def test_standard_embedding_examples():
    R = StdModel(1, 0, ())
    e = standard_embedding(R)
    assert e.f == (P("x"),) and e.target == R
    X = model(["x^2"])
    assert standard_embedding(X).target.vdim >= X.vdim


def test_manifold_criterion():
    assert is_manifold_at(model(["x"]), ["0"])
    assert not is_manifold_at(model(["x^2"]), ["0"])


def test_shrinking_the_domain_keeps_verdicts():
    X = model(["x^2 - 1"])
    Xs = X.restrict([P("x + 2")])
    R = StdModel(1, 0, ())
    m = StdMor(X, R, [P("x")], PolyMatrix.zeros(0, 1, 1))
    ms = StdMor(Xs, R, [P("x")], PolyMatrix.zeros(0, 1, 1))
    pts = [["1"], ["-1"]]
    assert classify_mor_at(m, pts) == classify_mor_at(ms, pts)
    assert [v.etale for v in etale_at(m, pts)] == [v.etale for v in etale_at(ms, pts)]
