import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dmanifold import (
    DimensionError, Poly, PolyMatrix, StdModel, StdMor, classify_mor_at, cotangent_exact_at,
    d_transverse_at, etale_at, fibre_product, intersection_number, is_manifold_at, map_to_euclidean, mor_equal,
    orient_fibre_product, swap_sign, validate_2mor, validate_mor,
)
from helpers import P, model
from orientation_oracle import commutativity_eps, mixed_eps, toy_model

POINT = StdModel(0, 0, ())


def test_point_times_point_over_line():
    data = fibre_product(POINT, [Poly.zero(0)], POINT, [Poly.zero(0)])
    assert (data.W.n, data.W.k, data.vdim) == (0, 1, -1)
    [c] = classify_mor_at(data.e, [[]])
    assert c["embedding"] and c["immersion"] and not c["submersion"]


def test_line_times_line_is_the_diagonal():
    R = StdModel(1, 0, ())
    data = fibre_product(R, [P("x")], R, [P("x")])
    W = data.W
    assert W.s == (P("x_1 - x_2", ("x_1", "x_2")),)
    diag = StdMor(R, W, [P("x"), P("x")], PolyMatrix.zeros(1, 0, 1))
    for u in ("0", "1", "-3/2", "7"):
        [v] = etale_at(diag, [[u]])
        assert v.etale and v.agrees


def test_product_with_a_point():
    X = model(["x^2"])
    data = fibre_product(X, [], POINT, [], 0)
    assert (data.W.n, data.W.k, data.W.orient) == (1, 1, 1)
    assert mor_equal(data.e, StdMor(data.W, X, [P("x")], PolyMatrix.identity(1, 1)))


def test_projections_and_two_morphism_validate():
    X = model(["x^2 - y"], ("x", "y"))
    Y = model(["z^3"], ("z",))
    data = fibre_product(X, [P("x + y", ("x", "y"))], Y, [P("z", ("z",))])
    for m in (data.e, data.f):
        assert validate_mor(m.source, m.target, m.f, m.fhat).ok
    assert validate_2mor(data.eta.a, data.eta.b, data.eta.lam).ok


def test_shape_errors():
    with pytest.raises(DimensionError):
        fibre_product(POINT, [Poly.zero(0)], POINT, [], 1)
    with pytest.raises(DimensionError):
        fibre_product(model(["x"]), [P("x", ("x", "y"))], POINT, [Poly.zero(0)])


@pytest.mark.parametrize("nx, kx, ny, ky, p", list(itertools.product(range(3), repeat=5)))
def test_vdim_identity(nx, kx, ny, ky, p):
    X, Y = toy_model(nx, kx), toy_model(ny, ky)
    g = [Poly.var(0, nx) if nx else Poly.zero(0)] * p
    h = [Poly.var(0, ny) if ny else Poly.zero(0)] * p
    assert fibre_product(X, g, Y, h, p).vdim == X.vdim + Y.vdim - p


def test_orientation_examples():
    assert orient_fibre_product(1, 1, 3, 0, 0) == 1
    assert orient_fibre_product(-1, 1, 2, 1, 1) == -orient_fibre_product(1, 1, 2, 1, 1)
    with pytest.raises(ValueError):
        orient_fibre_product(0, 1, 0, 0, 0)


def test_two_lines_in_the_plane_meet_negatively():
    # x-axis and y-axis, both oriented, intersect with sign -1 under this convention
    R = StdModel(1, 0, ())
    data = fibre_product(R, [P("x"), Poly.zero(1)], R, [Poly.zero(1), P("x")])
    assert data.vdim == 0 and data.W.orient == 1
    result = intersection_number(R, [P("x"), Poly.zero(1)], R, [Poly.zero(1), P("x")], 2,
                                 [(-1, 1), (-1, 1)], seeds=(0,), epsilons=(1e-3,))
    assert result.count == -1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3),
       st.integers(0, 2), st.sampled_from([1, -1]), st.sampled_from([1, -1]))
def test_commutativity_sign(nx, kx, ny, ky, p, ox, oy):
    vx, vy = nx - kx, ny - ky
    assert commutativity_eps(nx, kx, ny, ky, p, ox, oy) == (-1) ** ((vx - p) * (vy - p))


def test_commutativity_formula_matches_swap():
    for nx, kx, ny, ky, p in itertools.product(range(4), range(4), range(4), range(4), range(3)):
        o = orient_fibre_product(1, 1, nx - kx, ky, p) * orient_fibre_product(1, 1, ny - ky, kx, p)
        assert o * swap_sign(nx, kx, ny, ky, p) == (-1) ** ((nx - kx - p) * (ny - ky - p))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=3),
       st.integers(0, 2), st.integers(0, 2))
def test_mixed_product_sign(shapes, a, b):
    vw = shapes[1][0] - shapes[1][1]
    assert mixed_eps(shapes, a, b) == (-1) ** (b * (vw + a))


def test_d_transverse_over_manifolds():
    X = model(["x^2"])
    g = map_to_euclidean(X, [P("x")])
    assert d_transverse_at(g, g, [(["0"], ["0"])]) == [True]


def test_d_transverse_synthetic_failure():
    Z = X = model(["x^2"])
    # ghat = 0 and dt_Z(0) = 0 make alpha the zero map on E_Z*
    g = StdMor(X, Z, [P("x^2")], PolyMatrix.from_scalars([[0]], 1, 1, 1))
    assert d_transverse_at(g, g, [(["0"], ["0"])]) == [False]
    ident = Z.identity()
    assert d_transverse_at(ident, ident, [(["0"], ["0"])]) == [True]


def test_d_transverse_edge_cases(caplog):
    X = model(["x"])
    g = map_to_euclidean(X, [P("x")])
    assert d_transverse_at(g, g, []) == []
    assert "vacuously" in caplog.text
    Y = model(["x - 1"])
    with pytest.raises(DimensionError):
        d_transverse_at(g, map_to_euclidean(Y, [P("x")]), [(["0"], ["1"])])


def test_classical_reduction():
    plane = StdModel(2, 0, (), names=("x", "y"))
    R = StdModel(1, 0, ())
    data = fibre_product(plane, [P("x^2 + y^2 - 1", ("x", "y"))], R, [Poly.zero(1)])
    pt = ["1", "0", "0"]
    assert is_manifold_at(data.W, pt)
    assert all(cotangent_exact_at(data, pt))


def test_embedding_pattern():
    X = StdModel(2, 0, (), names=("x", "y"))
    data = fibre_product(X, [P("x", ("x", "y"))], POINT, [Poly.zero(0)])
    flags = classify_mor_at(data.e, [["0", "3"], ["0", "-1/2"]])
    assert all(c["embedding"] and c["immersion"] for c in flags)


def test_cotangent_exact_on_obstructed_product():
    X = model(["x^2"])
    data = fibre_product(X, [P("x")], X, [P("x^3")])
    assert cotangent_exact_at(data, ["0", "0"]) == (True, True, True)
