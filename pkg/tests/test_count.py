import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dmanifold import (
    CountError, CountProblem, DimensionError, Poly, StdModel, find_zeros, intersection_number,
    virtual_count,
)
from helpers import P, model

FAST = dict(seeds=(0, 1), epsilons=(1e-3, 4e-3))


def count(section, box, names=("x",), orient=1, **options):
    X = model(section, names, orient=orient)
    return virtual_count(CountProblem(X, tuple(box), **{**FAST, **options})).count


@pytest.mark.parametrize("section, value", [("x", 1), ("x^2", 0), ("x^3", 1), ("-x", -1)])
def test_one_variable_examples(section, value):
    assert count([section], [(-1, 1)]) == value


def test_orientation_flip_negates():
    assert count(["x^3"], [(-1, 1)], orient=-1) == -1


def test_point_counts_its_orientation():
    assert virtual_count(CountProblem(StdModel(0, 0, (), orient=-1), ())).count == -1


def enumeration_oracle(texts, names, box):
    syms = sympy.symbols(names)
    eqs = [sympy.sympify(t.replace("^", "**"), dict(zip(names, syms))) for t in texts]
    jac = sympy.Matrix(eqs).jacobian(syms)
    total = 0
    for sol in sympy.solve(eqs, syms, dict=True):
        pt = [sol[s] for s in syms]
        if not all(v.is_real for v in pt):
            continue
        if not all(lo < v < hi for v, (lo, hi) in zip(pt, box)):
            continue
        det = jac.subs(sol).det()
        assert det != 0, "oracle requires transverse zeros"
        total += 1 if det > 0 else -1
    return total


def test_two_dimensional_system_matches_enumeration():
    texts, names, box = ["x^2 - y", "y^2 - x"], ("x", "y"), [(-2, 2), (-2, 2)]
    assert enumeration_oracle(texts, names, box) == 0
    assert count(texts, box, names) == 0


@pytest.mark.parametrize("texts", [["x - y^2 + 1/4", "x + y"], ["x^3 - y", "y - 1/4*x"],
                                   ["x^2 + y^2 - 1", "x - y"]])
def test_more_systems_match_enumeration(texts):
    names, box = ("x", "y"), [(-2, 2), (-2, 2)]
    assert count(texts, box, names) == enumeration_oracle(texts, names, box)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_one_variable_degree_formula(roots):
    # product of (x - r) over distinct roots; count is (sign p(b) - sign p(a)) / 2
    roots = sorted(set(roots))
    a, b = -3.5, 3.5
    p = Poly.one(1)
    for r in roots:
        p = p * (P("x") - Poly.const(r, 1))
    ends = [p.eval([v]) for v in (a, b)]
    expected = (int(np.sign(ends[1])) - int(np.sign(ends[0]))) // 2
    X = StdModel(1, 1, [p])
    assert virtual_count(CountProblem(X, ((a, b),), **FAST)).count == expected


def test_disjoint_pieces_add():
    whole = count(["x^3 - 4*x"], [(-3, 3)])
    pieces = count(["x^3 - 4*x"], [(-3, -1)]) + count(["x^3 - 4*x"], [(-1, 3)])
    assert whole == pieces == 1


def test_replicas_cover_every_seed_and_epsilon():
    X = model(["x^3"])
    result = virtual_count(CountProblem(X, ((-1, 1),)))
    assert len(result.replicas) == 15
    assert {r["count"] for r in result.replicas} == {1}
    assert virtual_count(CountProblem(X, ((-1, 1),))).as_dict() == result.as_dict()


def test_boundary_margin_error():
    with pytest.raises(CountError):
        count(["x - 1"], [(-1, 1)])


def test_domain_must_contain_box():
    X = model(["x"], domain=["x + 1/2"])
    with pytest.raises(CountError):
        virtual_count(CountProblem(X, ((-1, 1),), **FAST))


def test_shape_errors():
    with pytest.raises(DimensionError):
        virtual_count(CountProblem(model(["x", "y"], ("x", "y", "z")), ((-1, 1),) * 3))
    with pytest.raises(DimensionError):
        virtual_count(CountProblem(model(["x"]), ((1, -1),)))
    with pytest.raises(DimensionError):
        intersection_number(model(["x"]), [P("x")], model(["x"]), [P("x")], 1, [(-1, 1)] * 2)


def test_find_zeros_on_a_circle_line_system():
    s = [P("x^2 + y^2 - 1", ("x", "y")), P("x - y", ("x", "y"))]
    Z, dets = find_zeros(s, 2, [(-2, 2), (-2, 2)], np.zeros(2))
    assert len(Z) == 2 and np.allclose(np.abs(Z), np.sqrt(0.5))
    assert sorted(np.sign(dets)) == [-1, 1]
