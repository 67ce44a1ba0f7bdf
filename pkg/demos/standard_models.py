"""Standard models, their morphisms, and pointwise étale checks.

Run with ``python3 demos/standard_models.py``.
"""

from dmanifold import (
    PolyMatrix, StdModel, StdMor, etale_at, is_manifold_at, omega, parse_poly, validate_mor,
)


def P(text):
    return parse_poly(text, ("x",))


def main():
    line = StdModel(1, 1, [P("x")], names=("x",))
    sq = StdModel(1, 1, [P("x^2")], names=("x",))
    print("S(x)   vdim", line.vdim, " manifold at 0:", is_manifold_at(line, ["0"]))
    print("S(x^2) vdim", sq.vdim, " manifold at 0:", is_manifold_at(sq, ["0"]))

    # x -> x^2 is a morphism S(x) -> S(x^2) for fhat = x^3 or x, but not for fhat = 1
    for fhat in ("x^3", "x", "1"):
        v = validate_mor(line, sq, [P("x^2")], PolyMatrix([[P(fhat)]], 1, 1, 1))
        extra = "" if v.ok else f"  residual {v.violations[0]['residual']}"
        print(f"fhat = {fhat:<4} valid: {v.ok}{extra}")

    squash = StdMor(line, sq, [P("x^2")], PolyMatrix([[P("x^3")]], 1, 1, 1))
    [verdict] = etale_at(squash, [["0"]])
    print("squash etale at 0:", verdict.etale, f"(rank M = {verdict.rank_m}, rank N = {verdict.rank_n})")
    print("omega(squash) agrees:", verdict.agrees)
    print("omega(squash) f2 =", omega(squash).f2.to_strings(("x",)))


if __name__ == "__main__":
    main()
