"""Fibre products over R^p: the obstructed point and two crossing lines.

Run with ``python3 demos/fibre_products.py``.
"""

from dmanifold import Poly, StdModel, classify_mor_at, fibre_product, intersection_number


def main():
    point = StdModel(0, 0, ())
    data = fibre_product(point, [Poly.zero(0)], point, [Poly.zero(0)])
    [flags] = classify_mor_at(data.e, [[]])
    print(f"point x_R point: n = {data.W.n}, rank = {data.W.k}, vdim = {data.vdim}")
    print("  projection is an embedding:", flags["embedding"])

    line = StdModel(1, 0, ())
    x, zero = Poly.var(0, 1), Poly.zero(1)
    axes = fibre_product(line, [x, zero], line, [zero, x])
    print("x-axis x_{R^2} y-axis: section", [q.to_string(axes.W.names) for q in axes.W.s],
          "orientation", axes.W.orient)
    result = intersection_number(line, [x, zero], line, [zero, x], 2, [(-1, 1), (-1, 1)])
    print("  intersection number:", result.count, f"({len(result.replicas)} replicas agree)")


if __name__ == "__main__":
    main()
