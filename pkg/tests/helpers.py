"""Small constructors shared by the test modules."""

from dmanifold import PolyMatrix, StdModel, parse_poly


def P(text, names=("x",)):
    return parse_poly(text, list(names))


def mat(rows, names=("x",), shape=None):
    n = len(names)
    entries = [[P(e, names) for e in row] for row in rows]
    if shape is None:
        return PolyMatrix(entries, n)
    return PolyMatrix(entries, n, *shape)


def model(section, names=("x",), domain=(), orient=1):
    return StdModel(len(names), len(section), [P(s, names) for s in section],
                    [P(d, names) for d in domain], orient, list(names))
