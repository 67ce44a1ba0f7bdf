from dmanifold import GlueData, Overlap
from helpers import P, mat, model


def identity_charts(ehat="1"):
    """Two copies of ``S_{R,R,x}`` glued along ``e = x`` with bundle map ``ehat``."""
    A = model(["x"])
    ov = Overlap(0, 1, (), (P("x"),), mat([[ehat]]), witnesses=(["0"],))
    return GlueData(0, (A, A), (ov,), ("A#0", "A#1"), ((), ()), (["0"],))
