import numpy as np

from dmanifold import validate_mor
from dmanifold.laws import LawReport, random_std_chain, run_law_suite, std_laws, vvect_laws


def test_small_suites_pass():
    for report in (vvect_laws(seed=3, cases=10), std_laws(seed=3, cases=10)):
        assert report.ok and report.cases == 10
        assert all(n == 10 for n in report.passed.values())


def test_suite_is_deterministic():
    a = run_law_suite(seed=5, cases=4)
    b = run_law_suite(seed=5, cases=4)
    for key in ("vvect", "standard"):
        a[key].pop("seconds"), b[key].pop("seconds")
    assert a == b


def test_generated_chains_respect_size_limits():
    for seed in range(20):
        models, chain = random_std_chain(np.random.default_rng(seed), 3)
        assert all(X.n <= 3 and X.k <= 3 for X in models)
        for m in chain:
            assert validate_mor(m.source, m.target, m.f, m.fhat).ok
            assert all(p.degree() <= 3 for p in m.f)


def test_failures_are_recorded():
    report = LawReport()
    report.record("law", True, 0)
    report.record("law", False, 1)
    assert not report.ok
    assert report.as_dict()["failed"] == {"law": [1]} and report.passed == {"law": 1}
