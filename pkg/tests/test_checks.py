import pytest

from octoinv import checks
from octoinv.fields import Q, R
from octoinv.automorphisms import torus_element


def test_full_suites_pass():
    results = checks.run_suites(seed=0, scale=1.0)
    failed = [(name, detail) for name, ok, detail in results if not ok]
    assert not failed


def test_gamma_h_is_the_torus_element():
    assert checks.off_diagonal_negation(Q) == torus_element(-1, 1, Q)
    assert checks.gamma_h_consistency(R)[1]


@pytest.mark.parametrize("seed", [1, 2])
def test_suites_are_seed_independent(seed):
    assert all(ok for _, ok, _ in checks.run_suites(seed=seed, scale=0.1))
