import random

import pytest
from hypothesis import given, settings, strategies as st

from octoinv.algebra import Octonion, orthogonal_complement, search_anisotropic
from octoinv.automorphisms import (
    AutomorphismError,
    LinearMap,
    aut_fixing_subalgebra,
    commutes_with,
    compose,
    eigenspace,
    fixed_subalgebra,
    inverse,
    involutive_torus_elements,
    is_automorphism,
    leaves_invariant,
    order,
    quaternion_presentation,
    s_element,
    s_p_element,
    s_times_torus,
    torus_element,
)
from octoinv.fields import C, Fp, Q, Qp, R, quadratic_nonresidue
from octoinv.forms import quaternion_is_split, quaternion_isomorphic


def diag(m):
    return tuple(m.matrix[i][i] for i in range(8))


def test_torus_examples():
    assert torus_element(1, 1, Q) == LinearMap.identity(Q)
    assert diag(torus_element(1, -1, Q)) == (1, -1, -1, 1, -1, 1, 1, -1)
    assert diag(torus_element(-1, 1, Q)) == (1, -1, -1, 1, 1, -1, -1, 1)
    with pytest.raises(AutomorphismError):
        torus_element(0, 1, Q)


def test_gamma_h_comparison():
    # negating the off-diagonal entries of both 2x2 blocks
    x = Octonion.parse("[[1,2],[3,4]];[[5,6],[7,8]]", Q)
    assert torus_element(-1, 1, Q)(x) == Octonion.parse("[[1,-2],[-3,4]];[[5,-6],[-7,8]]", Q)


def test_s_examples(rng):
    s = s_element(Q)
    assert compose(s, s) == LinearMap.identity(Q)
    assert is_automorphism(s)
    for _ in range(50):
        t = torus_element(Q.random_element(rng, nonzero=True), Q.random_element(rng, nonzero=True), Q)
        assert compose(compose(s, t), inverse(s)) == inverse(t)


def test_is_automorphism_examples():
    assert is_automorphism(torus_element(2, 3, Q))
    assert is_automorphism(s_times_torus(1, -1, Q))
    entries = [1] * 8
    entries[1] = -1
    flip = LinearMap(tuple(tuple(entries[i] if i == j else 0 for j in range(8)) for i in range(8)), Q)
    check = is_automorphism(flip)
    assert not check and check.witness is not None
    assert not is_automorphism(LinearMap(tuple(tuple(0 for _ in range(8)) for _ in range(8)), Q))


def test_order_examples():
    assert order(torus_element(1, -1, Q), 8) == 2
    assert order(LinearMap.identity(Q), 8) == 1
    assert order(torus_element(2, 1, Q), 8) is None
    assert order(torus_element(2, 1, Fp(7)), 8) == 3


@pytest.mark.parametrize("field", [Q, Fp(5), C, Qp(3)])
def test_involutive_torus_elements(field):
    el = field.element
    pairs = {(t.beta, t.gamma) for t in involutive_torus_elements(field)}
    assert pairs == {(el(1), el(-1)), (el(-1), el(1)), (el(-1), el(-1))}


def test_fixed_subalgebra_examples():
    d = fixed_subalgebra(torus_element(-1, -1, Q))
    assert {tuple(i for i, x in enumerate(v) if x) for v in d.vectors} == {(0,), (1,), (2,), (3,)}
    d = fixed_subalgebra(s_element(Q))
    for text in ("[[1,0],[0,1]];[[0,0],[0,0]]", "[[0,1],[1,0]];[[0,0],[0,0]]",
                 "[[0,0],[0,0]];[[1,0],[0,1]]", "[[0,0],[0,0]];[[0,1],[1,0]]"):
        assert d.contains(Octonion.parse(text, Q).coords)
    assert fixed_subalgebra(LinearMap.identity(Q)).dim == 8
    with pytest.raises(AutomorphismError):
        fixed_subalgebra(torus_element(2, 1, Q))


def test_eigenspaces():
    t = torus_element(1, -1, Q)
    minus = eigenspace(t, -1)
    assert len(minus) == 4
    assert len(eigenspace(LinearMap.identity(Q), 1)) == 8
    s = s_element(Q)
    d = fixed_subalgebra(s)
    alg = d.ambient
    minus = eigenspace(s, -1)
    assert len(minus) == 4
    assert all(alg.bilinear(u, v) == 0 for u in minus for v in d.vectors)


def test_presentation_examples():
    for field in (R, Q, Qp(2)):
        pres = quaternion_presentation(fixed_subalgebra(s_times_torus(1, -1, field)))
        assert (pres.alpha, pres.beta) == (-1, -1)
        assert not pres.violations()
    for p in (3, 5, 7):
        n = quadratic_nonresidue(p)
        field = Qp(p)
        pres = quaternion_presentation(fixed_subalgebra(s_times_torus(-n, -p * field.element(1) / n, field)))
        assert quaternion_isomorphic(quaternion_is_split(pres.alpha, pres.beta, field), quaternion_is_split(p, n, field))
    for p in (3, 7, 11):
        pres = quaternion_presentation(fixed_subalgebra(s_p_element(p, Q)))
        assert {pres.alpha, pres.beta} == {-1, p}


def test_s_p_fixes_the_example_generators():
    for p in (3, 7, 11):
        m = s_p_element(p, Q)
        a = Octonion.parse("[[0,0],[0,0]];[[0,1],[1,0]]", Q)
        b = Octonion.parse(f"[[0,{p}],[1,0]];[[0,0],[0,0]]", Q)
        assert m(a) == a and m(b) == b and m(a * b) == a * b
        assert a * a == Octonion.identity(Q) * -1
        assert b * b == Octonion.identity(Q) * p


def _split_setup(field):
    t = torus_element(-1, -1, field)
    D = fixed_subalgebra(t)
    a = Octonion._raw(search_anisotropic(orthogonal_complement(D), D.ambient.norm), field)
    return t, D, a


def test_s_dp_kernel_and_examples():
    t, D, a = _split_setup(Q)
    e = Octonion.identity(Q)
    for alpha in (2, 3, -5):
        assert aut_fixing_subalgebra(e * alpha, e, D, a) == LinearMap.identity(Q)
    d = Octonion.parse("[[1,0],[0,2]];[[0,0],[0,0]]", Q)
    f = aut_fixing_subalgebra(d, e, D, a)
    assert is_automorphism(f) and leaves_invariant(f, D) and f(e) == e
    p = Octonion.parse("[[2,3],[1,2]];[[0,0],[0,0]]", Q)
    f = aut_fixing_subalgebra(e, p, D, a)
    assert all(f(x) == x for x in D.octonions())
    with pytest.raises(AutomorphismError):
        aut_fixing_subalgebra(e, d, D, a)


def test_commutation_examples():
    t, D, a = _split_setup(Q)
    assert commutes_with(s_element(Q), torus_element(1, -1, Q))
    # s_dp built for a different subalgebra moves D off itself
    t2 = s_element(Q)
    D2 = fixed_subalgebra(t2)
    a2 = Octonion._raw(search_anisotropic(orthogonal_complement(D2), D2.ambient.norm), Q)
    d = Octonion.parse("[[1,0],[0,1]];[[0,1],[1,0]]", Q)
    g = aut_fixing_subalgebra(d, Octonion.identity(Q), D2, a2)
    assert not commutes_with(g, t) and not leaves_invariant(g, D)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=8, max_size=8), st.integers(0, 2**16))
def test_s_dp_commutes_with_its_involution(coeffs, seed):
    t, D, a = _split_setup(Fp(5))
    field = Fp(5)
    d = Octonion._raw(tuple(field.element(c) for c in coeffs[:4]) + (field.zero,) * 4, field)
    if not d.norm():
        return
    rng = random.Random(seed)
    while True:
        u = Octonion._raw(tuple(field.random_element(rng) for _ in range(4)) + (field.zero,) * 4, field)
        if u.norm():
            break
    p = (u * u) * (1 / u.norm())
    f = aut_fixing_subalgebra(d, p, D, a)
    assert commutes_with(f, t) and leaves_invariant(f, D)
