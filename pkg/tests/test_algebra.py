import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from octoinv.algebra import (
    AlgebraError,
    Octonion,
    bilinear,
    StructureAlgebra,
    double,
    doubling_chain,
    find_zero_divisor,
    is_composition_algebra,
    oct_conj,
    oct_norm,
    octonion_algebra,
    orthogonal_basis,
    orthogonal_complement,
    random_octonion,
    scalar_algebra,
    split_quaternions,
)
from octoinv.automorphisms import fixed_subalgebra, s_element, s_times_torus, torus_element
from octoinv.fields import Fp, Q, R
from octoinv.forms import DiagonalForm, is_isotropic

small = st.integers(-6, 6)
octonions = st.lists(small, min_size=8, max_size=8).map(lambda c: Octonion(c, Q))

E2 = [[1, 0], [0, 1]]
Z2 = [[0, 0], [0, 0]]


def oct_(x, y, field=Q):
    return Octonion.from_mats(x, y, field)


def test_parse_round_trip():
    x = Octonion.parse("[[1,2/3],[-4,5]];[[0,1],[1,0]]", Q)
    assert x.coords == (1, Fraction(2, 3), -4, 5, 0, 1, 1, 0)
    assert Octonion.parse(str(x), Q) == x
    with pytest.raises(AlgebraError):
        Octonion.parse("[[1,2],[3,4]]", Q)


def test_identity_is_neutral(rng):
    e = Octonion.identity(Q)
    for _ in range(100):
        x = random_octonion(Q, rng)
        assert e * x == x == x * e


def test_product_examples():
    v = oct_(Z2, [[1, 0], [0, -1]])
    assert v * v == oct_([[-1, 0], [0, -1]], Z2)
    w = oct_(Z2, [[0, 1], [1, 0]])
    assert w * w == oct_([[-1, 0], [0, -1]], Z2)
    for p in (3, 7, 11):
        b = oct_([[0, p], [1, 0]], Z2)
        assert b * b == oct_([[p, 0], [0, p]], Z2)


def test_norm_conj_bilinear_examples():
    e = Octonion.identity(Q)
    assert oct_norm(e) == 1
    assert oct_norm(oct_(Z2, E2)) == -1
    assert oct_norm(oct_([[1, 2], [3, 4]], [[0, 1], [1, 0]])) == -1
    assert oct_conj(e) == e
    assert oct_conj(Octonion.basis(0, Q)) == Octonion.basis(3, Q)
    assert bilinear(e, e) == 2
    assert bilinear(Octonion.basis(0, Q), Octonion.basis(3, Q)) == 1
    assert bilinear(Octonion.basis(1, Q), Octonion.basis(0, Q)) == 0


def test_inverse():
    x = oct_([[1, 2], [3, 4]], [[0, 1], [1, 0]])
    assert x * x.inverse() == Octonion.identity(Q)
    with pytest.raises(ZeroDivisionError):
        Octonion.basis(0, Q).inverse()


@settings(max_examples=60)
@given(octonions, octonions)
def test_composition_and_moufang_style_laws(a, b):
    assert oct_norm(a * b) == oct_norm(a) * oct_norm(b)
    assert oct_conj(a * b) == oct_conj(b) * oct_conj(a)
    assert oct_conj(oct_conj(a)) == a
    assert a * (a * b) == (a * a) * b
    assert (a * b) * a == a * (b * a)


@settings(max_examples=40)
@given(octonions, octonions, octonions)
def test_moufang_identity(a, b, c):
    assert (a * b) * (c * a) == a * ((b * c) * a)


def test_prime_field_arithmetic():
    rng = random.Random(3)
    for _ in range(50):
        a, b = random_octonion(Fp(5), rng), random_octonion(Fp(5), rng)
        assert oct_norm(a * b) == oct_norm(a) * oct_norm(b)


def test_structure_table_matches_concrete_product(rng):
    alg = octonion_algebra(Q)
    for _ in range(20):
        a, b = random_octonion(Q, rng), random_octonion(Q, rng)
        assert alg.mul(a.coords, b.coords) == (a * b).coords
        assert alg.norm(a.coords) == oct_norm(a)


def test_doubling_flags():
    two = double(scalar_algebra(Q), 1)
    assert two.dim == 2 and two.is_commutative()[0] and two.is_associative()[0]
    chain = doubling_chain(Q, [1, 1, 1])
    top = chain[-1]
    assert top.dim == 8
    comm, cw = top.is_commutative()
    assoc, aw = top.is_associative()
    assert not comm and cw is not None
    assert not assoc and aw is not None
    assert [a.dim for a in chain] == [1, 2, 4, 8]
    with pytest.raises(AlgebraError):
        double(top, 1)
    with pytest.raises(AlgebraError):
        double(scalar_algebra(Q), 0)


def test_doubled_split_quaternions_match_octonions():
    doubled = double(split_quaternions(Q), 1)
    concrete = octonion_algebra(Q)
    for alg in (doubled, concrete):
        assert is_composition_algebra(alg)
        assert is_isotropic(DiagonalForm(tuple(_diagonal_norms(alg)), Q)).isotropic


def _diagonal_norms(alg):
    return [alg.norm(v) for v in orthogonal_basis([alg.basis_vector(i) for i in range(alg.dim)], alg)]


def test_composition_certificate_and_mutation():
    alg = octonion_algebra(Q)
    assert is_composition_algebra(alg)
    assert is_composition_algebra(split_quaternions(Q))
    broken = alg.with_product(1, 2, (1, 0, 0, 0, 0, 0, 0, 1))
    cert = is_composition_algebra(broken)
    assert not cert and cert.witness is not None


def test_json_round_trip():
    alg = doubling_chain(Fp(7), [1, 3, -1])[-1]
    again = StructureAlgebra.from_json(alg.to_json())
    assert again.table == alg.table and again.gram == alg.gram


def test_orthogonal_complement_examples():
    full = fixed_subalgebra(torus_element(1, 1, Q))
    assert orthogonal_complement(full) == []
    d = fixed_subalgebra(torus_element(-1, -1, Q))
    comp = orthogonal_complement(d)
    assert {tuple(i for i, x in enumerate(v) if x) for v in comp} == {(4,), (5,), (6,), (7,)}
    d = fixed_subalgebra(s_times_torus(1, -1, Q))
    comp = orthogonal_complement(d)
    assert len(comp) == 4
    alg = d.ambient
    assert all(alg.bilinear(u, v) == 0 for u in comp for v in d.vectors)


def test_torus_fixed_algebra_zero_divisor():
    e = Octonion.identity(Q)
    a = oct_(Z2, [[0, 1], [-1, 0]])
    b = oct_(Z2, [[0, 1], [1, 0]])
    ab = oct_([[1, 0], [0, -1]], Z2)
    assert a * b == ab
    d = fixed_subalgebra(torus_element(1, -1, Q))
    assert all(d.contains(x.coords) for x in (e, a, b, ab))
    assert (b - a) * (e + ab) == Octonion.zero(Q)
    u, w = find_zero_divisor(d)
    assert any(u) and any(w) and not any(d.ambient.mul(u, w))


def test_s_fixed_algebra_zero_divisor():
    e = Octonion.identity(Q)
    a = oct_([[0, 1], [1, 0]], Z2)
    b = oct_(Z2, E2)
    ab = a * b
    d = fixed_subalgebra(s_element(Q))
    assert all(d.contains(x.coords) for x in (e, a, b, ab))
    assert (b + ab) * (e + a + b + ab) == Octonion.zero(Q)
    assert find_zero_divisor(d) is not None


def test_division_fixed_algebra_has_no_zero_divisor():
    assert find_zero_divisor(fixed_subalgebra(s_times_torus(1, -1, R))) is None
    assert find_zero_divisor(fixed_subalgebra(s_times_torus(1, -1, Q))) is None
