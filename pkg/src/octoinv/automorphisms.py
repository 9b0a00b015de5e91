"""8x8 linear maps on the split octonions: automorphism checks and the named elements.

All matrices are in the fixed octonion basis of :mod:`octoinv.algebra`; a map
acts on column vectors, so ``compose(f, g)`` is the matrix product f·g and
applies g first.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import (
    AlgebraError,
    Octonion,
    SubalgebraBasis,
    octonion_algebra,
    oct_mul,
    oct_norm,
    search_anisotropic,
)
from .fields import PRIME_FIELD, FieldSpec
from .linalg import SingularMatrixError, identity, in_span, inverse as mat_inverse, kernel, mat_mul, primitive, rank

DIM = 8
# s reverses the basis order inside each 2x2 block
S_PERMUTATION = (3, 2, 1, 0, 7, 6, 5, 4)


class AutomorphismError(ValueError):
    pass


@dataclass(frozen=True)
class LinearMap:
    matrix: tuple
    field: FieldSpec
    verified: bool = dc_field(default=False, compare=False)

    @classmethod
    def identity(cls, field: FieldSpec) -> LinearMap:
        return cls(identity(DIM, field.one, field.zero), field, True)

    @classmethod
    def from_columns(cls, columns, field: FieldSpec) -> LinearMap:
        return cls(tuple(zip(*columns)), field)

    def column(self, j):
        return tuple(row[j] for row in self.matrix)

    def apply_vector(self, v):
        zero = self.field.zero
        return tuple(sum((x * y for x, y in zip(row, v) if y), start=zero) for row in self.matrix)

    def __call__(self, x: Octonion) -> Octonion:
        return Octonion._raw(self.apply_vector(x.coords), self.field)

    def to_json(self):
        return [[str(x) for x in row] for row in self.matrix]


def _check_fields(*maps):
    f = maps[0].field
    for m in maps[1:]:
        if m.field != f:
            raise AutomorphismError(f"field mismatch: {f} vs {m.field}")


def compose(m1: LinearMap, m2: LinearMap) -> LinearMap:
    _check_fields(m1, m2)
    return LinearMap(mat_mul(m1.matrix, m2.matrix), m1.field, m1.verified and m2.verified)


def inverse(m: LinearMap) -> LinearMap:
    try:
        inv = mat_inverse(m.matrix, m.field.one, m.field.zero)
    except SingularMatrixError:
        raise AutomorphismError("map is singular") from None
    return LinearMap(inv, m.field, m.verified)


def power(m: LinearMap, n: int) -> LinearMap:
    out = LinearMap.identity(m.field)
    for _ in range(n):
        out = compose(out, m)
    return out


def order(m: LinearMap, cap: int = 12) -> int | None:
    """Least n <= cap with m^n = id; None when the order exceeds ``cap``."""
    ident = LinearMap.identity(m.field)
    acc = m
    for n in range(1, cap + 1):
        if acc == ident:
            return n
        acc = compose(acc, m)
    return None


@dataclass
class AutomorphismCheck:
    ok: bool
    reason: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def is_automorphism(m: LinearMap) -> AutomorphismCheck:
    """Invertible, fixes e, and multiplicative on all 64 basis pairs."""
    field = m.field
    if rank(m.matrix) != DIM:
        return AutomorphismCheck(False, "singular")
    e = Octonion.identity(field)
    if m(e) != e:
        return AutomorphismCheck(False, "does not fix the identity", (e.coords,))
    table = octonion_algebra(field).table
    cols = [Octonion._raw(m.column(j), field) for j in range(DIM)]
    for i in range(DIM):
        for j in range(DIM):
            lhs = m.apply_vector(table[i][j])
            rhs = oct_mul(cols[i], cols[j]).coords
            if lhs != rhs:
                return AutomorphismCheck(False, "not multiplicative", (i, j))
    return AutomorphismCheck(True)


def verified(m: LinearMap) -> LinearMap:
    check = is_automorphism(m)
    if not check:
        raise AutomorphismError(f"not an automorphism ({check.reason}, witness {check.witness})")
    return LinearMap(m.matrix, m.field, True)


def _diagonal(entries, field):
    z = field.zero
    return tuple(tuple(entries[i] if i == j else z for j in range(DIM)) for i in range(DIM))


@dataclass(frozen=True)
class TorusElement:
    beta: object
    gamma: object
    field: FieldSpec

    def diagonal(self):
        b, g = self.beta, self.gamma
        one = self.field.one
        return (one, b * g, 1 / (b * g), one, 1 / g, b, 1 / b, g)

    def to_map(self) -> LinearMap:
        return LinearMap(_diagonal(self.diagonal(), self.field), self.field, True)


def torus_element(beta, gamma, field: FieldSpec) -> LinearMap:
    """diag(1, βγ, 1/(βγ), 1, 1/γ, β, 1/β, γ)."""
    b, g = field.element(beta), field.element(gamma)
    if not b or not g:
        raise AutomorphismError("torus parameters must be nonzero")
    return TorusElement(b, g, field).to_map()


def s_element(field: FieldSpec) -> LinearMap:
    """The block anti-diagonal permutation; inverts every torus element under conjugation."""
    one, z = field.one, field.zero
    matrix = tuple(tuple(one if j == S_PERMUTATION[i] else z for j in range(DIM)) for i in range(DIM))
    return verified(LinearMap(matrix, field))


def s_times_torus(beta, gamma, field: FieldSpec) -> LinearMap:
    return compose(s_element(field), torus_element(beta, gamma, field))


def s_p_element(p, field: FieldSpec) -> LinearMap:
    """The involution fixing <e, a, b, ab> with a = (0, [[0,1],[1,0]]), b = ([[0,p],[1,0]], 0).

    Its matrix is s·t(1, 1/p).
    """
    p = field.element(p)
    return s_times_torus(1, 1 / p, field)


def _square_roots_of_one(field: FieldSpec):
    if field.kind == PRIME_FIELD:
        return [field.element(x) for x in range(1, field.p) if x * x % field.p == 1]
    return [field.one, -field.one]


def involutive_torus_elements(field: FieldSpec) -> list[TorusElement]:
    """Torus elements t != id with t^2 = id."""
    out = []
    ident = LinearMap.identity(field)
    for b in _square_roots_of_one(field):
        for g in _square_roots_of_one(field):
            if b == 1 and g == 1:
                continue
            t = TorusElement(b, g, field)
            m = t.to_map()
            if compose(m, m) == ident:
                out.append(t)
    return out


def eigenspace(m: LinearMap, lam) -> list:
    lam = m.field.element(lam)
    shifted = tuple(
        tuple(x - lam if i == j else x for j, x in enumerate(row)) for i, row in enumerate(m.matrix)
    )
    return kernel(shifted, m.field.one, m.field.zero)


def fixed_subalgebra(t: LinearMap) -> SubalgebraBasis:
    """The subalgebra fixed pointwise by an automorphism of order at most 2."""
    if not t.verified and not is_automorphism(t):
        raise AutomorphismError("not an automorphism")
    if compose(t, t) != LinearMap.identity(t.field):
        raise AutomorphismError("map does not square to the identity")
    d = SubalgebraBasis(octonion_algebra(t.field), tuple(eigenspace(t, 1)))
    failure = d.closure_failure()
    if failure is not None:
        raise AutomorphismError(f"fixed space not closed under multiplication at {failure}; engine bug")
    expected = DIM if t == LinearMap.identity(t.field) else 4
    if d.dim != expected:
        raise AutomorphismError(f"fixed algebra has dimension {d.dim}, expected {expected}")
    return d


@dataclass(frozen=True)
class QuaternionPresentation:
    """Basis e, a, b, ab with a^2 = α e, b^2 = β e, ab = -ba."""

    e: Octonion
    a: Octonion
    b: Octonion
    ab: Octonion
    alpha: object
    beta: object

    def basis(self):
        return [self.e, self.a, self.b, self.ab]

    def violations(self) -> list[str]:
        e, a, b, ab = self.e, self.a, self.b, self.ab
        bad = []
        if bilinear_oct(a, e) or bilinear_oct(b, e):
            bad.append("a, b not orthogonal to e")
        if bilinear_oct(a, b):
            bad.append("a not orthogonal to b")
        if a * b != ab:
            bad.append("ab != a·b")
        if a * a != e * self.alpha:
            bad.append("a^2 != α e")
        if b * b != e * self.beta:
            bad.append("b^2 != β e")
        if b * a != -ab:
            bad.append("ab != -ba")
        return bad

    def to_json(self):
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "basis": {k: str(v) for k, v in zip(("e", "a", "b", "ab"), self.basis())},
        }


def bilinear_oct(x: Octonion, y: Octonion):
    return oct_norm(x + y) - oct_norm(x) - oct_norm(y)


def _project_away(vectors, w, alg):
    nw = alg.bilinear(w, w)
    out = []
    for v in vectors:
        c = alg.bilinear(v, w) / nw
        p = primitive(tuple(x - c * y for x, y in zip(v, w)))
        if any(p) and rank(out + [p]) > len(out):
            out.append(p)
    return out


def quaternion_presentation(d: SubalgebraBasis) -> QuaternionPresentation:
    """Deterministic {e, a, b, ab} basis of a quaternion subalgebra of the octonions."""
    if d.dim != 4:
        raise AutomorphismError("presentation needs a 4-dimensional subalgebra")
    alg = d.ambient
    field = d.field
    unit = alg.unit
    pure = _project_away(list(d.vectors), unit, alg)
    a = search_anisotropic(pure, alg.norm)
    if a is None:
        raise AutomorphismError("presentation search exhausted (no anisotropic a)")
    rest = _project_away(pure, a, alg)
    b = search_anisotropic(rest, alg.norm)
    if b is None:
        raise AutomorphismError("presentation search exhausted (no anisotropic b)")
    ao, bo = Octonion._raw(a, field), Octonion._raw(b, field)
    pres = QuaternionPresentation(
        Octonion._raw(unit, field), ao, bo, ao * bo, -oct_norm(ao), -oct_norm(bo)
    )
    bad = pres.violations()
    if bad:
        raise AutomorphismError(f"presentation invariants fail: {bad}")
    if rank([x.coords for x in pres.basis()]) != 4 or not all(d.contains(x.coords) for x in pres.basis()):
        raise AutomorphismError("presentation does not span the subalgebra")
    return pres


def aut_fixing_subalgebra(d_elem: Octonion, p_elem: Octonion, D: SubalgebraBasis, a: Octonion, check: bool = True) -> LinearMap:
    """The automorphism x + ya -> d x d^-1 + (p d y d^-1) a of C = D ⊕ Da."""
    field = D.field
    if not oct_norm(d_elem):
        raise AutomorphismError("d must be invertible (N(d) != 0)")
    if oct_norm(p_elem) != 1:
        raise AutomorphismError("p must have norm 1")
    if not D.contains(d_elem.coords) or not D.contains(p_elem.coords):
        raise AutomorphismError("d and p must lie in D")
    if not oct_norm(a):
        raise AutomorphismError("a must be anisotropic")
    if any(bilinear_oct(a, x) for x in D.octonions()):
        raise AutomorphismError("a must lie in the orthogonal complement of D")
    d_inv = d_elem.inverse()
    pd = p_elem * d_elem
    xs = D.octonions()
    adapted = [x.coords for x in xs] + [(x * a).coords for x in xs]
    images = [((d_elem * x) * d_inv).coords for x in xs] + [(((pd * x) * d_inv) * a).coords for x in xs]
    try:
        adapted_inv = mat_inverse(tuple(zip(*adapted)), field.one, field.zero)
    except SingularMatrixError:
        raise AlgebraError("D and Da do not span the octonions") from None
    m = LinearMap(mat_mul(tuple(zip(*images)), adapted_inv), field)
    return verified(m) if check else m


def commutes_with(f: LinearMap, t: LinearMap) -> bool:
    return compose(f, t) == compose(t, f)


def leaves_invariant(f: LinearMap, D: SubalgebraBasis) -> bool:
    return all(in_span(D.vectors, f.apply_vector(v)) for v in D.vectors)

