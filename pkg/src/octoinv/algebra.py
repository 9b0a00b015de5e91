"""Split octonions as pairs of 2x2 matrices, and table-driven composition algebras.

Octonion coordinates are always taken in the basis

    (E11,0) (E12,0) (E21,0) (E22,0) (0,E11) (0,E12) (0,E21) (0,E22)

so that the standard maximal torus acts diagonally.
"""

from __future__ import annotations

import itertools
import json
import random
import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from . import forms
from .fields import FieldError, FieldSpec, parse_field, parse_scalar
from .linalg import gram_kernel, rank, solve_in_span

BASIS_LABELS = ("(E11,0)", "(E12,0)", "(E21,0)", "(E22,0)", "(0,E11)", "(0,E12)", "(0,E21)", "(0,E22)")


class AlgebraError(ValueError):
    pass


class NoRationalWitness(AlgebraError):
    """The algebra is split over the field but has no zero divisor with rational coordinates."""


# -- 2x2 matrices, stored row-major as 4-tuples ------------------------------

def mat2_mul(x, u):
    return (
        x[0] * u[0] + x[1] * u[2],
        x[0] * u[1] + x[1] * u[3],
        x[2] * u[0] + x[3] * u[2],
        x[2] * u[1] + x[3] * u[3],
    )


def mat2_bar(x):
    return (x[3], -x[1], -x[2], x[0])


def mat2_det(x):
    return x[0] * x[3] - x[1] * x[2]


def _vadd(a, b):
    return tuple(i + j for i, j in zip(a, b))


class Octonion:
    """An element (x, y) of the split octonions over ``field``."""

    __slots__ = ("coords", "field")

    def __init__(self, coords, field: FieldSpec):
        if len(coords) != 8:
            raise AlgebraError("an octonion has 8 coordinates")
        self.coords = tuple(field.element(c) for c in coords)
        self.field = field

    @classmethod
    def _raw(cls, coords, field):
        obj = cls.__new__(cls)
        obj.coords = coords
        obj.field = field
        return obj

    @classmethod
    def from_mats(cls, x, y, field: FieldSpec) -> Octonion:
        flat = lambda m: tuple(m[0]) + tuple(m[1]) if len(m) == 2 else tuple(m)
        return cls(flat(x) + flat(y), field)

    @classmethod
    def identity(cls, field: FieldSpec) -> Octonion:
        return cls((1, 0, 0, 1, 0, 0, 0, 0), field)

    @classmethod
    def zero(cls, field: FieldSpec) -> Octonion:
        return cls((0,) * 8, field)

    @classmethod
    def basis(cls, i: int, field: FieldSpec) -> Octonion:
        return cls(tuple(int(i == j) for j in range(8)), field)

    @classmethod
    def parse(cls, text: str, field: FieldSpec) -> Octonion:
        """Parse ``"[[a,b],[c,d]];[[e,f],[g,h]]"``."""
        parts = text.split(";")
        if len(parts) != 2:
            raise AlgebraError(f"malformed octonion literal {text!r}")
        coords = []
        for part in parts:
            entries = re.findall(r"[^\[\],\s]+", part)
            if len(entries) != 4:
                raise AlgebraError(f"malformed 2x2 matrix {part!r}")
            coords.extend(parse_scalar(e, field) for e in entries)
        return cls(coords, field)

    @property
    def left(self):
        return self.coords[:4]

    @property
    def right(self):
        return self.coords[4:]

    def _check(self, other):
        if self.field != other.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        return Octonion._raw(_vadd(self.coords, other.coords), self.field)

    def __sub__(self, other):
        self._check(other)
        return Octonion._raw(tuple(i - j for i, j in zip(self.coords, other.coords)), self.field)

    def __neg__(self):
        return Octonion._raw(tuple(-c for c in self.coords), self.field)

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return oct_mul(self, other)
        c = self.field.element(other)
        return Octonion._raw(tuple(c * x for x in self.coords), self.field)

    def __rmul__(self, other):
        c = self.field.element(other)
        return Octonion._raw(tuple(c * x for x in self.coords), self.field)

    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.coords, self.field))

    def __bool__(self):
        return any(self.coords)

    def norm(self):
        return oct_norm(self)

    def conj(self):
        return oct_conj(self)

    def inverse(self) -> Octonion:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("octonion of norm zero has no inverse")
        return oct_conj(self) * (1 / n)

    def __repr__(self):
        return f"Octonion({self})"

    def __str__(self):
        x, y = [str(c) for c in self.left], [str(c) for c in self.right]
        return f"[[{x[0]},{x[1]}],[{x[2]},{x[3]}]];[[{y[0]},{y[1]}],[{y[2]},{y[3]}]]"


def oct_mul(a: Octonion, b: Octonion) -> Octonion:
    """(x, y)(u, v) = (xu + v̄y, vx + yū)."""
    a._check(b)
    x, y = a.coords[:4], a.coords[4:]
    u, v = b.coords[:4], b.coords[4:]
    first = _vadd(mat2_mul(x, u), mat2_mul(mat2_bar(v), y))
    second = _vadd(mat2_mul(v, x), mat2_mul(y, mat2_bar(u)))
    return Octonion._raw(first + second, a.field)


def oct_norm(a: Octonion):
    return mat2_det(a.coords[:4]) - mat2_det(a.coords[4:])


def oct_conj(a: Octonion) -> Octonion:
    return Octonion._raw(mat2_bar(a.coords[:4]) + tuple(-c for c in a.coords[4:]), a.field)


def bilinear(a: Octonion, b: Octonion):
    return oct_norm(a + b) - oct_norm(a) - oct_norm(b)


def random_octonion(field: FieldSpec, rng: random.Random, bound: int = 9) -> Octonion:
    return Octonion([field.random_element(rng, bound) for _ in range(8)], field)


# -- structure-constant algebras ---------------------------------------------

@dataclass(frozen=True)
class StructureAlgebra:
    """A finite-dimensional algebra given by its multiplication table and norm.

    ``table[i][j]`` holds the coordinates of ``basis[i] * basis[j]``;
    ``gram`` is the polarization of the norm on the basis.
    """

    field: FieldSpec
    basis: tuple
    table: tuple
    norms: tuple
    gram: tuple
    unit: tuple
    _sparse: tuple = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self._sparse is None:
            entries = tuple(
                (i, j, k, c)
                for i, row in enumerate(self.table)
                for j, prod in enumerate(row)
                for k, c in enumerate(prod)
                if c
            )
            object.__setattr__(self, "_sparse", entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def zero_vector(self):
        return (self.field.zero,) * self.dim

    def basis_vector(self, i):
        return tuple(self.field.one if j == i else self.field.zero for j in range(self.dim))

    def mul(self, u, v):
        out = [self.field.zero] * self.dim
        for i, j, k, c in self._sparse:
            if u[i] and v[j]:
                out[k] = out[k] + c * u[i] * v[j]
        return tuple(out)

    def bilinear(self, u, v):
        return sum(
            (u[i] * self.gram[i][j] * v[j] for i in range(self.dim) for j in range(self.dim) if u[i] and v[j]),
            start=self.field.zero,
        )

    def norm(self, v):
        total = self.field.zero
        for i in range(self.dim):
            if not v[i]:
                continue
            total = total + v[i] * v[i] * self.norms[i]
            for j in range(i + 1, self.dim):
                if v[j]:
                    total = total + v[i] * v[j] * self.gram[i][j]
        return total

    def conj(self, v):
        t = self.bilinear(v, self.unit)
        return tuple(t * e - x for e, x in zip(self.unit, v))

    def add(self, u, v):
        return tuple(a + b for a, b in zip(u, v))

    def scale(self, c, v):
        return tuple(c * x for x in v)

    def is_commutative(self):
        """(flag, witness pair of basis indices or None)."""
        for i, j in itertools.combinations(range(self.dim), 2):
            if self.table[i][j] != self.table[j][i]:
                return False, (self.basis[i], self.basis[j])
        return True, None

    def is_associative(self):
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            bi, bj, bk = (self.basis_vector(n) for n in (i, j, k))
            if self.mul(self.mul(bi, bj), bk) != self.mul(bi, self.mul(bj, bk)):
                return False, (self.basis[i], self.basis[j], self.basis[k])
        return True, None

    def with_product(self, i: int, j: int, value) -> StructureAlgebra:
        """Copy of the algebra with one table entry replaced (mutation testing)."""
        table = [list(row) for row in self.table]
        table[i][j] = tuple(self.field.element(x) for x in value)
        return StructureAlgebra(self.field, self.basis, tuple(tuple(r) for r in table), self.norms, self.gram, self.unit)

    def to_json(self) -> dict:
        s = lambda vec: [str(x) for x in vec]
        return {
            "field": str(self.field),
            "dim": self.dim,
            "basis": list(self.basis),
            "table": [[s(prod) for prod in row] for row in self.table],
            "norms": s(self.norms),
            "gram": [s(row) for row in self.gram],
            "unit": s(self.unit),
        }

    @classmethod
    def from_json(cls, doc: dict) -> StructureAlgebra:
        field = parse_field(doc["field"])
        p = lambda vec: tuple(parse_scalar(x, field) for x in vec)
        return cls(
            field,
            tuple(doc["basis"]),
            tuple(tuple(p(prod) for prod in row) for row in doc["table"]),
            p(doc["norms"]),
            tuple(p(row) for row in doc["gram"]),
            p(doc["unit"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _algebra_from_product(field, labels, vectors, product, norm, unit):
    n = len(vectors)
    table = tuple(tuple(product(vectors[i], vectors[j]) for j in range(n)) for i in range(n))
    norms = tuple(norm(v) for v in vectors)
    gram = tuple(
        tuple(norm(_vadd(vectors[i], vectors[j])) - norms[i] - norms[j] for j in range(n)) for i in range(n)
    )
    return StructureAlgebra(field, tuple(labels), table, norms, gram, unit)


def scalar_algebra(field: FieldSpec) -> StructureAlgebra:
    """The one-dimensional composition algebra k·e."""
    one = field.one
    return StructureAlgebra(field, ("e",), (((one,),),), (one,), ((one + one,),), (one,))


def split_quaternions(field: FieldSpec) -> StructureAlgebra:
    """M_2(k) with the determinant as norm."""
    vectors = [tuple(field.one if j == i else field.zero for j in range(4)) for i in range(4)]
    return _algebra_from_product(
        field, ("E11", "E12", "E21", "E22"), vectors, mat2_mul, mat2_det, (field.one, field.zero, field.zero, field.one)
    )


@lru_cache(maxsize=None)
def octonion_algebra(field: FieldSpec) -> StructureAlgebra:
    """The concrete split octonions as a table algebra in the fixed basis."""
    basis = [Octonion.basis(i, field) for i in range(8)]
    return _algebra_from_product(
        field,
        BASIS_LABELS,
        [b.coords for b in basis],
        lambda u, v: oct_mul(Octonion._raw(u, field), Octonion._raw(v, field)).coords,
        lambda u: oct_norm(Octonion._raw(u, field)),
        Octonion.identity(field).coords,
    )


def double(d: StructureAlgebra, alpha) -> StructureAlgebra:
    """Doubling D ⊕ Da with (x+ya)(u+va) = (xu + α v̄y) + (vx + yū)a and N(x+ya) = N(x) − αN(y)."""
    if d.dim >= 8:
        raise AlgebraError("cannot double an 8-dimensional algebra: composition algebras stop at dimension 8")
    alpha = d.field.element(alpha)
    if not alpha:
        raise AlgebraError("doubling parameter must be nonzero")
    assoc, witness = d.is_associative()
    if not assoc:
        raise AlgebraError(f"doubling needs an associative algebra; associator fails on {witness}")
    n = d.dim

    def product(p, q):
        x, y = p[:n], p[n:]
        u, v = q[:n], q[n:]
        first = d.add(d.mul(x, u), d.scale(alpha, d.mul(d.conj(v), y)))
        second = d.add(d.mul(v, x), d.mul(y, d.conj(u)))
        return first + second

    def norm(p):
        return d.norm(p[:n]) - alpha * d.norm(p[n:])

    gen = "abcd"[n.bit_length() - 1]
    labels = list(d.basis) + [gen if b == "e" else b + gen for b in d.basis]
    vectors = [tuple(d.field.one if j == i else d.field.zero for j in range(2 * n)) for i in range(2 * n)]
    return _algebra_from_product(d.field, labels, vectors, product, norm, d.unit + d.zero_vector)


def doubling_chain(field: FieldSpec, alphas) -> list[StructureAlgebra]:
    chain = [scalar_algebra(field)]
    for a in alphas:
        chain.append(double(chain[-1], a))
    return chain


@dataclass
class CompositionCertificate:
    ok: bool
    failure: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def is_composition_algebra(a: StructureAlgebra, samples: int = 50, rng: random.Random | None = None) -> CompositionCertificate:
    """Check unit laws, polarization, nondegeneracy and N(xy) = N(x)N(y)."""
    rng = rng or random.Random(0)
    n = a.dim
    basis = [a.basis_vector(i) for i in range(n)]
    for i, b in enumerate(basis):
        if a.mul(a.unit, b) != b or a.mul(b, a.unit) != b:
            return CompositionCertificate(False, "unit law", (a.basis[i],))
    for i in range(n):
        if a.gram[i][i] != 2 * a.norms[i]:
            return CompositionCertificate(False, "polarization", (a.basis[i], a.basis[i]))
        for j in range(n):
            if a.gram[i][j] != a.gram[j][i]:
                return CompositionCertificate(False, "polarization", (a.basis[i], a.basis[j]))
    if rank(a.gram) != n:
        return CompositionCertificate(False, "degenerate norm form", None)
    for i, j in itertools.product(range(n), repeat=2):
        if a.norm(a.table[i][j]) != a.norms[i] * a.norms[j]:
            return CompositionCertificate(False, "composition law", (basis[i], basis[j]))
    for _ in range(samples):
        u = tuple(a.field.random_element(rng) for _ in range(n))
        v = tuple(a.field.random_element(rng) for _ in range(n))
        if a.norm(a.mul(u, v)) != a.norm(u) * a.norm(v):
            return CompositionCertificate(False, "composition law", (u, v))
        if a.bilinear(u, v) != a.norm(a.add(u, v)) - a.norm(u) - a.norm(v):
            return CompositionCertificate(False, "polarization", (u, v))
    return CompositionCertificate(True)


# -- subalgebras ------------------------------------------------------------

@dataclass(frozen=True)
class SubalgebraBasis:
    """Coordinate vectors (in the ambient basis) spanning a subalgebra."""

    ambient: StructureAlgebra
    vectors: tuple

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def field(self) -> FieldSpec:
        return self.ambient.field

    def contains(self, v) -> bool:
        return solve_in_span(self.vectors, v) is not None

    def coordinates(self, v):
        c = solve_in_span(self.vectors, v)
        if c is None:
            raise AlgebraError("vector is not in the subalgebra")
        return tuple(c)

    def closure_failure(self):
        """First pair of basis vectors whose product leaves the span, or None."""
        if not self.contains(self.ambient.unit):
            return ("unit",)
        for i, u in enumerate(self.vectors):
            for j, v in enumerate(self.vectors):
                if not self.contains(self.ambient.mul(u, v)):
                    return (i, j)
        return None

    def structure(self) -> StructureAlgebra:
        """The subalgebra as a table algebra in its own basis."""
        labels = [f"d{i}" for i in range(self.dim)]
        vectors = [tuple(self.field.one if j == i else self.field.zero for j in range(self.dim)) for i in range(self.dim)]
        lift = lambda c: tuple(
            sum((ci * v[k] for ci, v in zip(c, self.vectors)), start=self.field.zero) for k in range(self.ambient.dim)
        )
        return _algebra_from_product(
            self.field,
            labels,
            vectors,
            lambda p, q: self.coordinates(self.ambient.mul(lift(p), lift(q))),
            lambda p: self.ambient.norm(lift(p)),
            self.coordinates(self.ambient.unit),
        )

    def octonions(self) -> list[Octonion]:
        if self.ambient.dim != 8:
            raise AlgebraError("ambient algebra is not the split octonions")
        return [Octonion._raw(v, self.field) for v in self.vectors]


def orthogonal_complement(d: SubalgebraBasis, ambient: StructureAlgebra | None = None) -> list:
    ambient = ambient or d.ambient
    if rank(ambient.gram) != ambient.dim:
        raise AlgebraError("ambient norm form is degenerate")
    return gram_kernel(ambient.gram, d.vectors, ambient.field.one, ambient.field.zero)


def search_anisotropic(vectors, norm, start: int = 0):
    """First vector with nonzero norm among singles, then pairwise, then triple sums, in index order."""
    for size in (1, 2, 3):
        for combo in itertools.combinations(range(len(vectors)), size):
            v = vectors[combo[0]]
            for k in combo[1:]:
                v = tuple(x + y for x, y in zip(v, vectors[k]))
            if norm(v):
                return v
    return None


def orthogonal_basis(vectors, algebra: StructureAlgebra):
    """Gram-Schmidt over the norm form, choosing anisotropic pivots by :func:`search_anisotropic`.

    Returns a list of pairwise orthogonal vectors with nonzero norms spanning the same space.
    """
    remaining = list(vectors)
    out = []
    while remaining:
        w = search_anisotropic(remaining, algebra.norm)
        if w is None:
            raise AlgebraError("no anisotropic vector in search family")
        out.append(w)
        nw = algebra.bilinear(w, w)
        projected = []
        for v in remaining:
            c = algebra.bilinear(v, w) / nw
            projected.append(tuple(x - c * y for x, y in zip(v, w)))
        rows = [p for p in projected if any(p)]
        # keep a basis of the orthogonal remainder
        remaining = _independent(rows, len(remaining) - 1)
    return out


def _independent(rows, target):
    out = []
    for r in rows:
        if rank(out + [r]) > len(out):
            out.append(r)
        if len(out) == target:
            break
    return out


def find_zero_divisor(d: SubalgebraBasis):
    """A pair (u, w) of nonzero elements of ``d`` with uw = 0, or None if ``d`` is a division algebra.

    The norm form restricted to ``d`` is diagonalized and its isotropy decided
    over the field; an isotropic vector x gives the pair (x, x̄) since x·x̄ = N(x)e.
    """
    if d.dim != 4:
        raise AlgebraError("zero-divisor search expects a quaternion subalgebra")
    alg = d.ambient
    diag = orthogonal_basis(list(d.vectors), alg)
    coeffs = [alg.norm(w) for w in diag]
    form = forms.DiagonalForm(tuple(coeffs), d.field)
    result = forms.is_isotropic(form)
    if not result.isotropic:
        return None
    witness = result.witness
    if witness is None:
        try:
            witness = forms.rational_isotropic_vector(coeffs, d.field)
        except forms.FormError:
            raise NoRationalWitness(f"split over {d.field} but anisotropic over Q; no exact zero divisor") from None
    x = tuple(sum((c * w[k] for c, w in zip(witness, diag)), start=d.field.zero) for k in range(alg.dim))
    u, w = x, alg.conj(x)
    if any(alg.mul(u, w)):
        raise AlgebraError("zero-divisor construction failed; engine bug")
    return u, w
