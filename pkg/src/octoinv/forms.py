"""Diagonal quadratic forms: isotropy decisions and the quaternion split/division test."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt

import numpy as np

from .fields import (
    COMPLEX,
    INFINITY,
    PADIC,
    PRIME_FIELD,
    RATIONALS,
    REALS,
    FieldError,
    FieldSpec,
    Qp,
    hilbert_symbol,
    hilbert_symbol_at_place,
    is_square,
    relevant_places,
)

SPLIT = "split"
DIVISION = "division"


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class DiagonalForm:
    """The form sum c_i x_i^2 with all c_i nonzero."""

    coefficients: tuple
    field: FieldSpec

    def __post_init__(self):
        coeffs = tuple(self.field.element(c) for c in self.coefficients)
        if not coeffs:
            raise FormError("empty form")
        if any(not c for c in coeffs):
            raise FormError("degenerate form: zero coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def evaluate(self, vec):
        return sum((c * x * x for c, x in zip(self.coefficients, vec)), start=self.field.zero)


def quaternion_norm_form(alpha, beta, field: FieldSpec) -> DiagonalForm:
    """<1, -α, -β, αβ>."""
    a, b = field.element(alpha), field.element(beta)
    if not a or not b:
        raise FormError("quaternion parameters must be nonzero")
    return DiagonalForm((field.one, -a, -b, a * b), field)


def pfister3_form(alpha, beta, gamma, field: FieldSpec) -> DiagonalForm:
    a, b, c = (field.element(x) for x in (alpha, beta, gamma))
    return DiagonalForm((field.one, -a, -b, a * b, -c, a * c, b * c, -a * b * c), field)


@dataclass
class IsotropyResult:
    isotropic: bool
    witness: tuple | None = None
    method: str = ""
    local: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.isotropic


# -- local decisions ----------------------------------------------------------

def _local_isotropic(coeffs, place) -> bool:
    """Isotropy over Q_place (``inf`` meaning R) of a form with rational coefficients."""
    n = len(coeffs)
    if place == INFINITY:
        return any(c > 0 for c in coeffs) and any(c < 0 for c in coeffs)
    field = Qp(place)
    if n == 1:
        return False
    if n >= 5:
        return True
    d = Fraction(1)
    for c in coeffs:
        d *= c
    if n == 2:
        return is_square(-d, field)
    eps = 1
    for ci, cj in itertools.combinations(coeffs, 2):
        eps *= hilbert_symbol_at_place(ci, cj, place)
    if n == 3:
        return hilbert_symbol_at_place(-1, -d, place) == eps
    return not is_square(d, field) or eps == hilbert_symbol_at_place(-1, -1, place)


def _finite_field_search(coeffs, field: FieldSpec):
    """Exhaustive search for a projective zero, growing the support one coordinate at a time."""
    p = field.p
    n = len(coeffs)
    vals = [c.value for c in coeffs]
    squares = [x * x % p for x in range(p)]
    for m in range(2, n + 1):
        # projective points of the leading m coordinates whose coordinate m-1 is 1
        for head in itertools.product(range(p), repeat=m - 1):
            total = vals[m - 1]
            for c, x in zip(vals, head):
                total += c * squares[x]
            if total % p == 0:
                vec = head + (1,) + (0,) * (n - m)
                return tuple(field.element(x) for x in vec)
    return None


def _is_rational_square(r: Fraction) -> bool:
    if r < 0:
        return False
    n, d = r.numerator, r.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def _rational_sqrt(r: Fraction) -> Fraction:
    return Fraction(isqrt(r.numerator), isqrt(r.denominator))


def _cheap_rational_witness(coeffs):
    n = len(coeffs)
    for i, j in itertools.combinations(range(n), 2):
        r = -coeffs[j] / coeffs[i]
        if _is_rational_square(r):
            vec = [Fraction(0)] * n
            vec[i], vec[j] = _rational_sqrt(r), Fraction(1)
            return tuple(vec)
    return None


def rational_isotropic_vector(coeffs, field: FieldSpec | None = None, max_bound: int | None = None):
    """A rational zero of sum c_i x_i^2, found by box search of growing radius.

    The form must be isotropic over Q (checked first, so the search terminates).
    """
    coeffs = [Fraction(c) for c in coeffs]
    if not decide_rational(coeffs).isotropic:
        raise FormError("form has no rational isotropic vector")
    hit = _cheap_rational_witness(coeffs)
    if hit is None:
        n = len(coeffs)
        bound = 1
        while hit is None:
            if max_bound is not None and bound > max_bound:
                return None
            for head in itertools.product(range(-bound, bound + 1), repeat=n - 1):
                if max(abs(x) for x in head) != bound:
                    continue
                s = sum(c * x * x for c, x in zip(coeffs, head))
                r = -s / coeffs[-1]
                if _is_rational_square(r):
                    hit = tuple(Fraction(x) for x in head) + (_rational_sqrt(r),)
                    if any(hit):
                        break
                    hit = None
            bound += 1
    if field is not None:
        hit = tuple(field.element(x) for x in hit)
    return hit


def decide_rational(coeffs) -> IsotropyResult:
    """Hasse-Minkowski: isotropic over Q iff isotropic at infinity and every relevant prime."""
    coeffs = [Fraction(c) for c in coeffs]
    local = {place: _local_isotropic(coeffs, place) for place in relevant_places(*coeffs)}
    if len(coeffs) == 2:
        ok = _is_rational_square(-coeffs[0] * coeffs[1])
    else:
        ok = all(local.values())
    return IsotropyResult(ok, None, "hasse-minkowski", local)


def is_isotropic(f: DiagonalForm) -> IsotropyResult:
    kind = f.field.kind
    coeffs = f.coefficients
    if kind == PRIME_FIELD:
        w = _finite_field_search(coeffs, f.field)
        return IsotropyResult(w is not None, w, "exhaustive")
    if kind == COMPLEX:
        result = IsotropyResult(f.dim >= 2, None, "dimension")
    elif kind == REALS:
        result = IsotropyResult(_local_isotropic(coeffs, INFINITY), None, "signs")
    elif kind == PADIC:
        result = IsotropyResult(_local_isotropic(coeffs, f.field.p), None, "hilbert-symbols")
    else:
        result = decide_rational(coeffs)
    if result.isotropic:
        w = _cheap_rational_witness(coeffs)
        if w is None and kind == RATIONALS:
            w = rational_isotropic_vector(coeffs)
        elif w is None and f.dim <= 4 and decide_rational(coeffs).isotropic:
            # local fields: a rational witness is a bonus, so keep the search short
            w = rational_isotropic_vector(coeffs, max_bound=4)
        if w is not None:
            result.witness = tuple(f.field.element(x) for x in w)
    return result


# -- brute-force oracles ---------------------------------------------------

def padic_isotropy_oracle(a, b, p: int) -> bool:
    """Decide whether z^2 = a x^2 + b y^2 has a nontrivial solution in Q_p by search mod p^k.

    A primitive solution mod p^k lifts to Q_p when some coordinate w is a unit
    with 2·v(∂f/∂w) + 1 <= k (Hensel).  Conversely every true primitive
    solution reduces to such a residue once k >= 2(v(2) + max v(a), v(b)) + 1.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise FormError("coefficients must be nonzero")
    # x -> x/den rescales a by a square; likewise strip p^2 factors
    a_int, b_int = a.numerator * a.denominator, b.numerator * b.denominator
    while a_int % (p * p) == 0:
        a_int //= p * p
    while b_int % (p * p) == 0:
        b_int //= p * p
    va = 1 if a_int % p == 0 else 0
    vb = 1 if b_int % p == 0 else 0
    v2 = 1 if p == 2 else 0
    k = 2 * (v2 + max(va, vb)) + 1
    mod = p**k
    z = np.arange(mod, dtype=np.int64)
    sq = np.zeros(mod, dtype=bool)
    usq = np.zeros(mod, dtype=bool)
    zz = (z * z) % mod
    sq[zz] = True
    usq[zz[z % p != 0]] = True
    x = z[:, None]
    y = z[None, :]
    r = (a_int % mod * ((x * x) % mod) + b_int % mod * ((y * y) % mod)) % mod
    x_ok = (x % p != 0) & (2 * (v2 + va) + 1 <= k)
    y_ok = (y % p != 0) & (2 * (v2 + vb) + 1 <= k)
    hit = usq[r] | (sq[r] & (x_ok | y_ok))
    return bool(hit.any())


def real_isotropy_oracle(a, b) -> bool:
    """z^2 = a x^2 + b y^2 over R: look for a nonzero (x, y) on a small grid with a x^2 + b y^2 >= 0."""
    for x, y in itertools.product((-1, 0, 1), repeat=2):
        if (x, y) != (0, 0) and a * x * x + b * y * y >= 0:
            return True
    return False


def symbol_oracle(a, b, field: FieldSpec) -> int:
    """Hilbert symbol computed by search rather than by formula."""
    if field.kind == PADIC:
        return 1 if padic_isotropy_oracle(a, b, field.p) else -1
    if field.kind == REALS:
        return 1 if real_isotropy_oracle(Fraction(a), Fraction(b)) else -1
    if field.kind == PRIME_FIELD:
        f = DiagonalForm((1, -field.element(a), -field.element(b)), field)
        return 1 if _finite_field_search(f.coefficients, field) is not None else -1
    if field.kind == COMPLEX:
        return 1
    raise FieldError(f"no search oracle over {field}")


# -- quaternion algebras -----------------------------------------------------

@dataclass(frozen=True)
class QuaternionInvariant:
    """Split/division verdict of (α, β / k) with, over Q, its ramified places."""

    alpha: object
    beta: object
    field: FieldSpec
    verdict: str
    ramified_places: tuple | None = None
    symbols: tuple = ()

    @property
    def is_split(self) -> bool:
        return self.verdict == SPLIT

    def to_json(self) -> dict:
        doc = {"alpha": str(self.alpha), "beta": str(self.beta), "verdict": self.verdict}
        if self.ramified_places is not None:
            doc["ramified_places"] = [str(v) for v in self.ramified_places]
        if self.symbols:
            doc["symbols"] = {str(place): s for place, s in self.symbols}
        return doc


def quaternion_is_split(alpha, beta, field: FieldSpec) -> QuaternionInvariant:
    a, b = field.element(alpha), field.element(beta)
    if not a or not b:
        raise FormError("quaternion parameters must be nonzero")
    ternary = DiagonalForm((field.one, -a, -b), field)
    verdict = SPLIT if is_isotropic(ternary).isotropic else DIVISION
    if field.kind == RATIONALS:
        symbols = tuple((v, hilbert_symbol_at_place(a, b, v)) for v in relevant_places(a, b))
        ramified = tuple(v for v, s in symbols if s == -1)
        return QuaternionInvariant(a, b, field, verdict, ramified, symbols)
    symbols = (("local", hilbert_symbol(a, b, field)),)
    return QuaternionInvariant(a, b, field, verdict, None, symbols)


def quaternion_isomorphic(q1: QuaternionInvariant, q2: QuaternionInvariant) -> bool:
    if q1.field != q2.field:
        raise FieldError(f"field mismatch: {q1.field} vs {q2.field}")
    if q1.field.kind == RATIONALS:
        return set(q1.ramified_places) == set(q2.ramified_places)
    return q1.verdict == q2.verdict

