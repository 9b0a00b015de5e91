"""Exact scalars and the number-theoretic oracles behind them.

Characteristic-zero fields (Q, formal R, formal C, Q_p) all carry exact
``fractions.Fraction`` values; R, C and Q_p differ only in which square-class
oracle is attached.  Prime fields use :class:`ModP` residues.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import factorint, isprime

RATIONALS = "Q"
REALS = "R"
COMPLEX = "C"
PADIC = "Qp"
PRIME_FIELD = "Fp"

INFINITY = "inf"


class FieldError(ValueError):
    pass


class ModP:
    """A residue class modulo an odd prime."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldError(f"field mismatch: F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.value == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return ModP(pow(pow(self.value, -1, self.p), -n, self.p), self.p)
        return ModP(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class FieldSpec:
    """Which base field a computation lives over."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind in (RATIONALS, REALS, COMPLEX):
            if self.p is not None:
                raise FieldError(f"field {self.kind} takes no prime")
        elif self.kind == PADIC:
            if self.p is None or not isprime(self.p):
                raise FieldError(f"Qp needs a prime, got {self.p}")
        elif self.kind == PRIME_FIELD:
            if self.p is None or self.p == 2 or not isprime(self.p):
                raise FieldError(f"Fp needs an odd prime, got {self.p}")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == PRIME_FIELD else 0

    def element(self, x) -> Fraction | ModP:
        if self.kind == PRIME_FIELD:
            if isinstance(x, ModP):
                if x.p != self.p:
                    raise FieldError(f"field mismatch: F_{x.p} vs F_{self.p}")
                return x
            x = Fraction(x)
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in F_{self.p}")
            return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)
        if isinstance(x, ModP):
            raise FieldError(f"residue mod {x.p} is not an element of {self}")
        return Fraction(x)

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def random_element(self, rng, bound: int = 9, nonzero: bool = False):
        while True:
            if self.kind == PRIME_FIELD:
                x = self.element(rng.randrange(self.p))
            else:
                x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
            if x or not nonzero:
                return x

    def __str__(self):
        return self.kind if self.p is None else f"{self.kind}:{self.p}"

    @property
    def short_name(self) -> str:
        # compact labels used in report summaries: Q5, F7, ...
        if self.kind == PADIC:
            return f"Q{self.p}"
        if self.kind == PRIME_FIELD:
            return f"F{self.p}"
        return self.kind


Q = FieldSpec(RATIONALS)
R = FieldSpec(REALS)
C = FieldSpec(COMPLEX)


def Qp(p: int) -> FieldSpec:
    return FieldSpec(PADIC, p)


def Fp(p: int) -> FieldSpec:
    return FieldSpec(PRIME_FIELD, p)


_FIELD_RE = re.compile(r"^(Q|R|C)$|^(Qp|Fp):(\d+)$")
_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)(?:/(\d+))?\s*$")


def parse_field(text: str) -> FieldSpec:
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise FieldError(f"malformed field spec {text!r} (expected Q, R, C, Qp:<p> or Fp:<p>)")
    if m.group(1):
        return FieldSpec(m.group(1))
    return FieldSpec(m.group(2), int(m.group(3)))


def parse_scalar(text: str, field: FieldSpec | None = None):
    m = _SCALAR_RE.match(text)
    if not m:
        raise FieldError(f"malformed scalar {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise FieldError(f"zero denominator in {text!r}")
    value = Fraction(num, den)
    return value if field is None else field.element(value)


def format_scalar(x) -> str:
    return str(x)


def _as_fraction(x) -> Fraction:
    if isinstance(x, ModP):
        raise FieldError("expected a rational, got a residue mod %d" % x.p)
    return Fraction(x)


def padic_valuation(x, p: int) -> int:
    x = _as_fraction(x)
    if x == 0:
        raise FieldError("valuation of zero undefined")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _integer_rep(x) -> int:
    # n/d and n*d lie in the same square class
    x = _as_fraction(x)
    if x == 0:
        raise FieldError("zero has no square class")
    return x.numerator * x.denominator


def _split_p(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def quadratic_nonresidue(p: int) -> int:
    """Smallest positive integer that is not a square mod the odd prime ``p``."""
    if p == 2:
        raise FieldError("no quadratic non-residue mod 2; Q_2 square classes are handled separately")
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


def squarefree_kernel(n: int) -> int:
    sign = -1 if n < 0 else 1
    out = 1
    for q, e in factorint(abs(n)).items():
        if e % 2:
            out *= q
    return sign * out


_Q2_UNIT_CLASS = {1: 1, 3: -5, 5: 5, 7: -1}


def square_class(x, field: FieldSpec) -> int:
    """Canonical integer representative of the square class of ``x``."""
    if not x:
        raise FieldError("zero has no square class")
    kind = field.kind
    if kind == COMPLEX:
        return 1
    if kind == REALS:
        return 1 if x > 0 else -1
    if kind == RATIONALS:
        return squarefree_kernel(_integer_rep(x))
    if kind == PRIME_FIELD:
        r = field.element(x).value
        return 1 if legendre(r, field.p) == 1 else quadratic_nonresidue(field.p)
    p = field.p
    v, u = _split_p(_integer_rep(x), p)
    if p == 2:
        unit = _Q2_UNIT_CLASS[u % 8]
    else:
        unit = 1 if legendre(u, p) == 1 else quadratic_nonresidue(p)
    return unit * (p if v % 2 else 1)


def is_square(x, field: FieldSpec) -> bool:
    return square_class(x, field) == 1


def _padic_symbol(a: int, b: int, p: int) -> int:
    alpha, u = _split_p(a, p)
    beta, v = _split_p(b, p)
    if p == 2:
        eps = lambda w: ((w - 1) // 2) % 2
        omega = lambda w: ((w * w - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = 1
    if (alpha * beta * (p - 1) // 2) % 2:
        s = -s
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


def hilbert_symbol_at_place(a, b, place) -> int:
    """Local symbol (a, b)_v of two nonzero rationals; ``place`` is a prime or ``"inf"``."""
    a, b = _as_fraction(a), _as_fraction(b)
    if a == 0 or b == 0:
        raise FieldError("Hilbert symbol of zero undefined")
    if place == INFINITY:
        return -1 if a < 0 and b < 0 else 1
    return _padic_symbol(_integer_rep(a), _integer_rep(b), place)


def hilbert_symbol(a, b, field: FieldSpec) -> int:
    """+1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over ``field``."""
    if field.kind == RATIONALS:
        raise FieldError("use hilbert_symbol_at_place for Q; the global symbol is a family of local ones")
    if not a or not b:
        raise FieldError("Hilbert symbol of zero undefined")
    if field.kind == COMPLEX:
        return 1
    if field.kind == PRIME_FIELD:
        field.element(a), field.element(b)
        return 1
    if field.kind == REALS:
        return hilbert_symbol_at_place(a, b, INFINITY)
    return hilbert_symbol_at_place(a, b, field.p)


def relevant_places(*values) -> list:
    """Infinity, 2 and every prime dividing a numerator or denominator."""
    primes = {2}
    for x in values:
        x = _as_fraction(x)
        primes.update(factorint(abs(x.numerator)))
        primes.update(factorint(x.denominator))
    primes.discard(1)
    return [INFINITY] + sorted(primes)
