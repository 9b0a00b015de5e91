"""Property suites shared by ``verify-paper`` and the test-suite.

Each suite returns ``(name, ok, detail)``; sample counts are parameters so
the CLI can run a quick pass while the tests run the full sizes.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import Octonion, bilinear, doubling_chain, is_composition_algebra, oct_conj, oct_norm, random_octonion
from .automorphisms import LinearMap, compose, inverse, s_element, torus_element
from .fields import PRIME_FIELD, Fp, Q, Qp, R, hilbert_symbol, hilbert_symbol_at_place, relevant_places
from .forms import DiagonalForm, is_isotropic, quaternion_is_split, symbol_oracle


def _pairs(n, rng, field=Q):
    return [(random_octonion(field, rng), random_octonion(field, rng)) for _ in range(n)]


def norm_multiplicativity(n: int, rng: random.Random):
    bad = [(a, b) for a, b in _pairs(n, rng) if oct_norm(a * b) != oct_norm(a) * oct_norm(b)]
    return "norm multiplicativity", not bad, f"{n} pairs, {len(bad)} failures"


def conjugation_anti_automorphism(n: int, rng: random.Random):
    bad = [(a, b) for a, b in _pairs(n, rng) if oct_conj(a * b) != oct_conj(b) * oct_conj(a)]
    return "conjugation anti-automorphism", not bad, f"{n} pairs, {len(bad)} failures"


def alternativity(n: int, rng: random.Random):
    bad = [(a, b) for a, b in _pairs(n, rng) if a * (a * b) != (a * a) * b or (b * a) * a != b * (a * a)]
    return "alternativity", not bad, f"{n} pairs, {len(bad)} failures"


def pure_square_law(n: int, rng: random.Random):
    e = Octonion.identity(Q)
    bad = 0
    for _ in range(n):
        x = random_octonion(Q, rng)
        x = x - e * (bilinear(x, e) / 2)
        bad += x * x != e * (-oct_norm(x))
    return "pure square law", bad == 0, f"{n} samples, {bad} failures"


def hurwitz_flags(field=Q):
    """Doubling k -> k^2 -> quaternions -> octonions with α = 1 at each step."""
    chain = doubling_chain(field, [1, 1, 1])
    expected = {1: (True, True), 2: (True, True), 4: (False, True), 8: (False, False)}
    ok = True
    flags = {}
    for alg in chain:
        comm, cw = alg.is_commutative()
        assoc, aw = alg.is_associative()
        comp = bool(is_composition_algebra(alg))
        flags[alg.dim] = {"commutative": comm, "associative": assoc, "composition": comp,
                          "commutator_witness": cw, "associator_witness": aw}
        ok &= (comm, assoc) == expected[alg.dim] and comp
    return "hurwitz flags", ok, flags


SYMBOL_FIELDS = (Qp(2), Qp(3), Qp(5), Qp(7), R, Fp(3), Fp(5), Fp(7), Fp(11), Fp(13))


def symbol_oracle_agreement(bound: int = 20, fields=SYMBOL_FIELDS):
    mismatches = []
    total = 0
    for field in fields:
        for a in range(-bound, bound + 1):
            for b in range(-bound, bound + 1):
                if field.kind == PRIME_FIELD and (a % field.p == 0 or b % field.p == 0):
                    continue
                if a == 0 or b == 0:
                    continue
                total += 1
                if hilbert_symbol(a, b, field) != symbol_oracle(a, b, field):
                    mismatches.append((str(field), a, b))
    return "hilbert symbol vs search oracle", not mismatches, f"{total} cases, mismatches {mismatches[:5]}"


def random_rational(rng, bound=60):
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x:
            return x


def product_formula(n: int, rng: random.Random):
    bad = []
    for _ in range(n):
        a, b = random_rational(rng), random_rational(rng)
        prod = 1
        for v in relevant_places(a, b):
            prod *= hilbert_symbol_at_place(a, b, v)
        if prod != 1:
            bad.append((a, b))
    return "product formula", not bad, f"{n} pairs, failures {bad[:5]}"


def even_ramification(n: int, rng: random.Random):
    bad = []
    for _ in range(n):
        a, b = random_rational(rng), random_rational(rng)
        inv = quaternion_is_split(a, b, Q)
        if len(inv.ramified_places) % 2 or inv.is_split != (not inv.ramified_places):
            bad.append((a, b))
    return "even ramification", not bad, f"{n} pairs, failures {bad[:5]}"


def isotropy_symbol_consistency(bound: int = 10):
    fields = (Qp(2), Qp(3), Qp(5), Qp(7), R, Fp(3), Fp(5), Fp(7), Fp(11), Fp(13))
    bad = []
    for field in fields:
        for a in range(-bound, bound + 1):
            for b in range(-bound, bound + 1):
                aa, bb = field.element(a), field.element(b)
                if not aa or not bb:
                    continue
                iso = is_isotropic(DiagonalForm((1, -aa, -bb), field)).isotropic
                if iso != (hilbert_symbol(aa, bb, field) == 1):
                    bad.append((str(field), a, b))
    return "isotropy vs symbol", not bad, f"failures {bad[:5]}"


def torus_inversion(n: int, rng: random.Random, field=Q):
    s = s_element(field)
    bad = 0
    for _ in range(n):
        b, g = field.random_element(rng, nonzero=True), field.random_element(rng, nonzero=True)
        t = torus_element(b, g, field)
        bad += compose(compose(s, t), inverse(s)) != inverse(t)
        bad += compose(compose(compose(s, t), inverse(s)), t) != LinearMap.identity(field)
    return "s inverts the torus", bad == 0, f"{n} torus elements over {field}, {bad} failures"


def torus_commutativity(n: int, rng: random.Random, field=Q):
    bad = 0
    for _ in range(n):
        b1, g1, b2, g2 = (field.random_element(rng, nonzero=True) for _ in range(4))
        lhs = compose(torus_element(b1, g1, field), torus_element(b2, g2, field))
        bad += lhs != torus_element(b1 * b2, g1 * g2, field)
    return "torus multiplication", bad == 0, f"{n} pairs, {bad} failures"


def off_diagonal_negation(field) -> LinearMap:
    """(u, v) -> (u, v) with the off-diagonal entries of both matrices negated."""
    signs = (1, -1, -1, 1, 1, -1, -1, 1)
    z = field.zero
    return LinearMap(tuple(tuple(field.element(signs[i]) if i == j else z for j in range(8)) for i in range(8)), field)


def gamma_h_consistency(field=R):
    ok = off_diagonal_negation(field) == torus_element(-1, 1, field)
    return "gamma_H = t(-1,1)", ok, str(field)


def run_suites(seed: int = 0, scale: float = 1.0) -> list:
    """All property suites; ``scale`` shrinks sample counts for quick runs."""
    rng = random.Random(seed)
    n = lambda k: max(1, int(k * scale))
    return [
        norm_multiplicativity(n(1000), rng),
        conjugation_anti_automorphism(n(500), rng),
        alternativity(n(500), rng),
        pure_square_law(n(200), rng),
        hurwitz_flags(Q),
        symbol_oracle_agreement(20 if scale >= 1 else 8),
        product_formula(n(500), rng),
        even_ramification(n(500), rng),
        isotropy_symbol_consistency(10 if scale >= 1 else 5),
        torus_inversion(n(50), rng, Q),
        torus_inversion(n(50), rng, Fp(7)),
        torus_commutativity(n(50), rng, Q),
        gamma_h_consistency(R),
    ]

