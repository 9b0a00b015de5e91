"""Classification of involutions of Aut(C) by their fixed quaternion subalgebras."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import NoRationalWitness, Octonion, SubalgebraBasis, find_zero_divisor, orthogonal_complement, search_anisotropic
from .automorphisms import (
    AutomorphismError,
    LinearMap,
    QuaternionPresentation,
    aut_fixing_subalgebra,
    commutes_with,
    compose,
    fixed_subalgebra,
    is_automorphism,
    leaves_invariant,
    order,
    quaternion_presentation,
    s_element,
    s_p_element,
    s_times_torus,
    torus_element,
)
from .fields import (
    C,
    PADIC,
    PRIME_FIELD,
    RATIONALS,
    REALS,
    COMPLEX,
    FieldError,
    FieldSpec,
    Fp,
    Q,
    Qp,
    R,
    quadratic_nonresidue,
)
from .forms import QuaternionInvariant, quaternion_is_split, quaternion_isomorphic

SCHEMA = "octo-involutions/1"
NON_EXHAUSTIVE = "≥2, non-exhaustive"
DEFAULT_Q_PRIMES = (3, 7, 11)
FIELD_MATRIX = (R, C, Q, Qp(2), Qp(3), Qp(5), Qp(7), Fp(3), Fp(5), Fp(7), Fp(11))


class ClassificationMismatch(AssertionError):
    """The computed class count disagrees with the known classification."""


@dataclass
class InvolutionClass:
    label: str
    representative: LinearMap
    invariant: QuaternionInvariant
    presentation: QuaternionPresentation | None = None
    fixed: SubalgebraBasis | None = None
    zero_divisor: tuple | None = None
    notes: list = dc_field(default_factory=list)

    @property
    def field(self) -> FieldSpec:
        return self.representative.field

    def to_json(self) -> dict:
        doc = {"label": self.label, "invariant": self.invariant.to_json()}
        if self.presentation is not None:
            doc["presentation"] = self.presentation.to_json()
        if self.zero_divisor is not None:
            u, w = self.zero_divisor
            doc["zero_divisor"] = [str(Octonion._raw(u, self.field)), str(Octonion._raw(w, self.field))]
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc


def classify_involution(m: LinearMap, label: str | None = None) -> InvolutionClass:
    """Fixed subalgebra -> presentation -> split/division invariant, cross-checked by a zero-divisor search."""
    check = is_automorphism(m)
    if not check:
        raise AutomorphismError(f"not an automorphism: {check.reason}")
    if order(m, 2) != 2:
        raise AutomorphismError("representative does not have order exactly 2")
    d = fixed_subalgebra(m)
    pres = quaternion_presentation(d)
    inv = quaternion_is_split(pres.alpha, pres.beta, m.field)
    cls = InvolutionClass(label or "I_m", m, inv, pres, d)
    try:
        zd = find_zero_divisor(d)
    except NoRationalWitness as exc:
        cls.notes.append(str(exc))
        zd = None
        if not inv.is_split:
            raise AutomorphismError("division verdict contradicts local isotropy of the norm form")
    else:
        if (zd is not None) != inv.is_split:
            raise AutomorphismError(f"{cls.label}: zero-divisor search disagrees with verdict {inv.verdict}")
    cls.zero_divisor = zd
    return cls


def same_class(c1: InvolutionClass, c2: InvolutionClass) -> bool:
    return quaternion_isomorphic(c1.invariant, c2.invariant)


def _fmt(x) -> str:
    return str(x)


def standard_representatives(field: FieldSpec, q_primes=DEFAULT_Q_PRIMES) -> list[tuple[str, LinearMap]]:
    reps = [
        ("I_t(1,-1)", torus_element(1, -1, field)),
        ("I_t(-1,1)", torus_element(-1, 1, field)),
        ("I_t(-1,-1)", torus_element(-1, -1, field)),
        ("I_s", s_element(field)),
    ]
    if field.kind in (REALS, RATIONALS) or (field.kind == PADIC and field.p == 2):
        reps.append(("I_s ∘ I_t(1,-1)", s_times_torus(1, -1, field)))
    if field.kind == PADIC and field.p != 2:
        p = field.p
        n = quadratic_nonresidue(p)
        beta, gamma = Fraction(-n), Fraction(-p, n)
        reps.append((f"I_s ∘ I_t({_fmt(beta)},{_fmt(gamma)})", s_times_torus(beta, gamma, field)))
    if field.kind == RATIONALS:
        for p in q_primes:
            if p % 4 != 3:
                raise ValueError(f"configured prime {p} is not 3 mod 4")
            reps.append((f"I_s_{p}", s_p_element(p, field)))
    return reps


def expected_count(field: FieldSpec):
    """Known number of classes: 2 over R and Q_p, 1 over C and F_p, open-ended over Q."""
    if field.kind in (COMPLEX, PRIME_FIELD):
        return 1
    if field.kind in (REALS, PADIC):
        return 2
    return None


@dataclass
class ClassificationReport:
    field: FieldSpec
    classes: list
    members: list
    count: object
    checks: list = dc_field(default_factory=list)
    probes: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "field": str(self.field),
            "count": self.count,
            "exhaustive": self.field.kind != RATIONALS,
            "classes": [
                dict(c.to_json(), members=list(m)) for c, m in zip(self.classes, self.members)
            ],
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks],
            "probes": self.probes,
        }


def classify_field(field: FieldSpec, q_primes=DEFAULT_Q_PRIMES, probe_samples: int = 0, seed: int = 0,
                   strict: bool = True) -> ClassificationReport:
    """Classify the standard representatives over ``field`` and check the class count.

    With ``strict`` a count disagreeing with the known classification raises
    :class:`ClassificationMismatch`; otherwise the failure is recorded in ``checks``.
    """
    classified = [classify_involution(m, label) for label, m in standard_representatives(field, q_primes)]
    blocks: list[InvolutionClass] = []
    members: list[list[str]] = []
    for c in classified:
        for i, b in enumerate(blocks):
            if same_class(b, c):
                members[i].append(c.label)
                break
        else:
            blocks.append(c)
            members.append([c.label])

    checks = []
    expected = expected_count(field)
    if expected is None:
        count = NON_EXHAUSTIVE
        checks.append(("at least two classes", len(blocks) >= 2, f"{len(blocks)} classes found"))
        for p in q_primes:
            label = f"I_s_{p}"
            block = next(m for m in members if label in m)
            alone = not any(x.startswith("I_s_") and x != label for x in block)
            checks.append((f"{label} in its own class", alone, ", ".join(block)))
    else:
        count = len(blocks)
        checks.append(("class count", count == expected, f"found {count}, expected {expected}"))
    split_blocks = [b for b in blocks if b.invariant.is_split]
    checks.append(("exactly one split class", len(split_blocks) == 1, f"{len(split_blocks)} split classes"))
    missing = [c.label for c in classified if c.invariant.is_split and c.zero_divisor is None]
    checks.append(("split verdicts carry zero divisors", not missing, ", ".join(missing) or "all present"))

    report = ClassificationReport(field, blocks, members, count, checks)
    if probe_samples:
        rng = random.Random(seed)
        for b in blocks:
            report.probes.append(dict(fixed_group_probe(b, probe_samples, rng), label=b.label))
    if strict and not report.ok:
        failed = [f"{n}: {d}" for n, ok, d in checks if not ok]
        raise ClassificationMismatch(f"classification over {field} disagrees with the expected result: {failed}")
    return report


# -- fixed point groups ---------------------------------------------------------

def _random_in(pres: QuaternionPresentation, rng, field, bound=5) -> Octonion:
    out = Octonion.zero(field)
    for x in pres.basis():
        out = out + x * field.random_element(rng, bound)
    return out


def norm_one_samples(pres: QuaternionPresentation, rng, count: int):
    """Elements of norm 1: u^2/N(u) for random u, plus points on x0^2 - α x1^2 = 1."""
    field = pres.e.field
    out = [pres.e]
    for t in (Fraction(1, 2), Fraction(1, 3), Fraction(2)):
        try:
            t = field.element(t)
        except FieldError:
            continue
        den = 1 - pres.alpha * t * t
        if den:
            out.append(pres.e * ((1 + pres.alpha * t * t) / den) + pres.a * (2 * t / den))
    while len(out) < count:
        u = _random_in(pres, rng, field)
        n = u.norm()
        if n:
            out.append((u * u) * (1 / n))
    return out[:count] if count >= 1 else out


def fixed_group_probe(c: InvolutionClass, samples: int, rng: random.Random | None = None) -> dict:
    """Sampled evidence for the structure of the centralizer of an involution.

    Builds s_dp for sampled d (invertible) and p (norm 1) in the fixed
    quaternion algebra D and checks: each is an automorphism commuting with
    the involution and stabilizing D; (d, p) -> s_dp is multiplicative in the
    form s_{d1 p1} s_{d2 p2} = s_{d1 d2, p1 (d1 p2 d1^-1)}; and s_dp is the
    identity exactly for the pairs (αe, e).
    """
    rng = rng or random.Random(0)
    t = c.representative
    if order(t, 2) != 2:
        raise AutomorphismError("probe needs an involution (order exactly 2)")
    field = t.field
    D = c.fixed if c.fixed is not None else fixed_subalgebra(t)
    pres = c.presentation if c.presentation is not None else quaternion_presentation(D)
    comp = orthogonal_complement(D)
    a_vec = search_anisotropic(comp, D.ambient.norm)
    a = Octonion._raw(a_vec, field)
    ident = LinearMap.identity(field)

    ps = norm_one_samples(pres, rng, max(samples, 1))
    pairs = []
    for i in range(samples):
        while True:
            d = _random_in(pres, rng, field)
            if d.norm():
                break
        pairs.append((d, ps[i % len(ps)]))
    for alpha in (2, 3, -5):
        s = field.element(alpha)
        if s:
            pairs.append((pres.e * s, pres.e))
            pairs.append((pres.e * s, ps[-1]))
    pairs.append((pres.e + pres.a, pres.e) if (pres.e + pres.a).norm() else (pres.e + pres.b, pres.e))

    maps = []
    kernel_hits = 0
    kernel_ok = True
    for d, p in pairs:
        f = aut_fixing_subalgebra(d, p, D, a)
        if not commutes_with(f, t) or not leaves_invariant(f, D):
            raise AutomorphismError("sampled stabilizer element fails to commute with the involution; engine bug")
        is_id = f == ident
        scalar_pair = _is_scalar(d, pres.e) and p == pres.e
        kernel_hits += is_id
        kernel_ok &= is_id == scalar_pair
        maps.append((d, p, f))

    hom_ok = True
    for (d1, p1, f1), (d2, p2, f2) in zip(maps, maps[1:]):
        composite = aut_fixing_subalgebra(d1 * d2, p1 * ((d1 * p2) * d1.inverse()), D, a, check=False)
        hom_ok &= compose(f1, f2) == composite

    return {
        "verdict": c.invariant.verdict,
        "samples": len(pairs),
        "automorphisms": True,
        "commute": True,
        "homomorphism": hom_ok,
        "kernel_hits": kernel_hits,
        "kernel_scalar_only": kernel_ok,
        "ok": hom_ok and kernel_ok,
    }


def _is_scalar(d: Octonion, e: Octonion) -> bool:
    c = d.coords[0]
    return d == e * c
