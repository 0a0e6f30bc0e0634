"""Frobenius characteristic polynomials of modular abelian-surface reductions.

Builds the degree-4 Weil polynomial at a good prime p from the Hecke
eigenvalue a_p by expanding the norm form of x^2 - a_p x + p, then runs the
checks that pin the geometric endomorphism algebra down to the eigenvalue
field: irreducibility, ordinarity, stability of Q(pi^n) under powers, and
the discriminant-ratio test separating the two quartic fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import DeductionRefused, InvalidEigenvalueError
from .polynomials import (
    IntPoly,
    discriminant,
    is_irreducible_quartic,
    is_rational_square,
    lagrange_int_poly,
    resultant,
    squarefree_part,
)
from .quadratic import QuadElement, is_prime

DEFAULT_STABILITY_BOUND = 12


@dataclass(frozen=True)
class WeilQuartic:
    """A degree-4 Weil polynomial over F_p: x^4 + c3 x^3 + c2 x^2 + p c3 x + p^2."""

    p: int
    poly: IntPoly

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.poly.degree != 4 or not self.poly.is_monic():
            raise ValueError("a Weil quartic must be monic of degree 4")
        if self.poly[0] != self.p * self.p or self.poly[1] != self.p * self.poly[3]:
            raise ValueError(
                "polynomial violates the abelian-surface functional equation "
                f"(c0 = p^2 and c1 = p*c3) for p = {self.p}"
            )

    @property
    def c3(self) -> int:
        return self.poly[3]

    @property
    def c2(self) -> int:
        return self.poly[2]

    def __str__(self) -> str:
        return f"{self.poly} over F_{self.p}"


def _check_weil_bound(a_p: QuadElement, p: int) -> None:
    # both real embeddings must satisfy x^2 <= 4p, checked by exact sign
    for emb in (a_p, a_p.conjugate()):
        sq = emb * emb - 4 * p
        if sq.sign() > 0:
            raise InvalidEigenvalueError(
                f"eigenvalue {a_p} violates the Weil bound |a_p| <= 2*sqrt({p})"
            )


def frobenius_charpoly(a_p: QuadElement, p: int) -> WeilQuartic:
    """Norm form (x^2 - a_p x + p)(x^2 - conj(a_p) x + p) expanded over Z."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if a_p.d <= 0:
        raise ValueError("the Hecke eigenvalue field must be real quadratic")
    if not a_p.is_integral():
        raise InvalidEigenvalueError(f"eigenvalue {a_p} is not an algebraic integer")
    _check_weil_bound(a_p, p)
    t, n = a_p.trace(), a_p.norm()
    assert t.denominator == 1 and n.denominator == 1
    t, n = int(t), int(n)
    poly = IntPoly((p * p, -p * t, n + 2 * p, -t, 1))
    return WeilQuartic(p, poly)


def is_ordinary(quartic: WeilQuartic) -> bool:
    """Ordinary reduction: middle coefficient prime to p."""
    return gcd(quartic.c2, quartic.p) == 1


def power_charpoly(poly: IntPoly, n: int) -> IntPoly:
    """Characteristic polynomial of pi^n, as Res_y(poly(y), x - y^n).

    The resultant in x is monic of degree deg(poly); it is recovered from
    integer Sylvester resultants at interpolation points.
    """
    deg = poly.degree
    points = []
    for x0 in range(-(deg // 2), deg - deg // 2 + 1):
        g = IntPoly((x0,) + (0,) * (n - 1) + (-1,))
        points.append((x0, resultant(poly, g)))
    out = lagrange_int_poly(points)
    assert out.degree == deg and out.is_monic()
    return out


def power_minpoly(poly: IntPoly, n: int) -> IntPoly:
    """Minimal polynomial of pi^n: the squarefree part of the power charpoly."""
    return squarefree_part(power_charpoly(poly, n))


@dataclass(frozen=True)
class StabilityReport:
    """Degrees of the minimal polynomials of pi^n for n = 2..bound."""

    bound: int
    degrees: tuple[int, ...]
    failed_at: int | None

    @property
    def stable(self) -> bool:
        return self.failed_at is None

    def __str__(self) -> str:
        if self.stable:
            return f"stable through power {self.bound}"
        return f"unstable at power {self.failed_at}"


def endomorphism_stability(quartic: WeilQuartic, bound: int = DEFAULT_STABILITY_BOUND) -> StabilityReport:
    """Certify Q(pi^n) = Q(pi) for n = 2..bound, or report the first drop.

    A degree drop would mean pi^n/conj(pi^n) is a root of unity in a quartic
    field, of order m with phi(m) <= 4, hence m <= 12: that is why 12 is the
    default bound.
    """
    if bound < 2:
        raise ValueError("stability bound must be at least 2")
    if not is_irreducible_quartic(quartic.poly):
        raise ValueError("stability requires an irreducible Weil quartic")
    degrees = []
    for n in range(2, bound + 1):
        deg = power_minpoly(quartic.poly, n).degree
        degrees.append(deg)
        if deg != 4:
            return StabilityReport(bound, tuple(degrees), n)
    return StabilityReport(bound, tuple(degrees), None)


def distinct_fields_certificate(q1: WeilQuartic, q2: WeilQuartic) -> str:
    """'distinct' when disc(q1)/disc(q2) is not a rational square, else 'inconclusive'.

    One-sided: a square ratio never certifies that the fields agree.
    """
    for q in (q1, q2):
        if not is_irreducible_quartic(q.poly):
            raise ValueError("distinctness test requires irreducible quartics")
    ratio = Fraction(discriminant(q1.poly), discriminant(q2.poly))
    return "distinct" if not is_rational_square(ratio) else "inconclusive"


@dataclass(frozen=True)
class ReductionCertificate:
    """Everything the endomorphism deduction needs about one reduction."""

    quartic: WeilQuartic
    irreducible: bool
    ordinary: bool
    stability: StabilityReport | None

    @property
    def positive(self) -> bool:
        return (
            self.irreducible
            and self.ordinary
            and self.stability is not None
            and self.stability.stable
        )


def certify_reduction(a_p: QuadElement, p: int, bound: int = DEFAULT_STABILITY_BOUND) -> ReductionCertificate:
    quartic = frobenius_charpoly(a_p, p)
    irreducible = is_irreducible_quartic(quartic.poly)
    stability = endomorphism_stability(quartic, bound) if irreducible else None
    return ReductionCertificate(quartic, irreducible, is_ordinary(quartic), stability)


@dataclass(frozen=True)
class EndomorphismConclusion:
    d: int
    hypotheses: tuple[str, ...]
    conclusion: str


def deduce_endomorphism_ring(
    known_subring_d: int,
    cert1: ReductionCertificate | None,
    cert2: ReductionCertificate | None,
    distinctness: str,
) -> EndomorphismConclusion:
    """Conclude End = maximal order of Q(sqrt(d)) from the three certificates.

    The endomorphism algebra embeds in both quartic fields; if those are
    distinct its dimension is at most 2, and containing Q(sqrt(d)) pushes it
    to exactly 2.  Refuses (naming the gap) unless every certificate is
    present and positive.
    """
    for label, cert in (("first reduction", cert1), ("second reduction", cert2)):
        if cert is None:
            raise DeductionRefused(f"{label}: certificate missing")
        if not cert.irreducible:
            raise DeductionRefused(f"{label}: Weil quartic is reducible, surface may be non-simple")
        if not cert.ordinary:
            raise DeductionRefused(f"{label}: reduction is not ordinary")
        if cert.stability is None or not cert.stability.stable:
            raise DeductionRefused(
                f"{label}: power stability fails, endomorphisms may grow over the closure"
            )
    if distinctness != "distinct":
        raise DeductionRefused(
            "field distinctness is inconclusive: the dimension bound dim <= 2 is unsupported"
        )
    assert cert1 is not None and cert2 is not None
    d = known_subring_d
    ring = f"Z[√{d}]" if d % 4 != 1 else f"Z[(1+√{d})/2]"
    hypotheses = (
        f"End tensor Q embeds in Q[x]/(P) for P = {cert1.quartic} "
        f"(irreducible, ordinary, {cert1.stability})",
        f"End tensor Q embeds in Q[x]/(P) for P = {cert2.quartic} "
        f"(irreducible, ordinary, {cert2.stability})",
        "the two quartic fields are distinct (discriminant ratio is not a rational square), "
        "so a common subalgebra has dimension at most 2",
        f"Q(√{d}) is contained in End tensor Q, so the dimension is at least 2",
    )
    return EndomorphismConclusion(d, hypotheses, f"End = {ring}, the maximal order of Q(√{d})")


@dataclass(frozen=True)
class NewformDatum:
    """Weight-2 newform data: level, quadratic Hecke field, a_p eigenvalues.

    Eigenvalues are trusted published data; validation checks only that each
    prime has good reduction and each eigenvalue respects the Weil bound.
    """

    level: int
    hecke_field_d: int
    expected_dim: int
    eigenvalues: dict[int, QuadElement]
    bad_primes: frozenset[int] = field(init=False)

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be a positive integer")
        bad = frozenset(p for p in _prime_divisors(self.level))
        object.__setattr__(self, "bad_primes", bad)
        if self.expected_dim < 1:
            raise ValueError("expected dimension must be positive")
        if self.hecke_field_d <= 1:
            raise ValueError("the Hecke field must be real quadratic (d > 1)")
        for p, a_p in self.eigenvalues.items():
            if not is_prime(p):
                raise ValueError(f"eigenvalue index {p} is not prime")
            if p in bad:
                raise ValueError(f"prime {p} divides the level {self.level}: no good reduction")
            if a_p.d != self.hecke_field_d:
                raise ValueError(f"eigenvalue a_{p} does not lie in Q(sqrt({self.hecke_field_d}))")
            if not a_p.is_integral():
                raise InvalidEigenvalueError(f"a_{p} = {a_p} is not an algebraic integer")
            _check_weil_bound(a_p, p)

    def good_primes(self) -> list[int]:
        return sorted(self.eigenvalues)


def _prime_divisors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out
