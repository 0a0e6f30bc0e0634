"""Maximal quadratic orders: fractional ideals, units, principality, class groups.

An order is Z[w] with w = (1+sqrt(d))/2 for d = 1 mod 4 and w = sqrt(d)
otherwise.  A fractional ideal is stored in two-generator normal form

    I = s * (Z*a + Z*(b + w)),   s a positive rational, a > 0, 0 <= b < a,

which is unique per ideal.  The real-quadratic reduction operator is the
continued-fraction step on the quadratic irrational (b_D + sqrt(D)) / (2a),
tracked exactly through (P, Q) integer pairs; principality, canonical class
representatives and fundamental units all come out of its cycle structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Sequence

from .errors import MismatchError, ResourceLimitError
from .quadratic import QuadElement, Rat, is_prime, is_squarefree

_MAX_STEPS = 1_000_000


@dataclass(frozen=True)
class QuadOrder:
    """The maximal order of Q(sqrt(d))."""

    d: int
    disc: int

    def __init__(self, d: int):
        if d in (0, 1) or not is_squarefree(d):
            raise ValueError(f"order parameter must be squarefree and not 0 or 1, got {d}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "disc", d if d % 4 == 1 else 4 * d)

    @property
    def is_real(self) -> bool:
        return self.d > 0

    def omega(self) -> QuadElement:
        if self.d % 4 == 1:
            return QuadElement(self.d, Fraction(1, 2), Fraction(1, 2))
        return QuadElement(self.d, 0, 1)

    @property
    def omega_trace(self) -> int:
        return 1 if self.d % 4 == 1 else 0

    @property
    def omega_norm(self) -> int:
        return (1 - self.d) // 4 if self.d % 4 == 1 else -self.d

    def norm_b_plus_omega(self, b: int) -> int:
        return b * b + self.omega_trace * b + self.omega_norm

    def mul_coords(self, v: tuple[int, int], w: tuple[int, int]) -> tuple[int, int]:
        """Product of x1 + y1*w and x2 + y2*w in the (1, w) basis."""
        x1, y1 = v
        x2, y2 = w
        return (x1 * x2 - self.omega_norm * y1 * y2, x1 * y2 + x2 * y1 + self.omega_trace * y1 * y2)

    def to_coords(self, x: QuadElement) -> tuple[Fraction, Fraction]:
        if x.d != self.d:
            raise MismatchError(f"element of Q(sqrt({x.d})) used with order of Q(sqrt({self.d}))")
        if self.d % 4 == 1:
            return (x.a - x.b, 2 * x.b)
        return (x.a, x.b)

    def from_coords(self, x: Rat, y: Rat) -> QuadElement:
        return QuadElement(self.d, Fraction(x)) + Fraction(y) * self.omega()

    def contains(self, x: QuadElement) -> bool:
        cx, cy = self.to_coords(x)
        return cx.denominator == 1 and cy.denominator == 1


def maximal_order(d: int) -> QuadOrder:
    return QuadOrder(d)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


@dataclass(frozen=True)
class FracIdeal:
    order: QuadOrder
    a: int
    b: int
    scale: Fraction

    def __init__(self, order: QuadOrder, a: int, b: int, scale: Rat = 1):
        scale = Fraction(scale)
        if a <= 0:
            raise ValueError(f"ideal parameter a must be positive, got {a}")
        if scale <= 0:
            raise ValueError(f"ideal scale must be positive, got {scale}")
        b %= a
        if order.norm_b_plus_omega(b) % a != 0:
            raise ValueError(f"({a}, {b} + ω) is not an ideal: {a} does not divide N({b} + ω)")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "scale", scale)

    def _same_order(self, other: "FracIdeal") -> None:
        if self.order != other.order:
            raise MismatchError("ideals live over different orders")

    def norm(self) -> Fraction:
        return self.scale * self.scale * self.a

    def is_integral(self) -> bool:
        return self.scale.denominator == 1

    def primitive_part(self) -> "FracIdeal":
        return FracIdeal(self.order, self.a, self.b)

    def generators(self) -> tuple[QuadElement, QuadElement]:
        w = self.order.omega()
        return (self.scale * QuadElement(self.order.d, self.a),
                self.scale * (QuadElement(self.order.d, self.b) + w))

    def __mul__(self, other: "FracIdeal | QuadElement | Rat") -> "FracIdeal":
        if isinstance(other, (int, Fraction)):
            if other <= 0:
                raise ValueError("ideal scaling requires a positive rational")
            return FracIdeal(self.order, self.a, self.b, self.scale * other)
        if isinstance(other, QuadElement):
            return self * principal_ideal(self.order, other)
        self._same_order(other)
        o = self.order
        gens = [
            (self.a * other.a, 0),
            (self.a * other.b, self.a),
            (other.a * self.b, other.a),
            o.mul_coords((self.b, 1), (other.b, 1)),
        ]
        return ideal_from_generators(o, gens, self.scale * other.scale)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FracIdeal":
        if n < 0:
            raise ValueError("negative ideal powers are not supported; use conjugate()")
        result = unit_ideal(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "FracIdeal":
        tr = self.order.omega_trace
        return ideal_from_generators(
            self.order, [(self.a, 0), (self.b + tr, -1)], self.scale
        )

    def __str__(self) -> str:
        w = self.order.omega()
        inner = f"{self.a}Z + ({self.b} + {w})Z"
        return inner if self.scale == 1 else f"({self.scale})({inner})"


def ideal_from_generators(
    order: QuadOrder, gens: Sequence[tuple[int, int]], scale: Rat = 1
) -> FracIdeal:
    """Normal form of the Z-module spanned by x + y*w generators (must be an ideal)."""
    g_y, wx = 0, 0
    for x, y in gens:
        if y:
            g_new, s, t = _xgcd(g_y, y)
            wx = s * wx + t * x
            g_y = g_new
    if g_y == 0:
        raise ValueError("generators do not span a rank-2 lattice")
    xs = [x - (y // g_y) * wx for x, y in gens]
    g_x = 0
    for x in xs:
        g_x = gcd(g_x, x)
    if g_x == 0:
        raise ValueError("generators do not span a rank-2 lattice")
    # an O-stable lattice factors as content * primitive ideal
    if g_x % g_y or wx % g_y:
        raise ValueError("generator lattice is not stable under the order")
    a = g_x // g_y
    b = (wx // g_y) % a
    return FracIdeal(order, a, b, Fraction(scale) * g_y)


def unit_ideal(order: QuadOrder) -> FracIdeal:
    return FracIdeal(order, 1, 0)


def principal_ideal(order: QuadOrder, alpha: QuadElement) -> FracIdeal:
    if alpha.is_zero():
        raise ValueError("the zero element generates no fractional ideal")
    x, y = order.to_coords(alpha)
    m = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    bx, by = int(x * m), int(y * m)
    gens = [(bx, by), order.mul_coords((bx, by), (0, 1))]
    return ideal_from_generators(order, gens, Fraction(1, m))


# ---------------------------------------------------------------------------
# Continued-fraction reduction on real quadratic ideals.
#
# The primitive ideal (a, b + w) corresponds to theta = (P + sqrt(D)) / Q with
# P = 2b + tr(w) and Q = 2a; the ideal condition is exactly 2Q | D - P^2, and
# one checks this is preserved by the continued-fraction step, so every state
# below is again an ideal.
# ---------------------------------------------------------------------------


def _floor_quadratic(p: int, q: int, d: int) -> int:
    """floor((p + sqrt(d)) / q) for nonsquare d > 0 and q != 0."""
    s = isqrt(d)
    if q > 0:
        return (p + s) // q
    return -((p + s) // -q) - 1


def _cf_step(order: QuadOrder, p: int, q: int) -> tuple[int, int]:
    dd = order.disc
    a = _floor_quadratic(p, q, dd)
    p1 = a * q - p
    q1 = (dd - p1 * p1) // q
    return p1, q1


def _theta(order: QuadOrder, p: int, q: int) -> QuadElement:
    # (p + sqrt(D)) / q expressed over sqrt(d)
    root_coeff = 2 if order.d % 4 != 1 else 1
    return QuadElement(order.d, Fraction(p, q), Fraction(root_coeff, q))


def _state_of(ideal: FracIdeal) -> tuple[int, int]:
    return (2 * ideal.b + ideal.order.omega_trace, 2 * ideal.a)


def _ideal_of_state(order: QuadOrder, p: int, q: int) -> FracIdeal:
    a = q // 2
    b = ((p % q) - order.omega_trace) // 2
    return FracIdeal(order, a, b)


def _reduction_orbit(order: QuadOrder, p: int, q: int) -> tuple[list[tuple[int, int]], int]:
    """Trajectory of states until the first repeat; returns (states, cycle_start)."""
    seen: dict[tuple[int, int], int] = {}
    states: list[tuple[int, int]] = []
    while (p, q) not in seen:
        if len(states) > _MAX_STEPS:
            raise ResourceLimitError("reduction orbit failed to close")
        seen[(p, q)] = len(states)
        states.append((p, q))
        p, q = _cf_step(order, p, q)
    return states, seen[(p, q)]


def is_principal(ideal: FracIdeal) -> bool:
    return principal_generator(ideal) is not None


def principal_generator(ideal: FracIdeal) -> QuadElement | None:
    """A generator alpha with (alpha) = I, or None when I is not principal."""
    order = ideal.order
    if not order.is_real:
        alpha = _imaginary_generator(ideal)
    else:
        alpha = _real_generator(ideal)
    if alpha is not None:
        assert principal_ideal(order, alpha) == ideal
    return alpha


def _real_generator(ideal: FracIdeal) -> QuadElement | None:
    order = ideal.order
    p, q = _state_of(ideal.primitive_part())
    multiplier = QuadElement(order.d, 1)
    if q == 2:
        return QuadElement(order.d, ideal.scale * ideal.a)
    seen = {(p, q)}
    for _ in range(_MAX_STEPS):
        p, q = _cf_step(order, p, q)
        multiplier = multiplier * _theta(order, p, q)
        if q == 2:
            return QuadElement(order.d, ideal.scale * ideal.a) / multiplier
        if (p, q) in seen:
            return None
        seen.add((p, q))
    raise ResourceLimitError("principality test failed to terminate")


def _imaginary_generator(ideal: FracIdeal) -> QuadElement | None:
    order = ideal.order
    prim = ideal.primitive_part()
    a, b, c = _form_of(prim)
    ra, _, _ = _reduce_form(a, b, c, order.disc)
    if ra != 1:
        return None
    # the associated positive form represents 1; such (x, y) gives the generator
    for y in range(-isqrt(4 * a // abs(order.disc)) - 1, isqrt(4 * a // abs(order.disc)) + 2):
        rhs = 4 * a + order.disc * y * y
        if rhs < 0:
            continue
        s = isqrt(rhs)
        if s * s != rhs:
            continue
        for sgn in (s, -s):
            num = sgn - b * y
            if num % (2 * a):
                continue
            x = num // (2 * a)
            alpha = ideal.scale * (
                x * QuadElement(order.d, prim.a)
                + y * (QuadElement(order.d, prim.b) + order.omega())
            )
            if not alpha.is_zero():
                return alpha
    raise AssertionError("reduced form is principal but no generator was found")


def _form_of(ideal: FracIdeal) -> tuple[int, int, int]:
    """The integral binary quadratic form N(a*x + (b+w)*y) / a of discriminant D."""
    order = ideal.order
    a = ideal.a
    bd = 2 * ideal.b + order.omega_trace
    c = order.norm_b_plus_omega(ideal.b) // a
    return a, bd, c


def _reduce_form(a: int, b: int, c: int, disc: int) -> tuple[int, int, int]:
    """Gauss reduction of a positive definite form (disc < 0)."""
    while True:
        if b <= -a or b > a:
            k = (a - b) // (2 * a)
            b = b + 2 * a * k
            c = (b * b - disc) // (4 * a)
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return a, b, c


# ---------------------------------------------------------------------------
# Ideal classes and the class group.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdealClass:
    """An ideal class, identified by a canonical reduced representative.

    Real case: the cycle ideal minimizing (norm, a, b); imaginary case: the
    ideal of the Gauss-reduced form.  Equal representatives characterize
    equivalent ideals.
    """

    rep: FracIdeal

    @property
    def order(self) -> QuadOrder:
        return self.rep.order

    @property
    def is_trivial(self) -> bool:
        return self.rep.a == 1

    def key(self) -> tuple[int, int]:
        return (self.rep.a, self.rep.b)

    def __mul__(self, other: "IdealClass") -> "IdealClass":
        if self.order != other.order:
            raise MismatchError("ideal classes live over different orders")
        return ideal_class(self.rep * other.rep)

    def __pow__(self, n: int) -> "IdealClass":
        if n < 0:
            return self.inverse() ** (-n)
        result = ideal_class(unit_ideal(self.order))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "IdealClass":
        return ideal_class(self.rep.conjugate())

    def __str__(self) -> str:
        return f"[{self.rep}]"


def ideal_class(ideal: FracIdeal) -> IdealClass:
    order = ideal.order
    prim = ideal.primitive_part()
    if order.is_real:
        p, q = _state_of(prim)
        states, start = _reduction_orbit(order, p, q)
        cycle = states[start:]
        rep = min((_ideal_of_state(order, cp, cq) for cp, cq in cycle),
                  key=lambda i: (i.a, i.b))
    else:
        a, b, c = _form_of(prim)
        ra, rb, _ = _reduce_form(a, b, c, order.disc)
        bw = ((rb % (2 * ra)) - order.omega_trace) // 2
        rep = FracIdeal(order, ra, bw)
    return IdealClass(rep)


def trivial_class(order: QuadOrder) -> IdealClass:
    return IdealClass(unit_ideal(order))


# ---------------------------------------------------------------------------
# Fundamental units.
# ---------------------------------------------------------------------------


def fundamental_unit(order: QuadOrder) -> QuadElement:
    """Smallest unit > 1, from the continued fraction of w; |norm| = 1.

    The trajectory starts at the unit ideal; the first return to an ideal
    with a = 1 multiplies the successive complete quotients into the unit.
    """
    if not order.is_real:
        raise ValueError("fundamental units exist only for real quadratic orders")
    p, q = order.omega_trace, 2
    unit = QuadElement(order.d, 1)
    for _ in range(_MAX_STEPS):
        p, q = _cf_step(order, p, q)
        unit = unit * _theta(order, p, q)
        if q == 2:
            assert abs(unit.norm()) == 1
            return unit
    raise ResourceLimitError("fundamental unit computation failed to terminate")


# ---------------------------------------------------------------------------
# Class group.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassGroup:
    order: QuadOrder
    invariants: tuple[int, ...]
    classes: tuple[IdealClass, ...]
    generators: tuple[FracIdeal, ...]

    @property
    def h(self) -> int:
        n = 1
        for k in self.invariants:
            n *= k
        return n

    def nontrivial_classes(self) -> tuple[IdealClass, ...]:
        return tuple(c for c in self.classes if not c.is_trivial)

    def __str__(self) -> str:
        if not self.invariants:
            return "trivial"
        return " x ".join(f"Z/{n}" for n in self.invariants)


def minkowski_bound(order: QuadOrder) -> int:
    """Integer bound covering sqrt(D)/2 (real) or (2/pi)*sqrt(|D|) (imaginary)."""
    if order.is_real:
        return isqrt(order.disc) // 2
    # 2/3 > 2/pi, so this slightly over-generates primes, which is harmless
    return (2 * isqrt(-order.disc)) // 3 + 1


def prime_ideals_above(order: QuadOrder, p: int) -> list[FracIdeal]:
    """Degree-one prime ideals over p: empty when p is inert."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    found = []
    for b in range(p):
        if order.norm_b_plus_omega(b) % p == 0:
            found.append(FracIdeal(order, p, b))
    return found


def class_group(order: QuadOrder, bound: int = 10**6) -> ClassGroup:
    """Structure of Pic(O) by closing the norm <= Minkowski-bound primes.

    Works for any fundamental discriminant with |disc| <= bound; the bound
    keeps the prime enumeration and reduction cycles at desk scale.
    """
    if abs(order.disc) > bound:
        raise ResourceLimitError(
            f"|disc| = {abs(order.disc)} exceeds the configured bound {bound}"
        )
    mb = minkowski_bound(order)
    gens: list[FracIdeal] = []
    for p in range(2, mb + 1):
        if is_prime(p):
            gens.extend(prime_ideals_above(order, p))

    triv = trivial_class(order)
    classes = {triv}
    gen_classes = {ideal_class(g) for g in gens}
    frontier = set(gen_classes) | {triv}
    while frontier:
        new = set()
        for c in frontier:
            for g in gen_classes:
                prod = c * g
                if prod not in classes:
                    classes.add(prod)
                    new.add(prod)
        frontier = new

    invariants = _abelian_invariants(classes, triv)
    ordered = tuple(sorted(classes, key=IdealClass.key))
    return ClassGroup(order, invariants, ordered, tuple(gens))


def _abelian_invariants(classes: set[IdealClass], triv: IdealClass) -> tuple[int, ...]:
    """Invariant factors n1 | n2 | ... from the element-order profile."""
    h = len(classes)
    if h == 1:
        return ()
    partitions: dict[int, list[int]] = {}
    for p in _prime_factors(h):
        # t_k = #(p^k)-torsion = p^(sum min(k, lambda_i)); read off the partition
        mks = []
        prev = 1
        k = 1
        while True:
            tk = sum(1 for c in classes if (c ** (p**k)) == triv)
            if tk == prev:
                break
            mks.append(_int_log(tk // prev, p))
            prev = tk
            k += 1
        lam = [sum(1 for m in mks if m >= i) for i in range(1, mks[0] + 1)]
        partitions[p] = lam
    width = max(len(lam) for lam in partitions.values())
    factors = []
    for i in range(width):
        n = 1
        for p, lam in partitions.items():
            if i < len(lam):
                n *= p ** lam[i]
        factors.append(n)
    return tuple(sorted(factors))


def _prime_factors(n: int) -> list[int]:
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


def _int_log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        assert n % p == 0
        n //= p
        k += 1
    return k


def ideals_of_norm_up_to(order: QuadOrder, bound: int) -> Iterator[FracIdeal]:
    """All primitive integral ideals of norm <= bound (every class is hit
    once bound reaches the Minkowski bound)."""
    for a in range(1, bound + 1):
        for b in range(a):
            if order.norm_b_plus_omega(b) % a == 0:
                yield FracIdeal(order, a, b)
