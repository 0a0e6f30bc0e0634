"""Integer polynomials: exact arithmetic, resultants, discriminants, quartic factorization.

Coefficients are arbitrary-precision integers, constant term first, with no
trailing zeros stored; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

from .quadratic import exact_isqrt


def _normalize(coeffs: Iterable[int]) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int] = ()):
        if any(not isinstance(c, int) for c in coeffs):
            raise TypeError("IntPoly coefficients must be integers")
        object.__setattr__(self, "coeffs", _normalize(coeffs))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial having degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self[i] + other[i] for i in range(n)])

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        result, base = IntPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x: int | Fraction):
        """Evaluate by Horner's rule; exact for integer or rational points."""
        acc: int | Fraction = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive_part(self) -> "IntPoly":
        if self.is_zero():
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly([c // g for c in self.coeffs])

    def shift_degree(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return IntPoly((0,) * k + self.coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i > 0 and abs(c) == 1:
                term = mono if c == 1 else f"-{mono}"
            else:
                term = f"{c}{mono}"
            parts.append(term)
        s = parts[0]
        for t in parts[1:]:
            s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return s


X = IntPoly((0, 1))


def monomial(k: int, c: int = 1) -> IntPoly:
    return IntPoly((0,) * k + (c,))


def _det_bareiss(m: list[list[int]]) -> int:
    """Fraction-free determinant; all intermediate divisions are exact."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_matrix(f: IntPoly, g: IntPoly) -> list[list[int]]:
    n, m = f.degree, g.degree
    size = n + m
    rows = []
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([0] * i + fr + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gr + [0] * (size - m - 1 - i))
    return rows


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) as the Sylvester determinant; Res(x - a, g) = g(a)."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    if f.degree == 0:
        return f.lc ** g.degree
    if g.degree == 0:
        return g.lc ** f.degree
    return _det_bareiss(sylvester_matrix(f, g))


def discriminant(f: IntPoly) -> int:
    """(-1)^(n(n-1)/2) * Res(f, f') / lc(f) for n = deg f >= 1."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant requires degree >= 1")
    if n == 1:
        return 1
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, f.lc)
    assert rem == 0, "discriminant of an integer polynomial is an integer"
    return q


def is_rational_square(q: int | Fraction) -> bool:
    """True iff q is the square of a rational; zero counts, negatives do not."""
    q = Fraction(q)
    if q < 0:
        return False
    return exact_isqrt(q.numerator) is not None and exact_isqrt(q.denominator) is not None


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for i in range(1, isqrt(n) + 1):
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
    return small + large[::-1]


def exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    """Quotient f / g when the division is exact over Z; raises otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(f.coeffs)
    out = [0] * max(f.degree - g.degree + 1, 0)
    for i in range(f.degree - g.degree, -1, -1):
        c, r = divmod(rem[i + g.degree], g.lc)
        if r:
            raise ValueError("division is not exact over Z")
        out[i] = c
        for j, gc in enumerate(g.coeffs):
            rem[i + j] -= c * gc
    if any(rem):
        raise ValueError("division is not exact over Z")
    return IntPoly(out)


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd over Z with positive leading coefficient (Euclid over Q)."""
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]

    def _trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = _trim(a), _trim(b)
    while b:
        # a mod b over Q
        r = a[:]
        for i in range(len(r) - len(b), -1, -1):
            c = r[i + len(b) - 1] / b[-1]
            for j, bc in enumerate(b):
                r[i + j] -= c * bc
        a, b = b, _trim(r)
    if not a:
        return IntPoly()
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    return IntPoly([int(c * den) for c in a]).primitive_part()


def squarefree_part(f: IntPoly) -> IntPoly:
    """f / gcd(f, f'), primitive with positive leading coefficient."""
    if f.degree < 1:
        raise ValueError("squarefree part requires degree >= 1")
    g = poly_gcd(f, f.derivative())
    num = f.primitive_part()
    return exact_div(num, g).primitive_part()


def _integer_root(f: IntPoly) -> int | None:
    """Some integer root of a monic f, or None (rational-root test)."""
    if f[0] == 0:
        return 0
    for r in _divisors(f[0]):
        for s in (r, -r):
            if f.eval(s) == 0:
                return s
    return None


def factor_quartic(f: IntPoly) -> list[IntPoly]:
    """Factor a monic primitive quartic into monic irreducible integer factors.

    A singleton result is an irreducibility certificate: the rational-root
    test and the exhaustive search over monic quadratic factor pairs
    (x^2+ax+b)(x^2+cx+e) with b*e = f(0) both came up empty.
    """
    if f.degree != 4:
        raise ValueError("factor_quartic requires degree exactly 4")
    if not f.is_monic():
        raise ValueError("factor_quartic requires a monic polynomial")
    if f.content() != 1:
        raise ValueError("factor_quartic requires a primitive polynomial")

    factors: list[IntPoly] = []
    g = f
    while g.degree > 0:
        r = _integer_root(g)
        if r is None:
            break
        factors.append(IntPoly((-r, 1)))
        g = exact_div(g, IntPoly((-r, 1)))

    if g.degree <= 0:
        return sorted(factors, key=lambda p: p.coeffs)
    if g.degree in (2, 3):
        # no rational roots, so degree 2 or 3 means irreducible
        factors.append(g)
        return sorted(factors, key=lambda p: p.coeffs)

    f3, f2, f1, f0 = g[3], g[2], g[1], g[0]
    for b in _divisors(f0):
        for b_signed in (b, -b):
            e, rem = divmod(f0, b_signed)
            if rem:
                continue
            # (x^2+ax+b)(x^2+cx+e): a+c = f3, b+e+ac = f2, ae+bc = f1
            if b_signed != e:
                num = f1 - f3 * b_signed
                den = e - b_signed
                a, rem = divmod(num, den)
                if rem:
                    continue
                c = f3 - a
                if b_signed + e + a * c != f2:
                    continue
            else:
                if b_signed * f3 != f1:
                    continue
                disc = f3 * f3 - 4 * (f2 - 2 * b_signed)
                s = exact_isqrt(disc)
                if s is None:
                    continue
                if (f3 + s) % 2:
                    continue
                a = (f3 + s) // 2
                c = f3 - a
            q1 = IntPoly((b_signed, a, 1))
            q2 = IntPoly((e, c, 1))
            assert q1 * q2 == g
            return sorted(factors + [q1, q2], key=lambda p: p.coeffs)
    return sorted(factors + [g], key=lambda p: p.coeffs)


def is_irreducible_quartic(f: IntPoly) -> bool:
    return len(factor_quartic(f)) == 1


def lagrange_int_poly(points: list[tuple[int, int]]) -> IntPoly:
    """Interpolate the unique degree < len(points) polynomial; must land in Z[x]."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for xi, yi in points:
        # build the Lagrange basis numerator prod_{j != i} (x - xj) incrementally
        basis = [Fraction(1)]
        denom = Fraction(1)
        for xj, _ in points:
            if xj == xi:
                continue
            denom *= xi - xj
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k] -= c * xj
                new[k + 1] += c
            basis = new
        w = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += w * c
    for c in coeffs:
        if c.denominator != 1:
            raise ValueError("interpolated polynomial is not integral")
    return IntPoly([int(c) for c in coeffs])
