"""Exact elements a + b*sqrt(d) of a quadratic field, with rational coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import MismatchError

Rat = int | Fraction


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    n = abs(n)
    if n % 4 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        if n % f == 0:
            n //= f
        f += 2
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_d(d: int) -> int:
    if d in (0, 1) or not is_squarefree(d):
        raise ValueError(f"field parameter must be squarefree and not 0 or 1, got {d}")
    return d


@dataclass(frozen=True)
class QuadElement:
    """a + b*sqrt(d) with a, b rational and d squarefree, d not in {0, 1}.

    Elements over different d never mix; operations raise MismatchError
    instead of coercing.
    """

    d: int
    a: Fraction
    b: Fraction

    def __init__(self, d: int, a: Rat, b: Rat = 0):
        object.__setattr__(self, "d", _check_d(d))
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def _same_field(self, other: "QuadElement") -> None:
        if self.d != other.d:
            raise MismatchError(f"cannot mix sqrt({self.d}) and sqrt({other.d}) elements")

    def __add__(self, other: "QuadElement | Rat") -> "QuadElement":
        if isinstance(other, (int, Fraction)):
            return QuadElement(self.d, self.a + other, self.b)
        if not isinstance(other, QuadElement):
            return NotImplemented
        self._same_field(other)
        return QuadElement(self.d, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "QuadElement":
        return QuadElement(self.d, -self.a, -self.b)

    def __sub__(self, other: "QuadElement | Rat") -> "QuadElement":
        return self + (-other if isinstance(other, QuadElement) else QuadElement(self.d, -Fraction(other), 0))

    def __rsub__(self, other: Rat) -> "QuadElement":
        return QuadElement(self.d, other) - self

    def __mul__(self, other: "QuadElement | Rat") -> "QuadElement":
        if isinstance(other, (int, Fraction)):
            return QuadElement(self.d, self.a * other, self.b * other)
        if not isinstance(other, QuadElement):
            return NotImplemented
        self._same_field(other)
        return QuadElement(
            self.d,
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: "QuadElement | Rat") -> "QuadElement":
        if isinstance(other, (int, Fraction)):
            return QuadElement(self.d, self.a / other, self.b / other)
        self._same_field(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero quadratic element")
        return self * other.conjugate() / n

    def __pow__(self, n: int) -> "QuadElement":
        if n < 0:
            return (QuadElement(self.d, 1) / self) ** (-n)
        result = QuadElement(self.d, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        """True iff the element lies in the maximal order of Q(sqrt(d))."""
        if self.d % 4 == 1:
            x, y = 2 * self.a, 2 * self.b
            return x.denominator == 1 and y.denominator == 1 and (x - y) % 2 == 0
        return self.a.denominator == 1 and self.b.denominator == 1

    def sign(self) -> int:
        """Sign under the embedding sending sqrt(d) to the positive root (d > 0 only)."""
        if self.d < 0:
            raise ValueError("sign is defined only for real quadratic elements")
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: compare a^2 with d*b^2
        lhs, rhs = self.a * self.a, self.d * self.b * self.b
        if self.a > 0:
            return 1 if lhs > rhs else -1
        return 1 if lhs < rhs else -1

    def __lt__(self, other: "QuadElement | Rat") -> bool:
        diff = self - (other if isinstance(other, QuadElement) else QuadElement(self.d, other))
        return diff.sign() < 0

    def __gt__(self, other: "QuadElement | Rat") -> bool:
        diff = self - (other if isinstance(other, QuadElement) else QuadElement(self.d, other))
        return diff.sign() > 0

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root = f"√{self.d}" if self.d > 0 else f"√({self.d})"
        bpart = root if abs(self.b) == 1 else f"{abs(self.b)}{root}"
        if self.a == 0:
            return bpart if self.b > 0 else f"-{bpart}"
        return f"{self.a} {'+' if self.b > 0 else '-'} {bpart}"


def sqrt_of(d: int) -> QuadElement:
    return QuadElement(d, 0, 1)


def exact_isqrt(n: int) -> int | None:
    """Integer square root of n if n is a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None
