"""Exact arithmetic in quadratic fields Q(sqrt(d)), plus a +infinity element.

Every correctness-bearing comparison in the library bottoms out here.  A
``QuadValue`` stores a + b*sqrt(d) with ``Fraction`` coefficients and a
squarefree natural d; d == 0 encodes a plain rational (b forced to 0).
Floors and sign tests are decided by integer-square bracketing, never by
floating point.  Floats appear only in rendering helpers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import IncomparableFields

Rational = Fraction

MAX_RADICAND = 10**6

LT, EQ, GT = -1, 0, 1


def _frac(x) -> Fraction:
    if isinstance(x, QuadValue):
        return x.to_fraction()
    return Fraction(x)


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = s*s*d with d squarefree; returns (s, d).  n >= 0."""
    if n < 0:
        raise ValueError("radicand must be nonnegative")
    if n in (0, 1):
        return 1, n
    s, d, p = 1, n, 2
    while p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            s *= p
        p += 1 if p == 2 else 2
    return s, d


@dataclass(frozen=True)
class QuadValue:
    """Exact value a + b*sqrt(d) with a, b rational and d squarefree."""

    a: Fraction
    b: Fraction
    d: int

    def __init__(self, a, b=0, d=0):
        a, b, d = Fraction(a), Fraction(b), int(d)
        if d < 0:
            raise ValueError("negative radicand")
        if d > MAX_RADICAND:
            raise ValueError(f"radicand {d} exceeds supported bound {MAX_RADICAND}")
        if b == 0:
            d = 0
        elif d == 0:
            raise ValueError("irrational part requires d > 0")
        else:
            s, d = squarefree_decompose(d)
            b *= s
            if d == 1:  # sqrt(1): value was rational all along
                a += b
                b, d = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(x) -> "QuadValue":
        if isinstance(x, QuadValue):
            return x
        return QuadValue(Fraction(x))

    @staticmethod
    def sqrt(x) -> "QuadValue":
        """Exact sqrt of a nonnegative rational, as an element of Q(sqrt(d))."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("sqrt of negative rational")
        # sqrt(p/q) = sqrt(p*q)/q
        s, d = squarefree_decompose(x.numerator * x.denominator)
        return QuadValue(0, Fraction(s, x.denominator), d) if d else QuadValue(Fraction(s, x.denominator))

    # -- predicates ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def to_fraction(self) -> Fraction:
        if self.d != 0:
            raise ValueError(f"{self!r} is irrational")
        return self.a

    def _common_field(self, other: "QuadValue") -> int:
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise IncomparableFields(f"sqrt({self.d}) vs sqrt({other.d})")

    # -- sign, comparison, floor ----------------------------------------

    def sign(self) -> int:
        """Exact sign via comparison of a^2 against b^2 d."""
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        lhs, rhs = a * a, b * b * d
        if lhs == rhs:
            return 0
        # opposite signs: the larger square wins
        big_is_a = lhs > rhs
        return (1 if big_is_a else -1) if a > 0 else (-1 if big_is_a else 1)

    def compare(self, other) -> int:
        return (self - QuadValue.of(other)).sign()

    def __eq__(self, other):
        if isinstance(other, (QuadValue, int, Fraction)):
            try:
                return self.compare(other) == 0
            except IncomparableFields:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def floor(self) -> int:
        """Unique z with z <= self < z + 1, decided exactly."""
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return a.numerator // a.denominator
        den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        A = a.numerator * (den // a.denominator)
        B = b.numerator * (den // b.denominator)
        # self = (A + B*sqrt(d)) / den with integer A, B and den > 0
        m = math.isqrt(B * B * d)
        if B >= 0:
            fb = m
        else:
            fb = -m if m * m == B * B * d else -m - 1
        # fb <= B*sqrt(d) < fb+1, hence floor is (A+fb)//den or one more
        z = (A + fb) // den
        return z + 1 if self.compare(z + 1) >= 0 else z

    def ceil(self) -> int:
        return -((-self).floor())

    # -- field arithmetic ------------------------------------------------

    def __add__(self, other):
        o = QuadValue.of(other)
        d = self._common_field(o)
        return QuadValue(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadValue(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-QuadValue.of(other))

    def __rsub__(self, other):
        return (-self) + QuadValue.of(other)

    def __mul__(self, other):
        o = QuadValue.of(other)
        d = self._common_field(o)
        return QuadValue(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadValue":
        if self.sign() == 0:
            raise ZeroDivisionError("QuadValue division by zero")
        # 1/(a + b sqrt d) = (a - b sqrt d)/(a^2 - b^2 d); denominator is
        # nonzero for nonzero values because d is squarefree
        norm = self.a * self.a - self.b * self.b * self.d
        return QuadValue(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        return self * QuadValue.of(other).inverse()

    def __rtruediv__(self, other):
        return QuadValue.of(other) * self.inverse()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return self.sign() != 0

    # -- approximation (presentation only) --------------------------------

    def bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Certified rational enclosure of width <= |b| * 2**-bits."""
        if self.b == 0:
            return self.a, self.a
        lo, hi = sqrt_bounds(self.d, bits)
        if self.b > 0:
            return self.a + self.b * lo, self.a + self.b * hi
        return self.a + self.b * hi, self.a + self.b * lo

    def __float__(self):
        lo, hi = self.bounds(80)
        return float((lo + hi) / 2)

    def __repr__(self):
        if self.b == 0:
            return f"QuadValue({self.a})"
        return f"QuadValue({self.a} + {self.b}*sqrt({self.d}))"


def sqrt_bounds(d: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= sqrt(d) <= hi with hi - lo = 2**-bits."""
    scale = 1 << bits
    lo = math.isqrt(d * scale * scale)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


def floor_quad(v) -> int:
    return QuadValue.of(v).floor()


def cmp_quad(u, v) -> int:
    """Exact sign of u - v: one of LT (-1), EQ (0), GT (1)."""
    return QuadValue.of(u).compare(v)


def cmp_across_fields(u, v) -> int:
    """Exact sign of u - v even when u, v live in different fields.

    Writes u - v = A + B with A in Q(sqrt(du)) and B a pure multiple of
    sqrt(dv); when the signs of A and B disagree the comparison of A^2
    (still quadratic) against the rational B^2 settles it.
    """
    u, v = QuadValue.of(u), QuadValue.of(v)
    try:
        return u.compare(v)
    except IncomparableFields:
        pass
    a_part = QuadValue(u.a - v.a, u.b, u.d)
    b_coeff, b_d = -v.b, v.d
    sa = a_part.sign()
    sb = (b_coeff > 0) - (b_coeff < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    cmp_sq = (a_part * a_part).compare(QuadValue(b_coeff * b_coeff * b_d))
    if cmp_sq == 0:
        return 0
    return sa if cmp_sq > 0 else sb


def solve_quadratic(a: Fraction, b: Fraction, c: Fraction) -> list[QuadValue]:
    """Exact real roots of a t^2 + b t + c = 0 with rational coefficients.

    Roots land in Q(sqrt(disc)).  Returns [] when there is no real root,
    the sorted pair otherwise (a single root listed once).
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0:
        if b == 0:
            return []
        return [QuadValue(-c / b)]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    if disc == 0:
        return [QuadValue(-b / (2 * a))]
    root = QuadValue.sqrt(disc)
    lo = (QuadValue(-b) - root) / (2 * a)
    hi = (QuadValue(-b) + root) / (2 * a)
    return sorted((lo, hi))


@dataclass(frozen=True)
class ExtValue:
    """A QuadValue extended with +infinity (value None encodes infinity)."""

    value: QuadValue | None

    @staticmethod
    def finite(v) -> "ExtValue":
        return ExtValue(QuadValue.of(v))

    @staticmethod
    def infinity() -> "ExtValue":
        return ExtValue(None)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def compare(self, other: "ExtValue") -> int:
        if not self.is_finite:
            return 0 if not other.is_finite else 1
        if not other.is_finite:
            return -1
        return self.value.compare(other.value)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def floor(self) -> int:
        if not self.is_finite:
            raise ValueError("floor of +infinity")
        return self.value.floor()

    def __add__(self, other: "ExtValue") -> "ExtValue":
        if not (self.is_finite and other.is_finite):
            return ExtValue.infinity()
        return ExtValue(self.value + other.value)

    def __repr__(self):
        return "ExtValue(+inf)" if self.value is None else f"ExtValue({self.value!r})"


PLUS_INFINITY = ExtValue(None)


def rational_upper_sqrt(t, bits: int = 32) -> Fraction:
    """A rational u with u*u >= t, close to sqrt(t); t a nonnegative value."""
    t = QuadValue.of(t)
    if t.sign() < 0:
        raise ValueError("sqrt bound of a negative value")
    if t.sign() == 0:
        return Fraction(0)
    _, hi = t.bounds(80)
    scale = 1 << bits
    u = Fraction(math.isqrt((hi.numerator * scale * scale) // hi.denominator) + 1, scale)
    assert QuadValue(u * u).compare(t) >= 0
    return u
