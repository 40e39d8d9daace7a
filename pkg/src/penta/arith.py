"""Exact integers and rationals, generalized binomials, and certified intervals.

Exact values are plain Python ``int`` and :class:`fractions.Fraction`; both
are arbitrary precision and immutable, which is all the bound computations
need.  Irrational quantities (square roots, logarithms, fractional powers)
are enclosed by :class:`CertifiedInterval`, whose endpoints are dyadic
rationals rounded outward after every operation, so that

    x in X and y in Y  implies  x op y in X op Y.

Inequalities between enclosures are decided by :func:`certify`, which only
answers VERIFIED when the enclosures are disjoint in the right order and
otherwise retries at doubled precision up to a cap.
"""

from __future__ import annotations

import enum
import functools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Tuple, Union

from .errors import DomainError

DEFAULT_PRECISION = 256
DEFAULT_MAX_PRECISION = 4096
_GUARD_BITS = 32

Real = Union[int, Fraction]


def max_precision_from_env(default: int = DEFAULT_MAX_PRECISION) -> int:
    value = os.environ.get("PENTA_MAX_PRECISION")
    return int(value) if value else default


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with the falling-factorial convention.

    ``C(n, k) = n (n-1) ... (n-k+1) / k!`` for any integer ``n`` and
    ``k >= 0``; in particular ``C(n, k) = 0`` when ``0 <= n < k``.
    """
    if k < 0:
        raise DomainError(f"binomial lower index must be nonnegative, got {k}")
    if n >= 0:
        return math.comb(n, k)
    # C(n, k) = (-1)^k C(k - n - 1, k) for negative n
    value = math.comb(k - n - 1, k)
    return -value if k % 2 else value


# ---------------------------------------------------------------------------
# dyadic rounding


def _round(q: Fraction, precision: int, up: bool) -> Fraction:
    """Round ``q`` to a dyadic rational with about ``precision`` significant bits."""
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    shift = precision - (abs(n).bit_length() - d.bit_length())
    if shift >= 0:
        num, den = n << shift, d
    else:
        num, den = n, d << -shift
    k = -((-num) // den) if up else num // den
    if shift >= 0:
        return Fraction(k, 1 << shift)
    return Fraction(k << -shift)


def round_down(q: Real, precision: int) -> Fraction:
    return _round(Fraction(q), precision, up=False)


def round_up(q: Real, precision: int) -> Fraction:
    return _round(Fraction(q), precision, up=True)


def _sqrt_bound(q: Fraction, precision: int, up: bool) -> Fraction:
    if q < 0:
        raise DomainError("square root of a negative number")
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    shift = precision - (n.bit_length() - d.bit_length()) // 2
    # k ~ sqrt(q) * 2**shift, i.e. k**2 ~ q * 4**shift
    if shift >= 0:
        num, den = n << (2 * shift), d
    else:
        num, den = n, d << (-2 * shift)
    if up:
        target = -((-num) // den)
        k = math.isqrt(target)
        if k * k < target:
            k += 1
    else:
        k = math.isqrt(num // den)
    if shift >= 0:
        return Fraction(k, 1 << shift)
    return Fraction(k << -shift)


# ---------------------------------------------------------------------------
# intervals


@dataclass(frozen=True)
class CertifiedInterval:
    """A closed interval ``[lo, hi]`` with dyadic endpoints.

    ``precision`` is the number of significant bits kept when endpoints are
    rounded; results of binary operations carry the larger of the two
    operand precisions.
    """

    lo: Fraction
    hi: Fraction
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: Real, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
        """Tightest dyadic enclosure of an exact rational."""
        value = Fraction(value)
        return cls(round_down(value, precision), round_up(value, precision), precision)

    @classmethod
    def hull(cls, lo: Real, hi: Real, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
        return cls(round_down(lo, precision), round_up(hi, precision), precision)

    # -- inspection ---------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: Union[Real, CertifiedInterval]) -> bool:
        if isinstance(value, CertifiedInterval):
            return self.lo <= value.lo and value.hi <= self.hi
        return self.lo <= value <= self.hi

    def certainly_lt(self, other: Union[Real, CertifiedInterval]) -> bool:
        other = self._coerce(other)
        return self.hi < other.lo

    def certainly_le(self, other: Union[Real, CertifiedInterval]) -> bool:
        other = self._coerce(other)
        return self.hi <= other.lo

    def certainly_gt(self, other: Union[Real, CertifiedInterval]) -> bool:
        return self._coerce(other).certainly_lt(self)

    def __float__(self) -> float:
        return float(self.midpoint)

    def __repr__(self) -> str:
        return f"CertifiedInterval([{float(self.lo)!r}, {float(self.hi)!r}], precision={self.precision})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> CertifiedInterval:
        if isinstance(other, CertifiedInterval):
            return other
        if isinstance(other, (int, Fraction)):
            return CertifiedInterval.exact(other, self.precision)
        return NotImplemented

    def _make(self, lo: Fraction, hi: Fraction, precision: int) -> CertifiedInterval:
        return CertifiedInterval(round_down(lo, precision), round_up(hi, precision), precision)

    def rounded(self, precision: int) -> CertifiedInterval:
        return self._make(self.lo, self.hi, precision)

    def __neg__(self) -> CertifiedInterval:
        return CertifiedInterval(-self.hi, -self.lo, self.precision)

    def __add__(self, other) -> CertifiedInterval:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = max(self.precision, other.precision)
        return self._make(self.lo + other.lo, self.hi + other.hi, p)

    __radd__ = __add__

    def __sub__(self, other) -> CertifiedInterval:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = max(self.precision, other.precision)
        return self._make(self.lo - other.hi, self.hi - other.lo, p)

    def __rsub__(self, other) -> CertifiedInterval:
        return -(self - other)

    def __mul__(self, other) -> CertifiedInterval:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = max(self.precision, other.precision)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return self._make(min(products), max(products), p)

    __rmul__ = __mul__

    def reciprocal(self) -> CertifiedInterval:
        if self.lo <= 0 <= self.hi:
            raise DomainError("division by an interval containing zero")
        return self._make(1 / self.hi, 1 / self.lo, self.precision)

    def __truediv__(self, other) -> CertifiedInterval:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.lo <= 0 <= other.hi:
            raise DomainError("division by an interval containing zero")
        p = max(self.precision, other.precision)
        quotients = (self.lo / other.lo, self.lo / other.hi, self.hi / other.lo, self.hi / other.hi)
        return self._make(min(quotients), max(quotients), p)

    def __rtruediv__(self, other) -> CertifiedInterval:
        return self._coerce(other) / self

    def __pow__(self, p) -> CertifiedInterval:
        return interval_pow(self, p)

    def sqrt(self) -> CertifiedInterval:
        return interval_sqrt(self)

    def log(self) -> CertifiedInterval:
        return interval_log(self)

    def exp(self) -> CertifiedInterval:
        return interval_exp(self)


def as_interval(value: Union[Real, CertifiedInterval], precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    if isinstance(value, CertifiedInterval):
        return value
    return CertifiedInterval.exact(value, precision)


def interval_sqrt(x: CertifiedInterval) -> CertifiedInterval:
    if x.lo < 0:
        raise DomainError(f"square root of an interval with negative part, lo = {x.lo}")
    p = x.precision
    return CertifiedInterval(_sqrt_bound(x.lo, p, up=False), _sqrt_bound(x.hi, p, up=True), p)


def _atanh_series(z: Fraction, precision: int) -> CertifiedInterval:
    """Enclosure of atanh(z) for |z| <= 1/3 via its odd Taylor series."""
    az = abs(z)
    if az == 0:
        return CertifiedInterval(Fraction(0), Fraction(0), precision)
    # number of terms so that |z|^(2N+1) < 2^-(precision+4)
    n_terms = max(1, math.ceil((precision + 4) / (-2 * math.log2(float(az)))) + 1)
    zi = CertifiedInterval.exact(z, precision)
    z2 = zi * zi
    term = zi
    total = CertifiedInterval(Fraction(0), Fraction(0), precision)
    for k in range(n_terms):
        total = total + term / (2 * k + 1)
        term = term * z2
    # remaining terms are bounded by a geometric series in z^2
    tail = round_up(az ** (2 * n_terms + 1) / ((2 * n_terms + 1) * (1 - az * az)), precision)
    return total + CertifiedInterval(-tail, tail, precision)


@functools.lru_cache(maxsize=None)
def _ln2(precision: int) -> CertifiedInterval:
    return 2 * _atanh_series(Fraction(1, 3), precision)


def _log_point(q: Fraction, precision: int) -> CertifiedInterval:
    if q <= 0:
        raise DomainError("logarithm of a nonpositive number")
    e = q.numerator.bit_length() - q.denominator.bit_length()
    t = q / Fraction(2) ** e
    if t > Fraction(4, 3):
        e += 1
        t /= 2
    elif t < Fraction(2, 3):
        e -= 1
        t *= 2
    z = (t - 1) / (t + 1)
    return e * _ln2(precision) + 2 * _atanh_series(z, precision)


def interval_log(x: CertifiedInterval) -> CertifiedInterval:
    if x.lo <= 0:
        raise DomainError(f"logarithm of an interval with nonpositive part, lo = {x.lo}")
    wp = x.precision + _GUARD_BITS
    lo = _log_point(x.lo, wp).lo
    hi = _log_point(x.hi, wp).hi if x.hi != x.lo else _log_point(x.lo, wp).hi
    return CertifiedInterval.hull(lo, hi, x.precision)


def _exp_point(q: Fraction, precision: int) -> CertifiedInterval:
    aq = abs(q)
    halvings = 0
    while aq > Fraction(1, 2):
        aq /= 2
        halvings += 1
    wp = precision + halvings + 16
    r = q / 2**halvings
    ri = CertifiedInterval.exact(r, wp)
    total = CertifiedInterval(Fraction(0), Fraction(0), wp)
    term = CertifiedInterval(Fraction(1), Fraction(1), wp)
    n = 0
    # stop once |r|^n / n! < 2^-(wp+2); for |r| <= 1/2 the tail is at most twice the next term
    bound = Fraction(1)
    while bound > Fraction(1, 2 ** (wp + 2)):
        total = total + term
        n += 1
        term = term * ri / n
        bound = bound * abs(r) / n
    tail = round_up(2 * bound, wp)
    result = total + CertifiedInterval(-tail, tail, wp)
    for _ in range(halvings):
        result = result * result
    return result


def interval_exp(x: CertifiedInterval) -> CertifiedInterval:
    wp = x.precision + _GUARD_BITS
    lo = _exp_point(x.lo, wp).lo
    hi = _exp_point(x.hi, wp).hi
    return CertifiedInterval.hull(max(lo, Fraction(0)), hi, x.precision)


def _integer_power(x: CertifiedInterval, k: int) -> CertifiedInterval:
    if k == 0:
        return CertifiedInterval(Fraction(1), Fraction(1), x.precision)
    if k < 0:
        return _integer_power(x, -k).reciprocal()
    a, b = x.lo**k, x.hi**k
    if k % 2 == 0 and x.lo < 0 < x.hi:
        return CertifiedInterval.hull(0, max(a, b), x.precision)
    return CertifiedInterval.hull(min(a, b), max(a, b), x.precision)


def interval_pow(x: Union[CertifiedInterval, Real], p: Real, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """Enclosure of ``x ** p`` for a rational exponent ``p``.

    Integer exponents use exact endpoint powers; exponents whose denominator
    is a power of two use repeated square roots; anything else goes through
    ``exp(p * log x)``.
    """
    x = as_interval(x, precision)
    p = Fraction(p)
    if p.denominator == 1:
        k = int(p)
        if k < 0 and x.lo <= 0 <= x.hi:
            raise DomainError("negative power of an interval containing zero")
        return _integer_power(x, k)
    if x.lo <= 0:
        raise DomainError("fractional power requires a positive base")
    den = p.denominator
    if den & (den - 1) == 0:
        wp = x.precision + _GUARD_BITS
        root = x.rounded(wp)
        for _ in range(den.bit_length() - 1):
            root = interval_sqrt(root)
        return _integer_power(root, p.numerator).rounded(x.precision)
    wp = x.precision + _GUARD_BITS
    return interval_exp(interval_log(x.rounded(wp)) * p).rounded(x.precision)


# ---------------------------------------------------------------------------
# certification


class Verdict(str, enum.Enum):
    VERIFIED = "VERIFIED"
    FAILED = "FAILED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    precision: int
    lhs: CertifiedInterval
    rhs: CertifiedInterval

    @property
    def margin(self) -> Fraction:
        """Certified lower bound on ``rhs - lhs``."""
        return self.rhs.lo - self.lhs.hi


def certify(
    build: Callable[[int], Tuple[Union[Real, CertifiedInterval], Union[Real, CertifiedInterval]]],
    *,
    strict: bool = True,
    precision: int = DEFAULT_PRECISION,
    max_precision: int | None = None,
) -> Certificate:
    """Certify ``lhs < rhs`` (or ``<=`` when ``strict`` is false).

    ``build(precision)`` returns the two sides.  The verdict is VERIFIED
    when the enclosures separate, FAILED when they separate the wrong way,
    and INCONCLUSIVE when they still overlap at ``max_precision``.
    """
    if max_precision is None:
        max_precision = max_precision_from_env()
    prec = precision
    while True:
        lhs, rhs = build(prec)
        lhs, rhs = as_interval(lhs, prec), as_interval(rhs, prec)
        holds = lhs.hi < rhs.lo if strict else lhs.hi <= rhs.lo
        if holds:
            return Certificate(Verdict.VERIFIED, prec, lhs, rhs)
        refuted = lhs.lo >= rhs.hi if strict else lhs.lo > rhs.hi
        if refuted:
            return Certificate(Verdict.FAILED, prec, lhs, rhs)
        if prec * 2 > max_precision:
            return Certificate(Verdict.INCONCLUSIVE, prec, lhs, rhs)
        prec *= 2
