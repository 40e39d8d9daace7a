"""Truncated power series over Q and the generating series F_i.

``F_0 = 1`` and ``F_{i+1} = D_i^{m_i} F_i`` where ``D_i F = (1-x)^{-1} F - x^i - x^{i+1}``
and ``m_i`` is the coefficient of ``x^i`` in ``F_i``.  The integers
``m_{i,j}`` are the coefficients of ``x^{i+j}`` in ``F_i``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .arith import binomial
from .errors import DomainError, ResourceError, TruncationError, VerificationFailure

Number = Union[int, Fraction]

# largest index set handled by basis_decomposition; i = 8 needs 6479
MAX_BASIS_SIZE = 10**6


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of ``x^0 .. x^order``; nothing beyond ``order`` is known."""

    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[Number], order: int) -> TruncatedSeries:
        coeffs = list(coefficients)[: order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, power: int, order: int, coefficient: Number = 1) -> TruncatedSeries:
        coeffs = [0] * (order + 1)
        if power <= order:
            coeffs[power] = coefficient
        return cls(tuple(coeffs))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Fraction:
        if k > self.order:
            raise TruncationError(f"coefficient x^{k} is beyond the truncation order {self.order}")
        return self.coefficients[k] if k >= 0 else Fraction(0)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.order, other.order) + 1
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coefficients[:n], other.coefficients[:n])))

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.order, other.order) + 1
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coefficients[:n], other.coefficients[:n])))

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.order, other.order) + 1
        a, b = self.coefficients, other.coefficients
        return TruncatedSeries(tuple(sum(a[s] * b[t - s] for s in range(t + 1)) for t in range(n)))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def integer_coefficients(self) -> List[int]:
        if not self.is_integral():
            raise VerificationFailure("series has non-integral coefficients")
        return [c.numerator for c in self.coefficients]


def inverse_power_coefficients(m: int, count: int) -> List[int]:
    """First ``count`` coefficients of ``(1-x)^{-m}``, i.e. ``C(n+m-1, n)``."""
    if m < 0:
        raise DomainError(f"exponent must be nonnegative, got {m}")
    out = [1] * count
    c = 1
    for n in range(1, count):
        c = c * (n + m - 1) // n
        out[n] = c
    return out


def delta(F: TruncatedSeries, i: int) -> TruncatedSeries:
    """``(1-x)^{-1} F - x^i - x^{i+1}``."""
    if F.order < i + 1:
        raise TruncationError(f"delta_{i} needs order >= {i + 1}, series has order {F.order}")
    out = []
    running = Fraction(0)
    for c in F.coefficients:
        running += c
        out.append(running)
    out[i] -= 1
    out[i + 1] -= 1
    return TruncatedSeries(tuple(out))


def delta_power(F: TruncatedSeries, i: int, m: int) -> TruncatedSeries:
    """Apply :func:`delta` literally ``m`` times."""
    for _ in range(m):
        F = delta(F, i)
    return F


def advance(F: TruncatedSeries, i: int, m: int) -> TruncatedSeries:
    """``D_i^m F`` in one pass.

    Uses ``D_i^m F = (1-x)^{-m} F + ((1-x)^{-m} - 1)(x^{i+1} - x^{i-1})``.
    """
    if m < 0:
        raise DomainError(f"number of applications must be nonnegative, got {m}")
    if m == 0:
        return F
    if F.order < i + 1:
        raise TruncationError(f"advance at level {i} needs order >= {i + 1}, series has order {F.order}")
    N = F.order
    b = inverse_power_coefficients(m, N + 2)
    if all(c.denominator == 1 for c in F.coefficients):
        f = [c.numerator for c in F.coefficients]
    else:
        f = list(F.coefficients)

    def shifted(n: int) -> int:
        # coefficient of x^n in (1-x)^{-m} - 1
        return b[n] if n >= 1 else 0

    out = []
    for t in range(N + 1):
        value = sum(b[t - s] * f[s] for s in range(t + 1))
        value += shifted(t - i - 1) - shifted(t - i + 1)
        out.append(value)
    return TruncatedSeries(tuple(out))


@dataclass(frozen=True)
class Level:
    """``F_i`` together with its row ``(m_{i,0}, m_{i,1}, ...)``."""

    i: int
    series: TruncatedSeries
    row: Tuple[int, ...]

    @property
    def m(self) -> int:
        return self.row[0]


def generate(i_max: int, order: int) -> List[Level]:
    """``F_0 .. F_{i_max}`` truncated at ``order`` with their integer rows."""
    if order < i_max + 1:
        raise TruncationError(f"order {order} too small for level {i_max}; need at least {i_max + 1}")
    F = TruncatedSeries.monomial(0, order)
    levels = []
    for i in range(i_max + 1):
        tail = F.coefficients[i:]
        if any(c.denominator != 1 for c in tail):
            raise VerificationFailure(f"F_{i} has a non-integral coefficient")
        row = tuple(c.numerator for c in tail)
        levels.append(Level(i, F, row))
        if i < i_max:
            F = advance(F, i, row[0])
    return levels


def default_order(i_max: int, j_max: int) -> int:
    return i_max + j_max + 2


# ---------------------------------------------------------------------------
# decomposition in the basis (1-x)^{-k}


@dataclass(frozen=True)
class BasisDecomposition:
    """``F_i = x^i (-1 + sum_k a_{i,k} (1-x)^{-k})`` for ``k = 1 .. len(a)``."""

    i: int
    a: Tuple[int, ...]
    constant_term: int = -1

    @property
    def size(self) -> int:
        return len(self.a)

    def coefficient(self, j: int) -> int:
        """``m_{i,j}``: the coefficient of ``x^{i+j}``."""
        total = self.constant_term if j == 0 else 0
        c = 1  # C(j + k - 1, k - 1) at k = 1
        for k, a in enumerate(self.a, start=1):
            if k > 1:
                c = c * (j + k - 1) // (k - 1)
            total += a * c
        return total

    def expand(self, order: int) -> TruncatedSeries:
        coeffs = [0] * (order + 1)
        for j in range(order - self.i + 1):
            coeffs[self.i + j] = self.coefficient(j)
        return TruncatedSeries(tuple(coeffs))


def solve_basis(F: TruncatedSeries, i: int, size: int) -> Tuple[int, ...]:
    """Solve the triangular change of basis for the ``a_{i,k}``, ``k <= size``.

    With ``G = x^{-i} F + 1 = sum_k a_k (1-x)^{-k}``, the product
    ``G (1-x)^size`` is a polynomial of degree below ``size``; rewriting it in
    powers of ``u = 1 - x`` reads off ``a_k`` as the coefficient of ``u^{size-k}``.
    """
    if F.order < i + size - 1:
        raise TruncationError(f"need F_{i} to order {i + size - 1}, have {F.order}")
    g = [F[i + n] for n in range(size)]
    g[0] += 1
    # p = g * (1-x)^size truncated below degree size
    p = [sum(g[n - s] * ((-1) ** s) * binomial(size, s) for s in range(n + 1)) for n in range(size)]
    a = []
    for k in range(1, size + 1):
        e = size - k
        value = sum(p[n] * binomial(n, e) for n in range(e, size)) * (-1) ** e
        if value.denominator != 1:
            raise VerificationFailure(f"a_{i},{k} = {value} is not an integer")
        a.append(int(value))
    return tuple(a)


def _next_decomposition(a: Sequence[int], m: int) -> Tuple[int, ...]:
    """Coefficients for level ``i+1`` from those of level ``i`` and ``m = m_i >= 1``.

    Writing ``y = (1-x)^{-1}`` and ``A(y) = sum a_k y^k``, the next level is
    ``A'(y) = 1 + R(y) / (y - 1)`` with
    ``R = 1 - y - ... - y^{m-1} - 2 y^m - y^{m+1} + y^{m+1} A(y)``.
    """
    if m < 1:
        raise DomainError("the decomposition step needs m_i >= 1")
    size = len(a)
    degree = size + m + 1
    r = [0] * (degree + 1)
    r[0] = 1
    for k in range(1, m):
        r[k] -= 1
    r[m] -= 2
    r[m + 1] -= 1
    for k, ak in enumerate(a, start=1):
        r[k + m + 1] += ak
    # synthetic division by (y - 1)
    q = [0] * degree
    q[degree - 1] = r[degree]
    for k in range(degree - 1, 0, -1):
        q[k - 1] = r[k] + q[k]
    if r[0] + q[0] != 0:
        raise VerificationFailure("R(1) != 0: coefficient sum is not m_i + 1")
    if 1 + q[0] != 0:
        raise VerificationFailure("nonzero constant term in the next decomposition")
    # drop the vanishing y^0 and trailing y^{size+m} coefficients bookkeeping
    out = q[1:]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@functools.lru_cache(maxsize=None)
def basis_decomposition(i: int) -> BasisDecomposition:
    """The nonnegative integers ``a_{i,k}`` for ``i >= 3``."""
    if i < 3:
        raise DomainError(f"basis decomposition is defined for i >= 3, got {i}")
    if i == 3:
        levels = generate(3, 3 + 4)
        a = solve_basis(levels[3].series, 3, 2)
    else:
        prev = basis_decomposition(i - 1)
        m = prev.coefficient(0)
        if prev.size + m > MAX_BASIS_SIZE:
            raise ResourceError(f"decomposition of F_{i} needs {prev.size + m} coefficients")
        a = _next_decomposition(prev.a, m)
    negative = [k for k, v in enumerate(a, start=1) if v < 0]
    if negative:
        raise VerificationFailure(f"negative a_{i},k for k in {negative[:5]}")
    return BasisDecomposition(i, a)


class InterpolatingPolynomial:
    """``f_i(t) = sum_k a_{i,k} C(t+k-1, k-1)``, so that ``f_i(j) = m_{i,j}`` for ``j >= 1``."""

    def __init__(self, decomposition: BasisDecomposition):
        self.decomposition = decomposition

    @property
    def degree(self) -> int:
        a = self.decomposition.a
        return max((k - 1 for k, v in enumerate(a, start=1) if v), default=0)

    def __call__(self, t: Number) -> Fraction:
        t = Fraction(t)
        total = Fraction(0)
        c = Fraction(1)
        for k, a in enumerate(self.decomposition.a, start=1):
            if k > 1:
                c = c * (t + k - 1) / (k - 1)
            total += a * c
        return total

    def upper_binomial_form(self, t: Number) -> Fraction:
        """``sum_k a_{i,k} C(t+k-1, k)``, the variant whose lower index is ``k``."""
        t = Fraction(t)
        total = Fraction(0)
        c = Fraction(1)
        for k, a in enumerate(self.decomposition.a, start=1):
            c = c * (t + k - 1) / k
            total += a * c
        return total

    def coefficients(self) -> List[Fraction]:
        """Monomial coefficients, constant term first.  Quadratic in the basis size."""
        basis = [Fraction(1)]
        total = [Fraction(0)]
        for k, a in enumerate(self.decomposition.a, start=1):
            if k > 1:
                # multiply C(t+k-2, k-2) by (t + k - 1) / (k - 1)
                nxt = [Fraction(0)] * (len(basis) + 1)
                for e, c in enumerate(basis):
                    nxt[e] += c * (k - 1)
                    nxt[e + 1] += c
                basis = [c / (k - 1) for c in nxt]
            if a:
                if len(total) < len(basis):
                    total += [Fraction(0)] * (len(basis) - len(total))
                for e, c in enumerate(basis):
                    total[e] += a * c
        while len(total) > 1 and total[-1] == 0:
            total.pop()
        return total


def interpolating_polynomial(i: int) -> InterpolatingPolynomial:
    return InterpolatingPolynomial(basis_decomposition(i))
