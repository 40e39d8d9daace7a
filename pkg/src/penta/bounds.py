"""The numeric bound functions r0, n0, r(d), n(d, r) and the m-table.

Along the chain ``d = d^(0) > d^(1) > ... > empty`` the recursions

    r(d)    = max{ r0(d), r(d') + 1 },           r(empty) = -2
    n(d, r) = max{ n0(d, r), n(d', r - 1) + 1 }  (outside the base cases)

unroll to a maximum over chain positions, so both are evaluated by a
single forward pass with constant memory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .arith import binomial
from .errors import DomainError, ResourceError
from .multidegree import (
    MultiDegree,
    MultiplicitySequence,
    iter_chain,
    max_chain_from_env,
)
from .series import TruncatedSeries, advance

Degrees = Union[MultiDegree, MultiplicitySequence]


def _mu(d: Degrees) -> MultiplicitySequence:
    return d if isinstance(d, MultiplicitySequence) else d.multiplicity()


def r0(d: Degrees) -> int:
    """``sum (d - 1) - 1``; -1 on the empty multi-degree."""
    mu = _mu(d)
    return sum(m * (k - 1) for k, m in enumerate(mu.mu, start=1)) - 1


def n0(d: Degrees, r: int) -> Fraction:
    """``r + (1/r) sum [C(d_i + r, r) - 1]`` for ``r >= 1``."""
    if r < 1:
        raise DomainError(f"n0 is defined for r >= 1, got r = {r}")
    mu = _mu(d)
    total = sum(m * (math.comb(k + r, k) - 1) for k, m in enumerate(mu.mu, start=1) if m)
    return r + Fraction(total, r)


def generic_ci_margin(d: Degrees, r: int) -> Fraction:
    """``n0(d, r) - (2r - 1 + #d_1)``, nonnegative unless ``d = (1, ..., 1, 2)``."""
    mu = _mu(d)
    pointed = sum(m * k for k, m in enumerate(mu.mu, start=1))
    return n0(mu, r) - (2 * r - 1 + pointed)


def is_linear(mu: MultiplicitySequence) -> bool:
    """``1^c`` (including the empty multi-degree)."""
    return mu.max_degree <= 1


def is_quadric(mu: MultiplicitySequence) -> bool:
    """``1^{c-1} 2``."""
    return mu.max_degree == 2 and mu[2] == 1


def base_value(mu: MultiplicitySequence, r: int) -> Optional[Fraction]:
    """Value of ``n(mu, r)`` when a base case applies, else ``None``.

    The rules for ``r in {-1, 0}`` take precedence; they agree with the
    closed forms for ``1^c`` and ``1^{c-1}2`` wherever both apply.
    """
    if r == -1:
        return Fraction(mu.count - 1)
    if r == 0:
        return Fraction(sum(m * k for k, m in enumerate(mu.mu, start=1)))
    if is_linear(mu):
        return Fraction(r + mu.count)
    if is_quadric(mu):
        return Fraction(2 * r + mu.count + 1)
    return None


def base_case_conflicts(c_max: int = 6) -> List[Tuple[str, int, Fraction, Fraction]]:
    """Overlapping base cases that disagree; empty when the rules are consistent."""
    conflicts = []
    for c in range(0, c_max + 1):
        shapes = [("1^c", MultiplicitySequence((c,)), lambda r, c=c: r + c)]
        if c >= 1:
            shapes.append(("1^{c-1}2", MultiplicitySequence((c - 1, 1)), lambda r, c=c: 2 * r + c + 1))
        for name, mu, closed in shapes:
            for r in (-1, 0):
                rule = base_value(mu, r)
                if rule != closed(r):
                    conflicts.append((name, c, Fraction(closed(r)), rule))
    return conflicts


def _check_cap(steps: int, cap: int, d) -> None:
    if steps >= cap:
        raise ResourceError(f"chain below {d} exceeds the cap of {cap} elements")


def r_bound_walk(d: Degrees, max_chain: Optional[int] = None) -> int:
    """``r(d)`` by walking every element of the chain."""
    cap = max_chain_from_env() if max_chain is None else max_chain
    best = None
    for m, mu in enumerate(iter_chain(_mu(d))):
        _check_cap(m, cap, d)
        value = -2 + m if mu.is_empty else r0(mu) + m
        if best is None or value > best:
            best = value
    return best


# ---------------------------------------------------------------------------
# level jumps


def _apply(mu: MultiplicitySequence, k: int) -> MultiplicitySequence:
    """``mu`` after ``k`` transforms, valid while the top degree stays fixed.

    The top degree stays fixed for ``k <= mu_{d_c}`` when ``d_c >= 2``;
    ``k = mu_{d_c}`` lands on the first element of the next level.
    """
    D = mu.max_degree
    F = TruncatedSeries(tuple(mu[D - t] for t in range(D)))
    G = advance(F, 0, k)
    return MultiplicitySequence(tuple(int(G[D - 1 - t]) for t in range(D)))


def _levels(mu: MultiplicitySequence) -> Iterator[Tuple[int, MultiplicitySequence, int]]:
    """Yield ``(position, first element, top multiplicity)`` for each level with ``d_c >= 2``."""
    pos = 0
    while mu.max_degree >= 2:
        top = mu[mu.max_degree]
        yield pos, mu, top
        mu = _apply(mu, top)
        pos += top


@dataclass(frozen=True)
class ChainSummary:
    length: int
    r_value: int
    bottom: MultiplicitySequence  # the last nonempty element, 1^c, or empty


def chain_summary(d: Degrees) -> ChainSummary:
    """Length of ``[empty, d]`` and ``r(d)`` without visiting every element.

    Within a level of top degree ``D`` and top multiplicity ``M`` the
    quantity ``r0(mu^(k)) + k`` changes by
    ``sum_d mu_d C(d-1, 2) - 2D + 4 >= (M - k) C(D-1, 2) - 2D + 4``,
    which is nonnegative for ``k <= M - 1`` when ``D = 2`` or ``D >= 5``
    and for ``k <= M - 2`` when ``D in {3, 4}``.  Hence the maximum over a
    level is attained at ``k = M - 1`` and only those elements, plus the
    tail, need evaluating.
    """
    mu = _mu(d)
    if mu.is_empty:
        return ChainSummary(1, -2, mu)
    best = None
    pos = 0
    for pos, first, top in _levels(mu):
        last = _apply(first, top - 1)
        value = r0(last) + pos + top - 1
        if best is None or value > best:
            best = value
        pos += top
        mu = _apply(first, top)
    # mu now has d_c <= 1, at chain position pos
    if not mu.is_empty:
        value = r0(mu) + pos
        best = value if best is None or value > best else best
        pos += 1
    value = -2 + pos
    best = value if best is None or value > best else best
    return ChainSummary(pos + 1, best, mu)


def chain_length(d: Degrees) -> int:
    return chain_summary(d).length


def r_bound(d: Degrees, method: str = "jump", max_chain: Optional[int] = None) -> int:
    """``r(d)``; ``method="walk"`` visits every chain element (cap applies)."""
    if method == "walk":
        return r_bound_walk(d, max_chain)
    if method == "jump":
        return chain_summary(d).r_value
    raise ValueError(f"unknown method {method!r}")


def n_bound(d: Degrees, r: int, max_chain: Optional[int] = None) -> Fraction:
    """``n(d, r)`` as an exact rational, by one pass down the chain."""
    mu = _mu(d)
    if mu.is_empty:
        return Fraction(r)
    if r < -1:
        raise DomainError(f"n(d, r) needs r >= -1, got {r}")
    cap = max_chain_from_env() if max_chain is None else max_chain
    best = None
    for m, elem in enumerate(iter_chain(mu)):
        _check_cap(m, cap, d)
        s = r - m
        base = base_value(elem, s)
        value = (base if base is not None else n0(elem, s)) + m
        if best is None or value > best:
            best = value
        if base is not None:
            return best
    raise AssertionError("chain ended without reaching a base case")


def ceil_fraction(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


@dataclass(frozen=True)
class BoundReport:
    multidegree: MultiDegree
    r_value: int
    n_value_exact: Fraction
    chain_length: int
    n0_at_r: Optional[Fraction] = None

    @property
    def n_value_integer(self) -> int:
        return ceil_fraction(self.n_value_exact)

    def to_json(self) -> dict:
        def frac(q):
            return None if q is None else str(q)

        return {
            "multidegree": str(self.multidegree),
            "r": str(self.r_value),
            "n": str(self.n_value_integer),
            "n_exact": frac(self.n_value_exact),
            "n0_at_r": frac(self.n0_at_r),
            "chain_length": str(self.chain_length),
        }


def n_of_multidegree(d: MultiDegree, max_chain: Optional[int] = None) -> BoundReport:
    """``n(d) = n(d, r(d))`` via the full recursion, with ``n0(d, r(d))`` alongside."""
    summary = chain_summary(d)
    n_value = n_bound(d, summary.r_value, max_chain)
    n0_value = n0(d, summary.r_value) if summary.r_value >= 1 else None
    return BoundReport(d, summary.r_value, n_value, summary.length, n0_value)


# ---------------------------------------------------------------------------
# the m-table


@dataclass(frozen=True)
class MTable:
    rows: Dict[int, Tuple[int, ...]]
    provenance: str = "recursion"

    def m(self, i: int, j: int = 0) -> int:
        return self.rows[i][j]

    @property
    def i_max(self) -> int:
        return max(self.rows)

    def to_csv(self, i_min: int = 0, i_max: Optional[int] = None, j_max: Optional[int] = None) -> str:
        i_max = self.i_max if i_max is None else i_max
        width = min(len(self.rows[i]) for i in range(i_min, i_max + 1))
        j_max = width - 1 if j_max is None else j_max
        lines = ["i," + ",".join(f"m_i{j}" for j in range(j_max + 1))]
        for i in range(i_min, i_max + 1):
            lines.append(",".join([str(i)] + [str(v) for v in self.rows[i][: j_max + 1]]))
        return "\n".join(lines) + "\n"


def next_row(row: Tuple[int, ...], width: int) -> Tuple[int, ...]:
    """``(m_{i+1,0}, ..., m_{i+1,width-1})`` from ``(m_{i,0}, ..., m_{i,width})``."""
    m = row[0]
    out = [(m * m - m) // 2 + row[1]]
    for j in range(1, width):
        lead = binomial(m + j - 1, j) * (m * m + (j - 1) * m + 2)
        if lead % (j + 2):
            raise AssertionError(f"non-integral leading term at j = {j}")
        value = lead // (j + 2)
        value += sum(binomial(m + j - k - 1, j - k) * row[k + 1] for k in range(j + 1))
        out.append(value)
    return tuple(out)


def m_table(i_max: int, j_max: int) -> MTable:
    """Rows ``0 .. i_max`` with columns ``0 .. j_max`` from the closed recursion."""
    if i_max < 0 or j_max < 0:
        raise DomainError("i_max and j_max must be nonnegative")
    width = j_max + i_max + 1
    row = (1,) + (0,) * (width - 1)
    rows = {0: row[: j_max + 1]}
    for i in range(i_max):
        width -= 1
        row = next_row(row, width)
        rows[i + 1] = row[: j_max + 1]
    return MTable(rows, "recursion")


def m_values(i_max: int) -> List[int]:
    """``[m_0, ..., m_{i_max}]``."""
    table = m_table(i_max, 0)
    return [table.m(i) for i in range(i_max + 1)]


def r_of_degree(d: int) -> int:
    """``r(d) = m_0 + ... + m_{d-2}`` for ``d >= 3``."""
    if d < 3:
        raise DomainError(f"the closed form holds for d >= 3, got {d}")
    return sum(m_values(d - 2))


def n_of_degree(d: int) -> BoundReport:
    """``n(d) = ceil(n0(d, r(d)))`` for ``d >= 3``."""
    r = r_of_degree(d)
    value = n0(MultiplicitySequence.pure(d), r)
    return BoundReport(MultiDegree.of(d), r, value, r + 2, value)


# ---------------------------------------------------------------------------
# criteria for n0(mu', r-1) + 1 <= n0(mu, r)


def diamond_sides(mu: MultiplicitySequence, r: int) -> Tuple[int, int]:
    D = mu.max_degree
    lhs = sum(m * (math.comb(k + r, r) - r * k - 1) for k, m in enumerate(mu.mu, start=1))
    rhs = r * (binomial(D + r - 1, r - 1) + binomial(D + r - 2, r - 1) - 2)
    return lhs, rhs


def bigger_n_criteria(mu: MultiplicitySequence, r: int) -> Tuple[bool, bool, bool]:
    """``(large d_c criterion, small d_c criterion, the inequality itself)``."""
    if r < 2:
        raise DomainError(f"the criteria need r >= 2, got {r}")
    if mu.is_empty:
        raise DomainError("the criteria need a nonempty multiplicity sequence")
    D = mu.max_degree
    large = max(mu.mu) <= r - 2 * D - 1
    small = False
    if D <= 4:
        m2, m3, m4 = mu[2], mu[3], mu[4]
        poly = (
            -(12 * m2 + 28 * m3 + 46 * m4)
            + (12 * m2 + 24 * m3 + 35 * m4) * r
            + (4 * m3 + 10 * m4) * r**2
            + m4 * r**3
        )
        small = Fraction(math.factorial(D) * poly, 24) <= r**D
    lhs, rhs = diamond_sides(mu, r)
    return large, small, lhs <= rhs
