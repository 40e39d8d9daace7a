"""Named machine checks of the inequalities behind the dimension bounds.

Every check returns a :class:`CheckReport`.  Integer and rational
comparisons are exact; anything involving square roots, logarithms or
fractional powers goes through :func:`penta.arith.certify`, which retries at
doubled precision before giving up as INCONCLUSIVE.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .arith import (
    DEFAULT_PRECISION,
    CertifiedInterval,
    Verdict,
    binomial,
    certify,
    interval_log,
    interval_pow,
)
from .bounds import (
    base_value,
    bigger_n_criteria,
    chain_summary,
    diamond_sides,
    generic_ci_margin,
    is_linear,
    is_quadric,
    m_table,
    n0,
    n_bound,
    n_of_degree,
    r0,
    r_bound_walk,
    r_of_degree,
)
from .multidegree import (
    MultiDegree,
    MultiplicitySequence,
    derived_multiplicity,
    iter_chain,
    max_chain_from_env,
    multidegrees_up_to,
)
from .errors import ResourceError
from .series import basis_decomposition, generate, interpolating_polynomial


def format_number(q, digits: int = 12) -> str:
    """Short decimal rendering of an exact rational, for reports."""
    q = Fraction(q)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


@dataclass
class CheckReport:
    check_id: str
    scope: str
    status: Verdict
    witnesses: List[str] = field(default_factory=list)
    precision_used: int = 0
    margin: Optional[str] = None
    instances: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status is Verdict.VERIFIED

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "scope": self.scope,
            "status": self.status.value,
            "witnesses": list(self.witnesses),
            "precision_used": self.precision_used,
            "margin": self.margin,
            "instances": self.instances,
            "notes": list(self.notes),
        }

    def summary_line(self) -> str:
        margin = "-" if self.margin is None else self.margin
        return f"{self.check_id:<22} {self.status.value:<12} margin={margin:<16} [{self.scope}]"


class _Recorder:
    """Accumulates outcomes of individual comparisons into one report."""

    def __init__(self, check_id: str, scope: str, precision: int = DEFAULT_PRECISION):
        self.check_id = check_id
        self.scope = scope
        self.precision = precision
        self.failures: List[str] = []
        self.inconclusive: List[str] = []
        self.notes: List[str] = []
        self.precision_used = 0
        self.instances = 0
        self.tightest: Optional[Tuple[Fraction, str]] = None

    def exact(self, holds: bool, label: str, margin=None, detail=None) -> bool:
        self.instances += 1
        if not holds:
            self.failures.append(label if detail is None else f"{label}: {detail}")
        elif margin is not None:
            self._margin(Fraction(margin), label)
        return holds

    def certified(self, build, label: str, strict: bool = True, relative: bool = False) -> bool:
        self.instances += 1
        cert = certify(build, strict=strict, precision=self.precision)
        self.precision_used = max(self.precision_used, cert.precision)
        if cert.verdict is Verdict.FAILED:
            self.failures.append(f"{label}: lhs in [{format_number(cert.lhs.lo)}, {format_number(cert.lhs.hi)}], "
                                 f"rhs in [{format_number(cert.rhs.lo)}, {format_number(cert.rhs.hi)}]")
        elif cert.verdict is Verdict.INCONCLUSIVE:
            self.inconclusive.append(f"{label} at {cert.precision} bits")
        else:
            margin = cert.margin / cert.rhs.lo if relative and cert.rhs.lo > 0 else cert.margin
            self._margin(margin, label)
        return cert.verdict is Verdict.VERIFIED

    def _margin(self, value: Fraction, label: str) -> None:
        if self.tightest is None or value < self.tightest[0]:
            self.tightest = (value, label)

    def report(self) -> CheckReport:
        if self.failures:
            status, witnesses = Verdict.FAILED, self.failures
        elif self.inconclusive:
            status, witnesses = Verdict.INCONCLUSIVE, self.inconclusive
        else:
            status = Verdict.VERIFIED
            witnesses = [] if self.tightest is None else [f"tightest: {self.tightest[1]}"]
        margin = None if self.tightest is None else format_number(self.tightest[0], 6)
        return CheckReport(self.check_id, self.scope, status, list(witnesses),
                           self.precision_used, margin, self.instances, self.notes)


def _digits_match(interval: CertifiedInterval, printed: str) -> bool:
    """``interval`` lies in ``[printed, printed + ulp)``, the truncated decimal."""
    value = Fraction(printed)
    ulp = Fraction(1, 10 ** len(printed.split(".")[1]))
    return value <= interval.lo and interval.hi < value + ulp


def _sequences(max_parts: int, max_entry: int, max_dc: int) -> Iterator[MultiplicitySequence]:
    """Nonempty sequences with last entry nonzero and at most ``max_parts`` nonzero entries."""
    for dc in range(1, max_dc + 1):
        for head in itertools.product(range(max_entry + 1), repeat=dc - 1):
            if sum(1 for m in head if m) + 1 > max_parts:
                continue
            for top in range(1, max_entry + 1):
                yield MultiplicitySequence(head + (top,))


# ---------------------------------------------------------------------------
# r along the chain


def check_bigger_r(max_parts: int = 4, max_entry: int = 4, max_dc: int = 6) -> CheckReport:
    """``r0(mu') + 1 < r0(mu)`` exactly on ``(a, b, 1)`` and ``(a, b, 0, 1)``."""
    rec = _Recorder("bigger_r", f"parts<={max_parts}, entries<={max_entry}, d_c<={max_dc}")
    families = {3: 0, 4: 0}
    for mu in _sequences(max_parts, max_entry, max_dc):
        derived = derived_multiplicity(mu)
        holds = r0(derived) + 1 < r0(mu)
        exceptional = (mu.max_degree == 3 and mu[3] == 1) or (mu.max_degree == 4 and mu[3] == 0 and mu[4] == 1)
        if exceptional:
            families[mu.max_degree] += 1
        rec.exact(holds == exceptional, f"mu={mu}", detail=f"inequality {'holds' if holds else 'fails'}")
        if mu.max_degree >= 2:
            D = mu.max_degree
            predicted = r0(mu) + sum(m * binomial(d - 1, 2) for d, m in enumerate(mu.mu, start=1)) - 2 * D + 3
            rec.exact(r0(derived) == predicted, f"mu={mu} identity", detail=f"r0(mu') = {r0(derived)}, formula {predicted}")
    rec.exact(min(families.values()) >= 2, "coverage of exceptional families", detail=str(families))
    rec.notes.append(f"exceptional instances: (a,b,1) x{families[3]}, (a,b,0,1) x{families[4]}")
    return rec.report()


def check_compute_r(max_total: int = 14, walk_cap: int = 10**6, d_max: int = 14) -> CheckReport:
    """``r(mu) = #chain - 2`` for ``d_c >= 3``; ``mu_2 - 1`` for ``d_c <= 2``; the single-degree sum."""
    rec = _Recorder("compute_r", f"sum(d)<={max_total}, walk when chain<={walk_cap}, single d<={d_max}")
    walked = 0
    for d in multidegrees_up_to(max_total):
        summary = chain_summary(d)
        if summary.length <= walk_cap:
            walked += 1
            walk = r_bound_walk(d, max_chain=walk_cap + 1)
            rec.exact(walk == summary.r_value, f"{d} walk vs jump", detail=f"{walk} vs {summary.r_value}")
        if d.max_degree >= 3:
            rec.exact(summary.r_value == summary.length - 2, f"{d} r vs chain", detail=f"r = {summary.r_value}, chain {summary.length}")
    for a in range(0, 9):
        for b in range(0, 9):
            mu = MultiplicitySequence((a, b))
            if mu.is_empty:
                continue
            summary = chain_summary(mu)
            rec.exact(summary.r_value == b - 1, f"mu={mu} r = mu_2 - 1", detail=f"r = {summary.r_value}")
            offset = 2 if mu.mu == (0, 1) else 3
            rec.exact(summary.r_value == summary.length - offset, f"mu={mu} chain length", detail=str(summary.length))
    for d in range(3, d_max + 1):
        closed = r_of_degree(d)
        rec.exact(closed == chain_summary(MultiDegree.of(d)).r_value, f"d={d}: closed form vs chain")
        if closed + 2 <= walk_cap:
            rec.exact(closed == r_bound_walk(MultiDegree.of(d), max_chain=walk_cap + 1), f"d={d}: closed form vs walk")
    rec.notes.append(f"{walked} multi-degrees cross-checked against the element-by-element walk")
    return rec.report()


def check_mij_and_mu(d_max: int = 9) -> CheckReport:
    """The chain of a single degree passes through the rows of the m-table."""
    rec = _Recorder("mij_and_mu", f"3<=d<={d_max}")
    table = m_table(d_max - 1, d_max)
    for d in range(3, d_max + 1):
        checkpoints = {}
        position = 0
        for i in range(d):
            checkpoints[position] = i
            position += table.m(i)
        last = position - table.m(d - 1) + 1  # the empty sequence follows (m_{d-1})
        for step, mu in enumerate(iter_chain(MultiplicitySequence.pure(d))):
            if step in checkpoints:
                i = checkpoints[step]
                expected = tuple(table.m(i, d - i - k) for k in range(1, d - i + 1))
                got = tuple(mu[k] for k in range(1, d - i + 1))
                rec.exact(got == expected and mu.max_degree <= d - i, f"d={d}, i={i}", detail=f"{mu} vs {expected}")
            if step > last:
                break
        rec.exact(step == last and mu.is_empty, f"d={d} chain length", detail=f"{step + 1} elements, expected {last + 1}")
    return rec.report()


# ---------------------------------------------------------------------------
# growth of m_i


def check_lower_bound(i_max: int = 12) -> CheckReport:
    """``m_i^2 < 2 m_{i+1}`` and ``2^(1 + 2^(i-4)) < m_i``."""
    rec = _Recorder("lower_bound", f"1<=i<{i_max}; 5<=i<={i_max}")
    table = m_table(i_max, 1)
    for i in range(1, i_max):
        mi, nxt = table.m(i), table.m(i + 1)
        rec.exact(mi * mi < 2 * nxt, f"m_{i}^2 < 2m_{i + 1}", Fraction(2 * nxt - mi * mi, 2 * nxt))
    for i in range(5, i_max + 1):
        rec.exact(2 ** (1 + 2 ** (i - 4)) < table.m(i), f"2^(1+2^{i - 4}) < m_{i}")
        rec.exact(table.m(i, 1) >= table.m(i), f"m_({i},1) >= m_{i}")
    return rec.report()


def _b(m: int, j: int) -> Fraction:
    return Fraction(binomial(m + j - 1, j), m**j)


def c_coefficients(i_max: int, j_max: int, precision: int = DEFAULT_PRECISION) -> Dict[Tuple[int, int], CertifiedInterval]:
    """Enclosures of ``c_{i,j}`` for ``7 <= i <= i_max`` and ``1 <= j <= j_max``."""
    width = j_max + (i_max - 7) + 1
    ms = m_values_upto(i_max)
    c = {(7, j): CertifiedInterval.exact(1, precision) for j in range(1, width + 1)}
    for i in range(7, i_max):
        width -= 1
        nxt = ms[i + 1]
        two_m = CertifiedInterval.exact(2 * nxt, precision)
        inv_sqrt = interval_pow(two_m, Fraction(-1, 2))
        inv_fourth = interval_pow(two_m, Fraction(-1, 4))
        for j in range(1, width + 1):
            head = Fraction(1) + Fraction(1, nxt)
            bracket = _b(ms[i], j) / (j + 2) * (head + (j - 1) * inv_sqrt)
            for k in range(j + 1):
                bracket = bracket + _b(ms[i], j - k) * c[(i, k + 1)] * inv_fourth ** (k + 1)
            c[(i + 1, j)] = interval_pow(CertifiedInterval.exact(2, precision), 1 + Fraction(j, 2)) * bracket
    return {key: value for key, value in c.items() if key[1] <= j_max}


def m_values_upto(i_max: int) -> List[int]:
    table = m_table(i_max, 0)
    return [table.m(i) for i in range(i_max + 1)]


def _star_sides(j: int, m7: int, m8: int, precision: int) -> Tuple[CertifiedInterval, CertifiedInterval]:
    two_m8 = CertifiedInterval.exact(2 * m8, precision)
    lhs = _b(m7, j) / (j + 2) * ((1 + Fraction(1, m8)) + (j - 1) * interval_pow(two_m8, Fraction(-1, 2)))
    for k in range(j + 1):
        lhs = lhs + _b(m7, j - k) * interval_pow(two_m8, Fraction(-(k + 1), 4))
    rhs = interval_pow(CertifiedInterval.exact(2, precision), Fraction(-(j + 2), 2))
    return lhs, rhs


def tail_bracket() -> Fraction:
    """The rational bound on the bracket for ``j >= 3`` in the ``c_{8,j}`` argument."""
    return (
        Fraction(1, 5) * (1 + Fraction(2, 4**6) + Fraction(1, 4**12))
        + Fraction(1, 60)
        + Fraction(2, 3) / 4**5
        + Fraction(1, 4**8)
        + Fraction(1, 4**11)
    )


def log_anchor(precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """``(1/2) log m_7 - sum_{l=0}^{119} 1/(2 + l)``."""
    m7 = m_values_upto(7)[7]
    harmonic = sum(Fraction(1, 2 + l) for l in range(120))
    return interval_log(CertifiedInterval.exact(m7, precision)) * Fraction(1, 2) - harmonic


def check_bounds_mij(i_max: int = 10, j_max: int = 6, precision: int = DEFAULT_PRECISION) -> CheckReport:
    """``m_{i,j} <= c_{i,j} m_i^(1+j/2)`` with ``c_{i,j} <= 1``, plus the numeric anchors at ``i = 7, 8``."""
    rec = _Recorder("bounds_mij", f"7<=i<={i_max}, 1<=j<={j_max}", precision)
    table = m_table(max(i_max, 8), max(j_max, 4))
    ms = [table.m(i) for i in range(max(i_max, 8) + 1)]
    m7, m8 = ms[7], ms[8]

    # anchors at i = 7
    rec.certified(lambda p: (table.m(7, 1), interval_pow(CertifiedInterval.exact(m7, p), Fraction(3, 2))),
                  "m_(7,1) < m_7^(3/2)")
    rec.exact(_digits_match(interval_pow(CertifiedInterval.exact(m7), Fraction(3, 2)), "507087.888"),
              "m_7^(3/2) = 507087.888...")
    rec.exact(table.m(7, 2) == 21029990 and m7**2 == 40436881 and table.m(7, 2) < m7**2, "m_(7,2) < m_7^2")
    rec.exact(sum(ms[:7]) == 120, "m_0 + ... + m_6 = 120")
    rec.certified(lambda p: (0, log_anchor(p)), "(1/2) log m_7 - H > 0")
    rec.exact(_digits_match(log_anchor(precision), "0.00168"), "log anchor = 0.00168...")

    # anchors at i = 8
    rec.exact(m8 > 4**12, "m_8 > 4^12", Fraction(m8 - 4**12))
    for j, printed, bound in ((2, "0.50007", Fraction(2, 3)), (3, "0.16674", Fraction(1, 4)), (4, "0.04170", Fraction(1, 16))):
        b = _b(m7, j)
        rec.exact(b < bound, f"b_(7,{j}) < {bound}", bound - b)
        rec.exact(_digits_match(CertifiedInterval.exact(b), printed), f"b_(7,{j}) = {printed}...")
    rec.exact(_b(m7, 0) == 1 and _b(m7, 1) == 1, "b_(7,0) = b_(7,1) = 1")
    for j in range(5, j_max + 1):
        rec.exact(_b(m7, j) < Fraction(1, 4 ** (j - 2)), f"b_(7,{j}) < 4^-{j - 2}")
    # the printed comparisons use 2^(-3/2) and 2^(-5/2); the latter is stronger
    # than the j = 2 right side 2^(-2), so both are certified
    for j, printed_lhs, printed_rhs, exponent in ((1, "0.345955", "0.353553", 3), (2, "0.131430", "0.176776", 5)):
        rec.certified(lambda p, j=j: _star_sides(j, m7, m8, p), f"star inequality at j={j}")
        two = lambda p: CertifiedInterval.exact(2, p)  # noqa: E731
        rec.certified(lambda p, j=j, e=exponent: (_star_sides(j, m7, m8, p)[0], interval_pow(two(p), Fraction(-e, 2))),
                      f"star left side at j={j} < 2^(-{exponent}/2)")
        lhs = _star_sides(j, m7, m8, precision)[0]
        rhs = interval_pow(two(precision), Fraction(-exponent, 2))
        rec.exact(_digits_match(lhs, printed_lhs) and _digits_match(rhs, printed_rhs),
                  f"star sides at j={j} = {printed_lhs}..., {printed_rhs}...")
    bracket = tail_bracket()
    rec.exact(bracket < Fraction(1, 4), "tail bracket < 1/4", Fraction(1, 4) - bracket)
    rec.exact(_digits_match(CertifiedInterval.exact(bracket), "0.217430"), "tail bracket = 0.217430...")
    rec.exact(sum(Fraction(1, 4 ** (2 * k + 3)) for k in range(j_max)) <= Fraction(1, 60), "geometric tail <= 1/60")
    for j in range(3, j_max + 1):
        # 4^-(j-1) < 2^-((j+2)/2), squared
        rec.exact(Fraction(1, 16 ** (j - 1)) < Fraction(1, 2 ** (j + 2)), f"4^-{j - 1} < 2^-({j}+2)/2")
        rec.certified(lambda p, j=j: _star_sides(j, m7, m8, p), f"star inequality at j={j}")

    # the inequality itself
    c = c_coefficients(i_max, j_max, precision)
    for i in range(7, i_max + 1):
        for j in range(1, j_max + 1):
            cij = c[(i, j)]
            rec.certified(lambda p, i=i, j=j, cij=cij: (
                table.m(i, j), cij * interval_pow(CertifiedInterval.exact(ms[i], p), 1 + Fraction(j, 2))),
                f"m_({i},{j}) <= c_({i},{j}) m_{i}^(1+{j}/2)", strict=False, relative=True)
            rec.certified(lambda p, cij=cij: (cij, 1), f"c_({i},{j}) <= 1", strict=False)
    return rec.report()


def check_inductive(i_max: int = 10, j_max: int = 6, precision: int = DEFAULT_PRECISION) -> CheckReport:
    """Instances ``c_{i+1,j} <= c_{i,j}`` of the monotonicity driving the induction."""
    rec = _Recorder("inductive", f"7<=i<{i_max}, 1<=j<={j_max}", precision)
    c = c_coefficients(i_max, j_max, precision)
    for i in range(7, i_max):
        for j in range(1, j_max + 1):
            rec.certified(lambda p, i=i, j=j: (c[(i + 1, j)], c[(i, j)]), f"c_({i + 1},{j}) <= c_({i},{j})", strict=False)
    rec.notes.append("finite instances only; the implication for all j is not finitely checkable")
    return rec.report()


def check_bounds_m_and_sum(i_max: int = 12, precision: int = DEFAULT_PRECISION) -> CheckReport:
    """``m_{i+1} < (1/2 + m_i^(-1/2)) m_i^2``, the partial sums, and the chained bound."""
    rec = _Recorder("bounds_m_and_sum", f"7<=i<{i_max}; 6<=i<={i_max}; 8<=i<={i_max}", precision)
    ms = m_values_upto(i_max)
    for i in range(7, i_max):
        mi = ms[i]
        rec.certified(lambda p, mi=mi, nxt=ms[i + 1]: (
            nxt, (Fraction(1, 2) + interval_pow(CertifiedInterval.exact(mi, p), Fraction(-1, 2))) * mi**2),
            f"m_{i + 1} < (1/2 + m_{i}^(-1/2)) m_{i}^2", relative=True)
        # m_i^(-1/2) < 2^(-2^(i-5))  <=>  m_i > 2^(2^(i-4))
        rec.exact(mi > 2 ** (2 ** (i - 4)), f"m_{i}^(-1/2) < 2^-2^{i - 5}")
    for i in range(6, i_max + 1):
        total = sum(ms[: i + 1])
        bound = 2 ** (2 ** (i - 3))
        rec.exact(total <= bound, f"m_0 + ... + m_{i} <= 2^2^{i - 3}", Fraction(bound - total, bound))
    rec.exact(ms[7] < 2**13, "m_7 < 2^13")
    for i in range(8, i_max + 1):
        rec.exact(ms[i] < 2 ** (2 ** (i - 3) - 2 ** (i - 7)), f"m_{i} < 2^(2^{i - 3} - 2^{i - 7})")
    return rec.report()


def check_positive_expression(i_max: int = 8, j_max: int = 6) -> CheckReport:
    """Nonnegative basis coefficients summing to ``m_i + 1``, and the interpolant through ``m_{i,j}``."""
    rec = _Recorder("positive_expression", f"3<=i<={i_max}, 1<=j<={j_max}")
    table = m_table(i_max, j_max)
    printed = {3: (1, 1), 4: (1, 2, 1), 5: (0, 1, 3, 4, 3, 1)}
    levels = generate(i_max, i_max + j_max + 2)
    for i in range(3, i_max + 1):
        dec = basis_decomposition(i)
        if i in printed:
            rec.exact(tuple(dec.a) == printed[i], f"a_({i},k) = {tuple(dec.a)}")
        rec.exact(all(a >= 0 for a in dec.a), f"a_({i},k) >= 0")
        rec.exact(sum(dec.a) == table.m(i) + 1, f"sum_k a_({i},k) = m_{i} + 1", detail=str(sum(dec.a)))
        rec.exact(dec.size == sum(table.m(k) for k in range(i)), f"i={i} basis size", detail=str(dec.size))
        for j in range(j_max + 1):
            rec.exact(dec.coefficient(j) == levels[i].row[j], f"i={i}, j={j}: expansion vs series")
        f = interpolating_polynomial(i)
        for j in range(1, j_max + 1):
            rec.exact(f(j) == table.m(i, j), f"f_{i}({j}) = m_({i},{j})", detail=str(f(j)))
    f3 = interpolating_polynomial(3)
    rec.notes.append(f"with C(t+k-1, k) in place of C(t+k-1, k-1), f_3(1) would be {f3.upper_binomial_form(1)} "
                     f"instead of m_(3,1) = {table.m(3, 1)}")
    return rec.report()


# ---------------------------------------------------------------------------
# n along the chain


def check_bigger_n(max_parts: int = 4, max_entry: int = 4, max_dc: int = 6, r_max: int = 30) -> CheckReport:
    """Either criterion implies the reduced inequality, which matches ``n0(mu', r-1) + 1 <= n0(mu, r)``."""
    rec = _Recorder("bigger_n", f"parts<={max_parts}, entries<={max_entry}, d_c<={max_dc}, 2<=r<={r_max}")
    fired = [0, 0]
    for mu in _sequences(max_parts, max_entry, max_dc):
        derived = derived_multiplicity(mu)
        for r in range(2, r_max + 1):
            large, small, diamond = bigger_n_criteria(mu, r)
            fired[0] += large
            fired[1] += small
            rec.exact(diamond or not (large or small), f"mu={mu}, r={r} soundness", detail="criterion true, inequality false")
            if mu.max_degree >= 2:
                direct = n0(derived, r - 1) + 1 <= n0(mu, r)
                rec.exact(direct == diamond, f"mu={mu}, r={r} reduction", detail="reduced form disagrees with n0 comparison")
    rec.notes.append(f"large-degree criterion fired {fired[0]} times, small-degree criterion {fired[1]} times")
    return rec.report()


def check_generic_ci(max_total: int = 12, r_max: int = 20) -> CheckReport:
    """``n0(d, r) >= 2r - 1 + #d_1`` away from the all-linear and ``1^(c-1) 2`` shapes."""
    rec = _Recorder("generic_ci", f"sum(d)<={max_total}, 1<=r<={r_max}")
    excluded_failures = 0
    for d in multidegrees_up_to(max_total):
        mu = d.multiplicity()
        for r in range(1, r_max + 1):
            margin = generic_ci_margin(mu, r)
            if is_linear(mu) or is_quadric(mu):
                excluded_failures += margin < 0
                continue
            rec.exact(margin >= 0, f"{d}, r={r}", margin, detail=f"margin {margin}")
    rec.notes.append(f"{excluded_failures} negative margins on the excluded shapes 1^c and 1^(c-1)2")
    return rec.report()


def _local_n(mu: MultiplicitySequence, r: int) -> Fraction:
    base = base_value(mu, r)
    return base if base is not None else n0(mu, r)


def check_stepwise_n(degrees: Sequence[int] = (8, 9), collapse_max: int = 9,
                     max_chain: Optional[int] = None) -> CheckReport:
    """Each chain step of a single degree lowers ``n0(mu^(m), r - m) + m``."""
    cap = max_chain_from_env() if max_chain is None else max_chain
    scope = f"d in {list(degrees)}; collapse for 3<=d<={collapse_max}"
    rec = _Recorder("stepwise_n", scope)
    for d in degrees:
        r = r_of_degree(d)
        if r + 2 > cap:
            raise ResourceError(f"chain of degree {d} has {r + 2} elements, above the cap of {cap}")
        previous = None
        steps = 0
        twos = 0
        for m, mu in enumerate(iter_chain(MultiplicitySequence.pure(d))):
            value = _local_n(mu, r - m) + m
            if previous is not None:
                steps += 1
                rec.exact(value <= previous[1], f"d={d}, m={m}", previous[1] - value, detail=f"{value} > {previous[1]}")
                if previous[0].max_degree == 2 and mu.max_degree == 2:
                    twos += previous[1] - value == 2
            previous = (mu, value)
        rec.exact(steps == r + 1, f"d={d} step count", detail=f"{steps}, expected {r + 1}")
        rec.notes.append(f"d={d}: {steps} steps; {twos} steps inside d_c = 2 drop by exactly 2")
    for d in range(3, collapse_max + 1):
        r = r_of_degree(d)
        recursive = n_bound(MultiDegree.of(d), r, max_chain=cap)
        closed = n0(MultiplicitySequence.pure(d), r)
        rec.exact(recursive == closed, f"n({d}, r({d})) = n0({d}, r({d}))", detail=f"{recursive} vs {closed}")
        rec.exact(math.ceil(recursive) == n_of_degree(d).n_value_integer, f"d={d} ceiling")
    return rec.report()


def check_compute_n_segments(d_min: int = 8, d_max: int = 14) -> CheckReport:
    """The inequalities that let the large and small criteria cover the chain of a single degree."""
    rec = _Recorder("compute_n_segments", f"{d_min}<=d<={d_max}")
    table = m_table(d_max - 2, 3)
    m = lambda i, j=0: table.m(i, j)  # noqa: E731
    for d in range(d_min, d_max + 1):
        lhs = m(d - 4, 3)
        rhs = m(d - 4) + m(d - 3) + m(d - 2) - 2 * d - 1
        rec.exact(lhs <= rhs, f"d={d}: m_(d-4,3) <= m_(d-4) + m_(d-3) + m_(d-2) - 2d - 1", Fraction(rhs - lhs, rhs))
        # s >= 2 x^(1/k)  <=>  s^k >= 2^k x
        s = m(d - 3) + m(d - 2)
        rec.exact(s >= 2 * m(d - 4) and s**2 >= 4 * 14 * m(d - 3) and s**3 >= 8 * 71 * m(d - 3, 1)
                  and s**4 >= 16 * 43 * m(d - 3, 1), f"d={d}: d_c = 4 root bound")
        t = m(d - 2)
        rec.exact(t >= 2 * m(d - 3) and t**2 >= 4 * 6 * t and t**3 >= 8 * 5 * t, f"d={d}: d_c = 3 root bound")
    return rec.report()


def check_main_estimate(d_max: int = 14) -> CheckReport:
    """``n(d) <= 2^((d-1) 2^(d-5))`` for ``d >= 6``, and ``n(10) < 2^197``."""
    rec = _Recorder("main_estimate", f"6<=d<={d_max}")
    for d in range(6, d_max + 1):
        report = n_of_degree(d)
        n = report.n_value_integer
        exponent = (d - 1) * 2 ** (d - 5)
        rec.exact(n <= 2**exponent, f"n({d}) <= 2^{exponent}", exponent - n.bit_length())
        if d >= 8:
            rec.exact(report.n_value_exact <= report.r_value ** (d - 1), f"n({d}) <= r({d})^{d - 1}")
        if d == 10:
            rec.exact(n < 2**197, "n(10) < 2^197")
            rec.exact(n > 2**196, "n(10) > 2^196")
    return rec.report()


CHECKS: Dict[str, Callable[..., CheckReport]] = {
    "bigger_r": check_bigger_r,
    "compute_r": check_compute_r,
    "mij_and_mu": check_mij_and_mu,
    "lower_bound": check_lower_bound,
    "positive_expression": check_positive_expression,
    "bounds_mij": check_bounds_mij,
    "inductive": check_inductive,
    "bounds_m_and_sum": check_bounds_m_and_sum,
    "bigger_n": check_bigger_n,
    "generic_ci": check_generic_ci,
    "stepwise_n": check_stepwise_n,
    "compute_n_segments": check_compute_n_segments,
    "main_estimate": check_main_estimate,
}


def run_check(check_id: str, **scope) -> CheckReport:
    try:
        check = CHECKS[check_id]
    except KeyError:
        raise KeyError(f"unknown check {check_id!r}; choose from {', '.join(CHECKS)}") from None
    return check(**scope)


def run_all(ids: Optional[Iterable[str]] = None) -> List[CheckReport]:
    return [run_check(check_id) for check_id in (ids or CHECKS)]
