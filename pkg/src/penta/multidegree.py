"""Multi-degrees, multiplicity sequences, and the penultimate-tangent transform.

A multi-degree is a sorted tuple ``(d_1 <= ... <= d_c)`` of positive
integers; the empty tuple is the bottom element of the poset.  Its
multiplicity sequence records ``mu_d = #{i : d_i = d}`` for
``d = 1 .. d_c``.  The cover relation sends ``d`` to the multi-degree of its
family of penultimate tangents, ``d_1 \\ (d_c, d_c - 1)`` where ``d_1`` lists
``1 .. d`` for every ``d`` in the multi-degree.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

from .errors import ResourceError

DEFAULT_MAX_CHAIN = 10**8


def max_chain_from_env(default: int = DEFAULT_MAX_CHAIN) -> int:
    value = os.environ.get("PENTA_MAX_CHAIN")
    return int(value) if value else default


@dataclass(frozen=True, order=True)
class MultiDegree:
    degrees: Tuple[int, ...] = ()

    def __post_init__(self):
        degrees = tuple(sorted(int(d) for d in self.degrees))
        if degrees and degrees[0] < 1:
            raise ValueError(f"degrees must be positive: {degrees}")
        object.__setattr__(self, "degrees", degrees)

    @classmethod
    def of(cls, *degrees: int) -> MultiDegree:
        return cls(tuple(degrees))

    @classmethod
    def parse(cls, text: str) -> MultiDegree:
        """Parse ``"[2,3]"``; ``"[]"`` is the empty multi-degree.

        A bare integer such as ``"5"`` is accepted as the single degree.
        """
        text = text.strip()
        if re.fullmatch(r"\d+", text):
            return cls((int(text),))
        m = re.fullmatch(r"\[\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\]", text)
        if not m:
            raise ValueError(f"malformed multi-degree {text!r}; expected e.g. '[2,3]' or '[]'")
        body = m.group(1).strip()
        return cls(tuple(int(x) for x in body.split(",")) if body else ())

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.degrees)) + "]"

    def __len__(self) -> int:
        return len(self.degrees)

    def __iter__(self) -> Iterator[int]:
        return iter(self.degrees)

    @property
    def is_empty(self) -> bool:
        return not self.degrees

    @property
    def max_degree(self) -> int:
        """``d_c``; 0 for the empty multi-degree."""
        return self.degrees[-1] if self.degrees else 0

    def multiplicity(self) -> MultiplicitySequence:
        mu = [0] * self.max_degree
        for d in self.degrees:
            mu[d - 1] += 1
        return MultiplicitySequence(tuple(mu))


@dataclass(frozen=True, order=True)
class MultiplicitySequence:
    """``(mu_1, ..., mu_{d_c})`` with trailing zeros trimmed."""

    mu: Tuple[int, ...] = ()

    def __post_init__(self):
        mu = list(self.mu)
        if any(m < 0 for m in mu):
            raise ValueError(f"multiplicities must be nonnegative: {mu}")
        while mu and mu[-1] == 0:
            mu.pop()
        object.__setattr__(self, "mu", tuple(mu))

    @classmethod
    def of(cls, *mu: int) -> MultiplicitySequence:
        return cls(tuple(mu))

    @classmethod
    def pure(cls, d: int) -> MultiplicitySequence:
        """The sequence ``(0, ..., 0, 1)`` of the single degree ``d``."""
        return cls((0,) * (d - 1) + (1,))

    def __len__(self) -> int:
        return len(self.mu)

    def __getitem__(self, d: int) -> int:
        """``mu_d`` with 1-based degree indexing; zero outside the support."""
        return self.mu[d - 1] if 1 <= d <= len(self.mu) else 0

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.mu)) + ")"

    @property
    def is_empty(self) -> bool:
        return not self.mu

    @property
    def max_degree(self) -> int:
        return len(self.mu)

    @property
    def count(self) -> int:
        """``#d``, the number of equations."""
        return sum(self.mu)

    def to_multidegree(self) -> MultiDegree:
        return MultiDegree(tuple(d for d, m in enumerate(self.mu, start=1) for _ in range(m)))


def pointed_lines_multidegree(d: MultiDegree) -> MultiDegree:
    """``d_1 = (d' : 0 < d' <= d for d in d)``."""
    return MultiDegree(tuple(k for deg in d for k in range(1, deg + 1)))


def derived_multidegree(d: MultiDegree) -> MultiDegree:
    """The unique ``d'`` covered by ``d``; empty when ``d_c <= 1``."""
    if d.max_degree <= 1:
        return MultiDegree()
    top = d.max_degree
    remaining = list(pointed_lines_multidegree(d).degrees)
    remaining.remove(top)
    remaining.remove(top - 1)
    return MultiDegree(tuple(remaining))


def derived_multiplicity(mu: MultiplicitySequence | Sequence[int]) -> MultiplicitySequence:
    """``mu'_k = mu_k + ... + mu_{d_c}``, with the last two entries lowered by one."""
    seq = mu.mu if isinstance(mu, MultiplicitySequence) else tuple(mu)
    while seq and seq[-1] == 0:
        seq = seq[:-1]
    if len(seq) <= 1:
        return MultiplicitySequence()
    out = list(seq)
    for k in range(len(out) - 2, -1, -1):
        out[k] += out[k + 1]
    out[-1] -= 1
    out[-2] -= 1
    return MultiplicitySequence(tuple(out))


def iter_chain(mu: MultiplicitySequence) -> Iterator[MultiplicitySequence]:
    """Yield ``mu, mu', mu'', ...`` down to and including the empty sequence."""
    yield mu
    while not mu.is_empty:
        mu = derived_multiplicity(mu)
        yield mu


def interval_chain(d: MultiDegree, max_length: int | None = None) -> List[MultiDegree]:
    """The totally ordered interval ``[empty, d]`` listed from ``d`` downward.

    Raises :class:`ResourceError` once more than ``max_length`` elements
    would be produced.
    """
    if max_length is None:
        max_length = max_chain_from_env()
    chain: List[MultiDegree] = []
    for mu in iter_chain(d.multiplicity()):
        if len(chain) >= max_length:
            raise ResourceError(f"chain below {d} exceeds the cap of {max_length} elements")
        chain.append(mu.to_multidegree())
    return chain


def multidegrees_up_to(total: int) -> Iterable[MultiDegree]:
    """All nonempty multi-degrees with ``sum(d) <= total`` (integer partitions)."""

    def partitions(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
        if n == 0:
            yield ()
            return
        for part in range(min(n, largest), 0, -1):
            for rest in partitions(n - part, part):
                yield (part,) + rest

    for n in range(1, total + 1):
        for p in partitions(n, n):
            yield MultiDegree(p)
