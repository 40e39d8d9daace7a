"""Penultimate tangents and the residual point map on a single hypersurface.

Coordinates are changed so the base point ``z`` becomes ``(0:...:0:1)``;
then ``f = sum_i f_i(x_0..x_{n-1}) x_n^(d-i)`` and a line through ``z`` in
direction ``y`` meets ``X = V(f)`` at ``z`` to order ``min{i : f_i(y) != 0}``.
On the penultimate tangents (``f_1 = ... = f_{d-2} = 0`` at ``y``) the
residual intersection is ``(y f_{d-1}(y) : -f_d(y))``.

Fields are the rationals (exact :class:`~fractions.Fraction`) and prime
fields ``GF(p)``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_strip

from .errors import DomainError, IndeterminacyError, PreconditionError

MAX_TERMS = 10**6
Exponents = Tuple[int, ...]


# ---------------------------------------------------------------------------
# fields


class RationalField:
    name = "Q"
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def random(self, rng: random.Random, bound: int = 9) -> Fraction:
        return Fraction(rng.randint(-bound, bound))

    def format(self, a: Fraction) -> str:
        return str(a)

    def abs_key(self, a: Fraction):
        return abs(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "RationalField()"


class PrimeField:
    def __init__(self, p: int):
        if not (2 <= p <= 2**31 and isprime(p)):
            raise DomainError(f"field size must be a prime <= 2^31, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, value) -> int:
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def format(self, a: int) -> str:
        return str(a)

    def abs_key(self, a: int):
        return a != 0

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(self.p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


Field = Union[RationalField, PrimeField]
QQ = RationalField()


def field_from_spec(spec: Optional[Union[int, str]]) -> Field:
    """``None``/``"Q"`` for the rationals, else a prime."""
    if spec is None or str(spec).upper() in ("Q", "QQ"):
        return QQ
    return PrimeField(int(spec))


# ---------------------------------------------------------------------------
# polynomials and points


def _monomials(num_variables: int, degree: int) -> Iterable[Exponents]:
    if num_variables == 1:
        yield (degree,)
        return
    for e in range(degree, -1, -1):
        for rest in _monomials(num_variables - 1, degree - e):
            yield (e,) + rest


@dataclass
class HomogeneousPolynomial:
    field: Field
    num_variables: int
    degree: int
    terms: Dict[Exponents, Any] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.num_variables:
                raise ValueError(f"exponent vector {exps} has the wrong length for {self.num_variables} variables")
            if any(e < 0 for e in exps) or sum(exps) != self.degree:
                raise ValueError(f"exponent vector {exps} does not have degree {self.degree}")
            c = self.field(c)
            if c != 0:
                clean[exps] = self.field(clean.get(exps, 0) + c)
                if clean[exps] == 0:
                    del clean[exps]
        if len(clean) > MAX_TERMS:
            raise DomainError(f"polynomial has more than {MAX_TERMS} terms")
        self.terms = clean

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, F: Field, num_variables: int, degree: int) -> HomogeneousPolynomial:
        return cls(F, num_variables, degree, {})

    @classmethod
    def linear(cls, F: Field, coefficients: Sequence) -> HomogeneousPolynomial:
        n = len(coefficients)
        return cls(F, n, 1, {tuple(int(k == j) for k in range(n)): c for j, c in enumerate(coefficients)})

    @classmethod
    def random(cls, F: Field, num_variables: int, degree: int, rng: random.Random) -> HomogeneousPolynomial:
        return cls(F, num_variables, degree, {e: F.random(rng) for e in _monomials(num_variables, degree)})

    @classmethod
    def from_json(cls, data: Union[str, list, dict], F: Optional[Field] = None) -> HomogeneousPolynomial:
        """Parse ``[{"exponents": [...], "coefficient": "p/q"}, ...]``.

        A dict ``{"field": ..., "terms": [...]}`` may carry the field.
        """
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            if F is None and "field" in data:
                F = field_from_spec(data["field"])
            data = data["terms"]
        F = QQ if F is None else F
        if not data:
            raise ValueError("polynomial has no terms")
        exps = [tuple(t["exponents"]) for t in data]
        degree = sum(exps[0])
        return cls(F, len(exps[0]), degree, {e: t["coefficient"] for e, t in zip(exps, data)})

    def to_json(self) -> list:
        return [{"exponents": list(e), "coefficient": self.field.format(c)} for e, c in sorted(self.terms.items(), reverse=True)]

    # -- arithmetic ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.num_variables == other.num_variables
        return (self.field, self.num_variables, self.degree, self.terms) == (
            other.field, other.num_variables, other.degree, other.terms)

    def __add__(self, other: HomogeneousPolynomial) -> HomogeneousPolynomial:
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ValueError("cannot add polynomials of different degrees")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return HomogeneousPolynomial(self.field, self.num_variables, self.degree, terms)

    def __neg__(self) -> HomogeneousPolynomial:
        return self.scale(-1)

    def __sub__(self, other: HomogeneousPolynomial) -> HomogeneousPolynomial:
        return self + (-other)

    def scale(self, c) -> HomogeneousPolynomial:
        c = self.field(c)
        return HomogeneousPolynomial(self.field, self.num_variables, self.degree,
                                     {e: a * c for e, a in self.terms.items()})

    def __mul__(self, other: HomogeneousPolynomial) -> HomogeneousPolynomial:
        terms: Dict[Exponents, Any] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return HomogeneousPolynomial(self.field, self.num_variables, self.degree + other.degree, terms)

    def __pow__(self, k: int) -> HomogeneousPolynomial:
        result = HomogeneousPolynomial(self.field, self.num_variables, 0, {(0,) * self.num_variables: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, point: Sequence) -> Any:
        F = self.field
        if len(point) != self.num_variables:
            raise ValueError(f"expected {self.num_variables} coordinates, got {len(point)}")
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total += term
        return F(total)

    def compose_linear(self, matrix: Sequence[Sequence]) -> HomogeneousPolynomial:
        """``f(A x)`` for a square matrix ``A``."""
        n = self.num_variables
        forms = [HomogeneousPolynomial.linear(self.field, row) for row in matrix]
        powers: Dict[Tuple[int, int], HomogeneousPolynomial] = {}
        result = HomogeneousPolynomial.zero(self.field, n, self.degree)
        for e, c in self.terms.items():
            term = HomogeneousPolynomial(self.field, n, 0, {(0,) * n: c})
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = forms[i] ** k
                    term = term * powers[(i, k)]
            result = result + term
        return result

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{self.field.format(c)}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    field: Field
    coordinates: Tuple

    def __post_init__(self):
        coords = tuple(self.field(c) for c in self.coordinates)
        if all(c == 0 for c in coords):
            raise DomainError("the zero vector is not a projective point")
        object.__setattr__(self, "coordinates", coords)

    def normalized(self) -> Tuple:
        pivot = next(c for c in self.coordinates if c != 0)
        inv = self.field.inv(pivot)
        return tuple(self.field(c * inv) for c in self.coordinates)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.field == other.field and self.normalized() == other.normalized()

    def __hash__(self) -> int:
        return hash(self.normalized())

    def __len__(self) -> int:
        return len(self.coordinates)

    def __iter__(self):
        return iter(self.coordinates)

    def __str__(self) -> str:
        return "(" + ":".join(self.field.format(c) for c in self.coordinates) + ")"

    def to_json(self) -> list:
        return [self.field.format(c) for c in self.coordinates]

    @classmethod
    def parse(cls, F: Field, text: str) -> ProjectivePoint:
        """``"0,0,1"``, ``"(0:0:1)"`` or a JSON list."""
        text = text.strip()
        if text.startswith("["):
            values = json.loads(text)
        else:
            values = [v for v in text.strip("()").replace(":", ",").split(",") if v.strip()]
        return cls(F, tuple(values))


# ---------------------------------------------------------------------------
# expansion at a point


def _mat_vec(F: Field, A, v) -> Tuple:
    return tuple(F(sum(a * x for a, x in zip(row, v))) for row in A)


@dataclass
class GradedExpansion:
    """``f(A x) = sum_{i=1}^d f_i(x_0..x_{n-1}) x_n^(d-i)`` with ``A e_n = z``."""

    polynomial: HomogeneousPolynomial
    point: ProjectivePoint
    matrix: Tuple[Tuple, ...]
    components: List[HomogeneousPolynomial]

    @property
    def field(self) -> Field:
        return self.polynomial.field

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    @property
    def n(self) -> int:
        """Dimension of the ambient projective space."""
        return self.polynomial.num_variables - 1

    def component(self, i: int) -> HomogeneousPolynomial:
        """``f_i`` for ``1 <= i <= d``."""
        return self.components[i - 1]

    def transformed(self) -> HomogeneousPolynomial:
        """``sum f_i x_n^(d-i)`` as a polynomial in ``n + 1`` variables."""
        n1 = self.n + 1
        d = self.degree
        terms = {}
        for i, fi in enumerate(self.components, start=1):
            for e, c in fi.terms.items():
                terms[e + (d - i,)] = c
        return HomogeneousPolynomial(self.field, n1, d, terms)

    def to_original(self, point: ProjectivePoint) -> ProjectivePoint:
        return ProjectivePoint(self.field, _mat_vec(self.field, self.matrix, point.coordinates))


def change_of_coordinates(F: Field, z: ProjectivePoint) -> Tuple[Tuple, ...]:
    """Matrix ``A`` with ``A e_n = z``: a swap of a pivot coordinate into last place, then a shear."""
    n1 = len(z)
    pivot = max(range(n1), key=lambda k: (F.abs_key(z.coordinates[k]), k))
    A = [[F(0)] * n1 for _ in range(n1)]
    for j in range(n1 - 1):
        A[n1 - 1 if j == pivot else j][j] = F(1)
    for i in range(n1):
        A[i][n1 - 1] = z.coordinates[i]
    return tuple(tuple(row) for row in A)


def expand_at_point(f: HomogeneousPolynomial, z: ProjectivePoint) -> GradedExpansion:
    """Move ``z`` to ``(0:...:0:1)`` and split ``f`` by powers of ``x_n``."""
    if f.degree < 2:
        raise DomainError(f"expansion needs degree >= 2, got {f.degree}")
    if len(z) != f.num_variables:
        raise ValueError(f"point has {len(z)} coordinates, polynomial has {f.num_variables} variables")
    if f(z.coordinates) != 0:
        raise PreconditionError(f"f does not vanish at {z}")
    F = f.field
    n1 = f.num_variables
    last = n1 - 1
    if all(c == 0 for c in z.coordinates[:last]):
        A = tuple(tuple(F(int(i == j)) for j in range(n1)) for i in range(n1))
    else:
        A = change_of_coordinates(F, z)
    g = f.compose_linear(A)
    d = f.degree
    buckets: List[Dict[Exponents, Any]] = [dict() for _ in range(d + 1)]
    for e, c in g.terms.items():
        buckets[d - e[last]][e[:last]] = c
    if buckets[0]:
        raise AssertionError("x_n^d term survived although f(z) = 0")
    components = [HomogeneousPolynomial(F, last, i, buckets[i]) for i in range(1, d + 1)]
    return GradedExpansion(f, z, A, components)


def restrict_to_line(expansion: GradedExpansion, y: Union[ProjectivePoint, Sequence]) -> List:
    """``(f_1(y), ..., f_d(y))``: the coefficients of ``s^i t^(d-i)`` on the line through ``z`` towards ``y``."""
    coords = tuple(y.coordinates if isinstance(y, ProjectivePoint) else y)
    if len(coords) != expansion.n:
        raise ValueError(f"direction needs {expansion.n} coordinates, got {len(coords)}")
    return [fi(coords) for fi in expansion.components]


def tangency_order(expansion: GradedExpansion, y) -> Optional[int]:
    """Intersection multiplicity at ``z`` of the line towards ``y``; ``None`` if the line lies in ``X``."""
    values = restrict_to_line(expansion, y)
    return next((i for i, v in enumerate(values, start=1) if v != 0), None)


def tangency_locus_equations(expansion: GradedExpansion, k: int) -> List[HomogeneousPolynomial]:
    """Equations ``f_1, ..., f_{k-1}`` of the lines meeting ``X`` to order at least ``k`` at ``z``."""
    if not 1 <= k <= expansion.degree + 1:
        raise DomainError(f"order must satisfy 1 <= k <= {expansion.degree + 1}, got {k}")
    return list(expansion.components[: k - 1])


def penta_equations(expansion: GradedExpansion) -> List[HomogeneousPolynomial]:
    return tangency_locus_equations(expansion, expansion.degree - 1)


def residual_map_polynomials(expansion: GradedExpansion) -> List[HomogeneousPolynomial]:
    """Components ``(y_0 f_{d-1}, ..., y_{n-1} f_{d-1}, -f_d)`` of the residual point map."""
    F = expansion.field
    d = expansion.degree
    n = expansion.n
    penult = expansion.component(d - 1)
    out = []
    for j in range(n):
        yj = HomogeneousPolynomial.linear(F, [int(k == j) for k in range(n)])
        out.append(yj * penult if not penult.is_zero() else HomogeneousPolynomial.zero(F, n, d))
    out.append(-expansion.component(d))
    return out


def residual_point(expansion: GradedExpansion, y: Union[ProjectivePoint, Sequence]) -> ProjectivePoint:
    """The residual intersection of the penultimate tangent towards ``y``, in the moved coordinates."""
    F = expansion.field
    d = expansion.degree
    values = restrict_to_line(expansion, y)
    if any(v != 0 for v in values[: d - 2]):
        raise PreconditionError(f"direction {tuple(y)} is not a penultimate tangent")
    penult, top = values[d - 2], values[d - 1]
    if penult == 0 and top == 0:
        raise IndeterminacyError(f"the line towards {tuple(y)} lies in X")
    coords = tuple(y.coordinates if isinstance(y, ProjectivePoint) else y)
    return ProjectivePoint(F, tuple(F(c * penult) for c in coords) + (F(-top),))


# ---------------------------------------------------------------------------
# univariate tools and sampling over GF(p)


def binary_form_coefficients(F: Field, values: Callable, degree: int) -> List:
    """Coefficients ``c_0..c_degree`` of ``g(u) = sum c_k u^k`` from its values at ``u = 0..degree``."""
    xs = [F(k) for k in range(degree + 1)]
    ys = [F(values(x)) for x in xs]
    coeffs = [F(0)] * (degree + 1)
    for k, (xk, yk) in enumerate(zip(xs, ys)):
        if yk == 0:
            continue
        basis = [F(1)]  # prod_{m != k} (u - x_m) / (x_k - x_m)
        denom = F(1)
        for m, xm in enumerate(xs):
            if m == k:
                continue
            basis = [F(a - xm * b) for a, b in zip([F(0)] + basis, basis + [F(0)])]
            denom = F(denom * (xk - xm))
        scale = F(yk * F.inv(denom))
        coeffs = [F(c + scale * b) for c, b in zip(coeffs, basis)]
    return coeffs


def vanishing_order(F: Field, values: Callable, degree: int) -> Optional[int]:
    """Order of vanishing at ``u = 0`` of a polynomial of degree at most ``degree``."""
    coeffs = binary_form_coefficients(F, values, degree)
    return next((k for k, c in enumerate(coeffs) if c != 0), None)


def roots_mod_p(coefficients: Sequence[int], p: int) -> List[int]:
    """Roots in ``GF(p)`` of ``sum c_k u^k`` (ascending coefficients); empty for the zero polynomial."""
    dense = gf_strip([int(c) % p for c in reversed(coefficients)])
    if not dense or len(dense) == 1:
        return []
    _, factors = gf_factor(dense, p, ZZ)
    return sorted(int(-g[1]) % p for g, _ in factors if len(g) == 2)


def _solve_linear(F: PrimeField, form: HomogeneousPolynomial, n: int) -> Tuple[int, List[Tuple]]:
    """Pivot index and a basis of the kernel of a nonzero linear form in ``n`` variables."""
    coeffs = [form.terms.get(tuple(int(k == j) for k in range(n)), 0) for j in range(n)]
    pivot = next(j for j in range(n) if coeffs[j] != 0)
    inv = F.inv(coeffs[pivot])
    basis = []
    for j in range(n):
        if j == pivot:
            continue
        v = [0] * n
        v[j] = 1
        v[pivot] = F(-coeffs[j] * inv)
        basis.append(tuple(v))
    return pivot, basis


def _combine(F: Field, vectors: Sequence[Tuple], weights: Sequence) -> Tuple:
    n = len(vectors[0])
    return tuple(F(sum(w * v[k] for w, v in zip(weights, vectors))) for k in range(n))


def sample_penta_points(expansion: GradedExpansion, count: int, rng: random.Random,
                        attempts: int = 50) -> List[ProjectivePoint]:
    """Points of PenTa over ``GF(p)`` for degrees up to 5; may return fewer than ``count``.

    The linear equation ``f_1`` is solved directly.  With one further
    equation the locus is cut with random lines; with two (``d = 5``) a
    random plane is taken, a point on the conic ``f_2`` is found, the conic
    is parameterized by the lines through it, and the roots of ``f_3``
    along that parameterization are collected.
    """
    F = expansion.field
    if not isinstance(F, PrimeField):
        raise DomainError("sampling is implemented over prime fields")
    n, d = expansion.n, expansion.degree
    eqs = penta_equations(expansion)
    found: List[ProjectivePoint] = []

    def random_vector(dim):
        while True:
            v = tuple(F.random(rng) for _ in range(dim))
            if any(v):
                return v

    def keep(v):
        if any(v) and all(e(v) == 0 for e in eqs):
            pt = ProjectivePoint(F, v)
            if pt not in found:
                found.append(pt)

    if not eqs:
        for _ in range(count):
            keep(random_vector(n))
        return found[:count]
    if eqs[0].is_zero():
        raise PreconditionError("f_1 vanishes identically: z is a singular point")
    _, kernel = _solve_linear(F, eqs[0], n)
    rest = eqs[1:]
    if len(kernel) == 0:
        return []

    def lift(weights):
        return _combine(F, kernel, weights)

    for _ in range(attempts):
        if len(found) >= count:
            break
        if not rest:
            keep(lift(random_vector(len(kernel))))
        elif len(rest) == 1:
            if len(kernel) < 2:
                keep(lift((1,)))
                continue
            a, b = lift(random_vector(len(kernel))), lift(random_vector(len(kernel)))
            line = lambda u: tuple(F(x + u * y) for x, y in zip(a, b))  # noqa: E731
            coeffs = binary_form_coefficients(F, lambda u: rest[0](line(u)), rest[0].degree)
            for u in roots_mod_p(coeffs, F.p):
                keep(line(u))
            keep(b)  # the point at infinity of the chart
        elif len(rest) == 2:
            if len(kernel) < 3:
                break
            for pt in _conic_cubic_points(F, rest[0], rest[1], [lift(random_vector(len(kernel))) for _ in range(3)], rng):
                keep(pt)
        else:
            raise DomainError(f"sampling is implemented for degree <= 5, got {d}")
    return found[:count]


def _conic_cubic_points(F: PrimeField, conic, cubic, frame, rng) -> List[Tuple]:
    """Common points of two forms restricted to the plane spanned by ``frame``."""
    plane = lambda w: _combine(F, frame, w)  # noqa: E731
    C = lambda w: conic(plane(w))  # noqa: E731
    # a point q on the conic: a random line in the plane
    a, b = tuple(F.random(rng) for _ in range(3)), tuple(F.random(rng) for _ in range(3))
    line = lambda u: tuple(F(x + u * y) for x, y in zip(a, b))  # noqa: E731
    roots = roots_mod_p(binary_form_coefficients(F, lambda u: C(line(u)), 2), F.p)
    if not roots:
        return []
    q = line(roots[0])
    if not any(q):
        return []
    # lines through q, directions w(tau) = c + tau e on a line avoiding q
    c, e = tuple(F.random(rng) for _ in range(3)), tuple(F.random(rng) for _ in range(3))

    def conic_point(tau):
        w = tuple(F(x + tau * y) for x, y in zip(c, e))
        # C(q + lam w) = lam (B(q, w) + lam C(w)), so the second point is C(w) q - B(q, w) w
        cw = C(w)
        bqw = F(C(tuple(F(x + y) for x, y in zip(q, w))) - cw)  # C(q) = 0
        return tuple(F(cw * x - bqw * y) for x, y in zip(q, w))

    values = lambda tau: cubic(plane(conic_point(tau)))  # noqa: E731
    coeffs = binary_form_coefficients(F, values, 2 * cubic.degree)
    points = [plane(conic_point(tau)) for tau in roots_mod_p(coeffs, F.p)]
    points.append(plane(q))
    return points


# ---------------------------------------------------------------------------
# random instances


@dataclass
class Instance:
    expansion: GradedExpansion
    direction: ProjectivePoint
    residual: ProjectivePoint  # in the original coordinates


def random_hypersurface_through_point(F: PrimeField, num_variables: int, degree: int,
                                      rng: random.Random) -> Tuple[HomogeneousPolynomial, ProjectivePoint]:
    """A random form ``f`` and a random point ``z`` with ``f(z) = 0``."""
    while True:
        z = tuple(F.random(rng) for _ in range(num_variables))
        if any(z):
            break
    f = HomogeneousPolynomial.random(F, num_variables, degree, rng)
    value = f(z)
    if value:
        # subtract a multiple of a monomial that does not vanish at z
        mono = next(e for e in _monomials(num_variables, degree)
                    if all(z[i] != 0 for i, k in enumerate(e) if k))
        mono_value = HomogeneousPolynomial(F, num_variables, degree, {mono: 1})(z)
        f = f - HomogeneousPolynomial(F, num_variables, degree, {mono: F(value * F.inv(mono_value))})
    return f, ProjectivePoint(F, z)


def line_multiplicity(f: HomogeneousPolynomial, z: ProjectivePoint, w: ProjectivePoint) -> Optional[int]:
    """Order of vanishing at ``z`` of ``f`` on the line through ``z`` and ``w``; ``None`` if the line lies in ``V(f)``."""
    F = f.field
    return vanishing_order(F, lambda u: f(tuple(F(a + u * b) for a, b in zip(z.coordinates, w.coordinates))), f.degree)


def random_instances(p: int, count: int, seed: int, degrees=(3, 4, 5), dimensions=(3, 4, 5),
                     max_tries: int = 10_000) -> List[Instance]:
    """Seeded ``(f, z, y)`` triples with ``y`` a penultimate tangent direction and ``f_{d-1}(y) != 0``.

    Only ``(d, n)`` with ``n >= d - 1`` are drawn, so that PenTa is expected to be nonempty.
    """
    F = PrimeField(p)
    rng = random.Random(seed)
    shapes = [(d, n) for d in degrees for n in dimensions if n >= d - 1]
    out: List[Instance] = []
    tries = 0
    while len(out) < count and tries < max_tries:
        tries += 1
        d, n = shapes[len(out) % len(shapes)]
        f, z = random_hypersurface_through_point(F, n + 1, d, rng)
        exp = expand_at_point(f, z)
        if exp.component(1).is_zero():
            continue
        for y in sample_penta_points(exp, 1, rng, attempts=5):
            if restrict_to_line(exp, y)[d - 2] == 0:
                continue
            res = exp.to_original(residual_point(exp, y))
            out.append(Instance(exp, y, res))
            break
    return out
