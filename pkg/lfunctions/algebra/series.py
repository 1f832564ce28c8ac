"""
Truncated power series Lambda[T]/(T^m)

SeriesRing implements the BaseRing interface so that matrices over series,
K1 elimination and the Euler-factor constructions treat it like any other
finite ring. A series is a unit exactly when its constant term is a unit,
which is what the pivot search and the invertibility test rely on.
"""
import logging
import random
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

from lfunctions.algebra.matrices import Matrix
from lfunctions.algebra.ring import BaseRing, RingDescriptor, RingElem, RingHom, ring_hom_apply
from lfunctions.exceptions import (
    NoncommutativeRing,
    NonUnitConstantTerm,
    RingMismatch,
    SeriesError,
    TruncationMismatch,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeriesRing(BaseRing):
    """The ring base[T]/(T^m)"""

    base: RingDescriptor
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise SeriesError(f"Truncation order must be at least 1, got {self.m}")

    @property
    def zero(self) -> 'TruncSeries':
        return TruncSeries(self, (self.base.zero,) * self.m)

    @property
    def one(self) -> 'TruncSeries':
        return self.constant(self.base.one)

    def from_int(self, n: int) -> 'TruncSeries':
        return self.constant(self.base.from_int(n))

    def constant(self, c: RingElem) -> 'TruncSeries':
        return TruncSeries(self, (c,) + (self.base.zero,) * (self.m - 1))

    def monomial(self, c: RingElem, k: int) -> 'TruncSeries':
        """c * T^k, zero when k >= m"""
        coeffs = [self.base.zero] * self.m
        if k < self.m:
            coeffs[k] = c
        return TruncSeries(self, tuple(coeffs))

    def make(self, coeffs: Sequence) -> 'TruncSeries':
        """Series from a coefficient list, padded or truncated to m"""
        coeffs = [c if isinstance(c, RingElem) else self.base.from_int(c) for c in coeffs]
        coeffs = (coeffs + [self.base.zero] * self.m)[:self.m]
        return TruncSeries(self, tuple(coeffs))

    def is_unit(self, f: 'TruncSeries') -> bool:
        return self.base.is_unit(f.coeffs[0])

    def inverse(self, f: 'TruncSeries') -> 'TruncSeries':
        return ts_inv(f)

    @property
    def is_commutative(self) -> bool:
        return self.base.is_commutative

    @property
    def size(self) -> int:
        return self.base.size ** self.m

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    def random_element(self, rng: random.Random) -> 'TruncSeries':
        return TruncSeries(self, tuple(self.base.random_element(rng) for _ in range(self.m)))

    def pivot_candidates(self, rng: random.Random, hints: Sequence = ()) -> Iterator['TruncSeries']:
        # a + t*b is a unit iff its constant term is, so constant multipliers suffice
        base_hints = [h.coeffs[0] for h in hints]
        for c in self.base.pivot_candidates(rng, base_hints):
            yield self.constant(c)

    def matrix_is_invertible(self, rows) -> bool:
        return self.base.matrix_is_invertible([[f.coeffs[0] for f in row] for row in rows])

    def format_element(self, f: 'TruncSeries') -> str:
        terms = []
        for k, c in enumerate(f.coeffs):
            text = self.base.format_element(c)
            if k == 0:
                terms.append(text)
            elif k == 1:
                terms.append(f"{text}*T")
            else:
                terms.append(f"{text}*T^{k}")
        return ' + '.join(terms) + f" (mod T^{self.m})"

    def element_to_json(self, f: 'TruncSeries'):
        return {'m': self.m, 'coeffs': [self.base.element_to_json(c) for c in f.coeffs]}

    def element_from_json(self, data) -> 'TruncSeries':
        if isinstance(data, dict):
            if int(data.get('m', self.m)) != self.m:
                raise TruncationMismatch(data['m'], self.m)
            data = data['coeffs']
        return self.make([self.base.element_from_json(c) for c in data])

    def to_dict(self):
        return {'base': self.base.to_dict(), 'm': self.m}

    def __str__(self):
        return f"{self.base}[T]/(T^{self.m})"


@dataclass(frozen=True)
class TruncSeries:
    """An element of Lambda[T]/(T^m); coeffs[k] is the coefficient of T^k"""

    ring: SeriesRing
    coeffs: Tuple[RingElem, ...]

    @property
    def m(self) -> int:
        return self.ring.m

    @property
    def base(self) -> RingDescriptor:
        return self.ring.base

    def _check(self, other) -> 'TruncSeries':
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, RingElem):
            return self.ring.constant(other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if other.ring is not self.ring and other.ring != self.ring:
            if other.base != self.base:
                raise RingMismatch(self.base, other.base)
            raise TruncationMismatch(self.m, other.m)
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return TruncSeries(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return TruncSeries(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TruncSeries(self.ring, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        m, zero = self.m, self.base.zero
        out = [zero] * m
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(m - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(self.ring, tuple(out))

    def __rmul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other * self

    def __pow__(self, k: int):
        return ts_pow(self, k)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def coefficient(self, k: int) -> RingElem:
        return self.coeffs[k] if k < self.m else self.base.zero

    def __str__(self):
        return self.ring.format_element(self)

    def __repr__(self):
        return f"TruncSeries({self})"


# ==========================================
# SCALAR OPERATIONS
# ==========================================

def ts_make(base: RingDescriptor, coeffs: Sequence, m: int) -> TruncSeries:
    return SeriesRing(base, m).make(coeffs)


def ts_add(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    return f + g


def ts_sub(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    return f - g


def ts_mul(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """Truncated Cauchy product; f's coefficients multiply from the left"""
    return f * g


def ts_inv(f: TruncSeries) -> TruncSeries:
    """
    Two-sided inverse of a series whose constant term is a unit

    Solves f*g = 1 coefficient by coefficient and asserts g*f = 1.

    Raises:
        NonUnitConstantTerm: If the constant term is not a unit
    """
    base = f.base
    constant = f.coeffs[0]
    if not base.is_unit(constant):
        raise NonUnitConstantTerm(base.format_element(constant))
    g0 = base.inverse(constant)
    g = [g0]
    for k in range(1, f.m):
        total = base.zero
        for i in range(1, k + 1):
            a = f.coeffs[i]
            if not a.is_zero():
                total = total + a * g[k - i]
        g.append(-(g0 * total))
    inverse = TruncSeries(f.ring, tuple(g))
    if inverse * f != f.ring.one or f * inverse != f.ring.one:
        raise SeriesError(f"Left and right inverses of {f} disagree")
    return inverse


def ts_pow(f: TruncSeries, k: int) -> TruncSeries:
    if k < 0:
        return ts_pow(ts_inv(f), -k)
    result, base = f.ring.one, f
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def truncate(f: TruncSeries, m: int) -> TruncSeries:
    """Image of f in Lambda[T]/(T^m), m <= f.m"""
    if m > f.m:
        raise TruncationMismatch(f.m, m)
    return TruncSeries(SeriesRing(f.base, m), f.coeffs[:m])


def substitute_power(f: TruncSeries, e: int, m: int) -> TruncSeries:
    """f(T^e) truncated at T^m; requires f to be known to degree (m - 1) // e"""
    if (m - 1) // e >= f.m:
        raise TruncationMismatch(f.m, m)
    ring = SeriesRing(f.base, m)
    coeffs = [f.base.zero] * m
    for k, c in enumerate(f.coeffs):
        if k * e < m:
            coeffs[k * e] = c
    return TruncSeries(ring, tuple(coeffs))


def ts_apply_hom(f: TruncSeries, h: RingHom) -> TruncSeries:
    """Coefficientwise image of f under h"""
    return TruncSeries(SeriesRing(h.target, f.m), tuple(ring_hom_apply(h, c) for c in f.coeffs))


def ts_log_derivative(f: TruncSeries) -> TruncSeries:
    """
    T * f'(T) * f(T)^{-1} truncated at T^m

    For f = prod (1 - u_i T^{d_i})^{-1} the coefficient of T^n is the sum of
    d_i * u_i^{n / d_i} over the i with d_i | n.

    Raises:
        NoncommutativeRing: If the coefficient ring is not commutative
        NonUnitConstantTerm: If f is not a unit
    """
    if not f.base.is_commutative:
        raise NoncommutativeRing(f.base)
    inverse = ts_inv(f)
    derivative = TruncSeries(f.ring, tuple(c * k for k, c in enumerate(f.coeffs)))
    return derivative * inverse


# ==========================================
# MATRIX OPERATIONS
# ==========================================

def constant_matrix(A: Matrix, m: int) -> Matrix:
    """A as a matrix of constant series"""
    ring = SeriesRing(A.ring, m)
    return A.apply(ring.constant, ring)


def ts_one_minus(A: Matrix, d: int, m: int) -> Matrix:
    """The series matrix I - A T^d"""
    ring = SeriesRing(A.ring, m)
    rows = []
    for i, row in enumerate(A.rows):
        new_row = []
        for j, a in enumerate(row):
            entry = ring.monomial(-a, d)
            if i == j:
                entry = entry + ring.one
            new_row.append(entry)
        rows.append(new_row)
    return Matrix(ring, rows)


def ts_geom_inverse(A: Matrix, d: int, m: int) -> Matrix:
    """
    The inverse sum_{k d < m} A^k T^{k d} of I - A T^d

    Args:
        A (Matrix): Constant square matrix over the coefficient ring
        d (int): Degree of the monomial
        m (int): Truncation order

    Returns:
        Matrix: Series matrix, checked against I - A T^d on both sides
    """
    if d < 1:
        raise SeriesError(f"Degree must be positive, got {d}")
    ring = SeriesRing(A.ring, m)
    n = A.n
    coeffs = [[[A.ring.zero] * m for _ in range(n)] for _ in range(n)]
    power = Matrix.identity(A.ring, n)
    k = 0
    while k * d < m:
        for i in range(n):
            for j in range(n):
                coeffs[i][j][k * d] = power.rows[i][j]
        power = power * A
        k += 1
    result = Matrix(ring, [[TruncSeries(ring, tuple(coeffs[i][j])) for j in range(n)] for i in range(n)])
    identity = Matrix.identity(ring, n)
    one_minus = ts_one_minus(A, d, m)
    if result * one_minus != identity or one_minus * result != identity:
        raise SeriesError("Geometric series does not invert I - A T^d")
    return result


def matrix_apply_hom(M: Matrix, h: RingHom) -> Matrix:
    """Entrywise image of a coefficient or series matrix under h"""
    if isinstance(M.ring, SeriesRing):
        ring = SeriesRing(h.target, M.ring.m)
        return M.apply(lambda f: ts_apply_hom(f, h), ring)
    return M.apply(lambda a: ring_hom_apply(h, a), h.target)


def matrix_truncate(M: Matrix, m: int) -> Matrix:
    ring = SeriesRing(M.ring.base, m)
    return M.apply(lambda f: truncate(f, m), ring)
