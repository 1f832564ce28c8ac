"""
Zeta functions from point counts

Z(X, T) = exp(sum N_n T^n / n) is rational; the reconstruction here solves for
numerator and denominator with exact rational linear algebra and re-expands
the result to confirm it.
"""
import logging
import threading
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from lfunctions.algebra.ring import BaseRing
from lfunctions.algebra.series import SeriesRing, TruncSeries, ts_inv
from lfunctions.constants import SCHEME_A1, SCHEME_GM, SCHEME_P1
from lfunctions.exceptions import (
    AmbiguousSolution,
    LFunctionError,
    NoSolutionWithinBounds,
    NotAUnit,
    UnsupportedScheme,
)
from lfunctions.geometry.variety import Scheme, scheme_builtin, scheme_point_counts

logger = logging.getLogger(__name__)

T = sympy.Symbol('T')


def _poly_text(coeffs: Sequence[sympy.Rational]) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        monomial = '' if k == 0 else ('T' if k == 1 else f'T^{k}')
        magnitude = abs(c)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f'{magnitude}*{monomial}'
        if not parts:
            parts.append(body if c > 0 else f'-{body}')
        else:
            parts.append(f'+ {body}' if c > 0 else f'- {body}')
    return ' '.join(parts) if parts else '0'


@dataclass(frozen=True)
class RationalFunction:
    """
    P(T) / Q(T) with rational coefficients, low degree first

    Normalised so that gcd(P, Q) = 1 and Q(0) = 1.
    """

    numerator: Tuple[sympy.Rational, ...]
    denominator: Tuple[sympy.Rational, ...]

    @classmethod
    def make(cls, numerator: Sequence, denominator: Sequence) -> 'RationalFunction':
        num = sympy.Poly.from_list(list(reversed([sympy.Rational(c) for c in numerator])) or [0], T, domain='QQ')
        den = sympy.Poly.from_list(list(reversed([sympy.Rational(c) for c in denominator])), T, domain='QQ')
        if den.is_zero:
            raise LFunctionError("Zero denominator")
        common = sympy.gcd(num, den)
        if not common.is_zero and common.degree() > 0:
            num, den = sympy.div(num, common)[0], sympy.div(den, common)[0]
        constant = den.eval(0)
        if constant == 0:
            raise LFunctionError("Denominator vanishes at T = 0")
        num, den = num * (1 / constant), den * (1 / constant)
        return cls(cls._coeffs(num), cls._coeffs(den))

    @classmethod
    def from_linear_factors(cls, numerator: Sequence[int], denominator: Sequence[int]) -> 'RationalFunction':
        """prod (1 - a T) over numerator / prod (1 - b T) over denominator"""
        def product(roots):
            return reduce(lambda p, a: p * (1 - a * T), roots, sympy.Integer(1))

        num = sympy.Poly(product(numerator), T, domain='QQ')
        den = sympy.Poly(product(denominator), T, domain='QQ')
        return cls.make(cls._coeffs(num), cls._coeffs(den))

    @staticmethod
    def _coeffs(poly: sympy.Poly) -> Tuple[sympy.Rational, ...]:
        coeffs = list(reversed(poly.all_coeffs()))
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(sympy.Rational(c) for c in coeffs)

    @property
    def num_degree(self) -> int:
        return len(self.numerator) - 1

    @property
    def den_degree(self) -> int:
        return len(self.denominator) - 1

    # ==========================================
    # EXPANSION
    # ==========================================

    def expand(self, K: int) -> List[sympy.Rational]:
        """Power series coefficients of T^0 .. T^(K-1)"""
        series = []
        for k in range(K):
            value = self.numerator[k] if k < len(self.numerator) else sympy.Integer(0)
            for j in range(1, min(k, self.den_degree) + 1):
                value -= self.denominator[j] * series[k - j]
            series.append(value)
        return series

    def power_sums(self, K: int) -> List[sympy.Rational]:
        """N_1 .. N_K with T Z'/Z = sum N_n T^n"""
        z = self.expand(K + 1)
        sums = []
        for n in range(1, K + 1):
            value = n * z[n]
            for k in range(1, n):
                value -= sums[k - 1] * z[n - k]
            sums.append(value)
        return sums

    def reduce_into(self, ring: BaseRing, m: int) -> TruncSeries:
        """
        The image in ring[T]/(T^m)

        Raises:
            NotAUnit: If a coefficient denominator is not invertible in ring
        """
        series_ring = SeriesRing(ring, m)
        num = series_ring.make([_reduce_rational(c, ring) for c in self.numerator[:m]])
        den = series_ring.make([_reduce_rational(c, ring) for c in self.denominator[:m]])
        return num * ts_inv(den)

    def to_dict(self) -> Dict:
        return {
            'numerator': [str(c) for c in self.numerator],
            'denominator': [str(c) for c in self.denominator],
            'display': str(self),
        }

    def __str__(self):
        num = _poly_text(self.numerator)
        if self.den_degree == 0:
            return num
        if self.num_degree > 0:
            num = f'({num})'
        return f'{num}/({_poly_text(self.denominator)})'


def _reduce_rational(c: sympy.Rational, ring: BaseRing):
    c = sympy.Rational(c)
    denominator = ring.from_int(int(c.q))
    if not ring.is_unit(denominator):
        raise NotAUnit(f'{c.q} in {ring}')
    return ring.from_int(int(c.p)) * ring.inverse(denominator)


def series_from_power_sums(counts: Sequence[int], K: int) -> List[sympy.Rational]:
    """Coefficients z_0 .. z_(K-1) of exp(sum N_n T^n / n), from n z_n = sum N_k z_(n-k)"""
    z = [sympy.Integer(1)]
    for n in range(1, K):
        total = sum((sympy.Integer(counts[k - 1]) * z[n - k] for k in range(1, n + 1)), sympy.Integer(0))
        z.append(total / n)
    return z


def zeta_series_into(counts: Sequence[int], ring: BaseRing, m: int) -> TruncSeries:
    """Z(T) mod T^m over ring from N_1 .. N_(m-1); the coefficients are integers"""
    if len(counts) < m - 1:
        raise LFunctionError(f"Need {m - 1} point counts, got {len(counts)}")
    z = series_from_power_sums(counts, m)
    for c in z:
        if not c.is_integer:
            raise LFunctionError(f"Point counts give non-integral zeta coefficient {c}")
    return SeriesRing(ring, m).make([ring.from_int(int(c)) for c in z])


# ==========================================
# RECONSTRUCTION
# ==========================================

def zeta_reconstruct(counts: Sequence[int], num_deg: int, den_deg: int) -> RationalFunction:
    """
    The rational function with Z(0) = 1 and the given degree bounds whose
    logarithmic derivative matches the counts

    Writing Z = exp(sum N_n T^n / n), the condition P = Z Q mod T^(K+1) is
    linear in the coefficients of P and Q.

    Args:
        counts (list): N_1 .. N_K
        num_deg (int): Bound on deg P
        den_deg (int): Bound on deg Q

    Returns:
        RationalFunction: The reduced solution

    Raises:
        NoSolutionWithinBounds: If no P/Q within the bounds fits
        AmbiguousSolution: If the bounds leave free parameters
    """
    K = len(counts)
    if K < num_deg + den_deg + 1:
        raise LFunctionError(f"Need at least {num_deg + den_deg + 1} counts, got {K}")
    z = series_from_power_sums(counts, K + 1)

    # Q = 1 + b_1 T + ... ; coefficient k of Z Q vanishes for num_deg < k <= K
    rows, rhs = [], []
    for k in range(num_deg + 1, K + 1):
        rows.append([z[k - j] if k - j >= 0 else 0 for j in range(1, den_deg + 1)])
        rhs.append(-z[k])
    if den_deg:
        system = sympy.Matrix(rows)
        try:
            solution, params = system.gauss_jordan_solve(sympy.Matrix(rhs))
        except ValueError:
            raise NoSolutionWithinBounds(num_deg, den_deg)
        if params.shape[0]:
            raise AmbiguousSolution(params.shape[0])
        b = [sympy.Integer(1)] + [sympy.Rational(v) for v in solution]
    else:
        if any(v != 0 for v in rhs):
            raise NoSolutionWithinBounds(num_deg, den_deg)
        b = [sympy.Integer(1)]

    a = [sum((b[j] * z[k - j] for j in range(0, min(k, den_deg) + 1)), sympy.Integer(0))
         for k in range(num_deg + 1)]
    result = RationalFunction.make(a, b)
    if result.power_sums(K) != [sympy.Integer(c) for c in counts]:
        raise NoSolutionWithinBounds(num_deg, den_deg)
    logger.debug(f"Reconstructed {result} from {K} counts")
    return result


def zeta_reconstruct_minimal(counts: Sequence[int]) -> RationalFunction:
    """
    Scan total degree upward and return the first unique consistent solution

    Raises:
        NoSolutionWithinBounds: If no bounds with num + den + 1 <= K work
    """
    K = len(counts)
    for total in range(K):
        for num_deg in range(total + 1):
            den_deg = total - num_deg
            if num_deg + den_deg + 1 > K:
                continue
            try:
                return zeta_reconstruct(counts, num_deg, den_deg)
            except (NoSolutionWithinBounds, AmbiguousSolution):
                continue
    raise NoSolutionWithinBounds(K - 1, K - 1)


# ==========================================
# COHOMOLOGY TABLE
# ==========================================

# Eigenvalues of Frobenius on compactly supported cohomology, as powers of q:
# (numerator exponents, denominator exponents) of prod (1 - q^k T)
COHOMOLOGY_TABLE = {
    SCHEME_A1: ((), (1,)),
    SCHEME_GM: ((0,), (1,)),
    SCHEME_P1: ((), (0, 1)),
}

_VALIDATED: Dict[Tuple[str, int, int], RationalFunction] = {}
_VALIDATED_LOCK = threading.Lock()


def table_scheme_name(X: Scheme) -> Optional[str]:
    """Name of the tabulated curve X is, if any"""
    if X.name in COHOMOLOGY_TABLE and X == scheme_builtin(X.name, X.base):
        return X.name
    return None


def table_zeta(X: Scheme) -> RationalFunction:
    """
    The tabulated zeta function of A1, Gm or P1, checked once per field
    against reconstruction from brute-force counts

    Raises:
        UnsupportedScheme: If X is not one of the tabulated curves
    """
    name = table_scheme_name(X)
    if name is None:
        raise UnsupportedScheme(str(X))
    key = (name, X.base.p, X.base.nu)
    with _VALIDATED_LOCK:
        if key in _VALIDATED:
            return _VALIDATED[key]
        q = X.base.q
        numerator, denominator = COHOMOLOGY_TABLE[name]
        expected = RationalFunction.from_linear_factors([q ** k for k in numerator], [q ** k for k in denominator])
        K = expected.num_degree + expected.den_degree + 2
        counts = [scheme_point_counts(X, n) for n in range(1, K + 1)]
        found = zeta_reconstruct(counts, expected.num_degree, expected.den_degree)
        if found != expected:
            raise LFunctionError(f"Cohomology table entry {expected} for {X} disagrees with counts ({found})")
        logger.info(f"Validated Z({X}) = {expected}")
        _VALIDATED[key] = expected
        return expected
