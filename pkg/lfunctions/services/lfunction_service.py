"""
Euler factors and L-functions as K1 classes over Lambda[T]/(T^m)
"""
import logging
import threading
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from lfunctions.algebra.ff import FqField
from lfunctions.algebra.k1 import K1Class, Move, ReductionCertificate, Verdict, k1_det, k1_of_matrix
from lfunctions.algebra.matrices import Matrix
from lfunctions.algebra.ring import BaseRing
from lfunctions.algebra.series import (
    SeriesRing,
    TruncSeries,
    ts_geom_inverse,
    ts_one_minus,
)
from lfunctions.constants import MOVE_ADDCOL, MOVE_ADDROW, REP_TRIVIAL
from lfunctions.exceptions import (
    LFunctionError,
    NoncommutativeRing,
    SchemeError,
    SheafError,
    UnsupportedScheme,
)
from lfunctions.geometry.sheaf import SheafComplex, SheafRep, frob_class, frob_classes
from lfunctions.geometry.variety import (
    ClosedPoint,
    Scheme,
    _threads,
    scheme_closed_points,
    scheme_point_degree_bound,
)
from lfunctions.services.zeta_service import table_zeta

logger = logging.getLogger(__name__)

Sheaf = Union[SheafRep, SheafComplex]


@dataclass
class GlobalSide:
    """One independently computed side of the trace formula and its verdict"""

    method: str
    verdict: Verdict
    value: Optional[Any] = None
    detail: Dict[str, Any] = field(default_factory=dict)


@dataclass
class LReport:
    """
    An L-function and whatever global sides were compared against it

    Attributes:
        scheme: The base scheme X
        sheaf: The sheaf or signed complex
        m: Truncation order
        euler_product: Class in K1(Lambda[T]/(T^m))
        series_form: k1_det of euler_product for commutative Lambda
        global_sides: Verdicts per verification method
        metadata: Closed points per degree and similar counts
    """

    scheme: Scheme
    sheaf: Sheaf
    m: int
    euler_product: K1Class
    series_form: Optional[TruncSeries] = None
    global_sides: List[GlobalSide] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def ring(self) -> BaseRing:
        return self.euler_product.ring.base

    def verdicts(self) -> Dict[str, Verdict]:
        return {side.method: side.verdict for side in self.global_sides}


def _field_degree(over: Optional[FqField], X: Scheme) -> int:
    """e with q = q0^e when X is viewed over the subfield F_{q0}"""
    if over is None:
        return 1
    base = X.base
    if over.p != base.p or base.nu % over.nu:
        raise SchemeError(f"{over} is not a subfield of {base}")
    return base.nu // over.nu


def _block_frobenius(R: Matrix, d: int) -> Matrix:
    """
    The d x d block matrix with R in block (0, d-1) and identities below the diagonal

    This is Frobenius on the sections over the d geometric points of a closed
    point of degree d.
    """
    ring, n = R.ring, R.n
    rows = [[ring.zero] * (d * n) for _ in range(d * n)]
    for s in range(n):
        for t in range(n):
            rows[s][(d - 1) * n + t] = R.rows[s][t]
    for i in range(1, d):
        for s in range(n):
            rows[i * n + s][(i - 1) * n + s] = ring.one
    return Matrix(ring, rows)


def _block_moves(R: Matrix, d: int, series_ring: SeriesRing, offset: int = 0) -> List[Move]:
    """
    Elementary moves taking I - F T, F the block Frobenius, to diag(I, ..., I, I - R T^d)

    Row i gains T^(i-j) times row j for j < i, which leaves row i with I on the
    diagonal and -R T^(i+1) in the last block; columns then clear the last block.
    """
    n = R.n
    base = series_ring.base
    moves = []
    for i in range(d - 1, 0, -1):
        for j in range(i):
            factor = series_ring.monomial(base.one, i - j)
            for s in range(n):
                moves.append(Move(MOVE_ADDROW, offset + i * n + s, offset + j * n + s, factor))
    for i in range(d - 1):
        for s in range(n):
            for t in range(n):
                if R.rows[s][t].is_zero():
                    continue
                factor = series_ring.monomial(R.rows[s][t], i + 1)
                moves.append(Move(MOVE_ADDCOL, offset + (d - 1) * n + t, offset + i * n + s, factor))
    return moves


class LFunctionService:
    """
    Service computing Euler factors, L-functions and the dimension zero and
    tabulated global sides

    Euler factors are cached per (sheaf, degree, Frobenius class, m).
    """

    def __init__(self, threads: Optional[int] = None):
        self.threads = _threads(threads)
        self._factors: Dict[Tuple, Tuple[SheafRep, K1Class]] = {}
        self._lock = threading.Lock()
        logger.debug(f"LFunctionService initialized with {self.threads} workers")

    # ==========================================
    # EULER FACTORS
    # ==========================================

    def _factor(self, F: SheafRep, d: int, g: int, m: int) -> K1Class:
        key = (id(F), d, g, m)
        with self._lock:
            cached = self._factors.get(key)
        if cached is not None:
            return cached[1]
        inverse = ts_geom_inverse(F.rho[g], d, m)
        factor = k1_of_matrix(inverse)
        with self._lock:
            # the entry holds F so its id is not reused while cached
            self._factors[key] = (F, factor)
        return factor

    def euler_factor(self, F: SheafRep, x: ClosedPoint, m: int, over: Optional[FqField] = None) -> K1Class:
        """
        The class of (I - rho(Frob_x) T^deg x)^-1 in K1(Lambda[T]/(T^m))

        Args:
            F (SheafRep): The sheaf
            x (ClosedPoint): Closed point of F's base
            m (int): Truncation order
            over (FqField): Subfield the degree is measured over, defaults to the base

        Raises:
            PointNotOnBase: If x does not lie on the base
        """
        g = frob_class(F.covering, x)
        d = x.degree * _field_degree(over, F.covering.base)
        return self._factor(F, d, g, m)

    def euler_factor_block(self, F: SheafRep, x: ClosedPoint, m: int,
                           over: Optional[FqField] = None) -> Tuple[K1Class, ReductionCertificate]:
        """
        The Euler factor from the block form I - Frob T on all geometric points of x

        The certificate records the elementary moves from I - Frob T to
        diag(I, ..., I, I - rho(Frob_x) T^d); the class is carried by the
        representative of the geometric inverse of the last block, so it agrees
        with euler_factor once the certificate replays.

        Returns:
            Tuple of the class (carrying the certificate) and the certificate
        """
        g = frob_class(F.covering, x)
        d = x.degree * _field_degree(over, F.covering.base)
        R = F.rho[g]
        series_ring = SeriesRing(F.ring, m)

        source = ts_one_minus(_block_frobenius(R, d), 1, m)
        moves = _block_moves(R, d, series_ring)
        rows = source.to_lists()
        for move in moves:
            move.apply(rows)
        target = Matrix(series_ring, rows)

        last = ts_one_minus(R, d, m)
        expected = Matrix.block_diagonal(series_ring, [Matrix.identity(series_ring, (d - 1) * R.n), last])
        if target != expected:
            raise LFunctionError(f"Block reduction at {x} does not reach diag(I, I - R T^{d})")
        inverse = ts_geom_inverse(R, d, m)
        if last * inverse != Matrix.identity(series_ring, R.n):
            raise LFunctionError(f"Geometric series does not invert the last block at {x}")

        certificate = ReductionCertificate(source, moves, target)
        certificate.replay()
        rep = k1_of_matrix(inverse).rep
        return K1Class(series_ring, rep, certificate), certificate

    # ==========================================
    # L-FUNCTIONS
    # ==========================================

    def _points(self, X: Scheme, max_deg: int) -> List[ClosedPoint]:
        if max_deg < 1:
            return []
        return scheme_closed_points(X, max_deg, self.threads)

    def _euler_product(self, F: SheafRep, X: Scheme, m: int, e: int = 1) -> Tuple[K1Class, Dict]:
        if F.covering.base != X:
            raise SheafError(f"Sheaf lives on {F.covering.base}, not on {X}")
        series_ring = SeriesRing(F.ring, m)
        points = self._points(X, (m - 1) // e)
        classes = frob_classes(F.covering, points)
        keys = [(x.degree * e, g) for x, g in zip(points, classes)]

        unique = sorted(set(keys))
        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            factors = dict(zip(unique, executor.map(lambda key: self._factor(F, key[0], key[1], m), unique)))

        result = K1Class(series_ring, series_ring.one)
        if F.ring.is_commutative:
            for key, count in sorted(Counter(keys).items()):
                result = result * factors[key] ** count
        else:
            # degree-major, representative-minor
            for key in keys:
                result = result * factors[key]

        by_degree = Counter(x.degree for x in points)
        metadata = {'closed_points': {str(d): by_degree[d] for d in sorted(by_degree)}}
        return result, metadata

    def _complex_product(self, F: Sheaf, X: Scheme, m: int, e: int = 1) -> Tuple[K1Class, Dict]:
        if isinstance(F, SheafRep):
            return self._euler_product(F, X, m, e)
        result, metadata = None, {}
        for degree, term in F.terms:
            product, metadata = self._euler_product(term, X, m, e)
            product = product if degree % 2 == 0 else product.inverse()
            result = product if result is None else result * product
        if result is None:
            raise SheafError("Empty complex")
        return result, metadata

    def l_function(self, F: Sheaf, X: Scheme, m: int) -> LReport:
        """
        Product of the Euler factors of all closed points of degree < m

        Points of degree >= m contribute 1 mod T^m. For complexes the factor of
        the degree i term enters with sign (-1)^i.

        Args:
            F: SheafRep on X, or a SheafComplex
            X (Scheme): Base scheme
            m (int): Truncation order

        Returns:
            LReport: Euler product, series form for commutative Lambda, point metadata
        """
        started = time.monotonic()
        product, metadata = self._complex_product(F, X, m)
        series = k1_det(product) if product.ring.is_commutative else None
        logger.info(f"L({X}, m={m}) computed in {time.monotonic() - started:.3f}s")
        return LReport(X, F, m, product, series, metadata=metadata)

    def l_subfield_view(self, F: Sheaf, X: Scheme, over: FqField, m: int) -> K1Class:
        """
        The L-function of X regarded over the subfield `over`

        Every closed point of degree d over F_q has degree d e over F_{q0},
        with the same Frobenius matrices.
        """
        e = _field_degree(over, X)
        product, _ = self._complex_product(F, X, m, e)
        return product

    def power_sums(self, F: SheafRep, X: Scheme, m: int) -> TruncSeries:
        """
        sum_{x : deg x | n} deg x * trace(rho(Frob_x)^(n / deg x)) as the coefficient of T^n

        Equals the logarithmic derivative of the series form of l_function.

        Raises:
            NoncommutativeRing: If Lambda is not commutative
        """
        if not F.ring.is_commutative:
            raise NoncommutativeRing(F.ring)
        ring = F.ring
        coeffs = [ring.zero] * m
        points = self._points(X, m - 1)
        for x, g in zip(points, frob_classes(F.covering, points)):
            d = x.degree
            R = F.rho[g]
            power = R
            for n in range(d, m, d):
                coeffs[n] = coeffs[n] + power.trace() * d
                power = power * R
        return SeriesRing(ring, m).make(coeffs)

    # ==========================================
    # GLOBAL SIDES
    # ==========================================

    def global_side_dim0(self, F: SheafRep, X: Scheme, m: int,
                         over: Optional[FqField] = None) -> K1Class:
        """
        [I - Frob T]^-1 on the sections over the algebraic closure of a zero
        dimensional scheme

        The sections are the sum over closed points x of Lambda^(rank * deg x);
        Frobenius permutes the deg x geometric points cyclically and returns to
        the first through rho(Frob_x). The representative is reduced from the
        assembled section matrix alone; the certificate carried by the class
        reduces that matrix to its per-point blocks I - rho(Frob_x) T^deg x.

        Raises:
            NotZeroDimensional: If X has a chart of positive dimension
        """
        bound = scheme_point_degree_bound(X)
        e = _field_degree(over, X)
        series_ring = SeriesRing(F.ring, m)
        points = scheme_closed_points(X, bound, self.threads)
        classes = frob_classes(F.covering, points)

        blocks, lasts, moves = [], [], []
        offset = 0
        for x, g in zip(points, classes):
            d = x.degree * e
            R = F.rho[g]
            blocks.append(_block_frobenius(R, d))
            moves.extend(_block_moves(R, d, series_ring, offset))
            lasts.append(Matrix.identity(series_ring, (d - 1) * R.n))
            lasts.append(ts_one_minus(R, d, m))
            offset += d * R.n

        if not blocks:
            return K1Class(series_ring, series_ring.one)
        frobenius = Matrix.block_diagonal(F.ring, blocks)
        source = ts_one_minus(frobenius, 1, m)
        rep = k1_of_matrix(ts_geom_inverse(frobenius, 1, m)).rep
        rows = source.to_lists()
        for move in moves:
            move.apply(rows)
        target = Matrix(series_ring, rows)
        if target != Matrix.block_diagonal(series_ring, lasts):
            raise LFunctionError(f"Sections of {X} do not split into point blocks")
        certificate = ReductionCertificate(source, moves, target)
        logger.info(f"Dimension zero global side of {X}: {frobenius.n} sections over {len(points)} points")
        return K1Class(series_ring, rep, certificate)

    def global_side_table(self, F: SheafRep, X: Scheme, m: int) -> K1Class:
        """
        The class of the tabulated zeta function of A1, Gm or P1, raised to the rank

        Raises:
            UnsupportedScheme: If F is not constant or X is not tabulated
        """
        if F.builder != REP_TRIVIAL:
            raise UnsupportedScheme(f"{X} with a non-constant sheaf")
        zeta = table_zeta(X)
        series = zeta.reduce_into(F.ring, m)
        series_ring = SeriesRing(F.ring, m)
        return K1Class(series_ring, series ** F.rank)
