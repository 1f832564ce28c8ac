"""
Trace formula verification

Compares the Euler product of a sheaf against independently computed global
sides. Each method produces a verdict; methods that do not apply to the given
scheme and sheaf are skipped.
"""
import logging
import math
import time
from typing import Dict, List, Optional, Sequence

import numpy as np

from lfunctions.algebra.ff import ff_extend, ff_norm_array, ff_root_of_unity
from lfunctions.algebra.k1 import K1Class, Verdict, k1_det, k1_equal
from lfunctions.algebra.ring import GroupRing, ProductRing, RingDescriptor, ZModRing, hensel_root_of_unity
from lfunctions.algebra.series import SeriesRing, TruncSeries, truncate, ts_log_derivative
from lfunctions.constants import (
    COVERING_KUMMER,
    METHOD_CHARACTER_PRODUCT,
    METHOD_COVERING_ZETA,
    METHOD_DIM0,
    METHOD_OPEN_CLOSED,
    METHOD_POWER_SUMS,
    METHOD_TABLE,
    METHOD_TRUNCATION,
    REP_REGULAR,
    REP_TRIVIAL,
    VERDICT_DISTINGUISHED,
    VERDICT_EQUAL_CERTIFIED,
)
from lfunctions.exceptions import LFunctionsError, NoApplicableMethod, PNotInvertible
from lfunctions.geometry.polynomials import Polynomial
from lfunctions.geometry.sheaf import (
    SheafComplex,
    SheafRep,
    covering_point_counts,
    fibre_point_counts,
    frob_classes,
    sheaf_character,
    sheaf_restrict,
)
from lfunctions.geometry.variety import (
    Scheme,
    _blocks,
    _chart_block,
    _check_budget,
    scheme_closed_points,
    scheme_is_zero_dimensional,
    scheme_open_closed_split,
)
from lfunctions.services.lfunction_service import GlobalSide, LFunctionService, LReport, Sheaf
from lfunctions.services.zeta_service import table_scheme_name, zeta_series_into

logger = logging.getLogger(__name__)

ALL_METHODS = (
    METHOD_DIM0,
    METHOD_TABLE,
    METHOD_COVERING_ZETA,
    METHOD_CHARACTER_PRODUCT,
    METHOD_POWER_SUMS,
    METHOD_TRUNCATION,
    METHOD_OPEN_CLOSED,
)


def _coefficient_modulus(ring: RingDescriptor) -> int:
    if isinstance(ring, ZModRing):
        return ring.m
    if isinstance(ring, GroupRing):
        return ring.base.m
    if isinstance(ring, ProductRing):
        return math.prod(_coefficient_modulus(f) for f in ring.factors)
    return ring.characteristic


def check_p_invertible(X: Scheme, ring: RingDescriptor) -> None:
    """
    Raises:
        PNotInvertible: If the characteristic of the base field is not a unit in ring
    """
    if math.gcd(X.base.p, _coefficient_modulus(ring)) != 1:
        raise PNotInvertible(X.base.p, ring)


def _series_verdict(left: TruncSeries, right: TruncSeries, what: str) -> Verdict:
    if left == right:
        return Verdict(VERDICT_EQUAL_CERTIFIED, f'{what} coincide')
    return Verdict(VERDICT_DISTINGUISHED, f'{what} differ', what)


def _sheaf_of(F: Sheaf) -> Optional[SheafRep]:
    return F if isinstance(F, SheafRep) else None


class VerificationService:
    """
    Service checking L_F(F, T) against global sides, one verdict per method

    Usage:
        report = VerificationService().verify_trace_formula(F, X, 8)
        report.verdicts()['dim0'].level
    """

    def __init__(self, threads: Optional[int] = None, lfunctions: Optional[LFunctionService] = None):
        self.lfunctions = lfunctions or LFunctionService(threads)
        logger.debug("VerificationService initialized")

    # ==========================================
    # APPLICABILITY
    # ==========================================

    def applicable_methods(self, F: Sheaf, X: Scheme, cut: Optional[Polynomial] = None) -> List[str]:
        sheaf = _sheaf_of(F)
        commutative = F.ring.is_commutative
        methods = []
        if scheme_is_zero_dimensional(X) and sheaf is not None:
            methods.append(METHOD_DIM0)
        if sheaf is not None and sheaf.builder == REP_TRIVIAL and table_scheme_name(X):
            methods.append(METHOD_TABLE)
        kummer = sheaf is not None and sheaf.covering.kind == COVERING_KUMMER
        if kummer and commutative and sheaf.builder == REP_REGULAR:
            methods.append(METHOD_COVERING_ZETA)
        if kummer and isinstance(F.ring, ZModRing) and self._character_root(sheaf) is not None:
            methods.append(METHOD_CHARACTER_PRODUCT)
        if sheaf is not None and commutative:
            methods.append(METHOD_POWER_SUMS)
        methods.append(METHOD_TRUNCATION)
        if cut is not None and len(X.charts) == 1:
            methods.append(METHOD_OPEN_CLOSED)
        return methods

    def _character_root(self, F: SheafRep):
        r = F.group.order
        try:
            return hensel_root_of_unity(F.ring, r)
        except LFunctionsError:
            return None

    # ==========================================
    # ENTRY POINT
    # ==========================================

    def verify_trace_formula(self, F: Sheaf, X: Scheme, m: int, methods: Optional[Sequence[str]] = None,
                             cut: Optional[Polynomial] = None) -> LReport:
        """
        Compute the Euler product and compare it with every applicable global side

        Args:
            F: Sheaf or complex on X
            X (Scheme): Base scheme
            m (int): Truncation order
            methods (list): Methods to run, defaults to every applicable one
            cut (Polynomial): Cut for the open/closed method

        Returns:
            LReport: With one GlobalSide per method run

        Raises:
            PNotInvertible: If p is not invertible in the coefficient ring
            NoApplicableMethod: If none of the requested methods applies
        """
        check_p_invertible(X, F.ring)
        applicable = self.applicable_methods(F, X, cut)
        requested = list(methods) if methods else applicable
        selected = []
        for method in requested:
            if method in applicable:
                selected.append(method)
            else:
                logger.warning(f"Skipping {method}: not applicable to {X}")
        if not selected:
            raise NoApplicableMethod(', '.join(requested))

        report = self.lfunctions.l_function(F, X, m)
        runners = {
            METHOD_DIM0: self._dim0,
            METHOD_TABLE: self._table,
            METHOD_COVERING_ZETA: self._covering_zeta,
            METHOD_CHARACTER_PRODUCT: self._character_product,
            METHOD_POWER_SUMS: self._power_sums,
            METHOD_TRUNCATION: self._truncation,
            METHOD_OPEN_CLOSED: lambda r: self._open_closed(r, cut),
        }
        for method in selected:
            started = time.monotonic()
            side = runners[method](report)
            report.global_sides.append(side)
            logger.info(f"{method}: {side.verdict.level} ({time.monotonic() - started:.3f}s)")
        return report

    # ==========================================
    # METHODS
    # ==========================================

    def _dim0(self, report: LReport) -> GlobalSide:
        value = self.lfunctions.global_side_dim0(report.sheaf, report.scheme, report.m)
        return GlobalSide(METHOD_DIM0, k1_equal(report.euler_product, value), value)

    def _table(self, report: LReport) -> GlobalSide:
        value = self.lfunctions.global_side_table(report.sheaf, report.scheme, report.m)
        return GlobalSide(METHOD_TABLE, k1_equal(report.euler_product, value), value)

    def _covering_counts(self, F: SheafRep, m: int) -> List[int]:
        return [covering_point_counts(F.covering, n) for n in range(1, m)]

    def _covering_zeta(self, report: LReport) -> GlobalSide:
        """
        L(X, regular) against Z(Y): factorwise through fibre counts, then globally
        through the point counts of Y
        """
        F, X, m = report.sheaf, report.scheme, report.m
        points = scheme_closed_points(X, m - 1, self.lfunctions.threads)
        classes = frob_classes(F.covering, points)
        for x, g in zip(points, classes):
            R = F.rho[g]
            power = R
            for j, count in enumerate(fibre_point_counts(F.covering, x, m), start=1):
                if power.trace() != F.ring.from_int(count):
                    verdict = Verdict(VERDICT_DISTINGUISHED, f'fibre over {x} has {count} points in degree {j}',
                                      'fibre')
                    return GlobalSide(METHOD_COVERING_ZETA, verdict)
                power = power * R

        counts = self._covering_counts(F, m)
        zeta = zeta_series_into(counts, F.ring, m)
        value = K1Class(zeta.ring, zeta)
        verdict = k1_equal(report.euler_product, value)
        return GlobalSide(METHOD_COVERING_ZETA, verdict, value, {'counts': counts})

    def _character_product(self, report: LReport) -> GlobalSide:
        """prod over the characters chi of L(X, chi) against Z(Y) reduced into Lambda"""
        F, X, m = report.sheaf, report.scheme, report.m
        zeta_root = self._character_root(F)
        series_ring = SeriesRing(F.ring, m)
        product = series_ring.one
        for k in range(F.group.order):
            chi = sheaf_character(F.covering, F.ring, zeta_root, power=k)
            product = product * k1_det(self.lfunctions.l_function(chi, X, m).euler_product)
        counts = self._covering_counts(F, m)
        expected = zeta_series_into(counts, F.ring, m)
        verdict = _series_verdict(product, expected, 'character product and covering zeta')
        return GlobalSide(METHOD_CHARACTER_PRODUCT, verdict, K1Class(series_ring, product), {'counts': counts})

    def _power_sums(self, report: LReport) -> GlobalSide:
        F, X, m = report.sheaf, report.scheme, report.m
        direct = self.lfunctions.power_sums(F, X, m)
        verdict = _series_verdict(direct, ts_log_derivative(report.series_form), 'power sums')
        if verdict.is_equal and F.covering.kind == COVERING_KUMMER:
            geometric = self.geometric_trace_sums(F, m)
            verdict = _series_verdict(direct, geometric, 'closed point and geometric point trace sums')
        return GlobalSide(METHOD_POWER_SUMS, verdict, direct)

    def _truncation(self, report: LReport) -> GlobalSide:
        longer = self.lfunctions.l_function(report.sheaf, report.scheme, report.m + 1).euler_product
        value = K1Class(report.euler_product.ring, truncate(longer.rep, report.m))
        return GlobalSide(METHOD_TRUNCATION, k1_equal(report.euler_product, value), value)

    def _open_closed(self, report: LReport, cut: Polynomial) -> GlobalSide:
        F, X, m = report.sheaf, report.scheme, report.m
        U, Z = scheme_open_closed_split(X, cut)
        pieces = []
        for piece in (U, Z):
            if isinstance(F, SheafComplex):
                restricted = SheafComplex(tuple((i, sheaf_restrict(term, piece)) for i, term in F.terms))
            else:
                restricted = sheaf_restrict(F, piece)
            pieces.append(self.lfunctions.l_function(restricted, piece, m).euler_product)
        value = pieces[0] * pieces[1]
        return GlobalSide(METHOD_OPEN_CLOSED, k1_equal(report.euler_product, value), value)

    # ==========================================
    # DIRECT SUMS OVER GEOMETRIC POINTS
    # ==========================================

    def geometric_trace_sums(self, F: SheafRep, m: int) -> TruncSeries:
        """
        sum over x in X(F_{q^n}) of trace(rho(g_x)) as the coefficient of T^n

        The class g_x of each geometric point is read off from the norm of f(x)
        down to F_q, without passing through closed points.
        """
        cov = F.covering
        base = cov.base.base
        ring = F.ring
        zeta = ff_root_of_unity(base, cov.r)
        logs: Dict[int, int] = {}
        power = base.one
        for e in range(cov.r):
            logs[power.value] = e
            power = power * zeta
        traces = [F.rho[g].trace() for g in range(F.group.order)]

        coeffs = [ring.zero] * m
        for n in range(1, m):
            K = ff_extend(base, n)
            hits = np.zeros(cov.r, dtype=np.int64)
            for chart in cov.base.charts:
                size = _check_budget(chart, K)
                for block in _blocks(size):
                    _, coords, mask = _chart_block(chart, K, *block)
                    if not mask.any():
                        continue
                    values = cov.f.evaluate(K, [c[mask] for c in coords])
                    symbols = (base.GF(ff_norm_array(K, values)) ** ((base.q - 1) // cov.r)).view(np.ndarray)
                    found, counts = np.unique(symbols, return_counts=True)
                    for s, count in zip(found, counts):
                        hits[(-logs[int(s)]) % cov.r] += int(count)
            total = ring.zero
            for g in range(cov.r):
                total = total + traces[g] * int(hits[g])
            coeffs[n] = total
        return SeriesRing(ring, m).make(coeffs)
