"""
Verification Service Tests

Test Coverage:
1. ApplicabilityTestCase - check_p_invertible, applicable_methods
2. VerificationTestCase - verify_trace_formula per method
3. VerificationFailureTestCase - skipped methods, missing methods, distinguished sides
"""
from unittest import mock

from django.test import SimpleTestCase

from lfunctions.algebra.ff import ff_make
from lfunctions.algebra.groups import build_group
from lfunctions.algebra.k1 import K1Class, k1_det
from lfunctions.algebra.ring import ZModRing
from lfunctions.algebra.series import SeriesRing
from lfunctions.constants import (
    METHOD_CHARACTER_PRODUCT,
    METHOD_COVERING_ZETA,
    METHOD_DIM0,
    METHOD_OPEN_CLOSED,
    METHOD_POWER_SUMS,
    METHOD_TABLE,
    METHOD_TRUNCATION,
    VERDICT_DISTINGUISHED,
    VERDICT_EQUAL_CERTIFIED,
)
from lfunctions.exceptions import NoApplicableMethod, PNotInvertible
from lfunctions.geometry.polynomials import Polynomial
from lfunctions.geometry.sheaf import (
    cov_kummer,
    cov_table,
    cov_trivial,
    sheaf_character,
    sheaf_constant,
    sheaf_group_ring,
    sheaf_regular,
)
from lfunctions.geometry.variety import scheme_builtin, scheme_closed_points, scheme_disjoint_union
from lfunctions.services import VerificationService
from lfunctions.services.verification_service import check_p_invertible
from lfunctions.services.zeta_service import RationalFunction


def trivial(X, ring):
    return sheaf_constant(cov_trivial(X), ring)


def kummer_gm_f5():
    F5 = ff_make(5, 1)
    Gm = scheme_builtin('Gm', F5)
    return Gm, cov_kummer(Gm, 4, Polynomial.variable(F5, 1, 0))


class ApplicabilityTestCase(SimpleTestCase):
    """Test case for choosing verification methods"""

    def setUp(self):
        """Set up test data"""
        self.service = VerificationService(threads=1)
        self.Z9 = ZModRing(9)
        self.Z13 = ZModRing(13)

    def test_p_invertible(self):
        """Test 3 is not invertible in Z/9"""
        check_p_invertible(scheme_builtin('A1', ff_make(2, 1)), self.Z9)
        with self.assertRaises(PNotInvertible):
            check_p_invertible(scheme_builtin('A1', ff_make(3, 1)), self.Z9)

    def test_zero_dimensional(self):
        """Test point(2) gets the dimension zero method"""
        X = scheme_builtin('point(2)', ff_make(2, 1))
        methods = self.service.applicable_methods(trivial(X, self.Z9), X)
        self.assertEqual(methods, [METHOD_DIM0, METHOD_POWER_SUMS, METHOD_TRUNCATION])

    def test_tabulated_curve(self):
        """Test constant sheaves on P1 get the table method"""
        P1 = scheme_builtin('P1', ff_make(2, 1))
        self.assertIn(METHOD_TABLE, self.service.applicable_methods(trivial(P1, self.Z9), P1))

    def test_regular_kummer(self):
        """Test the regular Kummer sheaf gets both covering methods"""
        Gm, cov = kummer_gm_f5()
        methods = self.service.applicable_methods(sheaf_regular(cov, self.Z13), Gm)
        self.assertIn(METHOD_COVERING_ZETA, methods)
        self.assertIn(METHOD_CHARACTER_PRODUCT, methods)
        self.assertNotIn(METHOD_TABLE, methods)

    def test_character_needs_root(self):
        """Test Z/9 has no root of unity of order 4"""
        Gm, cov = kummer_gm_f5()
        methods = self.service.applicable_methods(sheaf_regular(cov, self.Z9), Gm)
        self.assertNotIn(METHOD_CHARACTER_PRODUCT, methods)

    def test_open_closed_needs_cut(self):
        """Test the open/closed method needs a cut on a single chart"""
        A1 = scheme_builtin('A1', ff_make(5, 1))
        cut = Polynomial.parse('x', A1.base, 1)
        self.assertIn(METHOD_OPEN_CLOSED, self.service.applicable_methods(trivial(A1, self.Z9), A1, cut))
        P1 = scheme_builtin('P1', ff_make(5, 1))
        self.assertNotIn(METHOD_OPEN_CLOSED, self.service.applicable_methods(trivial(P1, self.Z9), P1, cut))


class VerificationTestCase(SimpleTestCase):
    """Test case for verifying the trace formula"""

    def setUp(self):
        """Set up test data"""
        self.service = VerificationService(threads=2)
        self.Z9 = ZModRing(9)

    def assertAllCertified(self, report, methods):
        verdicts = report.verdicts()
        self.assertEqual(sorted(verdicts), sorted(methods))
        for method, verdict in verdicts.items():
            self.assertEqual(verdict.level, VERDICT_EQUAL_CERTIFIED, f'{method}: {verdict.reason}')

    def test_point(self):
        """Test point(2) over F_2"""
        X = scheme_builtin('point(2)', ff_make(2, 1))
        report = self.service.verify_trace_formula(trivial(X, self.Z9), X, 6)
        self.assertAllCertified(report, [METHOD_DIM0, METHOD_POWER_SUMS, METHOD_TRUNCATION])

    def test_point_noncommutative(self):
        """Test the group-ring sheaf over Z/4[S3] on a rational point"""
        X = scheme_builtin('point(1)', ff_make(3, 1))
        x, = scheme_closed_points(X, 1)
        F = sheaf_group_ring(cov_table(X, build_group('S3'), {x: 3}), ZModRing(4))
        report = self.service.verify_trace_formula(F, X, 4)
        self.assertAllCertified(report, [METHOD_DIM0, METHOD_TRUNCATION])

    def test_points_group_ring_grid(self):
        """Test dimension zero schemes over F_5 with group-ring sheaves over Z/9[C2] and Z/4[C2]"""
        F5 = ff_make(5, 1)
        schemes = {
            'point(1)': scheme_builtin('point(1)', F5),
            'point(2)': scheme_builtin('point(2)', F5),
            'point(1) + point(3)': scheme_disjoint_union(scheme_builtin('point(1)', F5),
                                                         scheme_builtin('point(3)', F5)),
        }
        C2 = build_group('C2')
        for name, X in schemes.items():
            points = scheme_closed_points(X, 3)
            cov = cov_table(X, C2, {x: (i + 1) % 2 for i, x in enumerate(points)})
            for base in (ZModRing(9), ZModRing(4)):
                with self.subTest(scheme=name, m=base.m):
                    report = self.service.verify_trace_formula(sheaf_group_ring(cov, base), X, 8, [METHOD_DIM0])
                    self.assertAllCertified(report, [METHOD_DIM0])

    def test_projective_line(self):
        """Test P1 over F_2 against its tabulated zeta function"""
        P1 = scheme_builtin('P1', ff_make(2, 1))
        report = self.service.verify_trace_formula(trivial(P1, self.Z9), P1, 8, [METHOD_TABLE])
        self.assertAllCertified(report, [METHOD_TABLE])

    def test_regular_kummer(self):
        """Test the regular C4 sheaf on Gm over F_5 against y^4 = x"""
        Gm, cov = kummer_gm_f5()
        report = self.service.verify_trace_formula(sheaf_regular(cov, ZModRing(13)), Gm, 8,
                                                   [METHOD_COVERING_ZETA, METHOD_CHARACTER_PRODUCT])
        self.assertAllCertified(report, [METHOD_COVERING_ZETA, METHOD_CHARACTER_PRODUCT])
        self.assertEqual(report.global_sides[0].detail['counts'][0], 4)

    def test_regular_kummer_is_covering_zeta(self):
        """Test det L(Gm, Z/13[C4]) is Z(y^4 = x, x != 0) = (1 - T)/(1 - 5T) mod T^8"""
        Gm, cov = kummer_gm_f5()
        Z13 = ZModRing(13)
        report = self.service.lfunctions.l_function(sheaf_regular(cov, Z13), Gm, 8)
        expected = RationalFunction.make([1, -1], [1, -5]).reduce_into(Z13, 8)
        self.assertEqual(k1_det(report.euler_product), expected)

    def test_character_power_sums_every_power(self):
        """Test trace sums for every character of C4 on Gm over F_5 mod T^8"""
        Gm, cov = kummer_gm_f5()
        Z13 = ZModRing(13)
        for power in range(4):
            with self.subTest(power=power):
                F = sheaf_character(cov, Z13, Z13.from_int(5), power)
                report = self.service.verify_trace_formula(F, Gm, 8, [METHOD_POWER_SUMS])
                self.assertAllCertified(report, [METHOD_POWER_SUMS])
                self.assertEqual(self.service.geometric_trace_sums(F, 8),
                                 self.service.lfunctions.power_sums(F, Gm, 8))

    def test_character_power_sums(self):
        """Test closed point and geometric point trace sums agree for a Kummer character"""
        Gm, cov = kummer_gm_f5()
        Z13 = ZModRing(13)
        F = sheaf_character(cov, Z13, Z13.from_int(5))
        report = self.service.verify_trace_formula(F, Gm, 4, [METHOD_POWER_SUMS])
        self.assertAllCertified(report, [METHOD_POWER_SUMS])
        self.assertEqual(self.service.geometric_trace_sums(F, 4), self.service.lfunctions.power_sums(F, Gm, 4))

    def test_open_closed(self):
        """Test A1 over F_5 cut at x = 0"""
        A1 = scheme_builtin('A1', ff_make(5, 1))
        cut = Polynomial.parse('x', A1.base, 1)
        report = self.service.verify_trace_formula(trivial(A1, self.Z9), A1, 4, [METHOD_OPEN_CLOSED], cut)
        self.assertAllCertified(report, [METHOD_OPEN_CLOSED])


class VerificationFailureTestCase(SimpleTestCase):
    """Test case for verification errors and failures"""

    def setUp(self):
        """Set up test data"""
        self.service = VerificationService(threads=1)
        self.Z9 = ZModRing(9)
        self.A1 = scheme_builtin('A1', ff_make(2, 1))

    def test_p_not_invertible(self):
        """Test verification refuses p = 3 with Z/9"""
        X = scheme_builtin('point(1)', ff_make(3, 1))
        with self.assertRaises(PNotInvertible):
            self.service.verify_trace_formula(trivial(X, self.Z9), X, 4)

    def test_skipped_method(self):
        """Test a method that does not apply is skipped with a warning"""
        with self.assertLogs('lfunctions.services.verification_service', level='WARNING') as logs:
            report = self.service.verify_trace_formula(trivial(self.A1, self.Z9), self.A1, 4,
                                                       [METHOD_DIM0, METHOD_TABLE])
        self.assertIn('Skipping dim0', logs.output[0])
        self.assertEqual(list(report.verdicts()), [METHOD_TABLE])

    def test_no_applicable_method(self):
        """Test a request with nothing applicable"""
        with self.assertLogs('lfunctions.services.verification_service', level='WARNING'):
            with self.assertRaises(NoApplicableMethod):
                self.service.verify_trace_formula(trivial(self.A1, self.Z9), self.A1, 4, [METHOD_DIM0])

    def test_distinguished_side(self):
        """Test a wrong global side is reported as distinguished"""
        series_ring = SeriesRing(self.Z9, 4)
        wrong = K1Class(series_ring, series_ring.make([self.Z9.one, self.Z9.one]))
        with mock.patch.object(self.service.lfunctions, 'global_side_table', return_value=wrong):
            report = self.service.verify_trace_formula(trivial(self.A1, self.Z9), self.A1, 4, [METHOD_TABLE])
        verdict = report.verdicts()[METHOD_TABLE]
        self.assertEqual(verdict.level, VERDICT_DISTINGUISHED)
        self.assertFalse(verdict.is_equal)
