"""
Serializer Tests

Test Coverage:
1. AlgebraSerializerTestCase - FieldSerializer, GroupSerializer, RingSerializer, parse_matrix
2. SchemeSerializerTestCase - parse_scheme, parse_polynomial
3. SheafSerializerTestCase - CoveringSerializer, RepresentationSerializer, parse_sheaf
4. JobSerializerTestCase - JobSerializer validation and defaults
5. ReportSerializerTestCase - report payload validation
"""
from django.test import SimpleTestCase, override_settings
from rest_framework.exceptions import ValidationError

from lfunctions.algebra.ff import ff_make
from lfunctions.algebra.groups import build_group
from lfunctions.algebra.ring import GroupRing, ProductRing, ZModRing
from lfunctions.constants import (
    COMMAND_K1,
    COMMAND_VERIFY,
    COVERING_KUMMER,
    METHOD_DIM0,
    REP_EXPLICIT,
    REP_REGULAR,
    SCHEMA_VERSION,
)
from lfunctions.geometry.sheaf import SheafComplex, frob_class
from lfunctions.geometry.variety import scheme_builtin, scheme_closed_points
from lfunctions.serializers import (
    FieldSerializer,
    GroupSerializer,
    JobSerializer,
    K1ReportSerializer,
    RingSerializer,
    ZetaReportSerializer,
    parse_matrix,
    parse_polynomial,
    parse_scheme,
    parse_sheaf,
)


class AlgebraSerializerTestCase(SimpleTestCase):
    """Test case for fields, groups, rings and matrices"""

    def test_field_from_q(self):
        """Test q = 9 resolves to p = 3, nu = 2"""
        serializer = FieldSerializer(data={'q': 9})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), ff_make(3, 2))

    def test_field_not_prime_power(self):
        """Test q = 6 is rejected"""
        self.assertFalse(FieldSerializer(data={'q': 6}).is_valid())
        self.assertFalse(FieldSerializer(data={}).is_valid())

    def test_field_modulus(self):
        """Test a modulus must match the canonical one"""
        self.assertTrue(FieldSerializer(data={'p': 2, 'nu': 3, 'modulus': [1, 1, 0, 1]}).is_valid())
        serializer = FieldSerializer(data={'p': 2, 'nu': 3, 'modulus': [1, 0, 1, 1]})
        self.assertFalse(serializer.is_valid())
        self.assertIn('modulus', serializer.errors)

    def test_group_by_table(self):
        """Test a table must match its declared order"""
        serializer = GroupSerializer(data={'order': 2, 'mult': [[0, 1], [1, 0]]})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save().order, 2)
        self.assertFalse(GroupSerializer(data={'order': 3, 'mult': [[0, 1], [1, 0]]}).is_valid())
        self.assertFalse(GroupSerializer(data={'mult': [[0, 0], [1, 1]]}).is_valid())

    def test_rings(self):
        """Test the three ring kinds"""
        cases = (
            ({'kind': 'zmod', 'm': 9}, ZModRing),
            ({'kind': 'group_ring', 'm': 4, 'group': 'S3'}, GroupRing),
            ({'kind': 'product', 'factors': [{'kind': 'zmod', 'm': 4}, {'kind': 'zmod', 'm': 9}]}, ProductRing),
        )
        for payload, kind in cases:
            serializer = RingSerializer(data=payload)
            self.assertTrue(serializer.is_valid(), serializer.errors)
            self.assertIsInstance(serializer.save(), kind)

    def test_ring_errors(self):
        """Test missing moduli, groups and factors"""
        self.assertIn('m', self._errors({'kind': 'zmod'}))
        self.assertIn('group', self._errors({'kind': 'group_ring', 'm': 4}))
        self.assertIn('factors', self._errors({'kind': 'product', 'factors': []}))

    @override_settings(LFUNCTIONS_RING_SIZE_LIMIT=100)
    def test_ring_too_large(self):
        """Test the ring size limit is reported as a validation error"""
        self.assertFalse(RingSerializer(data={'kind': 'group_ring', 'm': 4, 'group': 'S3'}).is_valid())

    def test_matrix(self):
        """Test matrices over group rings use coefficient lists"""
        ring = GroupRing(ZModRing(3), build_group('C2'))
        M = parse_matrix([[[1, 1], 0], [0, [0, 1]]], ring)
        self.assertEqual(M[0, 0], ring.element([1, 1]))
        with self.assertRaises(ValidationError):
            parse_matrix([[1, 2, 3], [4, 5, 6]], ZModRing(9))
        with self.assertRaises(ValidationError):
            parse_matrix([[1], [2, 3]], ZModRing(9))

    def _errors(self, payload):
        serializer = RingSerializer(data=payload)
        self.assertFalse(serializer.is_valid())
        return serializer.errors


class SchemeSerializerTestCase(SimpleTestCase):
    """Test case for schemes and polynomials"""

    def setUp(self):
        """Set up test data"""
        self.F3 = ff_make(3, 1)

    def test_builtin(self):
        """Test built-in names with and without prefix"""
        self.assertEqual(parse_scheme('builtin:P1', self.F3), scheme_builtin('P1', self.F3))
        self.assertEqual(parse_scheme('Gm', self.F3), scheme_builtin('Gm', self.F3))

    def test_disjoint_union(self):
        """Test a list of names is a disjoint union"""
        X = parse_scheme(['point(1)', 'point(3)'], self.F3)
        self.assertEqual(len(X.charts), 2)
        self.assertEqual(X.name, 'point(1) + point(3)')

    def test_charts(self):
        """Test explicit charts with their own base field"""
        X = parse_scheme({'base': {'p': 3}, 'charts': [{'vars': 2, 'eqs': ['y**2 - x**3 + x']}], 'name': 'E'})
        self.assertEqual(X.name, 'E')
        self.assertEqual(X.charts[0].nvars, 2)

    def test_scheme_errors(self):
        """Test ambiguous, unknown and fieldless schemes"""
        with self.assertRaises(ValidationError):
            parse_scheme({'builtin': 'A1', 'charts': [{'vars': 1}]}, self.F3)
        with self.assertRaises(ValidationError):
            parse_scheme('A2', self.F3)
        with self.assertRaises(ValidationError):
            parse_scheme('A1')

    def test_polynomial_terms(self):
        """Test term lists and strings give the same polynomial"""
        from_terms = parse_polynomial([{'exp': [2], 'coeff': 1}, {'exp': [0], 'coeff': 2}], self.F3, 1)
        self.assertEqual(from_terms, parse_polynomial('x**2 - 1', self.F3, 1))
        with self.assertRaises(ValidationError):
            parse_polynomial('x**', self.F3, 1)
        with self.assertRaises(ValidationError):
            parse_polynomial([{'exp': [1], 'coeff': 7}], self.F3, 1)


class SheafSerializerTestCase(SimpleTestCase):
    """Test case for coverings and representations"""

    def setUp(self):
        """Set up test data"""
        self.F5 = ff_make(5, 1)
        self.Gm = scheme_builtin('Gm', self.F5)
        self.Z13 = ZModRing(13)

    def test_kummer_regular(self):
        """Test the regular Kummer sheaf"""
        F = parse_sheaf({'covering': {'kind': 'kummer', 'r': 4, 'f': 'x'}, 'rep': 'regular'}, self.Gm, self.Z13)
        self.assertEqual(F.covering.kind, COVERING_KUMMER)
        self.assertEqual(F.builder, REP_REGULAR)
        self.assertEqual(F.rank, 4)

    def test_character_default_zeta(self):
        """Test a missing zeta over Z/m is the Hensel root"""
        F = parse_sheaf({'covering': {'kind': 'kummer', 'r': 4, 'f': 'x'}, 'rep': 'character'}, self.Gm, self.Z13)
        self.assertEqual(F.rho[1].rows[0][0], self.Z13.from_int(5))

    def test_kummer_errors(self):
        """Test Kummer coverings need r dividing q - 1"""
        with self.assertRaises(ValidationError):
            parse_sheaf({'covering': {'kind': 'kummer', 'r': 3, 'f': 'x'}}, self.Gm, self.Z13)
        with self.assertRaises(ValidationError):
            parse_sheaf({'covering': {'kind': 'kummer', 'f': 'x'}}, self.Gm, self.Z13)

    def test_table_by_index(self):
        """Test one class per closed point in canonical order"""
        X = parse_scheme(['point(1)', 'point(3)'], ff_make(2, 1))
        F = parse_sheaf({'covering': {'kind': 'table', 'group': 'C2', 'classes': [1, 0]}, 'rep': 'group_ring'},
                        X, ZModRing(9))
        points = scheme_closed_points(X, 3)
        self.assertEqual([frob_class(F.covering, x) for x in points], [1, 0])
        with self.assertRaises(ValidationError):
            parse_sheaf({'covering': {'kind': 'table', 'group': 'C2', 'classes': [1]}}, X, ZModRing(9))

    def test_table_by_coordinates(self):
        """Test any point of the orbit names the closed point"""
        X = scheme_builtin('A1', ff_make(2, 1))
        table = [
            {'point': [1, 0, 0], 'class': 0},
            {'point': [1, 0, 1], 'class': 1},
            {'degree': 2, 'coordinates': [3], 'class': 1},
        ]
        F = parse_sheaf({'covering': {'kind': 'table', 'group': 'C2', 'classes': table}}, X, ZModRing(9))
        x2, = [x for x in scheme_closed_points(X, 2) if x.degree == 2]
        self.assertEqual(frob_class(F.covering, x2), 1)

    def test_explicit(self):
        """Test rho needs every group element"""
        payload = {'covering': {'kind': 'kummer', 'r': 2, 'f': 'x'}, 'rho': {'0': [[1]], '1': [[12]]}}
        F = parse_sheaf(payload, self.Gm, self.Z13)
        self.assertEqual(F.rho[1].rows[0][0], self.Z13.from_int(12))
        del payload['rho']['1']
        with self.assertRaises(ValidationError):
            parse_sheaf(payload, self.Gm, self.Z13)

    def test_extension(self):
        """Test extensions from nested pieces and a cocycle"""
        X = scheme_builtin('point(2)', ff_make(3, 1))
        payload = {
            'ring': {'kind': 'group_ring', 'm': 4, 'group': 'C2'},
            'covering': {'kind': 'table', 'group': 'C2', 'classes': [1]},
            'rep': {'builder': 'extension', 'sub': 'group_ring', 'quot': 'group_ring', 'cocycle': {'1': [[[2, 0]]]}},
        }
        F = parse_sheaf(payload, X)
        self.assertEqual(F.builder, REP_EXPLICIT)
        self.assertEqual(F.rank, 2)
        payload['rep']['cocycle'] = {'1': [[[1, 0]]]}
        with self.assertRaises(ValidationError):
            parse_sheaf(payload, X)

    def test_complex(self):
        """Test signed complexes share one ring"""
        term = {'covering': {'kind': 'trivial'}, 'rep': 'trivial'}
        F = parse_sheaf({'terms': [{'degree': 0, 'sheaf': term}, {'degree': 1, 'sheaf': term}]}, self.Gm, self.Z13)
        self.assertIsInstance(F, SheafComplex)
        mixed = {'terms': [{'degree': 0, 'sheaf': term},
                           {'degree': 1, 'sheaf': dict(term, ring={'kind': 'zmod', 'm': 9})}]}
        with self.assertRaises(ValidationError):
            parse_sheaf(mixed, self.Gm, self.Z13)

    def test_no_ring(self):
        """Test a sheaf without any ring"""
        with self.assertRaises(ValidationError):
            parse_sheaf({}, self.Gm)


class JobSerializerTestCase(SimpleTestCase):
    """Test case for job files"""

    def setUp(self):
        """Set up test data"""
        self.payload = {
            'command': 'verify',
            'field': {'p': 2, 'nu': 1},
            'scheme': ['point(1)', 'point(3)'],
            'ring': {'kind': 'group_ring', 'm': 9, 'group': 'C2'},
            'sheaf': {'covering': {'kind': 'table', 'group': 'C2', 'classes': [1, 1]}, 'rep': 'group_ring'},
            'verify': ['dim0'],
        }

    def build(self, payload, command=None):
        serializer = JobSerializer(data=payload, context={'command': command} if command else {})
        serializer.is_valid(raise_exception=True)
        return serializer.save()

    def test_verify_job(self):
        """Test a complete job and its defaults"""
        job = self.build(self.payload)
        self.assertEqual(job.command, COMMAND_VERIFY)
        self.assertEqual(job.methods, [METHOD_DIM0])
        self.assertEqual(job.m, 8)
        self.assertEqual(job.sheaf.rank, 1)

    @override_settings(LFUNCTIONS_DEFAULT_TRUNCATION=5)
    def test_default_truncation(self):
        """Test the truncation default comes from settings"""
        self.assertEqual(self.build(self.payload).m, 5)

    def test_invoking_command_wins(self):
        """Test the command in the context overrides the file"""
        job = self.build(dict(self.payload, command='lfun'), command=COMMAND_VERIFY)
        self.assertEqual(job.command, COMMAND_VERIFY)

    def test_missing_pieces(self):
        """Test commands report the inputs they need"""
        for key in ('scheme', 'ring'):
            payload = {k: v for k, v in self.payload.items() if k != key}
            serializer = JobSerializer(data=payload)
            self.assertFalse(serializer.is_valid())
            self.assertIn(key, serializer.errors)
        self.assertIn('command', self._errors({}))

    def test_unknown_method(self):
        """Test verification methods are validated"""
        self.assertIn('verify', self._errors(dict(self.payload, verify=['magic'])))

    def test_k1_job(self):
        """Test the k1 command needs a matrix over the ring"""
        job = self.build({'ring': {'kind': 'zmod', 'm': 9}, 'matrix': [[1, 2], [3, 4]]}, command=COMMAND_K1)
        self.assertEqual(job.matrix.n, 2)
        self.assertIn('matrix', self._errors({'command': 'k1', 'ring': {'kind': 'zmod', 'm': 9}}))

    def test_cut_and_subfield(self):
        """Test cuts are parsed on the scheme and subfields as fields"""
        payload = dict(self.payload, field={'q': 4}, scheme='A1', over={'p': 2},
                       sheaf={}, ring={'kind': 'zmod', 'm': 9}, cut='x', verify=[])
        job = self.build(payload)
        self.assertEqual(job.over, ff_make(2, 1))
        self.assertEqual(job.cut.degree, 1)

    def _errors(self, payload):
        serializer = JobSerializer(data=payload)
        self.assertFalse(serializer.is_valid())
        return serializer.errors


class ReportSerializerTestCase(SimpleTestCase):
    """Test case for report payloads"""

    def test_schema_version(self):
        """Test reports carry the current schema version"""
        payload = {'schema_version': '0.1', 'scheme': {}, 'counts': [1], 'zeta': None}
        serializer = ZetaReportSerializer(data=payload)
        self.assertFalse(serializer.is_valid())
        self.assertIn('schema_version', serializer.errors)
        payload['schema_version'] = SCHEMA_VERSION
        self.assertTrue(ZetaReportSerializer(data=payload).is_valid())

    def test_k1_report_rep_checked(self):
        """Test the representative must be an element of the ring"""
        payload = {
            'schema_version': SCHEMA_VERSION,
            'ring': {'kind': 'zmod', 'm': 9},
            'size': 2,
            'k1_class': {'rep': 'two', 'display': '2'},
        }
        self.assertFalse(K1ReportSerializer(data=payload).is_valid())
        payload['k1_class'] = {'rep': 7, 'display': '7'}
        self.assertTrue(K1ReportSerializer(data=payload).is_valid())
