"""
Management Command Tests

Test Coverage:
1. ZetaCommandTestCase - zeta
2. PointsCommandTestCase - points
3. K1CommandTestCase - k1
4. LFunCommandTestCase - lfun
5. VerifyCommandTestCase - verify, exit statuses
"""
import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from lfunctions.algebra.k1 import K1Class
from lfunctions.algebra.ring import ZModRing
from lfunctions.algebra.series import SeriesRing
from lfunctions.constants import EXIT_DISTINGUISHED, EXIT_INPUT_ERROR, SCHEMA_VERSION
from lfunctions.services import LFunctionService


class CommandTestMixin:
    """Runs commands against temporary job files"""

    def setUp(self):
        """Set up test data"""
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, name, payload):
        path = Path(self.tmp.name) / name
        path.write_text(json.dumps(payload), encoding='utf-8')
        return str(path)

    def call(self, *args, **options):
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO(), **options)
        return out.getvalue()


class ZetaCommandTestCase(CommandTestMixin, SimpleTestCase):
    """Test case for the zeta command"""

    def test_projective_line(self):
        """Test counts and zeta function of P1 over F_2"""
        output = self.call('zeta', scheme='builtin:P1', q=2, upto=6)
        self.assertIn('N_1..N_6 = 3, 5, 9, 17, 33, 65', output)
        self.assertIn('1 - 3*T + 2*T^2', output)

    def test_bounds_json(self):
        """Test explicit bounds and JSON output"""
        payload = json.loads(self.call('zeta', scheme='builtin:A1', q=3, upto=3, bounds=[0, 1], format='json'))
        self.assertEqual(payload['schema_version'], SCHEMA_VERSION)
        self.assertEqual(payload['counts'], [3, 9, 27])
        self.assertEqual(payload['zeta']['denominator'], ['1', '-3'])

    def test_scheme_file(self):
        """Test a scheme given as a file"""
        path = self.write('curve.json', {'base': {'p': 3}, 'name': 'E',
                                         'charts': [{'vars': 2, 'eqs': ['y**2 - x**3 + x']}]})
        output = self.call('zeta', scheme=path, upto=4, bounds=[2, 1])
        self.assertIn('N_1..N_4 = 3, 15, 27, 63', output)
        self.assertIn('Z(T) = (1 + 3*T^2)/(1 - 3*T)', output)

    def test_builtin_needs_q(self):
        """Test built-in schemes need a field size"""
        with self.assertRaises(CommandError) as raised:
            self.call('zeta', scheme='builtin:P1', upto=3)
        self.assertEqual(raised.exception.returncode, EXIT_INPUT_ERROR)

    def test_no_solution_warns(self):
        """Test a failed reconstruction without bounds gives no zeta function"""
        with self.assertLogs('lfunctions.management.commands.zeta', level='WARNING'):
            output = self.call('zeta', scheme='builtin:P1', q=2, upto=1)
        self.assertIn('no rational function', output)


class PointsCommandTestCase(CommandTestMixin, SimpleTestCase):
    """Test case for the points command"""

    def test_affine_line(self):
        """Test counts and closed points of A1 over F_2"""
        output = self.call('points', scheme='builtin:A1', q=2, maxdeg=3)
        self.assertIn('N_3 = 8', output)
        self.assertIn('closed points of degree 2: 1', output)
        self.assertIn('closed points of degree 3: 2', output)

    def test_output_file(self):
        """Test reports can be written to a file"""
        target = Path(self.tmp.name) / 'points.json'
        output = self.call('points', scheme='builtin:Gm', q=5, maxdeg=1, format='json', output=str(target))
        self.assertEqual(output, '')
        self.assertEqual(json.loads(target.read_text(encoding='utf-8'))['counts'], [4])


class K1CommandTestCase(CommandTestMixin, SimpleTestCase):
    """Test case for the k1 command"""

    def test_determinant(self):
        """Test the class of a matrix over Z/9 is its determinant"""
        ring = self.write('ring.json', {'kind': 'zmod', 'm': 9})
        matrix = self.write('matrix.json', [[1, 2], [3, 4]])
        output = self.call('k1', ring=ring, matrix=matrix)
        self.assertIn('determinant: 7', output)
        self.assertIn('size: 2', output)

    def test_noncommutative_json(self):
        """Test no determinant is given over Z/2[S3]"""
        ring = self.write('ring.json', {'kind': 'group_ring', 'm': 2, 'group': 'S3'})
        matrix = self.write('matrix.json', [[[0, 1, 0, 0, 0, 0]]])
        payload = json.loads(self.call('k1', ring=ring, matrix=matrix, format='json'))
        self.assertIsNone(payload['determinant'])
        self.assertEqual(payload['k1_class']['rep'], [0, 1, 0, 0, 0, 0])

    def test_singular(self):
        """Test a singular matrix is an input error"""
        job = self.write('job.json', {'ring': {'kind': 'zmod', 'm': 9}, 'matrix': [[3, 0], [0, 1]]})
        with self.assertRaises(CommandError) as raised:
            self.call('k1', job=job)
        self.assertEqual(raised.exception.returncode, EXIT_INPUT_ERROR)


class LFunCommandTestCase(CommandTestMixin, SimpleTestCase):
    """Test case for the lfun command"""

    def test_kummer_gallery(self):
        """Test the Kummer character job renders as JSON"""
        payload = json.loads(self.call('lfun', job='gallery:kummer_gm_f5', m=4, format='json'))
        self.assertEqual(payload['m'], 4)
        self.assertEqual(payload['ring'], {'kind': 'zmod', 'm': 13})
        self.assertEqual(len(payload['series']['coeffs']), 4)
        self.assertEqual(payload['global_sides'], [])

    def test_text_and_subfield(self):
        """Test the text layout with a subfield view"""
        job = self.write('job.json', {
            'field': {'q': 4},
            'scheme': 'point(1)',
            'ring': {'kind': 'zmod', 'm': 9},
            'over': {'p': 2},
            'm': 5,
        })
        output = self.call('lfun', job=job)
        self.assertIn('scheme: point(1)/F_4', output)
        self.assertIn('over F_2:', output)

    def test_missing_job(self):
        """Test unreadable job files"""
        with self.assertRaises(CommandError) as raised:
            self.call('lfun', job=str(Path(self.tmp.name) / 'missing.json'))
        self.assertEqual(raised.exception.returncode, EXIT_INPUT_ERROR)

    def test_invalid_job(self):
        """Test jobs without a scheme are rejected"""
        job = self.write('job.json', {'ring': {'kind': 'zmod', 'm': 9}})
        with self.assertRaisesMessage(CommandError, 'Invalid input'):
            self.call('lfun', job=job)


class VerifyCommandTestCase(CommandTestMixin, SimpleTestCase):
    """Test case for the verify command"""

    def test_dim0_gallery(self):
        """Test the dimension zero job agrees on every method"""
        output = self.call('verify', job='gallery:dim0_c2')
        self.assertIn('dim0: EqualCertified', output)
        self.assertIn('3 methods agree', output)

    def test_extension_gallery(self):
        """Test the extension job over Z/4[C2]"""
        payload = json.loads(self.call('verify', job='gallery:point2_z4c2', format='json'))
        self.assertEqual([side['method'] for side in payload['global_sides']], ['dim0', 'truncation'])

    def test_method_flag(self):
        """Test --method replaces the job's methods"""
        output = self.call('verify', job='gallery:p1_f2_table', methods=['table'], m=4)
        self.assertIn('table: EqualCertified', output)
        self.assertNotIn('power-sums', output)

    def test_p_not_invertible(self):
        """Test p = 3 with Z/9 coefficients exits with 1"""
        job = self.write('job.json', {
            'field': {'p': 3},
            'scheme': 'point(1)',
            'ring': {'kind': 'zmod', 'm': 9},
        })
        with self.assertRaises(CommandError) as raised:
            self.call('verify', job=job)
        self.assertEqual(raised.exception.returncode, EXIT_INPUT_ERROR)

    def test_distinguished(self):
        """Test a distinguished side exits with 2"""
        Z9 = ZModRing(9)
        series_ring = SeriesRing(Z9, 4)
        wrong = K1Class(series_ring, series_ring.make([Z9.one, Z9.one]))
        with mock.patch.object(LFunctionService, 'global_side_table', return_value=wrong):
            with self.assertRaises(CommandError) as raised:
                self.call('verify', job='gallery:p1_f2_table', methods=['table'], m=4)
        self.assertEqual(raised.exception.returncode, EXIT_DISTINGUISHED)
