"""
Covering and Sheaf Tests

Test Coverage:
1. KummerCoveringTestCase - cov_kummer, frob_class, frob_classes, point counts
2. TableCoveringTestCase - cov_trivial, cov_table
3. RepresentationTestCase - sheaf_constant, sheaf_character, sheaf_regular, sheaf_group_ring, sheaf_explicit
4. ExtensionTestCase - sheaf_extension, sheaf_direct_sum, sheaf_change_of_rings, sheaf_restrict
"""
from django.test import SimpleTestCase

from lfunctions.algebra.ff import ff_extend, ff_make
from lfunctions.algebra.groups import build_group
from lfunctions.algebra.matrices import Matrix
from lfunctions.algebra.ring import GroupRing, ZModRing, ring_hom_make
from lfunctions.constants import HOM_KIND_AUGMENTATION
from lfunctions.exceptions import (
    BadCharacterOrder,
    BadKummerOrder,
    CocycleNotMultiplicative,
    PointNotOnBase,
    SheafError,
    VanishingFunction,
)
from lfunctions.geometry.polynomials import Polynomial
from lfunctions.geometry.sheaf import (
    cov_kummer,
    cov_restrict,
    cov_table,
    cov_trivial,
    covering_point_counts,
    covering_scheme,
    fibre_point_counts,
    frob_class,
    frob_classes,
    sheaf_change_of_rings,
    sheaf_character,
    sheaf_constant,
    sheaf_direct_sum,
    sheaf_explicit,
    sheaf_extension,
    sheaf_group_ring,
    sheaf_regular,
    sheaf_restrict,
)
from lfunctions.geometry.variety import (
    ClosedPoint,
    scheme_builtin,
    scheme_closed_points,
    scheme_open_closed_split,
    scheme_point_counts,
)


def kummer_gm_f5(r=4):
    F5 = ff_make(5, 1)
    Gm = scheme_builtin('Gm', F5)
    return cov_kummer(Gm, r, Polynomial.variable(F5, 1, 0))


def point_at(points, value):
    return next(x for x in points if x.coordinates == (value,))


class KummerCoveringTestCase(SimpleTestCase):
    """Test case for Kummer coverings"""

    def setUp(self):
        """Set up test data"""
        self.cov = kummer_gm_f5()
        self.points = scheme_closed_points(self.cov.base, 2)

    def test_frobenius_class(self):
        """Test the geometric class at x = 2 is -1 = 3 mod 4"""
        self.assertEqual(frob_class(self.cov, point_at(self.points, 2)), 3)
        self.assertEqual(frob_class(self.cov, point_at(self.points, 1)), 0)

    def test_orbit_independence(self):
        """Test classes do not depend on the orbit representative"""
        for x in self.points:
            frob_class(self.cov, x, check_orbit=True)

    def test_vectorised_classes(self):
        """Test frob_classes agrees with frob_class"""
        self.assertEqual(frob_classes(self.cov, self.points), [frob_class(self.cov, x) for x in self.points])

    def test_bad_order(self):
        """Test r = 3 does not divide 5 - 1"""
        with self.assertRaises(BadKummerOrder):
            kummer_gm_f5(3)

    def test_vanishing_function(self):
        """Test x vanishes on A1"""
        F5 = ff_make(5, 1)
        with self.assertRaises(VanishingFunction):
            cov_kummer(scheme_builtin('A1', F5), 2, Polynomial.variable(F5, 1, 0))

    def test_point_not_on_base(self):
        """Test the origin is not a point of Gm"""
        origin = ClosedPoint(1, ff_extend(ff_make(5, 1), 1), 0, (0,))
        with self.assertRaises(PointNotOnBase):
            frob_class(self.cov, origin)

    def test_covering_point_counts(self):
        """Test the counting shortcut against the explicit total space"""
        cov = kummer_gm_f5(2)
        Y = covering_scheme(cov)
        for n in (1, 2):
            self.assertEqual(covering_point_counts(cov, n), scheme_point_counts(Y, n))
        self.assertEqual(covering_point_counts(cov, 1), 4)

    def test_fibre_counts(self):
        """Test the fibre over x = 2 is rational only over F_625"""
        self.assertEqual(fibre_point_counts(self.cov, point_at(self.points, 2), 5), [0, 0, 0, 4])

    def test_json(self):
        """Test the covering JSON carries the group table"""
        data = self.cov.to_json()
        self.assertEqual(data['kind'], 'kummer')
        self.assertEqual(data['r'], 4)
        self.assertEqual(data['group']['order'], 4)


class TableCoveringTestCase(SimpleTestCase):
    """Test case for trivial and table coverings"""

    def setUp(self):
        """Set up test data"""
        self.F3 = ff_make(3, 1)
        self.X = scheme_builtin('point(2)', self.F3)
        self.x, = scheme_closed_points(self.X, 2)

    def test_trivial(self):
        """Test the trivial covering has class e everywhere"""
        self.assertEqual(frob_class(cov_trivial(self.X), self.x), 0)

    def test_table_lookup(self):
        """Test table classes are read back"""
        cov = cov_table(self.X, build_group('C2'), {self.x: 1})
        self.assertEqual(frob_class(cov, self.x), 1)
        self.assertEqual(cov.to_json()['table'][0]['class'], 1)

    def test_missing_point(self):
        """Test points absent from the table are rejected"""
        F3 = self.F3
        P1 = scheme_builtin('P1', F3)
        points = scheme_closed_points(P1, 1)
        cov = cov_table(P1, build_group('C2'), {points[0]: 1})
        with self.assertRaises(PointNotOnBase):
            frob_class(cov, points[1])

    def test_class_out_of_range(self):
        """Test classes must be group elements"""
        with self.assertRaises(SheafError):
            cov_table(self.X, build_group('C2'), {self.x: 2})


class RepresentationTestCase(SimpleTestCase):
    """Test case for representation builders"""

    def setUp(self):
        """Set up test data"""
        self.cov = kummer_gm_f5()
        self.Z13 = ZModRing(13)
        self.points = scheme_closed_points(self.cov.base, 1)

    def test_constant(self):
        """Test the constant sheaf has identity Frobenius"""
        F = sheaf_constant(self.cov, self.Z13, 2)
        self.assertEqual(F.frobenius_matrix(self.points[0]), Matrix.identity(self.Z13, 2))

    def test_character(self):
        """Test Frobenius at x = 2 acts by 5^3 = 8"""
        F = sheaf_character(self.cov, self.Z13, self.Z13.from_int(5))
        self.assertEqual(F.frobenius_matrix(point_at(self.points, 2)), Matrix.from_ints(self.Z13, [[8]]))
        G = sheaf_character(self.cov, self.Z13, self.Z13.from_int(5), power=2)
        self.assertEqual(G.frobenius_matrix(point_at(self.points, 2)), Matrix.from_ints(self.Z13, [[12]]))

    def test_character_bad_order(self):
        """Test -1 does not have order 4"""
        with self.assertRaises(BadCharacterOrder):
            sheaf_character(self.cov, self.Z13, self.Z13.from_int(12))

    def test_regular(self):
        """Test the regular representation permutes the basis"""
        F = sheaf_regular(self.cov, self.Z13)
        self.assertEqual(F.rank, 4)
        self.assertEqual(F.rho[1].trace(), self.Z13.zero)
        self.assertEqual(F.rho[0].trace(), self.Z13.from_int(4))

    def test_group_ring(self):
        """Test the group-ring sheaf acts by g^-1"""
        F = sheaf_group_ring(self.cov, self.Z13)
        ring = GroupRing(self.Z13, self.cov.group)
        self.assertTrue(F.right_action)
        self.assertEqual(F.ring, ring)
        self.assertEqual(F.rho[1], Matrix(ring, [[ring.basis(3)]]))

    def test_explicit_not_multiplicative(self):
        """Test rho must be a homomorphism"""
        Z13 = self.Z13
        rho = [Matrix.from_ints(Z13, [[1]])] + [Matrix.from_ints(Z13, [[2]])] * 3
        with self.assertRaises(SheafError):
            sheaf_explicit(self.cov, Z13, rho)

    def test_explicit_wrong_length(self):
        """Test rho needs one matrix per group element"""
        with self.assertRaises(SheafError):
            sheaf_explicit(self.cov, self.Z13, [Matrix.identity(self.Z13, 1)])


class ExtensionTestCase(SimpleTestCase):
    """Test case for extensions and ring changes"""

    def setUp(self):
        """Set up test data"""
        F3 = ff_make(3, 1)
        X = scheme_builtin('point(2)', F3)
        x, = scheme_closed_points(X, 2)
        self.cov = cov_table(X, build_group('C2'), {x: 1})
        self.Z4 = ZModRing(4)
        self.piece = sheaf_group_ring(self.cov, self.Z4)

    def test_extension_with_cocycle(self):
        """Test the cocycle 2 over Z/4[C2] gives a valid extension"""
        ring = self.piece.ring
        F = sheaf_extension(self.piece, self.piece, {1: Matrix(ring, [[ring.from_int(2)]])})
        self.assertEqual(F.rank, 2)
        self.assertEqual(F.rho[1][0, 1], ring.from_int(2))

    def test_bad_cocycle(self):
        """Test the cocycle 1 is not multiplicative"""
        ring = self.piece.ring
        with self.assertRaises(CocycleNotMultiplicative):
            sheaf_extension(self.piece, self.piece, {1: Matrix(ring, [[ring.one]])})

    def test_direct_sum(self):
        """Test direct sums are block diagonal"""
        F = sheaf_direct_sum(self.piece, self.piece)
        self.assertEqual(F.rho[1], Matrix.block_diagonal(self.piece.ring, [self.piece.rho[1]] * 2))

    def test_change_of_rings(self):
        """Test augmentation turns the group-ring sheaf constant"""
        h = ring_hom_make(HOM_KIND_AUGMENTATION, self.piece.ring)
        F = sheaf_change_of_rings(self.piece, h)
        self.assertEqual(F.ring, self.Z4)
        self.assertEqual(F.rho[1], Matrix.identity(self.Z4, 1))

    def test_restrict(self):
        """Test restriction keeps the Frobenius matrices"""
        cov = kummer_gm_f5()
        F = sheaf_character(cov, ZModRing(13), ZModRing(13).from_int(5))
        U, _ = scheme_open_closed_split(cov.base, Polynomial.parse('x - 1', cov.base.base, 1))
        G = sheaf_restrict(F, U)
        x = point_at(scheme_closed_points(U, 1), 2)
        self.assertEqual(G.frobenius_matrix(x), F.frobenius_matrix(x))
        with self.assertRaises(SheafError):
            cov_restrict(cov, scheme_builtin('P1', cov.base.base))
