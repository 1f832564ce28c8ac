"""
Coefficient Ring Tests

Test Coverage:
1. RingConstructionTestCase - ring_make, sizes, commutativity, JSON encodings
2. RingUnitTestCase - ring_is_unit, ring_inverse on random units, ring_units
3. JacobsonRadicalTestCase - structural and definitional radicals
4. RingHomTestCase - ring_hom_make, ring_hom_apply, ring_hom_compose
5. HenselRootTestCase - hensel_root_of_unity
"""
from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings as hypothesis_settings

from lfunctions.algebra.groups import build_group
from lfunctions.algebra.ring import (
    GroupRing,
    ZModRing,
    hensel_root_of_unity,
    ring_hom_apply,
    ring_hom_compose,
    ring_hom_make,
    ring_inverse,
    ring_is_unit,
    ring_jacobson_radical,
    ring_make,
    ring_units,
)
from lfunctions.constants import (
    HOM_KIND_ABELIANIZATION,
    HOM_KIND_AUGMENTATION,
    HOM_KIND_CHARACTER,
    HOM_KIND_CRT_SPLIT,
    HOM_KIND_ZMOD_PROJECTION,
    RADICAL_DEFINITIONAL,
    RADICAL_STRUCTURAL,
    RING_KIND_GROUP_RING,
    RING_KIND_PRODUCT,
    RING_KIND_ZMOD,
)
from lfunctions.exceptions import (
    BadCharacterOrder,
    EnumerationTooLarge,
    NonCyclicGroup,
    NotAUnit,
    RingError,
    RingMismatch,
    SizeOverflow,
)
from lfunctions.tests.strategies import Z4S3, Z9, Z9C2, Z13, units


class RingConstructionTestCase(SimpleTestCase):
    """Test case for ring descriptors"""

    def test_zmod(self):
        """Test Z/9 is commutative of size 9"""
        ring = ring_make(RING_KIND_ZMOD, m=9)
        self.assertEqual(ring.size, 9)
        self.assertTrue(ring.is_commutative)
        self.assertEqual(ring.to_dict(), {'kind': 'zmod', 'm': 9})

    def test_noncommutative_group_ring(self):
        """Test Z/4[S3] is noncommutative of size 4^6"""
        ring = ring_make(RING_KIND_GROUP_RING, m=4, group='S3')
        self.assertEqual(ring.size, 4096)
        self.assertFalse(ring.is_commutative)
        a, b = ring.basis(1), ring.basis(2)
        self.assertNotEqual(a * b, b * a)

    def test_product(self):
        """Test products multiply componentwise"""
        ring = ring_make(RING_KIND_PRODUCT, factors=[ZModRing(4), ZModRing(9)])
        self.assertEqual(ring.size, 36)
        self.assertEqual(ring.characteristic, 36)
        a = ring.element([3, 2])
        self.assertEqual(ring.element_to_json(a * a), [1, 4])

    def test_modulus_too_small(self):
        """Test Z/1 is rejected"""
        with self.assertRaises(RingError):
            ring_make(RING_KIND_ZMOD, m=1)

    @override_settings(LFUNCTIONS_RING_SIZE_LIMIT=1000)
    def test_size_overflow(self):
        """Test rings above the size limit are rejected"""
        with self.assertRaises(SizeOverflow):
            ring_make(RING_KIND_GROUP_RING, m=4, group='S3')

    def test_group_ring_json(self):
        """Test group ring elements encode as coefficient lists"""
        ring = ring_make(RING_KIND_GROUP_RING, m=9, group='C2')
        a = ring.element([1, 3])
        self.assertEqual(ring.element_to_json(a), [1, 3])
        self.assertEqual(ring.element(4), ring.from_int(4))
        with self.assertRaises(RingError):
            ring.element([1, 2, 3])

    def test_mismatched_rings(self):
        """Test adding elements of different rings fails"""
        with self.assertRaises(RingMismatch):
            ZModRing(9).one + ZModRing(4).one


class RingUnitTestCase(SimpleTestCase):
    """Test case for units and inverses"""

    def setUp(self):
        """Set up test data"""
        self.Z9 = ZModRing(9)
        self.Z9C2 = GroupRing(self.Z9, build_group('C2'))

    def test_zmod_inverse(self):
        """Test 2^-1 = 5 in Z/9"""
        self.assertEqual(ring_inverse(self.Z9.from_int(2)), self.Z9.from_int(5))

    def test_zmod_non_unit(self):
        """Test 3 is not a unit in Z/9"""
        three = self.Z9.from_int(3)
        self.assertFalse(ring_is_unit(three))
        with self.assertRaises(NotAUnit):
            ring_inverse(three)

    def test_group_ring_unit(self):
        """Test (1 + 3s)^-1 = 1 - 3s in Z/9[C2]"""
        a = self.Z9C2.element([1, 3])
        self.assertTrue(ring_is_unit(a))
        self.assertEqual(ring_inverse(a), self.Z9C2.element([1, 6]))

    def test_group_ring_non_unit(self):
        """Test 3 + 3s is not a unit in Z/9[C2]"""
        self.assertFalse(ring_is_unit(self.Z9C2.element([3, 3])))

    def test_unit_counts(self):
        """Test unit group orders"""
        self.assertEqual(ring_units(self.Z9).order, 6)
        self.assertEqual(ring_units(ZModRing(4)).order, 2)
        # Z/9[C2] = Z/9 x Z/9 since 2 is invertible
        self.assertEqual(ring_units(self.Z9C2).order, 36)

    def assertTwoSidedInverse(self, a):
        b = ring_inverse(a)
        self.assertEqual(a * b, a.ring.one)
        self.assertEqual(b * a, a.ring.one)

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(units(Z9))
    def test_two_sided_inverse_z9(self, a):
        """Test inverses are two-sided on random units of Z/9"""
        self.assertTwoSidedInverse(a)

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(units(Z13))
    def test_two_sided_inverse_z13(self, a):
        """Test inverses are two-sided on random units of Z/13"""
        self.assertTwoSidedInverse(a)

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(units(Z9C2))
    def test_two_sided_inverse_z9_c2(self, a):
        """Test inverses are two-sided on random units of Z/9[C2]"""
        self.assertTwoSidedInverse(a)

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(units(Z4S3))
    def test_two_sided_inverse_z4_s3(self, a):
        """Test inverses are two-sided on random units of Z/4[S3]"""
        self.assertTwoSidedInverse(a)

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(units(ring_make(RING_KIND_PRODUCT, factors=[ZModRing(4), Z9])))
    def test_two_sided_inverse_product(self, a):
        """Test inverses are two-sided on random units of Z/4 x Z/9"""
        self.assertTwoSidedInverse(a)

    def test_unit_closure(self):
        """Test 2 generates all of (Z/9)^x"""
        units = ring_units(self.Z9)
        self.assertEqual(len(units.closure([self.Z9.from_int(2)])), 6)
        self.assertEqual(len(units.closure([self.Z9.from_int(8)])), 2)


class JacobsonRadicalTestCase(SimpleTestCase):
    """Test case for Jacobson radicals"""

    def test_zmod_radical(self):
        """Test Jac(Z/9) = {0, 3, 6}"""
        Z9 = ZModRing(9)
        radical = ring_jacobson_radical(Z9)
        self.assertEqual(radical.mode, RADICAL_STRUCTURAL)
        self.assertEqual({a.payload for a in radical.elements()}, {0, 3, 6})

    def test_modes_agree(self):
        """Test structural and definitional radicals coincide"""
        for m in (4, 9, 8):
            ring = GroupRing(ZModRing(m), build_group('C2'))
            structural = ring_jacobson_radical(ring, RADICAL_STRUCTURAL)
            definitional = ring_jacobson_radical(ring, RADICAL_DEFINITIONAL)
            self.assertEqual(structural.elements(), definitional.elements())

    def test_two_group_radical_size(self):
        """Test Jac(Z/4[C2]) has 8 elements"""
        ring = GroupRing(ZModRing(4), build_group('C2'))
        self.assertEqual(ring_jacobson_radical(ring).size, 8)

    def test_one_plus_radical_is_units(self):
        """Test 1 + Jac consists of units"""
        for ring in (ZModRing(8), GroupRing(ZModRing(9), build_group('C2')),
                     GroupRing(ZModRing(2), build_group('S3'))):
            for x in ring_jacobson_radical(ring).elements():
                self.assertTrue(ring_is_unit(ring.one + x))

    def test_mixed_group_falls_back(self):
        """Test Z/2[S3] uses the definitional scan"""
        ring = GroupRing(ZModRing(2), build_group('S3'))
        self.assertEqual(ring_jacobson_radical(ring).mode, RADICAL_DEFINITIONAL)

    @override_settings(LFUNCTIONS_RADICAL_SCAN_LIMIT=10)
    def test_definitional_budget(self):
        """Test the definitional scan respects its budget"""
        with self.assertRaises(EnumerationTooLarge):
            ring_jacobson_radical(ZModRing(16), RADICAL_DEFINITIONAL)


class RingHomTestCase(SimpleTestCase):
    """Test case for ring homomorphisms"""

    def setUp(self):
        """Set up test data"""
        self.Z13 = ZModRing(13)
        self.Z13C4 = GroupRing(self.Z13, build_group('C4'))

    def test_character(self):
        """Test the character s -> 5 on Z/13[C4]"""
        h = ring_hom_make(HOM_KIND_CHARACTER, self.Z13C4, zeta=self.Z13.from_int(5))
        self.assertEqual(h(self.Z13C4.basis(1)), self.Z13.from_int(5))
        self.assertEqual(h(self.Z13C4.basis(3)), self.Z13.from_int(8))

    def test_character_bad_order(self):
        """Test 3 is not a 4th root of unity mod 13"""
        with self.assertRaises(BadCharacterOrder):
            ring_hom_make(HOM_KIND_CHARACTER, self.Z13C4, zeta=self.Z13.from_int(3))

    def test_character_non_cyclic(self):
        """Test characters need a cyclic group"""
        ring = GroupRing(ZModRing(3), build_group('S3'))
        with self.assertRaises(NonCyclicGroup):
            ring_hom_make(HOM_KIND_CHARACTER, ring, zeta=ZModRing(3).one)

    def test_augmentation(self):
        """Test the augmentation sums coefficients"""
        h = ring_hom_make(HOM_KIND_AUGMENTATION, self.Z13C4)
        self.assertEqual(h(self.Z13C4.element([1, 2, 3, 4])), self.Z13.from_int(10))

    def test_abelianization_preserves_units(self):
        """Test Z/2[S3] -> Z/2[C2] sends units to units"""
        ring = GroupRing(ZModRing(2), build_group('S3'))
        h = ring_hom_make(HOM_KIND_ABELIANIZATION, ring)
        self.assertEqual(h.target.group.order, 2)
        for u in ring_units(ring).elements:
            self.assertTrue(ring_is_unit(ring_hom_apply(h, u)))

    def test_projection_and_crt(self):
        """Test the CRT split of Z/36 and reduction to Z/9"""
        Z36 = ZModRing(36)
        split = ring_hom_make(HOM_KIND_CRT_SPLIT, Z36)
        self.assertEqual(split.target.element_to_json(split(Z36.from_int(7))), [3, 7])
        project = ring_hom_make(HOM_KIND_ZMOD_PROJECTION, Z36, modulus=9)
        self.assertEqual(project(Z36.from_int(20)), ZModRing(9).from_int(2))

    def test_bad_projection(self):
        """Test reduction needs a divisor of m"""
        with self.assertRaises(RingError):
            ring_hom_make(HOM_KIND_ZMOD_PROJECTION, ZModRing(9), modulus=4)

    def test_compose(self):
        """Test augmentation after reduction"""
        Z9C2 = GroupRing(ZModRing(9), build_group('C2'))
        first = ring_hom_make(HOM_KIND_ZMOD_PROJECTION, Z9C2, modulus=3)
        second = ring_hom_make(HOM_KIND_AUGMENTATION, first.target)
        h = ring_hom_compose(second, first)
        self.assertEqual(h(Z9C2.element([4, 7])), ZModRing(3).from_int(2))
        with self.assertRaises(RingMismatch):
            ring_hom_compose(first, second)


class HenselRootTestCase(SimpleTestCase):
    """Test case for Hensel lifted roots of unity"""

    def test_exact_order(self):
        """Test the lifted root has exact order 4 mod 169"""
        ring = ZModRing(169)
        zeta = hensel_root_of_unity(ring, 4)
        self.assertEqual(zeta ** 4, ring.one)
        self.assertNotEqual(zeta ** 2, ring.one)

    def test_prime_level(self):
        """Test mod 13 the smallest generator of mu_4 is 5"""
        self.assertEqual(hensel_root_of_unity(ZModRing(13), 4), ZModRing(13).from_int(5))

    def test_no_root(self):
        """Test mu_3 is trivial mod 9"""
        with self.assertRaises(BadCharacterOrder):
            hensel_root_of_unity(ZModRing(9), 3)
