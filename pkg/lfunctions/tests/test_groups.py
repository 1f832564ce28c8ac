"""
Group Table Tests

Test Coverage:
1. GroupTableValidationTestCase - group_from_table accepts groups and rejects the rest
2. GroupBuilderTestCase - build_group for C<r>, S3, D4, Q8
3. GroupStructureTestCase - cyclic_exponents, abelianization
"""
from django.test import SimpleTestCase

from lfunctions.algebra.groups import (
    abelianization,
    build_group,
    cyclic_exponents,
    cyclic_generator,
    group_from_table,
)
from lfunctions.exceptions import NonCyclicGroup, TableInvalid


class GroupTableValidationTestCase(SimpleTestCase):
    """Test case for multiplication table validation"""

    def test_klein_four(self):
        """Test the Klein four group is accepted"""
        mult = [[a ^ b for b in range(4)] for a in range(4)]
        group = group_from_table(mult)
        self.assertEqual(group.order, 4)
        self.assertTrue(group.is_abelian)
        self.assertEqual(group.to_dict(), {'order': 4, 'mult': mult})

    def test_repeated_entry(self):
        """Test a row with a repeated entry is rejected"""
        with self.assertRaises(TableInvalid):
            group_from_table([[0, 1], [1, 1]])

    def test_not_associative(self):
        """Test a Latin square that is not associative is rejected"""
        # every element squares to the identity, impossible in a group of order 5
        mult = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with self.assertRaises(TableInvalid):
            group_from_table(mult)

    def test_empty_table(self):
        """Test the empty table is rejected"""
        with self.assertRaises(TableInvalid):
            group_from_table([])


class GroupBuilderTestCase(SimpleTestCase):
    """Test case for the named group builders"""

    def test_orders(self):
        """Test builder orders"""
        self.assertEqual(build_group('C2').order, 2)
        self.assertEqual(build_group('C5').order, 5)
        self.assertEqual(build_group('S3').order, 6)
        self.assertEqual(build_group('D4').order, 8)
        self.assertEqual(build_group('Q8').order, 8)

    def test_commutativity(self):
        """Test only the cyclic builders are abelian"""
        self.assertTrue(build_group('C4').is_abelian)
        for name in ('S3', 'D4', 'Q8'):
            self.assertFalse(build_group(name).is_abelian)

    def test_quaternion_square(self):
        """Test i^2 = -1 in Q8"""
        Q8 = build_group('Q8')
        self.assertEqual(Q8.label(Q8.mul(2, 2)), '-1')
        self.assertEqual(Q8.element_order(2), 4)

    def test_unknown_builder(self):
        """Test an unknown name is rejected"""
        with self.assertRaises(TableInvalid):
            build_group('A5')


class GroupStructureTestCase(SimpleTestCase):
    """Test case for cyclic structure and abelianization"""

    def test_cyclic_exponents(self):
        """Test exponents in C4 follow the generator"""
        C4 = build_group('C4')
        self.assertEqual(cyclic_generator(C4), 1)
        self.assertEqual(cyclic_exponents(C4), (0, 1, 2, 3))

    def test_non_cyclic(self):
        """Test S3 has no generator"""
        with self.assertRaises(NonCyclicGroup):
            cyclic_generator(build_group('S3'))

    def test_abelianization_orders(self):
        """Test |G^ab| for the noncommutative builders"""
        self.assertEqual(abelianization(build_group('S3'))[0].order, 2)
        self.assertEqual(abelianization(build_group('D4'))[0].order, 4)
        self.assertEqual(abelianization(build_group('Q8'))[0].order, 4)

    def test_abelianization_is_homomorphism(self):
        """Test the projection respects products"""
        S3 = build_group('S3')
        quotient, projection = abelianization(S3)
        for a in range(S3.order):
            for b in range(S3.order):
                self.assertEqual(
                    projection[S3.mul(a, b)],
                    quotient.mul(projection[a], projection[b]),
                )
