"""
Exact algebra: finite fields, coefficient rings, truncated series and K1
"""
from lfunctions.algebra.ff import FqElem, FqField, ff_extend, ff_make
from lfunctions.algebra.groups import GroupTable, build_group, group_from_table
from lfunctions.algebra.ring import (
    GroupRing,
    ProductRing,
    RingElem,
    RingHom,
    ZModRing,
    ring_hom_make,
    ring_make,
)
from lfunctions.algebra.matrices import Matrix
from lfunctions.algebra.series import SeriesRing, TruncSeries
from lfunctions.algebra.k1 import K1Class, Verdict, k1_equal, k1_of_matrix


__all__ = [
    'FqElem',
    'FqField',
    'ff_extend',
    'ff_make',
    'GroupTable',
    'build_group',
    'group_from_table',
    'GroupRing',
    'ProductRing',
    'RingElem',
    'RingHom',
    'ZModRing',
    'ring_hom_make',
    'ring_make',
    'Matrix',
    'SeriesRing',
    'TruncSeries',
    'K1Class',
    'Verdict',
    'k1_equal',
    'k1_of_matrix',
]
