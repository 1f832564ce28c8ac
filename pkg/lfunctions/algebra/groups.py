"""
Finite groups given by explicit multiplication tables

Builders cover the groups used as Galois groups in the gallery and tests:
cyclic C_r, S3, D4 and Q8. Index 0 is always the identity; in C_r the
index k is the k-th power of the generator 1.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from lfunctions.constants import GROUP_C2, GROUP_C3, GROUP_C4, GROUP_D4, GROUP_Q8, GROUP_S3
from lfunctions.exceptions import NonCyclicGroup, TableInvalid
from lfunctions.settings import get_lfunctions_setting

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupTable:
    """
    A finite group as a multiplication table of element indices

    Attributes:
        mult: mult[a][b] is the index of a*b
        identity: Index of the identity
        labels: Optional printable names, one per element
    """

    mult: Tuple[Tuple[int, ...], ...]
    identity: int = 0
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.mult)

    @property
    def inverse(self) -> Tuple[int, ...]:
        return _inverses(self)

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, a: int, k: int) -> int:
        result = self.identity
        base = a if k >= 0 else self.inv(a)
        for _ in range(abs(k)):
            result = self.mult[result][base]
        return result

    def element_order(self, a: int) -> int:
        k, current = 1, a
        while current != self.identity:
            current = self.mult[current][a]
            k += 1
        return k

    def label(self, a: int) -> str:
        if self.labels:
            return self.labels[a]
        return f"g{a}"

    @property
    def is_abelian(self) -> bool:
        return all(
            self.mult[a][b] == self.mult[b][a]
            for a in range(self.order) for b in range(a + 1, self.order)
        )

    def to_dict(self):
        return {'order': self.order, 'mult': [list(row) for row in self.mult]}

    def __str__(self):
        return f"G{self.order}"


@lru_cache(maxsize=None)
def _inverses(group: GroupTable) -> Tuple[int, ...]:
    inverse = []
    for a in range(group.order):
        inverse.append(next(b for b in range(group.order) if group.mult[a][b] == group.identity))
    return tuple(inverse)


def group_from_table(mult: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None) -> GroupTable:
    """
    Validate a multiplication table and wrap it as a GroupTable

    Associativity is checked on every triple for tables up to
    ASSOCIATIVITY_CHECK_ORDER elements and on a seeded sample above.

    Raises:
        TableInvalid: If the table does not define a group
    """
    g = len(mult)
    if g == 0:
        raise TableInvalid("empty table")
    table = tuple(tuple(int(x) for x in row) for row in mult)
    expected = set(range(g))
    for row in table:
        if len(row) != g or set(row) != expected:
            raise TableInvalid("rows must be permutations of the elements")
    for col in range(g):
        if {table[row][col] for row in range(g)} != expected:
            raise TableInvalid("columns must be permutations of the elements")

    identities = [e for e in range(g) if all(table[e][a] == a and table[a][e] == a for a in range(g))]
    if not identities:
        raise TableInvalid("no identity element")
    identity = identities[0]

    if g <= get_lfunctions_setting('ASSOCIATIVITY_CHECK_ORDER'):
        triples = itertools.product(range(g), repeat=3)
    else:
        rng = random.Random(get_lfunctions_setting('RANDOM_SEED'))
        triples = [(rng.randrange(g), rng.randrange(g), rng.randrange(g)) for _ in range(4096)]
    for a, b, c in triples:
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise TableInvalid(f"associativity fails on ({a}, {b}, {c})")

    for a in range(g):
        if not any(table[a][b] == identity and table[b][a] == identity for b in range(g)):
            raise TableInvalid(f"element {a} has no two-sided inverse")

    return GroupTable(table, identity, tuple(labels) if labels else None)


# ==========================================
# BUILDERS
# ==========================================

def cyclic_group(r: int) -> GroupTable:
    """C_r with index k standing for s^k"""
    if r < 1:
        raise TableInvalid(f"cyclic group order must be positive, got {r}")
    labels = ['e', 's'] + [f's^{k}' for k in range(2, r)]
    return GroupTable(
        tuple(tuple((i + j) % r for j in range(r)) for i in range(r)),
        0,
        tuple(labels[:r]),
    )


def _permutation_group(generators: Sequence[Sequence[int]]) -> GroupTable:
    """Closure of permutation generators, elements sorted by array form"""
    degree = len(generators[0])
    elements = {tuple(range(degree))}
    frontier = list(elements)
    gens = [Permutation(list(g)) for g in generators]
    while frontier:
        new = []
        for element in frontier:
            for gen in gens:
                product = tuple((Permutation(list(element)) * gen).array_form)
                if product not in elements:
                    elements.add(product)
                    new.append(product)
        frontier = new
    ordered = sorted(elements)
    index = {perm: i for i, perm in enumerate(ordered)}
    # (a*b)(x) = a(b(x))
    mult = tuple(
        tuple(index[tuple(a[b[x]] for x in range(degree))] for b in ordered)
        for a in ordered
    )
    labels = tuple(''.join(str(x) for x in perm) for perm in ordered)
    return group_from_table(mult, labels)


def _quaternion_group() -> GroupTable:
    # index 2*u + s stands for (-1)^s * u with u in (1, i, j, k)
    units = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }
    mult = []
    for a in range(8):
        row = []
        for b in range(8):
            unit, sign = units[(a // 2, b // 2)]
            row.append(2 * unit + (sign + a % 2 + b % 2) % 2)
        mult.append(row)
    labels = ('1', '-1', 'i', '-i', 'j', '-j', 'k', '-k')
    return group_from_table(mult, labels)


@lru_cache(maxsize=None)
def build_group(name: str) -> GroupTable:
    """
    Builder shortcut for the named groups

    Args:
        name (str): One of C<r>, S3, D4, Q8

    Returns:
        GroupTable: The group
    """
    if name in (GROUP_C2, GROUP_C3, GROUP_C4) or (name.startswith('C') and name[1:].isdigit()):
        return cyclic_group(int(name[1:]))
    if name == GROUP_S3:
        return _permutation_group([(1, 0, 2), (1, 2, 0)])
    if name == GROUP_D4:
        return _permutation_group([(1, 2, 3, 0), (3, 2, 1, 0)])
    if name == GROUP_Q8:
        return _quaternion_group()
    raise TableInvalid(f"unknown group builder {name}")


# ==========================================
# STRUCTURE
# ==========================================

def cyclic_generator(group: GroupTable) -> int:
    """Smallest index generating the group"""
    for a in range(group.order):
        if group.element_order(a) == group.order:
            return a
    raise NonCyclicGroup(group.order)


@lru_cache(maxsize=None)
def cyclic_exponents(group: GroupTable) -> Tuple[int, ...]:
    """exponents[a] = k with a = generator^k"""
    gen = cyclic_generator(group)
    exponents = [0] * group.order
    current = group.identity
    for k in range(group.order):
        exponents[current] = k
        current = group.mult[current][gen]
    return tuple(exponents)


def subgroup_closure(group: GroupTable, generators) -> frozenset:
    elements = {group.identity}
    frontier = set(generators) - elements
    elements |= frontier
    while frontier:
        new = set()
        for a in frontier:
            for b in list(elements):
                for c in (group.mult[a][b], group.mult[b][a]):
                    if c not in elements:
                        new.add(c)
        elements |= new
        frontier = new
    return frozenset(elements)


def commutator_subgroup(group: GroupTable) -> frozenset:
    inv = group.inverse
    commutators = {
        group.mult[group.mult[a][b]][group.mult[inv[a]][inv[b]]]
        for a in range(group.order) for b in range(group.order)
    }
    return subgroup_closure(group, commutators)


@lru_cache(maxsize=None)
def abelianization(group: GroupTable) -> Tuple[GroupTable, Tuple[int, ...]]:
    """
    The quotient G/[G, G] and the projection G -> G^ab

    Cosets are indexed by their smallest element, so the identity coset is 0.

    Returns:
        Tuple of the quotient table and the projection as an index array
    """
    kernel = commutator_subgroup(group)
    coset_of: Dict[int, int] = {}
    representatives: List[int] = []
    for a in range(group.order):
        if a in coset_of:
            continue
        index = len(representatives)
        representatives.append(a)
        for k in kernel:
            coset_of[group.mult[a][k]] = index
    mult = tuple(
        tuple(coset_of[group.mult[a][b]] for b in representatives)
        for a in representatives
    )
    labels = tuple(group.label(a) for a in representatives)
    quotient = GroupTable(mult, 0, labels)
    projection = tuple(coset_of[a] for a in range(group.order))
    logger.debug(f"Abelianization of {group}: order {quotient.order}")
    return quotient, projection
