"""
Finite coefficient rings

Three kinds of coefficient ring are supported: Z/m, group rings Z/m[G] over
an explicit group table, and finite products of these. Elements are
immutable RingElem values wrapping a payload:

- ZMod: an int in [0, m)
- GroupRing: a tuple of residues indexed by group element
- Product: a tuple of factor payloads

BaseRing is the interface shared with the truncated series rings of
lfunctions.algebra.series, so matrices and K1 elimination work over both.
"""
import itertools
import logging
import math
import random
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Any, Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import sympy

from lfunctions.algebra.groups import GroupTable, abelianization, build_group, cyclic_exponents
from lfunctions.constants import (
    HOM_KIND_ABELIANIZATION,
    HOM_KIND_AUGMENTATION,
    HOM_KIND_CHARACTER,
    HOM_KIND_COMPOSITE,
    HOM_KIND_CRT_SPLIT,
    HOM_KIND_IDENTITY,
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
from lfunctions.settings import get_lfunctions_setting

logger = logging.getLogger(__name__)


class BaseRing(ABC):
    """Interface shared by coefficient rings and truncated series rings"""

    @property
    @abstractmethod
    def zero(self): ...

    @property
    @abstractmethod
    def one(self): ...

    @abstractmethod
    def from_int(self, n: int): ...

    @abstractmethod
    def is_unit(self, a) -> bool: ...

    @abstractmethod
    def inverse(self, a): ...

    @property
    @abstractmethod
    def is_commutative(self) -> bool: ...

    @property
    @abstractmethod
    def size(self) -> int: ...

    @abstractmethod
    def random_element(self, rng: random.Random): ...

    @abstractmethod
    def pivot_candidates(self, rng: random.Random, hints: Sequence = ()) -> Iterator: ...

    @abstractmethod
    def matrix_is_invertible(self, rows) -> bool: ...

    @abstractmethod
    def format_element(self, a) -> str: ...

    @abstractmethod
    def element_to_json(self, a): ...

    @abstractmethod
    def element_from_json(self, data): ...


@dataclass(frozen=True)
class RingElem:
    """An element of a finite coefficient ring"""

    ring: 'RingDescriptor'
    payload: Any

    def _check(self, other) -> 'RingElem':
        if isinstance(other, int):
            return self.ring.from_int(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatch(self.ring, other.ring)
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return RingElem(self.ring, self.ring._add(self.payload, other.payload))

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return RingElem(self.ring, self.ring._add(self.payload, self.ring._neg(other.payload)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RingElem(self.ring, self.ring._neg(self.payload))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return RingElem(self.ring, self.ring._mul(self.payload, other.payload))

    def __rmul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other * self

    def __pow__(self, k: int):
        if k < 0:
            return self.ring.inverse(self) ** (-k)
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return self.payload == self.ring.zero.payload

    def __str__(self):
        return self.ring.format_element(self)

    def __repr__(self):
        return f"RingElem({self.ring}, {self.payload!r})"


class RingDescriptor(BaseRing):
    """A finite coefficient ring Lambda"""

    kind: str = ''

    @property
    def zero(self) -> RingElem:
        return RingElem(self, self._zero())

    @property
    def one(self) -> RingElem:
        return RingElem(self, self._one())

    def from_int(self, n: int) -> RingElem:
        return RingElem(self, self._from_int(n))

    def element(self, payload) -> RingElem:
        return self.element_from_json(payload)

    def elements(self) -> Iterator[RingElem]:
        limit = get_lfunctions_setting('ENUMERATION_LIMIT')
        if self.size > limit:
            raise EnumerationTooLarge(str(self), self.size, limit)
        return (RingElem(self, payload) for payload in self._payloads())

    def is_unit(self, a: RingElem) -> bool:
        return self._inverse_payload(a.payload) is not None

    def inverse(self, a: RingElem) -> RingElem:
        payload = self._inverse_payload(a.payload)
        if payload is None:
            raise NotAUnit(self.format_element(a))
        return RingElem(self, payload)

    def pivot_candidates(self, rng: random.Random, hints: Sequence = ()) -> Iterator[RingElem]:
        """Multipliers tried by the stable-range pivot search, cheapest first"""
        for hint in hints:
            yield hint
        yield self.one
        yield -self.one
        for _ in range(get_lfunctions_setting('PIVOT_SAMPLE_SIZE')):
            yield self.random_element(rng)
        if self.size <= get_lfunctions_setting('PIVOT_FULL_SCAN_LIMIT'):
            yield from self.elements()

    def random_element(self, rng: random.Random) -> RingElem:
        return RingElem(self, self._random_payload(rng))

    def format_element(self, a: RingElem) -> str:
        return self._format(a.payload)

    def element_to_json(self, a: RingElem):
        return self._to_json(a.payload)

    def element_from_json(self, data) -> RingElem:
        return RingElem(self, self._from_json(data))

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    # payload level hooks
    @abstractmethod
    def _zero(self): ...

    @abstractmethod
    def _one(self): ...

    @abstractmethod
    def _from_int(self, n: int): ...

    @abstractmethod
    def _add(self, x, y): ...

    @abstractmethod
    def _neg(self, x): ...

    @abstractmethod
    def _mul(self, x, y): ...

    @abstractmethod
    def _inverse_payload(self, x): ...

    @abstractmethod
    def _payloads(self) -> Iterator: ...

    @abstractmethod
    def _random_payload(self, rng): ...

    @abstractmethod
    def _format(self, x) -> str: ...

    @abstractmethod
    def _to_json(self, x): ...

    @abstractmethod
    def _from_json(self, data): ...


# ==========================================
# Z/m
# ==========================================

@dataclass(frozen=True)
class ZModRing(RingDescriptor):
    m: int
    kind = RING_KIND_ZMOD

    def __post_init__(self):
        if self.m < 2:
            raise RingError(f"Modulus must be at least 2, got {self.m}")

    @property
    def size(self) -> int:
        return self.m

    @property
    def is_commutative(self) -> bool:
        return True

    @property
    def characteristic(self) -> int:
        return self.m

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _from_int(self, n):
        return int(n) % self.m

    def _add(self, x, y):
        return (x + y) % self.m

    def _neg(self, x):
        return (-x) % self.m

    def _mul(self, x, y):
        return (x * y) % self.m

    def _inverse_payload(self, x):
        if math.gcd(x, self.m) != 1:
            return None
        return pow(x, -1, self.m)

    def _payloads(self):
        return iter(range(self.m))

    def _random_payload(self, rng):
        return rng.randrange(self.m)

    def _format(self, x):
        return str(x)

    def _to_json(self, x):
        return x

    def _from_json(self, data):
        return int(data) % self.m

    def matrix_is_invertible(self, rows) -> bool:
        if not rows:
            return True
        det = sympy.Matrix([[a.payload for a in row] for row in rows]).det()
        return math.gcd(int(det) % self.m, self.m) == 1

    def to_dict(self):
        return {'kind': self.kind, 'm': self.m}

    def __str__(self):
        return f"Z/{self.m}"


# ==========================================
# GROUP RINGS
# ==========================================

@dataclass(frozen=True)
class GroupRing(RingDescriptor):
    base: ZModRing
    group: GroupTable
    kind = RING_KIND_GROUP_RING

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def size(self) -> int:
        return self.m ** self.group.order

    @property
    def is_commutative(self) -> bool:
        return self.group.is_abelian

    @property
    def characteristic(self) -> int:
        return self.m

    def basis(self, g: int, coefficient: int = 1) -> RingElem:
        payload = [0] * self.group.order
        payload[g] = coefficient % self.m
        return RingElem(self, tuple(payload))

    def _zero(self):
        return (0,) * self.group.order

    def _one(self):
        return self._from_int(1)

    def _from_int(self, n):
        payload = [0] * self.group.order
        payload[self.group.identity] = int(n) % self.m
        return tuple(payload)

    def _add(self, x, y):
        m = self.m
        return tuple((a + b) % m for a, b in zip(x, y))

    def _neg(self, x):
        m = self.m
        return tuple((-a) % m for a in x)

    def _mul(self, x, y):
        m, mult = self.m, self.group.mult
        out = [0] * self.group.order
        for i, a in enumerate(x):
            if a:
                row = mult[i]
                for j, b in enumerate(y):
                    if b:
                        out[row[j]] += a * b
        return tuple(c % m for c in out)

    def regular_matrix(self, x) -> List[List[int]]:
        """Matrix of the right action v -> v*x on coefficient row vectors"""
        g, mult = self.group.order, self.group.mult
        matrix = [[0] * g for _ in range(g)]
        for i in range(g):
            for j, a in enumerate(x):
                if a:
                    matrix[i][mult[i][j]] += a
        return [[c % self.m for c in row] for row in matrix]

    def _inverse_payload(self, x):
        return _group_ring_inverse(self, x)

    def _payloads(self):
        return itertools.product(range(self.m), repeat=self.group.order)

    def _random_payload(self, rng):
        return tuple(rng.randrange(self.m) for _ in range(self.group.order))

    def _format(self, x):
        terms = []
        for g, c in enumerate(x):
            if not c:
                continue
            if g == self.group.identity:
                terms.append(str(c))
            elif c == 1:
                terms.append(self.group.label(g))
            else:
                terms.append(f"{c}*{self.group.label(g)}")
        return '[' + (' + '.join(terms) if terms else '0') + ']'

    def _to_json(self, x):
        return list(x)

    def _from_json(self, data):
        if isinstance(data, int):
            return self._from_int(data)
        if len(data) != self.group.order:
            raise RingError(f"Group ring element needs {self.group.order} coefficients")
        return tuple(int(c) % self.m for c in data)

    def matrix_is_invertible(self, rows) -> bool:
        n = len(rows)
        if n == 0:
            return True
        g = self.group.order
        big = [[0] * (n * g) for _ in range(n * g)]
        for i in range(n):
            for j in range(n):
                block = self.regular_matrix(rows[i][j].payload)
                for s in range(g):
                    for t in range(g):
                        big[i * g + s][j * g + t] = block[s][t]
        det = sympy.Matrix(big).det()
        return math.gcd(int(det) % self.m, self.m) == 1

    def to_dict(self):
        return {'kind': self.kind, 'm': self.m, 'group': self.group.to_dict()}

    def __str__(self):
        return f"Z/{self.m}[{self.group}]"


@lru_cache(maxsize=2 ** 16)
def _group_ring_inverse(ring: GroupRing, x: Tuple[int, ...]):
    matrix = sympy.Matrix(ring.regular_matrix(x))
    if math.gcd(int(matrix.det()) % ring.m, ring.m) != 1:
        return None
    inverse = matrix.inv_mod(ring.m)
    e = ring.group.identity
    return tuple(int(inverse[e, k]) % ring.m for k in range(ring.group.order))


# ==========================================
# PRODUCTS
# ==========================================

@dataclass(frozen=True)
class ProductRing(RingDescriptor):
    factors: Tuple[RingDescriptor, ...]
    kind = RING_KIND_PRODUCT

    @property
    def size(self) -> int:
        return math.prod(f.size for f in self.factors)

    @property
    def is_commutative(self) -> bool:
        return all(f.is_commutative for f in self.factors)

    @property
    def characteristic(self) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b), (f.characteristic for f in self.factors), 1)

    def project(self, a: RingElem, i: int) -> RingElem:
        return RingElem(self.factors[i], a.payload[i])

    def _zero(self):
        return tuple(f._zero() for f in self.factors)

    def _one(self):
        return tuple(f._one() for f in self.factors)

    def _from_int(self, n):
        return tuple(f._from_int(n) for f in self.factors)

    def _add(self, x, y):
        return tuple(f._add(a, b) for f, a, b in zip(self.factors, x, y))

    def _neg(self, x):
        return tuple(f._neg(a) for f, a in zip(self.factors, x))

    def _mul(self, x, y):
        return tuple(f._mul(a, b) for f, a, b in zip(self.factors, x, y))

    def _inverse_payload(self, x):
        parts = [f._inverse_payload(a) for f, a in zip(self.factors, x)]
        if any(p is None for p in parts):
            return None
        return tuple(parts)

    def _payloads(self):
        return itertools.product(*(f._payloads() for f in self.factors))

    def _random_payload(self, rng):
        return tuple(f._random_payload(rng) for f in self.factors)

    def _format(self, x):
        return '(' + ', '.join(f._format(a) for f, a in zip(self.factors, x)) + ')'

    def _to_json(self, x):
        return [f._to_json(a) for f, a in zip(self.factors, x)]

    def _from_json(self, data):
        if isinstance(data, int):
            return self._from_int(data)
        return tuple(f._from_json(d) for f, d in zip(self.factors, data))

    def matrix_is_invertible(self, rows) -> bool:
        return all(
            f.matrix_is_invertible([[RingElem(f, a.payload[i]) for a in row] for row in rows])
            for i, f in enumerate(self.factors)
        )

    def to_dict(self):
        return {'kind': self.kind, 'factors': [f.to_dict() for f in self.factors]}

    def __str__(self):
        return ' x '.join(str(f) for f in self.factors)


# ==========================================
# CONSTRUCTION
# ==========================================

def ring_make(kind: str, m: Optional[int] = None, group=None, factors: Sequence[RingDescriptor] = ()) -> RingDescriptor:
    """
    Build a coefficient ring descriptor

    Args:
        kind (str): 'zmod', 'group_ring' or 'product'
        m (int): Modulus for zmod and group rings
        group: GroupTable or builder name for group rings
        factors: Factor descriptors for products

    Returns:
        RingDescriptor: Validated descriptor

    Raises:
        SizeOverflow: If the ring exceeds RING_SIZE_LIMIT
        TableInvalid: If the group table is not a group
    """
    limit = get_lfunctions_setting('RING_SIZE_LIMIT')
    if kind == RING_KIND_ZMOD:
        ring = ZModRing(int(m))
    elif kind == RING_KIND_GROUP_RING:
        if isinstance(group, str):
            group = build_group(group)
        ring = GroupRing(ZModRing(int(m)), group)
    elif kind == RING_KIND_PRODUCT:
        if not factors:
            raise RingError("A product ring needs at least one factor")
        ring = ProductRing(tuple(factors))
    else:
        raise RingError(f"Unknown ring kind {kind}")
    if ring.size > limit:
        raise SizeOverflow(ring.size, limit)
    return ring


def ring_is_unit(a: RingElem) -> bool:
    return a.ring.is_unit(a)


def ring_inverse(a: RingElem) -> RingElem:
    """Two-sided inverse, raising NotAUnit for non-units"""
    return a.ring.inverse(a)


# ==========================================
# UNITS
# ==========================================

class UnitGroup:
    """
    The unit group of a finite ring, enumerated once and indexed

    Attributes:
        ring: Owning ring
        elements: Units in enumeration order
        index: Payload to position
    """

    def __init__(self, ring: RingDescriptor):
        self.ring = ring
        self.elements = [a for a in ring.elements() if ring.is_unit(a)]
        self.index = {a.payload: i for i, a in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: RingElem) -> bool:
        return a.payload in self.index

    def mul(self, i: int, j: int) -> int:
        return self.index[(self.elements[i] * self.elements[j]).payload]

    def inverse(self, i: int) -> int:
        return self.index[self.ring.inverse(self.elements[i]).payload]

    def closure(self, generators: Iterable[RingElem]) -> FrozenSet[RingElem]:
        """Subgroup generated by the given units, by breadth-first products"""
        generators = list({g.payload: g for g in generators}.values())
        found = {self.ring.one.payload: self.ring.one}
        frontier = [self.ring.one]
        while frontier:
            new = []
            for a in frontier:
                for g in generators:
                    b = a * g
                    if b.payload not in found:
                        found[b.payload] = b
                        new.append(b)
            frontier = new
        return frozenset(found.values())


_UNIT_GROUPS: Dict[RingDescriptor, UnitGroup] = {}
_UNIT_GROUPS_LOCK = threading.Lock()


def ring_units(ring: RingDescriptor) -> UnitGroup:
    """
    Enumerate and index the units of a ring (memoized per ring)

    Raises:
        EnumerationTooLarge: If the ring exceeds ENUMERATION_LIMIT
    """
    with _UNIT_GROUPS_LOCK:
        units = _UNIT_GROUPS.get(ring)
        if units is None:
            units = UnitGroup(ring)
            _UNIT_GROUPS[ring] = units
            logger.debug(f"Enumerated {units.order} units of {ring}")
    return units


# ==========================================
# JACOBSON RADICAL
# ==========================================

@dataclass(frozen=True)
class JacobsonRadical:
    """
    The Jacobson radical of a finite ring

    Attributes:
        ring: Owning ring
        mode: 'structural' or 'definitional'
        description: Human readable generators
    """

    ring: RingDescriptor
    mode: str
    description: str
    predicate: Callable[[Any], bool] = field(compare=False, repr=False)

    def __contains__(self, a: RingElem) -> bool:
        return self.predicate(a.payload)

    def elements(self) -> FrozenSet[RingElem]:
        return frozenset(a for a in self.ring.elements() if a in self)

    @property
    def size(self) -> int:
        return len(self.elements())


def _radical_of(m: int) -> int:
    return math.prod(sympy.primefactors(m))


def _structural_radical(ring: RingDescriptor) -> Optional[JacobsonRadical]:
    if isinstance(ring, ZModRing):
        r = _radical_of(ring.m)
        return JacobsonRadical(ring, RADICAL_STRUCTURAL, f"({r})", lambda x: x % r == 0)
    if isinstance(ring, GroupRing):
        primes = sympy.primefactors(ring.m)
        if len(primes) != 1:
            return None
        ell, g = primes[0], ring.group.order
        if g == ell ** sympy.multiplicity(ell, g):
            return JacobsonRadical(
                ring, RADICAL_STRUCTURAL, f"({ell}, augmentation ideal)",
                lambda x: sum(x) % ell == 0,
            )
        if g % ell:
            return JacobsonRadical(
                ring, RADICAL_STRUCTURAL, f"({ell})",
                lambda x: all(c % ell == 0 for c in x),
            )
        return None
    if isinstance(ring, ProductRing):
        parts = [_structural_radical(f) for f in ring.factors]
        if any(p is None for p in parts):
            return None
        return JacobsonRadical(
            ring, RADICAL_STRUCTURAL, ' x '.join(p.description for p in parts),
            lambda x: all(p.predicate(a) for p, a in zip(parts, x)),
        )
    return None


def ring_jacobson_radical(ring: RingDescriptor, mode: Optional[str] = None) -> JacobsonRadical:
    """
    The Jacobson radical {x : 1 - r x is a unit for every r}

    Structural mode covers Z/m, Z/l^n[G] for l-groups G (the ideal of l and
    the augmentation ideal) and for |G| prime to l (the ideal l). Other rings
    fall back to the definitional double scan.

    Args:
        ring (RingDescriptor): The ring
        mode (str): Force 'structural' or 'definitional'; None picks

    Returns:
        JacobsonRadical: Membership predicate and description

    Raises:
        EnumerationTooLarge: If the definitional scan exceeds RADICAL_SCAN_LIMIT
    """
    if mode != RADICAL_DEFINITIONAL:
        structural = _structural_radical(ring)
        if structural is not None:
            return structural
        if mode == RADICAL_STRUCTURAL:
            raise RingError(f"No structural radical rule for {ring}")

    limit = get_lfunctions_setting('RADICAL_SCAN_LIMIT')
    if ring.size > limit:
        raise EnumerationTooLarge(f"radical of {ring}", ring.size, limit)
    units = ring_units(ring)
    elements = list(ring.elements())
    one = ring.one
    members = frozenset(
        x.payload for x in elements
        if all((one - r * x).payload in units.index for r in elements)
    )
    logger.debug(f"Definitional radical of {ring}: {len(members)} elements")
    return JacobsonRadical(ring, RADICAL_DEFINITIONAL, f"{len(members)} elements", lambda x: x in members)


# ==========================================
# HOMOMORPHISMS
# ==========================================

@dataclass(frozen=True)
class RingHom:
    """
    A ring homomorphism between coefficient rings

    Attributes:
        source, target: Descriptors
        kind: One of the HOM_KIND_* constants
        data: Kind specific evaluation data (hashable)
    """

    source: RingDescriptor
    target: RingDescriptor
    kind: str
    data: Tuple = ()

    def __call__(self, a: RingElem) -> RingElem:
        return ring_hom_apply(self, a)

    @property
    def name(self) -> str:
        if self.kind == HOM_KIND_CHARACTER:
            return f"character(zeta={self.target.format_element(RingElem(self.target, self.data[0]))})"
        if self.kind == HOM_KIND_COMPOSITE:
            return f"{self.data[1].name}.{self.data[0].name}"
        return f"{self.kind}->{self.target}"

    def to_dict(self):
        return {'kind': self.kind, 'source': self.source.to_dict(), 'target': self.target.to_dict()}


def ring_hom_apply(h: RingHom, a: RingElem) -> RingElem:
    """Evaluate h on a"""
    if a.ring != h.source:
        raise RingMismatch(h.source, a.ring)
    x = a.payload
    target = h.target

    if h.kind == HOM_KIND_IDENTITY:
        return a
    if h.kind == HOM_KIND_COMPOSITE:
        first, second = h.data
        return ring_hom_apply(second, ring_hom_apply(first, a))
    if h.kind == HOM_KIND_AUGMENTATION:
        return target.from_int(sum(x))
    if h.kind == HOM_KIND_ABELIANIZATION:
        projection, = h.data
        out = [0] * target.group.order
        for g, c in enumerate(x):
            out[projection[g]] += c
        return RingElem(target, tuple(c % target.m for c in out))
    if h.kind == HOM_KIND_CHARACTER:
        zeta_payload, exponents = h.data
        powers = _character_powers(target, zeta_payload, h.source.group.order)
        total = target.zero
        for g, c in enumerate(x):
            if c:
                total = total + target.from_int(c) * powers[exponents[g]]
        return total
    if h.kind == HOM_KIND_ZMOD_PROJECTION:
        if isinstance(target, GroupRing):
            return RingElem(target, tuple(c % target.m for c in x))
        return target.from_int(x)
    if h.kind == HOM_KIND_CRT_SPLIT:
        return RingElem(target, tuple(f._from_int(x) for f in target.factors))
    raise RingError(f"Unknown homomorphism kind {h.kind}")


@lru_cache(maxsize=None)
def _character_powers(target: RingDescriptor, zeta_payload, r: int) -> Tuple[RingElem, ...]:
    zeta = RingElem(target, zeta_payload)
    powers = [target.one]
    for _ in range(1, r):
        powers.append(powers[-1] * zeta)
    return tuple(powers)


def _validate_hom(h: RingHom) -> RingHom:
    if ring_hom_apply(h, h.source.one) != h.target.one:
        raise RingError(f"{h.name} does not map 1 to 1")
    rng = random.Random(get_lfunctions_setting('RANDOM_SEED'))
    for _ in range(get_lfunctions_setting('HOM_CHECK_SAMPLES')):
        a, b = h.source.random_element(rng), h.source.random_element(rng)
        if ring_hom_apply(h, a + b) != ring_hom_apply(h, a) + ring_hom_apply(h, b):
            raise RingError(f"{h.name} is not additive")
        if ring_hom_apply(h, a * b) != ring_hom_apply(h, a) * ring_hom_apply(h, b):
            raise RingError(f"{h.name} is not multiplicative")
    return h


def ring_hom_make(kind: str, source: RingDescriptor, zeta: Optional[RingElem] = None,
                  modulus: Optional[int] = None) -> RingHom:
    """
    Build and validate a ring homomorphism out of source

    Args:
        kind (str): One of the HOM_KIND_* constants (not composite)
        source (RingDescriptor): Source ring
        zeta (RingElem): Character value for 'character'
        modulus (int): Target modulus m' | m for 'zmod_projection'

    Returns:
        RingHom: A validated homomorphism

    Raises:
        NonCyclicGroup: Character on a non-cyclic group
        BadCharacterOrder: zeta^|G| != 1
    """
    if kind == HOM_KIND_IDENTITY:
        return RingHom(source, source, kind)

    if kind == HOM_KIND_AUGMENTATION:
        _require_group_ring(source, kind)
        return _validate_hom(RingHom(source, source.base, kind))

    if kind == HOM_KIND_ABELIANIZATION:
        _require_group_ring(source, kind)
        quotient, projection = abelianization(source.group)
        return _validate_hom(RingHom(source, GroupRing(source.base, quotient), kind, (projection,)))

    if kind == HOM_KIND_CHARACTER:
        _require_group_ring(source, kind)
        exponents = cyclic_exponents(source.group)
        r = source.group.order
        if zeta is None or zeta ** r != zeta.ring.one:
            raise BadCharacterOrder(zeta, r)
        if source.m % zeta.ring.characteristic:
            raise RingMismatch(source.base, zeta.ring)
        return _validate_hom(RingHom(source, zeta.ring, kind, (zeta.payload, exponents)))

    if kind == HOM_KIND_ZMOD_PROJECTION:
        m = source.m if isinstance(source, (ZModRing, GroupRing)) else None
        if m is None or modulus is None or modulus < 2 or m % modulus:
            raise RingError(f"Cannot reduce {source} modulo {modulus}")
        if isinstance(source, GroupRing):
            target = GroupRing(ZModRing(modulus), source.group)
        else:
            target = ZModRing(modulus)
        return _validate_hom(RingHom(source, target, kind))

    if kind == HOM_KIND_CRT_SPLIT:
        if not isinstance(source, ZModRing):
            raise RingError(f"CRT split needs Z/m, got {source}")
        factors = tuple(
            ZModRing(p ** e) for p, e in sorted(sympy.factorint(source.m).items())
        )
        return _validate_hom(RingHom(source, ProductRing(factors), kind))

    raise RingError(f"Unknown homomorphism kind {kind}")


def ring_hom_compose(second: RingHom, first: RingHom) -> RingHom:
    """second o first"""
    if first.target != second.source:
        raise RingMismatch(first.target, second.source)
    return RingHom(first.source, second.target, HOM_KIND_COMPOSITE, (first, second))


def _require_group_ring(source, kind):
    if not isinstance(source, GroupRing):
        raise RingError(f"{kind} needs a group ring source, got {source}")
    if kind == HOM_KIND_CHARACTER and not _is_cyclic(source.group):
        raise NonCyclicGroup(source.group.order)


def _is_cyclic(group: GroupTable) -> bool:
    return any(group.element_order(a) == group.order for a in range(group.order))


def hensel_root_of_unity(ring: ZModRing, r: int) -> RingElem:
    """
    Element of exact order r in Z/l^n, lifted from the smallest one mod l

    Requires r | l - 1 (hence gcd(r, l) = 1).

    Raises:
        BadCharacterOrder: If Z/l^n has no element of order r
    """
    primes = sympy.primefactors(ring.m)
    if len(primes) != 1 or (primes[0] - 1) % r:
        raise BadCharacterOrder(f"mu_{r} in {ring}", r)
    ell = primes[0]
    x = next(
        a for a in range(1, ell)
        if pow(a, r, ell) == 1 and all(pow(a, r // d, ell) != 1 for d in sympy.primefactors(r))
    ) if r > 1 else 1
    m = ring.m
    while True:
        step = (pow(x, r, m) - 1) * pow(r * pow(x, r - 1, m), -1, m)
        lifted = (x - step) % m
        if lifted == x:
            break
        x = lifted
    return ring.from_int(x)
