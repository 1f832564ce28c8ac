"""
Finite field arithmetic

Fields F_q are galois FieldArray classes built over the modulus chosen by
ff_make. Extensions F_{q^d} produced by ff_extend remember their declared
base and carry an explicit embedding of it, so norms and restrictions never
depend on compatibility between the defining polynomials.

Elements are stored by their integer encoding sum(c_i * p**i). Integer order
is the lexicographic order on coefficient vectors read from the top degree
down, and it is the enumeration order used everywhere in the package.

Usage:
    F5 = ff_make(5, 1)
    F25 = ff_extend(F5, 2)
    a = F25.element(7)
    ff_norm(a, F5)
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Tuple

import galois
import numpy as np
import sympy

from lfunctions.exceptions import (
    BadOrder,
    EnumerationTooLarge,
    NonPrimeCharacteristic,
    NotInSubgroup,
    NotInTower,
    ZeroToNegativePower,
)
from lfunctions.settings import get_lfunctions_setting

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _galois_field(p: int, modulus: Tuple[int, ...]):
    """galois class for Z/p[x]/(modulus); modulus is low-to-high"""
    if len(modulus) == 2:
        return galois.GF(p)
    poly = galois.Poly(list(reversed(modulus)), field=galois.GF(p))
    return galois.GF(p ** (len(modulus) - 1), irreducible_poly=poly)


class FqField:
    """
    A finite field F_q, q = p^nu, possibly declared as an extension of a base

    Attributes:
        p: Characteristic
        nu: Degree over the prime field
        modulus: Monic irreducible polynomial, coefficients low-to-high
        q: Number of elements
        base: Declared base field of the tower, or None for a root field
        degree: Degree over the declared base (1 for root fields)
        GF: The galois FieldArray class doing the arithmetic
    """

    def __init__(self, p: int, nu: int, modulus: Sequence[int],
                 base: Optional['FqField'] = None, degree: int = 1):
        self.p = p
        self.nu = nu
        self.modulus = tuple(int(c) for c in modulus)
        self.q = p ** nu
        self.base = base
        self.degree = degree
        self.GF = _galois_field(p, self.modulus)
        self._embedding = None
        self._restriction = None

    # ==========================================
    # IDENTITY
    # ==========================================

    def __eq__(self, other):
        return (
            isinstance(other, FqField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"FqField(p={self.p}, nu={self.nu})"

    def __str__(self):
        return f"F_{self.q}"

    def to_dict(self):
        return {'p': self.p, 'nu': self.nu, 'modulus': list(self.modulus)}

    # ==========================================
    # ELEMENTS
    # ==========================================

    def element(self, value) -> 'FqElem':
        value = int(value)
        if not 0 <= value < self.q:
            raise ValueError(f"{value} is not an element encoding of {self}")
        return FqElem(self, value)

    def from_coeffs(self, coeffs: Sequence[int]) -> 'FqElem':
        if len(coeffs) > self.nu:
            raise ValueError(f"Too many coefficients for {self}")
        return FqElem(self, sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coeffs)))

    @property
    def zero(self) -> 'FqElem':
        return FqElem(self, 0)

    @property
    def one(self) -> 'FqElem':
        return FqElem(self, 1)

    def array(self, values):
        """galois array of the given integer encodings"""
        return self.GF(np.asarray(values, dtype=np.int64))

    def coeffs_of(self, value: int) -> Tuple[int, ...]:
        return tuple((value // self.p ** i) % self.p for i in range(self.nu))

    # ==========================================
    # TOWER
    # ==========================================

    def embed_int(self, value: int) -> int:
        """Image of a base element encoding in this field"""
        if self.base is None:
            return int(value)
        return int(self._embedding[int(value)])

    def embed_array(self, values):
        """Vectorised embed_int, returns a galois array of this field"""
        if self.base is None:
            return self.array(values)
        return self.GF(self._embedding[np.asarray(values, dtype=np.int64)])

    def embed(self, a: 'FqElem') -> 'FqElem':
        if self.base is None or a.field != self.base:
            if a.field == self and self.base is None:
                return a
            raise NotInTower(a.field, self)
        return FqElem(self, self.embed_int(a.value))

    def restrict_int(self, value: int) -> int:
        """Base encoding of an element of the embedded copy of the base"""
        if self.base is None:
            return int(value)
        if self._restriction is None:
            self._restriction = {int(v): i for i, v in enumerate(self._embedding)}
        try:
            return self._restriction[int(value)]
        except KeyError:
            raise NotInTower(self, self.base)

    def frobenius_array(self, arr, q: int, times: int = 1):
        """Coordinatewise q-power Frobenius applied `times` times"""
        return arr ** (q ** times)


@dataclass(frozen=True)
class FqElem:
    """An element of a finite field, stored by integer encoding"""

    field: FqField
    value: int

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.field.coeffs_of(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def to_json(self):
        return list(self.coeffs)

    def _gf(self):
        return self.field.GF(self.value)

    def _coerce(self, other) -> 'FqElem':
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise NotInTower(other.field, self.field)
            return other
        if isinstance(other, int):
            return FqElem(self.field, other % self.field.p)
        return NotImplemented

    def _wrap(self, x) -> 'FqElem':
        return FqElem(self.field, int(x))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(self._gf() + other._gf())

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(self._gf() - other._gf())

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return self._wrap(-self._gf())

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(self._gf() * other._gf())

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * ff_pow(other, -1)

    def __pow__(self, k):
        return ff_pow(self, k)

    def __repr__(self):
        return f"{self.field}({self.value})"


# ==========================================
# OPERATIONS
# ==========================================

@lru_cache(maxsize=None)
def ff_make(p: int, nu: int) -> FqField:
    """
    Build F_{p^nu} over the smallest monic irreducible modulus

    The modulus is galois' minimal irreducible polynomial, i.e. the one with
    the smallest integer encoding; over Z/2 in degree 3 this is x^3 + x + 1.

    Args:
        p (int): Characteristic
        nu (int): Degree over the prime field

    Returns:
        FqField: The field, cached per (p, nu)

    Raises:
        NonPrimeCharacteristic: If p is not prime
    """
    if not isinstance(p, int) or p < 2 or not galois.is_prime(p):
        raise NonPrimeCharacteristic(p)
    if nu < 1:
        raise ValueError(f"Extension degree must be positive, got {nu}")
    poly = galois.irreducible_poly(p, nu, method="min")
    modulus = [int(c) for c in reversed(poly.coeffs)]
    logger.debug(f"Built F_{p ** nu} with modulus {modulus}")
    return FqField(p, nu, modulus)


@lru_cache(maxsize=None)
def ff_extend(base: FqField, d: int) -> FqField:
    """
    Build F_{q^d} together with a fixed embedding of base

    The embedding sends the generator x of base to the smallest root of
    base.modulus in the extension (identity for d = 1).

    Args:
        base (FqField): Declared base of the tower
        d (int): Degree of the extension

    Returns:
        FqField: Extension with base and degree recorded
    """
    if d < 1:
        raise ValueError(f"Extension degree must be positive, got {d}")
    target = ff_make(base.p, base.nu * d)
    ext = FqField(target.p, target.nu, target.modulus, base=base, degree=d)

    if d == 1 or base.nu == 1:
        ext._embedding = np.arange(base.q, dtype=np.int64)
        return ext

    K = ext.GF
    poly = galois.Poly(list(reversed(base.modulus)), field=K)
    roots = np.nonzero(poly(K.elements) == 0)[0]
    root = K(int(roots.min()))

    values = np.arange(base.q, dtype=np.int64)
    image = K.Zeros(base.q)
    power = K(1)
    for i in range(base.nu):
        digits = (values // base.p ** i) % base.p
        image = image + K(digits) * power
        power = power * root
    ext._embedding = image.view(np.ndarray).astype(np.int64)
    logger.debug(f"Embedded {base} into {ext} via root {int(root)}")
    return ext


def ff_pow(a: FqElem, k: int) -> FqElem:
    """a^k; zero to a negative power raises ZeroToNegativePower"""
    if a.is_zero():
        if k < 0:
            raise ZeroToNegativePower(k)
        return a.field.one if k == 0 else a.field.zero
    return FqElem(a.field, int(a._gf() ** int(k)))


def ff_frobenius(a: FqElem, q: int, times: int = 1) -> FqElem:
    """The q-power Frobenius applied `times` times"""
    return ff_pow(a, q ** times)


def ff_norm(a: FqElem, down_to: Optional[FqField] = None) -> FqElem:
    """
    Norm from a's field down to the declared base of its tower

    Args:
        a (FqElem): Element of F_{q^d}
        down_to (FqField): The base F_q; defaults to a.field.base

    Returns:
        FqElem: prod_{i<d} a^{q^i} as an element of down_to

    Raises:
        NotInTower: If down_to is not the declared base of a's field
    """
    field = a.field
    if down_to is None:
        down_to = field.base if field.base is not None else field

    if field.base is None or field.degree == 1:
        if field == down_to:
            return FqElem(down_to, a.value)
        raise NotInTower(field, down_to)
    if field.base != down_to:
        raise NotInTower(field, down_to)

    if a.is_zero():
        return down_to.zero
    q = down_to.q
    norm = ff_pow(a, (q ** field.degree - 1) // (q - 1))
    return FqElem(down_to, field.restrict_int(norm.value))


def ff_norm_array(field: FqField, arr):
    """Vectorised norm to the declared base; returns base encodings"""
    if field.base is None or field.degree == 1:
        return arr.view(np.ndarray).astype(np.int64)
    q = field.base.q
    norms = (arr ** ((q ** field.degree - 1) // (q - 1))).view(np.ndarray)
    return np.array([field.restrict_int(int(v)) for v in norms], dtype=np.int64)


def ff_enumerate(field: FqField) -> Iterator[FqElem]:
    """
    Yield every element once, in integer-encoding order

    Raises:
        EnumerationTooLarge: If q exceeds ENUMERATION_LIMIT
    """
    limit = get_lfunctions_setting('ENUMERATION_LIMIT')
    if field.q > limit:
        raise EnumerationTooLarge(str(field), field.q, limit)
    return (FqElem(field, v) for v in range(field.q))


def ff_dlog_mu(z: FqElem, zeta: FqElem, r: int) -> int:
    """
    Discrete logarithm inside mu_r by scanning the r powers of zeta

    Args:
        z (FqElem): An r-th root of unity
        zeta (FqElem): Generator of exact order r
        r (int): Order of the subgroup

    Returns:
        int: The unique e in [0, r) with zeta^e = z

    Raises:
        BadOrder: If zeta does not have exact order r
        NotInSubgroup: If z^r != 1
    """
    if z.field != zeta.field:
        raise NotInTower(z.field, zeta.field)
    one = zeta.field.one
    powers = []
    current = one
    for k in range(r):
        if k > 0 and current == one:
            raise BadOrder(zeta, r)
        powers.append(current)
        current = current * zeta
    if current != one:
        raise BadOrder(zeta, r)
    if ff_pow(z, r) != one:
        raise NotInSubgroup(z, r)
    return powers.index(z)


@lru_cache(maxsize=None)
def ff_root_of_unity(field: FqField, r: int) -> FqElem:
    """
    Canonical generator of mu_r(F_q): the smallest encoding of exact order r

    Raises:
        BadOrder: If r does not divide q - 1
    """
    if r < 1 or (field.q - 1) % r:
        raise BadOrder(f"mu_{r}({field})", r)
    if r == 1:
        return field.one
    candidates = field.GF(np.arange(1, field.q, dtype=np.int64))
    exact = candidates ** r == 1
    for prime in sympy.primefactors(r):
        exact &= candidates ** (r // prime) != 1
    first = int(np.nonzero(exact)[0][0]) + 1
    return field.element(first)


def prime_power(q: int) -> Tuple[int, int]:
    """Split q = p^nu, raising NonPrimeCharacteristic otherwise"""
    factors = sympy.factorint(q) if q >= 2 else {}
    if len(factors) != 1:
        raise NonPrimeCharacteristic(q)
    (p, nu), = factors.items()
    return int(p), int(nu)
