"""
K1 of finite semilocal rings

Every invertible matrix over a semilocal ring is reduced to diag(u, 1, ..., 1)
by elementary moves, and u represents its class in K1. The moves are kept as
a replayable certificate. Equality of classes is decided exactly where that is
feasible (equal representatives, commutative rings, tiny rings through the
Vaserstein subgroup) and otherwise tested against a family of invariants.
"""
import logging
import random
import threading
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import sympy

from lfunctions.algebra.matrices import RANDOM_COMBINATION_ATTEMPTS, Matrix
from lfunctions.algebra.ring import (
    BaseRing,
    GroupRing,
    ProductRing,
    RingDescriptor,
    RingElem,
    RingHom,
    ZModRing,
    ring_hom_apply,
    ring_hom_make,
    ring_units,
)
from lfunctions.algebra.series import SeriesRing, TruncSeries, ts_apply_hom
from lfunctions.constants import (
    HOM_KIND_ABELIANIZATION,
    HOM_KIND_AUGMENTATION,
    HOM_KIND_ZMOD_PROJECTION,
    MOVE_ADDCOL,
    MOVE_ADDROW,
    MOVE_SCALE_PAIR,
    MOVE_SWAP,
    VERDICT_DISTINGUISHED,
    VERDICT_EQUAL_CERTIFIED,
    VERDICT_EQUAL_ON_INVARIANTS,
)
from lfunctions.exceptions import (
    CertificateReplayFailed,
    EnumerationTooLarge,
    K1Error,
    NoncommutativeRing,
    NotInvertible,
    PivotSearchExhausted,
    RingMismatch,
)
from lfunctions.settings import get_lfunctions_setting

logger = logging.getLogger(__name__)


# ==========================================
# MOVES AND CERTIFICATES
# ==========================================

@dataclass(frozen=True)
class Move:
    """
    One elementary move

    addrow: row i += factor * row j
    addcol: col i += col j * factor
    swap-as-whitehead: (row i, row j) <- (row j, -row i)
    scale-pair: col i-1 *= factor, col i *= factor^{-1}
    """

    op: str
    i: int
    j: int = -1
    factor: object = None

    def apply(self, rows: List[List]) -> None:
        if self.op == MOVE_ADDROW:
            source = rows[self.j]
            rows[self.i] = [a + self.factor * b for a, b in zip(rows[self.i], source)]
        elif self.op == MOVE_ADDCOL:
            for row in rows:
                row[self.i] = row[self.i] + row[self.j] * self.factor
        elif self.op == MOVE_SWAP:
            rows[self.i], rows[self.j] = rows[self.j], [-a for a in rows[self.i]]
        elif self.op == MOVE_SCALE_PAIR:
            inverse = self.factor.ring.inverse(self.factor)
            for row in rows:
                row[self.i - 1] = row[self.i - 1] * self.factor
                row[self.i] = row[self.i] * inverse
        else:
            raise CertificateReplayFailed(f"unknown move {self.op}")

    def to_dict(self, ring: BaseRing) -> Dict:
        data = {'op': self.op, 'i': self.i}
        if self.j >= 0:
            data['j'] = self.j
        if self.factor is not None:
            data['factor'] = ring.element_to_json(self.factor)
        return data


@dataclass
class ReductionCertificate:
    """
    Transcript of elementary moves taking source to target

    Attributes:
        source: The matrix the moves start from
        moves: Elementary moves in order
        target: The matrix they end at
    """

    source: Matrix
    moves: List[Move]
    target: Matrix

    def replay(self) -> Matrix:
        """
        Re-apply every move to the source and compare with the target

        Raises:
            CertificateReplayFailed: If the result differs from the target
        """
        rows = self.source.to_lists()
        for move in self.moves:
            move.apply(rows)
        result = Matrix(self.source.ring, rows)
        if result != self.target:
            raise CertificateReplayFailed(f"{len(self.moves)} moves do not reach the recorded target")
        return result

    def to_dict(self) -> Dict:
        ring = self.source.ring
        return {
            'size': self.source.n,
            'moves': [move.to_dict(ring) for move in self.moves],
            'target': [[ring.element_to_json(a) for a in row] for row in self.target.rows],
        }


# ==========================================
# CLASSES
# ==========================================

@dataclass
class K1Class:
    """
    A class in K1 of a finite ring, carried by a unit representative

    Attributes:
        ring: Coefficient ring or series ring
        rep: Unit representative
        certificate: Optional reduction transcript producing rep
        invariants_cache: Hom name to image of rep
    """

    ring: BaseRing
    rep: object
    certificate: Optional[ReductionCertificate] = None
    invariants_cache: Dict[str, object] = field(default_factory=dict)

    def __mul__(self, other: 'K1Class') -> 'K1Class':
        if other.ring != self.ring:
            raise RingMismatch(self.ring, other.ring)
        return K1Class(self.ring, self.rep * other.rep)

    def inverse(self) -> 'K1Class':
        return K1Class(self.ring, self.ring.inverse(self.rep))

    def __pow__(self, k: int) -> 'K1Class':
        rep = self.rep
        if k < 0:
            rep, k = self.ring.inverse(rep), -k
        result = self.ring.one
        while k:
            if k & 1:
                result = result * rep
            rep = rep * rep
            k >>= 1
        return K1Class(self.ring, result)

    def invariant(self, h: RingHom):
        """Image of rep under h (coefficientwise on series), memoized by hom name"""
        if h.name not in self.invariants_cache:
            if isinstance(self.rep, TruncSeries):
                self.invariants_cache[h.name] = ts_apply_hom(self.rep, h)
            else:
                self.invariants_cache[h.name] = ring_hom_apply(h, self.rep)
        return self.invariants_cache[h.name]

    def apply_hom(self, h: RingHom) -> 'K1Class':
        """The transferred class h_*(c), carried by h(rep)"""
        if isinstance(self.rep, TruncSeries):
            image = ts_apply_hom(self.rep, h)
            return K1Class(image.ring, image)
        return K1Class(h.target, ring_hom_apply(h, self.rep))

    def to_dict(self) -> Dict:
        data = {'rep': self.ring.element_to_json(self.rep), 'display': self.ring.format_element(self.rep)}
        if self.certificate is not None:
            data['certificate'] = self.certificate.to_dict()
        return data


@dataclass(frozen=True)
class Verdict:
    """Outcome of comparing two K1 classes"""

    level: str
    reason: str
    invariant: Optional[str] = None

    @property
    def is_equal(self) -> bool:
        return self.level != VERDICT_DISTINGUISHED

    def to_dict(self) -> Dict:
        data = {'level': self.level, 'reason': self.reason}
        if self.invariant:
            data['invariant'] = self.invariant
        return data


def k1_of_unit(u) -> K1Class:
    if not u.ring.is_unit(u):
        raise NotInvertible(1)
    return K1Class(u.ring, u)


# ==========================================
# ELIMINATION
# ==========================================

def _find_pivot(ring: BaseRing, rows: List[List], c: int, rng: random.Random, moves: List[Move]) -> None:
    """Make rows[c][c] a unit using moves on rows c..n-1"""
    n = len(rows)
    if ring.is_unit(rows[c][c]):
        return
    for i in range(c + 1, n):
        if ring.is_unit(rows[i][c]):
            move = Move(MOVE_SWAP, c, i)
            move.apply(rows)
            moves.append(move)
            return

    hints = [rows[i][c] for i in range(c + 1, n)]
    for i in range(c + 1, n):
        if rows[i][c].is_zero():
            continue
        for t in ring.pivot_candidates(rng, hints):
            if ring.is_unit(rows[c][c] + t * rows[i][c]):
                move = Move(MOVE_ADDROW, c, i, t)
                move.apply(rows)
                moves.append(move)
                logger.debug(f"Stable-range pivot in column {c} from row {i}")
                return

    for _ in range(RANDOM_COMBINATION_ATTEMPTS):
        combination = [(i, ring.random_element(rng)) for i in range(c + 1, n)]
        candidate = rows[c][c]
        for i, t in combination:
            candidate = candidate + t * rows[i][c]
        if ring.is_unit(candidate):
            for i, t in combination:
                move = Move(MOVE_ADDROW, c, i, t)
                move.apply(rows)
                moves.append(move)
            return
    raise PivotSearchExhausted(c)


def k1_reduce(M: Matrix) -> Tuple[object, ReductionCertificate]:
    """
    Reduce an invertible matrix to diag(u, 1, ..., 1) by elementary moves

    Returns:
        Tuple of the unit u and the certificate of the reduction

    Raises:
        NotInvertible: If M is not invertible
        PivotSearchExhausted: If no unit pivot turns up (bug trap)
    """
    if not M.is_invertible():
        raise NotInvertible(M.n)
    ring, n = M.ring, M.n
    rng = random.Random(get_lfunctions_setting('RANDOM_SEED'))
    rows = M.to_lists()
    moves: List[Move] = []

    for c in range(n):
        _find_pivot(ring, rows, c, rng, moves)
        pivot_inverse = ring.inverse(rows[c][c])
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                move = Move(MOVE_ADDROW, i, c, -(rows[i][c] * pivot_inverse))
                move.apply(rows)
                moves.append(move)
        for j in range(c + 1, n):
            if not rows[c][j].is_zero():
                move = Move(MOVE_ADDCOL, j, c, -(pivot_inverse * rows[c][j]))
                move.apply(rows)
                moves.append(move)

    for k in range(n - 1, 0, -1):
        d = rows[k][k]
        if d != ring.one:
            move = Move(MOVE_SCALE_PAIR, k, factor=d)
            move.apply(rows)
            moves.append(move)

    rep = rows[0][0] if n else ring.one
    return rep, ReductionCertificate(M, moves, Matrix(ring, rows))


def k1_of_matrix(M: Matrix) -> K1Class:
    """
    The class of an invertible square matrix, with its reduction certificate

    For commutative rings and sizes up to 4 the representative is asserted
    to equal the determinant.
    """
    rep, certificate = k1_reduce(M)
    if M.ring.is_commutative and M.n <= 4 and rep != M.determinant():
        raise K1Error(f"Representative of a {M.n}x{M.n} class differs from its determinant")
    return K1Class(M.ring, rep, certificate)


def k1_of_complex_automorphism(matrices: Sequence[Matrix]) -> K1Class:
    """
    Class of a degreewise automorphism of a bounded free complex

    matrices[i] is the automorphism in degree i; the class is the alternating
    product of the degreewise classes.
    """
    if not matrices:
        raise K1Error("A complex automorphism needs at least one degree")
    ring = matrices[0].ring
    result = K1Class(ring, ring.one)
    for i, f in enumerate(matrices):
        c = k1_of_matrix(f)
        result = result * (c if i % 2 == 0 else c.inverse())
    return result


def k1_det(c: K1Class):
    """The determinant of a class over a commutative ring"""
    if not c.ring.is_commutative:
        raise NoncommutativeRing(c.ring)
    return c.rep


# ==========================================
# VASERSTEIN SUBGROUP
# ==========================================

_VASERSTEIN: Dict[RingDescriptor, FrozenSet] = {}
_VASERSTEIN_LOCK = threading.Lock()


def vaserstein_feasible(ring: BaseRing) -> bool:
    return isinstance(ring, RingDescriptor) and ring.size ** 2 <= get_lfunctions_setting('VASERSTEIN_LIMIT')


def k1_vaserstein_closure(ring: RingDescriptor) -> FrozenSet:
    """
    The subgroup W of units generated by (1 + ab)(1 + ba)^{-1}

    K1(R) = R^x / W for semilocal R. Commutative rings give {1} directly.

    Raises:
        EnumerationTooLarge: If the pair scan exceeds VASERSTEIN_LIMIT
    """
    if ring.is_commutative:
        return frozenset({ring.one.payload})
    limit = get_lfunctions_setting('VASERSTEIN_LIMIT')
    if ring.size ** 2 > limit:
        raise EnumerationTooLarge(f"Vaserstein pairs of {ring}", ring.size ** 2, limit)

    with _VASERSTEIN_LOCK:
        cached = _VASERSTEIN.get(ring)
        if cached is not None:
            return cached
        units = ring_units(ring)
        elements = list(ring.elements())
        one = ring.one
        generators = {}
        for a in elements:
            for b in elements:
                left = one + a * b
                if left.payload not in units.index:
                    continue
                w = left * ring.inverse(one + b * a)
                generators[w.payload] = w
        closure = frozenset(w.payload for w in units.closure(generators.values()))
        logger.info(f"Vaserstein subgroup of {ring}: {len(closure)} of {units.order} units")
        _VASERSTEIN[ring] = closure
        return closure


def k1_order(ring: RingDescriptor) -> int:
    """|K1(R)| = |R^x| / |W| for a ring with a feasible Vaserstein closure"""
    return ring_units(ring).order // len(k1_vaserstein_closure(ring))


# ==========================================
# EQUALITY
# ==========================================

def default_invariant_homs(ring: RingDescriptor) -> List[RingHom]:
    """Commutative quotients registered automatically for a coefficient ring"""
    if isinstance(ring, GroupRing):
        homs = [ring_hom_make(HOM_KIND_AUGMENTATION, ring)]
        if not ring.is_commutative:
            homs.append(ring_hom_make(HOM_KIND_ABELIANIZATION, ring))
        return homs
    return []


def _radical_level(ring: RingDescriptor) -> Optional[RingHom]:
    """Reduction of coefficients modulo rad(m); its kernel lies in the Jacobson radical"""
    if not isinstance(ring, (ZModRing, GroupRing)):
        return None
    level = 1
    for prime in sympy.primefactors(ring.m):
        level *= prime
    if level == ring.m:
        return None
    return ring_hom_make(HOM_KIND_ZMOD_PROJECTION, ring, modulus=level)


def _equal_units(ring: RingDescriptor, a: RingElem, b: RingElem) -> Optional[bool]:
    """Exact K1 equality of two units of a coefficient ring when decidable"""
    if a == b:
        return True
    if ring.is_commutative:
        return False
    if isinstance(ring, ProductRing):
        results = [
            _equal_units(f, RingElem(f, a.payload[i]), RingElem(f, b.payload[i]))
            for i, f in enumerate(ring.factors)
        ]
        if any(r is False for r in results):
            return False
        return None if any(r is None for r in results) else True
    if vaserstein_feasible(ring):
        quotient = a * ring.inverse(b)
        return quotient.payload in k1_vaserstein_closure(ring)
    return None


def k1_equal(c1: K1Class, c2: K1Class, homs: Sequence[RingHom] = ()) -> Verdict:
    """
    Compare two K1 classes of the same ring

    Checks run in order: certificate replay, equal representatives, exact
    decision (commutative rings by determinant, tiny rings by the Vaserstein
    subgroup), then the invariant family (registered homs with commutative
    target, reduction mod T, reduction mod the radical level of m).

    Args:
        c1, c2 (K1Class): Classes over the same ring
        homs (list): Extra homomorphisms out of the coefficient ring

    Returns:
        Verdict: EqualCertified, EqualOnAllInvariants or Distinguished

    Raises:
        RingMismatch: If the classes live over different rings
        CertificateReplayFailed: If a stored certificate does not replay
    """
    if c1.ring != c2.ring:
        raise RingMismatch(c1.ring, c2.ring)
    for c in (c1, c2):
        if c.certificate is not None:
            c.certificate.replay()

    if c1.rep == c2.rep:
        return Verdict(VERDICT_EQUAL_CERTIFIED, 'representatives coincide')

    ring = c1.ring
    if ring.is_commutative:
        return Verdict(VERDICT_DISTINGUISHED, 'determinants differ', 'determinant')

    base = ring.base if isinstance(ring, SeriesRing) else ring
    if isinstance(ring, RingDescriptor):
        decided = _equal_units(ring, c1.rep, c2.rep)
        if decided is True:
            return Verdict(VERDICT_EQUAL_CERTIFIED, 'quotient lies in the Vaserstein subgroup')
        if decided is False:
            return Verdict(VERDICT_DISTINGUISHED, 'quotient outside the Vaserstein subgroup', 'vaserstein')

    checked = []
    for h in list(homs) + default_invariant_homs(base):
        if not h.target.is_commutative:
            continue
        if c1.invariant(h) != c2.invariant(h):
            return Verdict(VERDICT_DISTINGUISHED, f'images under {h.name} differ', h.name)
        checked.append(h.name)

    if isinstance(ring, SeriesRing):
        constant_1, constant_2 = c1.rep.coeffs[0], c2.rep.coeffs[0]
        decided = _equal_units(base, constant_1, constant_2)
        if decided is False:
            return Verdict(VERDICT_DISTINGUISHED, 'reductions mod T differ', 'mod T')
        checked.append('mod T')
    else:
        constant_1, constant_2 = c1.rep, c2.rep

    radical = _radical_level(base)
    if radical is not None:
        decided = _equal_units(radical.target, radical(constant_1), radical(constant_2))
        if decided is False:
            return Verdict(VERDICT_DISTINGUISHED, 'reductions mod the radical differ', 'mod Jac')
        checked.append('mod Jac')

    logger.debug(f"Classes agree on {checked}")
    return Verdict(VERDICT_EQUAL_ON_INVARIANTS, 'agree on ' + ', '.join(checked) if checked else 'no invariant applies')
