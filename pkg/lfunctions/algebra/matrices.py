"""
Square and rectangular matrices over a coefficient or series ring

Entries are RingElem or TruncSeries values sharing one ring; the ring object
supplies zero, one, unit tests and the invertibility test for whole matrices.
"""
import itertools
import logging
import random
from typing import Callable, List, Sequence, Tuple

from lfunctions.exceptions import NoncommutativeRing, NotInvertible, PivotSearchExhausted, RingMismatch
from lfunctions.settings import get_lfunctions_setting

logger = logging.getLogger(__name__)

# Random multi-row combinations tried after the pairwise pivot search
RANDOM_COMBINATION_ATTEMPTS = 256


def _permutation_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, k = 0, start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class Matrix:
    """
    A matrix over a ring (coefficient ring or truncated series ring)

    Attributes:
        ring: The ring of the entries
        rows: Tuple of row tuples
    """

    def __init__(self, ring, rows: Sequence[Sequence]):
        self.ring = ring
        self.rows: Tuple[Tuple, ...] = tuple(tuple(row) for row in rows)
        for row in self.rows:
            for entry in row:
                if entry.ring is not ring and entry.ring != ring:
                    raise RingMismatch(ring, entry.ring)

    # ==========================================
    # CONSTRUCTORS
    # ==========================================

    @classmethod
    def identity(cls, ring, n: int) -> 'Matrix':
        return cls.diagonal(ring, [ring.one] * n)

    @classmethod
    def zeros(cls, ring, n: int, k: int = None) -> 'Matrix':
        k = n if k is None else k
        return cls(ring, [[ring.zero] * k for _ in range(n)])

    @classmethod
    def diagonal(cls, ring, entries: Sequence) -> 'Matrix':
        n = len(entries)
        rows = [[ring.zero] * n for _ in range(n)]
        for i, entry in enumerate(entries):
            rows[i][i] = entry
        return cls(ring, rows)

    @classmethod
    def from_ints(cls, ring, rows: Sequence[Sequence[int]]) -> 'Matrix':
        return cls(ring, [[ring.from_int(x) for x in row] for row in rows])

    @classmethod
    def block_diagonal(cls, ring, blocks: Sequence['Matrix']) -> 'Matrix':
        size = sum(b.n for b in blocks)
        rows = [[ring.zero] * size for _ in range(size)]
        offset = 0
        for block in blocks:
            for i in range(block.n):
                for j in range(block.n):
                    rows[offset + i][offset + j] = block.rows[i][j]
            offset += block.n
        return cls(ring, rows)

    # ==========================================
    # SHAPE AND ACCESS
    # ==========================================

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def is_square(self) -> bool:
        rows, cols = self.shape
        return rows == cols

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def to_lists(self) -> List[List]:
        return [list(row) for row in self.rows]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash((self.ring, self.rows))

    def __repr__(self):
        return f"Matrix({self.ring}, {self.n}x{self.shape[1]})"

    def format(self) -> str:
        return '[' + '; '.join(', '.join(str(e) for e in row) for row in self.rows) + ']'

    # ==========================================
    # ARITHMETIC
    # ==========================================

    def _check(self, other: 'Matrix'):
        if other.ring != self.ring:
            raise RingMismatch(self.ring, other.ring)

    def __add__(self, other: 'Matrix') -> 'Matrix':
        self._check(other)
        return Matrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: 'Matrix') -> 'Matrix':
        self._check(other)
        return Matrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> 'Matrix':
        return Matrix(self.ring, [[-a for a in row] for row in self.rows])

    def __mul__(self, other: 'Matrix') -> 'Matrix':
        self._check(other)
        zero = self.ring.zero
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new_row = []
            for col in cols:
                total = zero
                for a, b in zip(row, col):
                    if not a.is_zero() and not b.is_zero():
                        total = total + a * b
                new_row.append(total)
            out.append(new_row)
        return Matrix(self.ring, out)

    def scale_left(self, c) -> 'Matrix':
        return Matrix(self.ring, [[c * a for a in row] for row in self.rows])

    def scale_right(self, c) -> 'Matrix':
        return Matrix(self.ring, [[a * c for a in row] for row in self.rows])

    def power(self, k: int) -> 'Matrix':
        if k < 0:
            return self.inverse().power(-k)
        result, base = Matrix.identity(self.ring, self.n), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def transpose(self) -> 'Matrix':
        return Matrix(self.ring, list(zip(*self.rows)))

    def apply(self, fn: Callable, ring=None) -> 'Matrix':
        """Entrywise image under fn, landing in ring (defaults to fn's image ring)"""
        rows = [[fn(a) for a in row] for row in self.rows]
        if ring is None:
            ring = rows[0][0].ring if rows and rows[0] else self.ring
        return Matrix(ring, rows)

    def trace(self):
        total = self.ring.zero
        for i in range(self.n):
            total = total + self.rows[i][i]
        return total

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> 'Matrix':
        return Matrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    # ==========================================
    # DETERMINANT AND INVERSE
    # ==========================================

    def determinant(self):
        """Leibniz expansion; commutative rings only"""
        if not self.ring.is_commutative:
            raise NoncommutativeRing(self.ring)
        total = self.ring.zero
        for perm in itertools.permutations(range(self.n)):
            term = self.ring.one
            for i, j in enumerate(perm):
                term = term * self.rows[i][j]
                if term.is_zero():
                    break
            if term.is_zero():
                continue
            total = total + term if _permutation_sign(perm) > 0 else total - term
        return total

    def is_invertible(self) -> bool:
        return self.is_square() and self.ring.matrix_is_invertible(self.rows)

    def inverse(self) -> 'Matrix':
        """
        Two-sided inverse by Gauss-Jordan elimination with unit pivots

        A column without a unit entry is repaired by adding lower rows to the
        pivot row until the pivot becomes a unit (see _repair_pivot).

        Raises:
            NotInvertible: If the matrix has no inverse
            PivotSearchExhausted: If no unit pivot is found for an invertible matrix
        """
        if not self.is_invertible():
            raise NotInvertible(self.n)
        ring, n = self.ring, self.n
        work = [list(row) + [ring.one if i == j else ring.zero for j in range(n)]
                for i, row in enumerate(self.rows)]
        for c in range(n):
            pivot_row = next((i for i in range(c, n) if ring.is_unit(work[i][c])), None)
            if pivot_row is None:
                work[c] = _repair_pivot(ring, work, c)
                pivot_row = c
            work[c], work[pivot_row] = work[pivot_row], work[c]
            inverse_pivot = ring.inverse(work[c][c])
            work[c] = [inverse_pivot * a for a in work[c]]
            for i in range(n):
                if i != c and not work[i][c].is_zero():
                    factor = work[i][c]
                    work[i] = [a - factor * b for a, b in zip(work[i], work[c])]
        return Matrix(ring, [row[n:] for row in work])


def _repair_pivot(ring, work, c):
    """
    Row c plus a combination of the rows below it, chosen so that column c
    becomes a unit

    Single pairs row_c + t row_i are tried first with t from the ring's pivot
    candidates. A unimodular column can still defeat every pair (6, 10, 15 over
    Z/30), so random combinations of all lower rows follow, up to
    RANDOM_COMBINATION_ATTEMPTS of them.

    Raises:
        PivotSearchExhausted: If neither search produces a unit pivot
    """
    rng = random.Random(get_lfunctions_setting('RANDOM_SEED'))
    lower = range(c + 1, len(work))
    hints = [work[i][c] for i in lower]
    for i in lower:
        if work[i][c].is_zero():
            continue
        for t in ring.pivot_candidates(rng, hints):
            if ring.is_unit(work[c][c] + t * work[i][c]):
                return [a + t * b for a, b in zip(work[c], work[i])]

    for _ in range(RANDOM_COMBINATION_ATTEMPTS):
        combination = [(i, ring.random_element(rng)) for i in lower]
        row = list(work[c])
        for i, t in combination:
            row = [a + t * b for a, b in zip(row, work[i])]
        if ring.is_unit(row[c]):
            logger.debug(f"Pivot in column {c} repaired from {len(combination)} rows")
            return row
    raise PivotSearchExhausted(c)
