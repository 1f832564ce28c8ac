"""
Polynomials over a finite base field, evaluated on arrays of points
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

import sympy

from lfunctions.algebra.ff import FqField

logger = logging.getLogger(__name__)

DEFAULT_VARIABLES = ('x', 'y', 'z', 'w')


def default_variables(nvars: int) -> Tuple[str, ...]:
    if nvars <= len(DEFAULT_VARIABLES):
        return DEFAULT_VARIABLES[:nvars]
    return tuple(f'x{i}' for i in range(nvars))


@dataclass(frozen=True)
class Polynomial:
    """
    A polynomial over the base field F_q in nvars variables

    Attributes:
        base: Field of the coefficients
        nvars: Number of variables
        terms: Sorted (exponent vector, coefficient encoding) pairs, no zero coefficients
    """

    base: FqField
    nvars: int
    terms: Tuple[Tuple[Tuple[int, ...], int], ...]

    @classmethod
    def from_terms(cls, base: FqField, nvars: int, terms: Iterable[Tuple[Sequence[int], int]]) -> 'Polynomial':
        """Collect like terms; coefficients are base-field encodings"""
        collected: Dict[Tuple[int, ...], int] = {}
        for exps, coeff in terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"Exponent vector {exps} does not fit {nvars} variables")
            current = collected.get(exps, 0)
            collected[exps] = (base.element(current) + base.element(int(coeff))).value
        return cls(base, nvars, tuple(sorted((e, c) for e, c in collected.items() if c)))

    @classmethod
    def parse(cls, text: str, base: FqField, nvars: int, variables: Optional[Sequence[str]] = None) -> 'Polynomial':
        """
        Parse an expression with integer coefficients, reduced mod p

        Usage:
            Polynomial.parse('y**2 - x**3 + x', F3, 2)
        """
        names = tuple(variables) if variables else default_variables(nvars)
        symbols = sympy.symbols(names)
        poly = sympy.Poly(sympy.sympify(text), *symbols, domain='ZZ')
        terms = [(monomial, int(coeff) % base.p) for monomial, coeff in poly.terms()]
        return cls.from_terms(base, nvars, terms)

    @classmethod
    def variable(cls, base: FqField, nvars: int, index: int) -> 'Polynomial':
        exps = [0] * nvars
        exps[index] = 1
        return cls(base, nvars, ((tuple(exps), 1),))

    @classmethod
    def univariate(cls, base: FqField, coeffs: Sequence[int]) -> 'Polynomial':
        """One-variable polynomial from base encodings, low degree first"""
        return cls.from_terms(base, 1, [((k,), c) for k, c in enumerate(coeffs)])

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    # ==========================================
    # EVALUATION
    # ==========================================

    def evaluate(self, field: FqField, coords):
        """
        Vectorised evaluation on points of an extension of the base

        Args:
            field (FqField): F_{q^n} built by ff_extend(base, n)
            coords: One galois array of field per variable, equal lengths

        Returns:
            galois array of values
        """
        size = len(coords[0]) if coords else 1
        total = field.GF.Zeros(size)
        for exps, coeff in self.terms:
            term = field.GF.Zeros(size) + field.GF(field.embed_int(coeff))
            for i, e in enumerate(exps):
                if e:
                    term = term * coords[i] ** e
            total = total + term
        return total

    def evaluate_point(self, field: FqField, point: Sequence[int]) -> int:
        coords = [field.array([v]) for v in point]
        return int(self.evaluate(field, coords)[0])

    # ==========================================
    # SERIALIZATION
    # ==========================================

    def to_json(self):
        return [{'exp': list(e), 'coeff': list(self.base.coeffs_of(c))} for e, c in self.terms]

    def __str__(self):
        if not self.terms:
            return '0'
        names = default_variables(self.nvars)
        parts = []
        for exps, coeff in reversed(self.terms):
            monomial = '*'.join(
                name if e == 1 else f'{name}^{e}' for name, e in zip(names, exps) if e
            )
            c = str(coeff) if self.base.nu == 1 else f'<{coeff}>'
            if not monomial:
                parts.append(c)
            elif coeff == 1:
                parts.append(monomial)
            else:
                parts.append(f'{c}*{monomial}')
        return ' + '.join(parts)
