"""
Schemes of finite type over F_q as disjoint unions of affine charts

A chart is {x in A^k : equations vanish, inequations do not}. Points over
F_{q^n} are counted by scanning all coordinate tuples in vectorised blocks;
closed points are Frobenius orbits, each stored with its smallest member.

Tuples are encoded as sum(c_i * Q^(k-1-i)) with Q = q^n, so integer order on
codes is lexicographic order on coordinate tuples.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import galois
import numpy as np
import sympy

from lfunctions.algebra.ff import FqField, ff_extend
from lfunctions.constants import SCHEME_A1, SCHEME_GM, SCHEME_P1, SCHEME_POINT
from lfunctions.exceptions import (
    EnumerationTooLarge,
    MultiChartSplitUnsupported,
    NotZeroDimensional,
    SchemeError,
)
from lfunctions.geometry.polynomials import Polynomial
from lfunctions.settings import get_lfunctions_setting

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Chart:
    nvars: int
    equations: Tuple[Polynomial, ...] = ()
    inequations: Tuple[Polynomial, ...] = ()

    def to_json(self):
        return {
            'vars': self.nvars,
            'eqs': [p.to_json() for p in self.equations],
            'neqs': [p.to_json() for p in self.inequations],
        }


@dataclass(frozen=True)
class Scheme:
    """
    A disjoint union of affine charts over a base field

    Attributes:
        base: The field F_q
        charts: Pairwise disjoint pieces
        name: Display tag
    """

    base: FqField
    charts: Tuple[Chart, ...]
    name: str = field(default='X', compare=False)

    def to_json(self):
        return {'base': self.base.to_dict(), 'name': self.name, 'charts': [c.to_json() for c in self.charts]}

    def __str__(self):
        return f"{self.name}/{self.base}"


@dataclass(frozen=True)
class ClosedPoint:
    """
    A closed point: a Frobenius orbit of geometric points, kept by its smallest member

    Attributes:
        degree: Orbit size d, the degree of the residue field over F_q
        residue_field: F_{q^d} as an extension of the base
        chart: Index of the chart holding the point
        coordinates: Encodings in F_{q^d} of the representative
    """

    degree: int
    residue_field: FqField = field(compare=False)
    chart: int = 0
    coordinates: Tuple[int, ...] = ()

    @property
    def q(self) -> int:
        return self.residue_field.base.q if self.residue_field.base is not None else self.residue_field.q

    @property
    def code(self) -> int:
        return _tuple_code(self.coordinates, self.residue_field.q)

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        return (self.degree, self.chart, self.code)

    @cached_property
    def orbit(self) -> Tuple[Tuple[int, ...], ...]:
        """The d geometric points x, F(x), F^2(x), ... with F the q-power map"""
        coords = [self.residue_field.array([v]) for v in self.coordinates]
        orbit = []
        for i in range(self.degree):
            orbit.append(tuple(int(self.residue_field.frobenius_array(c, self.q, i)[0]) for c in coords))
        return tuple(orbit)

    def to_json(self):
        return {
            'degree': self.degree,
            'chart': self.chart,
            'coordinates': [list(self.residue_field.coeffs_of(v)) for v in self.coordinates],
        }

    def __str__(self):
        return f"({', '.join(str(v) for v in self.coordinates)}) deg {self.degree}"


def _tuple_code(coordinates: Sequence[int], Q: int) -> int:
    code = 0
    for c in coordinates:
        code = code * Q + int(c)
    return code


# ==========================================
# CONSTRUCTION
# ==========================================

def scheme_affine(base: FqField, nvars: int, equations: Sequence[Polynomial] = (),
                  inequations: Sequence[Polynomial] = (), name: str = 'X') -> Scheme:
    """A single-chart scheme {equations = 0, inequations != 0} in A^nvars"""
    if nvars < 1:
        raise SchemeError(f"A chart needs at least one variable, got {nvars}")
    for poly in list(equations) + list(inequations):
        if poly.base != base or poly.nvars != nvars:
            raise SchemeError(f"Polynomial {poly} does not live on A^{nvars} over {base}")
    return Scheme(base, (Chart(nvars, tuple(equations), tuple(inequations)),), name)


def scheme_disjoint_union(first: Scheme, second: Scheme) -> Scheme:
    if first.base != second.base:
        raise SchemeError(f"Cannot unite schemes over {first.base} and {second.base}")
    return Scheme(first.base, first.charts + second.charts, f"{first.name} + {second.name}")


def smallest_element_of_degree(base: FqField, d: int) -> int:
    """Smallest encoding in F_{q^d} lying in no proper subfield F_{q^e}"""
    K = ff_extend(base, d)
    elements = K.GF(np.arange(K.q, dtype=np.int64))
    proper = np.ones(K.q, dtype=bool)
    for e in sympy.divisors(d)[:-1]:
        proper &= K.frobenius_array(elements, base.q, e) != elements
    return int(np.nonzero(proper)[0][0])


def minimal_polynomial(base: FqField, d: int, value: int) -> Polynomial:
    """Minimal polynomial over base of an element of degree d of F_{q^d}"""
    K = ff_extend(base, d)
    alpha = K.GF(value)
    poly = galois.Poly(K.GF([1]))
    for i in range(d):
        conjugate = alpha ** (base.q ** i)
        poly = poly * galois.Poly(K.GF([1, int(-conjugate)]))
    coeffs = [K.restrict_int(int(c)) for c in reversed(poly.coeffs)]
    return Polynomial.univariate(base, coeffs)


def scheme_builtin(name: str, base: FqField, degree: Optional[int] = None) -> Scheme:
    """
    The standard test geometries

    Args:
        name (str): 'A1', 'Gm', 'P1', 'point' or 'point(d)'
        base (FqField): Base field
        degree (int): Degree for 'point'

    Returns:
        Scheme: A1, Gm = {x != 0}, P1 = A1 + point(1), point(d) = {m_d(x) = 0}
    """
    x = Polynomial.variable(base, 1, 0)
    if name == SCHEME_A1:
        return scheme_affine(base, 1, name=SCHEME_A1)
    if name == SCHEME_GM:
        return scheme_affine(base, 1, inequations=[x], name=SCHEME_GM)
    if name == SCHEME_P1:
        infinity = scheme_builtin(SCHEME_POINT, base, 1)
        return Scheme(base, scheme_builtin(SCHEME_A1, base).charts + infinity.charts, SCHEME_P1)
    if name.startswith(SCHEME_POINT):
        if name != SCHEME_POINT:
            degree = int(name[len(SCHEME_POINT):].strip('()'))
        if not degree or degree < 1:
            raise SchemeError(f"A point needs a positive degree, got {degree}")
        m_d = minimal_polynomial(base, degree, smallest_element_of_degree(base, degree))
        return scheme_affine(base, 1, equations=[m_d], name=f"{SCHEME_POINT}({degree})")
    raise SchemeError(f"Unknown built-in scheme {name}")


def scheme_open_closed_split(scheme: Scheme, cut: Polynomial) -> Tuple[Scheme, Scheme]:
    """
    Split a single-chart scheme into U = {cut != 0} and Z = {cut = 0}

    Raises:
        MultiChartSplitUnsupported: If the scheme has several charts
    """
    if len(scheme.charts) != 1:
        raise MultiChartSplitUnsupported(len(scheme.charts))
    chart = scheme.charts[0]
    if cut.nvars != chart.nvars or cut.base != scheme.base:
        raise SchemeError(f"Cut {cut} does not live on {scheme}")
    open_part = Scheme(scheme.base, (Chart(chart.nvars, chart.equations, chart.inequations + (cut,)),),
                       f"{scheme.name} - {{{cut} = 0}}")
    closed_part = Scheme(scheme.base, (Chart(chart.nvars, chart.equations + (cut,), chart.inequations),),
                         f"{scheme.name} & {{{cut} = 0}}")
    total = scheme_point_counts(scheme, 1)
    if total != scheme_point_counts(open_part, 1) + scheme_point_counts(closed_part, 1):
        raise SchemeError(f"Open/closed split of {scheme} lost points")
    return open_part, closed_part


# ==========================================
# ENUMERATION
# ==========================================

def _chart_block(chart: Chart, K: FqField, start: int, stop: int):
    """Coordinates (galois arrays) and the membership mask for codes [start, stop)"""
    Q = K.q
    codes = np.arange(start, stop, dtype=np.int64)
    coords = []
    for i in range(chart.nvars):
        digits = (codes // Q ** (chart.nvars - 1 - i)) % Q
        coords.append(K.GF(digits))
    mask = np.ones(stop - start, dtype=bool)
    for poly in chart.equations:
        mask &= poly.evaluate(K, coords).view(np.ndarray) == 0
    for poly in chart.inequations:
        mask &= poly.evaluate(K, coords).view(np.ndarray) != 0
    return codes, coords, mask


def _check_budget(chart: Chart, K: FqField) -> int:
    total = K.q ** chart.nvars
    budget = get_lfunctions_setting('POINT_TUPLE_BUDGET')
    if total > budget:
        raise EnumerationTooLarge(f"A^{chart.nvars}({K})", total, budget)
    return total


def _blocks(total: int):
    chunk = get_lfunctions_setting('ENUMERATION_CHUNK')
    return [(start, min(start + chunk, total)) for start in range(0, total, chunk)]


def _threads(threads: Optional[int]) -> int:
    return max(1, threads or get_lfunctions_setting('THREADS'))


def chart_point_counts(chart: Chart, K: FqField, threads: Optional[int] = None) -> int:
    total = _check_budget(chart, K)

    def count(block):
        _, _, mask = _chart_block(chart, K, *block)
        return int(mask.sum())

    with ThreadPoolExecutor(max_workers=_threads(threads)) as executor:
        return sum(executor.map(count, _blocks(total)))


def scheme_point_counts(scheme: Scheme, n: int, threads: Optional[int] = None) -> int:
    """
    Number of F_{q^n}-points of the scheme

    Raises:
        EnumerationTooLarge: If a chart has more than POINT_TUPLE_BUDGET tuples
    """
    if n < 1:
        raise SchemeError(f"Extension degree must be positive, got {n}")
    K = ff_extend(scheme.base, n)
    count = sum(chart_point_counts(chart, K, threads) for chart in scheme.charts)
    logger.debug(f"N_{n}({scheme}) = {count}")
    return count


def _closed_points_of_chart(chart: Chart, index: int, base: FqField, d: int,
                            threads: Optional[int]) -> List[ClosedPoint]:
    K = ff_extend(base, d)
    total = _check_budget(chart, K)
    proper_divisors = sympy.divisors(d)[:-1]

    def scan(block):
        codes, coords, mask = _chart_block(chart, K, *block)
        for e in proper_divisors:
            fixed = np.ones(len(codes), dtype=bool)
            for c in coords:
                fixed &= (K.frobenius_array(c, base.q, e) == c).view(np.ndarray)
            mask &= ~fixed
        if not mask.any():
            return []
        codes = codes[mask]
        coords = [c[mask] for c in coords]
        smallest = codes.copy()
        for i in range(1, d):
            image = np.zeros(len(codes), dtype=np.int64)
            for c in coords:
                image = image * K.q + K.frobenius_array(c, base.q, i).view(np.ndarray).astype(np.int64)
            smallest = np.minimum(smallest, image)
        keep = smallest == codes
        rows = np.stack([c[keep].view(np.ndarray).astype(np.int64) for c in coords], axis=1)
        return [ClosedPoint(d, K, index, tuple(int(v) for v in row)) for row in rows]

    with ThreadPoolExecutor(max_workers=_threads(threads)) as executor:
        points = [p for block in executor.map(scan, _blocks(total)) for p in block]
    return points


def scheme_closed_points(scheme: Scheme, max_deg: int, threads: Optional[int] = None,
                         degrees: Optional[Sequence[int]] = None) -> List[ClosedPoint]:
    """
    Closed points of degree at most max_deg, ordered by (degree, chart, representative)

    Args:
        scheme (Scheme): The scheme
        max_deg (int): Largest degree enumerated
        threads (int): Worker cap, defaults to the THREADS setting
        degrees (list): Restrict to these degrees

    Raises:
        EnumerationTooLarge: If a chart exceeds the tuple budget in some degree
    """
    points: List[ClosedPoint] = []
    for d in degrees if degrees is not None else range(1, max_deg + 1):
        found = []
        for index, chart in enumerate(scheme.charts):
            found.extend(_closed_points_of_chart(chart, index, scheme.base, d, threads))
        logger.debug(f"{scheme}: {len(found)} closed points of degree {d}")
        points.extend(found)
    points.sort(key=lambda p: p.sort_key)
    return points


def scheme_point_degree_bound(scheme: Scheme) -> int:
    """
    Largest possible degree of a closed point of a zero-dimensional scheme

    Every chart must be one-dimensional ambient with a nonzero equation; the
    bound is the smallest equation degree in each chart.

    Raises:
        NotZeroDimensional: If some chart is not cut out by a nonzero polynomial in one variable
    """
    bound = 0
    for chart in scheme.charts:
        degrees = [p.degree for p in chart.equations if not p.is_zero()]
        if chart.nvars != 1 or not degrees:
            raise NotZeroDimensional(str(scheme))
        bound = max(bound, min(degrees))
    return bound


def scheme_is_zero_dimensional(scheme: Scheme) -> bool:
    try:
        scheme_point_degree_bound(scheme)
    except NotZeroDimensional:
        return False
    return True
