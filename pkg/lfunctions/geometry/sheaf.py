"""
Locally constant sheaves as a Galois covering plus a representation

A sheaf is presented by a covering Y -> X with group G and a representation
rho: G -> GL_n(Lambda). The stalk at a closed point x is Lambda^n with
geometric Frobenius acting through rho(frob_class(x)).
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from lfunctions.algebra.ff import ff_dlog_mu, ff_extend, ff_norm, ff_norm_array, ff_root_of_unity
from lfunctions.algebra.groups import GroupTable, cyclic_exponents, cyclic_group
from lfunctions.algebra.matrices import Matrix
from lfunctions.algebra.ring import GroupRing, RingDescriptor, RingElem, RingHom, ZModRing
from lfunctions.algebra.series import matrix_apply_hom
from lfunctions.constants import (
    COVERING_KUMMER,
    COVERING_TABLE,
    COVERING_TRIVIAL,
    REP_CHARACTER,
    REP_EXPLICIT,
    REP_GROUP_RING,
    REP_REGULAR,
    REP_TRIVIAL,
)
from lfunctions.exceptions import (
    BadCharacterOrder,
    BadKummerOrder,
    CocycleNotMultiplicative,
    PointNotOnBase,
    RingMismatch,
    SheafError,
    VanishingFunction,
)
from lfunctions.geometry.polynomials import Polynomial
from lfunctions.geometry.variety import (
    Chart,
    ClosedPoint,
    Scheme,
    _blocks,
    _chart_block,
    _check_budget,
    scheme_point_counts,
)
from lfunctions.settings import get_lfunctions_setting

logger = logging.getLogger(__name__)


# ==========================================
# COVERINGS
# ==========================================

@dataclass(frozen=True)
class GaloisCovering:
    """
    A finite Galois covering of a scheme

    Attributes:
        base: The scheme X being covered
        kind: trivial, kummer or table
        group: Galois group
        r: Kummer order
        f: Kummer function, invertible on X
        table: For table coverings, (point key, class) pairs
    """

    base: Scheme
    kind: str
    group: GroupTable
    r: int = 1
    f: Optional[Polynomial] = None
    table: Tuple[Tuple[Tuple, int], ...] = ()

    def to_json(self):
        data = {'kind': self.kind, 'group': self.group.to_dict()}
        if self.kind == COVERING_KUMMER:
            data.update({'r': self.r, 'f': self.f.to_json()})
        if self.kind == COVERING_TABLE:
            data['table'] = [{'point': list(key), 'class': g} for key, g in self.table]
        return data


def point_key(x: ClosedPoint) -> Tuple:
    return (x.degree, x.chart) + tuple(x.coordinates)


def cov_trivial(X: Scheme) -> GaloisCovering:
    return GaloisCovering(X, COVERING_TRIVIAL, cyclic_group(1))


def cov_table(X: Scheme, group: GroupTable, classes: Dict[ClosedPoint, int]) -> GaloisCovering:
    """A covering given by explicit Frobenius classes at closed points"""
    table = []
    for point, g in classes.items():
        if not 0 <= int(g) < group.order:
            raise SheafError(f"Class {g} is not an element of a group of order {group.order}")
        table.append((point_key(point), int(g)))
    return GaloisCovering(X, COVERING_TABLE, group, table=tuple(sorted(table)))


def cov_kummer(X: Scheme, r: int, f: Polynomial) -> GaloisCovering:
    """
    The Kummer covering y^r = f(x) with group C_r

    Args:
        X (Scheme): Base scheme over F_q
        r (int): Order, dividing q - 1
        f (Polynomial): Function on every chart of X

    Raises:
        BadKummerOrder: If r does not divide q - 1
        VanishingFunction: If f vanishes at a point of X over F_{q^n},
            n <= KUMMER_VALIDATION_DEGREE
    """
    q = X.base.q
    if r < 1 or (q - 1) % r:
        raise BadKummerOrder(r, q)
    for chart in X.charts:
        if f.nvars != chart.nvars or f.base != X.base:
            raise SheafError(f"Kummer function {f} does not live on {X}")
    restricted = Scheme(
        X.base,
        tuple(Chart(c.nvars, c.equations, c.inequations + (f,)) for c in X.charts),
        X.name,
    )
    for n in range(1, get_lfunctions_setting('KUMMER_VALIDATION_DEGREE') + 1):
        lost = scheme_point_counts(X, n) - scheme_point_counts(restricted, n)
        if lost:
            raise VanishingFunction(n, lost)
    return GaloisCovering(X, COVERING_KUMMER, cyclic_group(r), r=r, f=f)


def _on_base(X: Scheme, x: ClosedPoint) -> bool:
    if not 0 <= x.chart < len(X.charts) or x.residue_field.base != X.base:
        return False
    chart = X.charts[x.chart]
    if len(x.coordinates) != chart.nvars:
        return False
    K = x.residue_field
    return (
        all(p.evaluate_point(K, x.coordinates) == 0 for p in chart.equations)
        and all(p.evaluate_point(K, x.coordinates) != 0 for p in chart.inequations)
    )


def _kummer_class(cov: GaloisCovering, K, coordinates: Sequence[int]) -> int:
    alpha = K.element(cov.f.evaluate_point(K, coordinates))
    base = cov.base.base
    symbol = ff_norm(alpha, base) ** ((base.q - 1) // cov.r)
    arithmetic = ff_dlog_mu(symbol, ff_root_of_unity(base, cov.r), cov.r)
    return (-arithmetic) % cov.r


def frob_class(cov: GaloisCovering, x: ClosedPoint, check_orbit: bool = False) -> int:
    """
    Geometric Frobenius class of a closed point in the covering group

    For Kummer coverings the arithmetic symbol is N(f(x))^((q-1)/r) in mu_r(F_q),
    read off against the canonical generator of mu_r; the geometric class is
    its inverse.

    Raises:
        PointNotOnBase: If x is not a closed point of the base scheme
    """
    if not _on_base(cov.base, x):
        raise PointNotOnBase(str(x))
    if cov.kind == COVERING_TRIVIAL:
        return cov.group.identity
    if cov.kind == COVERING_TABLE:
        classes = dict(cov.table)
        key = point_key(x)
        if key not in classes:
            raise PointNotOnBase(str(x))
        return classes[key]

    g = _kummer_class(cov, x.residue_field, x.coordinates)
    if check_orbit:
        for member in x.orbit:
            if _kummer_class(cov, x.residue_field, member) != g:
                raise SheafError(f"Frobenius class depends on the orbit representative at {x}")
    return g


def frob_classes(cov: GaloisCovering, points: Sequence[ClosedPoint]) -> List[int]:
    """Vectorised frob_class over many points, grouped by degree"""
    if cov.kind != COVERING_KUMMER:
        return [frob_class(cov, x) for x in points]
    base = cov.base.base
    zeta = ff_root_of_unity(base, cov.r)
    logs = {}
    power = base.one
    for e in range(cov.r):
        logs[power.value] = e
        power = power * zeta

    result = [0] * len(points)
    by_degree: Dict[int, List[int]] = {}
    for i, x in enumerate(points):
        by_degree.setdefault(x.degree, []).append(i)
    for d, indices in by_degree.items():
        K = ff_extend(base, d)
        coords = [K.array([points[i].coordinates[v] for i in indices]) for v in range(cov.f.nvars)]
        norms = ff_norm_array(K, cov.f.evaluate(K, coords))
        symbols = (base.GF(norms) ** ((base.q - 1) // cov.r)).view(np.ndarray)
        for i, s in zip(indices, symbols):
            result[i] = (-logs[int(s)]) % cov.r
    return result


def covering_scheme(cov: GaloisCovering) -> Scheme:
    """The Kummer variety {y^r = f(x)} over the charts of the base, y the last variable"""
    if cov.kind != COVERING_KUMMER:
        raise SheafError(f"Only Kummer coverings have an explicit total space, got {cov.kind}")
    base = cov.base.base

    def lift(p: Polynomial) -> Polynomial:
        return Polynomial(base, p.nvars + 1, tuple((e + (0,), c) for e, c in p.terms))

    charts = []
    for chart in cov.base.charts:
        k = chart.nvars
        terms = [((0,) * k + (cov.r,), 1)]
        terms += [(e + (0,), (-base.element(c)).value) for e, c in cov.f.terms]
        kummer = Polynomial.from_terms(base, k + 1, terms)
        charts.append(Chart(
            k + 1,
            tuple(lift(p) for p in chart.equations) + (kummer,),
            tuple(lift(p) for p in chart.inequations),
        ))
    return Scheme(base, tuple(charts), f"Y({cov.base.name}, r={cov.r})")


def covering_point_counts(cov: GaloisCovering, n: int) -> int:
    """
    Points of the covering over F_{q^n}: r * #{x in X(F_{q^n}) : f(x) is an r-th power}

    f(x) is nonzero on X, so it is an r-th power exactly when f(x)^((q^n - 1)/r) = 1.
    """
    if cov.kind == COVERING_TRIVIAL:
        return scheme_point_counts(cov.base, n)
    if cov.kind != COVERING_KUMMER:
        raise SheafError(f"No point counts for {cov.kind} coverings")
    K = ff_extend(cov.base.base, n)
    exponent = (K.q - 1) // cov.r
    total = 0
    for chart in cov.base.charts:
        size = _check_budget(chart, K)
        for block in _blocks(size):
            _, coords, mask = _chart_block(chart, K, *block)
            values = cov.f.evaluate(K, [c[mask] for c in coords])
            total += int(((values ** exponent).view(np.ndarray) == 1).sum())
    return cov.r * total


def fibre_point_counts(cov: GaloisCovering, x: ClosedPoint, m: int) -> List[int]:
    """
    For j with d*j < m: the number of F_{q^(d j)}-points of the fibre of Y over
    one geometric point of x, found by testing whether f(x) has an r-th root

    f(x) lies in the residue field F_{q^d}, so the power test runs there.
    """
    if cov.kind != COVERING_KUMMER:
        raise SheafError(f"No fibres for {cov.kind} coverings")
    K = x.residue_field
    alpha = K.element(cov.f.evaluate_point(K, x.coordinates))
    counts = []
    for j in range(1, (m - 1) // x.degree + 1):
        exponent = (K.q ** j - 1) // cov.r
        counts.append(cov.r if alpha ** exponent == K.one else 0)
    return counts


# ==========================================
# REPRESENTATIONS
# ==========================================

@dataclass
class SheafRep:
    """
    A locally constant sheaf: covering plus rho: G -> GL_rank(ring)

    Attributes:
        covering: The Galois covering
        ring: Coefficient ring Lambda
        rank: Stalk rank
        rho: rho[g] is the matrix of group element g
        right_action: rho composes as rho(gh) = rho(h) rho(g) (contragredient right action)
        sub, quot: Pieces of an extension
    """

    covering: GaloisCovering
    ring: RingDescriptor
    rank: int
    rho: Tuple[Matrix, ...]
    builder: str = REP_EXPLICIT
    right_action: bool = False
    sub: Optional['SheafRep'] = field(default=None, repr=False)
    quot: Optional['SheafRep'] = field(default=None, repr=False)

    @property
    def group(self) -> GroupTable:
        return self.covering.group

    def frobenius_matrix(self, x: ClosedPoint) -> Matrix:
        return self.rho[frob_class(self.covering, x)]

    def to_json(self):
        return {
            'covering': self.covering.to_json(),
            'ring': self.ring.to_dict(),
            'rank': self.rank,
            'builder': self.builder,
            'rho': {str(g): [[self.ring.element_to_json(a) for a in row] for row in M.rows]
                    for g, M in enumerate(self.rho)},
        }


def _validate_rep(rep: SheafRep) -> SheafRep:
    group = rep.group
    if len(rep.rho) != group.order:
        raise SheafError(f"Representation needs {group.order} matrices, got {len(rep.rho)}")
    identity = Matrix.identity(rep.ring, rep.rank)
    for M in rep.rho:
        if M.ring != rep.ring:
            raise RingMismatch(rep.ring, M.ring)
        if M.shape != (rep.rank, rep.rank) or not M.is_invertible():
            raise SheafError(f"rho must take values in GL_{rep.rank}({rep.ring})")
    if rep.rho[group.identity] != identity:
        raise SheafError("rho(e) is not the identity")
    for g in range(group.order):
        for h in range(group.order):
            product = rep.rho[h] * rep.rho[g] if rep.right_action else rep.rho[g] * rep.rho[h]
            if rep.rho[group.mult[g][h]] != product:
                raise CocycleNotMultiplicative(g, h) if rep.sub is not None else SheafError(
                    f"rho is not multiplicative on ({g}, {h})"
                )
    return rep


def sheaf_explicit(cov: GaloisCovering, ring: RingDescriptor, rho: Sequence[Matrix]) -> SheafRep:
    rank = rho[0].n if rho else 0
    return _validate_rep(SheafRep(cov, ring, rank, tuple(rho), REP_EXPLICIT))


def sheaf_constant(cov: GaloisCovering, ring: RingDescriptor, rank: int = 1) -> SheafRep:
    """rho(g) = identity for every g"""
    identity = Matrix.identity(ring, rank)
    return _validate_rep(SheafRep(cov, ring, rank, (identity,) * cov.group.order, REP_TRIVIAL))


def sheaf_character(cov: GaloisCovering, ring: RingDescriptor, zeta: RingElem, power: int = 1) -> SheafRep:
    """
    Rank one sheaf rho(s^k) = zeta^(power * k) on a cyclic covering

    power picks one of the |G| characters once zeta is fixed.

    Raises:
        BadCharacterOrder: If zeta does not have exact order |G|
    """
    r = cov.group.order
    if zeta.ring != ring:
        raise RingMismatch(ring, zeta.ring)
    orders = [k for k in range(1, r + 1) if zeta ** k == ring.one]
    if not orders or orders[0] != r:
        raise BadCharacterOrder(ring.format_element(zeta), r)
    exponents = cyclic_exponents(cov.group)
    rho = tuple(Matrix(ring, [[zeta ** ((power * exponents[g]) % r)]]) for g in range(r))
    return _validate_rep(SheafRep(cov, ring, 1, rho, REP_CHARACTER))


def sheaf_regular(cov: GaloisCovering, ring: RingDescriptor) -> SheafRep:
    """Contragredient regular representation: rho(g) e_j = e_{j g^-1}"""
    group = cov.group
    g_order = group.order
    rho = []
    for g in range(g_order):
        inverse = group.inv(g)
        rows = [[ring.zero] * g_order for _ in range(g_order)]
        for j in range(g_order):
            rows[group.mult[j][inverse]][j] = ring.one
        rho.append(Matrix(ring, rows))
    return _validate_rep(SheafRep(cov, ring, g_order, tuple(rho), REP_REGULAR))


def sheaf_group_ring(cov: GaloisCovering, base: ZModRing) -> SheafRep:
    """
    The group-ring sheaf as a rank one sheaf over base[G]: rho(g) = [g^-1]

    g acts on base[G] by right multiplication with g^-1, so the matrices
    compose in the right-action order.
    """
    ring = GroupRing(base, cov.group)
    rho = tuple(Matrix(ring, [[ring.basis(cov.group.inv(g))]]) for g in range(cov.group.order))
    return _validate_rep(SheafRep(cov, ring, 1, rho, REP_GROUP_RING, right_action=True))


def sheaf_change_of_rings(F: SheafRep, h: RingHom) -> SheafRep:
    """Apply h entrywise to every rho(g)"""
    if h.source != F.ring:
        raise RingMismatch(F.ring, h.source)
    rho = tuple(matrix_apply_hom(M, h) for M in F.rho)
    return _validate_rep(SheafRep(F.covering, h.target, F.rank, rho, F.builder, F.right_action))


def sheaf_extension(sub: SheafRep, quot: SheafRep, cocycle: Optional[Dict[int, Matrix]] = None) -> SheafRep:
    """
    The block upper triangular representation [[rho_sub, c], [0, rho_quot]]

    Raises:
        CocycleNotMultiplicative: If the block map is not a homomorphism
    """
    if sub.covering != quot.covering:
        raise SheafError("Extension pieces must share a covering")
    if sub.ring != quot.ring:
        raise RingMismatch(sub.ring, quot.ring)
    ring = sub.ring
    a, b = sub.rank, quot.rank
    cocycle = cocycle or {}
    rho = []
    for g in range(sub.group.order):
        c = cocycle.get(g, Matrix.zeros(ring, a, b))
        if c.shape != (a, b):
            raise SheafError(f"Cocycle value at {g} must be {a}x{b}")
        rows = [list(sub.rho[g].rows[i]) + list(c.rows[i]) for i in range(a)]
        rows += [[ring.zero] * a + list(quot.rho[g].rows[i]) for i in range(b)]
        rho.append(Matrix(ring, rows))
    return _validate_rep(SheafRep(sub.covering, ring, a + b, tuple(rho), REP_EXPLICIT,
                                  sub.right_action, sub=sub, quot=quot))


def sheaf_direct_sum(first: SheafRep, second: SheafRep) -> SheafRep:
    return sheaf_extension(first, second)


@dataclass(frozen=True)
class SheafComplex:
    """A bounded complex of sheaves as a signed list: terms[i] = (degree, sheaf)"""

    terms: Tuple[Tuple[int, SheafRep], ...]

    @property
    def base(self) -> Scheme:
        return self.terms[0][1].covering.base

    @property
    def ring(self) -> RingDescriptor:
        return self.terms[0][1].ring


def cov_restrict(cov: GaloisCovering, Y: Scheme) -> GaloisCovering:
    """The same covering over a locally closed piece Y of the base sharing its charts"""
    if Y.base != cov.base.base or len(Y.charts) != len(cov.base.charts):
        raise SheafError(f"{Y} is not a piece of {cov.base}")
    return GaloisCovering(Y, cov.kind, cov.group, cov.r, cov.f, cov.table)


def sheaf_restrict(F: SheafRep, Y: Scheme) -> SheafRep:
    """F restricted to Y; stalks and Frobenius matrices are unchanged"""
    return SheafRep(cov_restrict(F.covering, Y), F.ring, F.rank, F.rho, F.builder, F.right_action,
                    F.sub, F.quot)
