"""
Schemes over finite fields, their points, and locally constant sheaves on them
"""
from lfunctions.geometry.polynomials import Polynomial
from lfunctions.geometry.variety import (
    ClosedPoint,
    Scheme,
    scheme_builtin,
    scheme_closed_points,
    scheme_point_counts,
)
from lfunctions.geometry.sheaf import (
    GaloisCovering,
    SheafComplex,
    SheafRep,
    cov_kummer,
    cov_trivial,
    frob_class,
)


__all__ = [
    'Polynomial',
    'ClosedPoint',
    'Scheme',
    'scheme_builtin',
    'scheme_closed_points',
    'scheme_point_counts',
    'GaloisCovering',
    'SheafComplex',
    'SheafRep',
    'cov_kummer',
    'cov_trivial',
    'frob_class',
]
