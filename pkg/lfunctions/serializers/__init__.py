from .algebra_serializer import (
    FieldSerializer,
    GroupSerializer,
    MatrixSerializer,
    RingSerializer,
    parse_matrix,
)
from .job_serializer import Job, JobSerializer
from .report_serializer import (
    CertificateSerializer,
    GlobalSideSerializer,
    K1ClassSerializer,
    K1ReportSerializer,
    LReportSerializer,
    PointsReportSerializer,
    SeriesSerializer,
    VerdictSerializer,
    ZetaReportSerializer,
)
from .scheme_serializer import PolynomialSerializer, SchemeSerializer, parse_polynomial, parse_scheme
from .sheaf_serializer import CoveringSerializer, RepresentationSerializer, SheafSerializer, parse_sheaf

__all__ = [
    'FieldSerializer',
    'GroupSerializer',
    'RingSerializer',
    'MatrixSerializer',
    'parse_matrix',
    'PolynomialSerializer',
    'SchemeSerializer',
    'parse_polynomial',
    'parse_scheme',
    'CoveringSerializer',
    'RepresentationSerializer',
    'SheafSerializer',
    'parse_sheaf',
    'Job',
    'JobSerializer',
    'SeriesSerializer',
    'CertificateSerializer',
    'K1ClassSerializer',
    'VerdictSerializer',
    'GlobalSideSerializer',
    'LReportSerializer',
    'ZetaReportSerializer',
    'PointsReportSerializer',
    'K1ReportSerializer',
]
