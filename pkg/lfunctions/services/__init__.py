from lfunctions.services.lfunction_service import GlobalSide, LFunctionService, LReport
from lfunctions.services.verification_service import VerificationService
from lfunctions.services.zeta_service import (
    RationalFunction,
    zeta_reconstruct,
    zeta_reconstruct_minimal,
)


__all__ = [
    'GlobalSide',
    'LFunctionService',
    'LReport',
    'VerificationService',
    'RationalFunction',
    'zeta_reconstruct',
    'zeta_reconstruct_minimal',
]
