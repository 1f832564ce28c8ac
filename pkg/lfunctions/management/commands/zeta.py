"""
Management command counting points and reconstructing the zeta function

Usage:
    python manage.py zeta --scheme builtin:P1 --q 2 --upto 6
    python manage.py zeta --scheme curve.json --upto 8 --bounds 2 1
"""
import logging

from lfunctions.constants import COMMAND_ZETA, SCHEMA_VERSION
from lfunctions.exceptions import AmbiguousSolution, NoSolutionWithinBounds
from lfunctions.geometry.variety import scheme_point_counts
from lfunctions.management.base import LFunctionsCommand
from lfunctions.serializers import ZetaReportSerializer
from lfunctions.services import zeta_reconstruct, zeta_reconstruct_minimal
from lfunctions.utils.reports import validated_payload, zeta_text

logger = logging.getLogger(__name__)


class Command(LFunctionsCommand):
    help = 'Count F_{q^n}-points for n = 1..upto and reconstruct Z(X, T)'
    command_name = COMMAND_ZETA

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--scheme', help='builtin:<name> or a scheme file')
        parser.add_argument('--q', type=int, help='Field size for built-in schemes')
        parser.add_argument('--upto', type=int, help='Largest n counted')
        parser.add_argument('--bounds', type=int, nargs=2, metavar=('NUM', 'DEN'),
                            help='Degree bounds for the numerator and denominator')

    def job_payload(self, options):
        payload = super().job_payload(options)
        if options.get('scheme'):
            payload['scheme'] = self.scheme_argument(options['scheme'], options.get('q'))
        if options.get('q') is not None:
            payload['field'] = {'q': options['q']}
        if options.get('upto') is not None:
            payload['upto'] = options['upto']
        if options.get('bounds'):
            payload['bounds'] = options['bounds']
        return payload

    def run(self, job, options):
        threads = options.get('threads')
        counts = [scheme_point_counts(job.scheme, n, threads) for n in range(1, job.upto + 1)]
        if job.bounds is not None:
            zeta = zeta_reconstruct(counts, *job.bounds)
        else:
            try:
                zeta = zeta_reconstruct_minimal(counts)
            except (NoSolutionWithinBounds, AmbiguousSolution) as e:
                logger.warning(f"No reconstruction of Z({job.scheme}) from {len(counts)} counts: {e}")
                zeta = None
        payload = {
            'schema_version': SCHEMA_VERSION,
            'scheme': job.scheme.to_json(),
            'counts': counts,
            'zeta': zeta.to_dict() if zeta is not None else None,
        }
        return validated_payload(ZetaReportSerializer, payload), zeta_text
