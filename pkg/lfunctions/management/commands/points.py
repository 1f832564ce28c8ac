"""
Management command listing point counts and closed points

Usage:
    python manage.py points --scheme builtin:A1 --q 2 --maxdeg 3
"""
from collections import Counter

from lfunctions.constants import COMMAND_POINTS, SCHEMA_VERSION
from lfunctions.geometry.variety import scheme_closed_points, scheme_point_counts
from lfunctions.management.base import LFunctionsCommand
from lfunctions.serializers import PointsReportSerializer
from lfunctions.utils.reports import points_text, validated_payload


class Command(LFunctionsCommand):
    help = 'Count F_{q^n}-points and enumerate closed points up to a degree'
    command_name = COMMAND_POINTS

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--scheme', help='builtin:<name> or a scheme file')
        parser.add_argument('--q', type=int, help='Field size for built-in schemes')
        parser.add_argument('--maxdeg', type=int, help='Largest closed point degree')

    def job_payload(self, options):
        payload = super().job_payload(options)
        if options.get('scheme'):
            payload['scheme'] = self.scheme_argument(options['scheme'], options.get('q'))
        if options.get('q') is not None:
            payload['field'] = {'q': options['q']}
        if options.get('maxdeg') is not None:
            payload['maxdeg'] = options['maxdeg']
        return payload

    def run(self, job, options):
        threads = options.get('threads')
        points = scheme_closed_points(job.scheme, job.maxdeg, threads)
        by_degree = Counter(x.degree for x in points)
        payload = {
            'schema_version': SCHEMA_VERSION,
            'scheme': job.scheme.to_json(),
            'max_degree': job.maxdeg,
            'counts': [scheme_point_counts(job.scheme, n, threads) for n in range(1, job.maxdeg + 1)],
            'closed_points': {str(d): by_degree.get(d, 0) for d in range(1, job.maxdeg + 1)},
            'points': [x.to_json() for x in points],
        }
        return validated_payload(PointsReportSerializer, payload), points_text
