"""
Management command reducing a matrix to its K1 class

Usage:
    python manage.py k1 --ring ring.json --matrix matrix.json
"""
from lfunctions.algebra.k1 import k1_det, k1_of_matrix
from lfunctions.constants import COMMAND_K1, SCHEMA_VERSION
from lfunctions.management.base import LFunctionsCommand, load_json
from lfunctions.serializers import K1ClassSerializer, K1ReportSerializer
from lfunctions.utils.reports import k1_text, validated_payload


class Command(LFunctionsCommand):
    help = 'Reduce an invertible matrix to a unit representing its K1 class, with a certificate'
    command_name = COMMAND_K1

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--ring', help='Ring file')
        parser.add_argument('--matrix', help='Matrix file (a list of rows)')

    def job_payload(self, options):
        payload = super().job_payload(options)
        if options.get('ring'):
            payload['ring'] = load_json(options['ring'])
        if options.get('matrix'):
            payload['matrix'] = load_json(options['matrix'])
        return payload

    def run(self, job, options):
        c = k1_of_matrix(job.matrix)
        determinant = None
        if job.ring.is_commutative:
            determinant = job.ring.element_to_json(k1_det(c))
        payload = {
            'schema_version': SCHEMA_VERSION,
            'ring': job.ring.to_dict(),
            'size': job.matrix.n,
            'k1_class': K1ClassSerializer(c).data,
            'determinant': determinant,
        }
        return validated_payload(K1ReportSerializer, payload), k1_text
