"""
Management command computing an L-function as a K1 class

Usage:
    python manage.py lfun --job gallery:kummer_gm_f5 --format json
    python manage.py lfun --job job.json --m 10
"""
from lfunctions.constants import COMMAND_LFUN
from lfunctions.management.base import LFunctionsCommand
from lfunctions.serializers import K1ClassSerializer, LReportSerializer
from lfunctions.services import LFunctionService
from lfunctions.utils.reports import lreport_text, validated_payload


class Command(LFunctionsCommand):
    help = 'Compute L(X, F, T) in K1 of Lambda[T]/(T^m) as a product of Euler factors'
    command_name = COMMAND_LFUN

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--m', type=int, help='Truncation order (overrides the job file)')

    def job_payload(self, options):
        payload = super().job_payload(options)
        if options.get('m') is not None:
            payload['m'] = options['m']
        return payload

    def run(self, job, options):
        service = LFunctionService(threads=options.get('threads'))
        report = service.l_function(job.sheaf, job.scheme, job.m)
        if job.over is not None:
            view = service.l_subfield_view(job.sheaf, job.scheme, job.over, job.m)
            report.metadata['subfield_view'] = {
                'over': job.over.to_dict(),
                'class': K1ClassSerializer(view).data,
            }
        payload = validated_payload(LReportSerializer, LReportSerializer(report).data)
        return payload, lreport_text
