"""
Management command checking the trace formula

Exits with status 2 when some method distinguishes the two sides.

Usage:
    python manage.py verify --job gallery:dim0_c2
"""
from lfunctions.constants import COMMAND_VERIFY, FORMAT_TEXT
from lfunctions.management.base import LFunctionsCommand
from lfunctions.serializers import LReportSerializer
from lfunctions.services import VerificationService
from lfunctions.utils.reports import distinguished_methods, lreport_text, validated_payload


class Command(LFunctionsCommand):
    help = 'Compare the Euler product with independently computed global sides'
    command_name = COMMAND_VERIFY

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--m', type=int, help='Truncation order (overrides the job file)')
        parser.add_argument('--method', action='append', dest='methods',
                            help='Run only this method (repeatable)')

    def job_payload(self, options):
        payload = super().job_payload(options)
        if options.get('m') is not None:
            payload['m'] = options['m']
        if options.get('methods'):
            payload['verify'] = options['methods']
        return payload

    def run(self, job, options):
        service = VerificationService(threads=options.get('threads'))
        report = service.verify_trace_formula(job.sheaf, job.scheme, job.m, job.methods or None, job.cut)
        payload = validated_payload(LReportSerializer, LReportSerializer(report).data)
        return payload, lreport_text

    def after_output(self, payload, fmt, options):
        failed = distinguished_methods(payload)
        if failed:
            self.stderr.write(self.style.ERROR(f"Distinguished by {', '.join(failed)}"))
            self.fail_distinguished(failed)
        if fmt == FORMAT_TEXT and not options.get('output'):
            self.stdout.write(self.style.SUCCESS(f"{len(payload['global_sides'])} methods agree"))
