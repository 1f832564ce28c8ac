"""
Shared plumbing for the lfunctions management commands
"""
import json
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from lfunctions.constants import (
    BUILTIN_PREFIX,
    EXIT_DISTINGUISHED,
    EXIT_INPUT_ERROR,
    FORMAT_TEXT,
    GALLERY_PREFIX,
    OUTPUT_FORMATS,
)
from lfunctions.exceptions import LFunctionsError
from lfunctions.serializers import JobSerializer
from lfunctions.utils.reports import render, write_output

logger = logging.getLogger(__name__)

GALLERY_DIR = Path(__file__).resolve().parent.parent / 'gallery'


def load_json(location: str):
    """Read a JSON file, or a shipped gallery entry for 'gallery:<name>'"""
    if location.startswith(GALLERY_PREFIX):
        path = GALLERY_DIR / f"{location[len(GALLERY_PREFIX):]}.json"
    else:
        path = Path(location)
    try:
        return json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError:
        raise CommandError(f"No such file: {path}", returncode=EXIT_INPUT_ERROR)
    except json.JSONDecodeError as e:
        raise CommandError(f"{path} is not valid JSON: {e}", returncode=EXIT_INPUT_ERROR)


def _error_text(error: ValidationError) -> str:
    return json.dumps(error.detail, default=str, sort_keys=True)


class LFunctionsCommand(BaseCommand):
    """
    Base for the lfunctions commands

    Subclasses implement run(job, options) returning (payload, text_layout);
    input errors exit with 1 and a Distinguished verdict with 2.
    """

    command_name = None

    def add_arguments(self, parser):
        parser.add_argument('--job', help='Job file path or gallery:<name>')
        parser.add_argument('--threads', type=int, help='Worker cap for enumeration and Euler factors')
        parser.add_argument('--output', help='Write the report to this path instead of stdout')
        parser.add_argument('--format', choices=[value for value, _label in OUTPUT_FORMATS],
                            help='Report format (default: text)')

    def handle(self, *args, **options):
        try:
            job = self.build_job(options)
            payload, text_layout = self.run(job, options)
        except ValidationError as e:
            raise CommandError(f"Invalid input: {_error_text(e)}", returncode=EXIT_INPUT_ERROR)
        except LFunctionsError as e:
            raise CommandError(str(e), returncode=EXIT_INPUT_ERROR)
        except CommandError:
            raise
        except Exception as e:
            logger.error(f"{self.command_name} failed: {e}", exc_info=True)
            raise CommandError(f"{self.command_name} failed: {e}", returncode=EXIT_INPUT_ERROR)

        fmt = options.get('format') or job.format or FORMAT_TEXT
        write_output(render(payload, fmt, text_layout), options.get('output'), self.stdout)
        self.after_output(payload, fmt, options)

    def after_output(self, payload, fmt, options):
        pass

    # ==========================================
    # JOB ASSEMBLY
    # ==========================================

    def job_payload(self, options):
        """The job as a dict: the job file, overlaid with command-line flags"""
        payload = load_json(options['job']) if options.get('job') else {}
        if not isinstance(payload, dict):
            raise CommandError("A job file holds a JSON object", returncode=EXIT_INPUT_ERROR)
        return payload

    def build_job(self, options):
        payload = self.job_payload(options)
        serializer = JobSerializer(data=payload, context={'command': self.command_name})
        serializer.is_valid(raise_exception=True)
        return serializer.save()

    def scheme_argument(self, value, q=None):
        """
        A --scheme value: builtin:<name> over F_q, or a scheme file

        Returns the scheme payload for the job.
        """
        if value.startswith(BUILTIN_PREFIX):
            if q is None:
                raise CommandError("A built-in scheme needs --q", returncode=EXIT_INPUT_ERROR)
            return {'builtin': value[len(BUILTIN_PREFIX):]}
        return load_json(value)

    def fail_distinguished(self, methods):
        raise CommandError(f"Distinguished by {', '.join(methods)}", returncode=EXIT_DISTINGUISHED)
