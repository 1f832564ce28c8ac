from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from lfunctions.algebra.ff import FqField
from lfunctions.algebra.matrices import Matrix
from lfunctions.algebra.ring import RingDescriptor
from lfunctions.constants import (
    COMMAND_K1,
    COMMAND_LFUN,
    COMMAND_POINTS,
    COMMAND_VERIFY,
    COMMAND_ZETA,
    COMMANDS,
    DEFAULT_MAX_DEGREE,
    FORMAT_TEXT,
    OUTPUT_FORMATS,
    VERIFICATION_METHODS,
)
from lfunctions.geometry.polynomials import Polynomial
from lfunctions.geometry.variety import Scheme
from lfunctions.serializers.algebra_serializer import FieldSerializer, RingSerializer, parse_matrix
from lfunctions.serializers.scheme_serializer import SchemeSerializer, parse_polynomial
from lfunctions.serializers.sheaf_serializer import SheafSerializer
from lfunctions.settings import get_lfunctions_setting


@dataclass
class Job:
    """A validated job, ready for the services"""

    command: str
    scheme: Optional[Scheme] = None
    ring: Optional[RingDescriptor] = None
    sheaf: object = None
    m: int = 8
    methods: List[str] = field(default_factory=list)
    cut: Optional[Polynomial] = None
    over: Optional[FqField] = None
    bounds: Optional[Tuple[int, int]] = None
    upto: int = 8
    maxdeg: int = DEFAULT_MAX_DEGREE
    matrix: Optional[Matrix] = None
    format: str = FORMAT_TEXT


class JobSerializer(serializers.Serializer):
    """
    Serializer for job files

    The field, scheme, ring and sheaf are validated in that order, each one
    in the context of those before it. The invoking command, when given in
    the context, takes precedence over the command named in the file.

    Usage:
        serializer = JobSerializer(data=payload, context={'command': 'verify'})
        serializer.is_valid(raise_exception=True)
        job = serializer.save()
    """

    command = serializers.ChoiceField(choices=COMMANDS, required=False)
    field = serializers.JSONField(required=False, help_text=_("Base field {p, nu} or {q}"))
    scheme = serializers.JSONField(required=False)
    ring = serializers.DictField(required=False)
    sheaf = serializers.DictField(required=False)
    m = serializers.IntegerField(min_value=1, required=False, help_text=_("Truncation order"))
    verify = serializers.ListField(child=serializers.ChoiceField(choices=VERIFICATION_METHODS), required=False)
    cut = serializers.JSONField(required=False, help_text=_("Function cutting out the closed piece"))
    over = serializers.DictField(required=False, help_text=_("Subfield to view the L-function over"))
    bounds = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False,
                                   min_length=2, max_length=2)
    upto = serializers.IntegerField(min_value=1, required=False)
    maxdeg = serializers.IntegerField(min_value=1, required=False)
    matrix = serializers.JSONField(required=False)
    format = serializers.ChoiceField(choices=OUTPUT_FORMATS, required=False, default=FORMAT_TEXT)

    def validate(self, data):
        command = self.context.get('command') or data.get('command')
        if not command:
            raise serializers.ValidationError({'command': _("No command given")})
        data['command'] = command

        base = self._field(data)
        scheme = self._scheme(data, base)
        ring = self._ring(data)

        if command in (COMMAND_LFUN, COMMAND_VERIFY, COMMAND_ZETA, COMMAND_POINTS) and scheme is None:
            raise serializers.ValidationError({'scheme': _("The {command} command needs a scheme").format(
                command=command
            )})
        if command in (COMMAND_LFUN, COMMAND_VERIFY, COMMAND_K1) and ring is None:
            raise serializers.ValidationError({'ring': _("The {command} command needs a ring").format(
                command=command
            )})

        data['scheme_obj'], data['ring_obj'] = scheme, ring
        if command in (COMMAND_LFUN, COMMAND_VERIFY):
            sheaf = SheafSerializer(data=data.get('sheaf', {}), context={'scheme': scheme, 'ring': ring})
            if not sheaf.is_valid():
                raise serializers.ValidationError({'sheaf': sheaf.errors})
            data['sheaf_obj'] = sheaf.save()
        if 'cut' in data:
            if scheme is None:
                raise serializers.ValidationError({'cut': _("A cut needs a scheme")})
            data['cut_obj'] = parse_polynomial(data['cut'], scheme.base, scheme.charts[0].nvars)
        if 'over' in data:
            over = FieldSerializer(data=data['over'])
            if not over.is_valid():
                raise serializers.ValidationError({'over': over.errors})
            data['over_obj'] = over.save()
        if command == COMMAND_K1:
            if 'matrix' not in data:
                raise serializers.ValidationError({'matrix': _("The k1 command needs a matrix")})
            data['matrix_obj'] = parse_matrix(data['matrix'], ring)
        return data

    def _field(self, data) -> Optional[FqField]:
        payload = data.get('field')
        if payload is None:
            return None
        if isinstance(payload, int):
            payload = {'q': payload}
        serializer = FieldSerializer(data=payload)
        if not serializer.is_valid():
            raise serializers.ValidationError({'field': serializer.errors})
        return serializer.save()

    def _scheme(self, data, base: Optional[FqField]) -> Optional[Scheme]:
        payload = data.get('scheme')
        if payload is None:
            return None
        if isinstance(payload, (str, list)):
            payload = {'builtin': payload}
        if not isinstance(payload, dict):
            raise serializers.ValidationError({'scheme': _("A scheme is a name, a list of names or an object")})
        serializer = SchemeSerializer(data=payload, context={'field': base})
        if not serializer.is_valid():
            raise serializers.ValidationError({'scheme': serializer.errors})
        return serializer.save()

    def _ring(self, data) -> Optional[RingDescriptor]:
        if 'ring' not in data:
            return None
        serializer = RingSerializer(data=data['ring'])
        if not serializer.is_valid():
            raise serializers.ValidationError({'ring': serializer.errors})
        return serializer.save()

    def create(self, validated_data) -> Job:
        default_m = get_lfunctions_setting('DEFAULT_TRUNCATION')
        bounds = validated_data.get('bounds')
        return Job(
            command=validated_data['command'],
            scheme=validated_data.get('scheme_obj'),
            ring=validated_data.get('ring_obj'),
            sheaf=validated_data.get('sheaf_obj'),
            m=validated_data.get('m', default_m),
            methods=list(validated_data.get('verify', [])),
            cut=validated_data.get('cut_obj'),
            over=validated_data.get('over_obj'),
            bounds=tuple(bounds) if bounds else None,
            upto=validated_data.get('upto', default_m),
            maxdeg=validated_data.get('maxdeg', DEFAULT_MAX_DEGREE),
            matrix=validated_data.get('matrix_obj'),
            format=validated_data['format'],
        )
