from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from lfunctions.algebra.k1 import K1Class, ReductionCertificate, Verdict
from lfunctions.algebra.series import SeriesRing, TruncSeries
from lfunctions.constants import CERTIFICATE_MOVES, SCHEMA_VERSION, VERDICTS, VERIFICATION_METHODS
from lfunctions.exceptions import LFunctionsError
from lfunctions.geometry.sheaf import SheafComplex
from lfunctions.serializers.algebra_serializer import RingSerializer


def sheaf_to_json(F):
    if isinstance(F, SheafComplex):
        return {'terms': [{'degree': degree, 'sheaf': term.to_json()} for degree, term in F.terms]}
    return F.to_json()


def _check_version(value):
    if value != SCHEMA_VERSION:
        raise serializers.ValidationError(
            _("Unsupported schema version {version}, expected {expected}").format(
                version=value,
                expected=SCHEMA_VERSION
            )
        )
    return value


# ==========================================
# BUILDING BLOCKS
# ==========================================

class SeriesSerializer(serializers.Serializer):
    """A truncated series: {"m", "coeffs", "display"}"""

    m = serializers.IntegerField(min_value=1)
    coeffs = serializers.ListField(child=serializers.JSONField())
    display = serializers.CharField(required=False)

    def to_representation(self, instance: TruncSeries):
        data = instance.ring.element_to_json(instance)
        data['display'] = str(instance)
        return data

    def validate(self, data):
        if len(data['coeffs']) != data['m']:
            raise serializers.ValidationError(
                _("A series mod T^{m} has {m} coefficients, got {count}").format(m=data['m'], count=len(data['coeffs']))
            )
        return data


class MoveSerializer(serializers.Serializer):
    op = serializers.ChoiceField(choices=CERTIFICATE_MOVES)
    i = serializers.IntegerField(min_value=0)
    j = serializers.IntegerField(min_value=0, required=False)
    factor = serializers.JSONField(required=False)


class CertificateSerializer(serializers.Serializer):
    """Elementary moves reducing a matrix, with the matrix they end at"""

    size = serializers.IntegerField(min_value=1)
    moves = MoveSerializer(many=True)
    target = serializers.ListField(child=serializers.ListField(child=serializers.JSONField()))

    def to_representation(self, instance: ReductionCertificate):
        return instance.to_dict()

    def validate(self, data):
        for move in data['moves']:
            if move['i'] >= data['size'] or move.get('j', 0) >= data['size']:
                raise serializers.ValidationError(_("Move indices exceed the matrix size {size}").format(
                    size=data['size']
                ))
        if len(data['target']) != data['size'] or any(len(row) != data['size'] for row in data['target']):
            raise serializers.ValidationError({'target': _("Target must be {size}x{size}").format(size=data['size'])})
        return data


class K1ClassSerializer(serializers.Serializer):
    """A K1 class by its unit representative, with an optional reduction certificate"""

    rep = serializers.JSONField()
    display = serializers.CharField()
    certificate = CertificateSerializer(required=False)

    def to_representation(self, instance: K1Class):
        return instance.to_dict()


class VerdictSerializer(serializers.Serializer):
    level = serializers.ChoiceField(choices=VERDICTS)
    reason = serializers.CharField(allow_blank=True)
    invariant = serializers.CharField(required=False)

    def to_representation(self, instance: Verdict):
        return instance.to_dict()


class GlobalSideSerializer(serializers.Serializer):
    method = serializers.ChoiceField(choices=VERIFICATION_METHODS)
    verdict = VerdictSerializer()
    value = serializers.JSONField(required=False, allow_null=True)
    detail = serializers.DictField(required=False)

    def to_representation(self, instance):
        value = instance.value
        if isinstance(value, K1Class):
            value = K1ClassSerializer(value).data
        elif isinstance(value, TruncSeries):
            value = SeriesSerializer(value).data
        return {
            'method': instance.method,
            'verdict': VerdictSerializer(instance.verdict).data,
            'value': value,
            'detail': dict(instance.detail),
        }


# ==========================================
# REPORTS
# ==========================================

class LReportSerializer(serializers.Serializer):
    """
    Versioned L-function report

    Renders an LReport; parsing a rendered report re-validates it, including
    every series coefficient against the declared ring.
    """

    schema_version = serializers.CharField(validators=[_check_version])
    scheme = serializers.DictField()
    sheaf = serializers.DictField()
    ring = serializers.DictField()
    m = serializers.IntegerField(min_value=1)
    euler_product = K1ClassSerializer()
    series = SeriesSerializer(required=False, allow_null=True)
    global_sides = GlobalSideSerializer(many=True, required=False)
    metadata = serializers.DictField(required=False)

    def to_representation(self, instance):
        return {
            'schema_version': SCHEMA_VERSION,
            'scheme': instance.scheme.to_json(),
            'sheaf': sheaf_to_json(instance.sheaf),
            'ring': instance.ring.to_dict(),
            'm': instance.m,
            'euler_product': K1ClassSerializer(instance.euler_product).data,
            'series': SeriesSerializer(instance.series_form).data if instance.series_form is not None else None,
            'global_sides': [GlobalSideSerializer(side).data for side in instance.global_sides],
            'metadata': dict(instance.metadata),
        }

    def validate(self, data):
        ring_serializer = RingSerializer(data=data['ring'])
        if not ring_serializer.is_valid():
            raise serializers.ValidationError({'ring': ring_serializer.errors})
        series_ring = SeriesRing(ring_serializer.save(), data['m'])
        try:
            series_ring.element_from_json(data['euler_product']['rep'])
            if data.get('series'):
                series_ring.element_from_json(data['series']['coeffs'])
        except (LFunctionsError, TypeError, ValueError) as e:
            raise serializers.ValidationError(str(e))
        return data


class ZetaReportSerializer(serializers.Serializer):
    """Point counts N_1 .. N_K of a scheme and the reconstructed zeta function"""

    schema_version = serializers.CharField(validators=[_check_version])
    scheme = serializers.DictField()
    counts = serializers.ListField(child=serializers.IntegerField(min_value=0))
    zeta = serializers.DictField(required=False, allow_null=True)

    def validate(self, data):
        zeta = data.get('zeta')
        if zeta and not {'numerator', 'denominator'} <= set(zeta):
            raise serializers.ValidationError({'zeta': _("A rational function needs numerator and denominator")})
        return data


class PointsReportSerializer(serializers.Serializer):
    """Closed points of a scheme, degree by degree"""

    schema_version = serializers.CharField(validators=[_check_version])
    scheme = serializers.DictField()
    max_degree = serializers.IntegerField(min_value=1)
    closed_points = serializers.DictField(child=serializers.IntegerField(min_value=0))
    counts = serializers.ListField(child=serializers.IntegerField(min_value=0))
    points = serializers.ListField(child=serializers.DictField())


class K1ReportSerializer(serializers.Serializer):
    """The K1 class of a matrix and, for commutative rings, its determinant"""

    schema_version = serializers.CharField(validators=[_check_version])
    ring = serializers.DictField()
    size = serializers.IntegerField(min_value=1)
    k1_class = K1ClassSerializer()
    determinant = serializers.JSONField(required=False, allow_null=True)

    def validate(self, data):
        ring_serializer = RingSerializer(data=data['ring'])
        if not ring_serializer.is_valid():
            raise serializers.ValidationError({'ring': ring_serializer.errors})
        ring = ring_serializer.save()
        try:
            ring.element_from_json(data['k1_class']['rep'])
        except (LFunctionsError, TypeError, ValueError) as e:
            raise serializers.ValidationError(str(e))
        return data
