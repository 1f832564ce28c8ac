from functools import reduce

from django.utils.translation import gettext_lazy as _
from rest_framework import serializers
from sympy import SympifyError
from sympy.polys.polyerrors import BasePolynomialError

from lfunctions.algebra.ff import FqField
from lfunctions.constants import BUILTIN_PREFIX
from lfunctions.exceptions import LFunctionsError
from lfunctions.geometry.polynomials import Polynomial
from lfunctions.geometry.variety import Chart, Scheme, scheme_builtin, scheme_disjoint_union
from lfunctions.serializers.algebra_serializer import FieldSerializer


def _context_field(serializer) -> FqField:
    field = serializer.context.get('field')
    if field is None:
        raise serializers.ValidationError(_("No base field given"))
    return field


# ==========================================
# POLYNOMIALS
# ==========================================

class PolynomialTermSerializer(serializers.Serializer):
    exp = serializers.ListField(child=serializers.IntegerField(min_value=0))
    coeff = serializers.JSONField(help_text=_("Base field encoding or coefficient list over F_p"))


class PolynomialField(serializers.Field):
    """
    A polynomial on A^nvars over the context field

    Either an expression string ("y**2 - x**3 + x", variables x, y, z, w) or a
    list of {"exp": [...], "coeff": c} terms. The context supplies 'field'
    and 'nvars'.
    """

    def to_internal_value(self, data) -> Polynomial:
        base = _context_field(self)
        nvars = self.context.get('nvars', 1)
        if isinstance(data, str):
            try:
                return Polynomial.parse(data, base, nvars)
            except (SympifyError, BasePolynomialError, TypeError, ValueError) as e:
                raise serializers.ValidationError(
                    _("Cannot parse polynomial {text}: {error}").format(text=data, error=e)
                )
        terms = PolynomialTermSerializer(data=data, many=True)
        if not terms.is_valid():
            raise serializers.ValidationError(terms.errors)
        collected = []
        for term in terms.validated_data:
            coeff = term['coeff']
            try:
                if isinstance(coeff, list):
                    coeff = base.from_coeffs(coeff).value
                else:
                    coeff = base.element(coeff).value
            except (TypeError, ValueError) as e:
                raise serializers.ValidationError(str(e))
            collected.append((term['exp'], coeff))
        try:
            return Polynomial.from_terms(base, nvars, collected)
        except ValueError as e:
            raise serializers.ValidationError(str(e))

    def to_representation(self, value: Polynomial):
        return value.to_json()


class PolynomialSerializer(serializers.Serializer):
    """Wrapper used where a single polynomial is the whole payload"""

    poly = PolynomialField()

    def create(self, validated_data) -> Polynomial:
        return validated_data['poly']


def parse_polynomial(data, field: FqField, nvars: int) -> Polynomial:
    serializer = PolynomialSerializer(data={'poly': data}, context={'field': field, 'nvars': nvars})
    serializer.is_valid(raise_exception=True)
    return serializer.save()


# ==========================================
# SCHEMES
# ==========================================

class ChartSerializer(serializers.Serializer):
    vars = serializers.IntegerField(min_value=1, help_text=_("Number of affine coordinates"))
    eqs = serializers.ListField(child=serializers.JSONField(), required=False, default=list)
    neqs = serializers.ListField(child=serializers.JSONField(), required=False, default=list)

    def validate(self, data):
        field = _context_field(self)
        data['chart'] = Chart(
            data['vars'],
            tuple(parse_polynomial(p, field, data['vars']) for p in data['eqs']),
            tuple(parse_polynomial(p, field, data['vars']) for p in data['neqs']),
        )
        return data


class SchemeSerializer(serializers.Serializer):
    """
    Serializer for schemes over F_q

    Usage:
        {"builtin": "P1"}
        {"builtin": ["point(1)", "point(3)"]}
        {"base": {"p": 3}, "charts": [{"vars": 2, "eqs": ["y**2 - x**3 + x"]}]}
    """

    base = serializers.DictField(required=False, help_text=_("Base field; defaults to the job field"))
    builtin = serializers.JSONField(required=False, help_text=_("Built-in name or list of names"))
    charts = serializers.ListField(child=serializers.DictField(), required=False)
    name = serializers.CharField(required=False)

    def validate(self, data):
        if 'base' in data:
            field_serializer = FieldSerializer(data=data['base'])
            if not field_serializer.is_valid():
                raise serializers.ValidationError({'base': field_serializer.errors})
            field = field_serializer.save()
        else:
            field = _context_field(self)

        if ('builtin' in data) == ('charts' in data):
            raise serializers.ValidationError(_("Give exactly one of builtin or charts"))

        if 'builtin' in data:
            names = data['builtin'] if isinstance(data['builtin'], list) else [data['builtin']]
            if not names or not all(isinstance(n, str) for n in names):
                raise serializers.ValidationError({'builtin': _("Built-in names must be strings")})
            try:
                pieces = [scheme_builtin(n[len(BUILTIN_PREFIX):] if n.startswith(BUILTIN_PREFIX) else n, field)
                          for n in names]
            except (LFunctionsError, ValueError) as e:
                raise serializers.ValidationError({'builtin': str(e)})
            scheme = reduce(scheme_disjoint_union, pieces)
        else:
            if not data['charts']:
                raise serializers.ValidationError({'charts': _("A scheme needs at least one chart")})
            charts = []
            for item in data['charts']:
                chart_serializer = ChartSerializer(data=item, context={'field': field})
                if not chart_serializer.is_valid():
                    raise serializers.ValidationError({'charts': chart_serializer.errors})
                charts.append(chart_serializer.validated_data['chart'])
            scheme = Scheme(field, tuple(charts), data.get('name', 'X'))

        if 'name' in data:
            scheme = Scheme(scheme.base, scheme.charts, data['name'])
        data['scheme'] = scheme
        return data

    def create(self, validated_data) -> Scheme:
        return validated_data['scheme']


def parse_scheme(data, field: FqField = None) -> Scheme:
    """Accepts 'P1', 'builtin:P1' or a full scheme payload"""
    if isinstance(data, (str, list)):
        data = {'builtin': data}
    serializer = SchemeSerializer(data=data, context={'field': field})
    serializer.is_valid(raise_exception=True)
    return serializer.save()
