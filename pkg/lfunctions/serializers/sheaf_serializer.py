from typing import Dict, List

from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from lfunctions.algebra.ff import ff_extend
from lfunctions.algebra.ring import GroupRing, RingDescriptor, ZModRing, hensel_root_of_unity
from lfunctions.constants import (
    COVERING_KINDS,
    COVERING_KUMMER,
    COVERING_TABLE,
    REP_BUILDERS,
    REP_CHARACTER,
    REP_EXPLICIT,
    REP_EXTENSION,
    REP_GROUP_RING,
    REP_REGULAR,
    REP_TRIVIAL,
)
from lfunctions.exceptions import LFunctionsError
from lfunctions.geometry.sheaf import (
    GaloisCovering,
    SheafComplex,
    SheafRep,
    cov_kummer,
    cov_table,
    cov_trivial,
    sheaf_character,
    sheaf_constant,
    sheaf_explicit,
    sheaf_extension,
    sheaf_group_ring,
    sheaf_regular,
)
from lfunctions.geometry.variety import ClosedPoint, Scheme, scheme_closed_points, scheme_point_degree_bound
from lfunctions.serializers.algebra_serializer import GroupField, RingSerializer, parse_matrix
from lfunctions.serializers.scheme_serializer import parse_polynomial


# ==========================================
# COVERINGS
# ==========================================

class TableEntrySerializer(serializers.Serializer):
    """One Frobenius class: either {"point": [degree, chart, *coordinates]} or spelled out"""

    point = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False)
    degree = serializers.IntegerField(min_value=1, required=False)
    chart = serializers.IntegerField(min_value=0, required=False, default=0)
    coordinates = serializers.ListField(child=serializers.JSONField(), required=False)

    def get_fields(self):
        fields = super().get_fields()
        fields['class'] = serializers.IntegerField(min_value=0)
        return fields

    def validate(self, data):
        if 'point' in data:
            if len(data['point']) < 3:
                raise serializers.ValidationError({'point': _("A point key is [degree, chart, coordinates...]")})
            data['degree'], data['chart'] = data['point'][0], data['point'][1]
            data['coordinates'] = data['point'][2:]
        elif 'degree' not in data or 'coordinates' not in data:
            raise serializers.ValidationError(_("Give a point key or degree and coordinates"))
        return data


class CoveringSerializer(serializers.Serializer):
    """
    Serializer for Galois coverings of the context scheme

    Usage:
        {"kind": "trivial"}
        {"kind": "kummer", "r": 4, "f": "x"}
        {"kind": "table", "group": "C2", "classes": [1]}
    """

    kind = serializers.ChoiceField(choices=COVERING_KINDS)
    r = serializers.IntegerField(min_value=1, required=False, help_text=_("Kummer order, dividing q - 1"))
    f = serializers.JSONField(required=False, help_text=_("Kummer function"))
    group = GroupField(required=False)
    classes = serializers.ListField(child=serializers.JSONField(), required=False)
    table = serializers.ListField(child=serializers.DictField(), required=False)

    def validate(self, data):
        X: Scheme = self.context.get('scheme')
        if X is None:
            raise serializers.ValidationError(_("A covering needs a base scheme"))
        try:
            if data['kind'] == COVERING_KUMMER:
                data['covering'] = self._kummer(X, data)
            elif data['kind'] == COVERING_TABLE:
                data['covering'] = self._table(X, data)
            else:
                data['covering'] = cov_trivial(X)
        except LFunctionsError as e:
            raise serializers.ValidationError(str(e))
        return data

    def _kummer(self, X: Scheme, data) -> GaloisCovering:
        if 'r' not in data or 'f' not in data:
            raise serializers.ValidationError(_("A Kummer covering needs r and f"))
        f = parse_polynomial(data['f'], X.base, X.charts[0].nvars)
        return cov_kummer(X, data['r'], f)

    def _table(self, X: Scheme, data) -> GaloisCovering:
        group = data.get('group')
        if group is None:
            raise serializers.ValidationError({'group': _("A table covering needs a group")})
        entries = data.get('classes', data.get('table'))
        if entries is None:
            raise serializers.ValidationError({'classes': _("A table covering needs classes")})

        if all(isinstance(e, int) for e in entries):
            # One class per closed point, in the canonical order
            points = scheme_closed_points(X, scheme_point_degree_bound(X))
            if len(entries) != len(points):
                raise serializers.ValidationError({
                    'classes': _("{X} has {count} closed points, got {given} classes").format(
                        X=X, count=len(points), given=len(entries)
                    )
                })
            return cov_table(X, group, dict(zip(points, entries)))

        found: Dict[int, List[ClosedPoint]] = {}
        classes = {}
        for item in entries:
            entry = TableEntrySerializer(data=item)
            if not entry.is_valid():
                raise serializers.ValidationError({'classes': entry.errors})
            point = _resolve_point(X, entry.validated_data, found)
            classes[point] = entry.validated_data['class']
        return cov_table(X, group, classes)

    def create(self, validated_data) -> GaloisCovering:
        return validated_data['covering']


def _resolve_point(X: Scheme, entry, found: Dict[int, List[ClosedPoint]]) -> ClosedPoint:
    """The closed point whose Frobenius orbit contains the given coordinates"""
    d = entry['degree']
    K = ff_extend(X.base, d)
    try:
        coords = tuple(K.from_coeffs(c).value if isinstance(c, list) else K.element(c).value
                       for c in entry['coordinates'])
    except (TypeError, ValueError) as e:
        raise serializers.ValidationError(str(e))
    if d not in found:
        found[d] = scheme_closed_points(X, d, degrees=[d])
    for point in found[d]:
        if point.chart == entry['chart'] and coords in point.orbit:
            return point
    raise serializers.ValidationError(
        _("No closed point of degree {d} on chart {chart} at {coords}").format(
            d=d, chart=entry['chart'], coords=list(coords)
        )
    )


# ==========================================
# REPRESENTATIONS
# ==========================================

class RepresentationSerializer(serializers.Serializer):
    """
    rho: G -> GL_n(ring) for the context covering and ring

    Usage:
        {"builder": "trivial", "rank": 2}
        {"builder": "character", "zeta": 5, "power": 1}
        {"builder": "explicit", "rho": {"0": [[1]], "1": [[8]]}}
        {"builder": "extension", "sub": {...}, "quot": {...}, "cocycle": {"1": [[2]]}}
    """

    builder = serializers.ChoiceField(choices=REP_BUILDERS)
    rank = serializers.IntegerField(min_value=1, required=False, default=1)
    zeta = serializers.JSONField(required=False, help_text=_("Character value at the generator"))
    power = serializers.IntegerField(required=False, default=1)
    rho = serializers.DictField(required=False, help_text=_("Group element index to matrix"))
    sub = serializers.JSONField(required=False)
    quot = serializers.JSONField(required=False)
    cocycle = serializers.DictField(required=False)

    def validate(self, data):
        cov: GaloisCovering = self.context['covering']
        ring: RingDescriptor = self.context['ring']
        builder = data['builder']
        try:
            if builder == REP_TRIVIAL:
                data['sheaf'] = sheaf_constant(cov, ring, data['rank'])
            elif builder == REP_CHARACTER:
                data['sheaf'] = sheaf_character(cov, ring, self._zeta(cov, ring, data), data['power'])
            elif builder == REP_REGULAR:
                data['sheaf'] = sheaf_regular(cov, ring)
            elif builder == REP_GROUP_RING:
                data['sheaf'] = sheaf_group_ring(cov, self._group_ring_base(cov, ring))
            elif builder == REP_EXPLICIT:
                data['sheaf'] = sheaf_explicit(cov, ring, self._matrices(cov, ring, data.get('rho'), full=True))
            elif builder == REP_EXTENSION:
                if 'sub' not in data or 'quot' not in data:
                    raise serializers.ValidationError(_("An extension needs sub and quot"))
                sub, quot = parse_representation(data['sub'], cov, ring), parse_representation(data['quot'], cov, ring)
                values = self._matrices(cov, ring, data.get('cocycle') or {}, full=False)
                data['sheaf'] = sheaf_extension(sub, quot, {g: M for g, M in enumerate(values) if M is not None})
        except LFunctionsError as e:
            raise serializers.ValidationError(str(e))
        return data

    @staticmethod
    def _zeta(cov: GaloisCovering, ring: RingDescriptor, data):
        if 'zeta' in data:
            return ring.element_from_json(data['zeta'])
        if isinstance(ring, ZModRing):
            return hensel_root_of_unity(ring, cov.group.order)
        raise serializers.ValidationError({'zeta': _("A character over {ring} needs zeta").format(ring=ring)})

    @staticmethod
    def _group_ring_base(cov: GaloisCovering, ring: RingDescriptor) -> ZModRing:
        if isinstance(ring, GroupRing):
            if ring.group != cov.group:
                raise serializers.ValidationError(_("{ring} is not over the covering group").format(ring=ring))
            return ring.base
        if isinstance(ring, ZModRing):
            return ring
        raise serializers.ValidationError(_("The group-ring sheaf needs Z/m coefficients, got {ring}").format(ring=ring))

    @staticmethod
    def _matrices(cov: GaloisCovering, ring: RingDescriptor, payload, full: bool):
        if payload is None:
            raise serializers.ValidationError({'rho': _("Explicit representations need rho")})
        matrices = [None] * cov.group.order
        for key, value in payload.items():
            try:
                g = int(key)
            except ValueError:
                raise serializers.ValidationError(_("{key} is not a group element index").format(key=key))
            if not 0 <= g < cov.group.order:
                raise serializers.ValidationError(_("{key} is not a group element index").format(key=key))
            matrices[g] = parse_matrix(value, ring, square=full)
        if full and any(M is None for M in matrices):
            raise serializers.ValidationError({'rho': _("rho needs a matrix for every group element")})
        return matrices

    def create(self, validated_data) -> SheafRep:
        return validated_data['sheaf']


def parse_representation(data, cov: GaloisCovering, ring: RingDescriptor) -> SheafRep:
    if isinstance(data, str):
        data = {'builder': data}
    serializer = RepresentationSerializer(data=data, context={'covering': cov, 'ring': ring})
    serializer.is_valid(raise_exception=True)
    return serializer.save()


# ==========================================
# SHEAVES
# ==========================================

class SheafSerializer(serializers.Serializer):
    """
    A sheaf, or a signed complex of sheaves, on the context scheme

    The ring defaults to the job ring in the context. A top level "rho" is a
    shortcut for the explicit builder.

    Usage:
        {"covering": {"kind": "kummer", "r": 4, "f": "x"}, "rep": "regular"}
        {"terms": [{"degree": 0, "sheaf": {...}}, {"degree": 1, "sheaf": {...}}]}
    """

    covering = serializers.DictField(required=False)
    ring = serializers.DictField(required=False)
    rep = serializers.JSONField(required=False)
    rho = serializers.DictField(required=False)
    terms = serializers.ListField(child=serializers.DictField(), required=False)

    def validate(self, data):
        if 'terms' in data:
            data['sheaf'] = self._complex(data['terms'])
            return data

        X = self.context.get('scheme')
        ring = self._ring(data)
        covering = CoveringSerializer(data=data.get('covering', {'kind': 'trivial'}), context={'scheme': X})
        if not covering.is_valid():
            raise serializers.ValidationError({'covering': covering.errors})
        cov = covering.save()

        rep = data.get('rep', {'builder': REP_TRIVIAL})
        if 'rho' in data:
            rep = {'builder': REP_EXPLICIT, 'rho': data['rho']}
        if isinstance(rep, str):
            rep = {'builder': rep}
        representation = RepresentationSerializer(data=rep, context={'covering': cov, 'ring': ring})
        if not representation.is_valid():
            raise serializers.ValidationError({'rep': representation.errors})
        data['sheaf'] = representation.save()
        return data

    def _ring(self, data) -> RingDescriptor:
        if 'ring' in data:
            serializer = RingSerializer(data=data['ring'])
            if not serializer.is_valid():
                raise serializers.ValidationError({'ring': serializer.errors})
            return serializer.save()
        ring = self.context.get('ring')
        if ring is None:
            raise serializers.ValidationError({'ring': _("No coefficient ring given")})
        return ring

    def _complex(self, terms) -> SheafComplex:
        if not terms:
            raise serializers.ValidationError({'terms': _("A complex needs at least one term")})
        built = []
        for term in terms:
            if 'degree' not in term or 'sheaf' not in term:
                raise serializers.ValidationError({'terms': _("Each term needs a degree and a sheaf")})
            child = SheafSerializer(data=term['sheaf'], context=self.context)
            if not child.is_valid():
                raise serializers.ValidationError({'terms': child.errors})
            built.append((int(term['degree']), child.save()))
        rings = {F.ring for _degree, F in built}
        if len(rings) != 1:
            raise serializers.ValidationError({'terms': _("All terms of a complex share one ring")})
        return SheafComplex(tuple(built))

    def create(self, validated_data):
        return validated_data['sheaf']


def parse_sheaf(data, X: Scheme, ring: RingDescriptor = None):
    serializer = SheafSerializer(data=data, context={'scheme': X, 'ring': ring})
    serializer.is_valid(raise_exception=True)
    return serializer.save()
