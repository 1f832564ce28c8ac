from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from lfunctions.algebra.ff import FqField, ff_make, prime_power
from lfunctions.algebra.groups import GroupTable, build_group, group_from_table
from lfunctions.algebra.matrices import Matrix
from lfunctions.algebra.ring import RingDescriptor, ring_make
from lfunctions.constants import RING_KIND_GROUP_RING, RING_KIND_PRODUCT, RING_KIND_ZMOD, RING_KINDS
from lfunctions.exceptions import LFunctionsError


# ==========================================
# FIELDS
# ==========================================

class FieldSerializer(serializers.Serializer):
    """
    Serializer for the base field F_q

    Accepts {"p", "nu"} or {"q"}; an explicit modulus must match the canonical one.
    """

    p = serializers.IntegerField(min_value=2, required=False, help_text=_("Characteristic"))
    nu = serializers.IntegerField(min_value=1, required=False, default=1, help_text=_("Degree over F_p"))
    q = serializers.IntegerField(min_value=2, required=False, help_text=_("Field size, a prime power"))
    modulus = serializers.ListField(
        child=serializers.IntegerField(min_value=0),
        required=False,
        help_text=_("Defining polynomial, low degree first")
    )

    def validate(self, data):
        """Resolve q into (p, nu) and build the field"""
        if 'q' not in data and 'p' not in data:
            raise serializers.ValidationError(_("Give either q or p (and nu)"))
        try:
            if 'q' in data:
                p, nu = prime_power(data['q'])
            else:
                p, nu = data['p'], data['nu']
            field = ff_make(p, nu)
        except LFunctionsError as e:
            raise serializers.ValidationError(str(e))
        if 'modulus' in data and tuple(data['modulus']) != tuple(field.modulus):
            raise serializers.ValidationError({
                'modulus': _("Modulus {given} differs from the canonical {canonical}").format(
                    given=data['modulus'],
                    canonical=list(field.modulus)
                )
            })
        data['field'] = field
        return data

    def create(self, validated_data) -> FqField:
        return validated_data['field']


# ==========================================
# GROUPS AND RINGS
# ==========================================

class GroupSerializer(serializers.Serializer):
    """A group by builder name or by multiplication table {"order", "mult"}"""

    name = serializers.CharField(required=False, help_text=_("Builder name: C2, C3, C4, C<r>, S3, D4, Q8"))
    order = serializers.IntegerField(min_value=1, required=False)
    mult = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField(min_value=0)),
                                 required=False)
    labels = serializers.ListField(child=serializers.CharField(), required=False)

    def validate(self, data):
        try:
            if 'name' in data:
                group = build_group(data['name'])
            elif 'mult' in data:
                group = group_from_table(data['mult'], data.get('labels'))
            else:
                raise serializers.ValidationError(_("Give a builder name or a multiplication table"))
        except LFunctionsError as e:
            raise serializers.ValidationError(str(e))
        if 'order' in data and data['order'] != group.order:
            raise serializers.ValidationError({
                'order': _("Declared order {order} but the table has {size} elements").format(
                    order=data['order'],
                    size=group.order
                )
            })
        data['group'] = group
        return data

    def create(self, validated_data) -> GroupTable:
        return validated_data['group']


class GroupField(serializers.Field):
    """Accepts "C2" style shortcuts as well as full group payloads"""

    def to_internal_value(self, data) -> GroupTable:
        if isinstance(data, str):
            data = {'name': data}
        serializer = GroupSerializer(data=data)
        if not serializer.is_valid():
            raise serializers.ValidationError(serializer.errors)
        return serializer.save()

    def to_representation(self, value: GroupTable):
        return value.to_dict()


class RingSerializer(serializers.Serializer):
    """
    Serializer for coefficient rings

    Usage:
        {"kind": "zmod", "m": 9}
        {"kind": "group_ring", "m": 9, "group": "C2"}
        {"kind": "product", "factors": [{"kind": "zmod", "m": 4}, {"kind": "zmod", "m": 9}]}
    """

    kind = serializers.ChoiceField(choices=RING_KINDS)
    m = serializers.IntegerField(min_value=2, required=False, help_text=_("Coefficient modulus"))
    group = GroupField(required=False)
    factors = serializers.ListField(child=serializers.DictField(), required=False)

    def validate(self, data):
        kind = data['kind']
        if kind in (RING_KIND_ZMOD, RING_KIND_GROUP_RING) and 'm' not in data:
            raise serializers.ValidationError({'m': _("Modulus is required for {kind}").format(kind=kind)})
        if kind == RING_KIND_GROUP_RING and 'group' not in data:
            raise serializers.ValidationError({'group': _("A group ring needs a group")})
        factors = []
        if kind == RING_KIND_PRODUCT:
            if not data.get('factors'):
                raise serializers.ValidationError({'factors': _("A product ring needs at least one factor")})
            for item in data['factors']:
                child = RingSerializer(data=item)
                if not child.is_valid():
                    raise serializers.ValidationError({'factors': child.errors})
                factors.append(child.save())
        try:
            data['ring'] = ring_make(kind, data.get('m'), data.get('group'), factors)
        except LFunctionsError as e:
            raise serializers.ValidationError(str(e))
        return data

    def create(self, validated_data) -> RingDescriptor:
        return validated_data['ring']


class MatrixSerializer(serializers.Serializer):
    """
    Matrix over the ring passed in the context as 'ring'; square unless the
    context sets 'square' to False

    Entries use the ring's element JSON: integers for Z/m, coefficient lists
    (indexed by group element) for group rings, lists of components for products.
    """

    rows = serializers.ListField(child=serializers.ListField(child=serializers.JSONField()))

    def validate_rows(self, value):
        if not value or not value[0] or any(len(row) != len(value[0]) for row in value):
            raise serializers.ValidationError(_("Matrix rows must be non-empty and of equal length"))
        if self.context.get('square', True) and len(value) != len(value[0]):
            raise serializers.ValidationError(_("Matrix must be square"))
        return value

    def validate(self, data):
        ring = self.context.get('ring')
        if ring is None:
            raise serializers.ValidationError(_("No coefficient ring given for the matrix"))
        try:
            data['matrix'] = Matrix(ring, [[ring.element_from_json(a) for a in row] for row in data['rows']])
        except (LFunctionsError, TypeError, ValueError) as e:
            raise serializers.ValidationError(str(e))
        return data

    def create(self, validated_data) -> Matrix:
        return validated_data['matrix']


def parse_matrix(data, ring: RingDescriptor, square: bool = True) -> Matrix:
    """Validate a bare list of rows or {"rows": ...} against ring"""
    if isinstance(data, list):
        data = {'rows': data}
    serializer = MatrixSerializer(data=data, context={'ring': ring, 'square': square})
    serializer.is_valid(raise_exception=True)
    return serializer.save()
