"""
Report rendering for the management commands

JSON output is sorted-key and indented; text output is a fixed layout of the
same payload. Neither includes timings, so identical inputs give identical bytes.
"""
import json
from pathlib import Path
from typing import Dict, List, Optional

from rest_framework.utils.encoders import JSONEncoder

from lfunctions.constants import FORMAT_JSON, VERDICT_DISTINGUISHED


def validated_payload(serializer_class, payload: Dict) -> Dict:
    """
    Re-parse a rendered report under its own serializer

    Raises:
        ValidationError: If the payload does not round-trip
    """
    serializer = serializer_class(data=json.loads(dump_json(payload)))
    serializer.is_valid(raise_exception=True)
    return payload


def dump_json(payload: Dict) -> str:
    return json.dumps(payload, cls=JSONEncoder, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def write_output(text: str, path: Optional[str], stream) -> None:
    """Write to path if given, else to the command's stdout"""
    if path:
        Path(path).write_text(text, encoding='utf-8')
    else:
        stream.write(text, ending='')


def distinguished_methods(payload: Dict) -> List[str]:
    return [side['method'] for side in payload.get('global_sides', [])
            if side['verdict']['level'] == VERDICT_DISTINGUISHED]


# ==========================================
# TEXT LAYOUTS
# ==========================================

def _scheme_text(scheme: Dict) -> str:
    base = scheme['base']
    return f"{scheme['name']}/F_{base['p'] ** base['nu']}"


def _sheaf_text(sheaf: Dict) -> str:
    if 'terms' in sheaf:
        return ' - '.join(f"[{_sheaf_text(term['sheaf'])}]^{term['degree']}" for term in sheaf['terms'])
    covering = sheaf['covering']
    text = f"{covering['kind']} covering, group of order {covering['group']['order']}"
    if 'r' in covering:
        text += f", r = {covering['r']}"
    return f"{sheaf['builder']} rank {sheaf['rank']} on {text}"


def _ring_text(ring: Dict) -> str:
    if ring['kind'] == 'zmod':
        return f"Z/{ring['m']}"
    if ring['kind'] == 'group_ring':
        return f"Z/{ring['m']}[G{ring['group']['order']}]"
    return ' x '.join(_ring_text(factor) for factor in ring['factors'])


def lreport_text(payload: Dict) -> str:
    lines = [
        f"scheme: {_scheme_text(payload['scheme'])}",
        f"sheaf: {_sheaf_text(payload['sheaf'])}",
        f"ring: {_ring_text(payload['ring'])}",
        f"m: {payload['m']}",
    ]
    closed = payload.get('metadata', {}).get('closed_points', {})
    if closed:
        lines.append('closed points: ' + ', '.join(f"deg {d}: {n}" for d, n in sorted(closed.items(),
                                                                                        key=lambda kv: int(kv[0]))))
    lines.append(f"euler product: {payload['euler_product']['display']}")
    certificate = payload['euler_product'].get('certificate')
    if certificate:
        lines.append(f"certificate: {len(certificate['moves'])} moves")
    if payload.get('series'):
        lines.append(f"series: {payload['series']['display']}")
    view = payload.get('metadata', {}).get('subfield_view')
    if view:
        over = view['over']
        lines.append(f"over F_{over['p'] ** over['nu']}: {view['class']['display']}")
    for side in payload.get('global_sides', []):
        verdict = side['verdict']
        line = f"{side['method']}: {verdict['level']}"
        if verdict.get('reason'):
            line += f" ({verdict['reason']})"
        lines.append(line)
    return '\n'.join(lines) + '\n'


def zeta_text(payload: Dict) -> str:
    counts = payload['counts']
    lines = [
        f"scheme: {_scheme_text(payload['scheme'])}",
        f"N_1..N_{len(counts)} = {', '.join(str(n) for n in counts)}",
    ]
    zeta = payload.get('zeta')
    lines.append(f"Z(T) = {zeta['display']}" if zeta else "Z(T): no rational function within the bounds")
    return '\n'.join(lines) + '\n'


def points_text(payload: Dict) -> str:
    lines = [f"scheme: {_scheme_text(payload['scheme'])}"]
    for n, count in enumerate(payload['counts'], start=1):
        lines.append(f"N_{n} = {count}")
    for d in sorted(payload['closed_points'], key=int):
        lines.append(f"closed points of degree {d}: {payload['closed_points'][d]}")
    return '\n'.join(lines) + '\n'


def k1_text(payload: Dict) -> str:
    k1_class = payload['k1_class']
    lines = [
        f"ring: {_ring_text(payload['ring'])}",
        f"size: {payload['size']}",
        f"class: {k1_class['display']}",
    ]
    if k1_class.get('certificate'):
        lines.append(f"certificate: {len(k1_class['certificate']['moves'])} moves")
    if payload.get('determinant') is not None:
        lines.append(f"determinant: {payload['determinant']}")
    return '\n'.join(lines) + '\n'


def render(payload: Dict, fmt: str, text_layout) -> str:
    if fmt == FORMAT_JSON:
        return dump_json(payload)
    return text_layout(payload)
