from lfunctions.utils.reports import (
    distinguished_methods, dump_json, k1_text, lreport_text,
    points_text, render, validated_payload, write_output, zeta_text
)
