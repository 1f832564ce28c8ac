import os

from django.conf import settings


# Default settings for the lfunctions app. Values are resolved at call time
# so that projects (and tests) can override them with LFUNCTIONS_<NAME>.
LFUNCTIONS_DEFAULTS = {
    # ==========================================
    # ENUMERATION BUDGETS
    # ==========================================

    # Largest field / ring enumerated element by element
    'ENUMERATION_LIMIT': 10 ** 6,

    # Coordinate tuples scanned per chart when counting points
    'POINT_TUPLE_BUDGET': 10 ** 8,

    # Block size for vectorised point enumeration
    'ENUMERATION_CHUNK': 2 ** 18,

    # ==========================================
    # RINGS AND K1
    # ==========================================

    # Largest representable coefficient ring (m^g for group rings)
    'RING_SIZE_LIMIT': 10 ** 9,

    # Definitional Jacobson radical scan (double enumeration)
    'RADICAL_SCAN_LIMIT': 10 ** 4,

    # Pairs (a, b) scanned by the exact Vaserstein closure (|R|^2)
    'VASERSTEIN_LIMIT': 10 ** 5,

    # Group tables up to this order are checked on every triple
    'ASSOCIATIVITY_CHECK_ORDER': 64,

    # Stable-range pivot search: sampled stage, then full scan below the limit
    'PIVOT_SAMPLE_SIZE': 64,
    'PIVOT_FULL_SCAN_LIMIT': 10 ** 4,

    # Pairs sampled when validating a ring homomorphism
    'HOM_CHECK_SAMPLES': 32,

    # ==========================================
    # SHEAVES AND L-FUNCTIONS
    # ==========================================

    # Degrees scanned when checking that a Kummer function is invertible
    'KUMMER_VALIDATION_DEGREE': 2,

    # Truncation order used by the commands when --m is not given
    'DEFAULT_TRUNCATION': 8,

    # ==========================================
    # EXECUTION
    # ==========================================

    'THREADS': int(os.environ.get('LFUNCTIONS_THREADS', '1') or 1),
    'RANDOM_SEED': 20240607,
}


def get_lfunctions_setting(name):
    """
    Helper function to get a specific lfunctions setting

    Args:
        name (str): Setting name without the LFUNCTIONS_ prefix

    Returns:
        The project override if present, otherwise the default

    Raises:
        ValueError: If the setting name is unknown
    """
    if name not in LFUNCTIONS_DEFAULTS:
        raise ValueError(f"Unknown setting: {name}")
    return getattr(settings, f'LFUNCTIONS_{name}', LFUNCTIONS_DEFAULTS[name])
