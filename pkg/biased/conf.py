# biased/conf.py
from django.conf import settings

DEFAULTS = {
    "CYCLE_LIMIT": 1_000_000,
    "MINOR_SEARCH_MAX_EDGES": 24,
    "MINOR_SEARCH_MAX_NODES": 2_000_000,
    "CERTIFICATE_MAX_STATES": 500_000,
    "MATROID_ISO_MAX_GROUND": 16,
    "MATROID_AXIOM_CHECK_LIMIT": 1000,
    "CONSTRUCTION_ATTEMPTS": 6,
    "ASSERT_THETA": False,
}


def setting(name):
    """
    Read one entry of settings.BIASED_GRAPHS.
    Falls back to DEFAULTS when Django is not configured (plain library use).
    """
    if settings.configured:
        overrides = getattr(settings, "BIASED_GRAPHS", {})
        if name in overrides:
            return overrides[name]
    return DEFAULTS[name]
