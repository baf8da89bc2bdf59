"""
Configuration settings for ncpoisson
"""

import os
from fractions import Fraction
from typing import Dict, Any

# Truncation defaults
DEFAULT_DEGREE = 6
DEFAULT_ITERATIONS = 8
DEGREE_ENV_VAR = "NPA_DEFAULT_DEG"
LOG_LEVEL_ENV_VAR = "NPA_LOG_LEVEL"

# Sparse rows are converted to dense storage above this fill ratio
DENSE_THRESHOLD = Fraction(1, 4)

# Stand-in for an infinite bracket degree drop (all generator brackets vanish)
DELTA_INFINITE = 10**6

# Growth profiles fit the slope over this trailing fraction of the range
GK_FIT_FRACTION = Fraction(1, 3)

# Longest ad-orbit followed when closing generator orbits
GENERATOR_CLOSURE_CAP = 12

REPORT_SCHEMA_VERSION = "1"

# Default configuration
DEFAULT_CONFIG = {
    "analysis": {
        "degree": DEFAULT_DEGREE,
        "iterations": DEFAULT_ITERATIONS,
        "closure_cap": GENERATOR_CLOSURE_CAP,
    },
    "logging": {
        "level": "WARNING",
        "file": None,
    },
    "reports": {
        "schema_version": REPORT_SCHEMA_VERSION,
        "format": "text",
    },
}


def default_degree() -> int:
    """Default degree bound, honouring the NPA_DEFAULT_DEG override"""
    raw = os.environ.get(DEGREE_ENV_VAR, "").strip()
    if not raw:
        return DEFAULT_DEGREE
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_DEGREE
    return value if value >= 0 else DEFAULT_DEGREE


def default_iterations(degree: int) -> int:
    """Nilpotency iteration cap used when none is given"""
    return degree + 2


def get_config() -> Dict[str, Any]:
    """Return the defaults with environment overrides applied"""
    config = {section: dict(values) for section, values in DEFAULT_CONFIG.items()}
    config["analysis"]["degree"] = default_degree()
    level = os.environ.get(LOG_LEVEL_ENV_VAR, "").strip()
    if level:
        config["logging"]["level"] = level.upper()
    return config
