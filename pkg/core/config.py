"""Configuration and constants"""

import os


def _int_env(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


# Exhaustive-search caps
BERGE_CAP = _int_env("TRIGRAPH_BERGE_CAP", 14)
REALIZATION_CAP = _int_env("TRIGRAPH_REALIZATION_CAP", 20)
CLIQUE_CAP = _int_env("TRIGRAPH_CLIQUE_CAP", 20)
BASIC_CAP = _int_env("TRIGRAPH_BASIC_CAP", 16)  # good-partition search
LINE_CAP = _int_env("TRIGRAPH_LINE_CAP", 64)    # polynomial, so a loose cap
TWO_JOIN_CAP = _int_env("TRIGRAPH_TWO_JOIN_CAP", 16)
BSP_CAP = _int_env("TRIGRAPH_BSP_CAP", 16)

# Decomposition / construction knobs
BASE_THRESHOLD = _int_env("TRIGRAPH_BASE_THRESHOLD", 24)
SEH_BASE_THRESHOLD = _int_env("TRIGRAPH_SEH_BASE_THRESHOLD", 8)
P0 = _int_env("TRIGRAPH_P0", 12)
PARITY_FULL_CHECK = os.getenv("TRIGRAPH_PARITY_FULL_CHECK", "false").lower() in ("1", "true", "yes")

LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")

# Balanced-weight constants (55 * w_r(v) <= w_t, 55 * (w_c + w_ac) <= 7 * w_t)
SEH_DENOMINATOR = 55
SEH_EXTRA_NUMERATOR = 7
SPLIT_DENOMINATOR = 48
HEAVY_CLIQUE_DENOMINATOR = 16

PIPELINE_PROJECT = os.getenv("TRIGRAPH_PROJECT", "trigraph-pipeline")


def get_pipeline_config():
    """Run-level tags and metadata passed to the LangGraph invoke config"""
    return {
        "tags": ["trigraph", "berge", "cs-separator"],
        "metadata": {
            "version": "1.0",
            "caps": {
                "berge": BERGE_CAP,
                "clique": CLIQUE_CAP,
                "basic": BASIC_CAP,
                "two_join": TWO_JOIN_CAP,
                "bsp": BSP_CAP,
            },
            "base_threshold": BASE_THRESHOLD,
            "p0": P0,
        },
    }
