"""Small runtime knobs: ambient-dimension cap and the default RNG seed."""

import os

DEFAULT_DIM_BOUND = 4
DEFAULT_SEED = 20240 + 711

ENV_DIM_BOUND = "CGLAB_DIM_BOUND"


def dimension_bound(override=None):
    """Effective dimension cap: explicit override > env var > default."""
    if override is not None:
        return int(override)
    env = os.environ.get(ENV_DIM_BOUND)
    if env:
        return int(env)
    return DEFAULT_DIM_BOUND


def check_dimension(n, override=None):
    from .errors import DimensionBound

    bound = dimension_bound(override)
    if n > bound:
        raise DimensionBound(f"ambient dimension {n} exceeds bound {bound}")
    return n
