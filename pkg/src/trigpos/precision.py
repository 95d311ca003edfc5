"""Working-precision policy for the numeric layers.

All mpmath computations run at ``working_dps()`` significant digits.  The
default of 30 keeps roughly 15 guard digits beyond the 10--13 digits the
certified constants are quoted to; the ``TRIGPOS_PRECISION`` environment
variable overrides it (floor of 15, so error accounting stays meaningful).
"""

import os

DEFAULT_DPS = 30
_ENV_VAR = "TRIGPOS_PRECISION"


def working_dps() -> int:
    """Digits of working precision, from $TRIGPOS_PRECISION or the default."""
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return DEFAULT_DPS
    try:
        return max(15, int(raw))
    except ValueError:
        return DEFAULT_DPS
