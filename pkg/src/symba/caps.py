"""Resource caps for enumerations.

Every algorithm in this package is exponential in some window size, so all
enumerated collections (subsets, pattern spaces, finite-group carriers) are
capped and fail fast with ResourceCapError instead of thrashing. The env var
SYMBA_CAP overrides the caps for a whole process.
"""

import os

from .errors import ResourceCapError

DEFAULT_ENUMERATION_CAP = 1 << 20
DEFAULT_TRANSPORT_CAP = 1 << 24
TRANSPORT_DIM_CAP = 4096

_ENV_VAR = "SYMBA_CAP"


def _env_cap():
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ResourceCapError(f"{_ENV_VAR} must be an integer, got {raw!r}")
    if value <= 0:
        raise ResourceCapError(f"{_ENV_VAR} must be positive, got {value}")
    return value


def enumeration_cap() -> int:
    """Cap on the size of any enumerated subset or pattern space."""
    return _env_cap() or DEFAULT_ENUMERATION_CAP


def transport_cap() -> int:
    """Cap on the number of configurations materialized by a transport."""
    return _env_cap() or DEFAULT_TRANSPORT_CAP


def check_size(n: int, what: str, cap: int | None = None) -> None:
    limit = enumeration_cap() if cap is None else cap
    if n > limit:
        raise ResourceCapError(f"{what} would have {n} entries, cap is {limit}")
