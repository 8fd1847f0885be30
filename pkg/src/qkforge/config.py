"""Size caps for exhaustive-enumeration features.

Walking orbits and building full functional graphs touch every element of
F_{p^n}; the default cap keeps that tractable.  The environment variable
QKFORGE_CAP overrides the default field-size cap globally, and every
cap-sensitive function also accepts an explicit ``field_cap=`` argument.
"""

from __future__ import annotations

import os

DEFAULT_FIELD_CAP = 2**22

# Exponent cap for Frobenius powers pi**n inside depth computations.  The
# coordinates grow like p^(n/2); 64 keeps them comfortably exact yet instant.
DEFAULT_EXPONENT_CAP = 64

ENV_FIELD_CAP = "QKFORGE_CAP"


def field_cap(override: int | None = None) -> int:
    """Resolve the field-size cap: explicit argument > env var > default."""
    if override is not None:
        return int(override)
    env = os.environ.get(ENV_FIELD_CAP)
    if env is not None:
        return int(env)
    return DEFAULT_FIELD_CAP
