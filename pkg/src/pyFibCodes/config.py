"""
Package-wide constants and environment lookups.

Enumeration-heavy routines read their caps from here at call time, so the
environment variable ``PYFIBCODES_ENUMERATION_CAP`` can be changed (or
monkeypatched in tests) without re-importing the package.
"""

from __future__ import annotations

import os

from pyFibCodes.exceptions import ConfigurationError

#: Largest admissible field modulus (exclusive); keeps products of two residues in 64 bits.
MODULUS_LIMIT = 2**31

#: Default cap on the number of codewords enumerated by weight counting.
DEFAULT_ENUMERATION_CAP = 2**24

#: Cap on the number of codewords for the quadratic covering check.
MINIMAL_VECTOR_CAP = 2**16

#: Message vectors processed per enumeration block.
ENUMERATION_CHUNK = 2**14

#: Rows per block in the covering matrix product.
COVERING_CHUNK = 128

ENUMERATION_CAP_ENV = "PYFIBCODES_ENUMERATION_CAP"
LOG_LEVEL_ENV = "PYFIBCODES_LOG_LEVEL"


def enumeration_cap() -> int:
    """
    Return the active enumeration cap.

    Returns
    -------
    int
        ``PYFIBCODES_ENUMERATION_CAP`` if set, otherwise ``DEFAULT_ENUMERATION_CAP``.

    Raises
    ------
    ConfigurationError
        If the environment variable is not a positive integer.
    """
    raw = os.environ.get(ENUMERATION_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_ENUMERATION_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ConfigurationError(
            f"{ENUMERATION_CAP_ENV} must be a positive integer, not {raw!r}"
        ) from None
    if cap < 1:
        raise ConfigurationError(f"{ENUMERATION_CAP_ENV} must be positive, got {cap}")
    return cap


def log_level() -> str:
    """Default log level name for the command line."""
    return os.environ.get(LOG_LEVEL_ENV, "WARNING").upper()
