"""Allow ``python -m pyFibCodes``."""

from __future__ import annotations

import sys

from pyFibCodes.cli import main

sys.exit(main())
