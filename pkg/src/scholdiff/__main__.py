"""Allow ``python -m scholdiff``."""

from __future__ import annotations

import sys

from scholdiff.cli import main

if __name__ == "__main__":
    sys.exit(main())
