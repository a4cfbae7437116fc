"""Run the command line interface with ``python -m oamqc``."""

from __future__ import annotations

import sys

from .cli import main

if __name__ == "__main__":  # pragma: no cover - exercised through runpy
    main(sys.argv[1:])
