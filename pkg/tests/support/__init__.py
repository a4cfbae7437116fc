"""Helpers imported by name via ``tests.support``.

Keeping them in an importable package rather than in ``conftest.py`` means
test modules and fixtures resolve the same module object, so ``isinstance``
checks against :class:`tests.support.cli.CliResult` hold everywhere.
"""

from __future__ import annotations
