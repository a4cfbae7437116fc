"""Shared file helpers for the command line interface."""

from __future__ import annotations

import sys
import typing as typ

if typ.TYPE_CHECKING:
    from pathlib import Path

__all__ = [
    "EXIT_INPUT_ERROR",
    "EXIT_INTERNAL_ERROR",
    "EXIT_OK",
    "EXIT_VERIFY_FAILED",
    "abort",
    "emit",
    "read_input",
]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 3

STDIO_PATH = "-"


def abort(message: str, *, code: int = EXIT_INPUT_ERROR) -> typ.NoReturn:
    """Print an error message and terminate the process with ``code``."""
    print(message, file=sys.stderr)
    raise SystemExit(code)


def read_input(path: Path) -> str:
    """Return the text of ``path``, or standard input when ``path`` is ``-``."""
    if str(path) == STDIO_PATH:
        return sys.stdin.read()
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        abort(f"error: cannot read {path}: {exc.strerror or exc}")
    except UnicodeDecodeError as exc:
        abort(f"error: cannot read {path}: not UTF-8 text ({exc.reason})")


def emit(text: str, output: Path | None = None) -> None:
    """Write ``text`` to ``output``, or to standard output when unset or ``-``.

    A trailing newline is added when ``text`` lacks one.
    """
    payload = text if text.endswith("\n") else f"{text}\n"
    if output is None or str(output) == STDIO_PATH:
        sys.stdout.write(payload)
        return
    try:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(payload, encoding="utf-8")
    except OSError as exc:
        abort(f"error: cannot write {output}: {exc.strerror or exc}")
