"""Shared pytest fixtures for the oamqc test suite."""

from __future__ import annotations

import sys
import typing as typ
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from runpy import run_module

import numpy as np
import pytest

import oamqc
from tests.support.cli import CliResult

if typ.TYPE_CHECKING:
    from pathlib import Path

__all__ = ["CliResult", "rng", "run_cli", "run_module_cli", "write_text"]

Invoker = typ.Callable[[typ.Sequence[str]], CliResult]


def _exit_code(code: object) -> int:
    """Normalise ``SystemExit.code`` to an integer status."""
    if code is None:
        return 0
    if isinstance(code, int):
        return code
    return int(str(code))


def _capture(call: typ.Callable[[], object]) -> CliResult:
    """Run ``call`` with redirected streams and record how it exited."""
    stdout_buffer = StringIO()
    stderr_buffer = StringIO()
    exit_code = 0
    try:
        with redirect_stdout(stdout_buffer), redirect_stderr(stderr_buffer):
            call()
    except SystemExit as exc:  # pragma: no cover - exercised in assertions
        exit_code = _exit_code(exc.code)
    return CliResult(
        exit_code=exit_code,
        stdout=stdout_buffer.getvalue(),
        stderr=stderr_buffer.getvalue(),
    )


@pytest.fixture
def run_cli() -> Invoker:
    """Return a helper that runs the CLI entry point and captures output."""

    def _invoke(args: typ.Sequence[str]) -> CliResult:
        return _capture(lambda: oamqc.main(list(args)))

    return _invoke


@pytest.fixture
def run_module_cli(monkeypatch: pytest.MonkeyPatch) -> Invoker:
    """Return a helper that invokes ``python -m oamqc``."""

    def _invoke(args: typ.Sequence[str]) -> CliResult:
        monkeypatch.setattr(sys, "argv", ["python -m oamqc", *args])
        return _capture(lambda: run_module("oamqc", run_name="__main__"))

    return _invoke


@pytest.fixture
def rng() -> np.random.Generator:
    """Return a seeded random generator so every run sees the same draws."""
    return np.random.default_rng(20240611)


@pytest.fixture
def write_text(tmp_path: Path) -> typ.Callable[[str, str], Path]:
    """Return a helper writing ``text`` to ``tmp_path / name``."""

    def _write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
