"""Readers and writers for circuits, elementary programs and state vectors.

Circuit text::

    # comments run to the end of the line
    qubits 3
    h 1
    rz 0.25 2
    cnot 1 3
    cphase 1.5707963267948966 2 3
    swap 1 2
    u 1 1,0 0,0 0,0 0,1

Program text::

    n 3
    PHASE 0.7853981633974483
    H
    CPERM
    CZ

Program JSON: ``{"n": 3, "ops": [{"kind": "PHASE", "theta": 0.78}, ...]}``
with kinds ``PHASE``, ``HAD``, ``CPERM`` and ``CZ4``.

State files hold one amplitude per line as ``<re> <im>``.

Floats are written with :func:`repr`, which round-trips every double.
"""

from __future__ import annotations

import typing as typ

import msgspec
import msgspec.json as msjson
import numpy as np

from .core import (
    ROTATION_NAMES,
    SUGAR_NAMES,
    CPhase,
    Circuit,
    Cnot,
    CzStd,
    ElementaryOp,
    ElementaryProgram,
    Gate,
    InvalidInputError,
    OamState,
    OneQubit,
    OpKind,
    Swap,
    named_gate,
    unitary_gate,
)

if typ.TYPE_CHECKING:
    import collections.abc as cabc

__all__ = [
    "FormatError",
    "OpDocument",
    "ProgramDocument",
    "format_circuit",
    "format_program",
    "format_state",
    "load_program",
    "parse_circuit",
    "parse_program",
    "parse_state",
    "program_from_json",
    "program_to_json",
]


class FormatError(InvalidInputError):
    """Raised for malformed input text; ``line`` is 1-based when known."""

    def __init__(self, message: str, *, line: int | None = None) -> None:
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def _content_lines(text: str) -> cabc.Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if fields:
            yield number, fields


def _int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        msg = f"{what} must be an integer, got {token!r}"
        raise FormatError(msg, line=line) from None


def _float(token: str, what: str, line: int) -> float:
    try:
        return float(token)
    except ValueError:
        msg = f"{what} must be a number, got {token!r}"
        raise FormatError(msg, line=line) from None


def _complex(token: str, line: int) -> complex:
    parts = token.split(",")
    if len(parts) != 2:
        msg = f"matrix entry must be written re,im, got {token!r}"
        raise FormatError(msg, line=line)
    return complex(
        _float(parts[0], "real part", line), _float(parts[1], "imag part", line)
    )


def _arity(fields: list[str], count: int, usage: str, line: int) -> None:
    if len(fields) != count:
        msg = f"expected `{usage}`"
        raise FormatError(msg, line=line)


# -------------------- Circuits --------------------


def _parse_gate(fields: list[str], line: int) -> Gate:
    name = fields[0].lower()
    if name in ROTATION_NAMES:
        _arity(fields, 3, f"{name} <theta> <q>", line)
        angle = _float(fields[1], "angle", line)
        return named_gate(name, _int(fields[2], "qubit", line), angle)
    if name in SUGAR_NAMES:
        _arity(fields, 2, f"{name} <q>", line)
        return named_gate(name, _int(fields[1], "qubit", line))
    match name:
        case "cnot" | "cz" | "swap":
            _arity(fields, 3, f"{name} <a> <b>", line)
            a = _int(fields[1], "qubit", line)
            b = _int(fields[2], "qubit", line)
            return {"cnot": Cnot, "cz": CzStd, "swap": Swap}[name](a, b)
        case "cphase":
            _arity(fields, 4, "cphase <theta> <c> <t>", line)
            theta = _float(fields[1], "angle", line)
            control = _int(fields[2], "qubit", line)
            return CPhase(theta, control, _int(fields[3], "qubit", line))
        case "u":
            _arity(fields, 6, "u <q> <re,im> <re,im> <re,im> <re,im>", line)
            entries = [_complex(token, line) for token in fields[2:]]
            matrix = np.array(entries, dtype=np.complex128).reshape(2, 2)
            return unitary_gate(matrix, _int(fields[1], "qubit", line))
        case _:
            msg = f"unknown gate {fields[0]!r}"
            raise FormatError(msg, line=line)


def parse_circuit(text: str) -> Circuit:
    """Parse circuit text; the result still needs :func:`~oamqc.core.ensure_valid`.

    Raises
    ------
    FormatError
        On a missing or repeated ``qubits`` header, an unknown gate, a wrong
        operand count or a malformed number.

    """
    n: int | None = None
    gates: list[Gate] = []
    for line, fields in _content_lines(text):
        if fields[0].lower() == "qubits":
            if n is not None:
                msg = "repeated `qubits` header"
                raise FormatError(msg, line=line)
            _arity(fields, 2, "qubits <n>", line)
            n = _int(fields[1], "qubit count", line)
            continue
        if n is None:
            msg = "expected `qubits <n>` before the first gate"
            raise FormatError(msg, line=line)
        gates.append(_parse_gate(fields, line))
    if n is None:
        msg = "missing `qubits <n>` header"
        raise FormatError(msg)
    return Circuit(n, tuple(gates))


def _format_complex(value: complex) -> str:
    return f"{value.real!r},{value.imag!r}"


def _format_gate(gate: Gate) -> str:
    match gate:
        case OneQubit(name="u", target=target, matrix=matrix):
            entries = " ".join(_format_complex(complex(v)) for v in matrix)
            return f"u {target} {entries}"
        case OneQubit(name=name, target=target, angle=None):
            return f"{name} {target}"
        case OneQubit(name=name, target=target, angle=angle):
            return f"{name} {angle!r} {target}"
        case Cnot(control=control, target=target):
            return f"cnot {control} {target}"
        case CzStd(control=control, target=target):
            return f"cz {control} {target}"
        case CPhase(theta=theta, control=control, target=target):
            return f"cphase {theta!r} {control} {target}"
        case Swap(first=first, second=second):
            return f"swap {first} {second}"


def format_circuit(circ: Circuit) -> str:
    """Return ``circ`` in circuit text, newline-terminated."""
    lines = [f"qubits {circ.n}", *(_format_gate(gate) for gate in circ.gates)]
    return "\n".join(lines) + "\n"


# -------------------- Programs --------------------

_TEXT_KINDS = {
    "PHASE": OpKind.PHASE,
    "H": OpKind.HAD,
    "CPERM": OpKind.CPERM,
    "CZ": OpKind.CZ4,
}
_KIND_TEXT = {kind: text for text, kind in _TEXT_KINDS.items()}


def parse_program(text: str) -> ElementaryProgram:
    """Parse program text with header ``n <int>``.

    Raises
    ------
    FormatError
        On a missing header, an unknown op or a malformed angle.

    """
    n: int | None = None
    ops: list[ElementaryOp] = []
    for line, fields in _content_lines(text):
        if n is None:
            if fields[0] != "n":
                msg = "expected `n <int>` header"
                raise FormatError(msg, line=line)
            _arity(fields, 2, "n <int>", line)
            n = _int(fields[1], "qubit count", line)
            continue
        kind = _TEXT_KINDS.get(fields[0].upper())
        if kind is None:
            msg = f"unknown op {fields[0]!r}; expected PHASE, H, CPERM or CZ"
            raise FormatError(msg, line=line)
        if kind is OpKind.PHASE:
            _arity(fields, 2, "PHASE <theta>", line)
            ops.append(ElementaryOp(kind, _float(fields[1], "angle", line)))
        else:
            _arity(fields, 1, fields[0], line)
            ops.append(ElementaryOp(kind))
    if n is None:
        msg = "missing `n <int>` header"
        raise FormatError(msg)
    return ElementaryProgram(n, tuple(ops))


def format_program(prog: ElementaryProgram) -> str:
    """Return ``prog`` in program text, newline-terminated."""
    lines = [f"n {prog.n}"]
    for op in prog.ops:
        text = _KIND_TEXT[op.kind]
        lines.append(f"{text} {op.theta!r}" if op.kind is OpKind.PHASE else text)
    return "\n".join(lines) + "\n"


class OpDocument(msgspec.Struct, frozen=True, omit_defaults=True):
    """One op of a program JSON document."""

    kind: OpKind
    theta: float | None = None


class ProgramDocument(msgspec.Struct, frozen=True):
    """Program JSON document."""

    n: int
    ops: list[OpDocument]


def program_to_json(prog: ElementaryProgram) -> bytes:
    """Encode ``prog`` as a program JSON document."""
    ops = [OpDocument(op.kind, op.theta) for op in prog.ops]
    return msjson.encode(ProgramDocument(prog.n, ops))


def program_from_json(data: bytes | str) -> ElementaryProgram:
    """Decode a program JSON document.

    Raises
    ------
    FormatError
        If the document is not valid JSON or does not match the schema.

    """
    try:
        document = msjson.decode(data, type=ProgramDocument)
    except msgspec.DecodeError as exc:
        msg = f"invalid program JSON: {exc}"
        raise FormatError(msg) from exc
    ops = tuple(ElementaryOp(op.kind, op.theta) for op in document.ops)
    return ElementaryProgram(document.n, ops)


def load_program(text: str) -> ElementaryProgram:
    """Parse either program JSON or program text, chosen by the first character."""
    if text.lstrip().startswith("{"):
        return program_from_json(text)
    return parse_program(text)


# -------------------- States --------------------


def parse_state(text: str) -> OamState:
    """Parse a state file; the vector needs ``2**n`` entries and unit norm.

    Raises
    ------
    FormatError
        On a line that is not two numbers.
    InvalidInputError
        If the length is not a power of two or the norm differs from 1.

    """
    amplitudes: list[complex] = []
    for line, fields in _content_lines(text):
        _arity(fields, 2, "<re> <im>", line)
        real = _float(fields[0], "real part", line)
        amplitudes.append(complex(real, _float(fields[1], "imag part", line)))
    return OamState.from_amplitudes(amplitudes)


def format_state(state: OamState) -> str:
    """Return ``state`` as a state file."""
    return "".join(f"{a.real!r} {a.imag!r}\n" for a in state.amp.tolist())
