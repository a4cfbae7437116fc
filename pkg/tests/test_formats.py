"""Tests for the circuit, program and state text formats."""

from __future__ import annotations

import math

import msgspec.json as msjson
import numpy as np
import pytest

from oamqc.circuits import RandomSpec, random_circuit
from oamqc.core import (
    CPERM,
    CZ4,
    HAD,
    Circuit,
    Cnot,
    CPhase,
    ElementaryProgram,
    InvalidInputError,
    OamState,
    OneQubit,
    Swap,
    named_gate,
    phase,
)
from oamqc.formats import (
    FormatError,
    format_circuit,
    format_program,
    format_state,
    load_program,
    parse_circuit,
    parse_program,
    parse_state,
    program_from_json,
    program_to_json,
)

CIRCUIT_TEXT = """\
# Bell pair plus a few extras
qubits 3
h 1
cnot 1 2   # entangle
rz 0.25 3
cphase 1.5 2 3
swap 1 3
u 2 0,0 1,0 1,0 0,0
"""


def test_parse_circuit_reads_every_gate_form() -> None:
    """Comments are skipped and every gate family parses."""
    circ = parse_circuit(CIRCUIT_TEXT)
    assert circ.n == 3
    assert circ.gates[0] == named_gate("h", 1)
    assert circ.gates[1] == Cnot(1, 2)
    assert circ.gates[2] == named_gate("rz", 3, 0.25)
    assert circ.gates[3] == CPhase(1.5, 2, 3)
    assert circ.gates[4] == Swap(1, 3)
    explicit = circ.gates[5]
    assert isinstance(explicit, OneQubit)
    np.testing.assert_array_equal(explicit.unitary, [[0, 1], [1, 0]])


def test_format_circuit_round_trips_random_circuits() -> None:
    """Formatting then parsing gives back the same circuit."""
    circ = random_circuit(RandomSpec(n=4, depth=40, seed=9))
    assert parse_circuit(format_circuit(circ)) == circ


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("h 1\n", "line 1: expected `qubits <n>` before the first gate"),
        ("qubits 2\nqubits 2\n", "line 2: repeated `qubits` header"),
        ("qubits 2\nfoo 1\n", "line 2: unknown gate 'foo'"),
        ("qubits 2\ncnot 1\n", "line 2: expected `cnot <a> <b>`"),
        ("qubits 2\nrx pi 1\n", "line 2: angle must be a number, got 'pi'"),
        ("qubits two\n", "line 1: qubit count must be an integer, got 'two'"),
        ("# nothing\n", "missing `qubits <n>` header"),
    ],
)
def test_parse_circuit_errors(text: str, message: str) -> None:
    """Malformed circuit text reports the offending line."""
    with pytest.raises(FormatError) as excinfo:
        parse_circuit(text)
    assert str(excinfo.value) == message


def test_format_error_is_an_input_error() -> None:
    """Format errors map to the input-error exit path."""
    error = FormatError("bad", line=4)
    assert isinstance(error, InvalidInputError)
    assert error.line == 4


def test_program_text_round_trip() -> None:
    """Program text keeps kinds, order and exact angles."""
    prog = ElementaryProgram(3, (phase(math.pi / 7), HAD, CPERM, CZ4, phase(-0.1)))
    text = format_program(prog)
    assert text.splitlines()[:3] == ["n 3", f"PHASE {math.pi / 7!r}", "H"]
    assert parse_program(text) == prog


def test_parse_program_errors() -> None:
    """Programs need a header and known ops."""
    with pytest.raises(FormatError, match="expected `n <int>` header"):
        parse_program("H\n")
    with pytest.raises(FormatError, match="unknown op 'SWAP'"):
        parse_program("n 2\nSWAP\n")
    with pytest.raises(FormatError, match="line 2: expected `PHASE <theta>`"):
        parse_program("n 2\nPHASE\n")


def test_program_json_document_shape() -> None:
    """JSON documents list ops by kind and omit absent angles."""
    prog = ElementaryProgram(2, (phase(0.5), HAD, CZ4))
    document = msjson.decode(program_to_json(prog))
    assert document == {
        "n": 2,
        "ops": [{"kind": "PHASE", "theta": 0.5}, {"kind": "HAD"}, {"kind": "CZ4"}],
    }
    assert program_from_json(program_to_json(prog)) == prog


def test_program_from_json_rejects_bad_documents() -> None:
    """Schema violations become format errors."""
    with pytest.raises(FormatError, match="invalid program JSON"):
        program_from_json(b'{"n": 2, "ops": [{"kind": "SWAP"}]}')
    with pytest.raises(FormatError):
        program_from_json("not json")


def test_load_program_sniffs_json() -> None:
    """Input starting with ``{`` is JSON, anything else is program text."""
    prog = ElementaryProgram(2, (HAD, CPERM))
    assert load_program(program_to_json(prog).decode()) == prog
    assert load_program(format_program(prog)) == prog


def test_state_round_trip(rng: np.random.Generator) -> None:
    """State files keep every amplitude bit for bit."""
    state = OamState.random(3, rng)
    parsed = parse_state(format_state(state))
    np.testing.assert_array_equal(parsed.amp, state.amp)


def test_parse_state_errors() -> None:
    """State files need two numbers per line, a power-of-two length and norm 1."""
    with pytest.raises(FormatError, match="line 1"):
        parse_state("1.0\n")
    with pytest.raises(InvalidInputError, match="norm"):
        parse_state("1 0\n1 0\n")
    with pytest.raises(InvalidInputError, match="power of two"):
        parse_state("1 0\n")


def test_empty_circuit_formats_to_header_only() -> None:
    """An empty circuit is just its header."""
    assert format_circuit(Circuit(2)) == "qubits 2\n"
