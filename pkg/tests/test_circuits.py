"""Tests for the circuit generators."""

from __future__ import annotations

import math
import typing as typ

import numpy as np
import pytest

from oamqc.circuits import (
    GateSet,
    RandomSpec,
    ghz_circuit,
    qft_circuit,
    random_circuit,
    random_unitary,
)
from oamqc.core import (
    CPhase,
    Cnot,
    InvalidInputError,
    OamState,
    OneQubit,
    ResourceLimitError,
    Swap,
    is_unitary,
    validate_circuit,
)
from oamqc.oracle import dft_apply, run_circuit


def test_qft_gate_layout() -> None:
    """Three qubits need three Hadamards, three controlled phases and one swap."""
    circ = qft_circuit(3)
    names = [type(gate).__name__ for gate in circ.gates]
    assert names.count("OneQubit") == 3
    assert names.count("CPhase") == 3
    assert circ.gates[-1] == Swap(1, 3)
    assert circ.gates[1] == CPhase(math.pi / 2, 2, 3)


@pytest.mark.parametrize("n", range(1, 9))
def test_qft_matches_discrete_fourier_transform(
    n: int, rng: np.random.Generator
) -> None:
    """The QFT circuit acts on mode amplitudes exactly as the DFT."""
    state = OamState.random(n, rng)
    expected = dft_apply(state.copy()).amp
    actual = run_circuit(state, qft_circuit(n)).amp
    np.testing.assert_allclose(actual, expected, atol=1e-10)


def test_ghz_prepares_cat_state() -> None:
    """GHZ on four qubits puts equal weight on modes 0 and 15."""
    state = run_circuit(OamState.basis(4), ghz_circuit(4))
    probabilities = state.probabilities()
    assert probabilities[0] == pytest.approx(0.5)
    assert probabilities[15] == pytest.approx(0.5)
    assert ghz_circuit(4).gates[1:] == (Cnot(1, 2), Cnot(2, 3), Cnot(3, 4))


def test_ghz_needs_two_qubits() -> None:
    """A one-qubit GHZ circuit is meaningless."""
    with pytest.raises(InvalidInputError):
        ghz_circuit(1)


def test_random_unitary_is_unitary(rng: np.random.Generator) -> None:
    """Sampled matrices are unitary."""
    for _ in range(20):
        assert is_unitary(random_unitary(rng))


def test_random_circuit_is_deterministic() -> None:
    """Equal specs give equal circuits; different seeds differ."""
    spec = RandomSpec(n=4, depth=30, seed=11)
    first = random_circuit(spec)
    assert first == random_circuit(RandomSpec(n=4, depth=30, seed=11))
    assert first != random_circuit(RandomSpec(n=4, depth=30, seed=12))
    assert len(first) == 30
    assert validate_circuit(first) == []


def test_random_circuit_on_one_qubit_has_no_pair_gates() -> None:
    """Two-qubit names are removed from the vocabulary when ``n == 1``."""
    circ = random_circuit(RandomSpec(n=1, depth=50, seed=3))
    assert all(isinstance(gate, OneQubit) for gate in circ.gates)


def test_clifford_gate_set_vocabulary() -> None:
    """The Clifford set draws only Clifford gates."""
    spec = RandomSpec(n=3, depth=60, seed=5, gate_set=GateSet.CLIFFORD)
    circ = random_circuit(spec)
    for gate in circ.gates:
        if isinstance(gate, OneQubit):
            assert gate.name in {"h", "s", "x", "y", "z"}
        else:
            assert type(gate).__name__ in {"Cnot", "CzStd"}


def test_random_spec_validation() -> None:
    """Specs reject impossible sizes, depths and seeds."""
    with pytest.raises(InvalidInputError):
        RandomSpec(n=0, depth=1)
    with pytest.raises(ResourceLimitError):
        RandomSpec(n=17, depth=1)
    with pytest.raises(InvalidInputError, match="depth"):
        RandomSpec(n=2, depth=-1)
    with pytest.raises(InvalidInputError, match="seed"):
        RandomSpec(n=2, depth=1, seed=-1)
    with pytest.raises(InvalidInputError, match="gate set"):
        RandomSpec(n=2, depth=1, gate_set=typ.cast("GateSet", "bogus"))
