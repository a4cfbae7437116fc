"""Tests for the elementary photonic operations."""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np
import pytest

from oamqc.core import (
    CPERM,
    CZ4,
    HAD,
    ElementaryProgram,
    InvalidInputError,
    InvalidOperationError,
    OamState,
    ResourceLimitError,
    bits_of_mode,
    mode_of_bits,
    phase,
)
from oamqc.elementary import (
    apply_cperm,
    apply_cz,
    apply_hadamard,
    apply_op,
    apply_phase,
    apply_program,
    elementary_unitary,
    inverse_program,
    program_unitary,
)

SQRT_HALF = 1 / math.sqrt(2)


def test_phase_on_even_and_odd_modes() -> None:
    """Even modes gain ``e^{iθ}``, odd modes ``e^{-iθ}``."""
    theta = 0.7
    state = apply_phase(OamState.basis(2, 2), theta)
    assert state.amp[2] == pytest.approx(cmath.exp(1j * theta))
    state = apply_phase(OamState.basis(2, 3), theta)
    assert state.amp[3] == pytest.approx(cmath.exp(-1j * theta))


def test_phase_zero_is_identity(rng: np.random.Generator) -> None:
    """``PHASE(0)`` leaves any state unchanged."""
    state = OamState.random(4, rng)
    before = state.amp.copy()
    np.testing.assert_allclose(apply_phase(state, 0.0).amp, before, atol=1e-15)


def test_hadamard_examples() -> None:
    """HAD mixes the pair ``(2m, 2m + 1)``."""
    np.testing.assert_allclose(
        apply_hadamard(OamState.basis(1, 0)).amp, [SQRT_HALF, SQRT_HALF]
    )
    np.testing.assert_allclose(
        apply_hadamard(OamState.basis(1, 1)).amp, [SQRT_HALF, -SQRT_HALF]
    )
    state = apply_hadamard(OamState.basis(2, 2)).amp
    np.testing.assert_allclose(state, [0, 0, SQRT_HALF, SQRT_HALF])


def test_cperm_examples() -> None:
    """The cyclic permutation follows its mode action."""
    assert apply_cperm(OamState.basis(2, 1)).amp[2] == 1
    assert apply_cperm(OamState.basis(2, 3)).amp[3] == 1
    single = OamState.from_amplitudes([0.6, 0.8])
    np.testing.assert_allclose(apply_cperm(single).amp, [0.6, 0.8])


@pytest.mark.parametrize("n", range(1, 9))
def test_cperm_rotates_qubit_labels(n: int) -> None:
    """Qubit ``k`` moves to ``k + 1`` and qubit ``n`` to 1 for every basis state."""
    for bits in itertools.product((0, 1), repeat=n):
        state = apply_cperm(OamState.basis(n, mode_of_bits(bits)))
        moved = int(np.flatnonzero(state.amp)[0])
        rotated = (bits[-1], *bits[:-1])
        assert bits_of_mode(moved, n) == rotated


def test_cz_examples() -> None:
    """CZ4 negates exactly the modes divisible by four."""
    assert apply_cz(OamState.basis(2, 0)).amp[0] == -1
    assert apply_cz(OamState.basis(2, 2)).amp[2] == 1
    pair = OamState.from_amplitudes([SQRT_HALF, 0, 0, 0, SQRT_HALF, 0, 0, 0])
    np.testing.assert_allclose(
        apply_cz(pair).amp, [-SQRT_HALF, 0, 0, 0, -SQRT_HALF, 0, 0, 0]
    )


def test_cz_needs_two_qubits() -> None:
    """CZ4 on a single qubit is an invalid operation."""
    with pytest.raises(InvalidOperationError):
        apply_cz(OamState.basis(1))
    with pytest.raises(InvalidOperationError):
        apply_op(OamState.basis(1), CZ4)


def test_apply_program_examples(rng: np.random.Generator) -> None:
    """Programs run left to right."""
    state = OamState.random(3, rng)
    before = state.amp.copy()
    apply_program(state, ElementaryProgram(3))
    np.testing.assert_array_equal(state.amp, before)
    apply_program(state, ElementaryProgram(3, (HAD, HAD)))
    np.testing.assert_allclose(state.amp, before, atol=1e-12)
    moved = apply_program(OamState.basis(2, 1), ElementaryProgram(2, (CPERM,)))
    assert moved.amp[2] == 1


def test_apply_program_rejects_dimension_mismatch() -> None:
    """Program and state must agree on the qubit count."""
    with pytest.raises(InvalidInputError, match="program acts on 3 qubits"):
        apply_program(OamState.basis(2), ElementaryProgram(3, (HAD,)))


@pytest.mark.parametrize("n", range(2, 11))
def test_group_relations(n: int, rng: np.random.Generator) -> None:
    """HAD and CZ4 are involutions, CPERM has order ``n`` and phases add."""
    state = OamState.random(n, rng)
    before = state.amp.copy()
    for word in ((HAD, HAD), (CZ4, CZ4), (CPERM,) * n):
        result = apply_program(state.copy(), ElementaryProgram(n, word))
        np.testing.assert_allclose(result.amp, before, atol=1e-12)
    merged = apply_program(state.copy(), ElementaryProgram(n, (phase(0.8),)))
    halves = ElementaryProgram(n, (phase(0.3), phase(0.5)))
    split = apply_program(state.copy(), halves)
    np.testing.assert_allclose(split.amp, merged.amp, atol=1e-12)


@pytest.mark.parametrize("n", range(2, 11))
def test_cperm_power_n_is_exact_identity(n: int) -> None:
    """``CPERM^n`` is the identity permutation, with no rounding at all."""
    matrix = program_unitary(ElementaryProgram(n, (CPERM,) * n))
    np.testing.assert_array_equal(matrix, np.eye(2**n))


def test_elementary_unitary_examples() -> None:
    """Dense matrices match the defining actions."""
    theta = 0.4
    np.testing.assert_allclose(
        elementary_unitary(phase(theta), 1),
        np.diag([cmath.exp(1j * theta), cmath.exp(-1j * theta)]),
    )
    np.testing.assert_array_equal(
        elementary_unitary(CZ4, 2), np.diag([-1, 1, 1, 1])
    )
    expected = np.eye(4)[:, [0, 2, 1, 3]]
    np.testing.assert_array_equal(elementary_unitary(CPERM, 2), expected)


@pytest.mark.parametrize("n", range(1, 9))
def test_elementary_unitaries_are_unitary(n: int) -> None:
    """Every generator is unitary at every size."""
    ops = [phase(1.1), HAD, CPERM] + ([CZ4] if n >= 2 else [])
    for op in ops:
        u = elementary_unitary(op, n)
        np.testing.assert_allclose(u.conj().T @ u, np.eye(2**n), atol=1e-12)


def test_elementary_unitary_size_guard() -> None:
    """Dense extraction stops at ten qubits."""
    with pytest.raises(ResourceLimitError):
        elementary_unitary(HAD, 11)


def test_inverse_program_undoes_program(rng: np.random.Generator) -> None:
    """A program followed by its inverse is the identity."""
    n = 4
    prog = ElementaryProgram(n, (phase(0.3), HAD, CPERM, CZ4, CPERM, phase(-1.2)))
    state = OamState.random(n, rng)
    before = state.amp.copy()
    apply_program(state, prog)
    apply_program(state, inverse_program(prog))
    np.testing.assert_allclose(state.amp, before, atol=1e-12)


def test_inverse_program_folds_permutation_runs() -> None:
    """A run of ``k`` permutations inverts to ``n - k`` of them."""
    prog = ElementaryProgram(4, (CPERM, CPERM, CPERM, HAD, phase(0.5)))
    assert inverse_program(prog).ops == (phase(-0.5), HAD, CPERM)
    assert inverse_program(ElementaryProgram(3, (CPERM,) * 3)).ops == ()
    assert inverse_program(ElementaryProgram(1, (CPERM, HAD))).ops == (HAD,)


def test_norm_is_conserved_over_long_programs() -> None:
    """Ten thousand random ops on ten qubits drift the norm by less than 1e-9."""
    generator = np.random.default_rng(7)
    n = 10
    choices = [HAD, CPERM, CZ4]
    ops = []
    for pick in generator.integers(0, 4, size=10_000).tolist():
        if pick == 3:
            ops.append(phase(float(generator.uniform(-math.pi, math.pi))))
        else:
            ops.append(choices[pick])
    prog = ElementaryProgram(n, tuple(ops))
    state = apply_program(OamState.random(n, generator), prog)
    assert abs(state.norm() - 1.0) < 1e-9
