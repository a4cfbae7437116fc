"""Executable semantics of the four elementary single-photon operations.

Each kernel acts on axis 0 of an amplitude array, so the same code updates a
state vector in place or every column of a matrix at once (which is how the
dense extraction helpers build their matrices). Mode-level actions:

- ``PHASE(θ)``: ``|l> -> e^{iθ}|l>`` for even ``l``, ``e^{-iθ}|l>`` for odd ``l``.
- ``HAD``: ``|2m> -> (|2m> + |2m+1>)/√2``, ``|2m+1> -> (|2m> - |2m+1>)/√2``.
- ``CPERM``: ``|l> -> |2l>`` for ``l < d/2``, ``|2l - d + 1>`` otherwise; a left
  rotation of the mode bits, so qubit ``k`` moves to ``k + 1`` and qubit ``n``
  to 1.
- ``CZ4``: ``|4m> -> -|4m>``, every other mode unchanged.

``CPERM`` only rotates in one direction; its inverse is ``CPERM^{n-1}``.
"""

from __future__ import annotations

import cmath
import math
import typing as typ

import numpy as np

from .core import (
    CPERM,
    ElementaryOp,
    ElementaryProgram,
    InvalidInputError,
    InvalidOperationError,
    OamState,
    OpKind,
    check_qubit_count,
    mode_count,
    phase,
)

if typ.TYPE_CHECKING:
    import numpy.typing as npt

__all__ = [
    "MAX_DENSE_QUBITS",
    "apply_cperm",
    "apply_cz",
    "apply_hadamard",
    "apply_op",
    "apply_phase",
    "apply_program",
    "elementary_unitary",
    "inverse_program",
    "program_unitary",
]

MAX_DENSE_QUBITS = 10

_SQRT_HALF = 1 / math.sqrt(2)


def _phase_kernel(amp: npt.NDArray[np.complex128], theta: float) -> None:
    amp[0::2] *= cmath.exp(1j * theta)
    amp[1::2] *= cmath.exp(-1j * theta)


def _hadamard_kernel(amp: npt.NDArray[np.complex128]) -> None:
    even = amp[0::2].copy()
    odd = amp[1::2]
    amp[0::2] = (even + odd) * _SQRT_HALF
    amp[1::2] = (even - odd) * _SQRT_HALF


def _cperm_kernel(amp: npt.NDArray[np.complex128]) -> None:
    # Single scratch buffer: the rotation is not an involution.
    half = amp.shape[0] // 2
    scratch = amp.copy()
    amp[0::2] = scratch[:half]
    amp[1::2] = scratch[half:]


def _cz_kernel(amp: npt.NDArray[np.complex128]) -> None:
    amp[0::4] *= -1


def _require_two_qubits(n: int) -> None:
    if n < 2:
        msg = "CZ4 acts on the first two qubits and needs n >= 2"
        raise InvalidOperationError(msg)


def _apply_kernel(amp: npt.NDArray[np.complex128], op: ElementaryOp) -> None:
    match op.kind:
        case OpKind.PHASE:
            _phase_kernel(amp, typ.cast("float", op.theta))
        case OpKind.HAD:
            _hadamard_kernel(amp)
        case OpKind.CPERM:
            _cperm_kernel(amp)
        case OpKind.CZ4:
            _cz_kernel(amp)


def apply_phase(state: OamState, theta: float) -> OamState:
    """Apply ``e^{iθZ}`` on qubit 1 in place and return ``state``."""
    _phase_kernel(state.amp, theta)
    return state


def apply_hadamard(state: OamState) -> OamState:
    """Apply the Hadamard gate on qubit 1 in place and return ``state``."""
    _hadamard_kernel(state.amp)
    return state


def apply_cperm(state: OamState) -> OamState:
    """Apply the cyclic qubit permutation in place and return ``state``."""
    _cperm_kernel(state.amp)
    return state


def apply_cz(state: OamState) -> OamState:
    """Apply ``diag(-1, 1, 1, 1)`` on qubits 1 and 2 in place.

    Raises
    ------
    InvalidOperationError
        If the state holds fewer than two qubits.

    """
    _require_two_qubits(state.n)
    _cz_kernel(state.amp)
    return state


def apply_op(state: OamState, op: ElementaryOp) -> OamState:
    """Apply a single elementary operation in place."""
    if op.kind is OpKind.CZ4:
        _require_two_qubits(state.n)
    _apply_kernel(state.amp, op)
    return state


def apply_program(state: OamState, prog: ElementaryProgram) -> OamState:
    """Apply ``prog`` to ``state`` left to right, in place.

    Raises
    ------
    InvalidInputError
        If the program and the state differ in qubit count.

    """
    if state.n != prog.n:
        msg = f"program acts on {prog.n} qubits but the state has {state.n}"
        raise InvalidInputError(msg)
    amp = state.amp
    for op in prog.ops:
        _apply_kernel(amp, op)
    return state


def _dense_identity(n: int) -> npt.NDArray[np.complex128]:
    check_qubit_count(n, limit=MAX_DENSE_QUBITS)
    return np.eye(mode_count(n), dtype=np.complex128)


def elementary_unitary(op: ElementaryOp, n: int) -> npt.NDArray[np.complex128]:
    """Return the ``d×d`` matrix of ``op``; column ``j`` is ``op|j>``.

    Raises
    ------
    ResourceLimitError
        If ``n`` exceeds :data:`MAX_DENSE_QUBITS`.
    InvalidOperationError
        If ``op`` is ``CZ4`` and ``n < 2``.

    """
    matrix = _dense_identity(n)
    if op.kind is OpKind.CZ4:
        _require_two_qubits(n)
    _apply_kernel(matrix, op)
    return matrix


def program_unitary(prog: ElementaryProgram) -> npt.NDArray[np.complex128]:
    """Return the dense matrix of a whole program (``n <= 10``)."""
    matrix = _dense_identity(prog.n)
    for op in prog.ops:
        _apply_kernel(matrix, op)
    return matrix


def inverse_program(prog: ElementaryProgram) -> ElementaryProgram:
    """Return a program implementing the exact inverse of ``prog``.

    ``PHASE`` angles are negated, ``HAD`` and ``CZ4`` are their own inverses
    and a run of ``k`` cyclic permutations becomes ``CPERM^{(n-k) mod n}``.
    """
    n = prog.n
    inverse: list[ElementaryOp] = []
    run = 0
    for op in reversed(prog.ops):
        if op.kind is OpKind.CPERM:
            run += 1
            continue
        inverse.extend([CPERM] * ((n - run) % n))
        run = 0
        if op.kind is OpKind.PHASE:
            inverse.append(phase(-typ.cast("float", op.theta)))
        else:
            inverse.append(op)
    inverse.extend([CPERM] * ((n - run) % n))
    return ElementaryProgram(n, tuple(inverse))
