"""Reference n-qubit simulator built on tensor contractions.

The amplitude vector is viewed as a rank-``n`` tensor with one axis per
qubit. In C order the last axis varies fastest, so qubit ``k`` (bit ``k - 1``
of the mode index) lives on axis ``n - k``. Gates are applied with
``numpy.tensordot`` and never through the elementary-operation kernels, so
comparisons between the two modules are meaningful.

Two-qubit matrices use the little-endian local index
``i = bit(q_low) + 2 * bit(q_high)``.
"""

from __future__ import annotations

import cmath
import typing as typ

import numpy as np

from .core import (
    CPhase,
    Circuit,
    Cnot,
    CzStd,
    Gate,
    InvalidInputError,
    OamState,
    OneQubit,
    Swap,
    check_qubit_count,
    ensure_valid,
    is_unitary,
    mode_count,
)
from .elementary import MAX_DENSE_QUBITS

if typ.TYPE_CHECKING:
    import numpy.typing as npt

__all__ = [
    "CNOT_MATRIX",
    "CZ_MATRIX",
    "MAX_DFT_QUBITS",
    "OMEGA_MATRIX",
    "SWAP_MATRIX",
    "apply_1q",
    "apply_2q",
    "apply_cyclic_shift",
    "circuit_unitary",
    "cphase_matrix",
    "dft_apply",
    "embed_low",
    "fidelity",
    "run_circuit",
]

MAX_DFT_QUBITS = 12

# Control on q_low, target on q_high.
CNOT_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=np.complex128
)
CZ_MATRIX = np.diag([1, 1, 1, -1]).astype(np.complex128)
OMEGA_MATRIX = np.diag([-1, 1, 1, 1]).astype(np.complex128)
SWAP_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
)


def cphase_matrix(theta: float) -> npt.NDArray[np.complex128]:
    """Return ``diag(1, 1, 1, e^{iθ})``."""
    return np.diag([1, 1, 1, cmath.exp(1j * theta)]).astype(np.complex128)


def _checked_unitary(u: npt.ArrayLike, size: int) -> npt.NDArray[np.complex128]:
    matrix = np.asarray(u, dtype=np.complex128)
    if matrix.shape != (size, size):
        msg = f"expected a {size}x{size} matrix, got shape {matrix.shape}"
        raise InvalidInputError(msg)
    if not is_unitary(matrix):
        msg = f"{size}x{size} matrix is not unitary within 1e-10"
        raise InvalidInputError(msg)
    return matrix


def _check_index(q: int, n: int) -> None:
    if not 1 <= q <= n:
        msg = f"qubit {q} out of range [1, {n}]"
        raise InvalidInputError(msg)


def _as_tensor(
    block: npt.NDArray[np.complex128], n: int
) -> npt.NDArray[np.complex128]:
    # Trailing axis carries the columns of a batch of vectors.
    return block.reshape((2,) * n + (block.shape[1],))


def _contract_1q(
    block: npt.NDArray[np.complex128],
    n: int,
    u: npt.NDArray[np.complex128],
    target: int,
) -> npt.NDArray[np.complex128]:
    axis = n - target
    out = np.tensordot(u, _as_tensor(block, n), axes=([1], [axis]))
    return np.moveaxis(out, 0, axis).reshape(block.shape)


def _contract_2q(
    block: npt.NDArray[np.complex128],
    n: int,
    u: npt.NDArray[np.complex128],
    q_low: int,
    q_high: int,
) -> npt.NDArray[np.complex128]:
    axis_low = n - q_low
    axis_high = n - q_high
    # Row index h_out * 2 + l_out, column index h_in * 2 + l_in.
    u_tensor = u.reshape(2, 2, 2, 2)
    out = np.tensordot(
        u_tensor, _as_tensor(block, n), axes=([2, 3], [axis_high, axis_low])
    )
    return np.moveaxis(out, [0, 1], [axis_high, axis_low]).reshape(block.shape)


def apply_1q(state: OamState, u: npt.ArrayLike, target: int) -> OamState:
    """Apply the 2×2 unitary ``u`` to qubit ``target`` in place.

    Raises
    ------
    InvalidInputError
        If ``target`` is out of range or ``u`` is not a 2×2 unitary.

    """
    _check_index(target, state.n)
    matrix = _checked_unitary(u, 2)
    column = state.amp.reshape(-1, 1)
    state.amp[:] = _contract_1q(column, state.n, matrix, target)[:, 0]
    return state


def apply_2q(state: OamState, u: npt.ArrayLike, q_low: int, q_high: int) -> OamState:
    """Apply the 4×4 unitary ``u`` to the qubit pair in place.

    ``q_low`` supplies the low bit of ``u``'s basis index and ``q_high`` the
    high bit; the two labels need not be ordered.

    Raises
    ------
    InvalidInputError
        If the indices coincide or fall out of range, or ``u`` is not a 4×4
        unitary.

    """
    _check_index(q_low, state.n)
    _check_index(q_high, state.n)
    if q_low == q_high:
        msg = f"two-qubit gate needs distinct qubits, got {q_low} twice"
        raise InvalidInputError(msg)
    matrix = _checked_unitary(u, 4)
    column = state.amp.reshape(-1, 1)
    state.amp[:] = _contract_2q(column, state.n, matrix, q_low, q_high)[:, 0]
    return state


def apply_cyclic_shift(state: OamState) -> OamState:
    """Relabel qubits ``k -> k + 1`` (qubit ``n`` becomes qubit 1) in place."""
    tensor = state.amp.reshape((2,) * state.n)
    state.amp[:] = np.moveaxis(tensor, 0, -1).reshape(-1)
    return state


def _apply_gate(
    block: npt.NDArray[np.complex128],
    n: int,
    gate: Gate,
) -> npt.NDArray[np.complex128]:
    match gate:
        case OneQubit(target=target):
            return _contract_1q(block, n, gate.unitary, target)
        case Cnot(control=control, target=target):
            return _contract_2q(block, n, CNOT_MATRIX, control, target)
        case CzStd(control=control, target=target):
            return _contract_2q(block, n, CZ_MATRIX, control, target)
        case CPhase(theta=theta, control=control, target=target):
            return _contract_2q(block, n, cphase_matrix(theta), control, target)
        case Swap(first=first, second=second):
            return _contract_2q(block, n, SWAP_MATRIX, first, second)


def run_circuit(state: OamState, circ: Circuit) -> OamState:
    """Apply every gate of ``circ`` to ``state`` in order, in place.

    Raises
    ------
    CircuitValidationError
        If ``circ`` fails validation.
    InvalidInputError
        If the circuit and the state differ in qubit count.

    """
    ensure_valid(circ)
    if state.n != circ.n:
        msg = f"circuit acts on {circ.n} qubits but the state has {state.n}"
        raise InvalidInputError(msg)
    block = state.amp.reshape(-1, 1)
    for gate in circ.gates:
        block = _apply_gate(block, circ.n, gate)
    state.amp[:] = block[:, 0]
    return state


def circuit_unitary(circ: Circuit) -> npt.NDArray[np.complex128]:
    """Return the dense ``d×d`` matrix of ``circ`` (``n <= 10``)."""
    ensure_valid(circ)
    check_qubit_count(circ.n, limit=MAX_DENSE_QUBITS)
    block = np.eye(mode_count(circ.n), dtype=np.complex128)
    for gate in circ.gates:
        block = _apply_gate(block, circ.n, gate)
    return block


def embed_low(u: npt.ArrayLike, n: int) -> npt.NDArray[np.complex128]:
    """Return ``u`` acting on the lowest qubits of an ``n``-qubit register.

    With qubit 1 as the least-significant bit this is ``I ⊗ u`` in Kronecker
    order, where ``u`` covers qubits ``1 .. log2(len(u))``.
    """
    matrix = np.asarray(u, dtype=np.complex128)
    d = mode_count(check_qubit_count(n, limit=MAX_DENSE_QUBITS))
    size = matrix.shape[0]
    if matrix.shape != (size, size) or d % size:
        msg = f"cannot embed a matrix of shape {matrix.shape} into {n} qubits"
        raise InvalidInputError(msg)
    return np.kron(np.eye(d // size, dtype=np.complex128), matrix)


def fidelity(a: OamState, b: OamState) -> float:
    """Return ``|<a|b>|``, insensitive to the global phase of either state."""
    if a.n != b.n:
        msg = f"cannot compare states on {a.n} and {b.n} qubits"
        raise InvalidInputError(msg)
    return min(1.0, float(abs(np.vdot(a.amp, b.amp))))


def dft_apply(state: OamState) -> OamState:
    """Apply ``F[j, k] = e^{2πi jk/d} / √d`` on mode indices, in place.

    Raises
    ------
    ResourceLimitError
        If the state holds more than :data:`MAX_DFT_QUBITS` qubits.

    """
    check_qubit_count(state.n, limit=MAX_DFT_QUBITS)
    state.amp[:] = np.fft.ifft(state.amp, norm="ortho")
    return state
