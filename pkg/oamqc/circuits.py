"""Built-in circuit generators: QFT, GHZ and seeded random circuits."""

from __future__ import annotations

import dataclasses as dc
import enum
import math
import typing as typ

import numpy as np

from .core import (
    MAX_COMPILE_QUBITS,
    SUGAR_NAMES,
    CPhase,
    Circuit,
    Cnot,
    CzStd,
    Gate,
    InvalidInputError,
    Swap,
    check_qubit_count,
    named_gate,
    unitary_gate,
)

if typ.TYPE_CHECKING:
    import numpy.typing as npt

__all__ = [
    "GateSet",
    "RandomSpec",
    "ghz_circuit",
    "qft_circuit",
    "random_circuit",
    "random_unitary",
]

_ROTATIONS = frozenset({"rx", "ry", "rz"})
_TWO_QUBIT = frozenset({"cnot", "cz", "cphase", "swap"})


class GateSet(enum.StrEnum):
    """Gate vocabularies for :func:`random_circuit`."""

    FULL = "full"
    CLIFFORD = "clifford"
    ONE_QUBIT = "one-qubit"


_GATE_SETS: dict[GateSet, tuple[str, ...]] = {
    GateSet.FULL: (*SUGAR_NAMES, "u", "cnot", "cz", "cphase", "swap"),
    GateSet.CLIFFORD: ("h", "s", "x", "y", "z", "cnot", "cz"),
    GateSet.ONE_QUBIT: (*SUGAR_NAMES, "u"),
}


@dc.dataclass(frozen=True, slots=True)
class RandomSpec:
    """Parameters of a random circuit; equal specs give equal circuits."""

    n: int
    depth: int
    seed: int = 0
    gate_set: GateSet = GateSet.FULL

    def __post_init__(self) -> None:
        """Reject specs no circuit can satisfy."""
        check_qubit_count(self.n, limit=MAX_COMPILE_QUBITS)
        if self.depth < 0:
            msg = f"depth must be non-negative, got {self.depth}"
            raise InvalidInputError(msg)
        if not 0 <= self.seed < 2**64:
            msg = f"seed must be an unsigned 64-bit integer, got {self.seed}"
            raise InvalidInputError(msg)
        try:
            GateSet(self.gate_set)
        except ValueError:
            msg = f"unknown gate set {self.gate_set!r}"
            raise InvalidInputError(msg) from None


def qft_circuit(n: int) -> Circuit:
    """Return the quantum Fourier transform on ``n`` qubits.

    Qubit ``n`` holds the most-significant bit of the mode index, so the
    Hadamard and controlled-phase ladder runs from qubit ``n`` down to qubit
    1, and the closing swaps reverse the qubit order. The circuit acts on mode
    amplitudes as ``F[j, k] = e^{2πi jk/d} / √d``.
    """
    check_qubit_count(n, limit=MAX_COMPILE_QUBITS)
    gates: list[Gate] = []
    for target in range(n, 0, -1):
        gates.append(named_gate("h", target))
        gates.extend(
            CPhase(math.pi / 2 ** (target - control), control, target)
            for control in range(target - 1, 0, -1)
        )
    gates.extend(Swap(k, n + 1 - k) for k in range(1, n // 2 + 1))
    return Circuit(n, tuple(gates))


def ghz_circuit(n: int) -> Circuit:
    """Return ``H(1)`` followed by the chain ``CNOT(k, k + 1)``."""
    check_qubit_count(n, limit=MAX_COMPILE_QUBITS)
    if n < 2:
        msg = f"GHZ circuit needs at least 2 qubits, got {n}"
        raise InvalidInputError(msg)
    chain = (Cnot(k, k + 1) for k in range(1, n))
    return Circuit(n, (named_gate("h", 1), *chain))


def random_unitary(rng: np.random.Generator) -> npt.NDArray[np.complex128]:
    """Return a Haar-random 2×2 unitary from a QR-decomposed Ginibre matrix."""
    z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    diagonal = np.diag(r)
    return q * (diagonal / np.abs(diagonal))


def _random_gate(name: str, n: int, rng: np.random.Generator) -> Gate:
    if name in _TWO_QUBIT:
        first, second = (int(q) + 1 for q in rng.choice(n, size=2, replace=False))
        match name:
            case "cnot":
                return Cnot(first, second)
            case "cz":
                return CzStd(first, second)
            case "cphase":
                return CPhase(float(rng.uniform(-math.pi, math.pi)), first, second)
            case _:
                return Swap(first, second)
    target = int(rng.integers(1, n + 1))
    if name == "u":
        return unitary_gate(random_unitary(rng), target)
    if name in _ROTATIONS:
        return named_gate(name, target, float(rng.uniform(-math.pi, math.pi)))
    return named_gate(name, target)


def random_circuit(spec: RandomSpec) -> Circuit:
    """Return a deterministic random circuit drawn with PCG64 seeded by ``spec``.

    Each layer picks a gate name uniformly from the selected set (two-qubit
    names are removed when ``n == 1``), then draws its operands and angles.
    """
    names = _GATE_SETS[GateSet(spec.gate_set)]
    if spec.n == 1:
        names = tuple(name for name in names if name not in _TWO_QUBIT)
    rng = np.random.default_rng(spec.seed)
    gates = tuple(
        _random_gate(names[int(rng.integers(len(names)))], spec.n, rng)
        for _ in range(spec.depth)
    )
    return Circuit(spec.n, gates)
