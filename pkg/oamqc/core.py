"""Encoding conventions, circuit IR and state types shared by every module.

Qubit ``k`` (1-indexed, matching ``|c_1 c_2 ... c_n>``) is stored in bit
``k - 1`` of the OAM mode index, so qubit 1 is the least-significant bit:

    m = sum(c_k * 2**(k - 1) for k in 1..n)

The binary identification as usually printed sums ``c_{n-k} 2^{k-1}``, which
refers to an undefined ``c_0`` at ``k = n``. The least-significant-bit reading
is the only one under which the phase, Hadamard and control-Z actions on
modes (even/odd pairs, multiples of four) touch the *first* qubits, so the
operational definitions win and this module fixes that convention for the
whole package.
"""

from __future__ import annotations

import cmath
import dataclasses as dc
import enum
import math
import typing as typ

import numpy as np

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    import numpy.typing as npt

__all__ = [
    "CPERM",
    "CZ4",
    "HAD",
    "MAX_COMPILE_QUBITS",
    "MAX_SIMULATION_QUBITS",
    "SUGAR_NAMES",
    "CPhase",
    "Circuit",
    "CircuitValidationError",
    "Cnot",
    "CzStd",
    "ElementaryOp",
    "ElementaryProgram",
    "Gate",
    "InvalidInputError",
    "InvalidOperationError",
    "Matrix2",
    "OamState",
    "OneQubit",
    "OpKind",
    "ROTATION_NAMES",
    "ResourceLimitError",
    "Swap",
    "bits_of_mode",
    "check_qubit_count",
    "ensure_valid",
    "is_unitary",
    "mode_count",
    "mode_of_bits",
    "named_gate",
    "phase",
    "unitary_gate",
    "validate_circuit",
    "wrap_angle",
]

MAX_SIMULATION_QUBITS = 12
MAX_COMPILE_QUBITS = 16
UNITARY_ATOL = 1e-10

Matrix2 = tuple[complex, complex, complex, complex]


class InvalidInputError(ValueError):
    """Raised when an argument or input violates an encoding constraint."""


class InvalidOperationError(RuntimeError):
    """Raised when an operation is undefined for the register it targets."""


class ResourceLimitError(RuntimeError):
    """Raised when a request exceeds a dense-size guard."""


class CircuitValidationError(InvalidInputError):
    """Raised when a circuit fails :func:`validate_circuit`."""

    def __init__(self, violations: cabc.Sequence[str]) -> None:
        self.violations = tuple(violations)
        super().__init__("invalid circuit: " + "; ".join(self.violations))


# -------------------- Encoding --------------------


def check_qubit_count(n: int, *, limit: int | None = None) -> int:
    """Return ``n`` after checking ``1 <= n`` (and ``n <= limit`` when given)."""
    if n < 1:
        msg = f"qubit count must be at least 1, got {n}"
        raise InvalidInputError(msg)
    if limit is not None and n > limit:
        msg = f"qubit count {n} exceeds the supported maximum of {limit}"
        raise ResourceLimitError(msg)
    return n


def mode_count(n: int) -> int:
    """Return ``d = 2**n``, the number of OAM modes encoding ``n`` qubits."""
    return 1 << check_qubit_count(n)


def mode_of_bits(bits: cabc.Sequence[int], n: int | None = None) -> int:
    """Return the mode index of the qubit-1-first bit string ``bits``.

    Parameters
    ----------
    bits:
        Qubit values ``c_1 ... c_n``, each 0 or 1.
    n:
        Expected register size. Defaults to ``len(bits)``.

    Returns
    -------
    int
        ``sum(c_k * 2**(k - 1))``, in ``[0, 2**n - 1]``.

    Raises
    ------
    InvalidInputError
        If the length differs from ``n`` or an entry is not a bit.

    """
    size = len(bits) if n is None else n
    if len(bits) != size or size < 1:
        msg = f"bit string of length {len(bits)} does not match {size} qubits"
        raise InvalidInputError(msg)
    mode = 0
    for position, bit in enumerate(bits):
        if bit not in (0, 1):
            msg = f"bit {position + 1} must be 0 or 1, got {bit!r}"
            raise InvalidInputError(msg)
        mode |= bit << position
    return mode


def bits_of_mode(m: int, n: int) -> tuple[int, ...]:
    """Return the qubit-1-first bit string of mode ``m`` on ``n`` qubits."""
    d = mode_count(n)
    if not 0 <= m < d:
        msg = f"mode {m} out of range [0, {d - 1}]"
        raise InvalidInputError(msg)
    return tuple((m >> k) & 1 for k in range(n))


def wrap_angle(theta: float) -> float:
    """Return ``theta`` reduced modulo 2π into ``(-π, π]``."""
    wrapped = math.remainder(theta, math.tau)
    return math.pi if wrapped == -math.pi else wrapped


def is_unitary(matrix: npt.ArrayLike, *, atol: float = UNITARY_ATOL) -> bool:
    """Return ``True`` when ``matrix`` is square and unitary within ``atol``."""
    u = np.asarray(matrix, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.allclose(u.conj().T @ u, np.eye(u.shape[0]), rtol=0, atol=atol))


# -------------------- Circuit IR --------------------


def _matrix2(rows: npt.ArrayLike) -> Matrix2:
    flat = np.asarray(rows, dtype=np.complex128).reshape(4)
    return (complex(flat[0]), complex(flat[1]), complex(flat[2]), complex(flat[3]))


@dc.dataclass(frozen=True, slots=True)
class OneQubit:
    """Arbitrary single-qubit gate given by a row-major 2×2 matrix.

    ``name`` and ``angle`` record the sugar the gate was written with so the
    circuit text format can round-trip it; ``"u"`` marks an explicit matrix.
    """

    matrix: Matrix2
    target: int
    name: str = "u"
    angle: float | None = None

    @property
    def unitary(self) -> npt.NDArray[np.complex128]:
        """Return the gate matrix as a 2×2 array."""
        return np.array(self.matrix, dtype=np.complex128).reshape(2, 2)

    @property
    def qubits(self) -> tuple[int, ...]:
        """Return the qubit labels the gate touches."""
        return (self.target,)


@dc.dataclass(frozen=True, slots=True)
class Cnot:
    """Controlled-NOT."""

    control: int
    target: int

    @property
    def qubits(self) -> tuple[int, ...]:
        """Return the qubit labels the gate touches."""
        return (self.control, self.target)


@dc.dataclass(frozen=True, slots=True)
class CzStd:
    """Standard controlled-Z, ``diag(1, 1, 1, -1)``."""

    control: int
    target: int

    @property
    def qubits(self) -> tuple[int, ...]:
        """Return the qubit labels the gate touches."""
        return (self.control, self.target)


@dc.dataclass(frozen=True, slots=True)
class CPhase:
    """Controlled phase ``diag(1, 1, 1, e^{iθ})``."""

    theta: float
    control: int
    target: int

    @property
    def qubits(self) -> tuple[int, ...]:
        """Return the qubit labels the gate touches."""
        return (self.control, self.target)


@dc.dataclass(frozen=True, slots=True)
class Swap:
    """Exchange of two qubits."""

    first: int
    second: int

    @property
    def qubits(self) -> tuple[int, ...]:
        """Return the qubit labels the gate touches."""
        return (self.first, self.second)


Gate = OneQubit | Cnot | CzStd | CPhase | Swap


_SQRT_HALF = 1 / math.sqrt(2)

_FIXED_MATRICES: dict[str, Matrix2] = {
    "h": (_SQRT_HALF, _SQRT_HALF, _SQRT_HALF, -_SQRT_HALF),
    "x": (0, 1, 1, 0),
    "y": (0, -1j, 1j, 0),
    "z": (1, 0, 0, -1),
    "s": (1, 0, 0, 1j),
    "t": (1, 0, 0, cmath.exp(1j * math.pi / 4)),
}


def _rotation(name: str, angle: float) -> Matrix2:
    c = math.cos(angle / 2)
    s = math.sin(angle / 2)
    match name:
        case "rx":
            return (c, -1j * s, -1j * s, c)
        case "ry":
            return (c, -s, s, c)
        case _:
            return (cmath.exp(-0.5j * angle), 0, 0, cmath.exp(0.5j * angle))


ROTATION_NAMES = ("rx", "ry", "rz")
SUGAR_NAMES = (*_FIXED_MATRICES, *ROTATION_NAMES)


def named_gate(name: str, target: int, angle: float | None = None) -> OneQubit:
    """Return the sugar gate ``name`` lowered to :class:`OneQubit`.

    Rotations follow ``RZ(φ) = e^{-iφZ/2}`` and ``RX(φ) = e^{-iφX/2}``.
    """
    key = name.lower()
    if key in _FIXED_MATRICES:
        if angle is not None:
            msg = f"gate {key!r} takes no angle"
            raise InvalidInputError(msg)
        return OneQubit(_FIXED_MATRICES[key], target, key)
    if key in ROTATION_NAMES:
        if angle is None or not math.isfinite(angle):
            msg = f"gate {key!r} needs a finite angle"
            raise InvalidInputError(msg)
        return OneQubit(_rotation(key, angle), target, key, angle)
    msg = f"unknown gate {name!r}; expected one of {', '.join(SUGAR_NAMES)}"
    raise InvalidInputError(msg)


def unitary_gate(matrix: npt.ArrayLike, target: int) -> OneQubit:
    """Return an explicit-matrix gate acting on ``target``."""
    return OneQubit(_matrix2(matrix), target)


@dc.dataclass(frozen=True, slots=True)
class Circuit:
    """Ordered gate list on ``n`` qubits."""

    n: int
    gates: tuple[Gate, ...] = ()

    def __len__(self) -> int:
        """Return the number of gates."""
        return len(self.gates)


def _gate_label(gate: Gate) -> str:
    match gate:
        case OneQubit(name=name):
            return name
        case Cnot():
            return "cnot"
        case CzStd():
            return "cz"
        case CPhase():
            return "cphase"
        case Swap():
            return "swap"


def validate_circuit(circ: Circuit) -> list[str]:
    """Return every violation in ``circ``; an empty list means the circuit is valid.

    Checks the qubit count, index ranges, distinct operands of two-qubit gates,
    finite angles and unitarity of explicit matrices (tolerance 1e-10).
    """
    violations: list[str] = []
    if circ.n < 1:
        violations.append(f"qubit count must be at least 1, got {circ.n}")
        return violations
    for index, gate in enumerate(circ.gates, start=1):
        prefix = f"gate {index} ({_gate_label(gate)})"
        violations.extend(
            f"{prefix}: qubit {q} out of range [1, {circ.n}]"
            for q in gate.qubits
            if not 1 <= q <= circ.n
        )
        if len(gate.qubits) == 2 and gate.qubits[0] == gate.qubits[1]:
            same = "operands coincide" if isinstance(gate, Swap) else None
            violations.append(f"{prefix}: {same or 'control equals target'}")
        match gate:
            case OneQubit(matrix=matrix) if not is_unitary(
                np.array(matrix).reshape(2, 2)
            ):
                violations.append(f"{prefix}: non-unitary matrix")
            case CPhase(theta=theta) if not math.isfinite(theta):
                violations.append(f"{prefix}: angle must be finite")
            case _:
                pass
    return violations


def ensure_valid(circ: Circuit) -> Circuit:
    """Return ``circ`` or raise :class:`CircuitValidationError`."""
    if violations := validate_circuit(circ):
        raise CircuitValidationError(violations)
    return circ


# -------------------- Elementary programs --------------------


class OpKind(enum.StrEnum):
    """The four elementary single-photon operations."""

    PHASE = "PHASE"
    HAD = "HAD"
    CPERM = "CPERM"
    CZ4 = "CZ4"


@dc.dataclass(frozen=True, slots=True)
class ElementaryOp:
    """One letter of an elementary program; only ``PHASE`` carries an angle."""

    kind: OpKind
    theta: float | None = None

    def __post_init__(self) -> None:
        """Check that the angle is present exactly for ``PHASE``."""
        if self.kind is OpKind.PHASE:
            if self.theta is None or not math.isfinite(self.theta):
                msg = f"PHASE needs a finite angle, got {self.theta!r}"
                raise InvalidInputError(msg)
        elif self.theta is not None:
            msg = f"{self.kind} takes no angle"
            raise InvalidInputError(msg)

    def __str__(self) -> str:
        """Return ``PHASE(θ)`` or the bare kind name."""
        return f"PHASE({self.theta!r})" if self.kind is OpKind.PHASE else self.kind


HAD = ElementaryOp(OpKind.HAD)
CPERM = ElementaryOp(OpKind.CPERM)
CZ4 = ElementaryOp(OpKind.CZ4)


def phase(theta: float) -> ElementaryOp:
    """Return ``PHASE(theta)``; the angle is stored unreduced."""
    return ElementaryOp(OpKind.PHASE, float(theta))


@dc.dataclass(frozen=True, slots=True)
class ElementaryProgram:
    """Elementary operations on ``n`` qubits, applied left to right."""

    n: int
    ops: tuple[ElementaryOp, ...] = ()

    def __post_init__(self) -> None:
        """Reject register sizes the operations cannot act on."""
        check_qubit_count(self.n)
        if self.n < 2 and CZ4 in self.ops:
            msg = "CZ4 acts on the first two qubits and needs n >= 2"
            raise InvalidOperationError(msg)

    def __len__(self) -> int:
        """Return the number of operations."""
        return len(self.ops)


# -------------------- State --------------------


@dc.dataclass(slots=True, eq=False)
class OamState:
    """Dense amplitude vector over the ``2**n`` OAM modes of one photon.

    Operations mutate ``amp`` in place; a state must not be mutated from
    several threads at once.
    """

    n: int
    amp: npt.NDArray[np.complex128]

    def __post_init__(self) -> None:
        """Coerce ``amp`` to a contiguous complex vector of length ``2**n``."""
        d = mode_count(self.n)
        amp = np.ascontiguousarray(self.amp, dtype=np.complex128)
        if amp.shape != (d,):
            msg = f"expected {d} amplitudes for {self.n} qubits, got shape {amp.shape}"
            raise InvalidInputError(msg)
        self.amp = amp

    @classmethod
    def basis(cls, n: int, mode: int = 0) -> OamState:
        """Return the basis state ``|mode>``."""
        d = mode_count(n)
        if not 0 <= mode < d:
            msg = f"mode {mode} out of range [0, {d - 1}]"
            raise InvalidInputError(msg)
        amp = np.zeros(d, dtype=np.complex128)
        amp[mode] = 1.0
        return cls(n, amp)

    @classmethod
    def from_amplitudes(
        cls, amplitudes: npt.ArrayLike, *, atol: float = 1e-9
    ) -> OamState:
        """Return a state holding a copy of ``amplitudes`` after a norm check."""
        amp = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        d = amp.shape[0]
        n = d.bit_length() - 1
        if d < 2 or 1 << n != d:
            msg = f"amplitude count {d} is not a power of two >= 2"
            raise InvalidInputError(msg)
        norm = float(np.linalg.norm(amp))
        if abs(norm - 1.0) > atol:
            msg = f"state norm {norm!r} differs from 1 by more than {atol}"
            raise InvalidInputError(msg)
        return cls(n, amp)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> OamState:
        """Return a Haar-random normalized state drawn from ``rng``."""
        d = mode_count(n)
        amp = rng.normal(size=d) + 1j * rng.normal(size=d)
        return cls(n, amp / np.linalg.norm(amp))

    @property
    def d(self) -> int:
        """Return the number of modes."""
        return self.amp.shape[0]

    def norm(self) -> float:
        """Return the Euclidean norm of the amplitudes."""
        return float(np.linalg.norm(self.amp))

    def probabilities(self) -> npt.NDArray[np.float64]:
        """Return ``|amp[m]|**2`` for every mode."""
        return np.abs(self.amp) ** 2

    def copy(self) -> OamState:
        """Return an independent copy."""
        return OamState(self.n, self.amp.copy())
