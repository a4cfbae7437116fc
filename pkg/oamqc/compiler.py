"""Lower gate circuits to words over the four elementary operations.

Every builder returns a :class:`Fragment`: a list of elementary operations
plus the global phase ``φ`` such that the word equals ``e^{iφ}`` times the
target operator exactly. The elementary set cannot produce a global phase on
its own, so the phase is tracked rather than corrected; summing fragment
phases makes the phase of a whole program reproducible.

Single-qubit gates use the decomposition
``u = e^{iα} · e^{iθ1 Z} · e^{iθ2 X} · e^{iθ3 Z}`` with
``e^{iθX} = H e^{iθZ} H`` and are conjugated onto qubit 1 by powers of the
cyclic permutation. Two-qubit gates are routed onto positions 1 and 2 and
lowered through a standard controlled-Z built from the ``diag(-1, 1, 1, 1)``
generator.
"""

from __future__ import annotations

import cmath
import dataclasses as dc
import math
import typing as typ

import msgspec
import numpy as np

from .core import (
    CPERM,
    CZ4,
    HAD,
    MAX_COMPILE_QUBITS,
    CPhase,
    Circuit,
    Cnot,
    CzStd,
    ElementaryOp,
    ElementaryProgram,
    Gate,
    InvalidInputError,
    InvalidOperationError,
    OneQubit,
    OpKind,
    Swap,
    check_qubit_count,
    ensure_valid,
    is_unitary,
    mode_count,
    phase,
    wrap_angle,
)
from .elementary import inverse_program, program_unitary

if typ.TYPE_CHECKING:
    import numpy.typing as npt

__all__ = [
    "ANGLE_ATOL",
    "TWO_QUBIT_COST_CONSTANT",
    "TWO_QUBIT_COST_OFFSET",
    "CompileOptions",
    "CompileStats",
    "EulerAngles",
    "Fragment",
    "GateCost",
    "SwapResidual",
    "compile_1q",
    "compile_2q",
    "compile_circuit",
    "compile_gate",
    "compile_swap_first2",
    "euler_zxz",
    "one_qubit_cost_bound",
    "optimize",
    "route_to_front",
    "swap_recipe_residual",
    "synth_std_cz_first2",
    "two_qubit_cost_bound",
]

Logger = typ.Callable[[str], None]

ANGLE_ATOL = 1e-12
TWO_QUBIT_COST_CONSTANT = 10
TWO_QUBIT_COST_OFFSET = 150

_AMPLITUDE_EPS = 1e-12


def one_qubit_cost_bound(n: int) -> int:
    """Return the op-count ceiling for one compiled single-qubit gate."""
    return 2 * n + 7


def two_qubit_cost_bound(n: int) -> int:
    """Return the op-count ceiling for one compiled two-qubit gate."""
    return TWO_QUBIT_COST_CONSTANT * n * n + TWO_QUBIT_COST_OFFSET


# -------------------- Fragments --------------------


@dc.dataclass(frozen=True, slots=True)
class Fragment:
    """Elementary word equal to ``e^{i·phase}`` times its target operator."""

    ops: tuple[ElementaryOp, ...] = ()
    phase: float = 0.0

    def __add__(self, other: Fragment) -> Fragment:
        """Return ``self`` followed by ``other``."""
        return Fragment(self.ops + other.ops, self.phase + other.phase)

    def __len__(self) -> int:
        """Return the number of operations."""
        return len(self.ops)

    def to_program(self, n: int) -> ElementaryProgram:
        """Return the operations as a program on ``n`` qubits."""
        return ElementaryProgram(n, self.ops)


def _concat(fragments: typ.Iterable[Fragment]) -> Fragment:
    ops: list[ElementaryOp] = []
    total = 0.0
    for fragment in fragments:
        ops.extend(fragment.ops)
        total += fragment.phase
    return Fragment(tuple(ops), total)


def _cperms(count: int) -> Fragment:
    return Fragment((CPERM,) * count)


def _phase_ops(theta: float) -> tuple[ElementaryOp, ...]:
    wrapped = wrap_angle(theta)
    return () if abs(wrapped) <= ANGLE_ATOL else (phase(wrapped),)


# -------------------- Single-qubit gates --------------------


@dc.dataclass(frozen=True, slots=True)
class EulerAngles:
    """Angles with ``u = e^{iα} e^{iθ1 Z} e^{iθ2 X} e^{iθ3 Z}``."""

    theta1: float
    theta2: float
    theta3: float
    alpha: float

    def matrix(self) -> npt.NDArray[np.complex128]:
        """Return the reconstructed 2×2 matrix."""
        z1 = np.diag([cmath.exp(1j * self.theta1), cmath.exp(-1j * self.theta1)])
        z3 = np.diag([cmath.exp(1j * self.theta3), cmath.exp(-1j * self.theta3)])
        c = math.cos(self.theta2)
        s = 1j * math.sin(self.theta2)
        x2 = np.array([[c, s], [s, c]])
        return cmath.exp(1j * self.alpha) * (z1 @ x2 @ z3)


def _euler_for_branch(u: npt.NDArray[np.complex128], alpha: float) -> EulerAngles:
    v = u * cmath.exp(-1j * alpha)
    a = complex(v[0, 0])
    b = complex(v[0, 1])
    theta2 = math.atan2(abs(b), abs(a))
    total = cmath.phase(a) if abs(a) > _AMPLITUDE_EPS else 0.0
    diff = cmath.phase(b) - math.pi / 2 if abs(b) > _AMPLITUDE_EPS else 0.0
    return EulerAngles(
        theta1=wrap_angle((total + diff) / 2),
        theta2=theta2,
        theta3=wrap_angle((total - diff) / 2),
        alpha=wrap_angle(alpha),
    )


def euler_zxz(u: npt.ArrayLike) -> EulerAngles:
    """Return the ZXZ Euler angles of a 2×2 unitary.

    Both square roots of ``det u`` give valid decompositions; the one with
    the smaller ``|θ1| + |θ3|`` is returned, and on a tie the one whose ``α``
    lies in ``(-π/2, π/2]``. ``θ2`` always lies in ``[0, π/2]``.

    Raises
    ------
    InvalidInputError
        If ``u`` is not a 2×2 unitary within 1e-10.

    Examples
    --------
    >>> angles = euler_zxz([[0, 1], [1, 0]])
    >>> round(angles.theta2, 12), round(angles.alpha, 12)
    (1.570796326795, -1.570796326795)

    """
    matrix = np.asarray(u, dtype=np.complex128)
    if matrix.shape != (2, 2) or not is_unitary(matrix):
        msg = "Euler decomposition needs a 2x2 unitary matrix"
        raise InvalidInputError(msg)
    alpha0 = cmath.phase(complex(np.linalg.det(matrix))) / 2
    branches = [_euler_for_branch(matrix, alpha0 + shift) for shift in (0, math.pi)]

    def _rank(angles: EulerAngles) -> tuple[float, int]:
        spread = round(abs(angles.theta1) + abs(angles.theta3), 9)
        return spread, 0 if -math.pi / 2 < angles.alpha <= math.pi / 2 else 1

    return min(branches, key=_rank)


def route_to_front(j: int, n: int) -> tuple[Fragment, Fragment]:
    """Return the ``(pre, post)`` cyclic-permutation powers for qubit ``j``.

    ``pre`` moves qubit ``j`` to position 1 and ``post`` undoes it; each
    permutation step sends qubit ``k`` to ``k + 1`` and qubit ``n`` to 1.
    """
    check_qubit_count(n)
    _check_qubit(j, n)
    return _cperms((n - j + 1) % n), _cperms((j - 1) % n)


def compile_1q(u: npt.ArrayLike, j: int, n: int) -> Fragment:
    """Lower a single-qubit unitary on qubit ``j``.

    The core word is ``PHASE(θ3) HAD PHASE(θ2) HAD PHASE(θ1)`` with vanishing
    angles dropped; a gate equal to the identity up to phase yields an empty
    fragment and no routing.
    """
    check_qubit_count(n)
    _check_qubit(j, n)
    angles = euler_zxz(u)
    if abs(wrap_angle(angles.theta2)) <= ANGLE_ATOL:
        core = _phase_ops(angles.theta1 + angles.theta3)
    else:
        core = (
            *_phase_ops(angles.theta3),
            HAD,
            *_phase_ops(angles.theta2),
            HAD,
            *_phase_ops(angles.theta1),
        )
    if not core:
        return Fragment((), -angles.alpha)
    pre, post = route_to_front(j, n)
    return pre + Fragment(core, -angles.alpha) + post


# -------------------- First-two-qubit kernels --------------------


def _check_qubit(q: int, n: int) -> None:
    if not 1 <= q <= n:
        msg = f"qubit {q} out of range [1, {n}]"
        raise InvalidInputError(msg)


def _require_pair_register(n: int) -> None:
    check_qubit_count(n)
    if n < 2:
        msg = "two-qubit gates need a register of at least 2 qubits"
        raise InvalidOperationError(msg)


def synth_std_cz_first2(n: int) -> Fragment:
    """Return ``diag(1, 1, 1, -1)`` on qubits 1 and 2, phase ``-π/2``.

    Uses ``CZ = Z1 · X1 Ω X1`` with ``Ω = diag(-1, 1, 1, 1)``. ``X1`` is
    ``HAD PHASE(π/2) HAD`` (equal to ``iX``) and ``Z1`` is ``PHASE(π/2)``
    (equal to ``iZ``), so no routing is needed.
    """
    _require_pair_register(n)
    quarter = phase(math.pi / 2)
    ops = (HAD, quarter, HAD, CZ4, HAD, quarter, HAD, quarter)
    return Fragment(ops, -math.pi / 2)


def _hadamard_second(n: int) -> Fragment:
    pre, post = route_to_front(2, n)
    return pre + Fragment((HAD,)) + post


def _cnot_target_first(n: int) -> Fragment:
    return Fragment((HAD,)) + synth_std_cz_first2(n) + Fragment((HAD,))


def _cnot_target_second(n: int) -> Fragment:
    h2 = _hadamard_second(n)
    return h2 + synth_std_cz_first2(n) + h2


def compile_swap_first2(n: int, *, literal: bool = False) -> Fragment:
    """Return a word exchanging qubits 1 and 2.

    The default is ``CNOT(2→1) CNOT(1→2) CNOT(2→1)`` over the standard
    controlled-Z, phase ``π/2``. ``literal=True`` selects three raw
    ``CZ4`` gates between Hadamard pairs on alternating qubits, which equals
    the swap exactly (see :func:`swap_recipe_residual`).
    """
    _require_pair_register(n)
    if literal:
        h2 = _hadamard_second(n)
        h1 = Fragment((HAD,))
        omega = Fragment((CZ4,))
        return _concat((h2, omega, h2, h1, omega, h1, h2, omega, h2))
    low = _cnot_target_first(n)
    return _concat((low, _cnot_target_second(n), low))


def _cphase_first2(theta: float, n: int) -> Fragment:
    # diag(1, 1, 1, e^{iθ}) = e^{iθ/4} e^{-iθ/4 Z1} e^{-iθ/4 Z2} e^{iθ/4 Z1 Z2}
    quarter = wrap_angle(theta) / 4
    to_second, back = route_to_front(2, n)
    parity = _cnot_target_first(n)
    return _concat(
        (
            Fragment((phase(-quarter),), -quarter),
            to_second,
            Fragment((phase(-quarter),)),
            back,
            parity,
            Fragment((phase(quarter),)),
            parity,
        )
    )


class SwapResidual(msgspec.Struct, frozen=True):
    """Pauli correction left by a swap word: ``SWAP† · M = e^{iφ} P``."""

    label: str
    phase: float
    literal: bool


_PAULIS: dict[str, npt.NDArray[np.complex128]] = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.diag([1, -1]).astype(np.complex128),
}

_SWAP4 = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
)


def swap_recipe_residual(n: int = 2, *, literal: bool = True) -> SwapResidual:
    """Brute-force the swap word on ``n`` qubits and name its residual.

    The label lists the Pauli on qubit 1 then qubit 2; ``"II"`` means the word
    is the swap up to the reported global phase. A residual that is not a
    Pauli product is labelled ``"other"``.
    """
    word = compile_swap_first2(n, literal=literal)
    d = mode_count(n)
    rest = np.eye(d // 4, dtype=np.complex128)
    residual = np.kron(rest, _SWAP4).conj().T @ program_unitary(word.to_program(n))
    for first, p1 in _PAULIS.items():
        for second, p2 in _PAULIS.items():
            pauli = np.kron(rest, np.kron(p2, p1))
            overlap = complex(np.trace(pauli.conj().T @ residual)) / d
            if abs(abs(overlap) - 1) <= 1e-9:
                return SwapResidual(
                    first + second, wrap_angle(cmath.phase(overlap)), literal
                )
    return SwapResidual("other", 0.0, literal)


# -------------------- Two-qubit gates --------------------


def _inverse_block(block: Fragment, n: int) -> Fragment:
    inverse = inverse_program(block.to_program(n))
    return Fragment(inverse.ops, -block.phase)


def _pair_routing(a: int, b: int, n: int, *, literal: bool) -> list[Fragment]:
    blocks = [_cperms((2 - b) % n)]
    if b - a > 1:
        swap = compile_swap_first2(n, literal=literal)
        for _ in range(b - a - 1):
            blocks.extend((swap, _cperms(1)))
    return [block for block in blocks if block.ops]


def _first2_kernel(
    gate: Cnot | CzStd | CPhase | Swap, low: int, n: int, *, literal: bool
) -> Fragment:
    match gate:
        case Cnot(target=target):
            if target == low:
                return _cnot_target_first(n)
            return _cnot_target_second(n)
        case CzStd():
            return synth_std_cz_first2(n)
        case CPhase(theta=theta):
            return _cphase_first2(theta, n)
        case Swap():
            return compile_swap_first2(n, literal=literal)


def compile_2q(
    gate: Cnot | CzStd | CPhase | Swap, n: int, *, literal_swap: bool = False
) -> Fragment:
    """Lower a two-qubit gate on any pair of qubits.

    For the pair ``a < b`` the register is rotated so that ``b`` sits at
    position 2, then ``b - a - 1`` rounds of (swap positions 1 and 2, rotate
    once) walk ``a`` to position 1 while ``b`` stays at 2. The gate runs on
    the first two positions and every routing block is undone through
    :func:`~oamqc.elementary.inverse_program`.

    This departs from the usual placement of moving the lower qubit to
    position 1 and bubbling the other one down to position 2: here ``b`` is
    parked first and ``a`` is walked forward. The rotation always runs in the
    single direction ``CPERM`` provides. No cheaper direction is
    searched for, so the routing of a pair depends only on ``(a, b, n)``.

    Raises
    ------
    InvalidOperationError
        If ``n < 2``.
    InvalidInputError
        If the operands coincide or fall out of range.

    """
    _require_pair_register(n)
    first, second = gate.qubits
    _check_qubit(first, n)
    _check_qubit(second, n)
    if first == second:
        msg = f"two-qubit gate needs distinct qubits, got {first} twice"
        raise InvalidInputError(msg)
    if isinstance(gate, CPhase) and abs(wrap_angle(gate.theta)) <= ANGLE_ATOL:
        return Fragment()
    low, high = sorted((first, second))
    route = _pair_routing(low, high, n, literal=literal_swap)
    kernel = _first2_kernel(gate, low, n, literal=literal_swap)
    unroute = [_inverse_block(block, n) for block in reversed(route)]
    return _concat((*route, kernel, *unroute))


def compile_gate(gate: Gate, n: int, *, literal_swap: bool = False) -> Fragment:
    """Lower any circuit gate on an ``n``-qubit register."""
    if isinstance(gate, OneQubit):
        return compile_1q(gate.unitary, gate.target, n)
    return compile_2q(gate, n, literal_swap=literal_swap)


# -------------------- Optimizer --------------------


def optimize(prog: ElementaryProgram) -> ElementaryProgram:
    """Return ``prog`` with local cancellations applied in one stack pass.

    Adjacent ``PHASE`` operations merge (angles summed and wrapped), phases
    within 1e-12 of zero vanish, adjacent ``HAD`` or ``CZ4`` pairs cancel and
    runs of ``n`` cyclic permutations disappear. The operator is preserved
    exactly, the op count never grows and the pass is idempotent.
    """
    n = prog.n
    stack: list[ElementaryOp] = []
    for op in prog.ops:
        match op.kind:
            case OpKind.PHASE:
                theta = typ.cast("float", op.theta)
                if stack and stack[-1].kind is OpKind.PHASE:
                    theta += typ.cast("float", stack.pop().theta)
                stack.extend(_phase_ops(theta))
            case OpKind.HAD | OpKind.CZ4:
                if stack and stack[-1] == op:
                    stack.pop()
                else:
                    stack.append(op)
            case OpKind.CPERM:
                if n == 1:
                    continue
                stack.append(op)
                tail = stack[-n:]
                if len(tail) == n and all(o.kind is OpKind.CPERM for o in tail):
                    del stack[-n:]
    return ElementaryProgram(n, tuple(stack))


# -------------------- Whole circuits --------------------


@dc.dataclass(frozen=True, slots=True)
class CompileOptions:
    """Switches for :func:`compile_circuit`.

    ``logger`` receives one line per lowered gate; the CLI passes its verbose
    ``log`` helper.
    """

    optimize: bool = True
    literal_swap: bool = False
    logger: Logger | None = None


class GateCost(msgspec.Struct, frozen=True):
    """Lowering cost of one source gate."""

    index: int
    gate: str
    qubits: list[int]
    ops: int
    phase: float


class CompileStats(msgspec.Struct, frozen=True):
    """Tallies of a compiled program; ``totals`` match the emitted ops."""

    n: int
    totals: dict[str, int]
    total_ops: int
    unoptimized_ops: int
    global_phase: float
    optimized: bool
    literal_swap: bool
    per_gate_costs: list[GateCost]


def _tally(ops: typ.Iterable[ElementaryOp]) -> dict[str, int]:
    totals = {str(kind): 0 for kind in OpKind}
    for op in ops:
        totals[op.kind] += 1
    return totals


def _gate_name(gate: Gate) -> str:
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


def compile_circuit(
    circ: Circuit, options: CompileOptions | None = None
) -> tuple[ElementaryProgram, CompileStats]:
    """Compile ``circ`` into an elementary program.

    Running the program equals ``e^{i·global_phase}`` times running the
    circuit, amplitude by amplitude.

    Raises
    ------
    CircuitValidationError
        If the circuit fails validation.
    ResourceLimitError
        If the circuit has more than 16 qubits.

    """
    opts = options or CompileOptions()
    ensure_valid(circ)
    check_qubit_count(circ.n, limit=MAX_COMPILE_QUBITS)
    fragments: list[Fragment] = []
    costs: list[GateCost] = []
    for index, gate in enumerate(circ.gates, start=1):
        fragment = compile_gate(gate, circ.n, literal_swap=opts.literal_swap)
        name = _gate_name(gate)
        if opts.logger is not None:
            qubits = ",".join(str(q) for q in gate.qubits)
            opts.logger(f"gate {index} {name}({qubits}): {len(fragment)} ops")
        fragments.append(fragment)
        costs.append(
            GateCost(
                index=index,
                gate=name,
                qubits=list(gate.qubits),
                ops=len(fragment),
                phase=wrap_angle(fragment.phase),
            )
        )
    combined = _concat(fragments)
    program = combined.to_program(circ.n)
    if opts.optimize:
        program = optimize(program)
        if opts.logger is not None:
            opts.logger(f"optimizer: {len(combined)} -> {len(program)} ops")
    stats = CompileStats(
        n=circ.n,
        totals=_tally(program.ops),
        total_ops=len(program),
        unoptimized_ops=len(combined),
        global_phase=wrap_angle(combined.phase),
        optimized=opts.optimize,
        literal_swap=opts.literal_swap,
        per_gate_costs=costs,
    )
    return program, stats
