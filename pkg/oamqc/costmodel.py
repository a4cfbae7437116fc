"""Operation tallies, optical bill of materials and scaling reports.

Per-operation component counts are configuration. The defaults below are
estimates read off the optical schematics (phase plates, parity-sorting OAM
beam splitters, Dove prisms, mode sorters and the mode-doubling step); they
are not normative and can be replaced with a table file.
"""

from __future__ import annotations

import dataclasses as dc
import math
import typing as typ

import msgspec
import numpy as np

from .circuits import qft_circuit
from .compiler import CompileOptions, compile_circuit
from .core import (
    MAX_COMPILE_QUBITS,
    CPhase,
    Circuit,
    Cnot,
    CzStd,
    ElementaryProgram,
    Gate,
    InvalidInputError,
    OpKind,
    Swap,
    check_qubit_count,
    named_gate,
)
from .formats import FormatError

if typ.TYPE_CHECKING:
    import collections.abc as cabc
    from pathlib import Path

__all__ = [
    "COMPONENT_NAMES",
    "DEFAULT_COMPONENT_TABLE",
    "EXPONENT_FLOORS",
    "EXPONENT_LIMITS",
    "MIN_SCALING_POINTS",
    "SCALING_KINDS",
    "ComponentTable",
    "CostReport",
    "MissingComponentError",
    "ScalingFit",
    "ScalingSample",
    "cost_report",
    "count_ops",
    "default_component_table",
    "load_component_table",
    "optical_bill_of_materials",
    "parse_component_table",
    "scaling_report",
]

COMPONENT_NAMES = (
    "phase_plate",
    "oam_bs",
    "bs",
    "dove_prism",
    "mode_sorter",
    "mode_sorter_reversed",
    "double_transformation",
)

DEFAULT_COMPONENT_TABLE = """\
# Non-normative estimates; replace with a measured table where available.
# op_kind component count
PHASE phase_plate 2
PHASE oam_bs 2
HAD oam_bs 2
HAD bs 1
CPERM double_transformation 1
CPERM mode_sorter 1
CPERM mode_sorter_reversed 1
CZ4 oam_bs 2
CZ4 dove_prism 2
"""


class MissingComponentError(KeyError):
    """Raised when a component table has no row for an op kind in use."""

    def __init__(self, kind: OpKind) -> None:
        self.kind = kind
        super().__init__(kind)

    def __str__(self) -> str:
        """Return a readable message instead of the quoted key."""
        return f"component table has no entry for {self.kind}"


def count_ops(prog: ElementaryProgram) -> dict[str, int]:
    """Return exact per-kind tallies, including zero counts."""
    totals = {str(kind): 0 for kind in OpKind}
    for op in prog.ops:
        totals[op.kind] += 1
    return totals


# -------------------- Component tables --------------------


@dc.dataclass(frozen=True, slots=True)
class ComponentTable:
    """Optical components needed per elementary operation."""

    rows: cabc.Mapping[OpKind, cabc.Mapping[str, int]]

    def row(self, kind: OpKind) -> cabc.Mapping[str, int]:
        """Return the components of ``kind``.

        Raises
        ------
        MissingComponentError
            If the table has no entry for ``kind``.

        """
        try:
            return self.rows[kind]
        except KeyError:
            raise MissingComponentError(kind) from None


def parse_component_table(text: str) -> ComponentTable:
    """Parse ``<op_kind> <component> <count>`` lines; ``#`` starts a comment.

    Raises
    ------
    FormatError
        On an unknown op kind or component, or a negative or non-integer count.

    """
    rows: dict[OpKind, dict[str, int]] = {}
    for line, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        if len(fields) != 3:
            msg = "expected `<op_kind> <component> <count>`"
            raise FormatError(msg, line=line)
        kind_text, component, count_text = fields
        try:
            kind = OpKind(kind_text.upper())
        except ValueError:
            msg = f"unknown op kind {kind_text!r}"
            raise FormatError(msg, line=line) from None
        if component not in COMPONENT_NAMES:
            msg = f"unknown component {component!r}"
            raise FormatError(msg, line=line)
        if not count_text.isdigit():
            msg = f"count must be a non-negative integer, got {count_text!r}"
            raise FormatError(msg, line=line)
        row = rows.setdefault(kind, {})
        row[component] = row.get(component, 0) + int(count_text)
    return ComponentTable(rows)


def default_component_table() -> ComponentTable:
    """Return the built-in estimates."""
    return parse_component_table(DEFAULT_COMPONENT_TABLE)


def load_component_table(path: Path) -> ComponentTable:
    """Read a component table file.

    Raises
    ------
    InvalidInputError
        If the file cannot be read as UTF-8 text.
    FormatError
        If a row is malformed.

    """
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        msg = f"cannot read component table {path}: {exc}"
        raise InvalidInputError(msg) from exc
    return parse_component_table(text)


def optical_bill_of_materials(
    prog: ElementaryProgram, table: ComponentTable
) -> dict[str, int]:
    """Return the summed components of every op in ``prog``, sorted by name."""
    bill: dict[str, int] = {}
    for kind, count in count_ops(prog).items():
        if not count:
            continue
        for component, per_op in table.row(OpKind(kind)).items():
            bill[component] = bill.get(component, 0) + per_op * count
    return {name: bill[name] for name in sorted(bill) if bill[name]}


# -------------------- Reports --------------------


class ScalingSample(msgspec.Struct, frozen=True):
    """Op counts of the representative gate at one register size."""

    n: int
    ops: int
    front_ops: int
    overhead: int


class ScalingFit(msgspec.Struct, frozen=True):
    """Log-log least-squares fit of cost against qubit count."""

    kind: str
    exponent: float
    raw_exponent: float
    residual: float
    limit: float
    floor: float
    within_limit: bool
    fitted_on: str


class CostReport(msgspec.Struct, frozen=True):
    """Totals and bill of materials, plus scaling data for scaling runs."""

    n: int
    totals: dict[str, int]
    total_ops: int
    bill_of_materials: dict[str, int]
    samples: list[ScalingSample] = msgspec.field(default_factory=list)
    fit: ScalingFit | None = None


def cost_report(
    prog: ElementaryProgram, table: ComponentTable | None = None
) -> CostReport:
    """Return totals and the bill of materials of ``prog``."""
    totals = count_ops(prog)
    bill = optical_bill_of_materials(prog, table or default_component_table())
    return CostReport(prog.n, totals, len(prog), bill)


_ONE_QUBIT_KINDS = ("h-front", "h-mid")
_TWO_QUBIT_KINDS = ("cnot-far", "cz-far", "cphase-far", "swap-far")
SCALING_KINDS = (*_ONE_QUBIT_KINDS, *_TWO_QUBIT_KINDS, "qft")
EXPONENT_LIMITS = {
    **dict.fromkeys(_ONE_QUBIT_KINDS, 1.2),
    **dict.fromkeys(_TWO_QUBIT_KINDS, 2.2),
    "qft": 4.0,
}
EXPONENT_FLOORS = {
    "h-front": 0.0,
    "h-mid": 0.8,
    **dict.fromkeys(_TWO_QUBIT_KINDS, 1.5),
    "qft": 0.0,
}
MIN_SCALING_POINTS = 4

_PAIR_GATES: dict[str, typ.Callable[[int, int], Gate]] = {
    "cnot-far": Cnot,
    "cz-far": CzStd,
    "cphase-far": lambda a, b: CPhase(math.pi / 3, a, b),
    "swap-far": Swap,
}


def _representative(kind: str, n: int) -> tuple[Circuit, Circuit | None]:
    """Return the measured circuit and its front-placed reference."""
    if kind == "qft":
        return qft_circuit(n), None
    if kind in _ONE_QUBIT_KINDS:
        target = 1 if kind == "h-front" else math.ceil(n / 2)
        front = Circuit(n, (named_gate("h", 1),))
        return Circuit(n, (named_gate("h", target),)), front
    make = _PAIR_GATES[kind]
    return Circuit(n, (make(1, n),)), Circuit(n, (make(1, 2),))


def _slope(ns: cabc.Sequence[int], values: cabc.Sequence[int]) -> tuple[float, float]:
    x = np.log(np.asarray(ns, dtype=np.float64))
    y = np.log(np.asarray(values, dtype=np.float64))
    coefficients, residuals, *_ = np.polyfit(x, y, 1, full=True)
    residual = math.sqrt(float(residuals[0]) / len(ns)) if len(residuals) else 0.0
    return float(coefficients[0]), residual


def _fit(kind: str, samples: list[ScalingSample]) -> ScalingFit:
    ns = [s.n for s in samples]
    raw = [s.ops for s in samples]
    overhead = [s.overhead for s in samples]
    limit = EXPONENT_LIMITS[kind]
    floor = EXPONENT_FLOORS[kind]
    raw_exponent, raw_residual = _slope(ns, raw) if all(raw) else (0.0, 0.0)
    if kind == "qft" or (any(overhead) and not all(overhead)):
        exponent, residual, fitted_on = raw_exponent, raw_residual, "ops"
    elif not any(overhead):
        exponent, residual, fitted_on = 0.0, 0.0, "overhead"
    else:
        exponent, residual = _slope(ns, overhead)
        fitted_on = "overhead"
    return ScalingFit(
        kind=kind,
        exponent=exponent,
        raw_exponent=raw_exponent,
        residual=residual,
        limit=limit,
        floor=floor,
        within_limit=floor <= exponent <= limit,
        fitted_on=fitted_on,
    )


def scaling_report(
    kind: str,
    n_range: tuple[int, int] = (4, MAX_COMPILE_QUBITS),
    *,
    options: CompileOptions | None = None,
    table: ComponentTable | None = None,
) -> CostReport:
    """Compile a representative gate for each ``n`` and fit the growth exponent.

    Gate kinds place the gate worst-case (qubit ``⌈n/2⌉`` or the pair
    ``(1, n)``) and fit the routing overhead, the count minus the same gate
    compiled on the front positions; ``qft`` fits whole-circuit counts. When
    the overhead is zero for some sizes and not others the raw counts are
    fitted instead. Totals and bill of materials describe the largest ``n``.

    Raises
    ------
    InvalidInputError
        For an unknown kind, fewer than four sizes or a two-qubit kind with
        ``n < 2``.
    ResourceLimitError
        If the range exceeds 16 qubits.

    """
    if kind not in SCALING_KINDS:
        expected = ", ".join(SCALING_KINDS)
        msg = f"unknown scaling kind {kind!r}; expected one of {expected}"
        raise InvalidInputError(msg)
    n_min, n_max = n_range
    check_qubit_count(n_min)
    check_qubit_count(n_max, limit=MAX_COMPILE_QUBITS)
    if n_max - n_min + 1 < MIN_SCALING_POINTS:
        msg = (
            f"need at least {MIN_SCALING_POINTS} sizes to fit, "
            f"got {n_min}..{n_max}"
        )
        raise InvalidInputError(msg)
    if kind in _TWO_QUBIT_KINDS and n_min < 2:
        msg = f"{kind} needs n >= 2"
        raise InvalidInputError(msg)
    opts = options or CompileOptions()
    samples: list[ScalingSample] = []
    program: ElementaryProgram | None = None
    for n in range(n_min, n_max + 1):
        measured, front = _representative(kind, n)
        program, _ = compile_circuit(measured, opts)
        front_ops = len(compile_circuit(front, opts)[0]) if front else 0
        overhead = len(program) - front_ops if front else len(program)
        samples.append(ScalingSample(n, len(program), front_ops, overhead))
    report = cost_report(typ.cast("ElementaryProgram", program), table)
    return CostReport(
        n=report.n,
        totals=report.totals,
        total_ops=report.total_ops,
        bill_of_materials=report.bill_of_materials,
        samples=samples,
        fit=_fit(kind, samples),
    )
