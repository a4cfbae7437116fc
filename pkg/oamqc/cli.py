"""Command line interface for compiling and simulating OAM circuits."""

from __future__ import annotations

import contextlib
import os
import sys
import time
import typing as typ
from pathlib import Path

import cyclopts
import msgspec
import msgspec.json as msjson
import numpy as np
from cyclopts import App, Parameter

from .circuits import GateSet, RandomSpec, ghz_circuit, qft_circuit, random_circuit
from .compiler import CompileOptions, CompileStats, compile_circuit
from .core import (
    MAX_SIMULATION_QUBITS,
    Circuit,
    ElementaryProgram,
    InvalidInputError,
    InvalidOperationError,
    OamState,
    ResourceLimitError,
    check_qubit_count,
    ensure_valid,
)
from .costmodel import (
    ComponentTable,
    CostReport,
    MissingComponentError,
    cost_report,
    default_component_table,
    parse_component_table,
    scaling_report,
)
from .elementary import apply_program
from .formats import (
    OpDocument,
    format_circuit,
    format_program,
    load_program,
    parse_circuit,
    parse_state,
)
from .oracle import fidelity, run_circuit
from .script_utils import (
    EXIT_INPUT_ERROR,
    EXIT_INTERNAL_ERROR,
    EXIT_VERIFY_FAILED,
    emit,
    read_input,
)

if typ.TYPE_CHECKING:
    import collections.abc as cabc

# -------------------- Configuration --------------------

VERBOSE = bool(os.environ.get("OAMQC_VERBOSE"))
DEFAULT_TOLERANCE = 1e-9
DEFAULT_THRESHOLD = 1e-12
DEFAULT_TRIALS = 20

app = App()
app.help = "oamqc: compile qubit circuits to single-photon OAM operations"
app.config = (cyclopts.config.Env("OAMQC_", command=False),)

CircuitArgument = typ.Annotated[
    Path, Parameter(help="Circuit text file (`-` reads standard input)")
]
ProgramArgument = typ.Annotated[
    Path, Parameter(help="Elementary program, as text or JSON (`-` for stdin)")
]
OutputOption = typ.Annotated[
    Path | None,
    Parameter(alias=["-o", "--output"], help="Write the result here, not stdout"),
]
JsonOption = typ.Annotated[
    bool,
    Parameter(
        name=["--json"],
        negative="",
        help="Emit a single JSON document instead of text",
    ),
]
OptimizeOption = typ.Annotated[
    bool, Parameter(help="Run the peephole optimizer over the compiled program")
]
LiteralSwapOption = typ.Annotated[
    bool,
    Parameter(
        negative="",
        help="Swap qubits with three raw CZ4 gates between Hadamard pairs",
    ),
]
TableOption = typ.Annotated[
    Path | None,
    Parameter(
        alias=["-t", "--table"],
        env_var="OAMQC_COMPONENT_TABLE",
        help="Component table file; defaults to built-in estimates",
    ),
]
ScalingKind = typ.Literal[
    "h-front", "h-mid", "cnot-far", "cz-far", "cphase-far", "swap-far", "qft"
]
GeneratorKind = typ.Literal["qft", "ghz", "random"]
GateSetName = typ.Literal["full", "clifford", "one-qubit"]


def _error(message: str) -> None:
    """Print ``message`` to stderr without additional formatting."""
    print(message, file=sys.stderr)


def log(msg: str) -> None:
    """Print ``msg`` to stderr with a timestamp when verbose mode is enabled."""
    if VERBOSE:
        ts = time.strftime("%H:%M:%S")
        print(f"[{ts}] {msg}", file=sys.stderr)


@contextlib.contextmanager
def _exit_codes() -> cabc.Iterator[None]:
    """Map library exceptions onto the exit-code contract."""
    try:
        yield
    except (
        InvalidInputError,
        InvalidOperationError,
        ResourceLimitError,
        MissingComponentError,
        msgspec.DecodeError,
    ) as exc:
        _error(f"error: {exc}")
        raise SystemExit(EXIT_INPUT_ERROR) from exc
    except Exception as exc:  # noqa: BLE001 - last-resort mapping to exit 3
        _error(f"internal error: {type(exc).__name__}: {exc}")
        raise SystemExit(EXIT_INTERNAL_ERROR) from exc


def _load_circuit(path: Path) -> Circuit:
    circ = ensure_valid(parse_circuit(read_input(path)))
    log(f"loaded {len(circ)} gates on {circ.n} qubits from {path}")
    return circ


class CompileDocument(msgspec.Struct, frozen=True):
    """Program JSON extended with compile statistics."""

    n: int
    ops: list[OpDocument]
    stats: CompileStats


class SimulationDocument(msgspec.Struct, frozen=True):
    """Full output state of a simulation."""

    n: int
    amplitudes: list[tuple[float, float]]
    probabilities: list[float]


class VerifyReport(msgspec.Struct, frozen=True):
    """Outcome of comparing a compiled program with the reference simulator."""

    passed: bool
    trials: int
    tolerance: float
    seed: int
    min_fidelity: float
    max_deviation: float
    total_ops: int
    global_phase: float
    skipped_op: int | None
    fidelities: list[float]


# -------------------- CLI commands --------------------


@app.command(name="compile")
def cmd_compile(  # noqa: PLR0913 - mirrors the documented flag set
    circuit: CircuitArgument,
    *,
    output: OutputOption = None,
    stats: typ.Annotated[
        Path | None, Parameter(help="Write compile statistics JSON here")
    ] = None,
    optimize: OptimizeOption = True,
    as_json: JsonOption = False,
    literal_swap: LiteralSwapOption = False,
) -> None:
    """Compile CIRCUIT into an elementary program."""
    with _exit_codes():
        circ = _load_circuit(circuit)
        options = CompileOptions(
            optimize=optimize, literal_swap=literal_swap, logger=log
        )
        program, compile_stats = compile_circuit(circ, options)
        log(
            f"compiled {len(circ)} gates into {compile_stats.total_ops} ops "
            f"(global phase {compile_stats.global_phase!r})"
        )
        if as_json:
            ops = [OpDocument(op.kind, op.theta) for op in program.ops]
            document = CompileDocument(program.n, ops, compile_stats)
            emit(msjson.encode(document).decode(), output)
        else:
            emit(format_program(program), output)
        if stats is not None:
            emit(msjson.encode(compile_stats).decode(), stats)


def _initial_state(n: int, mode: int, state: Path | None) -> OamState:
    if state is None:
        return OamState.basis(n, mode)
    initial = parse_state(read_input(state))
    if initial.n != n:
        msg = f"state file holds {initial.n} qubits but the program acts on {n}"
        raise InvalidInputError(msg)
    return initial


@app.command(name="simulate")
def cmd_simulate(
    program: ProgramArgument,
    *,
    mode: typ.Annotated[
        int, Parameter(alias=["-m", "--mode"], help="Initial basis mode")
    ] = 0,
    state: typ.Annotated[
        Path | None,
        Parameter(help="Initial state file (`re im` per line); overrides --mode"),
    ] = None,
    threshold: typ.Annotated[
        float, Parameter(help="Hide modes with probability below this value")
    ] = DEFAULT_THRESHOLD,
    as_json: JsonOption = False,
) -> None:
    """Run PROGRAM on one photon and list the populated modes."""
    with _exit_codes():
        prog = load_program(read_input(program))
        check_qubit_count(prog.n, limit=MAX_SIMULATION_QUBITS)
        result = apply_program(_initial_state(prog.n, mode, state), prog)
        log(f"applied {len(prog)} ops; norm {result.norm()!r}")
        probabilities = result.probabilities()
        if as_json:
            amplitudes = [(a.real, a.imag) for a in result.amp.tolist()]
            document = SimulationDocument(
                result.n, amplitudes, probabilities.tolist()
            )
            emit(msjson.encode(document).decode())
            return
        lines = ["# mode probability re im"]
        for m in np.flatnonzero(probabilities >= threshold).tolist():
            amp = complex(result.amp[m])
            lines.append(f"{m} {float(probabilities[m])!r} {amp.real!r} {amp.imag!r}")
        emit("\n".join(lines))


def _drop_op(prog: ElementaryProgram, index: int) -> ElementaryProgram:
    if not 1 <= index <= len(prog):
        msg = f"--skip-op {index} out of range [1, {len(prog)}]"
        raise InvalidInputError(msg)
    ops = prog.ops[: index - 1] + prog.ops[index:]
    return ElementaryProgram(prog.n, ops)


def verify_circuit(  # noqa: PLR0913 - one knob per verify flag
    circ: Circuit,
    *,
    trials: int = DEFAULT_TRIALS,
    tolerance: float = DEFAULT_TOLERANCE,
    seed: int = 0,
    skip_op: int | None = None,
    options: CompileOptions | None = None,
) -> VerifyReport:
    """Compare the compiled program with the reference simulator.

    Each trial draws a random normalized state from ``default_rng(seed)``,
    runs both paths and records the fidelity and the largest amplitude
    deviation once the tracked global phase is removed.
    """
    check_qubit_count(circ.n, limit=MAX_SIMULATION_QUBITS)
    if trials < 1:
        msg = f"trials must be positive, got {trials}"
        raise InvalidInputError(msg)
    program, stats = compile_circuit(circ, options)
    if skip_op is not None:
        program = _drop_op(program, skip_op)
    rotation = np.exp(1j * stats.global_phase)
    rng = np.random.default_rng(seed)
    fidelities: list[float] = []
    deviation = 0.0
    for _ in range(trials):
        initial = OamState.random(circ.n, rng)
        compiled = apply_program(initial.copy(), program)
        reference = run_circuit(initial.copy(), circ)
        fidelities.append(fidelity(compiled, reference))
        gap = np.max(np.abs(compiled.amp - rotation * reference.amp))
        deviation = max(deviation, float(gap))
    worst = min(fidelities)
    return VerifyReport(
        passed=worst >= 1 - tolerance,
        trials=trials,
        tolerance=tolerance,
        seed=seed,
        min_fidelity=worst,
        max_deviation=deviation,
        total_ops=len(program),
        global_phase=stats.global_phase,
        skipped_op=skip_op,
        fidelities=fidelities,
    )


@app.command(name="verify")
def cmd_verify(  # noqa: PLR0913 - mirrors the documented flag set
    circuit: CircuitArgument,
    *,
    trials: typ.Annotated[int, Parameter(help="Random input states")] = DEFAULT_TRIALS,
    tolerance: typ.Annotated[
        float, Parameter(help="Pass when min fidelity >= 1 - tolerance")
    ] = DEFAULT_TOLERANCE,
    seed: typ.Annotated[int, Parameter(help="Seed for the input states")] = 0,
    skip_op: typ.Annotated[
        int | None, Parameter(help="Drop op K (1-based) as a negative control")
    ] = None,
    optimize: OptimizeOption = True,
    literal_swap: LiteralSwapOption = False,
    as_json: JsonOption = False,
) -> None:
    """Check that the compiled CIRCUIT matches the reference simulator."""
    with _exit_codes():
        options = CompileOptions(
            optimize=optimize, literal_swap=literal_swap, logger=log
        )
        report = verify_circuit(
            _load_circuit(circuit),
            trials=trials,
            tolerance=tolerance,
            seed=seed,
            skip_op=skip_op,
            options=options,
        )
        if as_json:
            emit(msjson.encode(report).decode())
        else:
            verdict = "PASS" if report.passed else "FAIL"
            emit(
                f"{verdict} min fidelity {report.min_fidelity!r} "
                f"max deviation {report.max_deviation!r} "
                f"({report.trials} trials, tolerance {report.tolerance!r})"
            )
        if not report.passed:
            raise SystemExit(EXIT_VERIFY_FAILED)


@app.command(name="generate")
def cmd_generate(  # noqa: PLR0913 - mirrors the documented flag set
    kind: typ.Annotated[GeneratorKind, Parameter(help="Circuit family")],
    *,
    n: typ.Annotated[int, Parameter(alias=["-n", "--n"], help="Qubit count")],
    depth: typ.Annotated[int, Parameter(help="Gate count for random")] = 10,
    seed: typ.Annotated[int, Parameter(help="Seed for random")] = 0,
    gate_set: typ.Annotated[
        GateSetName, Parameter(help="Gate vocabulary for random")
    ] = "full",
    output: OutputOption = None,
) -> None:
    """Write a built-in circuit in circuit text."""
    with _exit_codes():
        match kind:
            case "qft":
                circ = qft_circuit(n)
            case "ghz":
                circ = ghz_circuit(n)
            case _:
                spec = RandomSpec(n, depth, seed, GateSet(gate_set))
                circ = random_circuit(spec)
        log(f"generated {kind} circuit with {len(circ)} gates")
        emit(format_circuit(circ), output)


def _first_keyword(text: str) -> str:
    for raw in text.splitlines():
        if fields := raw.split("#", 1)[0].split():
            return fields[0].lower()
    return ""


def _load_source(source: Path, options: CompileOptions) -> ElementaryProgram:
    """Compile a circuit file or read a program file, whichever ``source`` is."""
    text = read_input(source)
    if _first_keyword(text) == "qubits":
        program, _ = compile_circuit(ensure_valid(parse_circuit(text)), options)
        return program
    return load_program(text)


def _format_report(report: CostReport) -> str:
    lines = [f"n {report.n}", f"total {report.total_ops}"]
    lines.extend(f"{kind} {count}" for kind, count in report.totals.items())
    lines.append("# bill of materials (non-normative estimates)")
    lines.extend(f"{name} {count}" for name, count in report.bill_of_materials.items())
    if report.fit is not None:
        fit = report.fit
        lines.append(f"# scaling {fit.kind}: n ops front_ops overhead")
        lines.extend(
            f"{s.n} {s.ops} {s.front_ops} {s.overhead}" for s in report.samples
        )
        status = "within" if fit.within_limit else "outside"
        lines.append(
            f"exponent {fit.exponent!r} on {fit.fitted_on} "
            f"(raw {fit.raw_exponent!r}, residual {fit.residual!r}, "
            f"{status} limit {fit.limit!r}, floor {fit.floor!r})"
        )
    return "\n".join(lines)


@app.command(name="cost")
def cmd_cost(  # noqa: PLR0913 - mirrors the documented flag set
    source: typ.Annotated[
        Path | None,
        Parameter(help="Circuit or elementary program; omit with --scaling"),
    ] = None,
    *,
    table: TableOption = None,
    scaling: typ.Annotated[
        ScalingKind | None, Parameter(help="Fit op-count growth for a gate kind")
    ] = None,
    n_min: typ.Annotated[int, Parameter(help="Smallest n for --scaling")] = 4,
    n_max: typ.Annotated[int, Parameter(help="Largest n for --scaling")] = 16,
    optimize: OptimizeOption = True,
    literal_swap: LiteralSwapOption = False,
    as_json: JsonOption = False,
) -> None:
    """Report op totals, optical components and scaling fits."""
    with _exit_codes():
        options = CompileOptions(optimize=optimize, literal_swap=literal_swap)
        components: ComponentTable = (
            parse_component_table(read_input(table))
            if table
            else default_component_table()
        )
        if scaling is not None:
            report = scaling_report(
                scaling, (n_min, n_max), options=options, table=components
            )
        elif source is not None:
            report = cost_report(_load_source(source, options), components)
        else:
            msg = "cost needs a SOURCE file or --scaling KIND"
            raise InvalidInputError(msg)
        emit(msjson.encode(report).decode() if as_json else _format_report(report))
        if report.fit is not None and not report.fit.within_limit:
            raise SystemExit(EXIT_VERIFY_FAILED)


def main(argv: typ.Sequence[str] | None = None) -> None:
    """Invoke the Cyclopts CLI entry point.

    Argument errors are reported on stderr and exit with the input-error code.
    """
    if argv is None:
        argv = sys.argv[1:]
    try:
        app(list(argv), exit_on_error=False, print_error=False)
    except cyclopts.CycloptsError as exc:
        _error(f"error: {exc}")
        raise SystemExit(EXIT_INPUT_ERROR) from exc


__all__ = (
    "DEFAULT_THRESHOLD",
    "DEFAULT_TOLERANCE",
    "DEFAULT_TRIALS",
    "VERBOSE",
    "CompileDocument",
    "SimulationDocument",
    "VerifyReport",
    "app",
    "cmd_compile",
    "cmd_cost",
    "cmd_generate",
    "cmd_simulate",
    "cmd_verify",
    "log",
    "main",
    "verify_circuit",
)
