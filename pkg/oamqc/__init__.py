"""Public package surface for oamqc."""

from __future__ import annotations

from .circuits import GateSet, RandomSpec, ghz_circuit, qft_circuit, random_circuit
from .cli import VERBOSE, app, log, main, verify_circuit
from .compiler import (
    CompileOptions,
    CompileStats,
    EulerAngles,
    Fragment,
    compile_1q,
    compile_2q,
    compile_circuit,
    compile_swap_first2,
    euler_zxz,
    optimize,
    route_to_front,
    swap_recipe_residual,
    synth_std_cz_first2,
)
from .core import (
    CPhase,
    Circuit,
    CircuitValidationError,
    Cnot,
    CzStd,
    ElementaryOp,
    ElementaryProgram,
    InvalidInputError,
    InvalidOperationError,
    OamState,
    OneQubit,
    OpKind,
    ResourceLimitError,
    Swap,
    bits_of_mode,
    mode_of_bits,
    named_gate,
    unitary_gate,
    validate_circuit,
)
from .costmodel import (
    ComponentTable,
    CostReport,
    MissingComponentError,
    count_ops,
    optical_bill_of_materials,
    scaling_report,
)
from .elementary import (
    apply_cperm,
    apply_cz,
    apply_hadamard,
    apply_phase,
    apply_program,
    elementary_unitary,
)
from .formats import FormatError
from .oracle import apply_1q, apply_2q, dft_apply, fidelity, run_circuit

__all__ = (
    "VERBOSE",
    "CPhase",
    "Circuit",
    "CircuitValidationError",
    "Cnot",
    "CompileOptions",
    "CompileStats",
    "ComponentTable",
    "CostReport",
    "CzStd",
    "ElementaryOp",
    "ElementaryProgram",
    "EulerAngles",
    "FormatError",
    "Fragment",
    "GateSet",
    "InvalidInputError",
    "InvalidOperationError",
    "MissingComponentError",
    "OamState",
    "OneQubit",
    "OpKind",
    "RandomSpec",
    "ResourceLimitError",
    "Swap",
    "app",
    "apply_1q",
    "apply_2q",
    "apply_cperm",
    "apply_cz",
    "apply_hadamard",
    "apply_phase",
    "apply_program",
    "bits_of_mode",
    "compile_1q",
    "compile_2q",
    "compile_circuit",
    "compile_swap_first2",
    "count_ops",
    "dft_apply",
    "elementary_unitary",
    "euler_zxz",
    "fidelity",
    "ghz_circuit",
    "log",
    "main",
    "mode_of_bits",
    "named_gate",
    "optical_bill_of_materials",
    "optimize",
    "qft_circuit",
    "random_circuit",
    "route_to_front",
    "run_circuit",
    "scaling_report",
    "swap_recipe_residual",
    "synth_std_cz_first2",
    "unitary_gate",
    "validate_circuit",
    "verify_circuit",
)
