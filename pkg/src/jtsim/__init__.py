"""Ground-state entanglement of the two-mode Jahn-Teller circuit model."""

from ._version import __version__
from .entanglement import (
    DensityMatrix,
    EntanglementReport,
    NumericalIntegrityError,
    density_from_state,
    log_negativity,
    partial_trace,
    partial_transpose,
    report,
    report_from_state,
    trace_norm,
)
from .groundstate import (
    ConvergenceRow,
    GroundStateResult,
    convergence_study,
    eig_hermitian,
    ground_state,
    successive_differences,
)
from .hilbert import (
    OperatorMatrix,
    StateVector,
    annihilation,
    creation,
    embed,
    identity,
    mode_parity,
    number,
    parity_operator,
    pauli,
)
from .model import (
    DegenerateTransformationError,
    PrivilegedParams,
    SystemParams,
    ValidityReport,
    build_lab_hamiltonian,
    build_single_mode_jt,
    build_transformed_hamiltonian,
    mode_rotation_unitary,
    privileged_params,
    privileged_validity,
)
from .sweeps import (
    BasisDivergence,
    SweepResult,
    SweepRow,
    SweepSpec,
    compare_bases,
    figure_sweep,
    grid_points,
    run_point,
    run_sweep,
    write_csv,
    write_manifest,
)

__all__ = [
    "__version__",
    "OperatorMatrix",
    "StateVector",
    "annihilation",
    "creation",
    "number",
    "pauli",
    "identity",
    "embed",
    "mode_parity",
    "parity_operator",
    "SystemParams",
    "PrivilegedParams",
    "ValidityReport",
    "DegenerateTransformationError",
    "privileged_params",
    "privileged_validity",
    "build_lab_hamiltonian",
    "build_transformed_hamiltonian",
    "build_single_mode_jt",
    "mode_rotation_unitary",
    "GroundStateResult",
    "ConvergenceRow",
    "eig_hermitian",
    "ground_state",
    "convergence_study",
    "successive_differences",
    "DensityMatrix",
    "EntanglementReport",
    "NumericalIntegrityError",
    "density_from_state",
    "partial_trace",
    "partial_transpose",
    "trace_norm",
    "log_negativity",
    "report",
    "report_from_state",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "BasisDivergence",
    "figure_sweep",
    "grid_points",
    "run_point",
    "run_sweep",
    "compare_bases",
    "write_csv",
    "write_manifest",
]
