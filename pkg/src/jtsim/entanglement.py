"""Reduced density matrices, partial transpose and logarithmic negativity.

The negativity of a bipartition A|B of a state rho is

    E_N = log2 || rho^(T_A) ||_1

with the trace norm taken as the sum of absolute eigenvalues of the
partially transposed matrix.  Values within NEG_CLAMP below zero are
floating-point noise and clamp to 0; anything more negative indicates a
pipeline bug and raises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groundstate import ground_state
from .hilbert import StateVector
from .model import SystemParams

NEG_CLAMP = 1e-9

_REPORT_FIELDS = ("en_s_b1b2", "en_s_b1", "en_s_b2", "en_b1_b2")


class NumericalIntegrityError(RuntimeError):
    """A computed negativity fell below zero by more than float noise."""


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray
    factor_dims: tuple[int, ...]

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "factor_dims", tuple(int(d) for d in self.factor_dims))
        dim = math.prod(self.factor_dims)
        if m.shape != (dim, dim):
            raise ValueError(
                f"entries shape {m.shape} does not match factor_dims {self.factor_dims}"
            )
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > 1e-10:
            raise ValueError(f"density matrix trace is {np.trace(m):.12g}, not 1")

    @property
    def dim_total(self) -> int:
        return math.prod(self.factor_dims)


@dataclass(frozen=True)
class EntanglementReport:
    """The four ground-state negativities of one parameter point (bits)."""

    en_s_b1b2: float
    en_s_b1: float
    en_s_b2: float
    en_b1_b2: float
    degeneracy_caveat: bool = False

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in _REPORT_FIELDS}


def density_from_state(psi: StateVector) -> DensityMatrix:
    """Pure-state projector |psi><psi|."""
    amps = psi.amplitudes
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state vector norm is {norm:.12g}, not 1")
    return DensityMatrix(np.outer(amps, amps.conj()), psi.factor_dims)


def _normalize_factors(indices, n_factors: int) -> tuple[int, ...]:
    if isinstance(indices, (int, np.integer)):
        indices = (int(indices),)
    idx = sorted({int(i) for i in indices})
    if any(i < 0 or i >= n_factors for i in idx):
        raise ValueError(f"factor indices {idx} out of range for {n_factors} factors")
    return tuple(idx)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out every factor not listed in ``keep`` (kept order preserved)."""
    dims = rho.factor_dims
    k = len(dims)
    keep_idx = _normalize_factors(keep, k)
    if not keep_idx:
        raise ValueError("keep must name at least one factor")
    if len(keep_idx) == k:
        return DensityMatrix(rho.entries.copy(), dims)

    t = rho.entries.reshape(dims + dims)
    n_row = k
    for i in sorted(set(range(k)) - set(keep_idx), reverse=True):
        t = np.trace(t, axis1=i, axis2=n_row + i)
        n_row -= 1
    kept_dims = tuple(dims[i] for i in keep_idx)
    d = math.prod(kept_dims)
    return DensityMatrix(t.reshape(d, d), kept_dims)


def partial_transpose(rho: DensityMatrix, transpose) -> np.ndarray:
    """Transpose the row/column indices of the selected factors only.

    Returns a plain Hermitian matrix: the result keeps trace 1 but may
    have negative eigenvalues, which is exactly what the negativity probes.
    """
    dims = rho.factor_dims
    k = len(dims)
    idx = _normalize_factors(transpose, k)
    if not idx:
        raise ValueError("transpose must name at least one factor")
    t = rho.entries.reshape(dims + dims)
    axes = list(range(2 * k))
    for i in idx:
        axes[i], axes[k + i] = axes[k + i], axes[i]
    d = math.prod(dims)
    return np.transpose(t, axes).reshape(d, d)


def trace_norm(m: np.ndarray) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    m = np.asarray(m)
    if np.max(np.abs(m - m.conj().T)) > 1e-10:
        raise ValueError("trace_norm requires a Hermitian matrix")
    return float(np.sum(np.abs(np.linalg.eigvalsh(m))))


def log_negativity(rho: DensityMatrix, transpose) -> float:
    """log2 trace norm of the partial transpose over ``transpose``.

    ``transpose`` must be a nonempty proper subset of the factors, i.e. it
    bipartitions the state together with its complement.
    """
    idx = _normalize_factors(transpose, len(rho.factor_dims))
    if not idx or len(idx) == len(rho.factor_dims):
        raise ValueError("bipartition needs two nonempty factor groups")
    value = math.log2(trace_norm(partial_transpose(rho, idx)))
    if value < 0.0:
        if value < -NEG_CLAMP:
            raise NumericalIntegrityError(
                f"negativity {value:.3e} below -{NEG_CLAMP:g}; "
                "partial transpose pipeline is inconsistent"
            )
        return 0.0
    return value


def report_from_state(psi: StateVector, degeneracy_caveat: bool = False) -> EntanglementReport:
    """All four bipartition negativities of a tripartite pure state."""
    if len(psi.factor_dims) != 3:
        raise ValueError("expected a (qubit, mode, mode) state")
    rho = density_from_state(psi)
    return EntanglementReport(
        en_s_b1b2=log_negativity(rho, 0),
        en_s_b1=log_negativity(partial_trace(rho, (0, 1)), 0),
        en_s_b2=log_negativity(partial_trace(rho, (0, 2)), 0),
        en_b1_b2=log_negativity(partial_trace(rho, (1, 2)), 0),
        degeneracy_caveat=degeneracy_caveat,
    )


def report(p: SystemParams, basis: str = "transformed") -> EntanglementReport:
    """Ground-state negativities of the selected Hamiltonian.

    The two-party cuts trace out the third subsystem first.  In the lab
    basis the same four cuts are computed with the bare modes in place of
    the rotated ones (cross-basis diagnostic only).
    """
    gs = ground_state(p, basis)
    return report_from_state(gs.state, degeneracy_caveat=gs.degenerate_flag)
