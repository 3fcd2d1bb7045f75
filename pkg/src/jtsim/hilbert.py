"""Truncated bosonic and qubit operators on a fixed tensor-product layout.

Basis-ordering contract used by every module in this package: the tensor
order is (qubit, mode 1, mode 2), row-major, so a basis state |s, n1, n2>
sits at flat index  s*N^2 + n1*N + n2  with s in {0, 1} and n_i in
{0 .. N-1}.  Qubit index 0 is the lower level (sigma_z eigenvalue -1),
index 1 the upper level (+1).  After the mode rotation the same layout
holds with (qubit, privileged mode, disadvantaged mode).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-12

SLOTS = ("S", "M1", "M2")


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex square matrix with its tensor-factor dimensions."""

    entries: np.ndarray
    factor_dims: tuple[int, ...]
    hermitian: bool = False

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "factor_dims", tuple(int(d) for d in self.factor_dims))
        dim = math.prod(self.factor_dims)
        if entries.shape != (dim, dim):
            raise ValueError(
                f"entries shape {entries.shape} does not match factor_dims "
                f"{self.factor_dims} (total {dim})"
            )
        if self.hermitian:
            dev = np.max(np.abs(entries - entries.conj().T))
            if dev >= HERMITICITY_TOL:
                raise ValueError(f"matrix flagged hermitian deviates by {dev:.3e}")

    @property
    def dim_total(self) -> int:
        return math.prod(self.factor_dims)

    def dag(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T, self.factor_dims, self.hermitian)


@dataclass(frozen=True)
class StateVector:
    """Complex amplitude vector over the same tensor-factor layout."""

    amplitudes: np.ndarray
    factor_dims: tuple[int, ...]

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "factor_dims", tuple(int(d) for d in self.factor_dims))
        if amps.shape != (math.prod(self.factor_dims),):
            raise ValueError(
                f"amplitude vector of length {amps.shape} does not match "
                f"factor_dims {self.factor_dims}"
            )

    @property
    def dim_total(self) -> int:
        return math.prod(self.factor_dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def _check_cutoff(cutoff: int) -> int:
    if int(cutoff) != cutoff or cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    return int(cutoff)


def annihilation(cutoff: int) -> OperatorMatrix:
    """Bosonic annihilation operator a with a|n> = sqrt(n)|n-1>, truncated at cutoff."""
    n = _check_cutoff(cutoff)
    a = np.zeros((n, n), dtype=complex)
    for k in range(1, n):
        a[k - 1, k] = math.sqrt(k)
    return OperatorMatrix(a, (n,))


def creation(cutoff: int) -> OperatorMatrix:
    return annihilation(cutoff).dag()


def number(cutoff: int) -> OperatorMatrix:
    n = _check_cutoff(cutoff)
    return OperatorMatrix(np.diag(np.arange(n, dtype=complex)), (n,), hermitian=True)


def pauli(which: str) -> OperatorMatrix:
    """Pauli operator on the qubit factor; sigma_z = diag(-1, +1), sigma_x off-diagonal."""
    if which == "z":
        m = np.diag([-1.0 + 0j, 1.0])
    elif which == "x":
        m = np.array([[0, 1], [1, 0]], dtype=complex)
    else:
        raise ValueError(f"unknown Pauli axis {which!r}; expected 'x' or 'z'")
    return OperatorMatrix(m, (2,), hermitian=True)


def identity(dims) -> OperatorMatrix:
    dims = tuple(int(d) for d in dims)
    return OperatorMatrix(np.eye(math.prod(dims), dtype=complex), dims, hermitian=True)


def embed(op: OperatorMatrix, slot: str, cutoff: int) -> OperatorMatrix:
    """Lift a single-factor operator to the full (qubit, mode1, mode2) space.

    slot selects the tensor factor: "S" for the qubit, "M1"/"M2" for the
    modes.  The result acts as identity on the other two factors and has
    factor_dims (2, cutoff, cutoff).
    """
    n = _check_cutoff(cutoff)
    if slot not in SLOTS:
        raise ValueError(f"unknown slot {slot!r}; expected one of {SLOTS}")
    expected = 2 if slot == "S" else n
    if op.dim_total != expected:
        raise ValueError(
            f"operator of dimension {op.dim_total} does not fit slot {slot} "
            f"(expected {expected})"
        )
    eye_q = np.eye(2, dtype=complex)
    eye_m = np.eye(n, dtype=complex)
    parts = {
        "S": (op.entries, eye_m, eye_m),
        "M1": (eye_q, op.entries, eye_m),
        "M2": (eye_q, eye_m, op.entries),
    }[slot]
    full = np.kron(np.kron(parts[0], parts[1]), parts[2])
    return OperatorMatrix(full, (2, n, n), hermitian=op.hermitian)


def mode_parity(cutoff: int) -> OperatorMatrix:
    """Photon-number parity (-1)^n on a single mode."""
    n = _check_cutoff(cutoff)
    return OperatorMatrix(
        np.diag([(-1.0) ** k + 0j for k in range(n)]), (n,), hermitian=True
    )


def parity_operator(cutoff: int) -> OperatorMatrix:
    """Total parity sigma_z (x) (-1)^(n1+n2); commutes with every model Hamiltonian."""
    sz = pauli("z").entries
    pm = mode_parity(cutoff).entries
    full = np.kron(np.kron(sz, pm), pm)
    return OperatorMatrix(full, (2, cutoff, cutoff), hermitian=True)
