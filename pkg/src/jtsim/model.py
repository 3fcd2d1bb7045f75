"""Two-mode Jahn-Teller Hamiltonians for the superconducting-circuit realisation.

Three builders share the layout fixed in :mod:`jtsim.hilbert`:

* ``build_lab_hamiltonian`` -- qubit + two resonator modes with linear
  displacement coupling g_i = omega_i * k_i and an optional inter-mode
  hopping J, in the bare (lab) mode basis.
* ``build_transformed_hamiltonian`` -- the same operator rewritten in the
  rotated mode basis b1 = (k1 a1 + k2 a2)/k_p, b2 = (k2 a1 - k1 a2)/k_p,
  where b1 is the privileged mode carrying the dominant qubit coupling
  g_p = omega_p * k_p and b2 the weakly coupled disadvantaged mode.
* ``build_single_mode_jt`` -- the privileged-mode-only reduction, used as
  a diagnostic baseline.

The rotated coefficients are obtained by exact operator algebra.  Note the
hopping J contributes 2*J*k1*k2/k_p^2 to the rotated number operators
(the b1/b2 cross terms of a1(dag)a2 + a2(dag)a1 add up twice); the
rotated hopping coefficient is c + J*(k2^2 - k1^2)/k_p^2 with
c = Delta*k1*k2/k_p^2.  A spectral cross-check against the lab builder is
part of the test suite.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .hilbert import OperatorMatrix, annihilation, embed, identity, number, pauli

# Perturbative validity of the single-privileged-mode picture: both the
# qubit-disadvantaged coupling and the mode hopping must stay below half
# the privileged coupling g_p.
VALIDITY_THRESHOLD = 0.5


class DegenerateTransformationError(ValueError):
    """Raised when k1 = k2 = 0 leaves the mode rotation undefined."""


@dataclass(frozen=True)
class SystemParams:
    """Scalar parameters of one model instance.

    Frequencies are in units of the qubit transition frequency (omega_q is
    kept explicit for generality but defaults to 1).  The couplings enter
    as dimensionless scale factors k_i with g_i = omega_i * k_i; derived
    quantities are recomputed on demand, never stored.
    """

    omega_1: float
    omega_2: float
    k_1: float
    k_2: float
    J: float = 0.0
    N: int = 10
    omega_q: float = 1.0

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise ValueError("cutoff must be >= 2")
        object.__setattr__(self, "N", int(self.N))
        if not self.omega_q > 0:
            raise ValueError(f"omega_q must be positive, got {self.omega_q}")
        for name in ("omega_1", "omega_2", "k_1", "k_2"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {value}")
        if not np.isfinite(self.J):
            raise ValueError(f"J must be finite, got {self.J}")

    @property
    def g_1(self) -> float:
        return self.omega_1 * self.k_1

    @property
    def g_2(self) -> float:
        return self.omega_2 * self.k_2

    @property
    def delta(self) -> float:
        return self.omega_1 - self.omega_2


@dataclass(frozen=True)
class PrivilegedParams:
    """Coefficients of the rotated-mode description."""

    k_p: float
    omega_p: float
    omega_p_tilde: float
    c: float
    g_p: float
    delta: float


@dataclass(frozen=True)
class ValidityReport:
    """Dimensionless ratios probing the single-privileged-mode approximation.

    r1 = |k_p*c| / g_p   qubit-disadvantaged vs qubit-privileged coupling
    r2 = |c + J*(k2^2-k1^2)/k_p^2| / g_p   mode hopping vs qubit-privileged
    r3 = |J| / g_2       hopping vs the weaker bare coupling (diagnostic only)

    valid requires r1 and r2 both at or below VALIDITY_THRESHOLD; r3 is
    reported but not gated (the approximation tolerates J comparable to g_2).
    """

    r1: float
    r2: float
    r3: float
    valid: bool


def privileged_params(p: SystemParams) -> PrivilegedParams:
    """Rotation coefficients k_p, omega_p, omega_p_tilde, c, g_p for ``p``."""
    kp2 = p.k_1**2 + p.k_2**2
    if kp2 == 0.0:
        raise DegenerateTransformationError(
            "mode rotation undefined for k_1 = k_2 = 0"
        )
    k_p = math.sqrt(kp2)
    omega_p = (p.omega_1 * p.k_1**2 + p.omega_2 * p.k_2**2) / kp2
    omega_p_tilde = (p.omega_1 * p.k_2**2 + p.omega_2 * p.k_1**2) / kp2
    delta = p.delta
    c = delta * p.k_1 * p.k_2 / kp2
    return PrivilegedParams(
        k_p=k_p,
        omega_p=omega_p,
        omega_p_tilde=omega_p_tilde,
        c=c,
        g_p=omega_p * k_p,
        delta=delta,
    )


def _warn_zero_frequency(p: SystemParams):
    if p.omega_1 == 0.0 or p.omega_2 == 0.0:
        warnings.warn(
            "zero-frequency mode: decoupled oscillator makes the ground "
            "state degenerate",
            RuntimeWarning,
            stacklevel=3,
        )


def build_lab_hamiltonian(p: SystemParams) -> OperatorMatrix:
    """Qubit + two modes + displacement couplings + hopping, lab mode basis."""
    _warn_zero_frequency(p)
    n = p.N
    sz = embed(pauli("z"), "S", n).entries
    sx = embed(pauli("x"), "S", n).entries
    a1 = embed(annihilation(n), "M1", n).entries
    a2 = embed(annihilation(n), "M2", n).entries
    n1 = embed(number(n), "M1", n).entries
    n2 = embed(number(n), "M2", n).entries

    h = 0.5 * p.omega_q * sz
    h += p.omega_1 * n1 + p.omega_2 * n2
    h += p.g_1 * (a1 + a1.conj().T) @ sx
    h += p.g_2 * (a2 + a2.conj().T) @ sx
    h += p.J * (a1.conj().T @ a2 + a2.conj().T @ a1)
    return OperatorMatrix(h, (2, n, n), hermitian=True)


def build_transformed_hamiltonian(p: SystemParams) -> OperatorMatrix:
    """Same operator in the (qubit, privileged, disadvantaged) basis.

    Coefficients follow the exact rotation of the lab Hamiltonian; at J = 0
    they reduce to omega_p, omega_p_tilde, c, g_p and k_p*c.
    """
    _warn_zero_frequency(p)
    pp = privileged_params(p)
    n = p.N
    kp2 = pp.k_p**2
    hop = pp.c + p.J * (p.k_2**2 - p.k_1**2) / kp2
    shift = 2.0 * p.J * p.k_1 * p.k_2 / kp2

    sz = embed(pauli("z"), "S", n).entries
    sx = embed(pauli("x"), "S", n).entries
    b1 = embed(annihilation(n), "M1", n).entries
    b2 = embed(annihilation(n), "M2", n).entries
    n1 = embed(number(n), "M1", n).entries
    n2 = embed(number(n), "M2", n).entries

    h = 0.5 * p.omega_q * sz
    h += (pp.omega_p + shift) * n1 + (pp.omega_p_tilde - shift) * n2
    h += hop * (b1.conj().T @ b2 + b2.conj().T @ b1)
    h += pp.k_p * pp.omega_p * (b1 + b1.conj().T) @ sx
    h += pp.k_p * pp.c * (b2 + b2.conj().T) @ sx
    return OperatorMatrix(h, (2, n, n), hermitian=True)


def build_single_mode_jt(p: SystemParams) -> OperatorMatrix:
    """Privileged-mode-only Jahn-Teller Hamiltonian on the (qubit, mode) space."""
    pp = privileged_params(p)
    n = p.N
    eye_m = identity((n,)).entries
    sz = np.kron(pauli("z").entries, eye_m)
    sx = np.kron(pauli("x").entries, eye_m)
    b = np.kron(np.eye(2, dtype=complex), annihilation(n).entries)
    h = 0.5 * p.omega_q * sz
    h += pp.omega_p * (b.conj().T @ b)
    h += pp.g_p * (b + b.conj().T) @ sx
    return OperatorMatrix(h, (2, n), hermitian=True)


def privileged_validity(p: SystemParams) -> ValidityReport:
    """Dimensionless diagnostics for the single-privileged-mode picture."""
    pp = privileged_params(p)
    hop = pp.c + p.J * (p.k_2**2 - p.k_1**2) / pp.k_p**2
    if pp.g_p > 0:
        r1 = abs(pp.k_p * pp.c) / pp.g_p
        r2 = abs(hop) / pp.g_p
    else:
        # No privileged coupling to compare against: only c = hop = 0 passes.
        r1 = 0.0 if pp.c == 0.0 else math.inf
        r2 = 0.0 if hop == 0.0 else math.inf
    r3 = 0.0 if p.J == 0.0 else (abs(p.J) / p.g_2 if p.g_2 > 0 else math.inf)
    valid = r1 <= VALIDITY_THRESHOLD and r2 <= VALIDITY_THRESHOLD
    return ValidityReport(r1=r1, r2=r2, r3=r3, valid=valid)


def mode_rotation_unitary(p: SystemParams) -> np.ndarray:
    """Matrix whose columns are the rotated-mode Fock states in lab coordinates.

    Column (m1*N + m2) holds |m1, m2> of the (privileged, disadvantaged)
    modes expanded over lab Fock states |n1, n2>.  Exact for total quanta
    m1 + m2 <= N - 1; higher columns lose the weight that truncation pushes
    outside the lab grid, so the matrix is only approximately unitary.
    """
    pp = privileged_params(p)
    n = p.N
    a = annihilation(n).entries
    eye = np.eye(n, dtype=complex)
    a1d = np.kron(a.conj().T, eye)
    a2d = np.kron(eye, a.conj().T)
    b1d = (p.k_1 * a1d + p.k_2 * a2d) / pp.k_p
    b2d = (p.k_2 * a1d - p.k_1 * a2d) / pp.k_p

    dim = n * n
    w = np.zeros((dim, dim), dtype=complex)
    w[0, 0] = 1.0
    for m2 in range(1, n):
        w[:, m2] = b2d @ w[:, m2 - 1] / math.sqrt(m2)
    for m1 in range(1, n):
        for m2 in range(n):
            w[:, m1 * n + m2] = b1d @ w[:, (m1 - 1) * n + m2] / math.sqrt(m1)
    return w
