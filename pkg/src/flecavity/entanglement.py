"""Wootters concurrence and Bell-type classification of two-photon states.

C = max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)} with l1 >= ... >= l4 the
eigenvalues of M = rho T rho* T, where T is the rank-4 anti-diagonal matrix
with elements {-1, 1, 1, -1} (the two-qubit spin flip sigma_y (x) sigma_y).
"""

import enum
from dataclasses import dataclass

import numpy as np

# spin-flip matrix in the (HH, HV, VH, VV) basis
T_FLIP = np.array([
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
], dtype=complex)

CLASSIFY_THRESHOLD = 0.01  # below this the entanglement type is not assigned


class NumericalDegeneracyError(RuntimeError):
    """The spectrum of rho T rho* T came out non-real or significantly negative."""


class BellType(enum.Enum):
    PHI = "PhiBS"  # dominated by HH/VV occupations and their coherence
    PSI = "PsiBS"  # dominated by HV/VH occupations and their coherence
    NONE = "none"


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    lambdas: tuple  # sqrt-eigenvalues of M in decreasing order
    bell_type: BellType


def classify(rho: np.ndarray, c: float, threshold: float = CLASSIFY_THRESHOLD) -> BellType:
    """Assign the dominant Bell-state character by the larger coherence.

    Compares |rho_{HH,VV}| against |rho_{HV,VH}|; below the concurrence
    threshold no type is assigned.
    """
    if c < threshold:
        return BellType.NONE
    return BellType.PHI if abs(rho[0, 3]) > abs(rho[1, 2]) else BellType.PSI


def concurrence(rho: np.ndarray, threshold: float = CLASSIFY_THRESHOLD) -> ConcurrenceResult:
    """Wootters concurrence of a 4x4 two-photon density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    m = rho @ T_FLIP @ rho.conj() @ T_FLIP
    evals = np.linalg.eigvals(m)
    if np.max(np.abs(evals.imag)) > 1e-8:
        raise NumericalDegeneracyError(
            f"eigenvalues of rho T rho* T not real (max imag {np.max(np.abs(evals.imag)):.3e})"
        )
    lam = evals.real
    if lam.min() < -1e-10:
        raise NumericalDegeneracyError(
            f"eigenvalue {lam.min():.3e} of rho T rho* T below the -1e-10 clamp"
        )
    lam = np.sqrt(np.clip(lam, 0.0, None))
    lam = np.sort(lam)[::-1]
    c = max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
    return ConcurrenceResult(value=c, lambdas=tuple(lam), bell_type=classify(rho, c, threshold))


def ratio_r(omega: float, delta0: float) -> float:
    """Coupling ratio gamma_1/gamma_2 of the Psi and Phi channels at the U|L resonance.

    r = 4 (omega/delta0)^2 - 1/2; |r| < 1 favors PhiBS, |r| > 1 PsiBS,
    r = 1 is the special point where the emitted state factorizes.
    """
    if delta0 <= 0:
        raise ValueError("delta0 must be positive")
    return 4.0 * (omega / delta0) ** 2 - 0.5


def analytic_concurrence(r: float) -> float:
    """Concurrence of the closed-form resonance state: C(r) = |1 - r^2| / (1 + r^2)."""
    if not np.isfinite(r):
        raise ValueError("r must be finite")
    return abs(1.0 - r * r) / (1.0 + r * r)
