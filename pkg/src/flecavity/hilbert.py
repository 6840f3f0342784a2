"""Composite Hilbert space for a four-level emitter coupled to two cavity modes.

Basis conventions used throughout the package:

* emitter levels, in this order: ``|XX> = 0``, ``|X_H> = 1``, ``|X_V> = 2``,
  ``|G> = 3``
* tensor ordering: emitter (x) H mode (x) V mode
* flat index of ``|chi, n_H, n_V>``:
  ``idx = chi*(n_max+1)**2 + n_H*(n_max+1) + n_V``

Both bosonic modes are truncated at ``n_max`` photons. All operators are dense
complex numpy arrays; only the Liouvillian superoperator (see
:mod:`flecavity.lindblad`) is stored sparse.
"""

from dataclasses import dataclass

import numpy as np

# emitter level indices
XX, X_H, X_V, G = 0, 1, 2, 3

DIM_EMITTER = 4


class InvalidCutoffError(ValueError):
    """Photon cutoff too small for the requested construction."""


@dataclass(frozen=True)
class SpaceDescriptor:
    """Truncated emitter (x) two-mode photon space.

    ``n_max`` is the photon cutoff per mode; two-photon states must exist,
    so ``n_max >= 2`` is required.
    """

    n_max: int

    def __post_init__(self):
        if self.n_max < 2:
            raise InvalidCutoffError(
                f"n_max must be >= 2 (two-photon states required), got {self.n_max}"
            )

    @property
    def dim_photon(self) -> int:
        return self.n_max + 1

    @property
    def dim_total(self) -> int:
        return DIM_EMITTER * (self.n_max + 1) ** 2

    def index(self, chi: int, n_h: int, n_v: int) -> int:
        """Flat index of the basis state |chi, n_H, n_V>."""
        d = self.dim_photon
        if not (0 <= chi < DIM_EMITTER and 0 <= n_h < d and 0 <= n_v < d):
            raise IndexError(f"state ({chi}, {n_h}, {n_v}) outside the space")
        return chi * d * d + n_h * d + n_v

    def basis_state(self, chi: int, n_h: int, n_v: int) -> np.ndarray:
        """Unit vector for |chi, n_H, n_V> on the full space."""
        vec = np.zeros(self.dim_total, dtype=complex)
        vec[self.index(chi, n_h, n_v)] = 1.0
        return vec


def annihilation(n_max: int) -> np.ndarray:
    """Single-mode annihilation operator on a Fock space truncated at n_max.

    Entries a[n-1, n] = sqrt(n); all others zero.
    """
    if n_max < 1:
        raise InvalidCutoffError(f"n_max must be >= 1, got {n_max}")
    a = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    for n in range(1, n_max + 1):
        a[n - 1, n] = np.sqrt(n)
    return a


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, fixing the global ordering emitter (x) H (x) V."""
    return np.kron(a, b)


def transition(i: int, j: int) -> np.ndarray:
    """Emitter transition operator |i><j| on the bare four-level space."""
    op = np.zeros((DIM_EMITTER, DIM_EMITTER), dtype=complex)
    op[i, j] = 1.0
    return op


def sigma_h() -> np.ndarray:
    """Lowering operator for H-polarized transitions: |G><X_H| + |X_H><XX|."""
    return transition(G, X_H) + transition(X_H, XX)


def sigma_v() -> np.ndarray:
    """Lowering operator for V-polarized transitions: |G><X_V| + |X_V><XX|."""
    return transition(G, X_V) + transition(X_V, XX)


def sigma_d() -> np.ndarray:
    """Diagonally polarized lowering operator (sigma_H + sigma_V)/sqrt(2)."""
    return (sigma_h() + sigma_v()) / np.sqrt(2.0)


def embed_emitter(op4: np.ndarray, space: SpaceDescriptor) -> np.ndarray:
    """Embed a 4x4 emitter operator as op4 (x) I_H (x) I_V."""
    op4 = np.asarray(op4, dtype=complex)
    if op4.shape != (DIM_EMITTER, DIM_EMITTER):
        raise ValueError(f"expected 4x4 emitter operator, got shape {op4.shape}")
    return np.kron(op4, np.eye(space.dim_photon ** 2, dtype=complex))


def embed_photon_h(op: np.ndarray, space: SpaceDescriptor) -> np.ndarray:
    """Embed a single-mode operator on the H mode: I_4 (x) op (x) I_V."""
    d = space.dim_photon
    if op.shape != (d, d):
        raise ValueError(f"expected {d}x{d} photon operator, got shape {op.shape}")
    return np.kron(np.eye(DIM_EMITTER, dtype=complex), np.kron(op, np.eye(d, dtype=complex)))


def embed_photon_v(op: np.ndarray, space: SpaceDescriptor) -> np.ndarray:
    """Embed a single-mode operator on the V mode: I_4 (x) I_H (x) op."""
    d = space.dim_photon
    if op.shape != (d, d):
        raise ValueError(f"expected {d}x{d} photon operator, got shape {op.shape}")
    return np.kron(np.eye(DIM_EMITTER, dtype=complex), np.kron(np.eye(d, dtype=complex), op))


def a_h(space: SpaceDescriptor) -> np.ndarray:
    """H-mode annihilation operator on the full space."""
    return embed_photon_h(annihilation(space.n_max), space)


def a_v(space: SpaceDescriptor) -> np.ndarray:
    """V-mode annihilation operator on the full space."""
    return embed_photon_v(annihilation(space.n_max), space)


def number_operator(space: SpaceDescriptor) -> np.ndarray:
    """Total photon number a_H^dag a_H + a_V^dag a_V on the full space."""
    ah = a_h(space)
    av = a_v(space)
    return ah.conj().T @ ah + av.conj().T @ av


def expectation(op: np.ndarray, rho: np.ndarray) -> complex:
    """Tr(op rho). Real to ~1e-10 when op is Hermitian and rho is a state."""
    if op.shape != rho.shape:
        raise ValueError(f"dimension mismatch: op {op.shape} vs rho {rho.shape}")
    return complex(np.trace(op @ rho))


def assert_valid_density_matrix(rho: np.ndarray, herm_tol: float = 1e-10,
                                trace_tol: float = 1e-8, pos_tol: float = -1e-8):
    """Raise if rho violates Hermiticity, unit trace, or positivity tolerances."""
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        raise ValueError(f"density matrix not Hermitian: max|rho - rho^dag| = {herm:.3e}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {tr} deviates from 1")
    evals = np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)
    if evals.min() < pos_tol:
        raise ValueError(f"density matrix not positive: min eigenvalue {evals.min():.3e}")
