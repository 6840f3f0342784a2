"""Driven four-level emitter in a two-mode cavity: Hamiltonian and dressed states.

Everything lives in the frame co-rotating with the driving laser, so only two
detunings enter: the emitter-laser detuning ``delta0`` and the cavity-laser
detuning ``delta``. All energies are in units of the emitter-cavity coupling g
(g == 1 internally) and times in units of hbar/g; the physical value of g in
meV is carried along only for boundary conversions (see ``flecavity.units``).

The laser drives the two-photon transition ground <-> upper state resonantly,
which puts the rotating-frame emitter diagonal at {0, delta0, delta0, 0} for
{XX, X_H, X_V, G}. Diagonalizing emitter + drive yields the dressed states
U, M, N, L with energies

    E_U = (delta0 + s)/2,  E_M = delta0,  E_N = 0,  E_L = (delta0 - s)/2,

where s = sqrt(delta0^2 + 8 omega^2).
"""

import enum
from dataclasses import dataclass, replace

import numpy as np

from . import hilbert
from .hilbert import G, SpaceDescriptor, X_H, X_V, XX

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class SystemParams:
    """Physical rates and detunings, all in units of g (rates in g/hbar).

    ``g_mev`` is the physical coupling in meV used only to convert
    laboratory times (ps) to internal units. Defaults mirror the fixed
    parameter set: delta0 = 20 g, kappa = 0.1 g/hbar, gamma = 0.01 g/hbar.
    """

    omega: float
    delta: float
    delta0: float = 20.0
    kappa: float = 0.1
    gamma: float = 0.01
    n_max: int = 4
    g_mev: float = 0.051

    def __post_init__(self):
        if self.g_mev <= 0:
            raise ValueError("g must be positive")
        if self.delta0 <= 0:
            raise ValueError("delta0 must be positive")
        if self.omega < 0 or self.kappa < 0 or self.gamma < 0:
            raise ValueError("omega, kappa, gamma must be non-negative")

    def space(self) -> SpaceDescriptor:
        return SpaceDescriptor(self.n_max)

    def with_(self, **kwargs) -> "SystemParams":
        return replace(self, **kwargs)


def emitter_hamiltonian(delta0: float, omega: float) -> np.ndarray:
    """Rotating-frame emitter + drive block (4x4, basis XX, X_H, X_V, G)."""
    h = np.diag([0.0, delta0, delta0, 0.0]).astype(complex)
    sd = hilbert.sigma_d()
    h += omega * (sd + sd.conj().T)
    return h


def bare_coupling(space: SpaceDescriptor) -> np.ndarray:
    """Emitter-cavity interaction (g = 1): a_H^dag sigma_H + a_V^dag sigma_V + h.c."""
    ah = hilbert.a_h(space)
    av = hilbert.a_v(space)
    sh = hilbert.embed_emitter(hilbert.sigma_h(), space)
    sv = hilbert.embed_emitter(hilbert.sigma_v(), space)
    hc = ah.conj().T @ sh + av.conj().T @ sv
    return hc + hc.conj().T


def hamiltonian(params: SystemParams, space: SpaceDescriptor | None = None) -> np.ndarray:
    """Full rotating-frame Hamiltonian on the composite space.

    H = H_emitter(delta0, omega) (x) 1 + delta*(n_H + n_V) + coupling.
    """
    if space is None:
        space = params.space()
    h = hilbert.embed_emitter(emitter_hamiltonian(params.delta0, params.omega), space)
    h += params.delta * hilbert.number_operator(space)
    h += bare_coupling(space)
    return h


# dressed-state indices (ordering of the dressed emitter basis)
U, M, N, L = 0, 1, 2, 3

DRESSED_LABELS = ("U", "M", "N", "L")


@dataclass(frozen=True, eq=False)
class DressedBasis:
    """Laser-dressed emitter states.

    ``vectors`` holds the four dressed states as rows (U, M, N, L) expressed
    over the bare basis (XX, X_H, X_V, G), with the phase conventions

        |U> =  c(|G>+|XX>) + ct(|X_H>+|X_V>)
        |M> = (|X_H>-|X_V>)/sqrt2
        |N> = (|G>-|XX>)/sqrt2
        |L> = ct(|G>+|XX>) - c(|X_H>+|X_V>)

    These exact phases matter: the signs of the effective two-photon coupling
    constants (see :mod:`flecavity.swt`) are tied to them.
    """

    c: float
    c_tilde: float
    energies: tuple  # (E_U, E_M, E_N, E_L) in units of g
    vectors: np.ndarray  # (4, 4) real, rows = dressed states


def dressed_basis(delta0: float, omega: float) -> DressedBasis:
    """Closed-form dressed states of the driven emitter (no cavity).

    c = 2 omega / sqrt(8 omega^2 + (delta0 + s)^2), ct = sqrt(1/2 - c^2),
    with s = sqrt(delta0^2 + 8 omega^2); normalization 2c^2 + 2ct^2 = 1.
    """
    if delta0 <= 0:
        raise ValueError("delta0 must be positive")
    if omega < 0:
        raise ValueError("omega must be non-negative")
    s = np.sqrt(delta0 ** 2 + 8.0 * omega ** 2)
    c = 2.0 * omega / np.sqrt(8.0 * omega ** 2 + (delta0 + s) ** 2)
    ct = np.sqrt(0.5 - c ** 2)
    e_u = 0.5 * (delta0 + s)
    e_l = 0.5 * (delta0 - s)
    inv_sqrt2 = 1.0 / SQRT2
    vectors = np.array([
        [c, ct, ct, c],                          # |U>
        [0.0, inv_sqrt2, -inv_sqrt2, 0.0],       # |M>
        [-inv_sqrt2, 0.0, 0.0, inv_sqrt2],       # |N>
        [ct, -c, -c, ct],                        # |L>
    ])
    return DressedBasis(c=c, c_tilde=ct, energies=(e_u, delta0, 0.0, e_l), vectors=vectors)


def dressed_coupling_hamiltonian(basis: DressedBasis, space: SpaceDescriptor) -> np.ndarray:
    """Cavity coupling in the dressed basis (g = 1), U/M/N/L (x) H (x) V ordering.

    Builds the photon-creating part with the diagonal/anti-diagonal mode
    operators a_D^dag = (a_H^dag + a_V^dag)/sqrt2, a_A^dag = (a_H^dag - a_V^dag)/sqrt2:

        row U: [2 sqrt2 c ct a_D+,  c a_A+,        -ct a_D+,        sqrt2(ct^2-c^2) a_D+]
        row M: [c a_A+,             0,             -a_A+/sqrt2,     ct a_A+]
        row N: [ct a_D+,            a_A+/sqrt2,    0,               -c a_D+]
        row L: [sqrt2(ct^2-c^2) a_D+, ct a_A+,     c a_D+,          -2 sqrt2 c ct a_D+]

    and adds the Hermitian conjugate. Equivalent to rotating the bare
    coupling with the dressed transformation.
    """
    c, ct = basis.c, basis.c_tilde
    ann = hilbert.annihilation(space.n_max)
    eye = np.eye(space.dim_photon, dtype=complex)
    ah = np.kron(ann, eye)  # photon space only (H (x) V)
    av = np.kron(eye, ann)
    ad_dag = (ah + av).conj().T / SQRT2
    aa_dag = (ah - av).conj().T / SQRT2
    coeff_d = np.array([
        [2.0 * SQRT2 * c * ct, 0.0, -ct, SQRT2 * (ct ** 2 - c ** 2)],
        [0.0, 0.0, 0.0, 0.0],
        [ct, 0.0, 0.0, -c],
        [SQRT2 * (ct ** 2 - c ** 2), 0.0, c, -2.0 * SQRT2 * c * ct],
    ])
    coeff_a = np.array([
        [0.0, c, 0.0, 0.0],
        [c, 0.0, -1.0 / SQRT2, ct],
        [0.0, 1.0 / SQRT2, 0.0, 0.0],
        [0.0, ct, 0.0, 0.0],
    ])
    dim_ph = space.dim_photon ** 2
    creation = np.zeros((space.dim_total, space.dim_total), dtype=complex)
    for chi in range(4):
        for chi_p in range(4):
            block = coeff_d[chi, chi_p] * ad_dag + coeff_a[chi, chi_p] * aa_dag
            if np.any(block):
                rows = slice(chi * dim_ph, (chi + 1) * dim_ph)
                cols = slice(chi_p * dim_ph, (chi_p + 1) * dim_ph)
                creation[rows, cols] += block
    return creation + creation.conj().T


class Resonance(enum.Enum):
    """Two-photon resonance between a higher (chi1) and lower (chi2) dressed state."""

    UL = "UL"
    UM = "UM"
    NL = "NL"
    UN = "UN"
    ML = "ML"
    MN = "MN"

    @property
    def chi1(self) -> int:
        return {"U": U, "M": M, "N": N, "L": L}[self.value[0]]

    @property
    def chi2(self) -> int:
        return {"U": U, "M": M, "N": N, "L": L}[self.value[1]]


def transition_energy(res: Resonance, delta0: float, omega: float) -> float:
    """Dressed transition energy E_chi1 - E_chi2 in units of g."""
    basis = dressed_basis(delta0, omega)
    return basis.energies[res.chi1] - basis.energies[res.chi2]


def resonance_detuning(res: Resonance, delta0: float, omega: float) -> float:
    """Cavity-laser detuning that puts the cavity on the two-photon resonance.

    Half the dressed transition energy, with s = sqrt(delta0^2 + 8 omega^2):
    UL -> s/2;  UM, NL -> (s - delta0)/4;  UN, ML -> (s + delta0)/4;
    MN -> delta0/2 (the only omega-independent one).
    """
    s = np.sqrt(delta0 ** 2 + 8.0 * omega ** 2)
    if res is Resonance.UL:
        return 0.5 * s
    if res in (Resonance.UM, Resonance.NL):
        return 0.25 * (s - delta0)
    if res in (Resonance.UN, Resonance.ML):
        return 0.25 * (s + delta0)
    if res is Resonance.MN:
        return 0.5 * delta0
    raise ValueError(f"unknown resonance kind {res}")


def special_points(delta0: float) -> tuple[float, float]:
    """Driving strengths of the two concurrence zeros.

    omega_sp = sqrt(3/8) delta0 (UL resonance, Phi/Psi transition) and
    omega_m = sqrt(3) delta0 (ordering swap of the shifted UM/NL peaks).
    """
    if delta0 <= 0:
        raise ValueError("delta0 must be positive")
    return np.sqrt(3.0 / 8.0) * delta0, np.sqrt(3.0) * delta0
