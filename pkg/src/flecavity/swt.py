"""Second-order block diagonalization of the two-photon resonances.

For a cavity tuned to the two-photon transition between dressed states chi1
(higher) and chi2 (lower), the four degenerate states

    A: |chi1,0,0>, |chi2,1,1>, |chi2,2,0>, |chi2,0,2>

couple through the 24 off-resonant one- and three-photon states

    B: |chi,1,0>, |chi,0,1>, |chi,3,0>, |chi,2,1>, |chi,1,2>, |chi,0,3>
       (chi = U, M, N, L).

Eliminating B at second order gives the 4x4 effective Hamiltonian

    H2_{a,a'} = (1/2) sum_b H_{a,b} H_{b,a'} [1/(E_a - E_b) + 1/(E_{a'} - E_b)],

with E_{chi,n} = E_chi + (n_H + n_V) Delta and H_{a,b} the cavity coupling in
the dressed basis (the constant diagonal E_a is dropped; the A states are
degenerate at resonance). A final rotation into the partial Bell basis
{|chi1,0,0>, |chi2,1,1>, |chi2,Phi_+>, |chi2,Phi_->} with
Phi_{+/-} = (|2,0> +/- |0,2>)/sqrt2 exposes the Psi-type (via |chi2,1,1>) and
Phi-type (via |chi2,Phi_+/->) channels. All entries carry a global g^2
factor; with g = 1 internally the matrices are directly in units of g.

Two independent implementations act as mutual oracles: ``sw_generic`` builds
everything numerically from the rotated bare coupling, while
``sw_closed_form`` evaluates hand-derived coefficient formulas. The closed
forms come in three variants:

* ``"full"`` - the complete second-order coefficients (default). These were
  rederived from scratch; the published expressions turn out to omit a few
  second-order contributions even in their "full" appendix form (mainly the
  diagonal shifts from one-photon virtual transitions within the resonant
  pair itself, plus two slips: the Psi-channel coupling of the UN resonance
  needs the denominator D_UN - 2*delta0, and one NL diagonal term needs
  (ct^2 - c^2) squared). Only this variant matches ``sw_generic`` to
  machine precision and reproduces exact eigenvalues to O(g^3).
* ``"printed"`` - the published coefficient set, verbatim, for comparison.
* ``"leading"`` - the shortened main-text forms (UL and MN only); at the UL
  resonance the coupling ratio gamma1/gamma2 reduces to
  r = 4 (omega/delta0)^2 - 1/2 in every variant.
"""

from dataclasses import dataclass

import numpy as np

from . import model
from .hilbert import SpaceDescriptor
from .model import Resonance, dressed_basis, resonance_detuning, transition_energy

SQRT2 = np.sqrt(2.0)

DENOMINATOR_GUARD = 1e-9  # minimum |E_a - E_b| in units of g

# rotation (1,1)/(2,0)/(0,2) -> (1,1)/Phi_+/Phi_- on the last two slots
BELL_ROTATION = np.array([
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0 / SQRT2, 1.0 / SQRT2],
    [0.0, 0.0, 1.0 / SQRT2, -1.0 / SQRT2],
])


class DegeneracyError(RuntimeError):
    """A B state is (near-)degenerate with the resonant set A."""


@dataclass(frozen=True, eq=False)
class SwEffectiveH:
    """Effective two-photon Hamiltonian in the partial Bell basis.

    ``matrix`` is real symmetric, in units of g; ``coefficients`` holds the
    named closed-form constants in 1/energy units (empty for the numeric
    route).
    """

    resonance: Resonance
    matrix: np.ndarray  # (4, 4)
    coefficients: dict
    basis_labels: tuple


@dataclass(frozen=True)
class SubspacePartition:
    """Resonant set A (4 states) and perturbative set B (24 states).

    States are (chi, n_H, n_V) with chi a dressed index (U=0, M=1, N=2, L=3).
    """

    set_a: tuple
    set_b: tuple


def subspace_partition(res: Resonance) -> SubspacePartition:
    set_a = (
        (res.chi1, 0, 0),
        (res.chi2, 1, 1),
        (res.chi2, 2, 0),
        (res.chi2, 0, 2),
    )
    photon_b = ((1, 0), (0, 1), (3, 0), (2, 1), (1, 2), (0, 3))
    set_b = tuple((chi, nh, nv) for chi in range(4) for (nh, nv) in photon_b)
    return SubspacePartition(set_a=set_a, set_b=set_b)


def _basis_labels(res: Resonance) -> tuple:
    c1 = model.DRESSED_LABELS[res.chi1]
    c2 = model.DRESSED_LABELS[res.chi2]
    return (f"|{c1},0,0>", f"|{c2},1,1>", f"|{c2},Phi+>", f"|{c2},Phi->")


def sw_generic(res: Resonance, delta0: float, omega: float,
               guard: float = DENOMINATOR_GUARD) -> SwEffectiveH:
    """Numeric second-order effective Hamiltonian from the dressed coupling.

    Assembles the 28-state coupling matrix by rotating the bare interaction
    into the dressed basis on an n_max = 3 space (exact for second order:
    one coupling step from A reaches only B).
    """
    basis = dressed_basis(delta0, omega)
    delta = resonance_detuning(res, delta0, omega)
    space = SpaceDescriptor(3)
    dim_ph = space.dim_photon ** 2
    rot = np.kron(basis.vectors, np.eye(dim_ph))
    v = rot @ model.bare_coupling(space) @ rot.T

    part = subspace_partition(res)

    def energy(state):
        chi, nh, nv = state
        return basis.energies[chi] + (nh + nv) * delta

    def index(state):
        chi, nh, nv = state
        return space.index(chi, nh, nv)

    e_a = np.array([energy(s) for s in part.set_a])
    idx_a = [index(s) for s in part.set_a]
    h2 = np.zeros((4, 4))
    for b_state in part.set_b:
        ib = index(b_state)
        coupling = v[idx_a, ib].real  # real by construction
        if not np.any(np.abs(coupling) > 1e-14):
            continue
        gaps = e_a - energy(b_state)
        if np.min(np.abs(gaps)) < guard:
            chi, nh, nv = b_state
            raise DegeneracyError(
                f"state |{model.DRESSED_LABELS[chi]},{nh},{nv}> degenerate with the "
                f"resonant subspace (gap {np.min(np.abs(gaps)):.2e} g)"
            )
        inv = 1.0 / gaps
        h2 += 0.5 * np.outer(coupling, coupling) * (inv[:, None] + inv[None, :])
    matrix = BELL_ROTATION.T @ h2 @ BELL_ROTATION
    return SwEffectiveH(resonance=res, matrix=matrix, coefficients={},
                        basis_labels=_basis_labels(res))


def _cct(delta0, omega):
    basis = dressed_basis(delta0, omega)
    return basis.c, basis.c_tilde


# ---------------------------------------------------------------------------
# closed-form coefficients
#
# Names follow the published presentation: delta* are diagonal shifts,
# gamma1 couples |chi1,0,0> to the Psi channel |chi2,1,1>, gamma2 to the Phi
# channel, alpha couples |chi2,1,1> to |chi2,Phi_+>. "diag0"/"diag2" are the
# assembled initial-state and two-photon-state diagonals. D stands for the
# dressed transition energy of the resonance (D_UL = s = sqrt(d0^2+8 om^2),
# D_UM = D_NL = (s-d0)/2, D_UN = D_ML = (s+d0)/2).
# ---------------------------------------------------------------------------


def _coefficients_ul(delta0, omega, variant):
    c, ct = _cct(delta0, omega)
    d = transition_energy(Resonance.UL, delta0, omega)
    cc = ct * ct - c * c
    k = cc * cc
    gamma1 = 4.0 * c * ct / delta0 - 16.0 * c * ct * cc / d
    gamma2 = 16.0 * c * ct * cc / d
    delta3 = (8.0 * k / (3.0 * d)
              + 2.0 * ct ** 2 / (d + delta0 / 2.0)
              + 2.0 * c ** 2 / (d - delta0 / 2.0))
    if variant == "full":
        diag0 = 2.0 * cc / delta0 + (8.0 * k - 1.0) / d
        diag2 = -2.0 * cc / delta0 - 1.0 / d - delta3
        alpha = (1.0 / delta0 - 16.0 * k / (3.0 * d)
                 + ct ** 2 / (d + delta0 / 2.0) - c ** 2 / (d - delta0 / 2.0))
    else:
        delta_p = cc * (2.0 / delta0 + 4.0 / d)
        alpha = 1.0 / delta0 - (1.0 - 16.0 * c ** 2 * ct ** 2) / d
        if variant == "printed":
            alpha += -0.5 * delta3 + 2.0 * ct ** 2 / (d + delta0 / 2.0)
            diag2 = -delta_p - delta3
        else:  # leading
            delta3 = 0.0
            diag2 = -delta_p
        diag0 = delta_p
    return {"diag0": diag0, "diag2": diag2, "delta3": delta3,
            "gamma1": gamma1, "gamma2": gamma2, "alpha": alpha}


def _coefficients_mn(delta0, omega, variant):
    c, ct = _cct(delta0, omega)
    d = transition_energy(Resonance.UL, delta0, omega)  # = E_U - E_L
    cc = ct * ct - c * c
    delta_p = 2.0 * cc / d
    gamma2 = -4.0 * c * ct / d
    delta3 = (-4.0 * ct ** 2 / (2.0 * delta0 + d)
              - 2.0 / (3.0 * delta0)
              - 4.0 * c ** 2 / (2.0 * delta0 - d))
    if variant == "full":
        diag0 = delta_p + 1.0 / delta0
        diag2 = -delta_p + delta3 - 1.0 / delta0
        alpha = (-delta_p + 4.0 / (3.0 * delta0)
                 - 2.0 * ct ** 2 / (2.0 * delta0 + d)
                 - 2.0 * c ** 2 / (2.0 * delta0 - d))
    elif variant == "printed":
        diag0 = delta_p
        diag2 = -delta_p + delta3
        alpha = -delta_p + 0.5 * delta3 + 1.0 / (3.0 * delta0)
    else:  # leading
        diag0 = delta_p
        diag2 = -delta_p
        delta3 = 0.0
        alpha = -delta_p
    return {"diag0": diag0, "diag2": diag2, "delta3": delta3,
            "gamma2": gamma2, "alpha": alpha}


def _coefficients_um(delta0, omega, variant):
    c, ct = _cct(delta0, omega)
    d = transition_energy(Resonance.UM, delta0, omega)
    cc = ct * ct - c * c
    k = cc * cc
    gamma2 = (-4.0 * SQRT2 * c ** 2 * ct / d
              - SQRT2 * ct / (2.0 * delta0 + d)
              + 2.0 * SQRT2 * cc * ct / (2.0 * delta0 + 3.0 * d))
    delta1 = (-16.0 * c ** 2 * ct ** 2 / d
              + 2.0 * ct ** 2 / (2.0 * delta0 + d)
              + 4.0 * k / (2.0 * delta0 + 3.0 * d))
    delta2 = (-2.0 * c ** 2 / d
              + 1.0 / (2.0 * delta0 + d)
              + 2.0 * ct ** 2 / (2.0 * delta0 + 3.0 * d))
    if variant == "full":
        diag0 = delta1 + 2.0 * c ** 2 / d
        diag2 = (-2.0 * c ** 2 / d - 4.0 * c ** 2 / (3.0 * d)
                 + (4.0 * ct ** 2 + 1.0) / (2.0 * delta0 + d)
                 + 2.0 * ct ** 2 / (2.0 * delta0 + 3.0 * d)
                 + 2.0 / (2.0 * delta0 - d))
    else:  # printed
        diag0 = delta1 - delta2
        diag2 = (-4.0 * c ** 2 / (3.0 * d)
                 + 2.0 / (2.0 * delta0 - d)
                 + 4.0 * ct ** 2 / (2.0 * delta0 + d))
    alpha = (8.0 * c ** 2 / (3.0 * d)
             - (2.0 * ct ** 2 + 1.0) / (2.0 * delta0 + d)
             - 2.0 * ct ** 2 / (2.0 * delta0 + 3.0 * d)
             - 1.0 / (2.0 * delta0 - d))
    return {"diag0": diag0, "diag2": diag2, "delta1": delta1, "delta2": delta2,
            "gamma2": gamma2, "alpha": alpha}


def _coefficients_nl(delta0, omega, variant):
    c, ct = _cct(delta0, omega)
    d = transition_energy(Resonance.UM, delta0, omega)  # D_NL = D_UM
    cc = ct * ct - c * c
    k = cc * cc
    um = _coefficients_um(delta0, omega, variant)
    gamma1 = um["gamma2"]
    gamma2 = gamma1 + 2.0 * SQRT2 * ct / (2.0 * delta0 + d)
    if variant == "full":
        diag0 = (2.0 * c ** 2 / d
                 - 2.0 * ct ** 2 / (2.0 * delta0 + 3.0 * d)
                 - 1.0 / (2.0 * delta0 + d))
        diag2 = (-16.0 * c ** 2 * ct ** 2 / d - 10.0 * c ** 2 / (3.0 * d)
                 - 2.0 * ct ** 2 / (2.0 * delta0 + d)
                 - (4.0 * k + 4.0 * ct ** 2) / (2.0 * delta0 + 3.0 * d)
                 - 8.0 * k / (2.0 * delta0 + 5.0 * d))
        alpha = (-8.0 * c ** 2 / (3.0 * d)
                 + 2.0 * ct ** 2 / (2.0 * delta0 + d)
                 + (2.0 * ct ** 2 - 4.0 * k) / (2.0 * delta0 + 3.0 * d)
                 - 4.0 * k / (2.0 * delta0 + 5.0 * d))
    else:  # printed
        diag0 = um["delta1"] - um["delta2"]
        diag2 = (-32.0 * c ** 2 * ct ** 2 / d
                 - 4.0 * c ** 2 / (3.0 * d)
                 - 8.0 * cc / (2.0 * delta0 + 5.0 * d)
                 - 4.0 * ct ** 2 / (2.0 * delta0 + 3.0 * d))
        alpha = (-um["delta1"] + 0.5 * diag2
                 + 4.0 * ct ** 2 / (2.0 * delta0 + d)
                 + 4.0 * ct ** 2 / (2.0 * delta0 + 3.0 * d))
    return {"diag0": diag0, "diag2": diag2, "gamma1": gamma1,
            "gamma2": gamma2, "alpha": alpha}


def _coefficients_un(delta0, omega, variant):
    c, ct = _cct(delta0, omega)
    d = transition_energy(Resonance.UN, delta0, omega)
    cc = ct * ct - c * c
    k = cc * cc
    gamma1 = (-4.0 * SQRT2 * c * ct ** 2 / d
              - SQRT2 * c / (d - 2.0 * delta0)
              - 2.0 * SQRT2 * cc * c / (3.0 * d - 2.0 * delta0))
    delta1 = (-16.0 * c ** 2 * ct ** 2 / d
              + 2.0 * c ** 2 / (d - 2.0 * delta0)
              + 4.0 * k / (3.0 * d - 2.0 * delta0))
    delta2 = (-2.0 * ct ** 2 / d
              + 1.0 / (d - 2.0 * delta0)
              + 2.0 * c ** 2 / (3.0 * d - 2.0 * delta0))
    alpha = (-8.0 * ct ** 2 / (3.0 * d)
             + (2.0 * c ** 2 - 1.0) / (d - 2.0 * delta0)
             + 2.0 * c ** 2 / (3.0 * d - 2.0 * delta0)
             + 1.0 / (2.0 * delta0 + d))
    if variant == "full":
        gamma2 = gamma1 + 2.0 * SQRT2 * c / (d - 2.0 * delta0)
        diag0 = delta1 + 2.0 * ct ** 2 / d
        diag2 = (-2.0 * ct ** 2 / d - 4.0 * ct ** 2 / (3.0 * d)
                 + (4.0 * c ** 2 + 1.0) / (d - 2.0 * delta0)
                 + 2.0 * c ** 2 / (3.0 * d - 2.0 * delta0)
                 - 2.0 / (2.0 * delta0 + d))
    else:  # printed
        gamma2 = gamma1 + 2.0 * SQRT2 * c / (d - delta0)
        diag0 = delta1 - delta2
        diag2 = (-4.0 * ct ** 2 / (3.0 * d)
                 - 2.0 / (2.0 * delta0 + d)
                 - 4.0 * c ** 2 / (2.0 * delta0 - d))
    return {"diag0": diag0, "diag2": diag2, "delta1": delta1, "delta2": delta2,
            "gamma1": gamma1, "gamma2": gamma2, "alpha": alpha}


def _coefficients_ml(delta0, omega, variant):
    c, ct = _cct(delta0, omega)
    d = transition_energy(Resonance.UN, delta0, omega)  # D_ML = D_UN
    cc = ct * ct - c * c
    k = cc * cc
    un = _coefficients_un(delta0, omega, variant)
    gamma2 = un["gamma1"]
    if variant == "full":
        diag0 = (2.0 * ct ** 2 / d
                 - 2.0 * c ** 2 / (3.0 * d - 2.0 * delta0)
                 - 1.0 / (d - 2.0 * delta0))
        diag2 = (-16.0 * c ** 2 * ct ** 2 / d - 10.0 * ct ** 2 / (3.0 * d)
                 - 2.0 * c ** 2 / (d - 2.0 * delta0)
                 - (4.0 * k + 4.0 * c ** 2) / (3.0 * d - 2.0 * delta0)
                 + 8.0 * k / (2.0 * delta0 - 5.0 * d))
        alpha = (8.0 * ct ** 2 / (3.0 * d)
                 - 2.0 * c ** 2 / (d - 2.0 * delta0)
                 - (4.0 * k + 2.0 * c ** 2) / (3.0 * d - 2.0 * delta0)
                 + 4.0 * k / (2.0 * delta0 - 5.0 * d))
    else:  # printed
        diag0 = un["delta1"] - un["delta2"]
        diag2 = (8.0 * k / (2.0 * delta0 - 5.0 * d)
                 - 4.0 * ct ** 2 / (3.0 * d)
                 + 4.0 * c ** 2 / (2.0 * delta0 - 3.0 * d)
                 - 32.0 * c ** 2 * ct ** 2 / d)
        alpha = -un["delta1"] + 0.5 * diag2 + 4.0 * ct ** 2 / (3.0 * d)
    return {"diag0": diag0, "diag2": diag2, "gamma2": gamma2, "alpha": alpha}


def _matrix_psi_channel(co):
    """NL/UN shape: competing gamma1 (Psi) and gamma2 (Phi) channels."""
    return np.array([
        [co["diag0"], co["gamma1"], co["gamma2"], 0.0],
        [co["gamma1"], co["diag2"], co["alpha"], 0.0],
        [co["gamma2"], co["alpha"], co["diag2"], 0.0],
        [0.0, 0.0, 0.0, co["diag2"]],
    ])


def _matrix_phi_channel(co):
    """UM/ML/MN shape: a single coupling into the Phi_- channel."""
    g = co["gamma2"]
    return np.array([
        [co["diag0"], 0.0, 0.0, g],
        [0.0, co["diag2"], co["alpha"], 0.0],
        [0.0, co["alpha"], co["diag2"], 0.0],
        [g, 0.0, 0.0, co["diag2"]],
    ])


def sw_closed_form(res: Resonance, delta0: float, omega: float,
                   variant: str = "full") -> SwEffectiveH:
    """Closed-form effective Hamiltonian (see module docstring for variants)."""
    if variant not in ("full", "printed", "leading"):
        raise ValueError(f"unknown variant {variant!r}")
    if omega <= 0:
        raise ValueError("omega must be positive for the closed forms")
    if variant == "leading" and res not in (Resonance.UL, Resonance.MN):
        raise ValueError(f"no leading-order form for the {res.value} resonance")
    if res is Resonance.UL:
        co = _coefficients_ul(delta0, omega, variant)
        matrix = np.array([
            [co["diag0"], co["gamma1"], -co["gamma2"], 0.0],
            [co["gamma1"], co["diag2"], co["alpha"], 0.0],
            [-co["gamma2"], co["alpha"], co["diag2"], 0.0],
            [0.0, 0.0, 0.0, co["diag2"]],
        ])
    elif res is Resonance.MN:
        co = _coefficients_mn(delta0, omega, variant)
        matrix = _matrix_phi_channel(co)
    elif res is Resonance.UM:
        co = _coefficients_um(delta0, omega, variant)
        matrix = _matrix_phi_channel(co)
    elif res is Resonance.ML:
        co = _coefficients_ml(delta0, omega, variant)
        matrix = _matrix_phi_channel(co)
    elif res is Resonance.NL:
        co = _coefficients_nl(delta0, omega, variant)
        matrix = _matrix_psi_channel(co)
    elif res is Resonance.UN:
        co = _coefficients_un(delta0, omega, variant)
        matrix = _matrix_psi_channel(co)
    else:
        raise ValueError(f"unknown resonance {res}")
    return SwEffectiveH(resonance=res, matrix=matrix, coefficients=co,
                        basis_labels=_basis_labels(res))


def shifted_resonances(delta0: float, omega: float,
                       variant: str = "full") -> tuple[float, float]:
    """Second-order-shifted positions of the UM and NL two-photon peaks.

    The diagonal elements of the effective Hamiltonians displace the bare
    condition delta = D_UM/2:

        delta_UM = (D_UM + diag0_UM - diag2_UM)/2
        delta_NL = (D_UM + diag0_NL - diag2_NL)/2

    Their order swaps at omega_m = sqrt(3) delta0, their midpoint sits near
    0.836 delta0 for omega = 30, delta0 = 20, and their difference vanishes
    as omega -> infinity.
    """
    d_um = transition_energy(Resonance.UM, delta0, omega)
    um = _coefficients_um(delta0, omega, variant)
    nl = _coefficients_nl(delta0, omega, variant)
    return (0.5 * (d_um + um["diag0"] - um["diag2"]),
            0.5 * (d_um + nl["diag0"] - nl["diag2"]))


def special_point_dm() -> np.ndarray:
    """Two-photon density matrix at the shifted UM/NL crossing.

    The equal mixture (1/2)|psi+><psi+| + (1/2)|psi-><psi-| of the
    factorizable states psi+- = (|H> +- i|V>)(|H> +- i|V>)/2; equals
    (1/2)[Psi_+ projector + Phi_- projector] and has zero concurrence.
    """
    return np.array([
        [0.25, 0.0, 0.0, -0.25],
        [0.0, 0.25, 0.25, 0.0],
        [0.0, 0.25, 0.25, 0.0],
        [-0.25, 0.0, 0.0, 0.25],
    ], dtype=complex)
