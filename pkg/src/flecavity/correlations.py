"""Two-time photon correlations and the reconstructed two-photon density matrix.

The polarization-resolved coincidence signal in the steady state is

    G2_{jk,lm}(tau') = < a_j^dag(0) a_k^dag(tau') a_m(tau') a_l(0) >_ss
                     = Tr{ a_k^dag a_m  e^{L tau'}[ a_l rho_s a_j^dag ] },

evaluated by the quantum regression theorem: seed matrices a_l rho_s a_j^dag
are propagated with the same Liouvillian as states (they are neither positive
nor normalized, which is fine since L is linear). Averaging over a delay
window tau and normalizing gives the two-photon density matrix

    rho2p_{jk,lm}(tau) = Gbar_{jk,lm}(tau) / Tr Gbar(tau),
    Gbar_{jk,lm}(tau) = (1/tau) int_0^tau dtau' G2_{jk,lm}(tau').

Pair indices are ordered (HH, HV, VH, VV) with the FIRST letter the earlier
detection; |HV> and |VH> differ by temporal order. The real-time average over
(t0, dt) drops out in the steady state, so only the tau' integral is done.
"""

from dataclasses import dataclass

import numpy as np

from . import hilbert
from .lindblad import Liouvillian, residual, rk4_evolve

H, V = 0, 1
PAIR_LABELS = ("HH", "HV", "VH", "VV")

STATIONARITY_TOL = 1e-8


class DegenerateSignalError(RuntimeError):
    """No two-photon emission: Tr Gbar vanishes, rho2p undefined."""


@dataclass(frozen=True, eq=False)
class G2Matrix:
    """Delay-averaged correlation matrix Gbar_{jk,lm} over polarization pairs.

    entries[2j+k, 2l+m] = Gbar_{jk,lm}; Hermitian in the pair indices; the
    diagonal holds the (non-negative) coincidence rates.
    """

    entries: np.ndarray  # (4, 4) complex
    tau_window: float  # delay window in hbar/g
    n_tau: int  # quadrature nodes


def _check_stationary(liou: Liouvillian, rho_s: np.ndarray):
    res = residual(liou, rho_s)
    if res > STATIONARITY_TOL:
        raise ValueError(
            f"rho_s is not stationary: max|L rho_s| = {res:.3e} > {STATIONARITY_TOL:.1e}"
        )


def _mode_ops(liou: Liouvillian) -> list[np.ndarray]:
    return [hilbert.a_h(liou.space), hilbert.a_v(liou.space)]


def _seed_block(liou: Liouvillian, rho_s: np.ndarray) -> np.ndarray:
    """Stack the four seeds a_l rho_s a_j^dag as columns (column index 2j+l)."""
    a = _mode_ops(liou)
    cols = []
    for j in (H, V):
        for l in (H, V):
            cols.append(liou.vec(a[l] @ rho_s @ a[j].conj().T))
    return np.stack(cols, axis=1)


def _readout_block(liou: Liouvillian) -> np.ndarray:
    """Rows vec((a_k^dag a_m)^T), so that row @ vec(X) = Tr(a_k^dag a_m X)."""
    a = _mode_ops(liou)
    rows = []
    for k in (H, V):
        for m in (H, V):
            rows.append(liou.vec((a[k].conj().T @ a[m]).T))
    return np.stack(rows, axis=0)


def _assemble(g_block: np.ndarray) -> np.ndarray:
    """Reindex readout (2k+m) x seed (2j+l) into pair form (2j+k) x (2l+m)."""
    return g_block.reshape(2, 2, 2, 2).transpose(2, 0, 3, 1).reshape(4, 4)


def g2(liou: Liouvillian, rho_s: np.ndarray, j: int, k: int, l: int, m: int,
       tau: float, h: float | None = None) -> complex:
    """Single steady-state correlation G2_{jk,lm}(tau) via quantum regression.

    At tau = 0 this equals the normally ordered fourth moment
    Tr{a_j^dag a_k^dag a_m a_l rho_s}.
    """
    _check_stationary(liou, rho_s)
    a = _mode_ops(liou)
    seed = a[l] @ rho_s @ a[j].conj().T
    if tau > 0.0:
        if h is None:
            h = liou.default_step()
        seed = liou.unvec(rk4_evolve(liou.superoperator(), liou.vec(seed), tau, h))
    return complex(np.trace(a[k].conj().T @ a[m] @ seed))


def averaged_g2(liou: Liouvillian, rho_s: np.ndarray, tau_window: float,
                n_tau: int = 200, h: float | None = None) -> G2Matrix:
    """Delay-averaged Gbar(tau) = (1/tau) int_0^tau dtau' G2(tau').

    Trapezoidal quadrature on n_tau uniform nodes. All 16 matrix elements
    come from the same four seed propagations: each seed a_l rho_s a_j^dag
    is advanced once across the grid and read out with the four operators
    a_k^dag a_m at every node.
    """
    if tau_window <= 0.0:
        raise ValueError("tau_window must be positive")
    if n_tau < 2:
        raise ValueError("need at least two quadrature nodes")
    _check_stationary(liou, rho_s)
    if h is None:
        h = liou.default_step()
    lmat = liou.superoperator()
    seeds = _seed_block(liou, rho_s)
    readout = _readout_block(liou)
    dtau = tau_window / (n_tau - 1)
    weights = np.full(n_tau, dtau)
    weights[0] = weights[-1] = 0.5 * dtau
    acc = np.zeros((4, 4), dtype=complex)
    for i in range(n_tau):
        if i > 0:
            seeds = rk4_evolve(lmat, seeds, dtau, h)
        acc += weights[i] * _assemble(readout @ seeds)
    entries = acc / tau_window
    entries = 0.5 * (entries + entries.conj().T)  # exact symmetry, drop roundoff
    return G2Matrix(entries=entries, tau_window=tau_window, n_tau=n_tau)


def _normalize(entries: np.ndarray) -> np.ndarray:
    tr = np.trace(entries).real
    if tr <= 1e-15:
        raise DegenerateSignalError(f"two-photon signal trace {tr:.3e} is not positive")
    rho = entries / tr
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def two_photon_dm(g2m: G2Matrix) -> np.ndarray:
    """Normalized two-photon density matrix rho2p = Gbar / Tr Gbar."""
    return _normalize(g2m.entries)


def approx_two_photon_dm(liou: Liouvillian, rho_s: np.ndarray) -> np.ndarray:
    """Small-delay-window limit: rho2p_{jk,lm} ~ N Tr{a_m a_l rho_s a_j^dag a_k^dag}.

    The tau -> 0 limit of the full reconstruction; needs no propagation.
    """
    _check_stationary(liou, rho_s)
    seeds = _seed_block(liou, rho_s)
    readout = _readout_block(liou)
    return _normalize(_assemble(readout @ seeds))


def analytic_rho_approx(r: float) -> np.ndarray:
    """Closed-form two-photon density matrix at the two-photon U|L resonance.

    Derived from the single coupled superposition of |L,1,1> and |L,Phi_+>
    with weight ratio r; basis (HH, HV, VH, VV).
    """
    if not np.isfinite(r):
        raise ValueError("r must be finite")
    m = np.array([
        [1.0, -r, -r, 1.0],
        [-r, r * r, r * r, -r],
        [-r, r * r, r * r, -r],
        [1.0, -r, -r, 1.0],
    ], dtype=complex)
    return m / (2.0 * (1.0 + r * r))
