"""Lindblad dissipators, Liouvillian superoperator, propagation, steady states.

The equation of motion is

    d rho/dt = L rho = -i [H, rho]
                + sum_{l=H,V} { D[a_l, kappa] + D[|G><X_l|, gamma]
                                + D[|X_l><XX|, gamma] } rho

with D[O, G] rho = (G/2)(2 O rho O^dag - rho O^dag O - O^dag O rho).

Two representations are kept: a matrix-free action (dense matrix products,
used for cheap single applications and residual checks) and a sparse
superoperator matrix in column-stacking convention,

    vec(L rho) = [ -i (I (x) H - H^T (x) I)
                   + sum G ( O* (x) O - 1/2 I (x) O^dag O - 1/2 (O^dag O)^T (x) I ) ] vec(rho),

used for time propagation and the direct steady-state solve. Propagation is
fixed-step RK4; by default the step is capped by a spectral-radius estimate
of L so the integration stays inside the RK4 stability region. The
propagator is linear, so it accepts general (non-Hermitian, non-normalized)
seed matrices such as the a_l rho a_j^dag needed for two-time correlations.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import hilbert, model
from .hilbert import G, SpaceDescriptor, X_H, X_V, XX
from .model import SystemParams

DEFAULT_STEP = 0.01  # RK4 step in hbar/g
RK4_STABILITY = 2.5  # conservative |lambda*h| cap (imaginary-axis limit ~2.83)


class IntegrationError(RuntimeError):
    """RK4 propagation became unstable (trace drift detected)."""


class SteadyStateError(RuntimeError):
    """Steady-state search failed to reach the residual tolerance."""


def dissipator(op: np.ndarray, rate: float, rho: np.ndarray) -> np.ndarray:
    """Lindblad dissipator action (rate/2)(2 O rho O^dag - rho O^dag O - O^dag O rho)."""
    if rate < 0:
        raise ValueError("dissipation rate must be non-negative")
    if op.shape != rho.shape:
        raise ValueError("dimension mismatch between operator and state")
    od = op.conj().T
    odo = od @ op
    return 0.5 * rate * (2.0 * (op @ rho @ od) - rho @ odo - odo @ rho)


@dataclass(eq=False)
class Liouvillian:
    """Generator of the dissipative dynamics for one parameter point."""

    h: np.ndarray
    collapse: list  # [(operator, rate), ...]
    params: SystemParams
    space: SpaceDescriptor
    _k: np.ndarray = field(init=False, repr=False)  # -iH - (1/2) sum G O^dag O
    _super: sp.csr_matrix | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        acc = -1j * self.h.astype(complex)
        for op, rate in self.collapse:
            acc -= 0.5 * rate * (op.conj().T @ op)
        self._k = acc

    @property
    def dim(self) -> int:
        return self.h.shape[0]

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Matrix-free action L[rho] = K rho + rho K^dag + sum G O rho O^dag."""
        out = self._k @ rho + rho @ self._k.conj().T
        for op, rate in self.collapse:
            if rate != 0.0:
                out += rate * (op @ rho @ op.conj().T)
        return out

    def superoperator(self) -> sp.csr_matrix:
        """Sparse superoperator matrix (column-stacking convention), cached."""
        if self._super is None:
            d = self.dim
            eye = sp.identity(d, format="csr", dtype=complex)
            hs = sp.csr_matrix(self.h)
            s = -1j * (sp.kron(eye, hs, format="csr") - sp.kron(hs.T, eye, format="csr"))
            for op, rate in self.collapse:
                if rate == 0.0:
                    continue
                os = sp.csr_matrix(op)
                odo = sp.csr_matrix(op.conj().T @ op)
                s = s + rate * (
                    sp.kron(os.conj(), os, format="csr")
                    - 0.5 * sp.kron(eye, odo, format="csr")
                    - 0.5 * sp.kron(odo.T, eye, format="csr")
                )
            self._super = s.tocsr()
        return self._super

    def vec(self, rho: np.ndarray) -> np.ndarray:
        return rho.reshape(-1, order="F")

    def unvec(self, y: np.ndarray) -> np.ndarray:
        return y.reshape((self.dim, self.dim), order="F")

    def spectral_bound(self) -> float:
        """Cheap upper estimate of the spectral radius of L (units g/hbar).

        Gershgorin bounds on H give the commutator spread; the dissipative
        part adds at most twice the largest total jump rate.
        """
        diag = np.real(np.diag(self.h))
        radii = np.sum(np.abs(self.h), axis=1) - np.abs(np.diag(self.h))
        spread = np.max(diag + radii) - np.min(diag - radii)
        jump = 0.0
        for op, rate in self.collapse:
            jump += rate * np.max(np.real(np.diag(op.conj().T @ op)))
        return spread + 2.0 * jump

    def default_step(self) -> float:
        """RK4 step: the configured default, capped by the stability bound."""
        bound = self.spectral_bound()
        if bound <= 0.0:
            return DEFAULT_STEP
        return min(DEFAULT_STEP, RK4_STABILITY / bound)


def liouvillian(params: SystemParams, space: SpaceDescriptor | None = None) -> Liouvillian:
    """Assemble the Liouvillian: coherent part plus the six loss channels."""
    if space is None:
        space = params.space()
    h = model.hamiltonian(params, space)
    collapse = [
        (hilbert.a_h(space), params.kappa),
        (hilbert.a_v(space), params.kappa),
        (hilbert.embed_emitter(hilbert.transition(G, X_H), space), params.gamma),
        (hilbert.embed_emitter(hilbert.transition(G, X_V), space), params.gamma),
        (hilbert.embed_emitter(hilbert.transition(X_H, XX), space), params.gamma),
        (hilbert.embed_emitter(hilbert.transition(X_V, XX), space), params.gamma),
    ]
    return Liouvillian(h=h, collapse=collapse, params=params, space=space)


def rk4_evolve(lmat: sp.csr_matrix, y: np.ndarray, t: float, h: float) -> np.ndarray:
    """Evolve vectorized state(s) y (shape (d^2,) or (d^2, k)) by exp(L t) via RK4.

    The step is shrunk so an integer number of steps lands exactly on t.
    """
    if t == 0.0:
        return y.copy()
    n_steps = max(1, int(np.ceil(t / h - 1e-12)))
    dt = t / n_steps
    for _ in range(n_steps):
        k1 = lmat @ y
        k2 = lmat @ (y + 0.5 * dt * k1)
        k3 = lmat @ (y + 0.5 * dt * k2)
        k4 = lmat @ (y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def propagate(liou: Liouvillian, rho0: np.ndarray, t: float,
              h: float | None = None) -> np.ndarray:
    """Propagate rho0 by time t (hbar/g) under the Liouvillian.

    ``h = None`` uses the stability-capped default step. Accepts general
    matrices (correlation seeds); for trace-class inputs a trace drift
    beyond 1e-4 raises IntegrationError (use a smaller step).
    """
    if t < 0:
        raise ValueError("propagation time must be non-negative")
    if t == 0.0:
        return rho0.copy()
    if h is None:
        h = liou.default_step()
    lmat = liou.superoperator()
    y = rk4_evolve(lmat, liou.vec(rho0.astype(complex)), t, h)
    rho = liou.unvec(y)
    tr0, tr1 = np.trace(rho0), np.trace(rho)
    if abs(tr1 - tr0) > 1e-4 * max(1.0, abs(tr0)):
        raise IntegrationError(
            f"trace drifted by {abs(tr1 - tr0):.3e} over t={t}; reduce the step h={h:.4g}"
        )
    return rho


def ground_state(space: SpaceDescriptor) -> np.ndarray:
    """|G, 0, 0><G, 0, 0| on the full space."""
    rho = np.zeros((space.dim_total, space.dim_total), dtype=complex)
    idx = space.index(G, 0, 0)
    rho[idx, idx] = 1.0
    return rho


def residual(liou: Liouvillian, rho: np.ndarray) -> float:
    """max |(L rho)_ij|, the stationarity defect."""
    return float(np.max(np.abs(liou.apply(rho))))


def steady_state(liou: Liouvillian, method: str = "solve",
                 tol: float = 1e-10, **kwargs) -> np.ndarray:
    """Stationary state rho_s with L rho_s = 0 and Tr rho_s = 1.

    method="solve" (default): direct sparse solve of the vectorized system
    with one row replaced by the trace constraint, plus iterative
    refinement; falls back to propagation if the residual misses ``tol``.
    method="propagate": evolve |G,0,0> until stationary (reference method).
    """
    if liou.params.kappa == 0.0 and liou.params.gamma == 0.0:
        raise ValueError("steady state requires a dissipative system (kappa or gamma > 0)")
    if method == "solve":
        rho = _steady_state_solve(liou)
        res = residual(liou, rho)
        if res <= tol:
            return rho
        rho = steady_state_propagation(liou, **kwargs)
        res = residual(liou, rho)
        if res > tol:
            raise SteadyStateError(f"steady-state residual {res:.3e} exceeds {tol:.1e}")
        return rho
    if method == "propagate":
        rho = steady_state_propagation(liou, **kwargs)
        res = residual(liou, rho)
        if res > tol:
            raise SteadyStateError(f"steady-state residual {res:.3e} exceeds {tol:.1e}")
        return rho
    raise ValueError(f"unknown steady-state method {method!r}")


def _steady_state_solve(liou: Liouvillian) -> np.ndarray:
    d = liou.dim
    a = liou.superoperator().tolil(copy=True)
    # replace the first row by the trace functional: sum_i rho_ii = 1
    a[0, :] = 0.0
    a[0, np.arange(d) * (d + 1)] = 1.0
    a = a.tocsc()
    b = np.zeros(d * d, dtype=complex)
    b[0] = 1.0
    lu = spla.splu(a)
    x = lu.solve(b)
    for _ in range(2):  # iterative refinement
        r = b - a @ x
        if np.max(np.abs(r)) < 1e-14:
            break
        x = x + lu.solve(r)
    rho = liou.unvec(x)
    rho = 0.5 * (rho + rho.conj().T)
    rho /= np.trace(rho).real
    return rho


def steady_state_propagation(liou: Liouvillian, stat_tol: float = 1e-12,
                             check_interval: float = 10.0,
                             max_time: float = 20000.0,
                             h: float | None = None) -> np.ndarray:
    """Evolve |G,0,0> until max|rho(t+dt) - rho(t)| < stat_tol between checks.

    The check spacing (default 10 hbar/g) resolves the slowest rate in the
    standard parameter set (gamma = 0.01 g/hbar).
    """
    if h is None:
        h = liou.default_step()
    lmat = liou.superoperator()
    y = liou.vec(ground_state(liou.space))
    t = 0.0
    while t < max_time:
        y_next = rk4_evolve(lmat, y, check_interval, h)
        t += check_interval
        if np.max(np.abs(y_next - y)) < stat_tol:
            rho = liou.unvec(y_next)
            rho = 0.5 * (rho + rho.conj().T)
            rho /= np.trace(rho).real
            return rho
        y = y_next
    raise SteadyStateError(
        f"not stationary after t={max_time} hbar/g (last change "
        f"{np.max(np.abs(y_next - y)):.3e} > {stat_tol:.1e})"
    )


def mean_photon_number(rho: np.ndarray, space: SpaceDescriptor) -> float:
    """<a_H^dag a_H + a_V^dag a_V> in the given state."""
    return float(np.real(hilbert.expectation(hilbert.number_operator(space), rho)))
