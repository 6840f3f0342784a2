import numpy as np
import pytest
import scipy.linalg

from flecavity.correlations import analytic_rho_approx
from flecavity.entanglement import (
    BellType, NumericalDegeneracyError, T_FLIP, analytic_concurrence, classify,
    concurrence, ratio_r,
)

RNG = np.random.default_rng(19)

PHI_PLUS = np.array([1, 0, 0, 1]) / np.sqrt(2)
PHI_MINUS = np.array([1, 0, 0, -1]) / np.sqrt(2)
PSI_PLUS = np.array([0, 1, 1, 0]) / np.sqrt(2)
PSI_MINUS = np.array([0, 1, -1, 0]) / np.sqrt(2)


def projector(psi):
    return np.outer(psi, psi.conj()).astype(complex)


def random_state_vector():
    psi = RNG.standard_normal(4) + 1j * RNG.standard_normal(4)
    return psi / np.linalg.norm(psi)


def random_single_photon_unitary():
    a = RNG.standard_normal((2, 2)) + 1j * RNG.standard_normal((2, 2))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def hermitian_route(rho):
    # cross-check: eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)) summed
    rho_t = T_FLIP @ rho.conj() @ T_FLIP
    root = scipy.linalg.sqrtm(rho)
    r = scipy.linalg.sqrtm(root @ rho_t @ root)
    lam = np.sort(np.linalg.eigvalsh(0.5 * (r + r.conj().T)))[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


class TestConcurrence:
    @pytest.mark.parametrize("bell", [PHI_PLUS, PHI_MINUS, PSI_PLUS, PSI_MINUS])
    def test_bell_states_maximal(self, bell):
        assert concurrence(projector(bell)).value == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed_zero(self):
        assert concurrence(np.eye(4, dtype=complex) / 4.0).value == 0.0

    def test_product_state_zero(self):
        one = np.array([1, 0], dtype=complex)
        plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
        psi = np.kron(one, plus)
        assert concurrence(projector(psi)).value == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("p", [0.2, 0.5, 1.0])
    def test_werner_states(self, p):
        rho = p * projector(PHI_PLUS) + (1 - p) * np.eye(4, dtype=complex) / 4.0
        expected = max(0.0, (3 * p - 1) / 2.0)
        assert concurrence(rho).value == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("r", [0.0, 0.5, 1.0, 2.0, 10.0])
    def test_resonance_state_closed_form(self, r):
        assert concurrence(analytic_rho_approx(r)).value == pytest.approx(
            analytic_concurrence(r), abs=1e-10)

    def test_cascade_limit(self):
        # only HH/VV occupations plus coherence: C = 2 |rho_{HH,VV}|
        for _ in range(10):
            pop = RNG.uniform(0.2, 0.8)
            coh = RNG.uniform(0.0, min(pop, 1 - pop)) * np.exp(2j * np.pi * RNG.uniform())
            rho = np.zeros((4, 4), dtype=complex)
            rho[0, 0], rho[3, 3] = pop, 1 - pop
            rho[0, 3], rho[3, 0] = coh, coh.conjugate()
            assert concurrence(rho).value == pytest.approx(2 * abs(coh), abs=1e-12)

    def test_local_unitary_invariance(self):
        for _ in range(100):
            rho = projector(random_state_vector())
            if RNG.uniform() < 0.5:
                rho = 0.6 * rho + 0.4 * projector(random_state_vector())
            u = np.kron(random_single_photon_unitary(), random_single_photon_unitary())
            rotated = u @ rho @ u.conj().T
            assert concurrence(rotated).value == pytest.approx(
                concurrence(rho).value, abs=1e-8)

    def test_matches_hermitian_route(self):
        for _ in range(20):
            rho = 0.5 * projector(random_state_vector()) + 0.5 * projector(random_state_vector())
            assert concurrence(rho).value == pytest.approx(hermitian_route(rho), abs=1e-8)

    def test_lambdas_sorted(self):
        res = concurrence(analytic_rho_approx(0.3))
        assert all(res.lambdas[i] >= res.lambdas[i + 1] for i in range(3))

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError):
            concurrence(np.eye(3, dtype=complex))

    def test_rejects_unphysical_spectrum(self):
        rho = np.diag([2.0, -1.0, 0.0, 0.0]).astype(complex)  # not a state
        with pytest.raises(NumericalDegeneracyError):
            concurrence(rho)


class TestClassify:
    def test_phi_minus(self):
        rho = projector(PHI_MINUS)
        assert classify(rho, concurrence(rho).value) is BellType.PHI

    def test_psi_plus(self):
        rho = projector(PSI_PLUS)
        assert classify(rho, concurrence(rho).value) is BellType.PSI

    def test_special_point_unclassified(self):
        rho = analytic_rho_approx(1.0)
        assert concurrence(rho).bell_type is BellType.NONE

    def test_threshold_configurable(self):
        rho = 0.05 * projector(PHI_PLUS) + 0.95 * np.eye(4, dtype=complex) / 4.0
        c = concurrence(rho).value
        assert classify(rho, c, threshold=1.0) is BellType.NONE


class TestClosedForms:
    def test_r_zero_crossing(self):
        # r = 0 at omega = delta0 / (2 sqrt(2))
        assert ratio_r(20.0 / (2 * np.sqrt(2)), 20.0) == pytest.approx(0.0, abs=1e-12)

    def test_r_special_point(self):
        assert ratio_r(np.sqrt(3.0 / 8.0) * 20.0, 20.0) == pytest.approx(1.0, abs=1e-12)

    def test_r_undriven(self):
        assert ratio_r(0.0, 20.0) == -0.5

    def test_c_of_r_limits(self):
        assert analytic_concurrence(0.0) == 1.0
        assert analytic_concurrence(1.0) == 0.0
        assert analytic_concurrence(1e6) == pytest.approx(1.0, abs=1e-11)

    def test_c_inversion_symmetry(self):
        for r in RNG.uniform(0.05, 20.0, size=25):
            assert analytic_concurrence(r) == pytest.approx(
                analytic_concurrence(1.0 / r), abs=1e-12)

    def test_matches_wootters_on_random_r(self):
        for r in RNG.uniform(-3.0, 3.0, size=50):
            assert concurrence(analytic_rho_approx(r)).value == pytest.approx(
                analytic_concurrence(r), abs=1e-10)
