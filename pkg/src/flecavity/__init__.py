"""Simulator for a constantly driven four-level emitter in a lossy two-mode cavity.

Computes steady-state photon statistics, delay-averaged two-photon density
matrices and their Wootters concurrence, and compares against dressed-state
and effective-Hamiltonian analytics.
"""

from .entanglement import BellType, ConcurrenceResult, analytic_concurrence, concurrence, ratio_r
from .correlations import G2Matrix, analytic_rho_approx, averaged_g2, two_photon_dm
from .hilbert import SpaceDescriptor
from .lindblad import Liouvillian, liouvillian, mean_photon_number, propagate, steady_state
from .model import DressedBasis, Resonance, SystemParams, dressed_basis, resonance_detuning, special_points
from .swt import SwEffectiveH, shifted_resonances, sw_closed_form, sw_generic

__version__ = "0.1.0"

__all__ = [
    "BellType", "ConcurrenceResult", "DressedBasis", "G2Matrix", "Liouvillian",
    "Resonance", "SpaceDescriptor", "SwEffectiveH", "SystemParams",
    "analytic_concurrence", "analytic_rho_approx", "averaged_g2", "concurrence",
    "dressed_basis", "liouvillian", "mean_photon_number", "propagate",
    "ratio_r", "resonance_detuning", "shifted_resonances", "special_points",
    "steady_state", "sw_closed_form", "sw_generic", "two_photon_dm",
    "__version__",
]
