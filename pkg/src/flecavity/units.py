"""Unit conversions at the package boundary.

All internal energies are expressed in units of the emitter-cavity coupling g
and times in units of hbar/g. Conversions from laboratory units (meV, ps)
need the physical value of g in meV.
"""

HBAR_MEV_PS = 0.658212  # hbar in meV*ps


def ps_to_gunits(t_ps: float, g_mev: float) -> float:
    """Convert a time in ps to units of hbar/g."""
    return t_ps * g_mev / HBAR_MEV_PS


def gunits_to_ps(t_g: float, g_mev: float) -> float:
    """Convert a time in units of hbar/g to ps."""
    return t_g * HBAR_MEV_PS / g_mev


def mev_to_gunits(e_mev: float, g_mev: float) -> float:
    """Convert an energy in meV to units of g."""
    return e_mev / g_mev
