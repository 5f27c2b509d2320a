"""Domain types, unit conventions, and the pair-amplitude formulas.

The mathematical core is unit-agnostic (everything enters through ratios);
the materials path uses electron-volts throughout, with kelvin inputs
converted via the Boltzmann constant below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MissingDataError

# Boltzmann constant in eV/K (CODATA, exact).
K_B_EV_PER_K = 8.617333262e-5

# Weak-coupling zero-temperature gap over k_B*Tc.
BCS_GAP_TC_RATIO = 1.764


@dataclass(frozen=True)
class MaterialParams:
    """Experimentally accessible inputs for one superconducting material.

    dos_fermi is the density of states at the Fermi level in states/eV
    (per spin, per whatever normalization cell the data source declares);
    debye_energy is the phonon cut-off in eV.  At least one route to the
    zero-temperature gap must be present: an explicit ``gap`` in eV, a
    critical temperature ``tc`` in kelvin, or a dimensionless
    electron-phonon coupling ``lambda_ep``.
    """

    name: str
    dos_fermi: float
    debye_energy: float
    gap: float | None = None
    tc: float | None = None
    lambda_ep: float | None = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("material name must be non-empty")
        if not self.dos_fermi > 0:
            raise ValueError(f"material {self.name!r}: dos_fermi must be > 0")
        if not self.debye_energy > 0:
            raise ValueError(f"material {self.name!r}: debye_energy must be > 0")
        if self.gap is None and self.tc is None and self.lambda_ep is None:
            raise ValueError(
                f"material {self.name!r}: need at least one of gap, tc, lambda_ep"
            )
        if self.gap is not None and not 0.0 <= self.gap < self.debye_energy:
            raise ValueError(
                f"material {self.name!r}: gap must satisfy 0 <= gap < debye_energy"
            )
        if self.tc is not None and not self.tc > 0:
            raise ValueError(f"material {self.name!r}: tc must be > 0")
        if self.lambda_ep is not None and not self.lambda_ep > 0:
            raise ValueError(f"material {self.name!r}: lambda_ep must be > 0")


@dataclass(frozen=True)
class DimensionlessPair:
    """Cut-off number n1 = N(eF)*hw_D and gap number n2 = N(eF)*Delta."""

    n1: float
    n2: float

    def __post_init__(self):
        if not self.n1 > 0:
            raise ValueError("cut-off number n1 must be > 0")
        if not self.n2 >= 0:
            raise ValueError("gap number n2 must be >= 0")


@dataclass(frozen=True, eq=False)
class BcsAmplitudes:
    """Pair amplitudes u_k^2, v_k^2 and quasiparticle energies on an energy grid.

    Energies are measured from the chemical potential.  Normalization
    u_k^2 + v_k^2 = 1 holds per mode within 1e-12.
    """

    energies: np.ndarray
    u2: np.ndarray
    v2: np.ndarray
    quasiparticle_energies: np.ndarray

    def __post_init__(self):
        arrays = {}
        for field in ("energies", "u2", "v2", "quasiparticle_energies"):
            arr = np.array(getattr(self, field), dtype=float)  # owned copy
            object.__setattr__(self, field, arr)
            arrays[field] = arr
        n = arrays["energies"].shape
        if len(n) != 1 or n[0] == 0:
            raise ValueError("amplitude arrays must be 1-d and non-empty")
        if any(a.shape != n for a in arrays.values()):
            raise ValueError("amplitude arrays must have equal length")
        if not all(np.all(np.isfinite(a)) for a in arrays.values()):
            raise ValueError("amplitude arrays must be finite")
        if np.any(self.u2 < 0) or np.any(self.u2 > 1) or np.any(self.v2 < 0) or np.any(self.v2 > 1):
            raise ValueError("u2 and v2 must lie in [0, 1]")
        if np.max(np.abs(self.u2 + self.v2 - 1.0)) > 1e-12:
            raise ValueError("u2 + v2 must equal 1 within 1e-12 per mode")
        if np.any(self.quasiparticle_energies < np.abs(self.energies)):
            raise ValueError("quasiparticle energies must satisfy E >= |eps|")
        for arr in arrays.values():
            arr.setflags(write=False)

    def __len__(self):
        return self.energies.shape[0]


@dataclass(frozen=True)
class GapSolution:
    """Converged gap with solver diagnostics.

    ``underflow`` flags the regime where the gap falls below the solver's
    bracket floor; the gap is then reported as exactly 0 and the residual
    is infinite.
    """

    gap: float
    iterations: int
    residual: float
    underflow: bool = False

    def __post_init__(self):
        if not self.gap >= 0:
            raise ValueError("gap must be >= 0")


def bcs_amplitudes(energies, gap: float) -> BcsAmplitudes:
    """Evaluate u_k^2 = (1 + eps/E)/2, v_k^2 = (1 - eps/E)/2, E = sqrt(eps^2 + gap^2).

    At the degenerate point eps = 0, gap = 0 the convention u^2 = v^2 = 1/2
    is applied (continuity from eps = 0, gap -> 0+).
    """
    eps = np.atleast_1d(np.asarray(energies, dtype=float))
    if eps.ndim != 1 or eps.size == 0:
        raise ValueError("energies must be a non-empty 1-d array")
    if not np.all(np.isfinite(eps)):
        raise ValueError("energies must be finite")
    if not (math.isfinite(gap) and gap >= 0):
        raise ValueError("gap must be finite and >= 0")
    eq = np.hypot(eps, gap)
    ratio = np.divide(eps, eq, out=np.zeros_like(eps), where=eq > 0)
    # Computing both halves symmetrically makes u2(-eps) == v2(eps) bitwise.
    u2 = 0.5 * (1.0 + ratio)
    v2 = 0.5 * (1.0 - ratio)
    return BcsAmplitudes(energies=eps, u2=u2, v2=v2, quasiparticle_energies=eq)


def dos_parabolic(volume: float, mass: float, fermi_wavevector: float,
                  hbar: float = 1.0) -> float:
    """Density of states at the Fermi level for a parabolic band.

    Returns V*m*k_F / (2*pi^2*hbar^2); per spin, in whatever consistent
    unit system the arguments are expressed in (hbar defaults to 1).
    """
    for label, val in (("volume", volume), ("mass", mass),
                       ("fermi_wavevector", fermi_wavevector), ("hbar", hbar)):
        if not val > 0:
            raise ValueError(f"{label} must be > 0")
    return volume * mass * fermi_wavevector / (2.0 * math.pi**2 * hbar**2)


def gap_from_coupling(coupling: float, debye_energy: float) -> float:
    """Weak-coupling gap hw_D / sinh(1/lambda), in a form stable for tiny lambda."""
    if not coupling > 0:
        raise ValueError("coupling must be > 0")
    if not debye_energy > 0:
        raise ValueError("debye_energy must be > 0")
    e = math.exp(-1.0 / coupling)
    return 2.0 * debye_energy * e / (1.0 - e * e)


def resolve_gap(params: MaterialParams) -> float:
    """Resolve the zero-temperature gap in eV.

    Precedence: explicit gap, then tc via the weak-coupling ratio
    1.764*k_B*Tc, then lambda_ep via the weak-coupling gap formula.
    """
    if params.gap is not None:
        return params.gap
    if params.tc is not None:
        return BCS_GAP_TC_RATIO * K_B_EV_PER_K * params.tc
    if params.lambda_ep is not None:
        return gap_from_coupling(params.lambda_ep, params.debye_energy)
    raise MissingDataError(
        f"material {params.name!r}: no gap, tc, or lambda_ep to derive the gap from"
    )


def dimensionless_numbers(params: MaterialParams) -> DimensionlessPair:
    """Cut-off and gap numbers (n1, n2) = N(eF)*(hw_D, Delta) for a material."""
    gap = resolve_gap(params)
    return DimensionlessPair(n1=params.dos_fermi * params.debye_energy,
                             n2=params.dos_fermi * gap)
