"""Self-consistent gap equation and electron-phonon coupling from spectra.

The homogeneous weak-coupling gap solves 1 = lambda * asinh(hw_D / Delta);
the solver works on the residual with a bracketing root finder rather than
trusting the sinh closed form, so the two routes stay independent checks
of each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import GapSolution
from .errors import ConvergenceError

# Dimensionless bracket floor: gaps below 1e-12 * hw_D are reported as underflow.
_BRACKET_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class PhononSpectrum:
    """Tabulated alpha^2(w) * N_ph(w) on a strictly ascending frequency grid."""

    frequencies: np.ndarray
    alpha2N: np.ndarray

    def __post_init__(self):
        freq = np.array(self.frequencies, dtype=float)
        a2n = np.array(self.alpha2N, dtype=float)
        object.__setattr__(self, "frequencies", freq)
        object.__setattr__(self, "alpha2N", a2n)
        if freq.ndim != 1 or freq.shape != a2n.shape or freq.size < 2:
            raise ValueError("spectrum needs two equal-length columns with >= 2 rows")
        if not (np.all(np.isfinite(freq)) and np.all(np.isfinite(a2n))):
            raise ValueError("spectrum values must be finite")
        if np.any(freq <= 0):
            raise ValueError("frequencies must be positive")
        if np.any(np.diff(freq) <= 0):
            raise ValueError("frequencies must be strictly ascending")
        if np.any(a2n < 0):
            raise ValueError("alpha2N values must be >= 0")
        freq.setflags(write=False)
        a2n.setflags(write=False)


def _residual(y: float, coupling: float) -> float:
    # y = Delta / hw_D; the fixed point satisfies coupling * asinh(1/y) = 1.
    return coupling * math.asinh(1.0 / y) - 1.0


def solve_gap(coupling: float, debye_energy: float, tol: float = 1e-12,
              max_iter: int = 200) -> GapSolution:
    """Solve 1 = lambda * asinh(hw_D / Delta) for the homogeneous gap.

    Uses a bracketing bisection/secant hybrid on the dimensionless residual
    (initial bracket [1e-12, 1], expanded upward for strong coupling where
    Delta exceeds hw_D).  Couplings too small for the bracket floor return
    gap = 0 with the underflow flag set and an infinite residual.
    """
    if not coupling > 0:
        raise ValueError("coupling must be > 0")
    if not debye_energy > 0:
        raise ValueError("debye_energy must be > 0")
    if not tol > 0:
        raise ValueError("tol must be > 0")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")

    lo = _BRACKET_FLOOR
    if _residual(lo, coupling) <= 0.0:
        return GapSolution(gap=0.0, iterations=0, residual=math.inf, underflow=True)
    hi = 1.0
    expansions = 0
    while _residual(hi, coupling) > 0.0:
        hi *= 2.0
        expansions += 1
        if expansions > 60:
            raise ConvergenceError("could not bracket the gap residual", best=None)

    y, info = brentq(_residual, lo, hi, args=(coupling,), xtol=1e-300,
                     rtol=4 * np.finfo(float).eps, maxiter=max_iter,
                     full_output=True, disp=False)
    residual = abs(_residual(y, coupling))
    solution = GapSolution(gap=y * debye_energy, iterations=info.iterations,
                           residual=residual)
    if not info.converged or residual > tol:
        raise ConvergenceError(
            f"gap iteration stopped at residual {residual:.3e} > tol {tol:.3e}",
            best=solution,
        )
    return solution


def coupling_from_spectrum(spectrum: PhononSpectrum) -> float:
    """Electron-phonon coupling 2 * int alpha^2(w) N_ph(w) / w dw.

    Trapezoidal quadrature over the tabulated points only; no
    extrapolation outside the table.
    """
    return 2.0 * float(np.trapezoid(spectrum.alpha2N / spectrum.frequencies,
                                    spectrum.frequencies))


def load_phonon_spectrum(path) -> PhononSpectrum:
    """Read a two-column (w, alpha^2 N) text table; '#' starts a comment."""
    data = np.loadtxt(path, comments="#", ndmin=2)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError(f"{path}: expected exactly two numeric columns")
    return PhononSpectrum(frequencies=data[:, 0], alpha2N=data[:, 1])
