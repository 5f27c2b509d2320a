"""Concurrence of the pair condensate and the pairing entanglement (MEP).

The total concurrence is the product of per-mode factors |u_k^2 - v_k^2|;
in the continuum limit it has a closed form in the cut-off number n1 and
gap number n2.  An adaptive-quadrature evaluation of the same continuum
exponent is provided as an independent cross-check of the closed form.
MEP is the Fermi-sea-referenced entanglement 1 - C.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import tanhsinh

from .core import BcsAmplitudes, DimensionlessPair
from .errors import ConvergenceError

# Absolute tolerance on the log-concurrence integral, split over panels.
_QUAD_ATOL = 0.5e-12
_QUAD_MAX_LEVEL = 12


class Method(enum.Enum):
    """How a concurrence value was obtained."""

    DISCRETE_PRODUCT = "discrete-product"
    CLOSED_FORM = "closed-form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class ConcurrenceResult:
    """A concurrence value in [0, 1] together with its natural log.

    ``log_value`` is finite when the value is positive and representable;
    a -inf sentinel marks an exact zero from a vanishing product factor.
    """

    value: float
    log_value: float
    method: Method

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError("concurrence value must lie in [0, 1]")
        if self.value > 0.0 and abs(math.exp(self.log_value) - self.value) > 1e-12:
            raise ValueError("log_value inconsistent with value")


def partial_concurrence(epsilon: float, gap: float) -> float:
    """Per-mode concurrence |eps| / sqrt(eps^2 + gap^2).

    The gapless case returns 1 for every eps, including eps = 0 (the
    normal-metal limit is taken first; the point eps = gap = 0 is a
    removable discontinuity of the amplitude-level 1/2,1/2 convention).
    """
    if gap < 0:
        raise ValueError("gap must be >= 0")
    if gap == 0.0:
        return 1.0
    return abs(epsilon) / math.hypot(epsilon, gap)


def concurrence_discrete(amplitudes: BcsAmplitudes) -> ConcurrenceResult:
    """Product of |u_k^2 - v_k^2| over the mode grid.

    Accumulated as exp(sum of logs) in fixed left-to-right order; any
    exactly-zero factor short-circuits to value 0 with a -inf log.
    """
    diffs = np.abs(amplitudes.u2 - amplitudes.v2)
    if diffs.size == 0:
        raise ValueError("empty mode grid")
    log_sum = 0.0
    for d in diffs.tolist():
        if d == 0.0:
            return ConcurrenceResult(0.0, float("-inf"), Method.DISCRETE_PRODUCT)
        log_sum += math.log(d)
    # Normalization slack of order 1e-12 per mode can push the product a
    # hair above 1; the value is clamped to the unit interval.
    log_sum = min(log_sum, 0.0)
    return ConcurrenceResult(math.exp(log_sum), log_sum, Method.DISCRETE_PRODUCT)


def _log_closed_form(n1: float, n2: float) -> float:
    if not n1 > 0:
        raise ValueError("cut-off number n1 must be > 0")
    if not n2 >= 0:
        raise ValueError("gap number n2 must be >= 0")
    if n2 == 0.0:
        return 0.0
    if n2 <= n1:
        width = -0.5 * n1 * math.log1p((n2 / n1) ** 2)
    else:
        width = -n1 * (math.log(n2 / n1) + 0.5 * math.log1p((n1 / n2) ** 2))
    return width - n2 * math.atan(n1 / n2)


def concurrence_closed_form(numbers: DimensionlessPair) -> ConcurrenceResult:
    """Continuum-limit concurrence [1 + (n2/n1)^2]^(-n1/2) * exp(-n2*arctan(n1/n2)).

    The gapless point n2 = 0 returns exactly 1 (the arctan argument is
    singular there; the limit is 1).
    """
    log_c = _log_closed_form(numbers.n1, numbers.n2)
    return ConcurrenceResult(math.exp(log_c), log_c, Method.CLOSED_FORM)


def _log_integrand(x, n2):
    return np.log(x / np.hypot(x, n2))


def log_concurrence_quadrature(numbers: DimensionlessPair,
                               rel_tol: float = 1e-13) -> float:
    """ln C evaluated by adaptive quadrature of int_0^n1 ln(x/sqrt(x^2+n2^2)) dx.

    The domain is split at x = n2 and each panel is integrated with a
    double-exponential (tanh-sinh) rule, which absorbs the integrable
    logarithmic singularity at x = 0.  Raises ConvergenceError carrying
    the best estimate if the subdivision budget is exhausted.
    """
    n1, n2 = numbers.n1, numbers.n2
    if not n1 > 0:
        raise ValueError("cut-off number n1 must be > 0")
    if not n2 > 0:
        raise ValueError("gap number n2 must be > 0 for the quadrature route")
    if not rel_tol > 0:
        raise ValueError("rel_tol must be > 0")
    panels = [(0.0, n2), (n2, n1)] if n2 < n1 else [(0.0, n1)]
    total = 0.0
    converged = True
    for a, b in panels:
        res = tanhsinh(_log_integrand, a, b, args=(n2,),
                       atol=_QUAD_ATOL, rtol=rel_tol, maxlevel=_QUAD_MAX_LEVEL)
        total += float(res.integral)
        converged = converged and bool(np.all(res.success))
    if not converged:
        raise ConvergenceError(
            f"log-concurrence quadrature did not reach tolerance on (n1={n1}, n2={n2})",
            best=total,
        )
    return total


def mep(numbers: DimensionlessPair) -> float:
    """Macrocanonical entanglement of pairing, 1 - C(closed form).

    Evaluated as -expm1(ln C) so that tiny values keep full relative
    precision; the gapless point returns exactly 0.
    """
    result = concurrence_closed_form(numbers)
    return -math.expm1(result.log_value) + 0.0


def mep_discrete(amplitudes: BcsAmplitudes) -> float:
    """MEP of a discrete mode grid, 1 - product of |u_k^2 - v_k^2|."""
    return 1.0 - concurrence_discrete(amplitudes).value


def entanglement_of_formation(concurrence: float) -> float:
    """Binary-entropy map h((1 + sqrt(1 - C^2))/2) from concurrence to [0, 1]."""
    if not 0.0 <= concurrence <= 1.0:
        raise ValueError("concurrence must lie in [0, 1]")
    if concurrence == 0.0:
        return 0.0
    if concurrence == 1.0:
        return 1.0
    s = math.sqrt((1.0 - concurrence) * (1.0 + concurrence))
    hi = 0.5 * (1.0 + s)
    lo = concurrence * concurrence / (2.0 * (1.0 + s))  # (1-s)/2 without cancellation
    return -(hi * math.log2(hi) + lo * math.log2(lo))
