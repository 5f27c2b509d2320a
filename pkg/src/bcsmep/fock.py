"""Exact condensate states on a small number of pair modes.

States live in the pair-occupation basis: basis index S has bit i set iff
mode i holds a Cooper pair (little-endian, mode 0 is the lowest bit).
Pair creation operators commute for distinct modes, so no fermionic sign
bookkeeping arises in this basis.  This is the ground-truth oracle for the
product form of the total concurrence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError

# Hard cap on exact state size: 2^16 coefficients.
MAX_MODES = 16

_NORM_TOL = 1e-10
_MODE_NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PairModeState:
    """Dense real state vector over the 2^M pair-occupation patterns."""

    num_modes: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.num_modes < 1:
            raise ValueError("num_modes must be >= 1")
        if self.num_modes > MAX_MODES:
            raise CapacityError(
                f"{self.num_modes} modes exceed the cap of {MAX_MODES}"
            )
        amp = np.array(self.amplitudes, dtype=float)
        object.__setattr__(self, "amplitudes", amp)
        if amp.shape != (2**self.num_modes,):
            raise ValueError("amplitude vector must have length 2^num_modes")
        if not np.all(np.isfinite(amp)):
            raise ValueError("amplitudes must be finite")
        norm_sq = float(amp @ amp)
        if abs(norm_sq - 1.0) > _NORM_TOL:
            raise ValueError(f"state norm^2 = {norm_sq!r} is not 1 within {_NORM_TOL}")
        amp.setflags(write=False)


def _validated_uv(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.ndim != 1 or u.shape != v.shape or u.size == 0:
        raise ValueError("u and v must be non-empty 1-d arrays of equal length")
    if u.size > MAX_MODES:
        raise CapacityError(f"{u.size} modes exceed the cap of {MAX_MODES}")
    bad = np.abs(u * u + v * v - 1.0) > _MODE_NORM_TOL
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ValueError(
            f"mode {i}: u^2 + v^2 = {float(u[i]**2 + v[i]**2)!r} is not 1 "
            f"within {_MODE_NORM_TOL}"
        )
    return u, v


def build_bcs_state(u, v) -> PairModeState:
    """Expand prod_k (u_k + v_k b+_k)|0> into the pair-occupation basis.

    The coefficient of pattern S is prod_{i in S} v_i * prod_{i not in S} u_i;
    the state is normalized by construction.
    """
    u, v = _validated_uv(u, v)
    amp = np.ones(1)
    for i in range(u.size):
        amp = np.concatenate([u[i] * amp, v[i] * amp])
    return PairModeState(num_modes=u.size, amplitudes=amp)


def time_reverse(u, v) -> PairModeState:
    """State of the time-reversed condensate: every v_k picks up a minus sign."""
    u, v = _validated_uv(u, v)
    return build_bcs_state(u, -v)


def overlap(a: PairModeState, b: PairModeState) -> float:
    """Real inner product sum_S a_S * b_S of two states on equal mode counts."""
    if a.num_modes != b.num_modes:
        raise ValueError(
            f"mode-count mismatch: {a.num_modes} vs {b.num_modes}"
        )
    # multiply-then-sum, not BLAS dot: FMA kernels leave ~1e-17 residue on
    # exactly-cancelling terms
    return float(np.sum(a.amplitudes * b.amplitudes))
