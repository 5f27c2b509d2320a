import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bcsmep.concurrence import concurrence_discrete
from bcsmep.core import bcs_amplitudes
from bcsmep.errors import CapacityError
from bcsmep.fock import (MAX_MODES, PairModeState, build_bcs_state, overlap,
                         time_reverse)

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def random_uv(rng, m):
    u2 = rng.uniform(0.0, 1.0, size=m)
    u = np.sqrt(u2) * np.where(rng.random(m) < 0.5, 1.0, -1.0)
    v = np.sqrt(1.0 - u2) * np.where(rng.random(m) < 0.5, 1.0, -1.0)
    return u, v


class TestBuildState:
    def test_single_mode_vacuum(self):
        state = build_bcs_state([1.0], [0.0])
        assert state.amplitudes.tolist() == [1.0, 0.0]

    def test_single_mode_balanced(self):
        state = build_bcs_state([INV_SQRT2], [INV_SQRT2])
        assert state.amplitudes == pytest.approx([INV_SQRT2, INV_SQRT2])

    def test_two_mode_coefficients_by_hand(self):
        # prod over (u_i + v_i b+_i)|0>, little-endian patterns:
        # 00 -> u0 u1, 01 -> v0 u1, 10 -> u0 v1, 11 -> v0 v1
        state = build_bcs_state([0.8, 0.6], [0.6, 0.8])
        assert state.amplitudes == pytest.approx([0.48, 0.36, 0.64, 0.48],
                                                 abs=1e-15)

    def test_rejects_unnormalized_mode(self):
        with pytest.raises(ValueError, match="mode 1"):
            build_bcs_state([1.0, 0.9], [0.0, 0.9])

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError):
            build_bcs_state([1.0, 0.0], [0.0])
        with pytest.raises(ValueError):
            build_bcs_state([], [])

    def test_capacity_error_above_cap(self):
        m = MAX_MODES + 1
        with pytest.raises(CapacityError):
            build_bcs_state(np.ones(m), np.zeros(m))

    @given(st.integers(min_value=1, max_value=10), st.integers(min_value=0, max_value=2**63 - 1))
    @settings(max_examples=100, deadline=None)
    def test_norm_preserved(self, m, seed):
        rng = np.random.default_rng(seed)
        u, v = random_uv(rng, m)
        state = build_bcs_state(u, v)
        norm_sq = float(state.amplitudes @ state.amplitudes)
        assert abs(norm_sq - 1.0) <= 1e-10


class TestTimeReverse:
    def test_vacuum_factors_unchanged(self):
        forward = build_bcs_state([1.0, 1.0], [0.0, 0.0])
        reversed_ = time_reverse([1.0, 1.0], [0.0, 0.0])
        assert np.array_equal(forward.amplitudes, reversed_.amplitudes)

    def test_double_reversal_restores_state(self):
        u = np.array([0.8, 0.6, INV_SQRT2])
        v = np.array([0.6, 0.8, INV_SQRT2])
        once = time_reverse(u, v)
        twice = time_reverse(u, -v)
        assert np.array_equal(twice.amplitudes, build_bcs_state(u, v).amplitudes)
        assert not np.array_equal(once.amplitudes, twice.amplitudes)

    def test_balanced_single_pair_is_orthogonal(self):
        original = build_bcs_state([INV_SQRT2], [INV_SQRT2])
        reversed_ = time_reverse([INV_SQRT2], [INV_SQRT2])
        assert reversed_.amplitudes == pytest.approx([INV_SQRT2, -INV_SQRT2])
        assert overlap(original, reversed_) == pytest.approx(0.0, abs=1e-15)


class TestOverlap:
    def test_self_overlap_is_unity(self):
        rng = np.random.default_rng(42)
        for m in (1, 3, 7):
            u, v = random_uv(rng, m)
            state = build_bcs_state(u, v)
            assert overlap(state, state) == pytest.approx(1.0, abs=1e-12)

    def test_matches_amplitude_square_difference_product(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            m = int(rng.integers(1, 11))
            u, v = random_uv(rng, m)
            expected = float(np.prod(u * u - v * v))
            got = overlap(build_bcs_state(u, v), time_reverse(u, v))
            assert got == pytest.approx(expected, abs=1e-12)

    def test_sign_structure(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            m = int(rng.integers(1, 11))
            u, v = random_uv(rng, m)
            if np.any(np.abs(u) == np.abs(v)):
                continue
            # |u| vs |v| comparison gives the exact sign of each u^2 - v^2
            expected_sign = 1.0
            for ui, vi in zip(np.abs(u), np.abs(v)):
                expected_sign *= 1.0 if ui > vi else -1.0
            got = overlap(build_bcs_state(u, v), time_reverse(u, v))
            assert math.copysign(1.0, got) == expected_sign

    def test_fermi_sea_case(self):
        for m in (1, 2, 5):
            u = np.zeros(m)
            v = np.ones(m)
            value = overlap(build_bcs_state(u, v), time_reverse(u, v))
            assert abs(value) == 1.0
            assert value == (-1.0) ** m

    def test_mode_count_mismatch_rejected(self):
        a = build_bcs_state([1.0], [0.0])
        b = build_bcs_state([1.0, 1.0], [0.0, 0.0])
        with pytest.raises(ValueError):
            overlap(a, b)

    @given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=2**63 - 1))
    @settings(max_examples=150, deadline=None)
    def test_agrees_with_discrete_product(self, m, seed):
        rng = np.random.default_rng(seed)
        eps = rng.uniform(-3.0, 3.0, size=m)
        gap = float(rng.uniform(0.0, 2.0))
        amps = bcs_amplitudes(eps, gap)
        u, v = np.sqrt(amps.u2), np.sqrt(amps.v2)
        value = abs(overlap(build_bcs_state(u, v), time_reverse(u, v)))
        assert abs(value - concurrence_discrete(amps).value) <= 1e-10


class TestNonProductStates:
    def test_ghz_like_pair_state_misses_entanglement(self):
        ghz = np.zeros(8)
        ghz[0b000] = INV_SQRT2
        ghz[0b111] = INV_SQRT2
        flipped = np.zeros(8)
        flipped[0b000] = INV_SQRT2
        flipped[0b111] = -INV_SQRT2
        value = overlap(PairModeState(3, ghz), PairModeState(3, flipped))
        assert value == 0.0

    def test_w_like_pair_state_misses_entanglement(self):
        inv_sqrt3 = 1.0 / math.sqrt(3.0)
        w = np.zeros(8)
        w[0b001] = w[0b010] = w[0b100] = inv_sqrt3
        flipped = np.zeros(8)
        flipped[0b110] = flipped[0b101] = flipped[0b011] = inv_sqrt3
        value = overlap(PairModeState(3, w), PairModeState(3, flipped))
        assert value == 0.0


class TestPairModeStateInvariants:
    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            PairModeState(2, np.array([1.0, 0.0]))

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            PairModeState(1, np.array([1.0, 1.0]))

    def test_rejects_mode_count_above_cap(self):
        amp = np.zeros(2 ** (MAX_MODES + 1))
        amp[0] = 1.0
        with pytest.raises(CapacityError):
            PairModeState(MAX_MODES + 1, amp)

    def test_amplitudes_immutable(self):
        state = build_bcs_state([0.8], [0.6])
        with pytest.raises(ValueError):
            state.amplitudes[0] = 1.0
