import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from app.core.audio.transforms import apply_orbit, cyclic_shift, pitch_shift_frame, resample_linear, time_warp
from app.core.exceptions import TransformError
from app.models.schemas.transform_schema import TransformSpec
from app.utils.enum import TransformKind

finite = st.floats(-1e3, 1e3, allow_nan=False)


class TestTimeWarp:
    @given(arrays(np.float64, st.integers(1, 64), elements=finite))
    def test_zero_is_identity(self, signal):
        np.testing.assert_array_equal(time_warp(signal, 0.0), signal)

    def test_double_speed(self):
        out = time_warp(np.arange(8, dtype=float), 1.0)
        np.testing.assert_array_equal(out, [0, 2, 4, 6, 0, 0, 0, 0])

    def test_ramp_interpolation(self):
        ramp = np.arange(20, dtype=float)
        out = time_warp(ramp, 0.5)
        inside = 1.5 * np.arange(20) <= 19
        np.testing.assert_allclose(out[inside], 1.5 * np.arange(20)[inside])
        assert not np.any(out[~inside])

    @pytest.mark.parametrize("epsilon", [-0.3, 0.15, 0.4])
    def test_tone_matches_analytic_warp(self, epsilon):
        omega, n = 0.2, np.arange(256)
        out = time_warp(np.sin(omega * n), epsilon)
        inside = (1 + epsilon) * n <= n[-1]
        error = np.abs(out[inside] - np.sin(omega * (1 + epsilon) * n[inside]))
        assert np.max(error) <= omega**2 / 8 + 1e-12

    def test_epsilon_bounds(self):
        with pytest.raises(TransformError):
            time_warp(np.ones(4), -1.0)
        with pytest.raises(TransformError):
            time_warp(np.ones(4), math.nan)


class TestCyclicShift:
    def test_definition(self):
        np.testing.assert_array_equal(cyclic_shift(np.array([1.0, 2, 3, 4]), 1), [4, 1, 2, 3])

    @given(arrays(np.float64, st.integers(1, 32), elements=finite))
    def test_full_cycle(self, vector):
        np.testing.assert_array_equal(cyclic_shift(vector, 0), vector)
        np.testing.assert_array_equal(cyclic_shift(vector, vector.size), vector)

    @given(arrays(np.float64, st.integers(1, 32), elements=finite), st.integers(-100, 100))
    def test_is_a_permutation(self, vector, k):
        np.testing.assert_array_equal(np.sort(cyclic_shift(vector, k)), np.sort(vector))


class TestPitchShift:
    def test_zero_is_identity(self):
        frame = np.linspace(-5, 5, 32)
        np.testing.assert_array_equal(pitch_shift_frame(frame, 0), frame)

    def test_peak_moves(self):
        frame = np.full(32, -10.0)
        frame[10] = 0.0
        shifted = pitch_shift_frame(frame, 3, fill_value=-10.0)
        assert int(np.argmax(shifted)) == 13

    @given(arrays(np.float64, st.integers(8, 64), elements=finite))
    @settings(max_examples=50)
    def test_round_trip_except_boundaries(self, frame):
        back = pitch_shift_frame(pitch_shift_frame(frame, 3), -3)
        np.testing.assert_array_equal(back[:-3], frame[:-3])
        np.testing.assert_array_equal(back[-3:], math.log(1e-6))

    @given(arrays(np.float64, st.integers(2, 48), elements=finite), st.data())
    @settings(max_examples=50)
    def test_interior_bins_keep_their_values(self, frame, data):
        n = frame.size
        shift = data.draw(st.integers(-(n - 1), n - 1))
        shifted = pitch_shift_frame(frame, shift, fill_value=-1e9)
        if shift >= 0:
            kept, source, vacated = shifted[shift:], frame[: n - shift], shifted[:shift]
        else:
            kept, source, vacated = shifted[: n + shift], frame[-shift:], shifted[n + shift :]
        np.testing.assert_array_equal(np.sort(kept), np.sort(source))
        np.testing.assert_array_equal(vacated, -1e9)

    def test_out_of_range(self):
        with pytest.raises(TransformError):
            pitch_shift_frame(np.zeros(4), 4)

    def test_block_rows_shift_together(self):
        block = np.arange(12, dtype=float).reshape(3, 4)
        shifted = pitch_shift_frame(block, 1, fill_value=-1.0)
        np.testing.assert_array_equal(shifted[:, 0], -1.0)
        np.testing.assert_array_equal(shifted[:, 1:], block[:, :-1])


class TestApplyOrbit:
    def test_identity_warp(self):
        signal = np.arange(10, dtype=float)
        copies = apply_orbit(signal, TransformSpec(kind=TransformKind.TIME_WARP, parameters=[0.0]))
        assert len(copies) == 1
        np.testing.assert_array_equal(copies[0], signal)

    def test_all_rotations(self):
        vector = np.array([1.0, 5.0, 2.0, 7.0, 3.0])
        copies = apply_orbit(vector, TransformSpec.full_cyclic(5))
        assert len({tuple(copy) for copy in copies}) == 5
        for copy in copies:
            np.testing.assert_array_equal(np.sort(copy), np.sort(vector))

    def test_default_warp_grid(self):
        spec = TransformSpec.time_warp_grid()
        assert spec.size == 17
        assert spec.parameters[0] == -0.4 and spec.parameters[-1] == 0.4 and 0.0 in spec.parameters
        assert len(apply_orbit(np.ones(100), spec)) == 17


def test_resample_keeps_duration():
    out = resample_linear(np.linspace(0, 1, 22050), 22050, 8000)
    assert out.size == 8000
    assert out[0] == 0.0
