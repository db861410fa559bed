"""Tests for the constant-curvature kinematics."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jamarm.kinematics import (
    BendState,
    Frame,
    SegmentParams,
    arm_fk,
    arm_shape_samples,
    bend_from_tendon,
    segment_fk,
    segment_shape_samples,
    tendon_from_bend,
    tendon_length_delta,
)
from oracles import arc_frame_sequential, arc_position_discretized

D = 0.02
SEG = SegmentParams(arc_length=0.1, tendon_separation=D)

sane_floats = st.floats(
    min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False
)


class TestTendonBendMaps:
    def test_zero_input(self):
        assert bend_from_tendon(0.0, D) == 0.0

    def test_direct_substitution(self):
        assert bend_from_tendon(0.001, D) == pytest.approx(0.1, abs=1e-15)

    def test_odd_symmetry(self):
        assert bend_from_tendon(-0.001, D) == -bend_from_tendon(0.001, D)

    def test_inverse_values(self):
        assert tendon_from_bend(0.1, D) == pytest.approx(0.001, abs=1e-18)
        assert tendon_from_bend(0.0, 0.037) == 0.0

    @pytest.mark.parametrize("theta", [-1.0, 0.37, 2.0])
    def test_round_trip_exact(self, theta):
        assert bend_from_tendon(tendon_from_bend(theta, D), D) == theta

    def test_scaling_by_powers_of_two_is_exact(self):
        base = bend_from_tendon(0.00173, D)
        for a in (2.0, 0.5, -1.0, 4.0):
            assert bend_from_tendon(a * 0.00173, D) == a * base

    @given(a=sane_floats, dx=sane_floats)
    def test_linearity(self, a, dx):
        lhs = bend_from_tendon(a * dx, D)
        rhs = a * bend_from_tendon(dx, D)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-15)

    @pytest.mark.parametrize("bad", [0.0, -0.02])
    def test_non_positive_separation_rejected(self, bad):
        with pytest.raises(ValueError):
            bend_from_tendon(0.001, bad)
        with pytest.raises(ValueError):
            tendon_from_bend(0.1, bad)


class TestTendonLengthDelta:
    def test_planar_case_reduces_to_linear_map(self):
        assert tendon_length_delta(BendState(0.1, 0.0), 0.0, D) == pytest.approx(
            0.001, abs=1e-18
        )

    def test_antagonist_is_equal_and_opposite(self):
        assert tendon_length_delta(BendState(0.1, 0.0), math.pi, D) == pytest.approx(
            -0.001, abs=1e-18
        )

    def test_diagonal_bend_oracle_value(self):
        # (d/2) * hypot(0.1, 0.1) * cos(0), evaluated in 50-digit arithmetic
        got = tendon_length_delta(BendState(0.1, 0.1), math.pi / 4.0, D)
        assert got == pytest.approx(0.001414213562373095, rel=1e-15)
        assert got == pytest.approx(0.0014142, abs=1e-7)

    def test_zero_bend_is_exact_zero(self):
        assert tendon_length_delta(BendState(0.0, 0.0), 1.234, D) == 0.0

    @given(tx=sane_floats, ty=sane_floats, psi=sane_floats)
    def test_antagonism(self, tx, ty, psi):
        bend = BendState(tx, ty)
        assert tendon_length_delta(bend, psi, D) == pytest.approx(
            -tendon_length_delta(bend, psi + math.pi, D), abs=1e-12
        )

    def test_planar_pair_difference_recovers_bend(self):
        # (delta_out - delta_in) / d = theta when psi equals the bend plane
        rng = np.random.RandomState(11)
        for _ in range(50):
            bend = BendState(*rng.uniform(-2, 2, size=2))
            phi = bend.plane
            diff = tendon_length_delta(bend, phi, D) - tendon_length_delta(
                bend, phi + math.pi, D
            )
            assert diff / D == pytest.approx(bend.total, rel=1e-12)


class TestSegmentFk:
    def test_straight_segment(self):
        f = segment_fk(SEG, BendState(0.0, 0.0))
        assert np.array_equal(f.position, [0.0, 0.0, 0.1])
        assert np.array_equal(f.rotation, np.eye(3))

    def test_quarter_turn_x(self):
        f = segment_fk(SEG, BendState(math.pi / 2.0, 0.0))
        np.testing.assert_allclose(
            f.position, [0.06366197723675814, 0.0, 0.06366197723675814], atol=1e-15
        )

    def test_quarter_turn_y(self):
        f = segment_fk(SEG, BendState(0.0, math.pi / 2.0))
        np.testing.assert_allclose(
            f.position, [0.0, 0.06366197723675814, 0.06366197723675814], atol=1e-15
        )

    def test_matches_discretized_oracle(self):
        rng = np.random.RandomState(42)
        for _ in range(20):
            tx, ty = rng.uniform(-2.0, 2.0, size=2)
            got = segment_fk(SEG, BendState(tx, ty)).position
            want = arc_position_discretized(0.1, tx, ty, n=100_000)
            assert np.max(np.abs(got - want)) < 1e-6

    def test_matches_sequential_composition_oracle(self):
        for tx, ty in [(0.7, -0.4), (math.pi / 2, 0.0), (-1.2, 1.9)]:
            frame = segment_fk(SEG, BendState(tx, ty))
            pos, rot = arc_frame_sequential(0.1, tx, ty, n=4000)
            assert np.max(np.abs(frame.position - pos)) < 1e-7
            assert np.max(np.abs(frame.rotation - rot)) < 1e-9

    def test_vectorized_and_sequential_oracles_agree(self):
        # same composition, so they must agree far below the FK tolerance
        pos, _ = arc_frame_sequential(0.1, 0.9, -1.1, n=3000)
        vec = arc_position_discretized(0.1, 0.9, -1.1, n=3000)
        assert np.max(np.abs(pos - vec)) < 1e-12

    def test_continuity_at_zero(self):
        near = segment_fk(SEG, BendState(1e-9, 0.0)).position
        straight = segment_fk(SEG, BendState(0.0, 0.0)).position
        assert np.max(np.abs(near - straight)) < 1e-10

    def test_pure_x_bends_in_plane_zero(self):
        f = segment_fk(SEG, BendState(0.4, 0.0))
        assert f.position[1] == pytest.approx(0.0, abs=1e-15)
        assert f.position[0] > 0
        assert BendState(0.4, 0.0).plane == 0.0

    def test_pure_y_bends_in_plane_quarter(self):
        f = segment_fk(SEG, BendState(0.0, 0.4))
        assert f.position[0] == pytest.approx(0.0, abs=1e-15)
        assert f.position[1] > 0
        assert BendState(0.0, 0.4).plane == math.pi / 2.0

    def test_azimuth_offset_rotates_bend_plane(self):
        offset = SegmentParams(0.1, D, x_pair_azimuth=math.pi / 6.0)
        f = segment_fk(offset, BendState(0.5, 0.0))
        plain = segment_fk(SEG, BendState(0.5, 0.0))
        rz = np.array(
            [
                [math.cos(math.pi / 6), -math.sin(math.pi / 6), 0.0],
                [math.sin(math.pi / 6), math.cos(math.pi / 6), 0.0],
                [0.0, 0.0, 1.0],
            ]
        )
        np.testing.assert_allclose(f.position, rz @ plain.position, atol=1e-15)

    def test_rotation_orthonormal_for_random_bends(self):
        rng = np.random.RandomState(7)
        for _ in range(100):
            f = segment_fk(SEG, BendState(*rng.uniform(-2, 2, size=2)))
            assert np.max(np.abs(f.rotation.T @ f.rotation - np.eye(3))) < 1e-12


class TestArmFk:
    def test_two_straight_segments(self):
        frames = arm_fk([SEG, SEG], [BendState(), BendState()])
        np.testing.assert_allclose(frames[-1].position, [0.0, 0.0, 0.2], atol=1e-15)
        np.testing.assert_allclose(frames[-1].rotation, np.eye(3), atol=1e-15)

    def test_bent_then_straight(self):
        frames = arm_fk(
            [SEG, SEG], [BendState(math.pi / 2.0, 0.0), BendState()]
        )
        np.testing.assert_allclose(
            frames[-1].position,
            [0.16366197723675813, 0.0, 0.06366197723675814],
            atol=1e-14,
        )

    def test_single_segment_matches_segment_fk(self):
        bend = BendState(0.3, -0.7)
        frames = arm_fk([SEG], [bend])
        direct = segment_fk(SEG, bend)
        assert np.array_equal(frames[0].position, direct.position)
        assert np.array_equal(frames[0].rotation, direct.rotation)

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            arm_fk([SEG, SEG], [BendState()])
        with pytest.raises(ValueError):
            arm_fk([], [])

    def test_composition_preserves_orthonormality(self):
        rng = np.random.RandomState(3)
        segs = [SEG] * 6
        for _ in range(20):
            states = [BendState(*rng.uniform(-2, 2, size=2)) for _ in segs]
            for f in arm_fk(segs, states):
                assert np.max(np.abs(f.rotation.T @ f.rotation - np.eye(3))) < 1e-9
                assert abs(np.linalg.det(f.rotation) - 1.0) < 1e-9


class TestShapeSamples:
    def test_straight_three_points(self):
        pts = segment_shape_samples(SEG, BendState(), 3)
        np.testing.assert_allclose(
            pts, [[0, 0, 0], [0, 0, 0.05], [0, 0, 0.1]], atol=1e-15
        )

    def test_endpoints_match_fk(self):
        bend = BendState(math.pi / 2.0, 0.0)
        pts = segment_shape_samples(SEG, bend, 50)
        np.testing.assert_allclose(pts[0], [0, 0, 0], atol=1e-15)
        np.testing.assert_allclose(pts[-1], segment_fk(SEG, bend).position, atol=1e-14)

    def test_equal_arc_steps_give_equal_chords(self):
        pts = segment_shape_samples(SEG, BendState(1.1, -0.6), 40)
        chords = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        assert np.max(chords) - np.min(chords) < 1e-12

    def test_too_few_points_rejected(self):
        with pytest.raises(ValueError):
            segment_shape_samples(SEG, BendState(), 1)

    def test_arm_shape_joins_segments(self):
        segs = [SEG, SegmentParams(0.1, D, x_pair_azimuth=math.pi / 6.0)]
        states = [BendState(0.5, 0.1), BendState(-0.2, 0.4)]
        pts = arm_shape_samples(segs, states, points_per_segment=10)
        assert pts.shape == (19, 3)
        frames = arm_fk(segs, states)
        np.testing.assert_allclose(pts[0], [0, 0, 0], atol=1e-15)
        np.testing.assert_allclose(pts[9], frames[0].position, atol=1e-14)
        np.testing.assert_allclose(pts[-1], frames[1].position, atol=1e-14)


class TestValidation:
    def test_segment_params_positive(self):
        with pytest.raises(ValueError):
            SegmentParams(0.0, D)
        with pytest.raises(ValueError):
            SegmentParams(0.1, -1.0)

    def test_azimuth_normalized(self):
        params = SegmentParams(0.1, D, x_pair_azimuth=-math.pi / 2.0)
        assert 0.0 <= params.x_pair_azimuth < 2.0 * math.pi
        assert params.x_pair_azimuth == pytest.approx(1.5 * math.pi)

    def test_bend_state_rejects_non_finite(self):
        with pytest.raises(ValueError):
            BendState(math.nan, 0.0)
        with pytest.raises(ValueError):
            BendState(0.0, math.inf)

    def test_frame_rejects_bad_rotation(self):
        with pytest.raises(ValueError):
            Frame(np.zeros(3), np.eye(3) * 2.0)
        with pytest.raises(ValueError):
            Frame(np.zeros(3), -np.eye(3))
