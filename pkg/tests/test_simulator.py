"""Tests for the deterministic teleoperation session."""

import json
import math

import numpy as np
import pytest

from jamarm.actuation import ActuatorConfig, KnobEvent
from jamarm.coupling import CouplingConfig
from jamarm.kinematics import arm_fk
from jamarm.simulator import (
    EventError,
    LoadEvent,
    PlantConfig,
    PressureEvent,
    ResetEvent,
    ScriptError,
    SessionConfig,
    SessionState,
    parse_script,
    run_script,
    session_config_from_json,
    snapshot_payload,
    snapshot_serialize,
    step,
    trajectory_serialize,
)

CFG = SessionConfig()
PER_DETENT_BEND_DEG = 3.6297274296183497


def bends_deg(state):
    return [[math.degrees(b.theta_x), math.degrees(b.theta_y)] for b in state.bends]


def knob_events(rng, knobs, n):
    return [
        KnobEvent(int(rng.choice(knobs)), int(rng.choice([1, -1]))) for _ in range(n)
    ]


class TestStep:
    def test_knob1_detent_bends_segment1_only(self):
        state = step(SessionState.initial(CFG), KnobEvent(1, 1), CFG)
        (tx1, ty1), (tx2, ty2) = bends_deg(state)
        assert tx1 == pytest.approx(PER_DETENT_BEND_DEG, abs=1e-3)
        assert abs(ty1) < 1e-9
        assert math.hypot(tx2, ty2) < 1e-9
        assert state.seq == 1

    def test_knob3_detent_bends_segment2_only(self):
        state = step(SessionState.initial(CFG), KnobEvent(3, 1), CFG)
        (tx1, ty1), (tx2, ty2) = bends_deg(state)
        assert tx2 == pytest.approx(PER_DETENT_BEND_DEG, abs=1e-3)
        assert math.hypot(tx1, ty1) < 1e-9
        assert abs(ty2) < 1e-9

    def test_jammed_segment_ignores_knob(self):
        state = SessionState.initial(CFG)
        state = step(state, PressureEvent(1, 12.5), CFG)
        assert state.jammed(CFG) == (True, False)
        after = step(state, KnobEvent(1, 1), CFG)
        assert after.bends[0] == state.bends[0]
        assert after.warning is not None
        assert "jammed" in after.warning

    def test_pressure_event_updates_state(self):
        state = step(SessionState.initial(CFG), PressureEvent(1, 12.5), CFG)
        assert state.pressures_psi == (12.5, 0.0)
        assert state.jammed(CFG) == (True, False)

    def test_pressure_below_threshold_does_not_jam(self):
        state = step(SessionState.initial(CFG), PressureEvent(2, 5.9), CFG)
        assert state.jammed(CFG) == (False, False)

    def test_pressure_out_of_range_rejected(self):
        state = SessionState.initial(CFG)
        with pytest.raises(EventError):
            step(state, PressureEvent(1, -1.0), CFG)
        with pytest.raises(EventError):
            step(state, PressureEvent(1, 15.0), CFG)
        with pytest.raises(EventError):
            step(state, PressureEvent(3, 5.0), CFG)

    def test_rejected_event_leaves_state_untouched(self):
        state = step(SessionState.initial(CFG), KnobEvent(2, 1), CFG)
        snapshot = snapshot_serialize(state, CFG)
        with pytest.raises(EventError):
            step(state, PressureEvent(1, 99.0), CFG)
        assert snapshot_serialize(state, CFG) == snapshot

    def test_load_event_readout(self):
        state = SessionState.initial(CFG)
        state = step(state, PressureEvent(1, 12.5), CFG)
        state = step(state, PressureEvent(2, 12.5), CFG)
        state = step(state, LoadEvent("tip", 0.2 * 9.81), CFG)
        payload = snapshot_payload(state, CFG)
        assert payload["capacity_N"] == pytest.approx(2.7)
        assert payload["deflection_m"] == pytest.approx(1.962 / 135.0, rel=1e-12)

    def test_connector_load_uses_segment1_table(self):
        state = SessionState.initial(CFG)
        state = step(state, PressureEvent(1, 12.5), CFG)
        state = step(state, LoadEvent("connector", 0.8 * 9.81), CFG)
        payload = snapshot_payload(state, CFG)
        assert payload["capacity_N"] == pytest.approx(10.0)
        assert payload["deflection_m"] == pytest.approx(7.848 / 500.0, rel=1e-12)

    def test_tip_load_uses_weakest_segment_pressure(self):
        state = SessionState.initial(CFG)
        state = step(state, PressureEvent(1, 12.5), CFG)
        state = step(state, LoadEvent("tip", 1.0), CFG)
        # segment 2 is still at 0 psi, so the whole arm rates 0.2 N
        assert snapshot_payload(state, CFG)["capacity_N"] == pytest.approx(0.2)

    def test_bad_load_rejected(self):
        state = SessionState.initial(CFG)
        with pytest.raises(EventError):
            step(state, LoadEvent("tip", -1.0), CFG)
        with pytest.raises(EventError):
            step(state, LoadEvent("elbow", 1.0), CFG)

    def test_no_load_reports_null(self):
        payload = snapshot_payload(SessionState.initial(CFG), CFG)
        assert payload["capacity_N"] is None
        assert payload["deflection_m"] is None

    def test_reset_event_restores_initial_but_advances_seq(self):
        state = SessionState.initial(CFG)
        for ev in (KnobEvent(1, 1), PressureEvent(2, 8.0), LoadEvent("tip", 1.0)):
            state = step(state, ev, CFG)
        state = step(state, ResetEvent(), CFG)
        assert state.seq == 4
        assert state.motors.cumulative_deg == [0.0] * 4
        assert state.pressures_psi == (0.0, 0.0)
        assert state.load_point is None

    def test_button_reset_zeroes_knob_accumulator(self):
        state = SessionState.initial(CFG)
        for _ in range(3):
            state = step(state, KnobEvent(1, 1), CFG)
        assert state.knob_accum == (3, 0, 0, 0)
        motor1_before = state.motors.cumulative_deg[0]
        state = step(state, KnobEvent(1, button=True), CFG)
        assert state.knob_accum == (0, 0, 0, 0)
        # the mapped motor winds back by 3 detents worth
        assert state.motors.cumulative_deg[0] == pytest.approx(
            motor1_before - 3 * 6.1875, rel=1e-12
        )


class TestClosedLoopInvariants:
    def test_decoupling_invariant_knobs_34(self):
        rng = np.random.RandomState(101)
        traj = run_script(knob_events(rng, [3, 4], 500), CFG)
        worst = max(
            max(abs(s.bends[0].theta_x), abs(s.bends[0].theta_y)) for s in traj
        )
        assert worst < 1e-9

    def test_feedforward_invariant_knobs_12(self):
        rng = np.random.RandomState(202)
        traj = run_script(knob_events(rng, [1, 2], 500), CFG)
        worst = max(
            max(abs(s.bends[1].theta_x), abs(s.bends[1].theta_y)) for s in traj
        )
        assert worst < 1e-9

    def test_mismatched_alpha_leaks_into_segment1(self):
        cfg = SessionConfig(coupling=CouplingConfig(alpha=1.2))
        state = step(SessionState.initial(cfg), KnobEvent(3, 1), cfg)
        assert abs(state.bends[0].theta_x) > 1e-6

    def test_rigid_plant_needs_no_compensation(self):
        cfg = SessionConfig(
            coupling=CouplingConfig(alpha=1e-12),
            plant=PlantConfig(coupling_coeff=0.0),
        )
        state = step(SessionState.initial(cfg), KnobEvent(3, 1), cfg)
        assert abs(state.bends[0].theta_x) < 1e-12
        assert math.degrees(state.bends[1].theta_x) == pytest.approx(
            PER_DETENT_BEND_DEG, abs=1e-3
        )

    def test_reversal_returns_to_straight(self):
        events = [KnobEvent(1, 1)] * 10 + [KnobEvent(1, -1)] * 10
        final = run_script(events, CFG)[-1]
        assert final.bends[0] == SessionState.initial(CFG).bends[0]
        assert final.motors.cumulative_deg == [0.0] * 4

    def test_jam_conservation_across_mixed_events(self):
        state = SessionState.initial(CFG)
        state = step(state, KnobEvent(1, 1), CFG)
        state = step(state, PressureEvent(1, 9.0), CFG)
        frozen = state.bends[0]
        rng = np.random.RandomState(5)
        for ev in knob_events(rng, [1, 2, 3, 4], 100) + [LoadEvent("connector", 1.0)]:
            state = step(state, ev, CFG)
            assert state.bends[0] == frozen
        state = step(state, PressureEvent(1, 0.0), CFG)
        # unjammed again: snaps back to tracking the accumulated actuation
        assert state.bends[0] != frozen

    def test_seq_counts_processed_events(self):
        rng = np.random.RandomState(77)
        events = knob_events(rng, [1, 2, 3, 4], 25)
        traj = run_script(events, CFG)
        assert [s.seq for s in traj] == list(range(26))

    def test_tip_matches_arm_fk_recomputation(self):
        rng = np.random.RandomState(303)
        traj = run_script(knob_events(rng, [1, 2, 3, 4], 50), CFG)
        for state in traj[::10]:
            payload = snapshot_payload(state, CFG)
            tip = arm_fk(CFG.plant.segments, state.bends)[-1].position
            assert np.max(np.abs(np.array(payload["tip_m"]) - tip)) < 1e-12


class TestDeterminism:
    def test_identical_scripts_serialize_identically(self):
        rng = np.random.RandomState(404)
        events = knob_events(rng, [1, 2, 3, 4], 120)
        events.insert(40, PressureEvent(2, 7.5))
        events.insert(80, LoadEvent("tip", 1.5))
        a = trajectory_serialize(run_script(events, CFG), CFG)
        b = trajectory_serialize(run_script(events, CFG), CFG)
        assert a == b

    def test_substep_count_invariant_in_exact_mode(self):
        rng = np.random.RandomState(505)
        events = knob_events(rng, [1, 2, 3, 4], 200)
        finals = []
        for j in (1, 6, 60):
            cfg = SessionConfig(actuator=ActuatorConfig(substeps_j=j))
            finals.append(run_script(events, cfg)[-1].motors.cumulative_deg)
        for other in finals[1:]:
            assert np.max(np.abs(np.array(other) - np.array(finals[0]))) < 1e-12

    def test_empty_script_single_straight_snapshot(self):
        traj = run_script([], CFG)
        assert len(traj) == 1
        payload = snapshot_payload(traj[0], CFG)
        assert payload["seq"] == 0
        assert payload["tip_m"] == pytest.approx([0.0, 0.0, 0.2])

    def test_s_shape_script_opposite_curvatures(self):
        events = [KnobEvent(1, 1)] * 8 + [KnobEvent(3, -1)] * 8
        final = run_script(events, CFG)[-1]
        assert final.bends[0].theta_x > 0
        assert final.bends[1].theta_x < 0
        assert final.bends[0].theta_x == pytest.approx(
            -final.bends[1].theta_x, rel=1e-9
        )


class TestSerialization:
    def test_initial_snapshot_seq_zero(self):
        text = snapshot_serialize(SessionState.initial(CFG), CFG)
        assert text.startswith('{"type":"state","seq":0,')

    def test_serialize_parse_serialize_is_byte_identical(self):
        rng = np.random.RandomState(606)
        state = run_script(knob_events(rng, [1, 2, 3, 4], 30), CFG)[-1]
        text = snapshot_serialize(state, CFG)
        from jamarm.simulator import canonical_json

        assert canonical_json(json.loads(text)) == text

    def test_payload_key_order_matches_wire_schema(self):
        payload = snapshot_payload(SessionState.initial(CFG), CFG)
        assert list(payload) == [
            "type",
            "seq",
            "motors_deg",
            "tendons_m",
            "bend_deg",
            "tip_m",
            "shape_m",
            "pressures_psi",
            "jammed",
            "capacity_N",
            "deflection_m",
            "warning",
        ]
        assert list(payload["tendons_m"]) == ["x1o", "y1o", "x2o", "y2o"]

    def test_non_finite_rejected(self):
        from jamarm.simulator import canonical_json

        with pytest.raises(ValueError):
            canonical_json({"x": math.inf})


class TestScriptParsing:
    def test_full_grammar(self):
        events = parse_script(
            "# spatial demo\n"
            "knob 1 +1\n"
            "knob 4 -1\n"
            "\n"
            "button 2\n"
            "pressure 2 12.5\n"
            "load tip 1.962\n"
        )
        assert events == [
            KnobEvent(1, 1),
            KnobEvent(4, -1),
            KnobEvent(2, button=True),
            PressureEvent(2, 12.5),
            LoadEvent("tip", 1.962),
        ]

    @pytest.mark.parametrize(
        "line",
        [
            "knob 5 1",
            "knob 1 2",
            "knob 1",
            "button 0",
            "pressure one 3",
            "load middle 2",
            "wiggle 1",
        ],
    )
    def test_bad_lines_report_line_number(self, line):
        with pytest.raises(ScriptError, match="line 2"):
            parse_script("# header\n" + line + "\n")

    def test_run_script_wraps_event_errors_with_index(self):
        with pytest.raises(EventError, match="event 2"):
            run_script([KnobEvent(1, 1), PressureEvent(1, 99.0)], CFG)


class TestConfigLoading:
    def test_sections_all_optional(self):
        cfg = session_config_from_json({})
        assert cfg.actuator == ActuatorConfig()
        assert cfg.coupling == CouplingConfig()

    def test_full_document(self):
        cfg = session_config_from_json(
            {
                "actuator": {"spool_radius_m": 0.011, "quantization_mode": "exact"},
                "coupling": {"alpha": 1.1, "beta": 1.0, "seg2_offset": 0.5},
                "plant": {
                    "segments": [
                        {"arc_length": 0.12, "tendon_separation": 0.02},
                        {
                            "arc_length": 0.1,
                            "tendon_separation": 0.02,
                            "x_pair_azimuth": 0.5,
                        },
                    ],
                    "coupling_coeff": 1.1,
                    "jam_threshold_psi": 4.0,
                    "stiffness_tables": {
                        "tip": {"rows": [[0, 0.3], [12, 3.0]], "label": "custom"}
                    },
                },
            }
        )
        assert cfg.plant.segments[0].arc_length == 0.12
        assert cfg.plant.jam_threshold_psi == 4.0
        assert cfg.plant.stiffness_tables["tip"].rows == ((0.0, 0.3), (12.0, 3.0))

    def test_unknown_section_rejected(self):
        with pytest.raises(ValueError, match="unknown config sections"):
            session_config_from_json({"motors": {}})

    def test_plant_requires_two_segments(self):
        with pytest.raises(ValueError, match="exactly 2"):
            PlantConfig(segments=(CFG.plant.segments[0],))
