import math

import numpy as np
import pytest

from src.control.controller import Setpoint, TrackerConfig
from src.simulation.campaigns import perturb_scenario, random_scenario, sweep_parameters, track_scenario
from src.simulation.disturbances import DisturbanceSampler, DisturbanceSpec, sample_disturbance
from src.simulation.log import LOG_COLUMNS, SimLog, read_log_csv
from src.simulation.scenario import ScenarioConfig, run_scenario
from src.simulation.summary import summarize
from src.utils.errors import ParameterError
from src.utils.kvfile import read_key_values
from src.vehicle.dynamics import RigidState

ROW_WIDTH = len(LOG_COLUMNS)


# ── disturbances ──────────────────────────────────────────────────────────────

def test_no_disturbance_is_zero():
    spec = DisturbanceSpec()
    for t in (0.0, 0.25, 3.0):
        assert not np.any(sample_disturbance(spec, t).speed_offsets())


def test_pulse_inside_window():
    spec = DisturbanceSpec(mode="pulse", dv=1.0, domega=0.1, t0=0.0, t1=0.5)
    dist = sample_disturbance(spec, 0.25)
    assert list(dist.dv) == [1.0, 1.0, 1.0]
    assert list(dist.domega) == [0.1, 0.1, 0.1]


def test_pulse_outside_window():
    spec = DisturbanceSpec(mode="pulse", dv=1.0, domega=0.1, t0=0.2, t1=0.5)
    for t in (0.1, 0.5, 1.0):
        assert not np.any(sample_disturbance(spec, t).speed_offsets())


def test_pulse_per_axis_magnitudes():
    spec = DisturbanceSpec(mode="pulse", dv=(1.0, 0.0, -2.0))
    assert list(sample_disturbance(spec, 0.0).dv) == [1.0, 0.0, -2.0]


def test_gaussian_statistics():
    spec = DisturbanceSpec(mode="gaussian", std_v=10.0, std_w=1.0, seed=3)
    sampler = DisturbanceSampler(spec)
    n = 100_000
    draws = np.array([sampler.sample(k * 0.01).speed_offsets() for k in range(n)])

    for column, std in zip(range(6), (10.0, 10.0, 10.0, 1.0, 1.0, 1.0)):
        assert abs(draws[:, column].mean()) < 4 * std / math.sqrt(n)
        assert draws[:, column].std() == pytest.approx(std, rel=0.02)


def test_gaussian_is_seeded():
    spec = DisturbanceSpec(mode="gaussian", std_v=1.0, std_w=1.0, seed=9)
    first = [DisturbanceSampler(spec).sample(0.0).speed_offsets() for _ in range(2)]
    assert np.array_equal(first[0], first[1])


@pytest.mark.parametrize("kwargs", [
    {"mode": "wind"},
    {"injection": "force"},
    {"t0": 1.0, "t1": 0.5},
    {"std_v": -1.0},
    {"dv": (1.0, 2.0)},
])
def test_disturbance_spec_validation(kwargs):
    with pytest.raises(ParameterError):
        DisturbanceSpec(**kwargs)


# ── scenario configuration ────────────────────────────────────────────────────

@pytest.mark.parametrize("kwargs", [
    {"mode": "orbit"},
    {"mode": "track"},
    {"duration": 0.0},
    {"dt_physics": 0.02},
    {"dt_physics": 0.003},
    {"duration": 1.005},
])
def test_scenario_validation(kwargs):
    with pytest.raises(ParameterError):
        ScenarioConfig(**kwargs)


def test_campaign_defaults():
    perturb = perturb_scenario()
    assert perturb.duration == 5.0
    assert perturb.disturbance.mode == "pulse"
    assert (perturb.disturbance.t0, perturb.disturbance.t1) == (0.0, 0.5)

    random = random_scenario(seed=4)
    assert random.disturbance.std_v == 10.0
    assert random.disturbance.std_w == 1.0
    assert random.disturbance.seed == 4

    track = track_scenario()
    assert track.mode == "track"
    assert list(track.setpoint.p_inertial_des) == [10.0, 5.0, -2.0]
    assert track.setpoint.psi_des == 3.0


# ── run_scenario ──────────────────────────────────────────────────────────────

def test_hover_equilibrium_is_fixed_point(reference_matrix, params):
    log = run_scenario(ScenarioConfig(duration=1.0), reference_matrix, None, params)
    assert not log.aborted
    assert len(log) == 101

    states = np.array(log.rows)[:, 1:13]
    assert np.all(np.abs(states) < 1e-9)


def test_row_layout(reference_matrix, params):
    log = run_scenario(perturb_scenario(duration=0.1), reference_matrix, None, params)
    times = [row[0] for row in log.rows]

    assert len(log) == 11
    assert all(len(row) == ROW_WIDTH for row in log.rows)
    assert all(later > earlier for earlier, later in zip(times, times[1:]))
    # First row already carries the first interval's injection
    assert log.rows[0][1] == pytest.approx(0.01)
    assert log.rows[0][21:24] == [1.0, 1.0, 1.0]


def test_impulse_injection_adds_sample_each_interval(reference_matrix, params):
    cfg = perturb_scenario(duration=0.1, injection="impulse")
    log = run_scenario(cfg, reference_matrix, None, params)
    assert log.rows[0][1] == pytest.approx(1.0)
    assert log.rows[0][7] == pytest.approx(0.1)


def test_load_injection_leaves_row_zero_state_untouched(reference_matrix, params):
    cfg = perturb_scenario(duration=0.1, injection="load")
    log = run_scenario(cfg, reference_matrix, None, params)
    assert log.rows[0][1] == 0.0
    # One interval of 1 m/s^2 body acceleration, less the controller's reaction
    assert 0.0 < log.rows[1][1] < 0.0101


def test_runs_are_bit_identical(reference_matrix, params):
    cfg = random_scenario(seed=3, duration=0.5)
    first = run_scenario(cfg, reference_matrix, None, params)
    second = run_scenario(cfg, reference_matrix, None, params)
    assert first.rows == second.rows


def test_physics_step_refinement(reference_matrix, params):
    coarse = run_scenario(perturb_scenario(duration=1.0), reference_matrix, None, params)
    fine = run_scenario(perturb_scenario(duration=1.0, dt_physics=0.0005), reference_matrix, None, params)
    difference = np.array(coarse.rows)[:, 1:13] - np.array(fine.rows)[:, 1:13]
    assert np.max(np.abs(difference)) < 1e-5


def test_gimbal_abort_returns_partial_log(reference_matrix, params):
    cfg = ScenarioConfig(duration=1.0, initial_state=RigidState(euler=(0.0, math.radians(87.0), 0.0)))
    log = run_scenario(cfg, reference_matrix, None, params)
    assert log.aborted
    assert log.abort_time == 0.0
    assert "gimbal" in log.abort_reason
    assert len(log) == 0


def test_log_csv(tmp_path, reference_matrix, params):
    log = run_scenario(perturb_scenario(duration=0.2), reference_matrix, None, params)
    path = tmp_path / "logs" / "perturb.csv"
    log.write_csv(path)

    header = path.read_text().splitlines()[0]
    assert header == ",".join(LOG_COLUMNS)
    assert header.startswith("t,vx,vy,vz,X,Y,Z,wx,wy,wz,phi,theta,psi,u1,u2,u3,u4,wm1,wm2,wm3,wm4,d_vx")

    frame = read_log_csv(path)
    assert len(frame) == len(log)
    assert frame["sat_flags"].dtype.kind == "i"
    assert np.allclose(frame.to_numpy(dtype=float), np.array(log.rows), rtol=1e-8, atol=1e-12)


def test_read_log_rejects_foreign_csv(tmp_path):
    path = tmp_path / "other.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_log_csv(path)


# ── summaries ─────────────────────────────────────────────────────────────────

def _synthetic_log(count, setpoint=None):
    log = SimLog(name="synthetic", mode="track" if setpoint else "hover", setpoint=setpoint)
    for k in range(count):
        row = [0.0] * ROW_WIDTH
        row[0] = k * 0.01
        log.rows.append(row)
    return log


def test_zero_log_summary():
    summary = summarize(_synthetic_log(50))
    assert summary.rows == 50
    assert all(value == 0.0 for value in summary.max_deviation.values())
    assert summary.settling_time == 0.0
    assert summary.settling_after_disturbance == 0.0
    assert summary.final_position_error == 0.0
    assert summary.rotor_saturation_fraction == 0.0
    assert not summary.window_saturated


def test_single_step_deviation_sets_settling_time():
    log = _synthetic_log(10)
    log.rows[4][4] = 0.5  # X at t = 0.04
    summary = summarize(log)
    assert summary.settling_time == pytest.approx(0.04)
    assert summary.max_position_excursion == 0.5


def test_track_summary_uses_setpoint_and_wraps_yaw():
    log = _synthetic_log(5, Setpoint((1.0, 0.0, 0.0), math.pi - 0.1))
    for row in log.rows:
        row[4] = 1.0
        row[12] = -math.pi + 0.1
    summary = summarize(log)
    assert summary.final_position_error == pytest.approx(0.0)
    assert summary.final_yaw_error == pytest.approx(0.2)


def test_summary_flags_and_disturbance_time():
    log = _synthetic_log(10)
    log.rows[2][21] = 1.0
    log.rows[9][-1] = 4
    summary = summarize(log, window=0.02)
    assert summary.last_disturbance_time == pytest.approx(0.02)
    assert summary.rotor_saturation_fraction == pytest.approx(0.1)
    assert summary.window_saturated


def test_empty_log_cannot_be_summarized():
    with pytest.raises(ValueError):
        summarize(SimLog(name="empty"))


def test_summary_file(tmp_path, reference_matrix, params):
    summary = summarize(run_scenario(perturb_scenario(duration=0.2), reference_matrix, None, params))
    path = tmp_path / "summary.txt"
    summary.write(path)
    values = read_key_values(str(path))
    assert values["name"] == "perturb"
    assert values["aborted"] == "false"
    assert float(values["max_position_excursion"]) == summary.max_position_excursion


# ── campaigns ─────────────────────────────────────────────────────────────────

@pytest.mark.slow
def test_perturbation_settles(reference_matrix, params):
    log = run_scenario(perturb_scenario(), reference_matrix, None, params)
    summary = summarize(log)
    assert not summary.aborted
    assert len(log) == 501
    assert summary.settling_time - 0.5 <= 2.0
    assert summary.max_position_excursion > 0.0


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(5))
def test_random_hover_stays_bounded(reference_matrix, params, seed):
    summary = summarize(run_scenario(random_scenario(seed=seed), reference_matrix, None, params))
    assert not summary.aborted
    assert summary.max_position_excursion <= 0.5


def test_tracking_start_keeps_attitude(reference_matrix, params):
    log = run_scenario(track_scenario(seed=7, duration=2.0), reference_matrix, TrackerConfig(), params)
    rows = np.array(log.rows)
    assert not log.aborted
    assert int(rows[0, -1]) & 4
    assert np.max(np.abs(rows[:, 10:12])) < math.radians(60.0)


@pytest.mark.parametrize("seed", range(3))
def test_random_hover_first_seconds(reference_matrix, params, seed):
    summary = summarize(run_scenario(random_scenario(seed=seed, duration=2.0), reference_matrix, None, params))
    assert not summary.aborted
    assert summary.max_position_excursion <= 0.5


@pytest.mark.slow
def test_tracking_reaches_setpoint(reference_matrix, params):
    log = run_scenario(track_scenario(seed=7), reference_matrix, TrackerConfig(), params)
    summary = summarize(log)
    assert not summary.aborted
    assert summary.window_position_error < 0.2
    assert summary.window_yaw_error < 0.05
    assert not summary.window_saturated
    assert summary.final_position_error < 0.2


@pytest.mark.slow
def test_sweep_over_scaled_vehicles(reference_matrix):
    results = sweep_parameters([0.8, 1.0, 1.25], reference_matrix, workers=2)
    assert [factor for factor, _ in results] == [0.8, 1.0, 1.25]
    for _, summary in results:
        assert not summary.aborted
        assert summary.settling_after_disturbance <= 2.0
