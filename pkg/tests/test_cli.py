import pytest

import main
from src.design.gains import GainVector
from src.design.poles import PoleSpec, closed_loop_poles, pole_cost
from src.utils.kvfile import read_key_values


def run(argv, capsys):
    code = main.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _pole_rows(out):
    rows = []
    for line in out.splitlines():
        parts = line.split()
        if len(parts) == 3 and parts[0] in main.SUBSYSTEMS:
            rows.append((parts[0], float(parts[1]), float(parts[2])))
    return rows


# ── params ────────────────────────────────────────────────────────────────────

def test_params_defaults(capsys):
    code, out, _ = run(["params"], capsys)
    assert code == main.EXIT_OK
    assert "hover_speed=558.69" in out
    assert "hover_feasible=true" in out


def test_params_heavy_vehicle_infeasible(capsys):
    code, out, _ = run(["params", "--params", "m=50"], capsys)
    assert code == main.EXIT_DATA
    assert "hover_feasible=false" in out


def test_params_default_override_is_identity(capsys):
    _, default_out, _ = run(["params"], capsys)
    code, out, _ = run(["params", "--params", "L=0.27"], capsys)
    assert code == main.EXIT_OK
    assert out == default_out


def test_params_from_file(tmp_path, capsys):
    path = tmp_path / "vehicle.env"
    path.write_text("m=1.0\n")
    code, out, _ = run(["params", "--params", str(path)], capsys)
    assert code == main.EXIT_OK
    assert "m=1\n" in out


@pytest.mark.parametrize("entry, expected", [
    ("m=-1", main.EXIT_DATA),
    ("wingspan=2", main.EXIT_DATA),
    ("missing.env", main.EXIT_NO_INPUT),
])
def test_params_errors(entry, expected, capsys):
    code, _, err = run(["params", "--params", entry], capsys)
    assert code == expected
    assert "Error" in err


# ── usage ─────────────────────────────────────────────────────────────────────

@pytest.mark.parametrize("argv", [
    [],
    ["fly"],
    ["verify", "--band=oops"],
    ["verify"],
    ["simulate", "perturb"],
    ["simulate", "hover", "--paper-gains"],
    ["verify", "--paper-gains", "--gains", "g.txt"],
    ["design", "--restarts", "2"],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == main.EXIT_USAGE
    assert "Error" in err


# ── verify ────────────────────────────────────────────────────────────────────

def test_verify_published_gains(capsys):
    code, out, _ = run(["verify", "--paper-gains"], capsys)
    assert code == main.EXIT_OK
    deviation = float(out.split("max_deviation=")[1].split()[0])
    assert deviation < 0.05
    assert len(_pole_rows(out)) == 12


def test_verify_published_gains_narrow_band(capsys):
    code, _, _ = run(["verify", "--paper-gains", "--band=-7:-6"], capsys)
    assert code == main.EXIT_CRITERIA


def test_verify_band_as_separate_token(capsys):
    code, _, _ = run(["verify", "--paper-gains", "--band", "-7:-6"], capsys)
    assert code == main.EXIT_CRITERIA


@pytest.mark.parametrize("argv, attr, expected", [
    (["design", "--seed", "1", "--band", "-30:-6"], "band", PoleSpec(-30.0, -6.0)),
    (["verify", "--band", "-20:-8"], "band", PoleSpec(-20.0, -8.0)),
    (["simulate", "track", "--setpoint", "-1,2,3"], "setpoint", [-1.0, 2.0, 3.0]),
    (["simulate", "track", "--setpoint", "1,2,3", "--yaw", "-1.5"], "yaw", -1.5),
])
def test_negative_values_after_option(argv, attr, expected):
    assert getattr(main.parse_arguments(argv), attr) == expected


def test_attach_negative_values_leaves_other_tokens():
    argv = ["simulate", "track", "--setpoint", "1,2,3", "--band"]
    assert main.attach_negative_values(argv) == argv


def test_verify_zero_gain_file(tmp_path, capsys):
    path = tmp_path / "zero.txt"
    GainVector((0.0,) * 12).save(path)
    code, out, _ = run(["verify", "--gains", str(path)], capsys)
    assert code == main.EXIT_CRITERIA
    assert all(re == 0.0 and im == 0.0 for _, re, im in _pole_rows(out))


def test_verify_missing_gain_file(tmp_path, capsys):
    code, _, _ = run(["verify", "--gains", str(tmp_path / "absent.txt")], capsys)
    assert code == main.EXIT_NO_INPUT


# ── design ────────────────────────────────────────────────────────────────────

@pytest.mark.slow
def test_design_is_deterministic(tmp_path, capsys):
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"
    code_a, out_a, _ = run(["design", "--seed", "42", "--output", str(first)], capsys)
    code_b, _, _ = run(["design", "--seed", "42", "--output", str(second)], capsys)

    assert code_a == code_b
    assert first.read_text() == second.read_text()

    cost = pole_cost(closed_loop_poles(GainVector.load(first)), PoleSpec())
    assert (code_a == main.EXIT_OK) == (cost == 0.0)
    assert code_a in (main.EXIT_OK, main.EXIT_CRITERIA)


@pytest.mark.slow
def test_design_places_poles_in_band(tmp_path, capsys):
    path = tmp_path / "gains.txt"
    code, out, _ = run(["design", "--seed", "42", "--restarts", "3", "--band", "-30:-6", "--output", str(path)], capsys)
    assert code == main.EXIT_OK
    rows = _pole_rows(out)
    assert len(rows) == 12
    assert all(-30.0 <= re <= -6.0 for _, re, _ in rows)


# ── simulate and sweep ────────────────────────────────────────────────────────

@pytest.mark.slow
def test_simulate_perturb(tmp_path, capsys):
    csv_path, summary_path = tmp_path / "perturb.csv", tmp_path / "perturb.txt"
    code, out, _ = run(["simulate", "perturb", "--paper-gains",
                        "--csv", str(csv_path), "--summary", str(summary_path)], capsys)
    assert code == main.EXIT_OK
    assert csv_path.exists()

    summary = read_key_values(str(summary_path))
    assert float(summary["settling_time"]) - 0.5 <= 2.0
    assert "settling_after_disturbance=" in out


@pytest.mark.slow
def test_simulate_track(tmp_path, capsys):
    summary_path = tmp_path / "track.txt"
    code, _, _ = run(["simulate", "track", "--paper-gains", "--seed", "7",
                      "--csv", str(tmp_path / "track.csv"), "--summary", str(summary_path)], capsys)
    assert code == main.EXIT_OK
    assert float(read_key_values(str(summary_path))["final_position_error"]) < 0.2


@pytest.mark.slow
def test_simulate_random(tmp_path, capsys):
    summary_path = tmp_path / "random.txt"
    code, out, _ = run(["simulate", "random", "--paper-gains", "--seed", "7",
                        "--csv", str(tmp_path / "random.csv"), "--summary", str(summary_path)], capsys)
    assert code == main.EXIT_OK
    assert "max_position_excursion=" in out
    assert read_key_values(str(summary_path))["aborted"] == "false"


def test_simulate_short_run_with_params(tmp_path, capsys):
    code, _, _ = run(["simulate", "random", "--paper-gains", "--duration", "0.5", "--params", "m=1.5",
                      "--csv", str(tmp_path / "r.csv"), "--summary", str(tmp_path / "r.txt")], capsys)
    assert code == main.EXIT_OK
    assert len((tmp_path / "r.csv").read_text().splitlines()) == 52


def test_simulate_setpoint_needs_three_values(tmp_path, capsys):
    code, _, _ = run(["simulate", "track", "--paper-gains", "--setpoint", "1,2",
                      "--csv", str(tmp_path / "t.csv")], capsys)
    assert code == main.EXIT_USAGE


@pytest.mark.slow
def test_sweep(capsys):
    code, out, _ = run(["sweep", "--paper-gains", "--factors", "0.8,1.0"], capsys)
    assert code == main.EXIT_OK
    assert "All 2 vehicles settled" in out
