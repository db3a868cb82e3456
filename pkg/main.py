import sys
import os
import argparse
import re
from typing import List, Optional

from src.config import OUTPUT_DIRECTORY
from src.control.controller import ERROR_LAWS, TrackerConfig
from src.design.annealer import AnnealConfig
from src.design.gains import PAPER_GAINS, GainVector
from src.design.poles import PoleSpec, closed_loop_factors
from src.numerics.polynomial import poly_roots
from src.pipeline import QuadrotorControlPipeline
from src.simulation.campaigns import SCENARIOS
from src.simulation.disturbances import INJECTION_MODES
from src.utils.errors import GainFileError, ParameterError, QuadrotorError
from src.vehicle.params import VehicleParams, hover_rotor_speed

EXIT_OK = 0
EXIT_CRITERIA = 2
EXIT_ABORT = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NO_INPUT = 66

SUBSYSTEMS = ("altitude", "yaw", "roll", "pitch")

# Options whose values may start with a minus sign.
NEGATIVE_VALUE_OPTIONS = ("--band", "--setpoint")
NEGATIVE_VALUE = re.compile(r"^-[\d.]")


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors raised instead of exiting with status 2."""

    def error(self, message):
        raise UsageError(message)


def band_type(text: str) -> PoleSpec:
    try:
        return PoleSpec.parse(text)
    except ParameterError as e:
        raise argparse.ArgumentTypeError(str(e))


def float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected comma-separated numbers, got {text!r}")


def attach_negative_values(argv: List[str]) -> List[str]:
    """Rewrite ``--band -30:-6`` as ``--band=-30:-6`` so argparse keeps the value."""
    joined: List[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token in NEGATIVE_VALUE_OPTIONS:
            value = next(tokens, None)
            if value is not None and NEGATIVE_VALUE.match(value):
                joined.append(f"{token}={value}")
                continue
            joined.append(token)
            if value is not None:
                joined.append(value)
            continue
        joined.append(token)
    return joined


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments."""
    argv = attach_negative_values(sys.argv[1:] if argv is None else list(argv))
    parser = ArgumentParser(description="Quadrotor gain design and closed-loop simulation")
    parser.add_argument("--log-level", type=str, help="Logging level (DEBUG, INFO, WARNING, ...)")
    commands = parser.add_subparsers(dest="command", required=True)

    design = commands.add_parser("design", help="Search for gains that place every pole in the band")
    design.add_argument("--seed", type=int, required=True, help="Seed of the first search")
    design.add_argument("--band", type=band_type, default=PoleSpec(), help="Pole real-part band MIN:MAX")
    design.add_argument("--restarts", type=int, default=1, help="Number of seeds to try (seed, seed+1, ...)")
    design.add_argument("--workers", type=int, default=1, help="Processes for multi-seed searches")
    design.add_argument("--initial-temp", type=float, help="Starting temperature")
    design.add_argument("--cooling-ratio", type=float, help="Geometric cooling factor")
    design.add_argument("--steps-per-temp", type=int, help="Proposals per temperature stage")
    design.add_argument("--min-temp", type=float, help="Stop temperature")
    design.add_argument("--step-scale", type=float, help="Proposal spread as a fraction of the gain range")
    design.add_argument("--output", type=str, default=os.path.join(OUTPUT_DIRECTORY, "gains.txt"),
                        help="Gain file to write")

    verify = commands.add_parser("verify", help="Check the closed-loop poles of a gain set")
    _add_gain_source(verify)
    verify.add_argument("--band", type=band_type, default=PoleSpec(), help="Pole real-part band MIN:MAX")

    simulate = commands.add_parser("simulate", help="Run a closed-loop simulation scenario")
    simulate.add_argument("scenario", choices=sorted(SCENARIOS), help="Scenario to run")
    _add_gain_source(simulate)
    _add_params(simulate)
    simulate.add_argument("--seed", type=int, default=0, help="Disturbance seed")
    simulate.add_argument("--duration", type=float, help="Simulated time, s")
    simulate.add_argument("--setpoint", type=float_list, help="Track setpoint X,Y,Z in NED metres")
    simulate.add_argument("--yaw", type=float, help="Track yaw setpoint, rad")
    simulate.add_argument("--error-law", choices=ERROR_LAWS, default="proportional", help="Tracking error law")
    simulate.add_argument("--injection", choices=INJECTION_MODES, default="rate",
                          help="How disturbances enter the plant")
    simulate.add_argument("--csv", type=str, help="Log CSV path")
    simulate.add_argument("--summary", type=str, help="Summary file path")

    params = commands.add_parser("params", help="Show effective vehicle parameters and hover speed")
    _add_params(params)

    sweep = commands.add_parser("sweep", help="Perturbation response of scaled vehicles")
    _add_gain_source(sweep)
    _add_params(sweep)
    sweep.add_argument("--factors", type=float_list, default=[0.5, 0.75, 1.0, 1.5, 2.0],
                       help="Comma-separated scale factors")
    sweep.add_argument("--workers", type=int, default=1, help="Processes to run vehicles on")
    sweep.add_argument("--injection", choices=INJECTION_MODES, default="rate",
                       help="How disturbances enter the plant")

    return parser.parse_args(argv)


def _add_gain_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--gains", type=str, help="Gain file, one gain per line")
    source.add_argument("--paper-gains", action="store_true", help="Use the built-in published gains")


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--params", action="append", default=[],
                        help="Vehicle parameter file or KEY=VALUE override (repeatable)")


def load_gains(args) -> GainVector:
    if args.paper_gains:
        return PAPER_GAINS
    if not args.gains:
        raise UsageError("Provide a gain file with --gains or use --paper-gains")
    return GainVector.load(args.gains)


def print_poles(gains: GainVector) -> None:
    print(f"\n{'subsystem':<10} {'real':>12} {'imag':>12}")
    print("-" * 36)
    for name, factor in zip(SUBSYSTEMS, closed_loop_factors(gains)):
        for pole in poly_roots(factor):
            print(f"{name:<10} {pole.real:>12.4f} {pole.imag:>12.4f}")


def print_summary(summary) -> None:
    print("\n=== Scenario Summary ===")
    for key, value in summary.as_dict().items():
        print(f"{key}={value}")


def cmd_design(args, pipeline: QuadrotorControlPipeline) -> int:
    overrides = {
        "initial_temp": args.initial_temp,
        "cooling_ratio": args.cooling_ratio,
        "steps_per_temp": args.steps_per_temp,
        "min_temp": args.min_temp,
        "step_scale": args.step_scale,
    }
    config = AnnealConfig(seed=args.seed, **{key: value for key, value in overrides.items() if value is not None})
    report = pipeline.design(config, args.band, restarts=args.restarts, workers=args.workers)

    report.result.gains.save(args.output)
    print(f"\nGains written to {args.output} (seed {report.result.seed})")
    print_poles(report.result.gains)
    print(f"\npole_cost={report.result.cost:.6g}")

    if not report.succeeded:
        print("\n❌ Search ended with poles outside the band. Try more --restarts or a slower cooling ratio.")
        return EXIT_CRITERIA
    print("\n✅ All poles inside the band.")
    return EXIT_OK


def cmd_verify(args, pipeline: QuadrotorControlPipeline) -> int:
    gains = load_gains(args)
    if args.paper_gains:
        report = pipeline.verify_paper(gains, args.band)
    else:
        report = pipeline.verify(gains, args.band)

    print_poles(gains)
    print(f"\npole_cost={report.cost:.6g}")
    if report.reference_deviation is not None:
        print(f"max_deviation={report.reference_deviation:.6g}")

    if not report.passed:
        print(f"\n❌ Gains fail the check for band {args.band}.")
        return EXIT_CRITERIA
    print(f"\n✅ Gains pass for band {args.band}.")
    return EXIT_OK


def cmd_simulate(args, pipeline: QuadrotorControlPipeline) -> int:
    gains = load_gains(args)
    params = VehicleParams.load(args.params)
    factory = SCENARIOS[args.scenario]

    options = {"injection": args.injection}
    if args.duration is not None:
        options["duration"] = args.duration
    if args.scenario != "perturb":
        options["seed"] = args.seed
    if args.scenario == "track":
        if args.setpoint is not None:
            if len(args.setpoint) != 3:
                raise UsageError("--setpoint needs exactly three values X,Y,Z")
            options["position"] = args.setpoint
        if args.yaw is not None:
            options["yaw"] = args.yaw
    scenario = factory(**options)

    csv_path = args.csv or os.path.join(OUTPUT_DIRECTORY, f"{scenario.name}.csv")
    summary_path = args.summary or os.path.join(OUTPUT_DIRECTORY, f"{scenario.name}_summary.txt")
    log, summary = pipeline.simulate(
        scenario, gains, params, TrackerConfig(error_law=args.error_law), csv_path, summary_path
    )

    print_summary(summary)
    print(f"\nLog: {csv_path}")
    print(f"Summary: {summary_path}")

    if log.aborted:
        print(f"\n❌ Simulation aborted at t={log.abort_time:.3f} s: {log.abort_reason}")
        return EXIT_ABORT
    print("\n✅ Simulation completed.")
    return EXIT_OK


def cmd_params(args, pipeline: QuadrotorControlPipeline) -> int:
    params = VehicleParams.load(args.params)
    speed, feasible = hover_rotor_speed(params)

    print("\n=== Vehicle Parameters ===")
    for key, value in params.as_dict().items():
        print(f"{key}={value:g}")
    print(f"hover_speed={speed:.2f}")
    print(f"hover_feasible={str(feasible).lower()}")

    if not feasible:
        print(f"\n❌ Hover needs {speed:.2f} rad/s but omega_max is {params.omega_max:.2f} rad/s.")
        return EXIT_DATA
    return EXIT_OK


def cmd_sweep(args, pipeline: QuadrotorControlPipeline) -> int:
    gains = load_gains(args)
    params = VehicleParams.load(args.params)
    if not args.factors:
        raise UsageError("--factors needs at least one value")

    scenario = SCENARIOS["perturb"](injection=args.injection)
    results = pipeline.sweep(args.factors, gains, params, scenario=scenario, workers=args.workers)

    print(f"\n{'factor':>8} {'aborted':>8} {'settle_s':>10} {'max_pos_m':>10} {'max_euler':>10}")
    print("-" * 50)
    failures = 0
    for factor, summary in results:
        settled = summary.settling_after_disturbance <= 2.0
        if summary.aborted or not settled:
            failures += 1
        print(f"{factor:>8g} {str(summary.aborted):>8} {summary.settling_after_disturbance:>10.3f} "
              f"{summary.max_position_excursion:>10.4f} {summary.max_euler_deviation:>10.4f}")

    if failures:
        print(f"\n❌ {failures} of {len(results)} vehicles aborted or failed to settle within 2 s.")
        return EXIT_ABORT
    print(f"\n✅ All {len(results)} vehicles settled.")
    return EXIT_OK


COMMANDS = {
    "design": cmd_design,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
    "params": cmd_params,
    "sweep": cmd_sweep,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the application."""
    try:
        args = parse_arguments(argv)
        pipeline = QuadrotorControlPipeline(log_level=args.log_level)
        return COMMANDS[args.command](args, pipeline)
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        print("Run with --help for usage.", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, GainFileError) as e:
        print(f"\n❌ Error: {e}", file=sys.stderr)
        print("Check that the input file exists and is readable.", file=sys.stderr)
        return EXIT_NO_INPUT
    except (ParameterError, QuadrotorError, ValueError) as e:
        print(f"\n❌ Error: {e}", file=sys.stderr)
        if isinstance(e, ParameterError):
            print("Vehicle parameters must be finite and strictly positive.", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
