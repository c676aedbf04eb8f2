import sys
from functools import wraps
from pathlib import Path
from typing import Any, Callable

import click
import numpy as np
import pandas as pd

from induction_confidence import __version__
from induction_confidence.inference.confirmation import degree_of_confirmation
from induction_confidence.inference.models import Evidence, ProbInterval
from induction_confidence.inference.posterior_core import (
    all_success_confidence,
    confidence_on_interval,
    trials_for_confidence,
)
from induction_confidence.inference.succession import GENERATOR, rule_of_succession, run_urn_experiment
from induction_confidence.scenarios.config import get_scenarios
from induction_confidence.simulation.bernoulli import (
    lln_confidence_trajectory,
    simulate_bernoulli,
    windowed_frequency,
)
from induction_confidence.simulation.demon import analyze_cycles, fit_cycle_growth, simulate_demon
from induction_confidence.simulation.models import DemonConfig
from induction_confidence.simulation.replicas import replica_seeds, run_replicas
from induction_confidence.utils.config import load_config_file
from induction_confidence.utils.formatting import emit, write_csv, write_manifest
from induction_confidence.utils.logging_config import logger, setup_logging
from induction_confidence.utils.manifest import build_manifest
from induction_confidence.utils.progress import RunState, progress

FORMATS = ["table", "json", "csv"]
# checkpoints kept per simulation when no stride is given
DEFAULT_CHECKPOINTS = 1_000

format_option = click.option(
    "--format", "fmt", type=click.Choice(FORMATS), default="table", show_default=True,
    help="Output format.",
)
output_option = click.option(
    "--output", type=click.Path(dir_okay=False, writable=True), default=None,
    help="Write the report to this file instead of stdout (manifest written alongside).",
)


class IntervalParamType(click.ParamType):
    """`lo,hi` on the command line."""

    name = "lo,hi"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        parts = str(value).split(",")
        if len(parts) != 2:
            self.fail(f"expected 'lo,hi', got {value!r}", param, ctx)
        try:
            return float(parts[0]), float(parts[1])
        except ValueError:
            self.fail(f"interval bounds must be numbers, got {value!r}", param, ctx)


INTERVAL = IntervalParamType()


def wrap_with_progress(func: Callable, task_name: str, task_description: str = "Running") -> Callable:
    """Wrap a function with progress tracking updates using RunProgress."""
    @wraps(func)
    def wrapper(*args, **kwargs):
        seed = kwargs.get("seed")
        if seed is None and args and isinstance(args[0], int):
            seed = args[0]
        detail = f"seed {seed}" if seed is not None else None

        try:
            progress.update_status(task_name, detail, RunState.RUNNING, f"{task_description}...")
            result = func(*args, **kwargs)
            progress.update_status(task_name, detail, RunState.DONE)
            return result
        except Exception as e:
            logger.error(f"Error in {func.__name__} for {task_name}: {str(e)}")
            progress.update_status(task_name, detail, RunState.FAILED, f"Error: {str(e)[:50]}")
            raise
    return wrapper


def exit_on_error(func: Callable) -> Callable:
    """Domain and I/O failures print `Error: ...` and exit 1; usage errors stay with click (exit 2)."""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (ValueError, OSError) as e:
            logger.debug(f"{func.__name__} failed: {e!r}")
            click.echo(f"Error: {e}", err=True)
            click.get_current_context().exit(1)
    return wrapper


def resolve_seed(seed: int | None) -> int:
    """Use the given seed, or draw one and report it so the run can be repeated."""
    if seed is not None:
        return seed
    drawn = int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
    click.echo(f"seed: {drawn}", err=True)
    return drawn


def default_stride(trials: int, stride: int | None) -> int:
    if stride is not None:
        return stride
    return max(1, trials // DEFAULT_CHECKPOINTS)


def _defaults_for(command: click.Command, config: dict[str, Any]) -> dict[str, Any]:
    if isinstance(command, click.Group):
        nested = {name: _defaults_for(sub, config) for name, sub in command.commands.items()}
        return {**config, **nested}
    return dict(config)


def _load_config(ctx: click.Context, param: click.Parameter, value: str | None) -> None:
    if value is None:
        return
    try:
        config = load_config_file(value)
    except OSError as e:
        raise click.BadParameter(str(e), ctx=ctx, param=param)
    if "format" in config:
        config["fmt"] = config.pop("format")
    ctx.default_map = _defaults_for(ctx.command, config)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", type=click.Path(exists=True, dir_okay=False), is_eager=True,
              expose_value=False, callback=_load_config,
              help="key=value file with defaults for any flag; explicit flags win.")
@click.option("--log-level", default=None,
              help="Override LOG_LEVEL for this run (DEBUG, INFO, WARNING, ...).")
@click.version_option(__version__, prog_name="induction-confidence")
def cli(log_level: str | None):
    """Confidence, confirmation and succession for inductive inference."""
    if log_level:
        setup_logging(level=log_level)


@cli.command()
@click.option("--trials", type=click.IntRange(min=0), required=True, help="Number of trials N.")
@click.option("--occurrences", type=click.IntRange(min=0), required=True, help="Occurrences N_A.")
@click.option("--interval", type=INTERVAL, required=True, help="Interval D as lo,hi.")
@format_option
@output_option
@exit_on_error
def confidence(trials: int, occurrences: int, interval: tuple[float, float], fmt: str, output: str | None):
    """Posterior confidence that the probability lies in an interval."""
    lo, hi = interval
    evidence = Evidence(trials=trials, occurrences=occurrences)
    report = confidence_on_interval(evidence, ProbInterval(lo=lo, hi=hi))
    result = {
        "trials": trials,
        "occurrences": occurrences,
        "lo": report.interval.lo,
        "hi": report.interval.hi,
        "confidence": report.confidence,
    }
    manifest = build_manifest("confidence", {"trials": trials, "occurrences": occurrences, "lo": lo, "hi": hi})
    emit(result, fmt, manifest, output, title="Confidence")


@cli.command()
@click.option("--trials", type=click.IntRange(min=0), required=True, help="Number of trials N.")
@click.option("--occurrences", type=click.IntRange(min=0), required=True, help="Occurrences N_A.")
@format_option
@output_option
@exit_on_error
def confirm(trials: int, occurrences: int, fmt: str, output: str | None):
    """Degree of confirmation, with the Rule of Succession alongside."""
    evidence = Evidence(trials=trials, occurrences=occurrences)
    report = degree_of_confirmation(evidence)
    result = {
        "trials": trials,
        "occurrences": occurrences,
        "best_width": report.best_width,
        "lo": report.best_interval.lo,
        "hi": report.best_interval.hi,
        "best_confidence": report.best_confidence,
        "degree": report.degree,
        "succession": rule_of_succession(evidence).probability_next,
    }
    manifest = build_manifest("confirm", {"trials": trials, "occurrences": occurrences})
    emit(result, fmt, manifest, output, title="Degree of confirmation")


@cli.command()
@click.option("--trials", type=click.IntRange(min=0), required=True, help="Number of trials N.")
@click.option("--occurrences", type=click.IntRange(min=0), required=True, help="Occurrences N_A.")
@click.option("--samples", type=click.IntRange(min=1), default=None,
              help="Also run the urn experiment with this many attempts.")
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Seed for the urn experiment.")
@format_option
@output_option
@exit_on_error
def succession(trials: int, occurrences: int, samples: int | None, seed: int | None,
               fmt: str, output: str | None):
    """Laplace's Rule of Succession, optionally checked by simulation."""
    evidence = Evidence(trials=trials, occurrences=occurrences)
    result: dict[str, Any] = {
        "trials": trials,
        "occurrences": occurrences,
        "probability_next": rule_of_succession(evidence).probability_next,
    }
    parameters: dict[str, Any] = {"trials": trials, "occurrences": occurrences}
    generator = None
    if samples is not None:
        seed = resolve_seed(seed)
        report = run_urn_experiment(evidence, samples, seed)
        result.update({
            "monte_carlo": report.estimate,
            "standard_error": report.standard_error,
            "accepted": report.accepted,
            "attempts": report.attempts,
        })
        parameters["samples"] = samples
        generator = report.generator
    manifest = build_manifest("succession", parameters, seed=seed if samples else None, generator=generator)
    emit(result, fmt, manifest, output, title="Rule of Succession")


@cli.command("trials-needed")
@click.option("--lo", type=float, required=True, help="Lower end of the interval [lo, 1].")
@click.option("--target", type=float, required=True, help="Required confidence.")
@format_option
@output_option
@exit_on_error
def trials_needed(lo: float, target: float, fmt: str, output: str | None):
    """Straight successes needed to reach a confidence on [lo, 1]."""
    n = trials_for_confidence(lo, target)
    result = {"lo": lo, "target": target, "trials": n, "confidence": all_success_confidence(n, lo)}
    manifest = build_manifest("trials-needed", {"lo": lo, "target": target})
    emit(result, fmt, manifest, output, title="Trials needed")


@cli.command()
@click.argument("name", type=click.Choice(list(get_scenarios().keys())))
@click.option("--n-max", type=click.IntRange(min=1), default=100, show_default=True,
              help="Largest N on the swans curve.")
@format_option
@output_option
@exit_on_error
def scenario(name: str, n_max: int, fmt: str, output: str | None):
    """Worked examples: swans, turkey, sunrise, sunrise-history."""
    display_name, builder = get_scenarios()[name]
    logger.info(f"Running scenario {name}")
    parameters: dict[str, Any] = {"name": name}
    if name == "swans":
        result = builder(n_max=n_max)
        parameters["n_max"] = n_max
    else:
        result = builder()
    manifest = build_manifest("scenario", parameters)
    emit(result, fmt, manifest, output, title=display_name)


@cli.group()
@click.option("--quiet", "-q", is_flag=True, default=False, help="Suppress status lines on stderr.")
@click.pass_context
def simulate(ctx: click.Context, quiet: bool):
    """Seeded simulations: i.i.d. trials and the demon coin."""
    ctx.ensure_object(dict)
    ctx.obj["quiet"] = quiet


def _prepare_directory(output: str) -> Path:
    directory = Path(output)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


@simulate.command()
@click.option("--p", "p", type=float, default=0.5, show_default=True, help="Success probability.")
@click.option("--n", "n", type=click.IntRange(min=1), default=100_000, show_default=True, help="Number of trials.")
@click.option("--epsilon", type=float, default=0.05, show_default=True, help="Half-width of the confidence window.")
@click.option("--stride", type=click.IntRange(min=1), default=None,
              help="Checkpoint spacing (default: n / 1000).")
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Seed; drawn and printed when absent.")
@click.option("--replicas", type=click.IntRange(min=1), default=1, show_default=True,
              help="Independent runs with seeds seed, seed+1, ...")
@click.option("--output", type=click.Path(file_okay=False), default=".", show_default=True,
              help="Directory for trajectory CSVs and manifest.json.")
@format_option
@click.pass_context
@exit_on_error
def lln(ctx: click.Context, p: float, n: int, epsilon: float, stride: int | None, seed: int | None,
        replicas: int, output: str, fmt: str):
    """Law of large numbers: running ratio and confidence on [ratio - eps, ratio + eps]."""
    seed = resolve_seed(seed)
    stride = default_stride(n, stride)
    directory = _prepare_directory(output)

    def run(replica_seed: int) -> pd.DataFrame:
        trajectory = simulate_bernoulli(p, n, replica_seed, stride=stride)
        confidence_frame = lln_confidence_trajectory(trajectory, epsilon)
        return trajectory.checkpoints[["n", "ratio"]].merge(confidence_frame, on="n", how="left")

    seeds = replica_seeds(seed, replicas)
    progress.start(quiet=ctx.obj["quiet"])
    try:
        frames = run_replicas(wrap_with_progress(run, "lln", "Simulating"), seeds)
    finally:
        progress.stop()

    rows = []
    for i, (replica_seed, frame) in enumerate(zip(seeds, frames)):
        name = "trajectory.csv" if replicas == 1 else f"trajectory_r{i}.csv"
        write_csv(frame, directory / name)
        rows.append({
            "replica": i,
            "seed": replica_seed,
            "trials": int(frame["n"].iloc[-1]),
            "final_ratio": float(frame["ratio"].iloc[-1]),
            "final_confidence": float(frame["confidence"].iloc[-1]),
        })

    parameters = {"p": p, "n": n, "epsilon": epsilon, "stride": stride, "replicas": replicas}
    manifest = build_manifest("simulate lln", parameters, seed=seed, generator=GENERATOR)
    write_manifest(manifest, directory / "manifest.json")
    emit(pd.DataFrame(rows), fmt, manifest, title="Law of large numbers")


_demon_defaults = DemonConfig()


@simulate.command()
@click.option("--p-high", type=float, default=_demon_defaults.p_high, show_default=True)
@click.option("--p-low", type=float, default=_demon_defaults.p_low, show_default=True)
@click.option("--upper-threshold", type=float, default=_demon_defaults.upper_threshold, show_default=True)
@click.option("--lower-threshold", type=float, default=_demon_defaults.lower_threshold, show_default=True)
@click.option("--p-initial", type=float, default=_demon_defaults.p_initial, show_default=True)
@click.option("--warmup-trials", type=click.IntRange(min=0), default=_demon_defaults.warmup_trials,
              show_default=True, help="Trials at p_initial before any threshold check.")
@click.option("--max-trials", type=click.IntRange(min=1), default=1_000_000, show_default=True)
@click.option("--stride", type=click.IntRange(min=1), default=None,
              help="Checkpoint spacing (default: max-trials / 1000).")
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Seed; drawn and printed when absent.")
@click.option("--window", type=click.IntRange(min=1), default=None,
              help="Also write the trailing-window frequency over this many trials.")
@click.option("--output", type=click.Path(file_okay=False), default=".", show_default=True,
              help="Directory for trajectory.csv, cycles.csv and manifest.json.")
@format_option
@click.pass_context
@exit_on_error
def demon(ctx: click.Context, p_high: float, p_low: float, upper_threshold: float, lower_threshold: float,
          p_initial: float, warmup_trials: int, max_trials: int, stride: int | None, seed: int | None,
          window: int | None, output: str, fmt: str):
    """The demon coin: a running ratio that oscillates without converging."""
    config = DemonConfig(
        p_high=p_high,
        p_low=p_low,
        upper_threshold=upper_threshold,
        lower_threshold=lower_threshold,
        p_initial=p_initial,
        warmup_trials=warmup_trials,
    )
    seed = resolve_seed(seed)
    stride = default_stride(max_trials, stride)
    directory = _prepare_directory(output)

    progress.start(quiet=ctx.obj["quiet"])
    try:
        trajectory, cycles = wrap_with_progress(simulate_demon, "demon", "Simulating")(
            config=config, max_trials=max_trials, seed=seed, stride=stride
        )
    finally:
        progress.stop()

    write_csv(trajectory.checkpoints[["n", "ratio"]], directory / "trajectory.csv")
    write_csv(analyze_cycles(cycles), directory / "cycles.csv")
    if window is not None:
        write_csv(windowed_frequency(trajectory, window), directory / "window.csv")

    growth = fit_cycle_growth(cycles, skip=1)
    parameters = {**config.model_dump(), "max_trials": max_trials, "stride": stride, "window": window}
    manifest = build_manifest("simulate demon", parameters, seed=seed, generator=GENERATOR)
    write_manifest(manifest, directory / "manifest.json")

    summary = {
        "seed": seed,
        "trials": trajectory.trials,
        "cycles": len(cycles),
        "final_ratio": trajectory.final_ratio,
        "growth_factor": float("nan") if growth is None else growth,
    }
    emit(summary, fmt, manifest, title="Demon coin")


def main():
    cli(prog_name="induction-confidence")


if __name__ == "__main__":
    sys.exit(main())
