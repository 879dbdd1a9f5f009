"""
CLI module for fractalqm.

Command-line interface for parameter sweeps, figure data and dimension
queries. Data tables go to stdout or to --output; diagnostics go to stderr.

Exit codes: 0 success, 1 computation or file failure, 2 usage error.
"""

import functools
import logging
import math
from pathlib import Path
from typing import Any, Callable, Optional

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from ..config import Config
from ..errors import FractalQMError, ParameterError
from ..figures import (
    SweepSpec,
    evolution_table,
    hydrogen_density_table,
    hydrogen_energy_table,
    oscillator_density_table,
    oscillator_ladder_table,
    oscillator_position_table,
    residual_table,
    staircase_table,
)
from ..format import PLOT_LAYOUTS, DataTable, OutputFormat, emit_plot_script, format_value
from ..fractalset import build_cantor
from ..hydrogen import FractalDims, IntegrationMeasure, QuantumNumbers, RadialMode
from ..measure import StaircaseBackend, gamma_dimension_report


console = Console()
err_console = Console(stderr=True)
logger = logging.getLogger(__name__)

LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


class NumberList(click.ParamType):
    """Comma-separated list of numbers."""

    def __init__(self, cast: Callable[[str], Any] = float):
        self.cast = cast
        self.name = "int list" if cast is int else "float list"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> list:
        if isinstance(value, list):
            return value
        try:
            items = [self.cast(item.strip()) for item in str(value).split(",") if item.strip()]
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated {self.name}", param, ctx)
        if not items:
            self.fail("list must not be empty", param, ctx)
        return items


FLOATS = NumberList(float)
INTS = NumberList(int)


def _configure_logging(verbose: int) -> None:
    level = LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)]
    root = logging.getLogger("fractalqm")
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = RichHandler(console=Console(stderr=True), show_path=False, show_time=False)
    handler.setFormatter(logging.Formatter("%(message)s"))
    root.addHandler(handler)
    root.setLevel(level)
    root.propagate = False


def _handles_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Map library errors to the CLI exit codes."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except ParameterError as e:
            raise click.UsageError(str(e), ctx=ctx) from e
        except (FractalQMError, OSError) as e:
            logger.error(f"{ctx.command.name} failed: {e}")
            err_console.print(f"[red]Error:[/red] {e}")
            ctx.exit(1)

    return wrapper


def _load_config(ctx: click.Context, **overrides: Any) -> Config:
    """Config file from the group, then global flags, then command flags."""
    merged = dict(ctx.obj["overrides"])
    merged.update(overrides)
    return Config(ctx.obj["config_path"]).load(merged)


def _emit(cfg: Config, table: DataTable) -> None:
    fmt = cfg.run.output_format
    path = cfg.run.output_path
    if path is None:
        click.echo(table.render(fmt), nl=False)
        return
    table.write(path, fmt)
    logger.info(f"wrote {len(table)} rows to {path}")


def _alphas(values: Optional[list[float]], cfg: Config) -> list[float]:
    alphas = values if values else [cfg.run.alpha]
    for alpha in alphas:
        FractalDims(alpha)
    return alphas


@click.group()
@click.version_option(version="0.1.0", prog_name="fractalqm")
@click.option(
    "--config", "-c",
    type=click.Path(exists=True, dir_okay=False),
    help="Path to configuration file (TOML, YAML or JSON)",
)
@click.option(
    "--output", "-o",
    type=click.Path(dir_okay=False),
    help="Write data to this file instead of stdout",
)
@click.option(
    "--format", "output_format",
    type=click.Choice([f.value for f in OutputFormat]),
    help="Data format",
)
@click.option("--verbose", "-v", count=True, help="More log output (-v info, -vv debug)")
@click.pass_context
def main(ctx, config: Optional[str], output: Optional[str], output_format: Optional[str], verbose: int):
    """fractalqm - calculus on fractal sets and fractal quantum mechanics"""
    ctx.ensure_object(dict)
    _configure_logging(verbose)
    ctx.obj["config_path"] = Path(config) if config else None
    ctx.obj["overrides"] = {"output_path": output, "output_format": output_format}


@main.command()
@click.option("--keep-ratio", type=float, help="Kept fraction of each interval, in (0, 1/2]")
@click.option("--depth", type=int, help="Construction depth of the approximant")
@click.option("--tol", type=float, default=0.01, show_default=True, help="Bisection tolerance")
@click.pass_context
@_handles_errors
def dimension(ctx, keep_ratio, depth, tol):
    """Estimate the gamma-dimension of a Cantor set"""
    cfg = _load_config(ctx, keep_ratio=keep_ratio, depth=depth)
    spec = cfg.cantor_spec
    fset = build_cantor(spec, cfg.run.depth)
    report = gamma_dimension_report(fset, spec.c1, spec.c2, tol)

    trials = DataTable(("alpha", "mass_initial", "mass_final", "vanishing"))
    for trial in sorted(report.trials, key=lambda p: p.alpha):
        trials.append(trial.alpha, trial.mass_initial, trial.mass_final, int(trial.vanishing))

    if cfg.run.output_path is not None:
        _emit(cfg, trials)

    table = Table(title=f"Mass trend, keep ratio {format_value(spec.keep_ratio)}, depth {cfg.run.depth}")
    table.add_column("alpha", justify="right")
    table.add_column("initial mass", justify="right")
    table.add_column("final mass", justify="right")
    table.add_column("trend")
    for alpha, initial, final, vanishing in trials.rows:
        table.add_row(
            f"{alpha:.6f}", f"{initial:.6g}", f"{final:.6g}", "vanishing" if vanishing else "divergent"
        )
    console.print(table)
    console.print(f"gamma-dimension: {report.value:.6f} (tol {report.tol:g})")
    if not spec.is_full_interval:
        console.print(f"similarity dimension: {spec.similarity_dimension:.6f}")


@main.command()
@click.option("--alpha", type=float, help="Staircase exponent in (0, 1]")
@click.option(
    "--backend",
    type=click.Choice([b.value for b in StaircaseBackend]),
    help="Staircase evaluation",
)
@click.option("--depth", type=int, help="Approximant depth for the numeric backend")
@click.option("--normalization", type=float, help="S at the right end of the support (cantor_analytic)")
@click.option("--xmin", type=float, default=0.0, show_default=True)
@click.option("--xmax", type=float, default=1.0, show_default=True)
@click.option("--samples", type=int, default=101, show_default=True)
@click.pass_context
@_handles_errors
def staircase(ctx, alpha, backend, depth, normalization, xmin, xmax, samples):
    """Sweep the integral staircase S(x); columns x,S"""
    cfg = _load_config(
        ctx, alpha=alpha, staircase_backend=backend, depth=depth, normalization=normalization
    )
    s = cfg.staircase_choice.build(cfg.run.alpha)
    _emit(cfg, staircase_table(s, SweepSpec("x", xmin, xmax, samples)))


@main.command("hydrogen-density")
@click.option("--n", "n", type=int, default=1, show_default=True, help="Principal quantum number")
@click.option("--l", "l", type=int, default=0, show_default=True, help="Angular quantum number")
@click.option("--alpha", type=FLOATS, help="Comma-separated alphas, e.g. 0.6,0.8,1.0")
@click.option("--rmin", type=float, default=0.0, show_default=True)
@click.option("--rmax", type=float, default=10.0, show_default=True)
@click.option("--samples", type=int, default=200, show_default=True)
@click.option("--mode", type=click.Choice([m.value for m in RadialMode]), help="Density form")
@click.option("--amplitude", type=float, default=1.0, show_default=True, help="A_nl")
@click.option(
    "--normalize",
    type=click.Choice([m.value for m in IntegrationMeasure]),
    help="Replace A_nl by the normalization constant for this measure",
)
@click.option("--cells", type=int, help="Integration cells used by --normalize")
@click.option("--backend", type=click.Choice([b.value for b in StaircaseBackend]))
@click.pass_context
@_handles_errors
def hydrogen_density(ctx, n, l, alpha, rmin, rmax, samples, mode, amplitude, normalize, cells, backend):
    """Radial density over r for each alpha; columns r,alpha,P"""
    cfg = _load_config(ctx, radial_mode=mode, staircase_backend=backend, integration_cells=cells)
    qn = QuantumNumbers(n, l)
    table = hydrogen_density_table(
        qn,
        _alphas(alpha, cfg),
        SweepSpec("r", rmin, rmax, samples),
        cfg.run.radial_mode,
        cfg.constants,
        amplitude,
        cfg.staircase_choice,
        normalize,
        cfg.falpha_config,
    )
    _emit(cfg, table)


@main.command("hydrogen-energies")
@click.option("--n-min", type=int, default=1, show_default=True)
@click.option("--n-max", type=int, default=5, show_default=True)
@click.option("--alpha", type=FLOATS, help="Comma-separated alphas")
@click.option("--backend", type=click.Choice([b.value for b in StaircaseBackend]))
@click.option("--units", type=click.Choice(["atomic", "si"]), help="Unit system")
@click.pass_context
@_handles_errors
def hydrogen_energies(ctx, n_min, n_max, alpha, backend, units):
    """Fractal energy levels; columns n,alpha,E_hartree,E_eV"""
    cfg = _load_config(ctx, staircase_backend=backend, unit_system=units)
    if n_min < 1:
        raise ParameterError(f"--n-min must be >= 1, got {n_min}")
    if n_max < n_min:
        raise ParameterError(f"--n-max must be >= --n-min, got {n_max} < {n_min}")
    table = hydrogen_energy_table(
        list(range(n_min, n_max + 1)), _alphas(alpha, cfg), cfg.constants, cfg.staircase_choice
    )
    _emit(cfg, table)


@main.command("ho-density")
@click.option("--n", "levels", type=INTS, default="0", show_default=True, help="Comma-separated levels")
@click.option("--alpha", type=FLOATS, help="Comma-separated alphas")
@click.option("--xmin", type=float, default=-5.0, show_default=True)
@click.option("--xmax", type=float, default=5.0, show_default=True)
@click.option("--samples", type=int, default=201, show_default=True)
@click.option("--mass", type=float)
@click.option("--omega-alpha", type=float)
@click.option("--hbar", type=float)
@click.option("--backend", type=click.Choice([b.value for b in StaircaseBackend]))
@click.pass_context
@_handles_errors
def ho_density(ctx, levels, alpha, xmin, xmax, samples, mass, omega_alpha, hbar, backend):
    """Oscillator densities over x; columns x,alpha,n,P"""
    cfg = _load_config(ctx, mass=mass, omega_alpha=omega_alpha, hbar=hbar, staircase_backend=backend)
    table = oscillator_density_table(
        levels,
        _alphas(alpha, cfg),
        SweepSpec("x", xmin, xmax, samples),
        cfg.oscillator_params,
        cfg.staircase_choice,
    )
    _emit(cfg, table)


@main.command("ho-energies")
@click.option("--form", type=click.Choice(["ladder", "position"]), default="ladder", show_default=True)
@click.option("--n-max", type=int, default=5, show_default=True, help="Levels 0..n-max")
@click.option("--omega-alpha", type=FLOATS, help="Comma-separated omega_alpha values (ladder)")
@click.option("--alpha", type=FLOATS, help="Comma-separated alphas (position)")
@click.option("--xmin", type=float, default=0.0, show_default=True)
@click.option("--xmax", type=float, default=4.0, show_default=True)
@click.option("--samples", type=int, default=41, show_default=True)
@click.option("--mass", type=float)
@click.option("--hbar", type=float)
@click.pass_context
@_handles_errors
def ho_energies(ctx, form, n_max, omega_alpha, alpha, xmin, xmax, samples, mass, hbar):
    """Oscillator energies; ladder: n,omega_alpha,E; position: n,alpha,x,E"""
    cfg = _load_config(ctx, mass=mass, hbar=hbar)
    if n_max < 0:
        raise ParameterError(f"--n-max must be >= 0, got {n_max}")
    levels = list(range(n_max + 1))

    if form == "ladder":
        omegas = omega_alpha if omega_alpha else [cfg.run.omega_alpha]
        table = oscillator_ladder_table(levels, omegas, cfg.run.mass, cfg.run.hbar)
    else:
        table = oscillator_position_table(
            levels,
            _alphas(alpha, cfg),
            SweepSpec("x", xmin, xmax, samples),
            cfg.oscillator_params,
            cfg.staircase_choice,
        )
    _emit(cfg, table)


@main.command()
@click.option("--system", type=click.Choice(["hydrogen", "ho"]), default="ho", show_default=True)
@click.option("--n", "levels", type=INTS, default="0", show_default=True, help="Comma-separated levels")
@click.option("--l", "l", type=int, default=0, show_default=True, help="Angular quantum number (hydrogen)")
@click.option("--alpha", type=FLOATS, help="Comma-separated alphas")
@click.option("--points", type=FLOATS, default="0.5,1.0,1.5,2.0", show_default=True, help="x, or r for hydrogen")
@click.option("--step", type=float, help="S-step of the F^alpha-derivative")
@click.option("--mass", type=float)
@click.option("--omega-alpha", type=float)
@click.option("--hbar", type=float)
@click.option("--backend", type=click.Choice([b.value for b in StaircaseBackend]))
@click.pass_context
@_handles_errors
def residual(ctx, system, levels, l, alpha, points, step, mass, omega_alpha, hbar, backend):
    """Equation residuals of the closed forms; columns x,alpha,n,residual"""
    cfg = _load_config(
        ctx, step=step, mass=mass, omega_alpha=omega_alpha, hbar=hbar, staircase_backend=backend
    )
    table = residual_table(
        system,
        levels,
        _alphas(alpha, cfg),
        points,
        l,
        cfg.constants,
        cfg.oscillator_params,
        cfg.staircase_choice,
        cfg.falpha_config,
    )
    _emit(cfg, table)


def _parse_term(text: str, system: str) -> tuple[complex, Any]:
    """``c_re,c_im,n`` for ho, ``c_re,c_im,n,l,m`` for hydrogen (l, m default 0)."""
    parts = [p.strip() for p in text.split(",")]
    try:
        c = complex(float(parts[0]), float(parts[1]))
        levels = [int(p) for p in parts[2:]]
    except (ValueError, IndexError) as e:
        raise ParameterError(f"malformed term {text!r}: {e}") from e
    if system == "ho":
        if len(levels) != 1:
            raise ParameterError(f"oscillator term needs c_re,c_im,n, got {text!r}")
        return c, levels[0]
    if not 1 <= len(levels) <= 3:
        raise ParameterError(f"hydrogen term needs c_re,c_im,n[,l,m], got {text!r}")
    return c, QuantumNumbers(*levels)


@main.command()
@click.option("--system", type=click.Choice(["hydrogen", "ho"]), default="ho", show_default=True)
@click.option("--term", "terms", multiple=True, help="c_re,c_im,n[,l,m]; repeat for each term")
@click.option("--alpha", type=float, help="Space exponent")
@click.option("--beta", type=float, help="Time exponent")
@click.option("--point", type=FLOATS, default="1.0", show_default=True, help="x, or r,theta,phi")
@click.option("--tmin", type=float, default=0.0, show_default=True)
@click.option("--tmax", type=float, default=10.0, show_default=True)
@click.option("--samples", type=int, default=101, show_default=True)
@click.option("--backend", type=click.Choice([b.value for b in StaircaseBackend]))
@click.pass_context
@_handles_errors
def evolve(ctx, system, terms, alpha, beta, point, tmin, tmax, samples, backend):
    """Time evolution of a superposition; columns t,re,im,abs2"""
    cfg = _load_config(ctx, alpha=alpha, beta=beta, staircase_backend=backend)
    if not terms:
        raise ParameterError("at least one --term is required")
    parsed = [_parse_term(t, system) for t in terms]

    if system == "hydrogen":
        if len(point) == 1:
            where: Any = (point[0], 0.0, 0.0)
        elif len(point) == 3:
            where = tuple(point)
        else:
            raise ParameterError(f"--point needs r or r,theta,phi for hydrogen, got {point}")
    else:
        if len(point) != 1:
            raise ParameterError(f"--point needs a single x for the oscillator, got {point}")
        where = point[0]

    if not (math.isfinite(tmin) and 0 <= tmin):
        raise ParameterError(f"--tmin must be >= 0, got {tmin}")
    times = SweepSpec("t", tmin, tmax, samples).values()
    choice = cfg.staircase_choice
    table = evolution_table(
        system,
        parsed,
        cfg.dims,
        where,
        times,
        cfg.constants,
        cfg.oscillator_params,
        choice.build(cfg.run.alpha),
        choice.build(cfg.run.beta),
    )
    _emit(cfg, table)


@main.command("plot-script")
@click.argument("data_path", type=click.Path(dir_okay=False))
@click.option("--kind", required=True, type=click.Choice(sorted(PLOT_LAYOUTS)), help="Layout of the data file")
@click.pass_context
@_handles_errors
def plot_script(ctx, data_path, kind):
    """Write a gnuplot script for a CSV data file"""
    cfg = _load_config(ctx)
    script = emit_plot_script(data_path, kind)
    path = cfg.run.output_path
    if path is None:
        click.echo(script, nl=False)
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(script)
    logger.info(f"wrote plot script to {path}")


def main_entry():
    """Entry point for the CLI"""
    main()


if __name__ == "__main__":
    main_entry()
