"""Command-line scenario runner.

Subcommands: run, sweep-eigs, bloch-scan, verify, oracle-compare. All read
one JSON config (--config) and write into an output directory (--out
overrides the config). Exit codes: 0 success, 2 config error, 3 quadrature
non-convergence (partial outputs are still written and flagged), 4
invariant failure.

Set DETMAPS_JOBS=N to compute sweep rows in N worker processes.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import runner
from .config import ConfigError, load_config
from .figures import save_bloch_figure, save_spectrum_figure, save_sweep_figure
from .wightman import wightman

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_QUADRATURE = 3
EXIT_INVARIANT = 4

# Test hook: force a sign flip in the AI kernel so that verify's
# conjugation invariant must trip. Never set outside the test suite.
FLIP_AI_ENV_VAR = "DETMAPS_TEST_FLIP_AI"


def _load(config_path, out_dir, samples, tol):
    try:
        config = load_config(config_path)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    if out_dir is not None:
        config = config.__class__(**{**config.__dict__, "out_dir": Path(out_dir)})
    if samples is not None:
        config = config.__class__(**{**config.__dict__, "bloch_samples": samples})
    if tol is not None:
        quad = config.quadrature.__class__(rel_tol=tol, abs_tol=config.quadrature.abs_tol,
                                           max_depth=config.quadrature.max_depth)
        config = config.__class__(**{**config.__dict__, "quadrature": quad})
    return config


def _kernel_from_env():
    if os.environ.get(FLIP_AI_ENV_VAR, "") not in ("", "0"):
        def flipped(pair, t1, t2, a, params):
            value = wightman(pair, t1, t2, a, params)
            return -value if pair == "AI" else value
        return flipped
    return wightman


def _write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


@click.group()
def main() -> None:
    """Dynamical maps for inertial-then-accelerated detectors."""


_config_opt = click.option("--config", "config_path", required=True, type=click.Path(), help="Scenario JSON file.")
_out_opt = click.option("--out", "out_dir", default=None, type=click.Path(), help="Output directory override.")
_samples_opt = click.option("--samples", default=None, type=int, help="Bloch sample count override.")
_tol_opt = click.option("--tol", default=None, type=float, help="Quadrature rel_tol override.")
_figures_opt = click.option("--figures/--no-figures", default=True, help="Render matplotlib figures.")


@main.command()
@_config_opt
@_out_opt
@_samples_opt
@_tol_opt
@_figures_opt
def run(config_path, out_dir, samples, tol, figures):
    """Compute the scenario map; write map.json, state.csv, report.json."""
    config = _load(config_path, out_dir, samples, tol)
    result, files, code = runner.run_scenario(config, _kernel_from_env())
    out = config.out_dir
    _write_json(out / "map.json", files["map.json"])
    runner.write_csv(out / "state.csv", [
        "theta", "phi", "rho00_re", "rho00_im", "rho01_re", "rho01_im",
        "rho10_re", "rho10_im", "rho11_re", "rho11_im", "trace_dev", "min_eig",
    ], files["state.csv"])
    _write_json(out / "report.json", files["report.json"])
    if figures:
        save_spectrum_figure(result.report.eigs, result.report.classification, out / "spectrum.png")
    click.echo(f"classification: {result.report.classification} "
               f"(eig2 = {result.report.second_smallest:.6g}, tol_cls = {result.report.tol_cls:.3g})")
    if code == EXIT_QUADRATURE:
        click.echo("warning: quadrature did not converge; outputs flagged", err=True)
    elif code == EXIT_INVARIANT:
        click.echo("error: scenario invariants failed; see report.json", err=True)
    sys.exit(code)


@main.command("sweep-eigs")
@_config_opt
@_out_opt
@_tol_opt
@_figures_opt
def sweep_eigs(config_path, out_dir, tol, figures):
    """Sweep one trajectory variable; write eigs.csv (one row per value)."""
    config = _load(config_path, out_dir, None, tol)
    if config.sweep is None:
        click.echo("config error: sweep block is required for sweep-eigs", err=True)
        sys.exit(EXIT_CONFIG)
    rows = runner.sweep_rows(config)
    out = config.out_dir
    runner.write_csv(out / "eigs.csv", runner.SWEEP_HEADER, runner.sweep_csv_rows(rows))
    if figures:
        save_sweep_figure(rows, config.sweep.variable, out / "eigs.png")
    n_fail = sum(r["status"] != "ok" for r in rows)
    click.echo(f"wrote {len(rows)} rows ({n_fail} quadrature failures)")
    sys.exit(EXIT_QUADRATURE if n_fail else EXIT_OK)


@main.command("bloch-scan")
@_config_opt
@_out_opt
@_samples_opt
@_tol_opt
@_figures_opt
def bloch_scan(config_path, out_dir, samples, tol, figures):
    """Scan the Bloch-sphere image of the scenario map; write points.csv."""
    config = _load(config_path, out_dir, samples, tol)
    image, rows, summary = runner.bloch_scan(config, _kernel_from_env())
    out = config.out_dir
    runner.write_csv(out / "points.csv", runner.BLOCH_HEADER, rows)
    _write_json(out / "points_summary.json", summary)
    if figures:
        save_bloch_figure(image, out / "bloch.png")
    click.echo(f"outside_fraction = {runner.format_float(summary['outside_fraction'])} "
               f"max_excess = {runner.format_float(summary['max_excess'])}")
    sys.exit(EXIT_OK if summary["converged"] else EXIT_QUADRATURE)


@main.command()
@_config_opt
@_out_opt
def verify(config_path, out_dir):
    """Run every module invariant on the configured scenario; exit 0 iff pass."""
    config = _load(config_path, out_dir, None, None)
    report = runner.verify(config, _kernel_from_env())
    payload = {
        "passed": report.passed,
        "wall_time_s": report.wall_time_s,
        "checks": [
            {"name": c.name, "deviation": c.deviation, "tolerance": c.tolerance, "passed": c.passed}
            for c in report.checks
        ],
    }
    _write_json(config.out_dir / "verify.json", payload)
    for c in report.checks:
        mark = "ok " if c.passed else "FAIL"
        click.echo(f"[{mark}] {c.name}: deviation {c.deviation:.3e} (tol {c.tolerance:.3e})")
    click.echo(f"verify: {'pass' if report.passed else 'FAIL'} "
               f"({len(report.checks)} checks, {report.wall_time_s:.1f} s)")
    sys.exit(EXIT_OK if report.passed else EXIT_INVARIANT)


@main.command("oracle-compare")
@_config_opt
@_out_opt
def oracle_compare(config_path, out_dir):
    """Adaptive quadrature vs midpoint oracle for every scenario correlator."""
    config = _load(config_path, out_dir, None, None)
    rows, max_scaled, corr = runner.oracle_rows(config, _kernel_from_env())
    runner.write_csv(config.out_dir / "oracle.csv", runner.ORACLE_HEADER, rows)
    click.echo(f"max scaled difference = {runner.format_float(max_scaled)} over {len(rows)} integrals")
    sys.exit(EXIT_OK if corr.converged else EXIT_QUADRATURE)


if __name__ == "__main__":
    main()
