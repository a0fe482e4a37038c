#!/usr/bin/env python3
"""
Closed-Range Lab CLI Entry Point
Analyzes operators from matrix files and runs the verification suites
"""

# Load environment variables from .env file before importing config
from dotenv import load_dotenv
load_dotenv()

import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import click
import numpy as np

from config.settings import REPORT_FORMATS, ToleranceConfig, config
from database.connection import close_ledger, init_ledger, record_run
from operators.convergence_lab import DEFAULT_LENGTH, SequenceKind, evaluate_shadows, full_report, generate_sequence
from operators.errors import MatrixFormatError, OperatorError, PreconditionError, ShapeMismatchError
from operators.metrics_perturbation import MetricKind
from operators.operator_calculus import analyze, polar_decompose
from operators.orbit_geometry import build_intertwiner, orbit_distance_witness, orbit_report, same_orbit
from services.logger import setup_logging
from services.matrix_io import encode_matrix, load_matrix
from services.report_writer import atomic_write_text, sanitize, to_json, write_report
from suites.runner import SuiteRunner
from utils.validators import parse_tol_overrides, validate_dimension, validate_suite_ids

logger = logging.getLogger("cli")


class InputError(click.ClickException):
    """Unreadable input or bad usage; exits with status 2."""
    exit_code = 2


def resolve_tol(tol_pairs: Tuple[str, ...]) -> ToleranceConfig:
    try:
        return config.tolerances().with_overrides(**parse_tol_overrides(tol_pairs))
    except ValueError as e:
        raise InputError(str(e)) from e


def read_matrix(path: str) -> np.ndarray:
    try:
        return load_matrix(path)
    except MatrixFormatError as e:
        raise InputError(str(e)) from e


tol_option = click.option(
    '--tol', 'tol_pairs', multiple=True, metavar='NAME=VALUE',
    help='Override a tolerance (rank_tol_rel, eq_tol, angle_one_tol, svd_method, ...)'
)


@click.group()
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
@click.option('--log-file', type=click.Path(dir_okay=False), help='Also write logs to this file')
def main(verbose: bool, log_file: Optional[str]):
    """Closed-range operator lab: analysis, orbits, convergence and verification."""
    log_level = "DEBUG" if verbose else config.log_level
    setup_logging(level=log_level, log_file=log_file or config.log_file)

    try:
        config.validate_config()
    except ValueError as e:
        logger.error(f"Configuration error: {e}")
        raise InputError(str(e)) from e


@main.command(name="analyze")
@click.argument("matrix_file", type=click.Path())
@tol_option
@click.option('--output-format', type=click.Choice(['json', 'text']), default='json',
              help='Output format for results')
def analyze_cmd(matrix_file: str, tol_pairs: Tuple[str, ...], output_format: str):
    """Print the pseudoinverse, γ, orbit signature and polar parts of MATRIX_FILE."""
    tol = resolve_tol(tol_pairs)
    a = read_matrix(matrix_file)
    try:
        result = analysis_payload(a, tol)
    except OperatorError as e:
        logger.error(f"analysis failed: {e}")
        raise click.ClickException(str(e)) from e

    if output_format == 'json':
        click.echo(to_json(result), nl=False)
    else:
        display_analysis(result)


def analysis_payload(a: np.ndarray, tol: ToleranceConfig) -> Dict[str, Any]:
    aa = analyze(a, tol)
    polar = polar_decompose(aa.a, tol)
    report = orbit_report(aa.a, tol)
    return {
        "shape": list(aa.a.shape),
        "rank": aa.rank,
        "signature": report.signature,
        "index": report.index,
        "orbit_id": report.orbit_id,
        "gamma": aa.gamma,
        "norm": aa.norm,
        "pinv_norm": aa.pinv_norm,
        "singular_values": aa.factorization.singular_values.tolist(),
        "penrose_residuals": aa.penrose_residuals(),
        "pinv": encode_matrix(aa.pinv),
        "polar": {
            "v": encode_matrix(polar.v),
            "abs_a": encode_matrix(polar.abs_a),
            "abs_a_star": encode_matrix(polar.abs_a_star),
        },
    }


def display_analysis(result: Dict[str, Any]) -> None:
    """Display an analysis in a human-friendly format."""
    click.echo("=" * 60)
    click.echo("OPERATOR ANALYSIS")
    click.echo("=" * 60)
    click.echo(f"shape:      {result['shape'][0]} x {result['shape'][1]}")
    click.echo(f"signature:  {tuple(result['signature'])}  (nullity, rank, defect)")
    click.echo(f"index:      {result['index']}")
    gamma = result['gamma']
    click.echo(f"gamma:      {'+inf' if math.isinf(gamma) else f'{gamma:.12e}'}")
    click.echo(f"norm:       {result['norm']:.12e}")
    click.echo(f"|pinv|:     {result['pinv_norm']:.12e}")
    click.echo("singular values:")
    for s in result['singular_values']:
        click.echo(f"  {s:.12e}")
    click.echo("penrose residuals: " + ", ".join(f"{r:.3e}" for r in result['penrose_residuals']))


@main.command()
@click.option('--suites', 'suite_ids', multiple=True, help='Suite ids, repeated or comma separated (default: all)')
@click.option('--seed', type=click.IntRange(min=0), default=None, help='Run seed')
@click.option('--trials', type=int, default=None, help='Trial budget per suite before shares')
@click.option('--max-dim', type=int, default=None, help='Largest operator dimension')
@tol_option
@click.option('--out', 'output_path', type=click.Path(dir_okay=False), default=None, help='Report file')
@click.option('--format', 'fmt', type=click.Choice(list(REPORT_FORMATS)), default=None, help='Report format')
@click.option('--ledger', 'ledger_url', default=None, help='SQLAlchemy URL of the run ledger')
@click.pass_context
def verify(
    ctx: click.Context,
    suite_ids: Tuple[str, ...],
    seed: Optional[int],
    trials: Optional[int],
    max_dim: Optional[int],
    tol_pairs: Tuple[str, ...],
    output_path: Optional[str],
    fmt: Optional[str],
    ledger_url: Optional[str],
):
    """Run the verification suites; exit 0 only if no statement is violated."""
    tol = resolve_tol(tol_pairs)
    try:
        suite_config = config.suite_config(
            seed=seed,
            trials=trials,
            max_dim=max_dim,
            tolerances=tol,
            suites=validate_suite_ids(suite_ids),
            output_path=output_path,
            format=fmt,
        )
        suite_config.validate()
    except ValueError as e:
        raise InputError(str(e)) from e

    runner = SuiteRunner(suite_config)
    report = runner.run()

    ledger_url = ledger_url or config.ledger_url
    if ledger_url:
        init_ledger(ledger_url)
        try:
            run, _ = record_run(report, started_at=runner.started_at)
            report.ledger_status = run.status
        finally:
            close_ledger()

    if suite_config.output_path:
        write_report(report, Path(suite_config.output_path), suite_config.format)

    display_summary(report)
    ctx.exit(report.exit_code)


def display_summary(report) -> None:
    click.echo(f"{'suite':<12} {'cases':>7} {'violated':>9} {'errors':>7} {'skipped':>8}")
    for summary in report.suites:
        click.echo(
            f"{summary.suite:<12} {summary.case_count:>7} {summary.violation_count:>9} "
            f"{summary.error_count:>7} {summary.skip_count:>8}"
        )
    status = "PASSED" if report.passed else "FAILED"
    ledger = f"  ledger: {report.ledger_status}" if report.ledger_status else ""
    click.echo(f"{status}  digest: {report.verdict_digest[:16]}{ledger}")


@main.command()
@click.argument('matrix_file_a', type=click.Path())
@click.argument('matrix_file_b', type=click.Path())
@tol_option
@click.option('--out', 'output_path', type=click.Path(dir_okay=False), default=None,
              help='Where to write the intertwiner or witness record')
@click.option('--kind', type=click.Choice(['R', 'N']), default='R', help='Metric for the distance witness')
@click.option('--epsilon', type=float, default=0.1, help='Scaling target of the distance witness')
def orbit(
    matrix_file_a: str,
    matrix_file_b: str,
    tol_pairs: Tuple[str, ...],
    output_path: Optional[str],
    kind: str,
    epsilon: float,
):
    """Intertwine A and B if they share an orbit, else witness their distance."""
    tol = resolve_tol(tol_pairs)
    a, b = read_matrix(matrix_file_a), read_matrix(matrix_file_b)
    if a.shape != b.shape:
        raise InputError(f"Shape mismatch: {a.shape} vs {b.shape}")
    if epsilon <= 0.0:
        raise InputError("epsilon must be positive")

    try:
        if same_orbit(a, b, tol):
            tw = build_intertwiner(a, b, tol)
            record: Dict[str, Any] = {
                "same_orbit": True,
                "orbit_id": orbit_report(a, tol).orbit_id,
                "residual": tw.residual,
                "g": encode_matrix(tw.g),
                "h": encode_matrix(tw.h),
            }
            summary = f"same orbit {record['orbit_id']}: residual {tw.residual:.3e}"
        else:
            witness = orbit_distance_witness(a, b, MetricKind(kind), epsilon, tol)
            record = {
                "same_orbit": False,
                "orbits": [orbit_report(a, tol).orbit_id, orbit_report(b, tol).orbit_id],
                "kind": kind,
                "epsilon": epsilon,
                "distance": 1.0,
                "lower_bound_is_one": witness.lower_bound_is_one,
                "witness_dx": witness.witness_dx,
                "projector_gaps": witness.projector_gaps,
            }
            summary = f"different orbits: d_{kind} witness {witness.witness_dx:.6f} (distance 1)"
    except ShapeMismatchError as e:
        raise InputError(str(e)) from e
    except OperatorError as e:
        logger.error(f"orbit construction failed: {e}")
        raise click.ClickException(str(e)) from e

    if output_path:
        atomic_write_text(Path(output_path), to_json(record))
        click.echo(summary)
    else:
        click.echo(to_json(record), nl=False)


@main.command()
@click.argument('matrix_file', type=click.Path(), required=False)
@click.option('--kind', type=click.Choice([k.value for k in SequenceKind]), default=SequenceKind.RANK_PRESERVING.value,
              help='Sequence construction')
@click.option('--length', type=int, default=DEFAULT_LENGTH, help='Number of terms')
@click.option('--seed', type=click.IntRange(min=0), default=0, help='Seed of the random directions')
@click.option('--scale', type=float, default=None, help='Rank-one scale s of the gadget kinds')
@tol_option
def converge(
    matrix_file: Optional[str],
    kind: str,
    length: int,
    seed: int,
    scale: Optional[float],
    tol_pairs: Tuple[str, ...],
):
    """Generate a sequence Bₙ → B and print the convergence battery (default B = diag(1, 0))."""
    tol = resolve_tol(tol_pairs)
    if not validate_dimension(length):
        raise InputError("length must be a positive integer")
    b = read_matrix(matrix_file) if matrix_file else np.diag([1.0, 0.0]).astype(np.complex128)

    params: Dict[str, Any] = {"length": length}
    if scale is not None:
        params["scale"] = scale
    try:
        seq = generate_sequence(SequenceKind(kind), b, params, seed=seed, tol=tol)
        report = full_report(seq, tol)
        payload: Dict[str, Any] = {"report": report, "params": seq.params}
        if report.consistent and all(report.verdicts.values()):
            payload["shadows"] = evaluate_shadows(seq, tol)
        if seq.evidence:
            payload["sequence_evidence"] = {k: v[-1] for k, v in seq.evidence.items()}
    except (PreconditionError, ValueError) as e:
        raise InputError(str(e)) from e

    click.echo(to_json(sanitize(payload)), nl=False)
    if not report.consistent:
        sys.exit(1)


if __name__ == '__main__':
    main()
