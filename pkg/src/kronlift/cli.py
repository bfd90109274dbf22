"""Command-line orchestration: gen / analyze / solve / compare.

Reports go to stdout as JSON (--pretty adds a human table instead);
errors print a single machine-parsable line to stderr. Exit codes:
0 success, 2 usage, 3 I/O or parse failure, 4 numerical failure.
"""

import json
import os
import sys
import time
from contextlib import contextmanager

import click
import numpy as np

from kronlift import fileio
from kronlift.errors import KronliftError, SystemFileError
from kronlift.lift import build_lifted
from kronlift.mwr import build_collocation_system
from kronlift.recovery import (
    _dedup_sorted,
    extract_candidates,
    nullspace_search,
    polish,
)
from kronlift.solvers import newton_solve, normal_eq_solve, pinv_solve, svd_analyze
from kronlift.system_model import eval_residual, random_system

#: Candidates at or below this nonlinear residual count as roots in compare.
ROOT_RESIDUAL_TOL = 1e-8
MATCH_DISTANCE = 1e-6


def _default_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get("KRONLIFT_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise click.UsageError(f"KRONLIFT_SEED must be an integer, got {env!r}")


class _Timings:
    def __init__(self):
        self.ms = {}

    @contextmanager
    def time(self, stage):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.ms[stage] = round((time.perf_counter() - t0) * 1e3, 3)


def _svd_section(report):
    cond = report.condition_estimate
    return {
        "singular_values": [float(s) for s in report.singular_values],
        "numerical_rank": report.numerical_rank,
        "nullity": report.nullity,
        "rank_tolerance": report.rank_tolerance,
        "condition_estimate": cond if np.isfinite(cond) else "inf",
    }


def _candidates_section(sys, candidates):
    out = []
    for cand in candidates:
        # residual is recomputed here, independently of whatever the
        # recovery pipeline stored
        residual = eval_residual(sys, cand.x).norm
        out.append({
            "x": [float(v) for v in cand.x],
            "consistency": float(cand.consistency),
            "nonlinear_residual": float(residual),
            "source": cand.source,
        })
    return out


def _emit(report, pretty):
    if pretty:
        _emit_pretty(report)
    else:
        click.echo(json.dumps(report, indent=2))


def _emit_pretty(report):
    if "svd" in report:
        svd = report["svd"]
        click.echo("SVD analysis")
        click.echo(f"  rank {svd['numerical_rank']}  nullity {svd['nullity']}"
                   f"  rank tolerance {svd['rank_tolerance']:.3e}"
                   f"  condition {svd['condition_estimate']}")
        sv = "  ".join(f"{s:.6e}" for s in svd["singular_values"])
        click.echo(f"  singular values: {sv}")
    if "solve" in report:
        click.echo(f"method: {report['solve']['method']}  "
                   f"options: {report['solve']['options']}")
    if "candidates" in report:
        click.echo(f"{'x':<44} {'residual':>12} {'consistency':>12} {'source':>10}")
        for cand in report["candidates"]:
            xs = ", ".join(f"{v: .6g}" for v in cand["x"])
            click.echo(f"[{xs:<42}] {cand['nonlinear_residual']:>12.3e} "
                       f"{cand['consistency']:>12.3e} {cand['source']:>10}")
    if "newton" in report:
        newton = report["newton"]
        click.echo(f"newton: {len(newton['roots'])} roots from {newton['starts']} starts")
        for root in newton["roots"]:
            click.echo("  [" + ", ".join(f"{v: .8g}" for v in root) + "]")
    if "nullsearch" in report:
        ns = report["nullsearch"]
        click.echo(f"nullsearch: {len(ns['roots'])} roots, "
                   f"best consistency {ns['best_consistency']:.3e}")
        for root in ns["roots"]:
            click.echo("  [" + ", ".join(f"{v: .8g}" for v in root) + "]")
    if "overlap" in report:
        click.echo(f"overlap: {len(report['overlap'])} roots found by both")
    if "timings_ms" in report:
        stages = "  ".join(f"{k}={v}" for k, v in report["timings_ms"].items())
        click.echo(f"timings (ms): {stages}")


@click.group(name="kronlift")
def cli():
    """Kronecker-form polynomial systems: lift, analyze, solve, compare."""


@cli.command("gen")
@click.argument("descriptor", type=click.Path(dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Write the system file here instead of stdout.")
@click.option("--seed", type=int, default=None,
              help="Seed for random descriptors without one (default KRONLIFT_SEED or 0).")
def cmd_gen(descriptor, output, seed):
    """Generate a system file from a problem or random descriptor."""
    kind, payload = fileio.parse_descriptor(fileio.load_json(descriptor))
    if kind == "random":
        if payload["seed"] is None:
            payload["seed"] = _default_seed(seed)
        sys_ = random_system(**payload)
    else:
        sys_ = build_collocation_system(payload)
    text = fileio.dumps_system(sys_)
    blocks = "D" + ("+G" if sys_.G is not None else "") + ("+R" if sys_.R is not None else "")
    click.echo(f"generated system: n={sys_.n} blocks={blocks} meta={sys_.meta!r}", err=True)
    if output is None:
        click.echo(text, nl=False)
    else:
        with open(output, "w") as fp:
            fp.write(text)


@cli.command("analyze")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--rank-rtol", type=float, default=1e-10, show_default=True)
@click.option("--pretty", is_flag=True)
def cmd_analyze(file, rank_rtol, pretty):
    """Lift a system file and report the SVD structure of P."""
    timings = _Timings()
    with timings.time("load"):
        sys_ = fileio.load_system(file)
    with timings.time("lift"):
        lifted = build_lifted(sys_)
    with timings.time("svd"):
        report = svd_analyze(lifted.P, rank_rtol)
    _emit({
        "schema_version": fileio.SCHEMA_VERSION,
        "svd": _svd_section(report),
        "timings_ms": timings.ms,
    }, pretty)


@cli.command("solve")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--method", type=click.Choice(["pinv", "ridge", "nullsearch"]),
              default="nullsearch", show_default=True)
@click.option("--ridge", type=float, default=1e-10, show_default=True,
              help="Regularization for the ridge method; must be positive.")
@click.option("--starts", type=int, default=16, show_default=True)
@click.option("--seed", type=int, default=None, help="Default KRONLIFT_SEED or 0.")
@click.option("--rank-rtol", type=float, default=1e-10, show_default=True)
@click.option("--pretty", is_flag=True)
def cmd_solve(file, method, ridge, starts, seed, rank_rtol, pretty):
    """Solve a system file via the lift and emit ranked root candidates."""
    seed = _default_seed(seed)
    if method == "ridge" and ridge <= 0:
        raise click.UsageError("--ridge must be positive for the ridge method")
    if starts < 1:
        raise click.UsageError("--starts must be at least 1")
    timings = _Timings()
    with timings.time("load"):
        sys_ = fileio.load_system(file)
    with timings.time("lift"):
        lifted = build_lifted(sys_)
    with timings.time("svd"):
        svd = svd_analyze(lifted.P, rank_rtol)
    with timings.time("solve"):
        if method == "pinv":
            y, _ = pinv_solve(lifted, rank_rtol)
            raw = extract_candidates(lifted, y)
        elif method == "ridge":
            y = normal_eq_solve(lifted, ridge)
            raw = extract_candidates(lifted, y)
        else:
            raw = nullspace_search(lifted, starts=starts, seed=seed)
    with timings.time("polish"):
        polished = [polish(sys_, cand) for cand in raw]
        final = _dedup_sorted(list(raw) + polished)
    _emit({
        "schema_version": fileio.SCHEMA_VERSION,
        "svd": _svd_section(svd),
        "solve": {
            "method": method,
            "options": {"ridge": ridge, "starts": starts, "seed": seed,
                        "rank_rtol": rank_rtol},
        },
        "candidates": _candidates_section(sys_, final),
        "timings_ms": timings.ms,
    }, pretty)


@cli.command("compare")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--starts", type=int, default=8, show_default=True)
@click.option("--seed", type=int, default=None, help="Default KRONLIFT_SEED or 0.")
@click.option("--rank-rtol", type=float, default=1e-10, show_default=True)
@click.option("--pretty", is_flag=True)
def cmd_compare(file, starts, seed, rank_rtol, pretty):
    """Run Newton from random starts and the null-space search on the same
    budget, and report the roots each finds plus their overlap."""
    seed = _default_seed(seed)
    if starts < 1:
        raise click.UsageError("--starts must be at least 1")
    timings = _Timings()
    with timings.time("load"):
        sys_ = fileio.load_system(file)

    rng = np.random.default_rng(seed)
    newton_runs = []
    newton_roots = []
    with timings.time("newton"):
        for _ in range(starts):
            x0 = rng.standard_normal(sys_.n)
            run = {"x0": [float(v) for v in x0]}
            try:
                trace = newton_solve(sys_, x0)
            except KronliftError as exc:
                run.update(converged=False, error=str(exc))
            else:
                run.update(
                    converged=trace.converged,
                    iterations=trace.iterations,
                    final_x=[float(v) for v in trace.final_x],
                    final_norm=trace.final_norm,
                )
                if trace.converged and all(
                    np.linalg.norm(trace.final_x - np.asarray(r)) >= MATCH_DISTANCE
                    for r in newton_roots
                ):
                    newton_roots.append([float(v) for v in trace.final_x])
            newton_runs.append(run)

    with timings.time("lift"):
        lifted = build_lifted(sys_)
    with timings.time("nullsearch"):
        candidates = nullspace_search(lifted, starts=starts, seed=seed)
    search_roots = [
        [float(v) for v in c.x] for c in candidates
        if c.nonlinear_residual <= ROOT_RESIDUAL_TOL
    ]
    best_consistency = min((c.consistency for c in candidates), default=float("inf"))

    overlap = [
        root for root in newton_roots
        if any(np.linalg.norm(np.asarray(root) - np.asarray(s)) < MATCH_DISTANCE
               for s in search_roots)
    ]
    _emit({
        "schema_version": fileio.SCHEMA_VERSION,
        "newton": {"starts": starts, "roots": newton_roots, "runs": newton_runs},
        "nullsearch": {
            "candidates": _candidates_section(sys_, candidates),
            "roots": search_roots,
            "best_consistency": float(best_consistency),
        },
        "overlap": overlap,
        "timings_ms": timings.ms,
    }, pretty)


def main(argv=None):
    """Console entry point with the documented exit-code mapping."""
    try:
        cli.main(args=argv, prog_name="kronlift", standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.UsageError as exc:
        click.echo(f"error[E_USAGE]: {exc.format_message()}", err=True)
        sys.exit(2)
    except click.ClickException as exc:
        click.echo(f"error[E_USAGE]: {exc.format_message()}", err=True)
        sys.exit(2)
    except SystemFileError as exc:
        click.echo(f"error[{exc.code}]: {exc}", err=True)
        sys.exit(3)
    except KronliftError as exc:
        click.echo(f"error[{exc.code}]: {exc}", err=True)
        sys.exit(4)
    sys.exit(0)


if __name__ == "__main__":
    main()
