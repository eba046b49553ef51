"""Command-line surface: plan sample sizes, inspect coverage, verify answers.

Subcommands:

* ``size``        smallest sufficient n for a (criterion, interval, delta)
* ``coverage``    coverage rows over the candidate set or a uniform grid
* ``candidates``  the candidate rates with their breakpoint provenance
* ``verify``      cross-check the candidate-based answer against the
                  grid, brute-force, and Monte Carlo oracles

A batch mode (``--config FILE``) runs one JSON job per line and emits one
JSON result per line, in input order; ``POISSON_SS_THREADS`` caps the
worker pool.  Machine output serializes every float with 17 significant
digits so values round-trip exactly.

Exit codes: 0 success, 1 validation error, 2 budget exceeded, 3 internal
verification failure.  No other value is ever returned.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .candidates import candidate_set, cardinality_bound
from .coverage import coverage_at, coverage_at_point
from .minimizer import min_coverage
from .oracle import brute_force_coverage, grid_min_coverage, monte_carlo_coverage
from .search import MaxSampleSizeExceeded, SearchOptions, min_sample_size
from .types import (
    Absolute,
    ConfidenceSpec,
    ErrorCriterion,
    Mixed,
    ParamInterval,
    Relative,
    ValidationError,
    validate,
)

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_BUDGET = 2
EXIT_VERIFY = 3

GRID_FLOOR_TOL = 1e-12
BRUTE_FORCE_TOL = 1e-12
MC_STDERR_MULTIPLE = 4.0


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; the contract reserves 2
    for exceeded budgets, so usage errors are remapped to 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _jsonify(obj) -> str:
    """JSON text with all floats at 17 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, int):
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = ", ".join(
            f"{json.dumps(str(k))}: {_jsonify(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_jsonify(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _add_problem_flags(p: argparse.ArgumentParser, with_delta: bool) -> None:
    p.add_argument("--criterion", required=True, choices=("abs", "rel", "mixed"),
                   help="error margin type")
    p.add_argument("--eps", type=float, help="margin for abs/rel")
    p.add_argument("--eps-a", dest="eps_a", type=float,
                   help="absolute margin for mixed")
    p.add_argument("--eps-r", dest="eps_r", type=float,
                   help="relative margin for mixed")
    p.add_argument("--a", type=float, required=True, help="lower rate bound")
    p.add_argument("--b", type=float, required=True, help="upper rate bound")
    if with_delta:
        p.add_argument("--delta", type=float, required=True,
                       help="risk level; require coverage > 1 - delta")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="poisson-ss",
                  description="Exact minimum sample sizes for Poisson rate "
                              "estimation with margin-of-error guarantees.")
    top.add_argument("--config", metavar="FILE",
                     help="batch mode: one JSON job per line, e.g. "
                          '{"cmd": "size", "criterion": "abs", ...}')
    sub = top.add_subparsers(dest="command")

    p_size = sub.add_parser("size", help="minimum sufficient sample size")
    _add_problem_flags(p_size, with_delta=True)
    p_size.add_argument("--start-n", dest="start_n", type=int, default=1)
    p_size.add_argument("--max-n", dest="max_n", type=int, default=1_000_000)
    p_size.add_argument("--strategy", choices=("linear", "gallop"),
                        default="linear")
    p_size.add_argument("--chernoff", choices=("auto", "on", "off"),
                        default="auto",
                        help="tail-bound truncation of the scanned interval")
    p_size.add_argument("--no-fail-fast", dest="fail_fast",
                        action="store_false",
                        help="always scan the full candidate set per n")
    p_size.add_argument("--format", choices=("json", "text"), default="json")

    p_cov = sub.add_parser("coverage", help="coverage rows at fixed n")
    _add_problem_flags(p_cov, with_delta=False)
    p_cov.add_argument("--n", type=int, required=True, help="sample size")
    p_cov.add_argument("--grid", type=int, metavar="K",
                       help="evaluate on a K-point uniform grid instead of "
                            "the candidate set")
    p_cov.add_argument("--format", choices=("csv", "json"), default="csv")

    p_cand = sub.add_parser("candidates", help="list candidate rates")
    _add_problem_flags(p_cand, with_delta=False)
    p_cand.add_argument("--n", type=int, required=True, help="sample size")
    p_cand.add_argument("--check-bound", dest="check_bound",
                        action="store_true",
                        help="fail (exit 3) unless the cardinality bound holds")
    p_cand.add_argument("--format", choices=("json", "text"), default="json")

    p_ver = sub.add_parser("verify", help="cross-check the candidate answer")
    _add_problem_flags(p_ver, with_delta=True)
    p_ver.add_argument("--n", type=int,
                       help="sample size to verify (default: search n_min)")
    p_ver.add_argument("--grid-points", dest="grid_points", type=int,
                       default=2001)
    p_ver.add_argument("--trials", type=int, default=100_000,
                       help="Monte Carlo trials")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--format", choices=("json", "text"), default="json")
    return top


def _build_criterion(ns: argparse.Namespace) -> ErrorCriterion:
    if ns.criterion == "mixed":
        if ns.eps is not None:
            raise ValidationError(
                "--eps applies to --criterion abs/rel; "
                "mixed takes --eps-a and --eps-r")
        if ns.eps_a is None or ns.eps_r is None:
            raise ValidationError(
                "--criterion mixed requires both --eps-a and --eps-r")
        return Mixed(ns.eps_a, ns.eps_r)
    if ns.eps_a is not None or ns.eps_r is not None:
        raise ValidationError(
            "--eps-a/--eps-r apply only to --criterion mixed")
    if ns.eps is None:
        raise ValidationError(f"--criterion {ns.criterion} requires --eps")
    return Absolute(ns.eps) if ns.criterion == "abs" else Relative(ns.eps)


def _problem(ns: argparse.Namespace) -> tuple[ErrorCriterion, ParamInterval, ConfidenceSpec]:
    criterion = _build_criterion(ns)
    interval = ParamInterval(ns.a, ns.b)
    # Commands without a risk level still get the interval/margin checks;
    # the placeholder delta can never be the failing constraint.
    delta = getattr(ns, "delta", None)
    conf = ConfidenceSpec(0.5 if delta is None else delta)
    validate(criterion, interval, conf)
    return criterion, interval, conf


def _criterion_obj(criterion: ErrorCriterion) -> dict:
    if isinstance(criterion, Absolute):
        return {"kind": "abs", "eps": criterion.eps}
    if isinstance(criterion, Relative):
        return {"kind": "rel", "eps": criterion.eps}
    assert isinstance(criterion, Mixed)
    return {"kind": "mixed", "eps_a": criterion.eps_a,
            "eps_r": criterion.eps_r}


def _require_positive_n(n: int) -> None:
    if n < 1:
        raise ValidationError(f"--n must be >= 1, got {n}")


def _execute_size(ns: argparse.Namespace) -> tuple[dict, int]:
    criterion, interval, conf = _problem(ns)
    use_chernoff = {"auto": None, "on": True, "off": False}[ns.chernoff]
    opts = SearchOptions(start_n=ns.start_n, max_n=ns.max_n,
                         strategy=ns.strategy, fail_fast=ns.fail_fast,
                         use_chernoff=use_chernoff)
    t0 = time.perf_counter()
    plan = min_sample_size(criterion, interval, conf, opts)
    elapsed_ms = (time.perf_counter() - t0) * 1e3
    result = {
        "criterion": _criterion_obj(criterion),
        "interval": {"a": interval.a, "b": interval.b},
        "delta": conf.delta,
        "n_min": plan.n_min,
        "worst_lambda": plan.worst_lambda,
        "worst_coverage": plan.worst_coverage,
        "truncated_b": plan.truncated_b,
        "evaluations": plan.evaluations,
        "elapsed_ms": elapsed_ms,
    }
    return result, EXIT_OK


def _execute_coverage(ns: argparse.Namespace) -> tuple[dict, int]:
    criterion, interval, _ = _problem(ns)
    _require_positive_n(ns.n)
    rows = []
    if ns.grid is not None:
        if ns.grid < 2:
            raise ValidationError(f"--grid needs at least 2 points, got {ns.grid}")
        step = interval.width / (ns.grid - 1)
        for i in range(ns.grid):
            lam = interval.b if i == ns.grid - 1 else interval.a + i * step
            rows.append(coverage_at(criterion, ns.n, lam))
    else:
        for point in candidate_set(criterion, ns.n, interval):
            rows.append(coverage_at_point(criterion, ns.n, point))
    result = {
        "criterion": _criterion_obj(criterion),
        "interval": {"a": interval.a, "b": interval.b},
        "n": ns.n,
        "rows": [
            {"lambda": r.lam, "g": r.g, "h": r.h, "coverage": r.coverage}
            for r in rows
        ],
    }
    return result, EXIT_OK


def _execute_candidates(ns: argparse.Namespace) -> tuple[dict, int]:
    criterion, interval, _ = _problem(ns)
    _require_positive_n(ns.n)
    points = candidate_set(criterion, ns.n, interval)
    bound = cardinality_bound(criterion, ns.n, interval)
    bound_holds = len(points) < bound
    listing = []
    for p in points:
        listing.append({
            "lambda": p.value,
            "kind": p.kind.value,
            "ell": p.ell,
            "extra_tags": [[kind.value, ell] for kind, ell in p.extra_tags],
        })
    result = {
        "criterion": _criterion_obj(criterion),
        "interval": {"a": interval.a, "b": interval.b},
        "n": ns.n,
        "count": len(points),
        "bound": bound,
        "bound_holds": bound_holds,
        "points": listing,
    }
    code = EXIT_OK
    if ns.check_bound and not bound_holds:
        code = EXIT_VERIFY
    return result, code


def _execute_verify(ns: argparse.Namespace) -> tuple[dict, int]:
    criterion, interval, conf = _problem(ns)
    if ns.trials < 1:
        raise ValidationError(f"--trials must be >= 1, got {ns.trials}")
    if ns.grid_points < 2:
        raise ValidationError(
            f"--grid-points needs at least 2 points, got {ns.grid_points}")
    if ns.seed < 0:
        raise ValidationError(f"--seed must be >= 0, got {ns.seed}")
    if ns.n is None:
        plan = min_sample_size(criterion, interval, conf)
        n = plan.n_min
    else:
        _require_positive_n(ns.n)
        n = ns.n
    worst = min_coverage(criterion, n, interval)

    checks = []
    grid = grid_min_coverage(criterion, n, interval, ns.grid_points)
    grid_disc = worst.coverage - grid.coverage
    checks.append({
        "name": "grid_floor",
        "passed": grid_disc <= GRID_FLOOR_TOL,
        "discrepancy": grid_disc,
        "tolerance": GRID_FLOOR_TOL,
    })
    brute = brute_force_coverage(criterion, n, worst.lam)
    brute_disc = abs(brute - worst.coverage)
    checks.append({
        "name": "brute_force_at_worst",
        "passed": brute_disc <= BRUTE_FORCE_TOL,
        "discrepancy": brute_disc,
        "tolerance": BRUTE_FORCE_TOL,
    })
    estimate, stderr = monte_carlo_coverage(
        criterion, n, worst.lam, ns.trials, ns.seed)
    mc_disc = abs(estimate - worst.coverage)
    mc_tol = MC_STDERR_MULTIPLE * stderr
    checks.append({
        "name": "monte_carlo_at_worst",
        "passed": mc_disc <= mc_tol,
        "discrepancy": mc_disc,
        "tolerance": mc_tol,
    })
    level = 1.0 - conf.delta
    decisions = {worst.coverage > level, grid.coverage > level, brute > level}
    checks.append({
        "name": "decision_agreement",
        "passed": len(decisions) == 1,
        "discrepancy": 0.0 if len(decisions) == 1 else 1.0,
        "tolerance": 0.0,
    })
    passed = all(c["passed"] for c in checks)
    result = {
        "criterion": _criterion_obj(criterion),
        "interval": {"a": interval.a, "b": interval.b},
        "delta": conf.delta,
        "n": n,
        "worst_lambda": worst.lam,
        "worst_coverage": worst.coverage,
        "grid_points": ns.grid_points,
        "trials": ns.trials,
        "seed": ns.seed,
        "checks": checks,
        "passed": passed,
    }
    return result, EXIT_OK if passed else EXIT_VERIFY


_EXECUTORS = {
    "size": _execute_size,
    "coverage": _execute_coverage,
    "candidates": _execute_candidates,
    "verify": _execute_verify,
}


def _render_size(result: dict, fmt: str, out) -> None:
    if fmt == "json":
        print(_jsonify(result), file=out)
        return
    print(f"n_min: {result['n_min']}", file=out)
    print(f"worst rate: {_fmt(result['worst_lambda'])}", file=out)
    print(f"worst coverage: {_fmt(result['worst_coverage'])}", file=out)
    print(f"scanned up to rate: {_fmt(result['truncated_b'])}", file=out)
    print(f"coverage evaluations: {result['evaluations']}", file=out)
    print(f"elapsed: {result['elapsed_ms']:.1f} ms", file=out)


def _render_coverage(result: dict, fmt: str, out) -> None:
    if fmt == "json":
        print(_jsonify(result), file=out)
        return
    print("lambda,g,h,coverage", file=out)
    for row in result["rows"]:
        print(f"{_fmt(row['lambda'])},{row['g']},{row['h']},"
              f"{_fmt(row['coverage'])}", file=out)


def _render_candidates(result: dict, fmt: str, out) -> None:
    if fmt == "json":
        print(_jsonify(result), file=out)
        return
    for p in result["points"]:
        ell = "" if p["ell"] is None else f"  ell={p['ell']}"
        extras = "".join(
            f"  (+{kind} ell={ell2})" for kind, ell2 in p["extra_tags"])
        print(f"{_fmt(p['lambda'])}  {p['kind']}{ell}{extras}", file=out)
    verdict = "holds" if result["bound_holds"] else "VIOLATED"
    print(f"count: {result['count']}  bound: {_fmt(result['bound'])} "
          f"({verdict})", file=out)


def _render_verify(result: dict, fmt: str, out) -> None:
    if fmt == "json":
        print(_jsonify(result), file=out)
        return
    for check in result["checks"]:
        status = "pass" if check["passed"] else "FAIL"
        print(f"check {check['name']}: {status} "
              f"(discrepancy {_fmt(check['discrepancy'])}, "
              f"tolerance {_fmt(check['tolerance'])})", file=out)
    print(f"n: {result['n']}  worst rate: {_fmt(result['worst_lambda'])}  "
          f"worst coverage: {_fmt(result['worst_coverage'])}", file=out)
    print("overall: " + ("pass" if result["passed"] else "FAIL"), file=out)


_RENDERERS = {
    "size": _render_size,
    "coverage": _render_coverage,
    "candidates": _render_candidates,
    "verify": _render_verify,
}


def _job_to_argv(job: dict) -> list[str]:
    job = dict(job)
    cmd = job.pop("cmd", None)
    if cmd not in _EXECUTORS:
        raise ValidationError(
            f'job needs "cmd" set to one of size/coverage/candidates/verify, '
            f"got {cmd!r}")
    argv = [cmd]
    for key, value in job.items():
        if value is None:
            continue
        flag = "--" + str(key).replace("_", "-")
        if isinstance(value, bool):
            if value:
                argv.append(flag)
        else:
            argv.extend([flag, str(value)])
    return argv


def _run_job(job) -> tuple[dict, int]:
    try:
        if not isinstance(job, dict):
            raise ValidationError(f"job must be a JSON object, got {job!r}")
        argv = _job_to_argv(job)
        ns = build_parser().parse_args(argv)
        return _EXECUTORS[ns.command](ns)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) and exc.code else EXIT_VALIDATION
        return {"error": "invalid job arguments", "code": code}, code
    except (ValidationError, ValueError) as exc:
        return {"error": str(exc), "code": EXIT_VALIDATION}, EXIT_VALIDATION
    except MaxSampleSizeExceeded as exc:
        return {"error": str(exc), "code": EXIT_BUDGET}, EXIT_BUDGET
    except Exception as exc:  # keep the exit-code contract even on bugs
        return {"error": f"internal error: {exc}", "code": EXIT_VERIFY}, EXIT_VERIFY


def _run_batch(path: str, out) -> int:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        print(f"error: cannot read config file: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    jobs = []
    for lineno, line in enumerate(lines, start=1):
        if not line:
            continue
        try:
            jobs.append(json.loads(line))
        except json.JSONDecodeError as exc:
            print(f"error: config line {lineno} is not valid JSON: {exc}",
                  file=sys.stderr)
            return EXIT_VALIDATION

    env = os.environ.get("POISSON_SS_THREADS")
    try:
        workers = int(env) if env else (os.cpu_count() or 1)
    except ValueError:
        print(f"error: POISSON_SS_THREADS must be an integer, got {env!r}",
              file=sys.stderr)
        return EXIT_VALIDATION
    if workers < 1:
        print(f"error: POISSON_SS_THREADS must be >= 1, got {workers}",
              file=sys.stderr)
        return EXIT_VALIDATION

    status = EXIT_OK
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for result, code in pool.map(_run_job, jobs):
            print(_jsonify(result), file=out)
            status = max(status, code)
    return status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_VALIDATION
    if ns.config is not None and ns.command is not None:
        print("error: --config replaces the subcommand; give one or the other",
              file=sys.stderr)
        return EXIT_VALIDATION
    if ns.config is not None:
        return _run_batch(ns.config, sys.stdout)
    if ns.command is None:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: a subcommand or --config is required",
              file=sys.stderr)
        return EXIT_VALIDATION
    try:
        result, code = _EXECUTORS[ns.command](ns)
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except MaxSampleSizeExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except Exception as exc:  # keep the exit-code contract even on bugs
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    _RENDERERS[ns.command](result, ns.format, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
