"""Search for the smallest sufficient sample size.

A sample size n is sufficient when the minimum coverage over the rate
interval strictly exceeds 1 - delta.  Sufficiency is not assumed monotone
in n (isolated insufficient values above the answer do occur), so the
default strategy simply walks n upward from start_n and returns the first
sufficient value.  The gallop strategy first probes upward by doubling to
find some sufficient n, which bounds the search, then locates the smallest
sufficient value by the same ascending scan; it therefore always returns
the linear answer, probe results included, and only the work differs.

For relative and mixed criteria the exponential tail bounds discharge all
rates above `lambda_threshold`, so each decision only scans candidates in
[a, min(b, threshold)]; the threshold shrinks like 1/n, which keeps large
searches cheap.  Truncation never changes a decision, only the work done:
rates above the threshold are certified, not skipped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chernoff import lambda_threshold
from .coverage import coverage_at
from .minimizer import scan_min_coverage
from .types import (
    Absolute,
    ConfidenceSpec,
    CoverageResult,
    ErrorCriterion,
    Mixed,
    ParamInterval,
    Relative,
    SampleSizePlan,
    validate,
)

__all__ = ["SearchOptions", "MaxSampleSizeExceeded", "min_sample_size"]


@dataclass(frozen=True, slots=True)
class SearchOptions:
    """Knobs for `min_sample_size`.

    strategy is "linear" or "gallop".  use_chernoff None picks the default:
    tail-bound truncation on for Relative and Mixed, off for Absolute
    (absolute-margin coverage does not improve with the rate, so there is
    nothing to truncate).
    """

    start_n: int = 1
    max_n: int = 1_000_000
    strategy: str = "linear"
    fail_fast: bool = True
    use_chernoff: bool | None = None


class MaxSampleSizeExceeded(RuntimeError):
    """No sample size within the budget met the coverage requirement."""

    def __init__(self, max_n: int):
        super().__init__(
            f"no sufficient sample size found with n <= {max_n}")
        self.max_n = max_n


def _relative_eps(criterion: ErrorCriterion) -> float | None:
    if isinstance(criterion, Relative):
        return criterion.eps
    if isinstance(criterion, Mixed):
        return criterion.eps_r
    return None


def _decide(
    criterion: ErrorCriterion,
    interval: ParamInterval,
    delta: float,
    n: int,
    fail_fast: bool,
    truncate: bool,
) -> tuple[bool, CoverageResult, int, float]:
    """Pass/fail at one n: (passed, witness, evaluations, scanned upper end)."""
    a, b = interval.a, interval.b
    scan_b = b
    if truncate:
        eps_r = _relative_eps(criterion)
        # An absolute criterion has no relative margin to bound, so a forced
        # truncation request is a no-op rather than an error.
        if eps_r is not None:
            threshold = lambda_threshold(n, eps_r, delta)
            if threshold < b:
                scan_b = threshold
    if scan_b <= a:
        # The tail bounds certify every rate above a; only a itself is left.
        result = coverage_at(criterion, n, a)
        return result.coverage > 1.0 - delta, result, 1, a
    threshold_arg = (1.0 - delta) if fail_fast else None
    result, evals = scan_min_coverage(
        criterion, n, ParamInterval(a, scan_b), threshold_arg)
    return result.coverage > 1.0 - delta, result, evals, scan_b


def min_sample_size(
    criterion: ErrorCriterion,
    interval: ParamInterval,
    conf: ConfidenceSpec,
    opts: SearchOptions = SearchOptions(),
) -> SampleSizePlan:
    """Smallest n >= opts.start_n whose worst-case coverage exceeds 1 - delta.

    The returned plan reports the worst rate and its coverage at the chosen
    n (over the scanned interval; ties on coverage go to the smaller rate)
    and the total number of coverage evaluations spent by the search.

    Raises MaxSampleSizeExceeded when every n up to opts.max_n fails, and
    ValueError for a malformed option set.  Note the search begins at
    start_n = 1 by default; set start_n=2 to reproduce conventions that
    treat a single observation as no estimate at all.
    """
    validate(criterion, interval, conf)
    if opts.start_n < 1:
        raise ValueError(f"start_n must be >= 1, got {opts.start_n!r}")
    if opts.max_n < opts.start_n:
        raise ValueError(
            f"max_n must be >= start_n, got max_n={opts.max_n!r} start_n={opts.start_n!r}")
    if opts.strategy not in ("linear", "gallop"):
        raise ValueError(f"strategy must be 'linear' or 'gallop', got {opts.strategy!r}")
    truncate = (
        opts.use_chernoff
        if opts.use_chernoff is not None
        else not isinstance(criterion, Absolute)
    )
    delta = conf.delta

    evaluations = 0

    def decide(n: int) -> tuple[bool, CoverageResult, float]:
        nonlocal evaluations
        passed, result, evals, scan_b = _decide(
            criterion, interval, delta, n, opts.fail_fast, truncate)
        evaluations += evals
        return passed, result, scan_b

    if opts.strategy == "linear":
        for n in range(opts.start_n, opts.max_n + 1):
            passed, result, scan_b = decide(n)
            if passed:
                return SampleSizePlan(
                    n_min=n,
                    worst_lambda=result.lam,
                    worst_coverage=result.coverage,
                    evaluations=evaluations,
                    truncated_b=scan_b,
                )
        raise MaxSampleSizeExceeded(opts.max_n)

    # gallop: a doubling probe finds some sufficient n, which caps the
    # search; the smallest sufficient n is then located by the same
    # ascending scan the linear strategy uses.  Sufficiency is not monotone
    # in n, so the probe's passing run need not contain the answer; only
    # the capped ascending scan guarantees agreement with linear.
    cache: dict[int, tuple[bool, CoverageResult, float]] = {}
    cap = opts.max_n
    n = opts.start_n
    while True:
        verdict = decide(n)
        cache[n] = verdict
        if verdict[0]:
            cap = n
            break
        if n >= opts.max_n:
            break
        n = min(2 * n, opts.max_n)
    for n in range(opts.start_n, cap + 1):
        verdict = cache.get(n)
        if verdict is None:
            verdict = decide(n)
        passed, result, scan_b = verdict
        if passed:
            break
    else:
        raise MaxSampleSizeExceeded(opts.max_n)
    return SampleSizePlan(
        n_min=n,
        worst_lambda=result.lam,
        worst_coverage=result.coverage,
        evaluations=evaluations,
        truncated_b=scan_b,
    )
