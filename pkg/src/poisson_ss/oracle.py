"""Independent cross-checks for the candidate-set machinery.

Three deliberately different routes to the same quantities:

* `grid_min_coverage` scans a dense uniform rate grid, ignoring candidate
  structure entirely; the candidate minimum must match it and can only be
  lower, never higher.
* `brute_force_coverage` rebuilds the error event for each total count from
  the raw inequality, with no window bounds, and adds up the mass.
* `monte_carlo_coverage` simulates the experiment with a counter-based
  generator, so a third estimate comes from actual sampling.

None of these share the acceptance-window derivation with the main path,
which is the point.
"""

from __future__ import annotations

import math

import numpy as np

from .coverage import coverage_at
from .kernel import pmf
from .types import (
    Absolute,
    CoverageResult,
    ErrorCriterion,
    Mixed,
    ParamInterval,
    Relative,
)

# Monte Carlo trials are consumed in fixed-size chunks, each seeded from
# (seed, chunk index); the estimate depends only on this partition, never on
# how many workers drain the chunks.
MC_CHUNK = 1 << 16

# The error events use strict inequalities, so a count whose error ties the
# margin exactly is excluded.  At breakpoint rates that tie is exact in real
# arithmetic but lands on an arbitrary side in floats; an error within this
# relative distance of the margin is treated as the tie.  Matches the snap
# tolerance used for the window bounds, so all routes agree near breakpoints.
EDGE_TOL = 1e-12

__all__ = [
    "MC_CHUNK",
    "EDGE_TOL",
    "grid_min_coverage",
    "brute_force_coverage",
    "monte_carlo_coverage",
]


def _strictly_below(err, margin):
    """Robust err < margin for the strict error events (works on arrays)."""
    return err < margin * (1.0 - EDGE_TOL)


def grid_min_coverage(
    criterion: ErrorCriterion,
    n: int,
    interval: ParamInterval,
    points: int = 10_001,
) -> CoverageResult:
    """Minimum coverage over a uniform grid of rates, endpoints included.

    A grid can only overestimate the true interval minimum; it is used to
    confirm that the candidate minimum is genuinely the floor.  Ties go to
    the smaller rate.
    """
    if points < 2:
        raise ValueError(f"grid needs at least 2 points, got {points!r}")
    best: CoverageResult | None = None
    for lam in np.linspace(interval.a, interval.b, points):
        result = coverage_at(criterion, n, float(lam))
        if best is None or result.coverage < best.coverage:
            best = result
    assert best is not None
    return best


def _event_holds(criterion: ErrorCriterion, estimate: float, lam: float) -> bool:
    if isinstance(criterion, Absolute):
        return bool(_strictly_below(abs(estimate - lam), criterion.eps))
    if isinstance(criterion, Relative):
        return bool(_strictly_below(abs(estimate - lam), criterion.eps * lam))
    if isinstance(criterion, Mixed):
        err = abs(estimate - lam)
        return bool(_strictly_below(err, criterion.eps_a)
                    or _strictly_below(err, criterion.eps_r * lam))
    raise TypeError(f"unknown criterion type: {criterion!r}")


def brute_force_coverage(
    criterion: ErrorCriterion,
    n: int,
    lam: float,
    k_max: int | None = None,
) -> float:
    """Coverage by direct enumeration of total counts.

    For each k in [0, k_max] the error event is re-derived from the margin
    inequality with estimate k/n; no acceptance window is consulted.  The
    default k_max, ceil(n lam + 40 sqrt(n lam + 1)), leaves a neglected tail
    far below 1e-12.
    """
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n!r}")
    if not (lam >= 0.0):
        raise ValueError(f"rate must be nonnegative, got {lam!r}")
    mu = n * lam
    if k_max is None:
        k_max = math.ceil(mu + 40.0 * math.sqrt(mu + 1.0))
    terms = [
        pmf(k, mu)
        for k in range(k_max + 1)
        if _event_holds(criterion, k / n, lam)
    ]
    return min(1.0, math.fsum(terms))


def monte_carlo_coverage(
    criterion: ErrorCriterion,
    n: int,
    lam: float,
    trials: int,
    seed: int = 0,
) -> tuple[float, float]:
    """Simulated coverage and its binomial standard error.

    Each trial draws the experiment's total count (the sum of n independent
    Poisson(lam) observations is itself Poisson(n lam), so the sum is drawn
    in one shot) and tests the margin inequality on the estimate.  Streams
    come from the counter-based Philox generator keyed by (seed, chunk), so
    results are reproducible and independent of worker count.
    """
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n!r}")
    if not (lam >= 0.0):
        raise ValueError(f"rate must be nonnegative, got {lam!r}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed!r}")

    mu = n * lam
    hits = 0
    done = 0
    chunk_index = 0
    while done < trials:
        size = min(MC_CHUNK, trials - done)
        rng = np.random.Generator(np.random.Philox(seed=[seed, chunk_index]))
        counts = rng.poisson(lam=mu, size=size)
        estimates = counts / n
        err = np.abs(estimates - lam)
        if isinstance(criterion, Absolute):
            ok = _strictly_below(err, criterion.eps)
        elif isinstance(criterion, Relative):
            ok = _strictly_below(err, criterion.eps * lam)
        elif isinstance(criterion, Mixed):
            ok = (_strictly_below(err, criterion.eps_a)
                  | _strictly_below(err, criterion.eps_r * lam))
        else:
            raise TypeError(f"unknown criterion type: {criterion!r}")
        hits += int(np.count_nonzero(ok))
        done += size
        chunk_index += 1

    estimate = hits / trials
    stderr = math.sqrt(estimate * (1.0 - estimate) / trials)
    return estimate, stderr
