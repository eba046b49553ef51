"""Finite candidate sets that pin down the worst-case coverage.

Coverage, as a function of the rate, is piecewise smooth: the window bounds
g and h are step functions that only jump where n(lam -+ eps) (absolute) or
n lam (1 -+ eps) (relative) crosses an integer.  Between consecutive jumps
the window is constant and coverage is a smooth function whose minimum over
a closed stretch sits at one of its ends.  The minimum over the whole
interval is therefore attained on the finite set assembled here: the two
endpoints, every in-range breakpoint of the governing families, and, for
the mixed criterion, the crossover rate.

For the mixed criterion the absolute window governs on [a, crossover] and
the relative window on [crossover, b], so the absolute breakpoint families
are enumerated on the left piece and the relative families on the right
piece.  A crossover at or outside the interval reduces the criterion to a
pure one and the reduced families are used over all of [a, b].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .types import (
    Absolute,
    CandidateKind,
    CandidatePoint,
    ErrorCriterion,
    Mixed,
    ParamInterval,
    Relative,
    effective_criterion,
)

# Two candidate values closer than this (relative to the interval scale)
# are treated as one point; the merged point keeps every breakpoint tag so
# both window sides stay exact.
DEDUP_REL_TOL = 1e-12

_KIND_PRIORITY = {
    CandidateKind.ENDPOINT_A: 0,
    CandidateKind.ENDPOINT_B: 1,
    CandidateKind.CROSSOVER: 2,
    CandidateKind.ABS_PLUS: 3,
    CandidateKind.ABS_MINUS: 4,
    CandidateKind.REL_UPPER: 5,
    CandidateKind.REL_LOWER: 6,
}

__all__ = ["DEDUP_REL_TOL", "CandidateSet", "candidate_set", "cardinality_bound"]


@dataclass(frozen=True, slots=True)
class CandidateSet:
    """Candidate rates for one (criterion, n, interval), ascending in value."""

    points: tuple[CandidatePoint, ...]
    n: int
    criterion: ErrorCriterion
    interval: ParamInterval

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def values(self) -> list[float]:
        return [p.value for p in self.points]


def cardinality_bound(criterion: ErrorCriterion, n: int, interval: ParamInterval) -> float:
    """Strict upper bound on the candidate count: 2 n (b - a) plus 4, or
    plus 7 when a crossover point can join the set."""
    extra = 7.0 if isinstance(criterion, Mixed) else 4.0
    return 2.0 * n * interval.width + extra


def _absolute_family(
    raw: list[tuple[float, CandidateKind, int]],
    n: int,
    eps: float,
    lo: float,
    hi: float,
    tol: float,
) -> None:
    # ell/n + eps in (lo, hi)
    first = math.floor(n * (lo - eps)) - 1
    last = math.ceil(n * (hi - eps)) + 1
    for ell in range(first, last + 1):
        v = ell / n + eps
        if lo - tol < v < hi + tol:
            raw.append((v, CandidateKind.ABS_PLUS, ell))
    # ell/n - eps in (lo, hi)
    first = math.floor(n * (lo + eps)) - 1
    last = math.ceil(n * (hi + eps)) + 1
    for ell in range(first, last + 1):
        v = ell / n - eps
        if lo - tol < v < hi + tol:
            raw.append((v, CandidateKind.ABS_MINUS, ell))


def _relative_family(
    raw: list[tuple[float, CandidateKind, int]],
    n: int,
    eps: float,
    lo: float,
    hi: float,
    tol: float,
) -> None:
    # ell/(n (1 + eps)) in (lo, hi)
    scale = n * (1.0 + eps)
    first = math.floor(lo * scale) - 1
    last = math.ceil(hi * scale) + 1
    for ell in range(first, last + 1):
        v = ell / scale
        if lo - tol < v < hi + tol:
            raw.append((v, CandidateKind.REL_UPPER, ell))
    # ell/(n (1 - eps)) in (lo, hi)
    scale = n * (1.0 - eps)
    first = math.floor(lo * scale) - 1
    last = math.ceil(hi * scale) + 1
    for ell in range(first, last + 1):
        v = ell / scale
        if lo - tol < v < hi + tol:
            raw.append((v, CandidateKind.REL_LOWER, ell))


def _merge_group(
    group: list[tuple[float, CandidateKind, int | None]],
) -> list[CandidatePoint]:
    group = sorted(group, key=lambda t: (_KIND_PRIORITY[t[1]], t[0]))
    grid = tuple(
        (kind, ell) for _, kind, ell in group if ell is not None
    )
    kinds = {kind for _, kind, _ in group}
    has_a = CandidateKind.ENDPOINT_A in kinds
    has_b = CandidateKind.ENDPOINT_B in kinds
    if has_a and has_b:
        # Sliver interval: keep both endpoints, never merged away.
        a_val = next(v for v, k, _ in group if k is CandidateKind.ENDPOINT_A)
        b_val = next(v for v, k, _ in group if k is CandidateKind.ENDPOINT_B)
        return [
            CandidatePoint(a_val, CandidateKind.ENDPOINT_A, None, grid),
            CandidatePoint(b_val, CandidateKind.ENDPOINT_B, None, grid),
        ]
    value, kind, ell = group[0]
    if ell is None:
        return [CandidatePoint(value, kind, None, grid)]
    return [CandidatePoint(value, kind, ell, grid[1:])]


def candidate_set(
    criterion: ErrorCriterion, n: int, interval: ParamInterval
) -> CandidateSet:
    """Enumerate the candidate rates for (criterion, n) over the interval.

    The first point always carries value a and the last value b; interior
    points are strictly inside, deduplicated to DEDUP_REL_TOL, and sorted
    ascending.  Breakpoints that collide (with each other, an endpoint, or
    the crossover) are merged into one point holding every tag.
    """
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n!r}")
    a, b = interval.a, interval.b
    tol = DEDUP_REL_TOL * max(1.0, abs(a), abs(b))

    raw: list[tuple[float, CandidateKind, int]] = []
    eff = effective_criterion(criterion, interval)
    specials: list[tuple[float, CandidateKind, None]] = [
        (a, CandidateKind.ENDPOINT_A, None),
        (b, CandidateKind.ENDPOINT_B, None),
    ]
    if isinstance(eff, Absolute):
        _absolute_family(raw, n, eff.eps, a, b, tol)
    elif isinstance(eff, Relative):
        _relative_family(raw, n, eff.eps, a, b, tol)
    else:
        cx = eff.crossover
        specials.append((cx, CandidateKind.CROSSOVER, None))
        _absolute_family(raw, n, eff.eps_a, a, cx, tol)
        _relative_family(raw, n, eff.eps_r, cx, b, tol)

    entries: list[tuple[float, CandidateKind, int | None]] = [*raw, *specials]
    entries.sort(key=lambda t: (t[0], _KIND_PRIORITY[t[1]]))

    points: list[CandidatePoint] = []
    group: list[tuple[float, CandidateKind, int | None]] = [entries[0]]
    for entry in entries[1:]:
        if entry[0] - group[-1][0] <= tol:
            group.append(entry)
        else:
            points.extend(_merge_group(group))
            group = [entry]
    points.extend(_merge_group(group))

    return CandidateSet(points=tuple(points), n=n, criterion=criterion, interval=interval)
