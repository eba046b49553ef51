"""Domain vocabulary for Poisson sample-size planning.

A planning problem is a triple (criterion, interval, confidence): which error
event should hold, over which range of unknown rates it must hold, and with
what probability.  The dataclasses here are plain carriers; `validate` is the
single gate that enforces every field invariant, so anything downstream of a
successful `validate` call may assume a well-formed configuration.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class ValidationError(ValueError):
    """Base class for configuration errors raised by `validate`."""


class EpsilonOutOfRange(ValidationError):
    """A margin parameter lies outside the open interval (0, 1)."""


class DeltaOutOfRange(ValidationError):
    """The risk level lies outside the open interval (0, 1)."""


class EmptyInterval(ValidationError):
    """The rate interval has a >= b."""


class NegativeLowerBound(ValidationError):
    """The rate interval has a < 0."""


class RelativeWithZeroLowerBound(ValidationError):
    """A relative margin cannot be certified down to rate zero."""


@dataclass(frozen=True, slots=True)
class Absolute:
    """Error event |est - lam| < eps, uniformly in the rate lam."""

    eps: float


@dataclass(frozen=True, slots=True)
class Relative:
    """Error event |est - lam| < eps * lam."""

    eps: float


@dataclass(frozen=True, slots=True)
class Mixed:
    """Error event |est - lam| < eps_a  OR  |est - lam| < eps_r * lam.

    Below the crossover rate eps_a / eps_r the absolute margin is the wider
    of the two and governs the event; above it the relative margin governs.
    """

    eps_a: float
    eps_r: float

    @property
    def crossover(self) -> float:
        return self.eps_a / self.eps_r


ErrorCriterion = Absolute | Relative | Mixed


@dataclass(frozen=True, slots=True)
class ParamInterval:
    """Closed rate interval [a, b] over which the guarantee must hold."""

    a: float
    b: float

    @property
    def width(self) -> float:
        return self.b - self.a


@dataclass(frozen=True, slots=True)
class ConfidenceSpec:
    """Risk level delta; the error event must have probability > 1 - delta."""

    delta: float


class CandidateKind(Enum):
    """Provenance of a candidate rate: interval endpoint, margin crossover,
    or a member of one of the four breakpoint families."""

    ENDPOINT_A = "endpoint_a"
    ENDPOINT_B = "endpoint_b"
    CROSSOVER = "crossover"
    ABS_PLUS = "abs_plus"      # value = ell / n + eps
    ABS_MINUS = "abs_minus"    # value = ell / n - eps
    REL_UPPER = "rel_upper"    # value = ell / (n * (1 + eps))
    REL_LOWER = "rel_lower"    # value = ell / (n * (1 - eps))


_GRID_KINDS = frozenset((
    CandidateKind.ABS_PLUS,
    CandidateKind.ABS_MINUS,
    CandidateKind.REL_UPPER,
    CandidateKind.REL_LOWER,
))


@dataclass(frozen=True, slots=True)
class CandidatePoint:
    """A rate at which the worst-case coverage over an interval can occur.

    A breakpoint carries the integer `ell` that defines it, which lets one
    side of the acceptance window be computed in exact integer arithmetic.
    When two families collide at the same value, the extra memberships are
    kept in `extra_tags` so both sides stay exact.
    """

    value: float
    kind: CandidateKind
    ell: int | None = None
    extra_tags: tuple[tuple[CandidateKind, int], ...] = ()

    def grid_tags(self) -> tuple[tuple[CandidateKind, int], ...]:
        """All (kind, ell) breakpoint memberships of this point."""
        own: tuple[tuple[CandidateKind, int], ...]
        own = ((self.kind, self.ell),) if self.kind in _GRID_KINDS else ()
        return own + self.extra_tags


@dataclass(frozen=True, slots=True)
class CoverageResult:
    """Coverage of the acceptance window [g, h] at one rate.

    g > h encodes an empty window (coverage zero); h = -1 can occur for the
    relative criterion at lam = 0.
    """

    lam: float
    g: int
    h: int
    coverage: float


@dataclass(frozen=True, slots=True)
class SampleSizePlan:
    """Outcome of a minimum sample size search.

    truncated_b is the upper endpoint of the interval actually scanned at
    n_min; it equals b unless the exponential tail-bound shortcut discharged
    the high-rate region.  evaluations counts coverage evaluations across
    the whole search, not just the returned n.
    """

    n_min: int
    worst_lambda: float
    worst_coverage: float
    evaluations: int
    truncated_b: float


def validate(
    criterion: ErrorCriterion,
    interval: ParamInterval,
    conf: ConfidenceSpec,
) -> tuple[ErrorCriterion, ParamInterval, ConfidenceSpec]:
    """Check a planning configuration, returning it unchanged if well formed.

    Raises the most specific `ValidationError` subclass on the first
    violated constraint.  A Mixed criterion whose crossover falls at or
    below a (or at or above b) is accepted; it simply behaves as the pure
    relative (or absolute) criterion over the whole interval.
    """
    eps_values: tuple[float, ...]
    if isinstance(criterion, (Absolute, Relative)):
        eps_values = (criterion.eps,)
    elif isinstance(criterion, Mixed):
        eps_values = (criterion.eps_a, criterion.eps_r)
    else:
        raise ValidationError(f"unknown criterion type: {criterion!r}")
    for eps in eps_values:
        if not (0.0 < eps < 1.0):
            raise EpsilonOutOfRange(
                f"margin must lie strictly inside (0, 1), got {eps!r}")
    if not (0.0 < conf.delta < 1.0):
        raise DeltaOutOfRange(
            f"risk level must lie strictly inside (0, 1), got {conf.delta!r}")
    if interval.a < 0.0:
        raise NegativeLowerBound(
            f"rate interval must satisfy a >= 0, got a={interval.a!r}")
    if not (interval.a < interval.b):
        raise EmptyInterval(
            f"rate interval must satisfy a < b, got [{interval.a!r}, {interval.b!r}]")
    if isinstance(criterion, Relative) and interval.a <= 0.0:
        raise RelativeWithZeroLowerBound(
            "a relative margin requires a strictly positive lower rate bound")
    return criterion, interval, conf


def effective_criterion(
    criterion: ErrorCriterion, interval: ParamInterval
) -> ErrorCriterion:
    """Resolve a Mixed criterion whose crossover misses the interval.

    With crossover <= a the relative margin governs everywhere on [a, b];
    with crossover >= b the absolute margin does.  Other criteria (and Mixed
    with an interior crossover) are returned unchanged.
    """
    if isinstance(criterion, Mixed):
        cx = criterion.crossover
        if cx <= interval.a:
            return Relative(criterion.eps_r)
        if cx >= interval.b:
            return Absolute(criterion.eps_a)
    return criterion
