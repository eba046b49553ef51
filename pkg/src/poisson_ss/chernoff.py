"""Exponential tail bounds for the rate estimate.

For K ~ Poisson(n lam) and estimate K/n, standard exponential-moment
arguments give, for 0 < eps < 1,

    Pr{ K/n <= (1 - eps) lam }  <  [e^-eps / (1-eps)^(1-eps)]^(n lam)
                                <  exp(-lam n eps^2 / 2)
    Pr{ K/n >= (1 + eps) lam }  <  [e^eps / (1+eps)^(1+eps)]^(n lam)
                                <  exp(-(2 ln 2 - 1) lam n eps^2)

Both tails shrink exponentially in lam, so for a relative margin there is a
threshold rate above which the two closed-form bounds together already
spend less than the whole risk budget: coverage exceeds 1 - delta for every
lam above `lambda_threshold` and only rates below it need explicit checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_LN2_MINUS_1 = 2.0 * math.log(2.0) - 1.0

__all__ = ["TWO_LN2_MINUS_1", "TailBounds", "tail_bounds", "tight_tail_bounds", "lambda_threshold"]


@dataclass(frozen=True, slots=True)
class TailBounds:
    """Upper bounds on the two relative-deviation tails, each capped at 1."""

    lower: float
    upper: float


def _check_args(n: int, lam: float, eps: float) -> None:
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n!r}")
    if not (lam >= 0.0):
        raise ValueError(f"rate must be nonnegative, got {lam!r}")
    if not (0.0 < eps < 1.0):
        raise ValueError(f"margin must lie strictly inside (0, 1), got {eps!r}")


def tail_bounds(n: int, lam: float, eps: float) -> TailBounds:
    """Closed-form exponential bounds on both relative tails."""
    _check_args(n, lam, eps)
    x = n * lam * eps * eps
    return TailBounds(
        lower=min(1.0, math.exp(-0.5 * x)),
        upper=min(1.0, math.exp(-TWO_LN2_MINUS_1 * x)),
    )


def tight_tail_bounds(n: int, lam: float, eps: float) -> TailBounds:
    """Sharper exponential-moment bounds, kept as a diagnostic.

    Still valid upper bounds on the exact tails, and never larger than the
    closed forms from `tail_bounds`.
    """
    _check_args(n, lam, eps)
    nl = n * lam
    lo_exp = nl * (-eps - (1.0 - eps) * math.log1p(-eps))
    hi_exp = nl * (eps - (1.0 + eps) * math.log1p(eps))
    return TailBounds(
        lower=min(1.0, math.exp(lo_exp)),
        upper=min(1.0, math.exp(hi_exp)),
    )


def lambda_threshold(n: int, eps_r: float, delta: float) -> float:
    """Rate above which relative coverage certifiably exceeds 1 - delta.

    Splitting delta across the two tails and inverting the slower of the two
    closed-form bounds gives

        threshold = ln(2 / delta) / ((2 ln 2 - 1) n eps_r^2).

    Every lam > threshold satisfies Pr{|K/n - lam| < eps_r lam} > 1 - delta,
    so a search only needs to evaluate rates in [a, min(b, threshold)].
    """
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n!r}")
    if not (0.0 < eps_r < 1.0):
        raise ValueError(f"margin must lie strictly inside (0, 1), got {eps_r!r}")
    if not (0.0 < delta < 1.0):
        raise ValueError(f"risk level must lie strictly inside (0, 1), got {delta!r}")
    return math.log(2.0 / delta) / (TWO_LN2_MINUS_1 * n * eps_r * eps_r)
