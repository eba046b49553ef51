"""
Anatomy of a breakpoint
=======================

The acceptance window [g(rate), h(rate)] is a staircase: g and h are
constant between breakpoints and jump by one as a boundary expression
crosses an integer.  Because the margin events use strict inequalities,
the window AT a breakpoint is the intersection of the windows on either
side, so coverage can dip for that single rate and nowhere else.  The
candidate set records which boundary family produced each breakpoint,
and the evaluator uses that tag to reproduce the one-point window
without any floating-point guesswork.
"""

from poisson_ss import (
    Absolute,
    ParamInterval,
    acceptance_bounds,
    candidate_set,
    coverage_at,
    coverage_at_point,
)


def main():
    criterion = Absolute(0.25)
    n = 8
    interval = ParamInterval(0.0, 1.5)

    print(f"candidate rates for n={n}, absolute margin 0.25 on "
          f"[{interval.a:g}, {interval.b:g}]:")
    print(f"{'rate':>10}  {'origin':<11} {'index':>5}  also produced by")
    for p in candidate_set(criterion, n, interval):
        extras = ", ".join(f"{kind.value}[{ell}]" for kind, ell in p.extra_tags)
        ell = "" if p.ell is None else str(p.ell)
        print(f"{p.value:>10.6g}  {p.kind.value:<11} {ell:>5}  {extras}")
    print()

    # With n*eps = 2 an integer, the rising and falling boundary
    # families collide: every interior breakpoint belongs to both.
    # Right at such a rate both window edges move simultaneously.
    lam = 0.5
    eps = 1e-9
    left = acceptance_bounds(criterion, n, lam - eps)
    at = acceptance_bounds(criterion, n, lam)
    right = acceptance_bounds(criterion, n, lam + eps)
    print(f"window just below {lam:g}: [{left.g}, {left.h}]")
    print(f"window exactly at {lam:g}: [{at.g}, {at.h}]   <- intersection")
    print(f"window just above {lam:g}: [{right.g}, {right.h}]")
    print()

    cov_left = coverage_at(criterion, n, lam - eps).coverage
    cov_at = coverage_at(criterion, n, lam).coverage
    cov_right = coverage_at(criterion, n, lam + eps).coverage
    print(f"coverage just below: {cov_left:.9f}")
    print(f"coverage exactly at: {cov_at:.9f}   <- one-point dip")
    print(f"coverage just above: {cov_right:.9f}")
    print()

    # The tagged evaluation reproduces the dip from the integer indices
    # alone.  Feeding the same rate in as a plain float relies on the
    # snap tolerance instead; both roads agree.
    point = next(p for p in candidate_set(criterion, n, interval)
                 if abs(p.value - lam) < 1e-12)
    tagged = coverage_at_point(criterion, n, point)
    plain = coverage_at(criterion, n, lam)
    print(f"tagged evaluation at {lam:g}: window [{tagged.g}, {tagged.h}], "
          f"coverage {tagged.coverage:.9f}")
    print(f"plain evaluation at {lam:g}:  window [{plain.g}, {plain.h}], "
          f"coverage {plain.coverage:.9f}")


if __name__ == "__main__":
    main()
