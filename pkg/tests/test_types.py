"""Configuration validation and criterion resolution."""

import dataclasses

import pytest

from poisson_ss import (
    Absolute,
    CandidateKind,
    CandidatePoint,
    ConfidenceSpec,
    DeltaOutOfRange,
    EmptyInterval,
    EpsilonOutOfRange,
    Mixed,
    NegativeLowerBound,
    ParamInterval,
    Relative,
    RelativeWithZeroLowerBound,
    ValidationError,
    effective_criterion,
    validate,
)


def test_validate_returns_configuration_unchanged():
    crit = Relative(0.2)
    iv = ParamInterval(0.5, 2.0)
    conf = ConfidenceSpec(0.1)
    assert validate(crit, iv, conf) == (crit, iv, conf)


@pytest.mark.parametrize("eps", [0.0, 1.0, -0.3, 1.7])
def test_absolute_margin_must_be_inside_unit_interval(eps):
    with pytest.raises(EpsilonOutOfRange):
        validate(Absolute(eps), ParamInterval(0.0, 1.0), ConfidenceSpec(0.1))


@pytest.mark.parametrize("eps_a,eps_r", [(0.0, 0.5), (0.5, 0.0), (1.0, 0.5), (0.5, 1.5)])
def test_mixed_margins_must_both_be_inside_unit_interval(eps_a, eps_r):
    with pytest.raises(EpsilonOutOfRange):
        validate(Mixed(eps_a, eps_r), ParamInterval(0.1, 1.0), ConfidenceSpec(0.1))


@pytest.mark.parametrize("delta", [0.0, 1.0, -0.1, 2.0])
def test_delta_must_be_inside_unit_interval(delta):
    with pytest.raises(DeltaOutOfRange):
        validate(Absolute(0.1), ParamInterval(0.0, 1.0), ConfidenceSpec(delta))


def test_interval_must_be_nonempty():
    with pytest.raises(EmptyInterval):
        validate(Absolute(0.1), ParamInterval(1.0, 1.0), ConfidenceSpec(0.1))
    with pytest.raises(EmptyInterval):
        validate(Absolute(0.1), ParamInterval(2.0, 1.0), ConfidenceSpec(0.1))


def test_interval_lower_bound_must_be_nonnegative():
    with pytest.raises(NegativeLowerBound):
        validate(Absolute(0.1), ParamInterval(-0.5, 1.0), ConfidenceSpec(0.1))


def test_relative_criterion_rejects_zero_lower_bound():
    with pytest.raises(RelativeWithZeroLowerBound):
        validate(Relative(0.1), ParamInterval(0.0, 1.0), ConfidenceSpec(0.1))


def test_absolute_and_mixed_accept_zero_lower_bound():
    validate(Absolute(0.1), ParamInterval(0.0, 1.0), ConfidenceSpec(0.1))
    validate(Mixed(0.2, 0.4), ParamInterval(0.0, 1.0), ConfidenceSpec(0.1))


def test_margin_violation_reported_before_delta_violation():
    # both eps and delta are bad; the most specific first check wins
    with pytest.raises(EpsilonOutOfRange):
        validate(Absolute(0.0), ParamInterval(0.0, 1.0), ConfidenceSpec(5.0))


def test_all_validation_errors_are_value_errors():
    for exc in (EpsilonOutOfRange, DeltaOutOfRange, EmptyInterval,
                NegativeLowerBound, RelativeWithZeroLowerBound):
        assert issubclass(exc, ValidationError)
        assert issubclass(exc, ValueError)


def test_unknown_criterion_type_rejected():
    with pytest.raises(ValidationError):
        validate(object(), ParamInterval(0.0, 1.0), ConfidenceSpec(0.1))


def test_mixed_crossover_is_margin_ratio():
    assert Mixed(0.3, 0.2).crossover == pytest.approx(1.5)
    assert Mixed(0.1, 0.5).crossover == pytest.approx(0.2)


def test_effective_criterion_resolves_offside_crossover():
    # crossover 0.25 below the interval: relative margin governs throughout
    assert effective_criterion(Mixed(0.1, 0.4), ParamInterval(0.5, 2.0)) == Relative(0.4)
    # crossover 4.0 above the interval: absolute margin governs throughout
    assert effective_criterion(Mixed(0.8, 0.2), ParamInterval(0.5, 2.0)) == Absolute(0.8)


def test_effective_criterion_keeps_interior_crossover():
    crit = Mixed(0.3, 0.2)  # crossover 1.5
    assert effective_criterion(crit, ParamInterval(0.5, 2.0)) is crit


def test_effective_criterion_passes_pure_criteria_through():
    crit = Absolute(0.1)
    assert effective_criterion(crit, ParamInterval(0.0, 1.0)) is crit
    crit = Relative(0.1)
    assert effective_criterion(crit, ParamInterval(0.5, 1.0)) is crit


def test_configuration_carriers_are_frozen():
    with pytest.raises(dataclasses.FrozenInstanceError):
        Absolute(0.1).eps = 0.2
    with pytest.raises(dataclasses.FrozenInstanceError):
        ParamInterval(0.0, 1.0).b = 2.0
    with pytest.raises(dataclasses.FrozenInstanceError):
        ConfidenceSpec(0.1).delta = 0.2


def test_interval_width():
    assert ParamInterval(0.5, 2.25).width == pytest.approx(1.75)


def test_candidate_point_grid_tags_collects_all_memberships():
    plain = CandidatePoint(0.5, CandidateKind.ENDPOINT_A)
    assert plain.grid_tags() == ()

    tagged = CandidatePoint(0.25, CandidateKind.ABS_PLUS, ell=0,
                            extra_tags=((CandidateKind.ABS_MINUS, 1),))
    assert tagged.grid_tags() == (
        (CandidateKind.ABS_PLUS, 0), (CandidateKind.ABS_MINUS, 1))

    # endpoints never contribute their own kind, only collided breakpoints
    merged = CandidatePoint(0.25, CandidateKind.ENDPOINT_B,
                            extra_tags=((CandidateKind.REL_LOWER, 3),))
    assert merged.grid_tags() == ((CandidateKind.REL_LOWER, 3),)
