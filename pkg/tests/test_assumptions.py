"""Unit tests for the numerical assumption checker."""

import math

import pytest

from tailsum import (
    ConfigError,
    check_assumptions,
    gumbel_pickands,
    make_survival_copula,
    partial_limit_traits,
    survival_from_copula,
    tail_order_traits,
    trial_tail_order_traits,
)

CHECK_NAMES = ("A2", "A3", "A4", "evcond", "taylor_limit")


def _full_report(copula, descriptor):
    return check_assumptions(
        copula,
        tail_traits=tail_order_traits(descriptor),
        partial_traits=partial_limit_traits(descriptor),
    )


def test_independence_passes_all_checks(sc_ind):
    report = _full_report(sc_ind, "independence")
    assert report.all_pass
    assert not report.any_fail
    for name in CHECK_NAMES:
        check = report.checks[name]
        assert check.passed is True
        assert check.last_deviation < 1e-3


def test_gumbel_phi_one_passes_at_default_depth():
    sc = make_survival_copula("gumbel", phi=1.0)
    report = _full_report(sc, gumbel_pickands(1.0))
    assert report.all_pass


def test_gumbel_phi_ten_needs_depth():
    sc = make_survival_copula("gumbel", phi=10.0)
    p = gumbel_pickands(10.0)
    # at the default depth the slowly-converging diagonal check still fails
    shallow = _full_report(sc, p)
    assert shallow.checks["A2"].passed is False
    assert shallow.checks["A2"].last_deviation > 0.1
    # far enough into the tail every check clears the tolerance
    deep = check_assumptions(
        sc,
        tail_traits=tail_order_traits(p),
        partial_traits=partial_limit_traits(p),
        log10_t_sequence=(-8200.0, -8400.0, -8600.0, -8800.0, -9000.0),
    )
    assert deep.all_pass
    for name in CHECK_NAMES:
        assert deep.checks[name].last_deviation < 1e-3


def test_independence_diagonal_constant_fits_to_one(sc_ind):
    report = _full_report(sc_ind, "independence")
    assert math.isclose(report.checks["A3"].fitted_c, 1.0, rel_tol=1e-6)


def test_comonotone_is_inconclusive_not_failing(sc_co):
    report = check_assumptions(sc_co, tail_traits=tail_order_traits("comonotone"))
    assert not report.any_fail
    assert report.any_inconclusive
    assert not report.all_pass
    assert report.checks["A2"].passed is True


def test_counterexample_fails_scaling_check_for_every_trial_kappa(sc_log):
    for k in [1.0 + 0.1 * i for i in range(11)]:
        report = check_assumptions(sc_log, tail_traits=trial_tail_order_traits(k))
        assert report.checks["A2"].passed is False
        assert report.any_fail


def test_counterexample_fails_corner_taylor_check(sc_log):
    report = check_assumptions(sc_log, tail_traits=trial_tail_order_traits(1.5))
    assert report.checks["taylor_limit"].passed is False
    # checks needing analytic traits are skipped, not silently passed
    for name in ("A3", "A4", "evcond"):
        assert name in report.skipped


def test_deviation_rows_are_recorded(sc_ind):
    report = _full_report(sc_ind, "independence")
    check = report.checks["A2"]
    assert len(check.deviations) == len(report.log10_t_sequence)
    assert check.last_deviation == check.deviations[-1]
    # rows carry per-(scale, grid-point) detail, one block per scale
    assert len(check.rows) % len(check.deviations) == 0
    assert len(check.rows) >= len(check.deviations)


def test_config_errors(sc_ind):
    traits = tail_order_traits("independence")
    with pytest.raises(ConfigError):
        check_assumptions(sc_ind, tail_traits=traits, log10_t_sequence=(-1.0, -2.0))
    with pytest.raises(ConfigError):
        check_assumptions(sc_ind, tail_traits=traits, log10_t_sequence=(-1.0, -3.0, -2.0))
    with pytest.raises(ConfigError):
        check_assumptions(sc_ind, tail_traits=traits, grid=())
    with pytest.raises(ConfigError):
        check_assumptions(sc_ind, tail_traits=traits, grid=(0.5, -1.0))
    with pytest.raises(ConfigError):
        check_assumptions(sc_ind, tail_traits=traits, tolerance=0.0)


def test_traits_are_derived_from_shipped_families(sc_ind, sc_log):
    report = check_assumptions(sc_ind)
    assert report.all_pass
    from tailsum import UnsupportedFamilyError

    with pytest.raises(UnsupportedFamilyError):
        check_assumptions(sc_log)


def test_plain_callable_copula_underflows_to_inconclusive():
    # a copula given only as a plain callable has no deep-tail evaluator, so
    # probing far below the double-precision floor must degrade gracefully
    sc = survival_from_copula(lambda u, v: u * v)
    report = check_assumptions(
        sc,
        tail_traits=tail_order_traits("independence"),
        log10_t_sequence=(-200.0, -250.0, -300.0),
    )
    assert not report.any_fail
    assert report.any_inconclusive
