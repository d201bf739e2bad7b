from fractions import Fraction

import pytest

from riskprop import (
    Payoff,
    PiecewiseLinearFn,
    dual_model,
    expected_utility_model,
    expected_value_model,
)


def P(*values) -> Payoff:
    return Payoff.of(*values)


F = Fraction


def concave_utility() -> PiecewiseLinearFn:
    # slope 1 below zero, 1/2 above
    return PiecewiseLinearFn(((F(-1), F(-1)), (F(0), F(0)), (F(1), F(1, 2))))


def convex_kink_utility() -> PiecewiseLinearFn:
    # slope 1/2 below zero, 1 above
    return PiecewiseLinearFn(((F(-1), F(-1, 2)), (F(0), F(0)), (F(1), F(1))))


def convex_distortion() -> PiecewiseLinearFn:
    return PiecewiseLinearFn(((F(0), F(0)), (F(1, 2), F(1, 4)), (F(1), F(1))))


def nonconvex_dominated_distortion() -> PiecewiseLinearFn:
    # below the identity everywhere but with slopes 3/4, 6/5, 21/20
    return PiecewiseLinearFn(
        ((F(0), F(0)), (F(1, 3), F(1, 4)), (F(2, 3), F(13, 20)), (F(1), F(1)))
    )


def build_zoo() -> dict:
    return {
        "eu_concave": expected_utility_model(concave_utility(), name="eu-concave"),
        "eu_convex_kink": expected_utility_model(convex_kink_utility(), name="eu-convex-kink"),
        "dual_convex": dual_model(convex_distortion(), name="dual-convex"),
        "dual_nonconvex": dual_model(
            nonconvex_dominated_distortion(), name="dual-nonconvex-dominated"
        ),
        "expected_value": expected_value_model(),
    }


@pytest.fixture(scope="session")
def zoo() -> dict:
    return build_zoo()


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        status = "PASS" if report.passed else "FAIL"
        name = report.nodeid.split("::")[-1]
        print(f"\n[acceptance] {status} {name} ({report.duration:.2f}s)")
