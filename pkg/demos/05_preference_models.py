"""Four ways to rank risky payoffs, and the price each puts on risk reduction.

Certainty equivalents and the compensation map are exact rationals for
the built-in models.  rho(m, g, f) is the most the model would pay to
swap g for f; its sign recovers the preference and its magnitude the
strength.
"""

from fractions import Fraction

from riskprop import (
    Payoff,
    PiecewiseLinearFn,
    certainty_equivalent,
    dual_model,
    expected_utility_model,
    expected_value_model,
    mean_variance_model,
    mv_compare,
    rho,
)

F = Fraction
kinked = PiecewiseLinearFn(((F(-1), F(-1)), (F(0), F(0)), (F(1), F(1, 2))))
bent = PiecewiseLinearFn(((F(0), F(0)), (F(1, 2), F(1, 4)), (F(1), F(1))))

models = [
    expected_value_model(),
    expected_utility_model(kinked, name="eu-kinked"),
    dual_model(bent, name="dual-bent"),
]

gamble = Payoff.of(-2, 0, 2, 4)
safe = Payoff.of(1, 1, 1, 1)
print("gamble:", gamble.values, " safe:", safe)
print()
print(f"{'model':16s} {'CE(gamble)':>12s} {'rho(gamble, safe)':>18s}")
for m in models:
    ce = certainty_equivalent(m, gamble)
    price = rho(m, gamble, safe)
    print(f"{m.name:16s} {str(ce):>12s} {str(price):>18s}")
print()
print("positive rho: the model pays to replace the gamble with the safe payoff")
print()

mv = mean_variance_model()
print("mean-variance ranks by dominance only (no certainty equivalent):")
print("  safe vs gamble:", mv_compare(safe, gamble).value)
print("  (-2,4) vs (0,1):", mv_compare(Payoff.of(-2, 4), Payoff.of(0, 1)).value)
