"""Two farmers, one storm: equally distributed payoffs are not equal hedges.

Rain insurance pays 1 in the excess-rainfall state; drought insurance
pays 1 in the drought state.  Both cost the same and induce the same
lottery, yet only one of them flattens a given farmer's revenue.
"""

from riskprop import (
    Payoff,
    better_hedge,
    concave_order,
    counter_monotone,
    equal_in_distribution,
    fsd,
    is_best_hedge,
    recognize_mps,
)

states = ("excess rainfall", "drought", "other weather")
rain = Payoff.of(1, 0, 0)
drought = Payoff.of(0, 1, 0)
grapes = Payoff.of(0, 1, 1)   # vineyard revenue
rice = Payoff.of(1, 0, 1)     # rice paddy revenue

print("states:", ", ".join(states))
print("rain insurance payoff:   ", rain)
print("drought insurance payoff:", drought)
print("same lottery?", equal_in_distribution(rain, drought))
print()

print("vineyard with rain insurance:   ", (grapes + rain))
print("vineyard with drought insurance:", (grapes + drought))
print("rain counter-monotone with vineyard revenue?", counter_monotone(rain, grapes))
print("drought counter-monotone with vineyard revenue?", counter_monotone(drought, grapes))
print("rain a better hedge than drought for the vineyard?", better_hedge(rain, drought, grapes))
print("rain the best hedge in its distribution class?", is_best_hedge(rain, grapes))
print()

print("for the rice paddy the roles flip:")
print("drought a better hedge than rain?", better_hedge(drought, rain, rice))
print()

flat, spread = grapes + rain, grapes + drought
print("flat wealth", flat.values, "dominates spread wealth", spread.values, "in the concave order:")
print("  concave order:", concave_order(flat, spread))
print("  first-order dominance:", fsd(flat, spread))
print("  the spread is one move:", recognize_mps(flat, spread))
