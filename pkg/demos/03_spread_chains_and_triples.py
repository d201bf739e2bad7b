"""From concave order to insurance purchases, constructively.

Any concave-order pair is connected by a short chain of
mean-preserving-spread moves, and any single move factors through an
insurance purchase: there is a background risk and a contract
(proportional or deductible-limit) such that buying the contract yields
the less risky payoff and buying an equally distributed alternative
yields the riskier one.
"""

from fractions import Fraction

from riskprop import (
    MpsStep,
    Payoff,
    classify,
    concave_order,
    deductible_triple,
    mps_chain,
    proportional_triple,
)

f = Payoff.of(3, 1, 1, 3)
g = Payoff.of(0, 2, 6, 0)
print("f:", f.values, " g:", g.values, " f >=cv g:", concave_order(f, g))
chain = mps_chain(f, g)
current = f
for element in chain.elements:
    if isinstance(element, MpsStep):
        nxt = element.apply(current)
        print(f"  spread {element.delta} from state {element.donor} to {element.recipient}: {nxt.values}")
    else:
        nxt = element.apply(current)
        print(f"  rearrange by {element.mapping}: {nxt.values}")
    current = nxt
print("replayed endpoint equals g:", current == g)
print()

base = Payoff.of(0, 2, 5)
step = MpsStep(1, 2, Fraction(1))
spread = step.apply(base)
print("single move:", base.values, "->", spread)

t = proportional_triple(base, step)
print("proportional factorization:")
print("  background risk  ", t.w_tilde)
print("  contract payoff  ", t.f_tilde.values, "classes:", sorted(k.value for k in classify(t.f_tilde, t.w_tilde)))
print("  alternative      ", t.g_tilde)
print("  risk + contract =", (t.w_tilde + t.f_tilde))
print("  risk + alt      =", (t.w_tilde + t.g_tilde))

t = deductible_triple(base, step)
print("deductible-limit factorization:")
print("  background risk  ", t.w_tilde)
print("  contract payoff  ", t.f_tilde.values, "params:", dict(t.params))
print("  risk + contract =", (t.w_tilde + t.f_tilde))
print("  risk + alt      =", (t.w_tilde + t.g_tilde))
