"""Recognizing contract shapes from a payoff and a risk.

Classification is exact: proportional coverage is solved linearly over
state pairs and the deductible-limit shape is fitted against the
(loss, payment) scatter.  Names are the five nested classes: full (fi),
proportional (pr), deductible-limit (dl), indemnity schedule (is), and
contingency schedule (cs).
"""

from fractions import Fraction

from riskprop import Payoff, classify_detailed, fair_principle, make_contract, premium

w = Payoff.of(-4, -1, 0, 2)
print("risk w:", w.values, " loss -w:", (-w))
print()

contracts = {
    "full": make_contract(w, "fi", premium=Fraction(1, 2)),
    "60% coverage": make_contract(w, "pr", excess=Fraction(2, 5), premium=1),
    "deductible 1, limit 2": make_contract(w, "dl", deductible=1, limit=2, premium=Fraction(1, 2)),
    "custom schedule": make_contract(
        w, "is", schedule=[(-2, 0), (0, 0), (1, 1), (4, 2)], premium=0
    ),
}
for label, contract in contracts.items():
    detail = classify_detailed(contract.payoff, w)
    tags = ", ".join(sorted(k.value for k in detail))
    print(f"{label:22s} payoff {contract.payoff.values}")
    print(f"{'':22s} classes: {tags}")
print()

print("classification only sees payoff shape, so it is invariant to the")
print("wealth level at which the risk is booked:")
f = contracts["60% coverage"].payoff
for shift in (Fraction(-3), Fraction(5, 2)):
    same = classify_detailed(f, w + shift).keys() == classify_detailed(f, w).keys()
    print(f"  shift {shift}: same classes: {same}")
print()

pp = fair_principle()
indemnity = -w  # full indemnification of the loss
print("fair price of full indemnification:", premium(pp, indemnity))
print("wealth after buying it at that price:", (w + indemnity - premium(pp, indemnity)))
