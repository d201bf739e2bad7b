"""Certify or refute risk-attitude properties on concrete models.

A certificate searches a seeded budget of instances.  "violated" comes
with a minimized witness that re-evaluates exactly; "holds_on_budget"
is evidence, not proof, and echoes the budget.

The headline separations: a distortion below the identity but not
convex keeps the taste for full insurance while losing the taste for
partial insurance, which is exactly the gap between the weak and strong
attitudes.
"""

from fractions import Fraction

from riskprop import (
    PiecewiseLinearFn,
    SearchBudget,
    check_propensity,
    check_weak_risk_aversion,
    compare_strong,
    compare_weak,
    dual_model,
    expected_value_model,
    replay_witness,
)

F = Fraction
convex = dual_model(
    PiecewiseLinearFn(((F(0), F(0)), (F(1, 2), F(1, 4)), (F(1), F(1)))),
    name="dual-convex",
)
dominated = dual_model(
    PiecewiseLinearFn(((F(0), F(0)), (F(1, 3), F(1, 4)), (F(2, 3), F(13, 20)), (F(1), F(1)))),
    name="dual-dominated-not-convex",
)
budget = SearchBudget(max_n=5, exhaustive_n=4, trials=120, seed=0)

print("weak risk aversion:")
for m in (convex, dominated):
    print(f"  {m.name:28s} {check_weak_risk_aversion(m, budget).verdict}")
print()

print("insurance propensity by contract class:")
for m in (convex, dominated):
    verdicts = {
        kind: check_propensity(kind, m, budget).verdict for kind in ("fi", "pr", "dl")
    }
    print(f"  {m.name:28s} {verdicts}")
print()

report = check_propensity("pr", dominated, budget)
w = report.witness
print("a minimized counterexample for the dominated distortion:")
print("  background risk w:", w.payoffs["w"])
print("  proportional contract f:", w.payoffs["f"])
print("  equally distributed g:  ", w.payoffs["g"])
print(f"  value(w+f) = {w.lhs}  <  value(w+g) = {w.rhs}")
print("  replays exactly:", replay_witness(report, dominated))
print()

ev = expected_value_model()
print("comparative attitudes against the risk-neutral benchmark:")
print("  convex weakly more averse:   ", compare_weak(ev, convex, budget).verdict)
print("  convex strongly more averse: ", compare_strong(ev, convex, budget).verdict)
print("  dominated weakly more averse:", compare_weak(ev, dominated, budget).verdict)
print("  dominated strongly more:     ", compare_strong(ev, dominated, budget).verdict)
