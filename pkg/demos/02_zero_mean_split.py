"""Every zero-mean payoff is a difference of two equally distributed risks.

The construction orders the states so that running sums never leave
[min f, max f], then reads the split off the cumulative sums.  The two
halves are each other's one-step delay, so they share a distribution,
and the statewise difference reproduces the input exactly.
"""

import random
from fractions import Fraction

from riskprop import Payoff, equal_in_distribution, expectation, split_zero_mean

f = Payoff.of(2, -1, -1)
split = split_zero_mean(f)
print("payoff        ", f)
print("running sums h", split.h)
print("delayed sums h'", split.h_prime)
print("h - h' == f:", split.h - split.h_prime == f)
print("h =d h':", equal_in_distribution(split.h, split.h_prime))
print()

print("why it matters: with w = h, the contract -w + c is a full insurance")
print("for w, and it has the same distribution as -h' + c; choosing the")
print("insurance moves wealth from w + (-h' + c) =d f + c to the sure c.")
print()

rng = random.Random(7)
for trial in range(3):
    n = rng.randint(4, 9)
    raw = Payoff.of(*[Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3))) for _ in range(n)])
    g = raw - expectation(raw)
    s = split_zero_mean(g)
    lo, hi = g.min_value(), g.max_value()
    inside = all(lo <= v <= hi for v in s.h.values + s.h_prime.values)
    print(
        f"random n={n}: exact={s.h - s.h_prime == g} "
        f"equidistributed={equal_in_distribution(s.h, s.h_prime)} bounded={inside}"
    )
