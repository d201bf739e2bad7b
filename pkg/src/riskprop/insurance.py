"""Insurance contracts for a given risk: construction, classification, pricing.

A contract for risk ``w`` is identified with its state-contingent net
payoff.  Five nested classes are recognized:

* full (``fi``): ``-w - premium``;
* proportional (``pr``): ``-(1 - excess) * w - premium`` with excess in ``[0, 1)``;
* deductible-limit (``dl``): ``min((-w - deductible)^+, limit) - premium``;
* indemnity schedule (``is``): a weakly increasing function of the loss ``-w``;
* contingency schedule (``cs``): counter-monotone with ``w``.

Classification is exact: proportional membership is solved linearly over
state pairs, deductible-limit membership by fitting the three-piece
shape against the observed (loss, payment) scatter.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

from .orders import counter_monotone
from .space import Payoff, RationalLike, as_fraction, expectation

__all__ = [
    "InsuranceKind",
    "InsuranceContract",
    "PremiumPrinciple",
    "make_contract",
    "classify",
    "classify_detailed",
    "premium",
    "fair_principle",
    "loading_principle",
]


class InsuranceKind(enum.Enum):
    FULL = "fi"
    PROPORTIONAL = "pr"
    DEDUCTIBLE_LIMIT = "dl"
    INDEMNITY_SCHEDULE = "is"
    CONTINGENCY_SCHEDULE = "cs"

    @classmethod
    def from_tag(cls, tag: Union[str, "InsuranceKind"]) -> "InsuranceKind":
        if isinstance(tag, InsuranceKind):
            return tag
        try:
            return cls(tag)
        except ValueError:
            raise ValueError(f"unknown insurance kind {tag!r}; expected one of fi, pr, dl, is, cs")


KIND_ORDER = (
    InsuranceKind.FULL,
    InsuranceKind.PROPORTIONAL,
    InsuranceKind.DEDUCTIBLE_LIMIT,
    InsuranceKind.INDEMNITY_SCHEDULE,
    InsuranceKind.CONTINGENCY_SCHEDULE,
)


@dataclass(frozen=True)
class InsuranceContract:
    payoff: Payoff
    declared_kind: InsuranceKind
    params: Mapping[str, object]


def _loss(w: Payoff) -> Payoff:
    return -w


def make_contract(
    w: Payoff,
    kind: Union[str, InsuranceKind],
    *,
    premium: RationalLike = 0,
    excess: Optional[RationalLike] = None,
    deductible: Optional[RationalLike] = None,
    limit: Optional[RationalLike] = None,
    schedule: Optional[Sequence[tuple[RationalLike, RationalLike]]] = None,
    payoff: Optional[Payoff] = None,
) -> InsuranceContract:
    """Build a contract of the given kind for risk ``w``; the payoff is computed exactly.

    Parameter requirements by kind: proportional needs ``excess`` in
    ``[0, 1)``; deductible-limit needs ``deductible`` and ``limit >= 0``;
    indemnity schedule needs ``schedule``, a map from every realized loss
    to a weakly increasing payment; contingency schedule needs an explicit
    ``payoff`` that is validated counter-monotone with ``w``.
    """
    kind = InsuranceKind.from_tag(kind)
    pi = as_fraction(premium)
    loss = _loss(w)

    if kind is InsuranceKind.FULL:
        return InsuranceContract(loss - pi, kind, {"premium": pi})

    if kind is InsuranceKind.PROPORTIONAL:
        if excess is None:
            raise ValueError("proportional contract needs excess")
        eps = as_fraction(excess)
        if not 0 <= eps < 1:
            raise ValueError(f"excess must lie in [0, 1), got {eps}")
        return InsuranceContract(
            loss * (1 - eps) - pi, kind, {"excess": eps, "premium": pi}
        )

    if kind is InsuranceKind.DEDUCTIBLE_LIMIT:
        if deductible is None or limit is None:
            raise ValueError("deductible-limit contract needs deductible and limit")
        d = as_fraction(deductible)
        lam = as_fraction(limit)
        if lam < 0:
            raise ValueError(f"limit must be >= 0, got {lam}")
        vals = tuple(min(max(lv - d, Fraction(0)), lam) - pi for lv in loss.values)
        return InsuranceContract(
            Payoff(vals), kind, {"deductible": d, "limit": lam, "premium": pi}
        )

    if kind is InsuranceKind.INDEMNITY_SCHEDULE:
        if schedule is None:
            raise ValueError("indemnity-schedule contract needs a schedule")
        table = {as_fraction(lv): as_fraction(pay) for lv, pay in schedule}
        points = sorted(table.items())
        for (l1, p1), (l2, p2) in zip(points, points[1:]):
            if p1 > p2:
                raise ValueError(
                    f"schedule must be weakly increasing in the loss: "
                    f"payment drops from {p1} at loss {l1} to {p2} at loss {l2}"
                )
        missing = sorted(set(loss.values) - set(table))
        if missing:
            raise ValueError(f"schedule does not cover realized losses {missing}")
        vals = tuple(table[lv] - pi for lv in loss.values)
        return InsuranceContract(
            Payoff(vals), kind, {"schedule": tuple(points), "premium": pi}
        )

    if kind is InsuranceKind.CONTINGENCY_SCHEDULE:
        if payoff is None:
            raise ValueError("contingency-schedule contract needs an explicit payoff")
        if not counter_monotone(payoff, w):
            raise ValueError("payoff is not counter-monotone with the risk")
        return InsuranceContract(payoff, kind, {})

    raise AssertionError("unreachable")


def _fit_full(f: Payoff, w: Payoff) -> Optional[dict]:
    total = w + f
    if all(v == total.values[0] for v in total.values):
        return {"premium": -total.values[0]}
    return None


def _fit_proportional(f: Payoff, w: Payoff) -> Optional[dict]:
    # f + (1 - excess) * w must be constant with coverage (1 - excess) in (0, 1]
    pairs = [
        (s, t)
        for s in range(len(w))
        for t in range(s + 1, len(w))
        if w.values[s] != w.values[t]
    ]
    if not pairs:
        if all(v == f.values[0] for v in f.values):
            return {"excess": Fraction(0), "premium": -(f.values[0] + w.values[0])}
        return None
    s, t = pairs[0]
    coverage = (f.values[t] - f.values[s]) / (w.values[s] - w.values[t])
    if not 0 < coverage <= 1:
        return None
    const = f.values[0] + coverage * w.values[0]
    if any(f.values[i] + coverage * w.values[i] != const for i in range(len(w))):
        return None
    return {"excess": 1 - coverage, "premium": -const}


def _loss_profile(f: Payoff, w: Payoff) -> Optional[list[tuple[Fraction, Fraction]]]:
    """Distinct (loss, payment) points if ``f`` is a weakly increasing function of the loss."""
    table: dict[Fraction, Fraction] = {}
    for lv, pay in zip(_loss(w).values, f.values):
        if lv in table and table[lv] != pay:
            return None
        table[lv] = pay
    points = sorted(table.items())
    for (_, p1), (_, p2) in zip(points, points[1:]):
        if p1 > p2:
            return None
    return points


def _fit_deductible_limit(f: Payoff, w: Payoff) -> Optional[dict]:
    points = _loss_profile(f, w)
    if points is None:
        return None
    if len({pay for _, pay in points}) == 1:
        return {"deductible": Fraction(0), "limit": Fraction(0), "premium": -points[0][1]}
    # Some point must lie on the slope-one segment, so its loss minus
    # payment determines deductible + premium; scan the candidates.
    for b in sorted({lv - pay for lv, pay in points}):
        low = sorted({pay for lv, pay in points if pay > lv - b})
        high = sorted({pay for lv, pay in points if pay < lv - b})
        if len(low) > 1 or len(high) > 1:
            continue
        on_line = [pay for lv, pay in points if pay == lv - b]
        floor = low[0] if low else min(pay for _, pay in points)
        cap = high[0] if high else max(pay for _, pay in points)
        if cap < floor:
            continue
        if on_line and (min(on_line) < floor or max(on_line) > cap):
            continue
        deductible = b + floor
        return {
            "deductible": deductible,
            "limit": cap - floor,
            "premium": -floor,
        }
    return None


def _fit_indemnity(f: Payoff, w: Payoff) -> Optional[dict]:
    points = _loss_profile(f, w)
    if points is None:
        return None
    return {"schedule": tuple(points), "premium": Fraction(0)}


def classify_detailed(f: Payoff, w: Payoff) -> dict[InsuranceKind, dict]:
    """Every insurance class ``f`` belongs to for risk ``w``, with fitted parameters."""
    f._check_same_length(w)
    out: dict[InsuranceKind, dict] = {}
    fit = _fit_full(f, w)
    if fit is not None:
        out[InsuranceKind.FULL] = fit
    fit = _fit_proportional(f, w)
    if fit is not None:
        out[InsuranceKind.PROPORTIONAL] = fit
    fit = _fit_deductible_limit(f, w)
    if fit is not None:
        out[InsuranceKind.DEDUCTIBLE_LIMIT] = fit
    fit = _fit_indemnity(f, w)
    if fit is not None:
        out[InsuranceKind.INDEMNITY_SCHEDULE] = fit
    if counter_monotone(f, w):
        out[InsuranceKind.CONTINGENCY_SCHEDULE] = {}
    return out


def classify(f: Payoff, w: Payoff) -> frozenset[InsuranceKind]:
    """Every insurance class ``f`` belongs to for risk ``w``."""
    return frozenset(classify_detailed(f, w))


@dataclass(frozen=True)
class PremiumPrinciple:
    """Pricing map with the translation property ``price(h + c) = price(h) + theta * c``."""

    name: str
    base: Callable[[Payoff], Fraction]
    theta: Fraction

    def __post_init__(self) -> None:
        theta = as_fraction(self.theta)
        if theta <= 0:
            raise ValueError(f"theta must be positive, got {theta}")
        object.__setattr__(self, "theta", theta)


def premium(pp: PremiumPrinciple, h: Payoff) -> Fraction:
    """Price of indemnity payoff ``h`` under the principle."""
    return pp.base(h)


def fair_principle() -> PremiumPrinciple:
    """Actuarially fair pricing: the premium is the expected indemnity."""
    return PremiumPrinciple("fair", expectation, Fraction(1))


def loading_principle(load: RationalLike) -> PremiumPrinciple:
    """Expected value plus a proportional loading: ``(1 + load) * E[h]``."""
    lam = as_fraction(load)
    if lam < 0:
        raise ValueError(f"load must be >= 0, got {lam}")
    factor = 1 + lam

    def base(h: Payoff) -> Fraction:
        return factor * expectation(h)

    return PremiumPrinciple(f"loading[{lam}]", base, factor)
