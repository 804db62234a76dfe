"""Closed-form tail bounds and constant checks for the shifted-LCS model.

Everything here is plain arithmetic: each evaluator returns a probability
clamped to [0, 1] (or an explicit bracket), and the regime-limited bounds
report whether the supplied deviation is inside their stated regime. All
logarithms are natural.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple


def boris_bound(m: int, k: int, lam: float) -> float:
    """Lower-tail bound exp(-m*lam^2 / (2 k^2)) for a sum of m geometric
    waiting times with mean k each: Pr[X <= m(k - lam)]."""
    if m < 1 or k < 1 or lam < 0:
        raise ValueError("require m >= 1, k >= 1, lam >= 0")
    return min(1.0, math.exp(-m * lam * lam / (2.0 * k * k)))


def boriseasy_bound(m: int, k: int, lam: float) -> float:
    """Weakened form exp(-m*lam/(4k) + m/32); never below boris_bound when
    lam/k is in [0, 1] (uses x^2 >= x/2 - 1/16)."""
    if m < 1 or k < 1 or lam < 0:
        raise ValueError("require m >= 1, k >= 1, lam >= 0")
    return min(1.0, math.exp(-m * lam / (4.0 * k) + m / 32.0))


def grosscase_bound(len_a: int, len_b: int, k: int) -> float:
    """Bound exp((|B| - (7/8) k |A|) / 4k) on one word embedding into a
    shorter-than-expected window: Pr[A is a subsequence of B]."""
    if len_a < 1:
        raise ValueError("require len_a >= 1")
    if len_b < 0 or k < 1:
        raise ValueError("require len_b >= 0, k >= 1")
    return min(1.0, math.exp((len_b - 0.875 * k * len_a) / (4.0 * k)))


def azuma_tail(lam: float, n_coords: int) -> float:
    """Two-sided concentration exp(-lam^2 / (4 n)) for a Lipschitz function
    of n independent coordinates."""
    if lam < 0 or n_coords < 1:
        raise ValueError("require lam >= 0, n_coords >= 1")
    return min(1.0, math.exp(-lam * lam / (4.0 * n_coords)))


def hoeffding_tail(t: float, ranges) -> float:
    """Lower-tail bound exp(-2 t^2 / sum (b_i - a_i)^2) for a sum of bounded
    independent variables. All-degenerate ranges give 0 for t > 0."""
    if t <= 0:
        raise ValueError("require t > 0")
    total = 0.0
    for a, b in ranges:
        if b < a:
            raise ValueError("each range must satisfy b >= a")
        total += (b - a) ** 2
    if total == 0.0:
        return 0.0
    return min(1.0, math.exp(-2.0 * t * t / total))


def gamma_bracket(n: int, mean_ln: float) -> tuple[float, float]:
    """Bracket for the limit constant from a mean-length estimate at size n.

    Returns (mean/n, mean/n + 4*sqrt(log n / n)); the bracket contains the
    limit when the estimate equals the exact expectation.
    """
    if n < 2:
        raise ValueError("require n >= 2")
    low = mean_ln / n
    return low, low + 4.0 * math.sqrt(math.log(n) / n)


class BoundValue(NamedTuple):
    """A bound evaluation plus whether the deviation was in regime."""

    value: float
    in_regime: bool


def theorem1_regime_floor(n: int) -> float:
    return 6.0 * math.sqrt(n)


def theorem2_regime_floor(n: int) -> float:
    return 5.0 * n**0.75 * math.sqrt(math.log(n))


def theorem1_bound(n: int, t: float, c_k: float = 1.0) -> BoundValue:
    """Upper-deviation bound exp(-c_k t^2 / n), stated for t >= 6 sqrt(n)."""
    if n < 1 or t < 0 or c_k <= 0:
        raise ValueError("require n >= 1, t >= 0, c_k > 0")
    value = min(1.0, math.exp(-c_k * t * t / n))
    return BoundValue(value, t >= theorem1_regime_floor(n))


def theorem2_bound(n: int, t: float, c_k: float = 1.0) -> BoundValue:
    """Lower-deviation bound exp(-c_k t^2 / n^(3/4)), stated for
    t >= 5 n^(3/4) sqrt(log n)."""
    if n < 2 or t < 0 or c_k <= 0:
        raise ValueError("require n >= 2, t >= 0, c_k > 0")
    value = min(1.0, math.exp(-c_k * t * t / n**0.75))
    return BoundValue(value, t >= theorem2_regime_floor(n))


def case2_margin(eps: float) -> float:
    """Constant term of the small-span case inequality, rounded up to two
    decimals so the check stays conservative (2.08 at eps = 0.01)."""
    if not 0 < eps < 1:
        raise ValueError("require 0 < eps < 1")
    exact = 2.0 + 3.0 * eps - eps * math.log(eps)
    return math.ceil(exact * 100.0 - 1e-9) / 100.0


def case2_constant_check(
    k: int, gamma_lower: float, eps: float = 0.01
) -> tuple[float, bool]:
    """Evaluate margin - (7/8 k + 1 - eps) * gamma_lower and test negativity.

    A strictly negative value certifies that the small-span case contributes
    an exponentially vanishing probability for alphabet size k, given the
    lower bound gamma_lower on the limit constant.
    """
    if not 0 < gamma_lower <= 1:
        raise ValueError("gamma_lower must lie in (0, 1]")
    value = case2_margin(eps) - (0.875 * k + 1.0 - eps) * gamma_lower
    return value, value < 0.0


def exp_inequality_check(x: float) -> bool:
    """Check e^x (1 - x) <= 1 - x^2 / 2 for x in [0, 1], with rounding slack."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    lhs = math.exp(x) * (1.0 - x)
    rhs = 1.0 - x * x / 2.0
    return lhs <= rhs + 1e-12


def binom_upper(n: int, j: int) -> float:
    """Elementary upper bound (e n / j)^j on the binomial coefficient."""
    if not 1 <= j <= n:
        raise ValueError("require 1 <= j <= n")
    return (math.e * n / j) ** j


@dataclass(frozen=True)
class GammaEntry:
    lower: float
    upper: float
    source: str

    def __post_init__(self) -> None:
        if not 0 < self.lower <= self.upper <= 1:
            raise ValueError("require 0 < lower <= upper <= 1")


# Best known bracket for the binary alphabet; comes from the cited numeric
# literature, not derived here, hence configurable and tagged external.
EXTERNAL_GAMMA2 = GammaEntry(lower=0.788, upper=0.8263, source="external")


class GammaTable:
    """Per-alphabet brackets for the limit constant of mean LCS length.

    Defaults: exact value 1 for a one-symbol alphabet, the external numeric
    bracket for k = 2, and the analytic floor 1/sqrt(k) for k >= 3 with the
    trivial upper bound 1.
    """

    def __init__(self, entries: dict[int, GammaEntry] | None = None) -> None:
        self._entries: dict[int, GammaEntry] = dict(entries or {})

    def entry(self, k: int) -> GammaEntry:
        if k < 1:
            raise ValueError("alphabet size must be at least 1")
        if k in self._entries:
            return self._entries[k]
        if k == 1:
            return GammaEntry(1.0, 1.0, "exact")
        if k == 2:
            return EXTERNAL_GAMMA2
        return GammaEntry(1.0 / math.sqrt(k), 1.0, "sqrt-floor")

    def lower(self, k: int) -> float:
        return self.entry(k).lower

    def upper(self, k: int) -> float:
        return self.entry(k).upper

    def midpoint(self, k: int) -> float:
        e = self.entry(k)
        return 0.5 * (e.lower + e.upper)

    def set(self, k: int, entry: GammaEntry) -> None:
        if k < 1:
            raise ValueError("alphabet size must be at least 1")
        self._entries[k] = entry

    def to_json(self) -> str:
        payload = {
            str(k): {"lower": e.lower, "upper": e.upper, "source": e.source}
            for k, e in sorted(self._entries.items())
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GammaTable":
        raw = json.loads(text)
        entries = {}
        for key, val in raw.items():
            entries[int(key)] = GammaEntry(
                lower=float(val["lower"]),
                upper=float(val["upper"]),
                source=str(val.get("source", "configured")),
            )
        return cls(entries)


@dataclass(frozen=True)
class BoundParams:
    """Bag of numeric knobs shared by the bound evaluators."""

    n: int = 0
    k: int = 1
    t: float = 0.0
    s: int = 0
    m: int = 0
    lam: float = 0.0
    eps: float = 0.01
    c_k: float = 1.0

    def __post_init__(self) -> None:
        if min(self.n, self.k, self.s, self.m) < 0 or self.t < 0 or self.lam < 0:
            raise ValueError("parameters must be nonnegative")
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if self.c_k <= 0:
            raise ValueError("c_k must be positive")
