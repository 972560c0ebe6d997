"""Weibull time-to-toxicity model and adaptive predictive weights.

The delay model is a Weibull survival function S(t) = exp(-lambda * t**gamma)
with a dose-specific rate ``lambda`` and a shared shape ``gamma``.  Everything
here is a pure function: rate calibration against a target DLT probability,
inverse-CDF sampling of event times, the closed-form censored-data MLE of the
rate, and the two adaptive-weight updates (plug-in and conjugate Gamma).

Weights answer: given a patient followed ``t`` units without a DLT, what is
the probability they still experience one by the end of the assessment
window ``t_max``?  Under the Weibull model that is ``1 - exp(-lambda * delta)``
with ``delta = t_max**gamma - t**gamma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence


@dataclass(frozen=True)
class GammaPrior:
    """Gamma(a, b) prior on a dose-specific rate, rate parameterization."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (self.a > 0 and math.isfinite(self.a)):
            raise ValueError(f"prior shape a must be positive, got {self.a}")
        if not (self.b > 0 and math.isfinite(self.b)):
            raise ValueError(f"prior rate b must be positive, got {self.b}")


@dataclass(frozen=True)
class ExposureSummary:
    """Sufficient statistics for one dose: DLT count and summed u**gamma."""

    events: int
    exposure: float

    def __post_init__(self) -> None:
        if self.events < 0:
            raise ValueError("event count must be nonnegative")
        if not (self.exposure >= 0 and math.isfinite(self.exposure)):
            raise ValueError("exposure must be finite and nonnegative")

    @classmethod
    def from_followup(
        cls,
        followups: Sequence[float],
        events: Sequence[int],
        gamma: float,
    ) -> "ExposureSummary":
        """Build the summary from per-patient (u_j, delta_j) contributions."""
        if len(followups) != len(events):
            raise ValueError("followups and events must have equal length")
        n_events = int(sum(1 for d in events if d))
        if n_events > len(followups):
            raise ValueError("more events than contributing patients")
        exposure = float(sum(u**gamma for u in followups))
        return cls(events=n_events, exposure=exposure)


@dataclass(frozen=True)
class WeightQuery:
    """Residual-window query: follow-up t against window t_max at shape gamma."""

    followup: float
    t_max: float
    gamma: float
    delta: float = field(init=False)

    def __post_init__(self) -> None:
        if self.followup < 0:
            raise ValueError(f"follow-up must be nonnegative, got {self.followup}")
        if not self.t_max > 0:
            raise ValueError(f"window must be positive, got {self.t_max}")
        if not self.gamma > 0:
            raise ValueError(f"shape must be positive, got {self.gamma}")
        object.__setattr__(
            self, "delta", self.t_max**self.gamma - self.followup**self.gamma
        )


class RateEstimate(NamedTuple):
    """MLE of a dose rate; ``no_information`` flags the zero-event case."""

    rate: float
    no_information: bool


def calibrate_rate(p_true: float, t_max: float, gamma: float) -> float:
    """Rate lambda such that Pr(T <= t_max) equals ``p_true``.

    Inverts 1 - exp(-lambda * t_max**gamma) = p_true, so
    lambda = -log(1 - p_true) / t_max**gamma.
    """
    if not (0 <= p_true < 1):
        raise ValueError(f"target probability must be in [0, 1), got {p_true}")
    if not t_max > 0:
        raise ValueError(f"window must be positive, got {t_max}")
    if not gamma > 0:
        raise ValueError(f"shape must be positive, got {gamma}")
    return -math.log1p(-p_true) / t_max**gamma


def survival(t: float, rate: float, gamma: float) -> float:
    """Weibull survival exp(-rate * t**gamma)."""
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if rate < 0:
        raise ValueError(f"rate must be nonnegative, got {rate}")
    return math.exp(-rate * t**gamma)


def sample_dlt_time(rate: float, gamma: float, u: float) -> Optional[float]:
    """Inverse-CDF draw of a DLT time; ``u`` is the survival quantile.

    Returns None for a zero rate (the hazard never fires).  The caller owns
    the uniform variate, so sampling stays deterministic under its RNG.
    """
    if not (0 < u < 1):
        raise ValueError(f"uniform variate must lie in (0, 1), got {u}")
    if rate < 0:
        raise ValueError(f"rate must be nonnegative, got {rate}")
    if rate == 0:
        return None
    return (-math.log(u) / rate) ** (1.0 / gamma)


def mle_rate(summary: ExposureSummary) -> RateEstimate:
    """Closed-form censored-Weibull MLE: events / exposure.

    Zero events gives rate 0 with the no-information flag set; callers decide
    the fallback (pooling across doses, or TITE-style linear records).  An
    event with zero exposure is impossible (an event implies positive
    follow-up) and raises.
    """
    if summary.exposure == 0:
        if summary.events > 0:
            raise ValueError("events recorded with zero exposure")
        return RateEstimate(0.0, True)
    if summary.events == 0:
        return RateEstimate(0.0, True)
    return RateEstimate(summary.events / summary.exposure, False)


def adaptive_weight_plugin(rate: float, query: WeightQuery) -> float:
    """Plug-in predictive weight 1 - exp(-rate * delta)."""
    if rate < 0:
        raise ValueError(f"rate must be nonnegative, got {rate}")
    if query.delta < 0:
        raise ValueError(
            "follow-up exceeds the window; clamp completed follow-up to weight 0"
        )
    return -math.expm1(-rate * query.delta)


def adaptive_weight_bayes(
    prior: GammaPrior, summary: ExposureSummary, query: WeightQuery
) -> float:
    """Posterior predictive weight under a conjugate Gamma(a, b) prior.

    The posterior for the rate is Gamma(a + D, b + S); averaging
    exp(-lambda * delta) over it (the Gamma Laplace transform) gives
    1 - ((b + S) / (b + S + delta)) ** (a + D).
    """
    if query.delta < 0:
        raise ValueError(
            "follow-up exceeds the window; clamp completed follow-up to weight 0"
        )
    shape = prior.a + summary.events
    scale_ratio = (prior.b + summary.exposure) / (
        prior.b + summary.exposure + query.delta
    )
    # expm1 keeps precision when shape * log(ratio) is near zero.
    return -math.expm1(shape * math.log(scale_ratio))


def taylor_weight_bound(rate: float, query: WeightQuery) -> tuple[float, float]:
    """First-order expansion of the plug-in weight and its error bound.

    Returns (rate * delta, (rate * delta)**2 / 2); the alternating series for
    1 - exp(-x) guarantees |weight - x| <= x**2 / 2 for x >= 0.
    """
    x = rate * query.delta
    if x < 0:
        raise ValueError("rate * delta must be nonnegative")
    return x, 0.5 * x * x
