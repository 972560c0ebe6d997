"""One-parameter CRM power model and weighted-likelihood posterior.

The dose-toxicity model is pi_k(alpha) = pi_0k ** exp(alpha) over a strictly
increasing skeleton pi_0.  Enrollment data enter as likelihood records that
carry separate coefficients for the event term log(pi) and the non-event term
log(1 - pi); this one shape covers complete outcomes (1, 0) / (0, 1), the
TITE linear scheme (0, t/t_max), and the adaptive fractional scheme
(w, 1 - w).

Posterior functionals are computed by fixed-grid trapezoid quadrature in
log space.  The grid spans +/- 8 prior standard deviations, where the
normal prior has decayed to ~1e-15, so the trapezoid rule converges
spectrally; a 401-point grid reproduces adaptive quadrature to ~1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np


class PosteriorNumericalError(RuntimeError):
    """Raised when the likelihood is non-finite across the whole grid."""


DEFAULT_SKELETON = (0.05, 0.10, 0.18, 0.30, 0.45)


@dataclass(frozen=True)
class Skeleton:
    """Prior DLT probabilities anchoring the power model, one per dose."""

    probs: tuple[float, ...] = DEFAULT_SKELETON

    def __post_init__(self) -> None:
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        if len(self.probs) < 2:
            raise ValueError("skeleton needs at least two dose levels")
        for p in self.probs:
            if not (0.0 < p < 1.0):
                raise ValueError(f"skeleton entries must lie in (0, 1), got {p}")
        if any(b <= a for a, b in zip(self.probs, self.probs[1:])):
            raise ValueError("skeleton must be strictly increasing")

    def __len__(self) -> int:
        return len(self.probs)


@dataclass(frozen=True)
class AlphaPrior:
    """Normal prior on the power-model parameter alpha."""

    mean: float = 0.0
    sd: float = 1.34

    def __post_init__(self) -> None:
        if not self.sd > 0:
            raise ValueError(f"prior sd must be positive, got {self.sd}")


@dataclass(frozen=True)
class QuadratureSpec:
    """Fixed trapezoid grid: ``points`` nodes on mean +/- span_sd prior sd."""

    points: int = 401
    span_sd: float = 8.0

    def __post_init__(self) -> None:
        if self.points < 11:
            raise ValueError("quadrature needs at least 11 points")
        if self.span_sd < 8.0:
            raise ValueError("grid must cover at least the prior mean +/- 8 sd")


@dataclass(frozen=True)
class LikelihoodRecord:
    """One patient's weighted contribution: coefficients of log pi, log(1-pi)."""

    dose_index: int  # 1-based
    event_weight: float
    nonevent_weight: float

    def __post_init__(self) -> None:
        if self.dose_index < 1:
            raise ValueError("dose index is 1-based")
        if self.event_weight < 0 or self.nonevent_weight < 0:
            raise ValueError("likelihood weights must be nonnegative")
        if self.event_weight + self.nonevent_weight > 1.0 + 1e-9:
            raise ValueError("event and non-event weights must sum to at most 1")


@dataclass(frozen=True)
class PosteriorSummary:
    mean_tox: tuple[float, ...]
    alpha_mean: float
    alpha_sd: float
    log_evidence: float

    def __post_init__(self) -> None:
        for p in self.mean_tox:
            if not (0.0 < p < 1.0):
                raise ValueError("posterior mean toxicity must lie in (0, 1)")
        if any(b <= a for a, b in zip(self.mean_tox, self.mean_tox[1:])):
            raise ValueError("posterior mean toxicity must increase with dose")


@dataclass(frozen=True)
class SafetyRules:
    """Escalation constraints shared by the model-based designs.

    ``deescalation_scope`` sets which enrollment count must reach
    ``min_before_deescalation`` before a down-move is allowed: the count at
    the current dose ("dose") or the whole-trial count ("trial").
    """

    no_skip: bool = True
    min_before_deescalation: int = 3
    deescalation_scope: str = "trial"

    def __post_init__(self) -> None:
        if self.deescalation_scope not in ("dose", "trial"):
            raise ValueError("deescalation_scope must be dose or trial")
        if self.min_before_deescalation < 1:
            raise ValueError("min_before_deescalation must be at least 1")


def dose_tox(alpha: float, skeleton_prob: float) -> float:
    """Power-model DLT probability pi ** exp(alpha)."""
    if not (0.0 < skeleton_prob < 1.0):
        raise ValueError(f"skeleton probability must lie in (0, 1), got {skeleton_prob}")
    return skeleton_prob ** math.exp(alpha)


def weighted_loglik(
    alpha: float, records: Sequence[LikelihoodRecord], skeleton: Skeleton
) -> float:
    """Direct summation of the weighted log-likelihood at one alpha.

    Zero weights suppress their log term entirely, so probabilities at the
    extremes never poison the sum with NaN.
    """
    power = math.exp(alpha)
    total = 0.0
    for rec in records:
        # log pi computed directly so extreme alpha never underflows pi to 0
        log_pi = power * math.log(skeleton.probs[rec.dose_index - 1])
        if rec.event_weight > 0:
            total += rec.event_weight * log_pi
        if rec.nonevent_weight > 0:
            one_minus = -math.expm1(log_pi)
            total += rec.nonevent_weight * (
                math.log(one_minus) if one_minus > 0.0 else -math.inf
            )
    return total


class PosteriorEngine:
    """Precomputed grid tables for repeated posterior summaries.

    Build once per (skeleton, prior, quadrature) and call ``summarize`` per
    decision; the tables make each call a couple of (G, K) matrix products.
    """

    def __init__(
        self, skeleton: Skeleton, prior: AlphaPrior, quadrature: QuadratureSpec
    ) -> None:
        self.skeleton = skeleton
        self.prior = prior
        self.quadrature = quadrature
        half = quadrature.span_sd * prior.sd
        self.alpha = np.linspace(prior.mean - half, prior.mean + half, quadrature.points)
        step = self.alpha[1] - self.alpha[0]
        log_pi0 = np.log(np.asarray(skeleton.probs))
        # log pi_k(alpha) = exp(alpha) * log pi_0k, shape (G, K)
        self.log_pi = np.outer(np.exp(self.alpha), log_pi0)
        self.pi = np.exp(self.log_pi)
        # -expm1 keeps log(1 - pi) accurate when pi approaches 1
        self.log_1mpi = np.log(-np.expm1(self.log_pi))
        z = (self.alpha - prior.mean) / prior.sd
        log_prior = -0.5 * z * z - math.log(prior.sd) - 0.5 * math.log(2 * math.pi)
        trap = np.full(quadrature.points, step)
        trap[0] = trap[-1] = 0.5 * step
        self.log_base = log_prior + np.log(trap)

    def loglik_grid(self, event_sums: np.ndarray, nonevent_sums: np.ndarray) -> np.ndarray:
        return self.log_pi @ event_sums + self.log_1mpi @ nonevent_sums

    def summarize_sums(
        self, event_sums: np.ndarray, nonevent_sums: np.ndarray
    ) -> PosteriorSummary:
        log_w = self.loglik_grid(event_sums, nonevent_sums) + self.log_base
        m = np.max(log_w)
        if not np.isfinite(m):
            raise PosteriorNumericalError("likelihood vanished on the whole grid")
        w = np.exp(log_w - m)
        norm = w.sum()
        mean_tox = (w @ self.pi) / norm
        alpha_mean = float(w @ self.alpha) / norm
        alpha_var = float(w @ (self.alpha * self.alpha)) / norm - alpha_mean**2
        return PosteriorSummary(
            mean_tox=tuple(float(p) for p in mean_tox),
            alpha_mean=alpha_mean,
            alpha_sd=math.sqrt(max(alpha_var, 0.0)),
            log_evidence=float(m + math.log(norm)),
        )

    def aggregate(self, records: Sequence[LikelihoodRecord]) -> tuple[np.ndarray, np.ndarray]:
        k = len(self.skeleton)
        event_sums = np.zeros(k)
        nonevent_sums = np.zeros(k)
        for rec in records:
            if rec.dose_index > k:
                raise ValueError(f"record dose {rec.dose_index} beyond skeleton size {k}")
            event_sums[rec.dose_index - 1] += rec.event_weight
            nonevent_sums[rec.dose_index - 1] += rec.nonevent_weight
        return event_sums, nonevent_sums

    def summarize(self, records: Sequence[LikelihoodRecord]) -> PosteriorSummary:
        return self.summarize_sums(*self.aggregate(records))


@lru_cache(maxsize=32)
def _engine(
    skeleton_probs: tuple[float, ...],
    prior_mean: float,
    prior_sd: float,
    points: int,
    span_sd: float,
) -> PosteriorEngine:
    return PosteriorEngine(
        Skeleton(skeleton_probs),
        AlphaPrior(prior_mean, prior_sd),
        QuadratureSpec(points, span_sd),
    )


def get_engine(
    skeleton: Skeleton,
    prior: AlphaPrior = AlphaPrior(),
    quadrature: QuadratureSpec = QuadratureSpec(),
) -> PosteriorEngine:
    return _engine(
        skeleton.probs, prior.mean, prior.sd, quadrature.points, quadrature.span_sd
    )


def posterior_mean_tox(
    records: Sequence[LikelihoodRecord],
    skeleton: Skeleton,
    prior: AlphaPrior = AlphaPrior(),
    quadrature: QuadratureSpec = QuadratureSpec(),
) -> PosteriorSummary:
    """Posterior functionals of the power model under weighted data."""
    return get_engine(skeleton, prior, quadrature).summarize(records)


def select_dose(
    summary: PosteriorSummary,
    target: float,
    highest_tried: int,
    current_dose: int,
    counts: Sequence[int],
    rules: SafetyRules = SafetyRules(),
) -> int:
    """Dose whose posterior mean toxicity is closest to the target.

    Constraints, in order: a tie in closeness breaks toward the lower dose;
    de-escalation below the current dose is blocked until the governing
    enrollment count (per ``rules.deescalation_scope``) reaches
    ``min_before_deescalation``; escalation never skips an untried level.
    """
    k = len(summary.mean_tox)
    if k == 0:
        raise ValueError("empty posterior")
    if not 1 <= highest_tried <= k:
        raise ValueError(f"highest tried dose {highest_tried} outside 1..{k}")
    distances = [abs(p - target) for p in summary.mean_tox]
    choice = 1 + min(range(k), key=lambda i: (distances[i], i))
    if choice < current_dose:
        governing = (
            counts[current_dose - 1]
            if rules.deescalation_scope == "dose"
            else sum(counts)
        )
        if governing < rules.min_before_deescalation:
            return current_dose
    if rules.no_skip:
        choice = min(choice, highest_tried + 1, k)
    return min(choice, k)
