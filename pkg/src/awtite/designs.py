"""Dose-finding design strategies behind a uniform decision interface.

Six designs share one vocabulary: the rule-based 3+3, interval-based mTPI
and BOIN acting on complete-follow-up tallies, and the model-based TITE,
AW-MLE, and AW-BAYES acting on weighted likelihood records at any clock
time.  All functions are pure: trial state goes in, a Decision comes out.

State objects are duck-typed.  A design only needs ``state.patients``
(each with ``dose`` 1-based, ``enroll_time``, and ``dlt_time`` measured
from enrollment, None if no DLT ever occurs) and ``state.n_doses``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence

from scipy import stats

from .crm import (
    AlphaPrior,
    LikelihoodRecord,
    QuadratureSpec,
    SafetyRules,
    Skeleton,
    posterior_mean_tox,
    select_dose,
)
from .timing import (
    ExposureSummary,
    GammaPrior,
    WeightQuery,
    adaptive_weight_bayes,
    adaptive_weight_plugin,
    mle_rate,
)

MODEL_BASED = ("tite", "aw-mle", "aw-bayes")
ALGORITHM = ("3+3", "mtpi", "boin")
DESIGN_IDS = ALGORITHM + MODEL_BASED

DISPLAY_NAMES = {
    "3+3": "3+3",
    "mtpi": "mTPI",
    "boin": "BOIN",
    "tite": "TITE",
    "aw-mle": "AW-MLE",
    "aw-bayes": "AW-BAYES",
}


class DecisionKind(Enum):
    ASSIGN = "assign"
    EXPAND = "expand"
    STOP = "stop-trial"
    COMPLETE = "complete"


@dataclass(frozen=True)
class Decision:
    """One design verdict: where the next patients go, or why the trial ends.

    ``dose`` is the assignment target for ASSIGN/EXPAND and the selected
    MTD (or None for no MTD) for STOP/COMPLETE.  ``exclude`` marks the
    current dose and everything above it as permanently too toxic.
    """

    kind: DecisionKind
    dose: int | None
    rationale: str = ""
    exclude: bool = False

    def __post_init__(self) -> None:
        if self.kind in (DecisionKind.ASSIGN, DecisionKind.EXPAND):
            if self.dose is None or self.dose < 1:
                raise ValueError("assignment decisions need a dose index >= 1")


@dataclass(frozen=True)
class DoseTally:
    """Complete-follow-up counts per dose: treated n_k and DLTs x_k."""

    treated: tuple[int, ...]
    dlts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.treated) != len(self.dlts):
            raise ValueError("treated and DLT vectors must have equal length")
        for n, x in zip(self.treated, self.dlts):
            if not 0 <= x <= n:
                raise ValueError(f"DLT count {x} outside 0..{n}")

    def at(self, dose: int) -> tuple[int, int]:
        return self.treated[dose - 1], self.dlts[dose - 1]

    @classmethod
    def from_patients(
        cls, patients: Iterable, clock: float, t_max: float, n_doses: int
    ) -> "DoseTally":
        """Tally only patients whose assessment window has resolved."""
        treated = [0] * n_doses
        dlts = [0] * n_doses
        for p in patients:
            status, _ = follow_up_status(p, clock, t_max)
            if status == "dlt":
                treated[p.dose - 1] += 1
                dlts[p.dose - 1] += 1
            elif status == "complete":
                treated[p.dose - 1] += 1
        return cls(tuple(treated), tuple(dlts))


@dataclass(frozen=True)
class BoinBoundaries:
    lambda_e: float
    lambda_d: float
    phi: float

    def __post_init__(self) -> None:
        if not 0.0 < self.lambda_e < self.phi < self.lambda_d < 1.0:
            raise ValueError("boundaries must satisfy 0 < lambda_e < phi < lambda_d < 1")


@dataclass(frozen=True)
class DesignConfig:
    """Everything a design needs beyond the trial state itself.

    ``estimator`` resolves "auto" to the mode implied by the design id.
    ``exposure_pool`` controls whether still-pending patients contribute
    follow-up to the delay-rate estimator ("all") or only resolved ones
    ("resolved"); ``cold_start`` picks the weighting used before the first
    event anywhere ("prior" pooled-prior weights, or "linear" follow-up
    fractions).
    """

    design: str = "aw-mle"
    target: float = 0.25
    t_max: float = 12.0
    gamma_assumed: float = 2.0
    estimator: str = "auto"
    rate_prior: GammaPrior = GammaPrior(1.0, 1000.0)
    aw_likelihood: str = "fractional"
    exposure_pool: str = "resolved"
    cold_start: str = "prior"
    cohort_size: int = 3
    eps_lo: float = 0.05
    eps_hi: float = 0.05
    exclusion_threshold: float = 0.95
    skeleton: Skeleton = field(default_factory=Skeleton)
    alpha_prior: AlphaPrior = field(default_factory=AlphaPrior)
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    safety: SafetyRules = field(default_factory=SafetyRules)

    def __post_init__(self) -> None:
        if self.design not in DESIGN_IDS:
            raise ValueError(f"unknown design {self.design!r}, expected one of {DESIGN_IDS}")
        if not 0.0 < self.target < 1.0:
            raise ValueError("target DLT probability must lie in (0, 1)")
        if self.cohort_size < 1:
            raise ValueError("cohort size must be at least 1")
        if self.estimator not in ("auto", "plugin", "bayes"):
            raise ValueError("estimator must be auto, plugin, or bayes")
        if self.aw_likelihood not in ("fractional", "complement-only"):
            raise ValueError("aw_likelihood must be fractional or complement-only")
        if self.exposure_pool not in ("all", "resolved"):
            raise ValueError("exposure_pool must be all or resolved")
        if self.cold_start not in ("linear", "prior"):
            raise ValueError("cold_start must be linear or prior")

    @property
    def effective_estimator(self) -> str:
        if self.estimator != "auto":
            return self.estimator
        return "bayes" if self.design == "aw-bayes" else "plugin"


def follow_up_status(patient, clock: float, t_max: float) -> tuple[str, float]:
    """Classify one patient at ``clock`` and return (status, exposure).

    Exposure is follow-up truncated at the event time and the assessment
    window: min(clock - enroll, dlt_time, t_max).
    """
    followup = clock - patient.enroll_time
    if followup < 0:
        raise ValueError("clock precedes an enrollment time")
    capped = min(followup, t_max)
    if patient.dlt_time is not None and patient.dlt_time <= capped:
        return "dlt", patient.dlt_time
    if followup >= t_max:
        return "complete", t_max
    return "pending", followup


def three_plus_three_step(tally: DoseTally, current: int) -> Decision:
    """Classic 3+3 verdict for a cohort-complete tally at the current dose."""
    n_doses = len(tally.treated)
    n, x = tally.at(current)
    if n not in (0, 3, 6):
        raise ValueError(f"3+3 expects 0, 3, or 6 assessed at dose {current}, got {n}")
    if n == 0:
        return Decision(DecisionKind.ASSIGN, current, "first cohort at this dose")
    if x >= 2:
        mtd = current - 1 if current > 1 else None
        label = f"dose {mtd}" if mtd else "no MTD"
        return Decision(DecisionKind.STOP, mtd, f"{x}/{n}: stop, MTD = {label}")
    if n == 3 and x == 1:
        return Decision(DecisionKind.EXPAND, current, "1/3: expand to 6")
    # 0/3 or <=1/6: escalate, or finish at the top dose
    if current == n_doses:
        return Decision(DecisionKind.COMPLETE, current, f"{x}/{n} at top dose")
    return Decision(DecisionKind.ASSIGN, current + 1, f"{x}/{n}: escalate")


@lru_cache(maxsize=4096)
def _mtpi_verdict(
    n: int, x: int, target: float, eps_lo: float, eps_hi: float, threshold: float
) -> tuple[str, bool]:
    """(escalate|stay|deescalate, exclude) under a Beta(1,1) posterior."""
    lo, hi = target - eps_lo, target + eps_hi
    cdf_lo = stats.beta.cdf(lo, 1 + x, 1 + n - x)
    cdf_hi = stats.beta.cdf(hi, 1 + x, 1 + n - x)
    upm = {
        "escalate": cdf_lo / lo,
        "stay": (cdf_hi - cdf_lo) / (hi - lo),
        "deescalate": (1.0 - cdf_hi) / (1.0 - hi),
    }
    # ties break toward the safer verdict
    safety = {"escalate": 0, "stay": 1, "deescalate": 2}
    verdict = max(upm, key=lambda k: (upm[k], safety[k]))
    exclude = 1.0 - stats.beta.cdf(target, 1 + x, 1 + n - x) > threshold
    return verdict, exclude


def mtpi_step(
    n: int,
    x: int,
    cfg: DesignConfig,
    current: int,
    highest_tried: int,
    n_doses: int | None = None,
) -> Decision:
    """mTPI interval decision with unit-probability-mass comparison."""
    if n < 1:
        raise ValueError("mTPI needs at least one assessed patient")
    verdict, exclude = _mtpi_verdict(
        n, x, cfg.target, cfg.eps_lo, cfg.eps_hi, cfg.exclusion_threshold
    )
    if exclude:
        if current == 1:
            return Decision(
                DecisionKind.STOP, None, "lowest dose too toxic", exclude=True
            )
        return Decision(
            DecisionKind.ASSIGN, current - 1, f"{x}/{n}: de-escalate, exclude",
            exclude=True,
        )
    if verdict == "deescalate":
        return Decision(DecisionKind.ASSIGN, max(current - 1, 1), f"{x}/{n}: de-escalate")
    if verdict == "stay":
        return Decision(DecisionKind.ASSIGN, current, f"{x}/{n}: stay")
    dose = current + 1
    if n_doses is not None:
        dose = min(dose, n_doses)
    dose = min(dose, highest_tried + 1)
    return Decision(DecisionKind.ASSIGN, dose, f"{x}/{n}: escalate")


def boin_boundaries(target: float) -> BoinBoundaries:
    """Optimal interval boundaries at phi1 = 0.6*phi, phi2 = 1.4*phi."""
    if not 0.0 < target < 1.0:
        raise ValueError("target must lie in (0, 1)")
    phi, phi1, phi2 = target, 0.6 * target, 1.4 * target
    lambda_e = math.log((1 - phi1) / (1 - phi)) / math.log(
        phi * (1 - phi1) / (phi1 * (1 - phi))
    )
    lambda_d = math.log((1 - phi) / (1 - phi2)) / math.log(
        phi2 * (1 - phi) / (phi * (1 - phi2))
    )
    return BoinBoundaries(lambda_e, lambda_d, phi)


def boin_step(
    n: int,
    x: int,
    boundaries: BoinBoundaries,
    current: int,
    highest_tried: int,
    n_doses: int | None = None,
) -> Decision:
    """BOIN comparison of the empirical rate against fixed boundaries."""
    if n < 1:
        raise ValueError("BOIN needs at least one assessed patient")
    rate = x / n
    if rate <= boundaries.lambda_e:
        dose = current + 1
        if n_doses is not None:
            dose = min(dose, n_doses)
        dose = min(dose, highest_tried + 1)
        return Decision(DecisionKind.ASSIGN, dose, f"{x}/{n}: escalate")
    if rate >= boundaries.lambda_d:
        return Decision(DecisionKind.ASSIGN, max(current - 1, 1), f"{x}/{n}: de-escalate")
    return Decision(DecisionKind.ASSIGN, current, f"{x}/{n}: stay")


def tite_records(state, clock: float, t_max: float) -> list[LikelihoodRecord]:
    """Likelihood records under linear follow-up weighting."""
    records = []
    for p in state.patients:
        status, u = follow_up_status(p, clock, t_max)
        if status == "dlt":
            records.append(LikelihoodRecord(p.dose, 1.0, 0.0))
        elif status == "complete":
            records.append(LikelihoodRecord(p.dose, 0.0, 1.0))
        else:
            records.append(LikelihoodRecord(p.dose, 0.0, u / t_max))
    return records


def exposure_by_dose(
    state, clock: float, cfg: DesignConfig
) -> list[ExposureSummary]:
    """Per-dose event counts and accumulated u^gamma exposure."""
    followups: list[list[float]] = [[] for _ in range(state.n_doses)]
    deltas: list[list[int]] = [[] for _ in range(state.n_doses)]
    for p in state.patients:
        status, u = follow_up_status(p, clock, cfg.t_max)
        if status == "pending" and cfg.exposure_pool == "resolved":
            continue
        followups[p.dose - 1].append(u)
        deltas[p.dose - 1].append(1 if status == "dlt" else 0)
    return [
        ExposureSummary.from_followup(fu, dl, cfg.gamma_assumed)
        for fu, dl in zip(followups, deltas)
    ]


def _pending_weight(
    dose: int,
    query: WeightQuery,
    summaries: Sequence[ExposureSummary],
    cfg: DesignConfig,
) -> float:
    """Adaptive weight for one pending patient, with cold-start pooling."""
    local = summaries[dose - 1]
    if local.events == 0:
        local = ExposureSummary(
            events=sum(s.events for s in summaries),
            exposure=sum(s.exposure for s in summaries),
        )
    if cfg.effective_estimator == "bayes" or local.events == 0:
        return adaptive_weight_bayes(cfg.rate_prior, local, query)
    return adaptive_weight_plugin(mle_rate(local).rate, query)


def aw_records(state, clock: float, cfg: DesignConfig) -> list[LikelihoodRecord]:
    """Likelihood records under delay-model adaptive weighting.

    Resolved patients contribute full outcomes.  Pending patients get the
    residual-window DLT probability w as a fractional event (w, 1-w), or
    (0, 1-w) under the complement-only scheme.  Before the first event
    anywhere, no delay rate can be estimated from data: under
    ``cold_start="linear"`` records fall back to the linear scheme, while
    ``cold_start="prior"`` draws weights from the pooled rate prior.
    """
    summaries = exposure_by_dose(state, clock, cfg)
    if cfg.cold_start == "linear" and sum(s.events for s in summaries) == 0:
        return tite_records(state, clock, cfg.t_max)
    records = []
    for p in state.patients:
        status, u = follow_up_status(p, clock, cfg.t_max)
        if status == "dlt":
            records.append(LikelihoodRecord(p.dose, 1.0, 0.0))
        elif status == "complete":
            records.append(LikelihoodRecord(p.dose, 0.0, 1.0))
        else:
            query = WeightQuery(u, cfg.t_max, cfg.gamma_assumed)
            w = _pending_weight(p.dose, query, summaries, cfg)
            if cfg.aw_likelihood == "fractional":
                records.append(LikelihoodRecord(p.dose, w, 1.0 - w))
            else:
                records.append(LikelihoodRecord(p.dose, 0.0, 1.0 - w))
    return records


def _exclusion_ceiling(tally: DoseTally, cfg: DesignConfig) -> int:
    """Highest dose not ruled out by the exclusion test on final tallies."""
    ceiling = len(tally.treated)
    for k in range(1, len(tally.treated) + 1):
        n, x = tally.at(k)
        if n >= 1:
            _, exclude = _mtpi_verdict(
                n, x, cfg.target, cfg.eps_lo, cfg.eps_hi, cfg.exclusion_threshold
            )
            if exclude:
                return k - 1
    return ceiling


def next_dose(design: str, state, clock: float, cfg: DesignConfig) -> Decision:
    """Single decision-point dispatch for any of the six designs."""
    if design not in DESIGN_IDS:
        raise ValueError(f"unknown design {design!r}")
    patients = list(state.patients)
    if not patients:
        return Decision(DecisionKind.ASSIGN, 1, "start at the lowest dose")
    n_doses = state.n_doses
    current = patients[-1].dose
    highest = max(p.dose for p in patients)

    if design in MODEL_BASED:
        if design == "tite":
            records = tite_records(state, clock, cfg.t_max)
        else:
            records = aw_records(state, clock, cfg)
        summary = posterior_mean_tox(
            records, cfg.skeleton, cfg.alpha_prior, cfg.quadrature
        )
        counts = [0] * n_doses
        for p in patients:
            counts[p.dose - 1] += 1
        dose = select_dose(
            summary, cfg.target, highest, current, counts, cfg.safety
        )
        return Decision(
            DecisionKind.ASSIGN, dose,
            f"posterior mean tox {summary.mean_tox[dose - 1]:.3f}",
        )

    tally = DoseTally.from_patients(patients, clock, cfg.t_max, n_doses)
    if design == "3+3":
        return three_plus_three_step(tally, current)
    n, x = tally.at(current)
    if design == "mtpi":
        decision = mtpi_step(n, x, cfg, current, highest, n_doses)
        if decision.kind is DecisionKind.ASSIGN:
            ceiling = _exclusion_ceiling(tally, cfg)
            if ceiling < 1:
                return Decision(DecisionKind.STOP, None, "lowest dose too toxic", exclude=True)
            if decision.dose > ceiling:
                return Decision(
                    DecisionKind.ASSIGN, ceiling, decision.rationale + " (ceiling)",
                    exclude=decision.exclude,
                )
        return decision
    return boin_step(n, x, boin_boundaries(cfg.target), current, highest, n_doses)


def pava_isotonic(rates: Sequence[float], weights: Sequence[int]) -> list[float]:
    """Weighted pool-adjacent-violators fit, nondecreasing."""
    values = [float(r) for r in rates]
    w = [float(v) for v in weights]
    blocks = [(values[i], w[i], 1) for i in range(len(values))]
    merged: list[tuple[float, float, int]] = []
    for val, wt, cnt in blocks:
        merged.append((val, wt, cnt))
        while len(merged) > 1 and merged[-2][0] >= merged[-1][0]:
            v2, w2, c2 = merged.pop()
            v1, w1, c1 = merged.pop()
            tw = w1 + w2
            merged.append(((v1 * w1 + v2 * w2) / tw, tw, c1 + c2))
    out: list[float] = []
    for val, _, cnt in merged:
        out.extend([val] * cnt)
    return out


def _isotonic_mtd(tally: DoseTally, target: float, ceiling: int) -> int | None:
    """Tried dose whose isotonic rate estimate is nearest the target.

    Within a pooled block every dose shares one estimate; ties then go to
    the higher dose when the shared estimate is below target and to the
    lower dose when above, mirroring the usual interval-design convention.
    """
    tried = [k for k in range(1, ceiling + 1) if tally.treated[k - 1] > 0]
    if not tried:
        return None
    rates = [tally.dlts[k - 1] / tally.treated[k - 1] for k in tried]
    iso = pava_isotonic(rates, [tally.treated[k - 1] for k in tried])
    # tiny increasing jitter makes the tie convention explicit
    adjusted = [r + 1e-9 * i for i, r in enumerate(iso)]
    best = min(range(len(tried)), key=lambda i: (abs(adjusted[i] - target), i))
    return tried[best]


def final_mtd(design: str, state, cfg: DesignConfig) -> int | None:
    """MTD recommendation once every patient's window has resolved."""
    patients = list(state.patients)
    if not patients:
        return None
    clock = max(p.enroll_time for p in patients) + cfg.t_max
    n_doses = state.n_doses
    tally = DoseTally.from_patients(patients, clock, cfg.t_max, n_doses)

    if design in MODEL_BASED:
        records = tite_records(state, clock, cfg.t_max)
        summary = posterior_mean_tox(
            records, cfg.skeleton, cfg.alpha_prior, cfg.quadrature
        )
        tried = sorted({p.dose for p in patients})
        return min(
            tried, key=lambda k: (abs(summary.mean_tox[k - 1] - cfg.target), k)
        )

    if design == "3+3":
        last_pass = 0
        for k in range(1, n_doses + 1):
            n, x = tally.at(k)
            if n == 3 and x == 0 or n == 6 and x <= 1:
                last_pass = k
                continue
            if n == 3 and x == 1:
                # expansion never finished (enrollment budget ran out)
                break
            break
        return last_pass or None

    ceiling = (
        _exclusion_ceiling(tally, cfg) if design == "mtpi" else n_doses
    )
    return _isotonic_mtd(tally, cfg.target, ceiling)
