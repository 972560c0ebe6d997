"""Discrete-event simulation of dose-finding trials.

A trial is a deterministic function of (scenario, config, seed).  Each
patient's latent DLT time is drawn once at enrollment by inverting the
Weibull CDF at a seed-derived uniform; advancing the clock only reveals
it.  The uniform for the j-th enrolled patient depends on (seed, j)
alone, so designs compared under one seed see common random numbers.

Model-based designs decide at every enrollment instant using partial
follow-up.  Algorithm designs (3+3, mTPI, BOIN) enroll whole cohorts and
wait out the full assessment window before each decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .designs import (
    DecisionKind,
    DesignConfig,
    final_mtd,
    next_dose,
)
from .timing import calibrate_rate, sample_dlt_time

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(value: int) -> int:
    """One splitmix64 scramble step; uniform avalanche over 64 bits."""
    z = (value + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed: int, index: int) -> int:
    """Stable per-replication seed; index-based, not sequence-based."""
    return splitmix64((base_seed & _MASK64) ^ splitmix64(index))


def latent_uniform(trial_seed: int, patient_index: int) -> float:
    """Uniform in the open interval (0, 1) for one (seed, patient) pair."""
    bits = splitmix64((trial_seed & _MASK64) ^ splitmix64(patient_index + 1))
    return ((bits >> 11) + 0.5) / float(1 << 53)


@dataclass(frozen=True)
class Scenario:
    """True dose-toxicity curve used to generate outcomes."""

    name: str
    true_probs: tuple[float, ...]
    true_mtd: int
    gamma_true: float = 2.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "true_probs", tuple(float(p) for p in self.true_probs))
        if not self.true_probs:
            raise ValueError("scenario needs at least one dose")
        for p in self.true_probs:
            if not 0.0 <= p < 1.0:
                raise ValueError(f"true DLT probability {p} outside [0, 1)")
        if not 1 <= self.true_mtd <= len(self.true_probs):
            raise ValueError("true MTD outside the dose range")
        if not self.gamma_true > 0:
            raise ValueError("gamma must be positive")

    @property
    def n_doses(self) -> int:
        return len(self.true_probs)

    def check_target(self, target: float) -> None:
        """The declared MTD must be the dose closest to the target."""
        best = min(
            range(len(self.true_probs)),
            key=lambda i: (abs(self.true_probs[i] - target), i),
        )
        if best + 1 != self.true_mtd:
            raise ValueError(
                f"scenario {self.name!r}: dose {best + 1} is closest to "
                f"target {target}, but true_mtd is {self.true_mtd}"
            )


STANDARD = Scenario("standard", (0.05, 0.10, 0.20, 0.35, 0.50), true_mtd=3)
STEEP = Scenario("steep", (0.02, 0.05, 0.10, 0.25, 0.50), true_mtd=4)
FLAT = Scenario("flat", (0.10, 0.15, 0.20, 0.25, 0.30), true_mtd=4)
SCENARIOS = {s.name: s for s in (STANDARD, STEEP, FLAT)}


@dataclass(frozen=True)
class TrialConfig:
    """Everything fixed before a trial starts, including its seed."""

    n_patients: int = 30
    accrual_interval: float = 2.0
    design: DesignConfig = field(default_factory=DesignConfig)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_patients < 1:
            raise ValueError("trial needs at least one patient")
        if not self.accrual_interval > 0:
            raise ValueError("accrual interval must be positive")

    @property
    def target(self) -> float:
        return self.design.target

    @property
    def t_max(self) -> float:
        return self.design.t_max


@dataclass(frozen=True)
class Patient:
    """One enrollment: assigned dose, enrollment clock, latent DLT time.

    ``dlt_time`` is measured from enrollment and is None when no event
    would ever occur; a finite value beyond t_max never becomes a DLT.
    """

    dose: int
    enroll_time: float
    dlt_time: Optional[float]


@dataclass
class TrialState:
    """Mutable in-trial record: who got what, when, and what happened."""

    n_doses: int
    patients: list[Patient] = field(default_factory=list)
    clock: float = 0.0

    def enroll(self, patient: Patient) -> None:
        if patient.enroll_time < self.clock:
            raise ValueError("enrollment times must be nondecreasing")
        if not 1 <= patient.dose <= self.n_doses:
            raise ValueError("assigned dose outside the dose range")
        self.patients.append(patient)
        self.clock = patient.enroll_time

    @property
    def highest_tried(self) -> int:
        return max((p.dose for p in self.patients), default=0)


@dataclass(frozen=True)
class TrialResult:
    selected_mtd: Optional[int]
    doses: tuple[int, ...]
    dlt_count: int
    fraction_above_mtd: float
    duration: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.fraction_above_mtd <= 1.0:
            raise ValueError("fraction above MTD must lie in [0, 1]")
        if self.dlt_count > len(self.doses):
            raise ValueError("more DLTs than enrolled patients")

    @property
    def n_enrolled(self) -> int:
        return len(self.doses)


@dataclass(frozen=True)
class OperatingCharacteristics:
    """Batch summary: accuracy, safety, and the full selection distribution."""

    p_correct_mtd: float
    mean_fraction_above: float
    mean_dlts: float
    selection_probs: tuple[float, ...]  # index 0 = no MTD, then doses 1..K
    se_p_correct: float
    se_fraction_above: float
    se_dlts: float
    reps: int

    def __post_init__(self) -> None:
        if abs(sum(self.selection_probs) - 1.0) > 1e-9:
            raise ValueError("selection proportions must sum to 1")


def _draw_patient(
    scenario: Scenario, dose: int, enroll_time: float, t_max: float,
    trial_seed: int, patient_index: int,
) -> Patient:
    rate = calibrate_rate(scenario.true_probs[dose - 1], t_max, scenario.gamma_true)
    u = latent_uniform(trial_seed, patient_index)
    dlt_time = sample_dlt_time(rate, scenario.gamma_true, u)
    return Patient(dose=dose, enroll_time=enroll_time, dlt_time=dlt_time)


def run_trial(
    scenario: Scenario, config: TrialConfig, seed: Optional[int] = None
) -> TrialResult:
    """Simulate one complete trial; bit-identical for identical inputs."""
    scenario.check_target(config.target)
    cfg = config.design
    if scenario.n_doses != len(cfg.skeleton):
        raise ValueError("scenario and skeleton disagree on the dose count")
    trial_seed = config.seed if seed is None else seed
    state = TrialState(n_doses=scenario.n_doses)
    design = cfg.design
    n = config.n_patients
    selected: Optional[int] = None
    ended_by_rule = False

    if design in ("tite", "aw-mle", "aw-bayes"):
        for j in range(n):
            clock = j * config.accrual_interval
            decision = next_dose(design, state, clock, cfg)
            state.enroll(
                _draw_patient(scenario, decision.dose, clock, cfg.t_max, trial_seed, j)
            )
    else:
        clock = 0.0
        while len(state.patients) < n:
            remaining = n - len(state.patients)
            if design == "3+3" and remaining < cfg.cohort_size:
                break  # 3+3 cannot run a partial cohort
            decision = next_dose(design, state, clock, cfg)
            if decision.kind in (DecisionKind.STOP, DecisionKind.COMPLETE):
                selected = decision.dose
                ended_by_rule = True
                break
            cohort = min(cfg.cohort_size, remaining)
            for _ in range(cohort):
                j = len(state.patients)
                state.enroll(
                    _draw_patient(
                        scenario, decision.dose, clock, cfg.t_max, trial_seed, j
                    )
                )
            clock += cfg.t_max

    if not ended_by_rule:
        selected = final_mtd(design, state, cfg)

    doses = tuple(p.dose for p in state.patients)
    dlts = sum(
        1 for p in state.patients
        if p.dlt_time is not None and p.dlt_time <= cfg.t_max
    )
    above = sum(1 for d in doses if d > scenario.true_mtd)
    fraction = above / len(doses) if doses else 0.0
    last_enroll = state.patients[-1].enroll_time if state.patients else 0.0
    return TrialResult(
        selected_mtd=selected,
        doses=doses,
        dlt_count=dlts,
        fraction_above_mtd=fraction,
        duration=last_enroll + cfg.t_max if doses else 0.0,
    )


def simulate_trials(
    scenario: Scenario,
    config: TrialConfig,
    replications: int,
    base_seed: Optional[int] = None,
) -> list[TrialResult]:
    """Independent replications under index-derived seeds."""
    if replications < 1:
        raise ValueError("need at least one replication")
    base = config.seed if base_seed is None else base_seed
    return [
        run_trial(scenario, config, seed=derive_seed(base, i))
        for i in range(replications)
    ]


def compute_metrics(
    results: Sequence[TrialResult], scenario: Scenario
) -> OperatingCharacteristics:
    """Aggregate per-trial results into operating characteristics."""
    if not results:
        raise ValueError("no trial results to summarize")
    r = len(results)
    k = scenario.n_doses
    correct = sum(1 for t in results if t.selected_mtd == scenario.true_mtd)
    p_correct = correct / r
    fractions = [t.fraction_above_mtd for t in results]
    dlts = [t.dlt_count for t in results]
    mean_frac = sum(fractions) / r
    mean_dlts = sum(dlts) / r
    counts = [0] * (k + 1)
    for t in results:
        counts[t.selected_mtd or 0] += 1
    return OperatingCharacteristics(
        p_correct_mtd=p_correct,
        mean_fraction_above=mean_frac,
        mean_dlts=mean_dlts,
        selection_probs=tuple(c / r for c in counts),
        se_p_correct=math.sqrt(p_correct * (1.0 - p_correct) / r),
        se_fraction_above=_sem(fractions),
        se_dlts=_sem(dlts),
        reps=r,
    )


def _sem(values: Sequence[float]) -> float:
    n = len(values)
    if n < 2:
        return 0.0
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return math.sqrt(var / n)


def run_batch(
    scenario: Scenario,
    config: TrialConfig,
    replications: int,
    base_seed: Optional[int] = None,
) -> OperatingCharacteristics:
    """simulate_trials followed by compute_metrics."""
    results = simulate_trials(scenario, config, replications, base_seed)
    return compute_metrics(results, scenario)


def config_for(design: str, **overrides) -> TrialConfig:
    """TrialConfig preset for one of the six named designs."""
    design_overrides = {
        key: overrides.pop(key)
        for key in list(overrides)
        if key in DesignConfig.__dataclass_fields__
    }
    cfg = DesignConfig(design=design, **design_overrides)
    return TrialConfig(design=cfg, **overrides)
