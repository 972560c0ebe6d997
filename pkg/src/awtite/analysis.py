"""Design comparison by stratified bootstrap, and sensitivity sweeps.

Comparisons resample trials with replacement within each scenario so
that scenario mix never varies across bootstrap iterates; sweeps rerun
the simulator with exactly one parameter changed per grid point.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

import numpy as np

from .sim import OperatingCharacteristics, Scenario, TrialConfig, run_batch
from .timing import GammaPrior

# direction of improvement for each reported metric
METRIC_DIRECTION = {
    "p_correct": "higher",
    "frac_above": "lower",
    "dlts": "lower",
}

SWEEP_PARAMETERS = ("accrual_interval", "n_patients", "gamma_assumed", "t_max", "prior")

SWEEP_GRIDS = {
    "accrual_interval": (1.0, 2.0, 3.0, 4.0),
    "n_patients": (20, 30, 40, 50),
    "gamma_assumed": (1.5, 2.0, 2.5, 3.0),
    "t_max": (8.0, 10.0, 12.0, 14.0, 16.0),
    "prior": (GammaPrior(1.0, 1000.0), GammaPrior(2.0, 500.0), GammaPrior(5.0, 200.0)),
}


@dataclass(frozen=True)
class ComparisonReport:
    """Bootstrap summary of one metric for method A versus method B."""

    metric: str
    mean_difference: float
    ci_lower: float
    ci_upper: float
    p_value: float
    p_two_sided: float
    n_boot: int
    estimate_within_ci: bool

    def significant(self) -> bool:
        return not self.ci_lower <= 0.0 <= self.ci_upper


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sensitivity sweep around a base configuration."""

    parameter: str
    grid: tuple
    base_config: TrialConfig
    scenario: Scenario
    replications: int = 2000
    base_seed: int = 0

    def __post_init__(self) -> None:
        if self.parameter not in SWEEP_PARAMETERS:
            raise ValueError(
                f"unknown sweep parameter {self.parameter!r}, "
                f"expected one of {SWEEP_PARAMETERS}"
            )
        if not self.grid:
            raise ValueError("sweep grid must be nonempty")
        if self.replications < 1:
            raise ValueError("need at least one replication per grid point")


@dataclass(frozen=True)
class SweepPoint:
    parameter: str
    value: object
    characteristics: OperatingCharacteristics


def _scenario_means(
    groups: Mapping[str, Sequence[float]], rng: Optional[np.random.Generator]
) -> float:
    total = 0.0
    for values in groups.values():
        arr = np.asarray(values, dtype=float)
        if rng is not None:
            arr = arr[rng.integers(0, len(arr), size=len(arr))]
        total += float(arr.mean())
    return total / len(groups)


def bootstrap_compare(
    results_a: Mapping[str, Sequence[float]],
    results_b: Mapping[str, Sequence[float]],
    metric: str,
    n_boot: int = 2000,
    seed: int = 0,
    higher_is_better: Optional[bool] = None,
) -> ComparisonReport:
    """Scenario-stratified bootstrap of the A-minus-B metric difference.

    ``results_a`` and ``results_b`` map scenario name to that method's
    per-trial metric values.  The p-value is the share of bootstrap
    iterates in which method B outperforms method A in the declared
    direction of improvement.
    """
    if n_boot < 1:
        raise ValueError("need at least one bootstrap resample")
    if set(results_a) != set(results_b):
        raise ValueError("methods must cover the same scenarios")
    if not results_a:
        raise ValueError("no scenarios to compare")
    for name in results_a:
        if len(results_a[name]) == 0 or len(results_b[name]) == 0:
            raise ValueError(f"scenario {name!r} has an empty trial group")
    if higher_is_better is None:
        if metric not in METRIC_DIRECTION:
            raise ValueError(
                f"metric {metric!r} has no declared direction; "
                "pass higher_is_better explicitly"
            )
        higher_is_better = METRIC_DIRECTION[metric] == "higher"

    observed = _scenario_means(results_a, None) - _scenario_means(results_b, None)
    rng = np.random.default_rng(seed)
    diffs = np.empty(n_boot)
    for i in range(n_boot):
        diffs[i] = _scenario_means(results_a, rng) - _scenario_means(results_b, rng)
    lo, hi = np.percentile(diffs, [2.5, 97.5])
    competitor_better = diffs < 0 if higher_is_better else diffs > 0
    p_one = float(np.mean(competitor_better))
    p_two = 2.0 * min(p_one, 1.0 - p_one)
    return ComparisonReport(
        metric=metric,
        mean_difference=observed,
        ci_lower=float(lo),
        ci_upper=float(hi),
        p_value=p_one,
        p_two_sided=min(p_two, 1.0),
        n_boot=n_boot,
        estimate_within_ci=bool(lo <= observed <= hi),
    )


def _apply_parameter(config: TrialConfig, parameter: str, value) -> TrialConfig:
    if parameter == "accrual_interval":
        return replace(config, accrual_interval=float(value))
    if parameter == "n_patients":
        return replace(config, n_patients=int(value))
    if parameter == "gamma_assumed":
        return replace(config, design=replace(config.design, gamma_assumed=float(value)))
    if parameter == "t_max":
        return replace(config, design=replace(config.design, t_max=float(value)))
    if parameter == "prior":
        if not isinstance(value, GammaPrior):
            value = GammaPrior(*value)
        return replace(config, design=replace(config.design, rate_prior=value))
    raise ValueError(f"unknown sweep parameter {parameter!r}")


def run_sweep(spec: SweepSpec) -> list[SweepPoint]:
    """One run_batch per grid value with only the swept parameter changed."""
    points = []
    for value in spec.grid:
        config = _apply_parameter(spec.base_config, spec.parameter, value)
        oc = run_batch(spec.scenario, config, spec.replications, spec.base_seed)
        points.append(SweepPoint(spec.parameter, value, oc))
    return points


def coefficient_of_variation(values: Sequence[float]) -> float:
    """100 * sample standard deviation / mean; 0 for a single value."""
    if not values:
        raise ValueError("need at least one value")
    if len(values) == 1:
        warnings.warn("coefficient of variation of one value is 0 by convention")
        return 0.0
    mean = sum(values) / len(values)
    if mean == 0:
        raise ValueError("coefficient of variation undefined at zero mean")
    var = sum((v - mean) ** 2 for v in values) / (len(values) - 1)
    return 100.0 * math.sqrt(var) / mean
