"""One JSON configuration dialect for simulation, sweeps, and conduct.

A config file is a JSON object with optional sections ``trial``,
``design``, ``scenarios``, and ``run``; anything omitted falls back to
the package defaults, so ``{}`` is a complete valid config.  Errors
carry the offending key path (or the JSON parser's line and column) so
callers can report actionable messages.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Union

from .crm import AlphaPrior, QuadratureSpec, SafetyRules, Skeleton
from .designs import DESIGN_IDS, DesignConfig
from .sim import SCENARIOS, Scenario, TrialConfig
from .timing import GammaPrior


class ConfigError(ValueError):
    """Invalid configuration content, with a key-path or line reference."""


@dataclass(frozen=True)
class RunSettings:
    """Batch execution settings that sit outside any single trial."""

    replications: int = 2000
    base_seed: int = 20260815
    designs: tuple[str, ...] = DESIGN_IDS
    scenarios: tuple[str, ...] = ("standard", "steep", "flat")
    trial_logs: bool = False

    def __post_init__(self) -> None:
        if self.replications < 1:
            raise ConfigError("run.replications must be at least 1")
        for d in self.designs:
            if d not in DESIGN_IDS:
                raise ConfigError(f"run.designs: unknown design {d!r}")
        if not self.designs:
            raise ConfigError("run.designs must be nonempty")
        if not self.scenarios:
            raise ConfigError("run.scenarios must be nonempty")


@dataclass(frozen=True)
class WorkbenchConfig:
    """Fully resolved configuration: trial, scenario table, run settings."""

    trial: TrialConfig = field(default_factory=TrialConfig)
    scenarios: Mapping[str, Scenario] = field(default_factory=lambda: dict(SCENARIOS))
    run: RunSettings = field(default_factory=RunSettings)

    def __post_init__(self) -> None:
        for name in self.run.scenarios:
            if name not in self.scenarios:
                raise ConfigError(f"run.scenarios: unknown scenario {name!r}")


def default_config_dict() -> dict:
    """The complete default configuration as a JSON-ready dict."""
    return config_to_dict(WorkbenchConfig())


def design_to_dict(design: DesignConfig) -> dict:
    return {
        "design": design.design,
        "target": design.target,
        "t_max": design.t_max,
        "gamma_assumed": design.gamma_assumed,
        "estimator": design.estimator,
        "rate_prior": {"a": design.rate_prior.a, "b": design.rate_prior.b},
        "aw_likelihood": design.aw_likelihood,
        "exposure_pool": design.exposure_pool,
        "cold_start": design.cold_start,
        "cohort_size": design.cohort_size,
        "eps_lo": design.eps_lo,
        "eps_hi": design.eps_hi,
        "exclusion_threshold": design.exclusion_threshold,
        "skeleton": list(design.skeleton.probs),
        "alpha_prior": {
            "mean": design.alpha_prior.mean,
            "sd": design.alpha_prior.sd,
        },
        "quadrature": {
            "points": design.quadrature.points,
            "span_sd": design.quadrature.span_sd,
        },
        "safety": {
            "no_skip": design.safety.no_skip,
            "min_before_deescalation": design.safety.min_before_deescalation,
            "deescalation_scope": design.safety.deescalation_scope,
        },
    }


def config_to_dict(config: WorkbenchConfig) -> dict:
    trial = config.trial
    return {
        "trial": {
            "n_patients": trial.n_patients,
            "accrual_interval": trial.accrual_interval,
            "seed": trial.seed,
        },
        "design": design_to_dict(trial.design),
        "scenarios": {
            name: {
                "true_probs": list(s.true_probs),
                "true_mtd": s.true_mtd,
                "gamma_true": s.gamma_true,
            }
            for name, s in config.scenarios.items()
        },
        "run": {
            "replications": config.run.replications,
            "base_seed": config.run.base_seed,
            "designs": list(config.run.designs),
            "scenarios": list(config.run.scenarios),
            "trial_logs": config.run.trial_logs,
        },
    }


def _section(raw: Mapping, key: str) -> Mapping:
    value = raw.get(key, {})
    if not isinstance(value, Mapping):
        raise ConfigError(f"{key}: expected a JSON object, got {type(value).__name__}")
    return value


def _take(section: Mapping, path: str, defaults: Mapping) -> dict:
    """Merge one section over its defaults, rejecting unknown keys."""
    merged = dict(defaults)
    for key, value in section.items():
        if key not in defaults:
            raise ConfigError(f"{path}.{key}: unknown key")
        merged[key] = value
    return merged


def design_from_dict(section: Mapping) -> DesignConfig:
    defaults = default_config_dict()["design"]
    merged = _take(section, "design", defaults)
    prior = _take(
        _as_mapping(merged["rate_prior"], "design.rate_prior"),
        "design.rate_prior", defaults["rate_prior"],
    )
    alpha = _take(
        _as_mapping(merged["alpha_prior"], "design.alpha_prior"),
        "design.alpha_prior", defaults["alpha_prior"],
    )
    quad = _take(
        _as_mapping(merged["quadrature"], "design.quadrature"),
        "design.quadrature", defaults["quadrature"],
    )
    safety = _take(
        _as_mapping(merged["safety"], "design.safety"),
        "design.safety", defaults["safety"],
    )
    try:
        return DesignConfig(
            design=merged["design"],
            target=float(merged["target"]),
            t_max=float(merged["t_max"]),
            gamma_assumed=float(merged["gamma_assumed"]),
            estimator=merged["estimator"],
            rate_prior=GammaPrior(float(prior["a"]), float(prior["b"])),
            aw_likelihood=merged["aw_likelihood"],
            exposure_pool=merged["exposure_pool"],
            cold_start=merged["cold_start"],
            cohort_size=int(merged["cohort_size"]),
            eps_lo=float(merged["eps_lo"]),
            eps_hi=float(merged["eps_hi"]),
            exclusion_threshold=float(merged["exclusion_threshold"]),
            skeleton=Skeleton(tuple(float(p) for p in merged["skeleton"])),
            alpha_prior=AlphaPrior(float(alpha["mean"]), float(alpha["sd"])),
            quadrature=QuadratureSpec(int(quad["points"]), float(quad["span_sd"])),
            safety=SafetyRules(
                no_skip=bool(safety["no_skip"]),
                min_before_deescalation=int(safety["min_before_deescalation"]),
                deescalation_scope=safety["deescalation_scope"],
            ),
        )
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"design: {exc}") from exc


def _scenarios_from_dict(section: Mapping) -> dict[str, Scenario]:
    if not section:
        return dict(SCENARIOS)
    scenarios = {}
    for name, body in section.items():
        body = _as_mapping(body, f"scenarios.{name}")
        merged = _take(
            body, f"scenarios.{name}",
            {"true_probs": None, "true_mtd": None, "gamma_true": 2.0},
        )
        if merged["true_probs"] is None or merged["true_mtd"] is None:
            raise ConfigError(
                f"scenarios.{name}: true_probs and true_mtd are required"
            )
        try:
            scenarios[name] = Scenario(
                name=name,
                true_probs=tuple(float(p) for p in merged["true_probs"]),
                true_mtd=int(merged["true_mtd"]),
                gamma_true=float(merged["gamma_true"]),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"scenarios.{name}: {exc}") from exc
    return scenarios


def _as_mapping(value, path: str) -> Mapping:
    if not isinstance(value, Mapping):
        raise ConfigError(f"{path}: expected a JSON object")
    return value


def parse_config(raw: Mapping) -> WorkbenchConfig:
    """Resolve a parsed JSON object against the package defaults."""
    if not isinstance(raw, Mapping):
        raise ConfigError("top level: expected a JSON object")
    known = {"trial", "design", "scenarios", "run"}
    for key in raw:
        if key not in known:
            raise ConfigError(f"{key}: unknown top-level section")
    defaults = default_config_dict()
    trial_section = _take(_section(raw, "trial"), "trial", defaults["trial"])
    design = design_from_dict(_section(raw, "design"))
    scenarios = _scenarios_from_dict(_section(raw, "scenarios"))
    run_section = _take(_section(raw, "run"), "run", defaults["run"])
    try:
        trial = TrialConfig(
            n_patients=int(trial_section["n_patients"]),
            accrual_interval=float(trial_section["accrual_interval"]),
            design=design,
            seed=int(trial_section["seed"]),
        )
        run = RunSettings(
            replications=int(run_section["replications"]),
            base_seed=int(run_section["base_seed"]),
            designs=tuple(run_section["designs"]),
            scenarios=tuple(run_section["scenarios"]),
            trial_logs=bool(run_section["trial_logs"]),
        )
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return WorkbenchConfig(trial=trial, scenarios=scenarios, run=run)


def load_config(path: Union[str, Path, None]) -> WorkbenchConfig:
    """Load a config file; None means pure defaults."""
    if path is None:
        return WorkbenchConfig()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    try:
        return parse_config(raw)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
