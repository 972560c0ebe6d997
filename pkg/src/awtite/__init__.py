"""Adaptive-weight TITE-CRM dose-finding workbench.

Implements the adaptive-weight time-to-event CRM (plug-in MLE and
conjugate-Gamma variants) next to the classic TITE-CRM and the 3+3,
mTPI, and BOIN benchmark designs, plus a discrete-event trial
simulator, bootstrap comparison tooling, and an event-sourced service
for conducting a live trial.
"""

from awtite.timing import (
    ExposureSummary,
    GammaPrior,
    RateEstimate,
    WeightQuery,
    adaptive_weight_bayes,
    adaptive_weight_plugin,
    calibrate_rate,
    mle_rate,
    sample_dlt_time,
    survival,
    taylor_weight_bound,
)
from awtite.crm import (
    AlphaPrior,
    LikelihoodRecord,
    PosteriorSummary,
    QuadratureSpec,
    SafetyRules,
    Skeleton,
    dose_tox,
    posterior_mean_tox,
    select_dose,
    weighted_loglik,
)
from awtite.designs import (
    Decision,
    DecisionKind,
    DesignConfig,
    DoseTally,
    aw_records,
    boin_boundaries,
    boin_step,
    final_mtd,
    mtpi_step,
    next_dose,
    three_plus_three_step,
    tite_records,
)
from awtite.sim import (
    OperatingCharacteristics,
    Patient,
    Scenario,
    TrialConfig,
    TrialResult,
    TrialState,
    compute_metrics,
    run_batch,
    run_trial,
    simulate_trials,
)
from awtite.analysis import (
    ComparisonReport,
    SweepSpec,
    bootstrap_compare,
    coefficient_of_variation,
    run_sweep,
)

__version__ = "0.1.0"
