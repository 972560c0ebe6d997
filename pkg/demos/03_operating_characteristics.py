"""Operating characteristics across designs, with a bootstrap contrast.

Replicates many trials per design x scenario cell and summarizes the
chance of picking the true MTD, the share of patients dosed above it,
and mean DLT counts.  200 replications keep this quick; raise R for
publication-grade Monte Carlo error (the command line tool runs 2000).
Run: python3 demos/03_operating_characteristics.py
"""

from awtite.analysis import bootstrap_compare
from awtite.sim import SCENARIOS, config_for, simulate_trials, compute_metrics

R, BASE_SEED = 200, 20260815
designs = ("tite", "aw-mle", "aw-bayes", "mtpi", "boin", "3+3")

results = {}
print(f"{'design':>8} {'scenario':>9} {'P(correct)':>11} {'frac>MTD':>9} {'DLTs':>6}")
for design in designs:
    config = config_for(design)
    for name, scenario in SCENARIOS.items():
        cell = simulate_trials(scenario, config, R, base_seed=BASE_SEED)
        results[design, name] = cell
        oc = compute_metrics(cell, scenario)
        print(f"{design:>8} {name:>9} "
              f"{oc.p_correct_mtd:>8.3f} ({oc.se_p_correct:.3f}) "
              f"{oc.mean_fraction_above:>6.3f} {oc.mean_dlts:>6.2f}")

# is the adaptive-weight design actually safer than the linear-weight
# one?  Pool the per-trial overdose fractions across scenarios and
# bootstrap the difference, resampling within each scenario stratum.
groups = [
    {name: [r.fraction_above_mtd for r in results[design, name]]
     for name in SCENARIOS}
    for design in ("aw-mle", "tite")
]
report = bootstrap_compare(groups[0], groups[1], metric="frac_above",
                           n_boot=2000, seed=BASE_SEED)
print(f"\nfrac>MTD, aw-mle minus tite: {report.mean_difference:+.3f} "
      f"CI95 [{report.ci_lower:+.3f}, {report.ci_upper:+.3f}] "
      f"p(two-sided) {report.p_two_sided:.4f}")
print("negative difference with a CI excluding zero: fewer patients "
      "treated above the true MTD, at matched accuracy")
