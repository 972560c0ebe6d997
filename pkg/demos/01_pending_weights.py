"""How a pending patient's DLT weight evolves under the delay model.

A patient followed for u weeks without a DLT still might have one before
the window t_max closes.  The weight is the probability of that residual
event, computed either from the rate MLE or from a conjugate Gamma
posterior.  Run: python3 demos/01_pending_weights.py
"""

import numpy as np

from awtite.timing import (
    ExposureSummary,
    GammaPrior,
    WeightQuery,
    adaptive_weight_bayes,
    adaptive_weight_plugin,
    calibrate_rate,
    mle_rate,
    survival,
)

T_MAX, GAMMA = 12.0, 2.0

# calibrate a rate so that 20% of patients have a DLT within 12 weeks
rate = calibrate_rate(0.20, T_MAX, GAMMA)
print(f"rate with 20% DLT probability by week 12: {rate:.6f}")
print(f"check: 1 - S(12) = {1 - survival(T_MAX, rate, GAMMA):.3f}")

# the weight of a pending patient falls as clean follow-up accumulates
print("\nfollow-up (weeks)  plug-in weight")
for u in (0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0):
    w = adaptive_weight_plugin(rate, WeightQuery(u, T_MAX, GAMMA))
    bar = "#" * int(round(40 * w))
    print(f"{u:17.0f}  {w:.4f} {bar}")

# with trial data the rate is estimated, not assumed.  One DLT at week 6
# contributes exposure 6**2 = 36, so the MLE is 1/36.
summary = ExposureSummary.from_followup([6.0], [1], GAMMA)
estimate = mle_rate(summary)
print(f"\nMLE after one DLT at week 6: {estimate.rate:.6f} (= 1/36)")

# a second patient enrolled 6 weeks ago gets the residual-window weight
query = WeightQuery(6.0, T_MAX, GAMMA)
w_mle = adaptive_weight_plugin(estimate.rate, query)
print(f"pending patient at u=6: w = 1 - exp(-(144-36)/36) = {w_mle:.6f}")

# the Bayes version averages over rate uncertainty instead of plugging in
prior = GammaPrior(1.0, 1000.0)
w_bayes = adaptive_weight_bayes(prior, summary, query)
print(f"same patient, Gamma(1,1000) posterior predictive: w = {w_bayes:.6f}")

# with no events at all the MLE is undefined but the prior still answers
w_cold = adaptive_weight_bayes(prior, ExposureSummary(0, 0.0), WeightQuery(4.0, T_MAX, GAMMA))
print(f"cold start, no events anywhere, u=4: w = {w_cold:.6f} (= 128/1128)")

# for small rate*delta the weight is nearly linear; the expansion comes
# with a quadratic error cap, handy for sanity-checking small weights
from awtite.timing import taylor_weight_bound

slow = 0.001  # the prior mean rate
linear, cap = taylor_weight_bound(slow, query)
w_slow = adaptive_weight_plugin(slow, query)
print(f"\nrate {slow}: linear expansion {linear:.4f}, true {w_slow:.4f}, "
      f"error {linear - w_slow:.5f} <= cap {cap:.5f}")
