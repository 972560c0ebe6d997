"""Tests for the design decision layer.

Oracles: hand-derived decision tables for 3+3 and the interval designs,
quadrature recomputation of mTPI unit probability masses, hand-computed
BOIN boundary values, closed-form Weibull weights for the record
builders, and scipy's isotonic regression for the PAVA fit.
"""

import math
from typing import NamedTuple, Optional

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate
from scipy.optimize import isotonic_regression

from awtite.crm import LikelihoodRecord, posterior_mean_tox
from awtite.designs import (
    Decision,
    DecisionKind,
    DesignConfig,
    DoseTally,
    BoinBoundaries,
    aw_records,
    boin_boundaries,
    boin_step,
    exposure_by_dose,
    final_mtd,
    follow_up_status,
    mtpi_step,
    next_dose,
    pava_isotonic,
    three_plus_three_step,
    tite_records,
)


class Pt(NamedTuple):
    dose: int
    enroll_time: float
    dlt_time: Optional[float] = None


class State(NamedTuple):
    patients: tuple
    n_doses: int = 5


def resolved_state(tallies):
    """State with every window resolved: tallies[k] = (treated, dlts)."""
    patients = []
    for k, (n, x) in enumerate(tallies, start=1):
        patients.extend(Pt(k, 0.0, 3.0) for _ in range(x))
        patients.extend(Pt(k, 0.0, None) for _ in range(n - x))
    return State(tuple(patients), len(tallies))


CFG = DesignConfig()


class TestFollowUpStatus:
    def test_pending_reports_raw_followup(self):
        assert follow_up_status(Pt(1, 2.0), clock=6.0, t_max=12.0) == ("pending", 4.0)

    def test_complete_caps_exposure_at_window(self):
        assert follow_up_status(Pt(1, 0.0), clock=30.0, t_max=12.0) == ("complete", 12.0)

    def test_dlt_reports_event_time(self):
        assert follow_up_status(Pt(1, 0.0, 5.0), clock=8.0, t_max=12.0) == ("dlt", 5.0)

    def test_dlt_at_window_boundary_counts(self):
        assert follow_up_status(Pt(1, 0.0, 12.0), clock=12.0, t_max=12.0) == ("dlt", 12.0)

    def test_dlt_beyond_window_never_observed(self):
        assert follow_up_status(Pt(1, 0.0, 12.5), clock=30.0, t_max=12.0) == (
            "complete", 12.0,
        )

    def test_future_dlt_still_pending_now(self):
        assert follow_up_status(Pt(1, 0.0, 9.0), clock=4.0, t_max=12.0) == ("pending", 4.0)

    def test_clock_before_enrollment_raises(self):
        with pytest.raises(ValueError):
            follow_up_status(Pt(1, 5.0), clock=4.0, t_max=12.0)


class TestDoseTally:
    def test_from_patients_counts_only_resolved(self):
        patients = (
            Pt(1, 0.0, None),   # complete at clock 12
            Pt(1, 10.0, 1.0),   # DLT inside its short follow-up
            Pt(2, 11.0, None),  # pending, excluded
        )
        tally = DoseTally.from_patients(patients, clock=12.0, t_max=12.0, n_doses=3)
        assert tally.treated == (2, 0, 0)
        assert tally.dlts == (1, 0, 0)

    def test_at_is_one_based(self):
        tally = DoseTally((3, 6), (0, 2))
        assert tally.at(2) == (6, 2)

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            DoseTally((3, 3), (0,))

    def test_dlts_bounded_by_treated(self):
        with pytest.raises(ValueError):
            DoseTally((3,), (4,))


class TestThreePlusThree:
    @pytest.mark.parametrize(
        "n, x, kind, dose",
        [
            (0, 0, DecisionKind.ASSIGN, 3),
            (3, 0, DecisionKind.ASSIGN, 4),
            (3, 1, DecisionKind.EXPAND, 3),
            (3, 2, DecisionKind.STOP, 2),
            (3, 3, DecisionKind.STOP, 2),
            (6, 0, DecisionKind.ASSIGN, 4),
            (6, 1, DecisionKind.ASSIGN, 4),
            (6, 2, DecisionKind.STOP, 2),
            (6, 4, DecisionKind.STOP, 2),
            (6, 6, DecisionKind.STOP, 2),
        ],
    )
    def test_decision_table_at_middle_dose(self, n, x, kind, dose):
        treated, dlts = [0] * 5, [0] * 5
        treated[2], dlts[2] = n, x
        decision = three_plus_three_step(DoseTally(tuple(treated), tuple(dlts)), 3)
        assert decision.kind is kind
        assert decision.dose == dose

    def test_clean_top_dose_completes(self):
        tally = DoseTally((3, 3, 3), (0, 0, 0))
        decision = three_plus_three_step(tally, 3)
        assert decision.kind is DecisionKind.COMPLETE
        assert decision.dose == 3

    def test_toxic_lowest_dose_stops_with_no_mtd(self):
        decision = three_plus_three_step(DoseTally((3,), (2,)), 1)
        assert decision.kind is DecisionKind.STOP
        assert decision.dose is None

    @pytest.mark.parametrize("n", [1, 2, 4, 5, 7])
    def test_partial_cohorts_rejected(self, n):
        with pytest.raises(ValueError):
            three_plus_three_step(DoseTally((n,), (0,)), 1)


def quad_interval_mass(n, x, lo, hi):
    """Posterior mass of (lo, hi) under Beta(1 + x, 1 + n - x), by quadrature."""
    a, b = 1 + x, 1 + n - x
    const = math.gamma(a + b) / (math.gamma(a) * math.gamma(b))
    pdf = lambda t: const * t ** (a - 1) * (1 - t) ** (b - 1)
    return integrate.quad(pdf, lo, hi, epsabs=1e-12)[0]


def quad_mtpi_decision(n, x, cfg, current, highest, n_doses):
    """Independent mTPI decision from quadrature unit probability masses."""
    lo, hi = cfg.target - cfg.eps_lo, cfg.target + cfg.eps_hi
    upm = {
        "escalate": quad_interval_mass(n, x, 0.0, lo) / lo,
        "stay": quad_interval_mass(n, x, lo, hi) / (hi - lo),
        "deescalate": quad_interval_mass(n, x, hi, 1.0) / (1.0 - hi),
    }
    safety = {"escalate": 0, "stay": 1, "deescalate": 2}
    best = max(upm.values())
    tied = [k for k, v in upm.items() if v >= best - 1e-9]
    verdict = max(tied, key=safety.get)
    exclude = quad_interval_mass(n, x, cfg.target, 1.0) > cfg.exclusion_threshold
    if exclude:
        return max(current - 1, 1), True
    if verdict == "deescalate":
        return max(current - 1, 1), False
    if verdict == "stay":
        return current, False
    return min(current + 1, highest + 1, n_doses), False


class TestMtpi:
    @pytest.mark.parametrize(
        "n, x, dose, exclude",
        [
            (3, 0, 4, False),
            (3, 1, 3, False),
            (3, 2, 2, False),
            (3, 3, 2, True),
            (6, 0, 4, False),
            (6, 1, 3, False),
            (6, 2, 3, False),
            (6, 3, 2, False),
            (6, 4, 2, True),
            (6, 5, 2, True),
            (6, 6, 2, True),
        ],
    )
    def test_decision_table_at_middle_dose(self, n, x, dose, exclude):
        decision = mtpi_step(n, x, CFG, current=3, highest_tried=3, n_doses=5)
        assert decision.kind is DecisionKind.ASSIGN
        assert decision.dose == dose
        assert decision.exclude is exclude

    def test_matches_quadrature_oracle_on_grid(self):
        for n in range(1, 11):
            for x in range(n + 1):
                want = quad_mtpi_decision(n, x, CFG, 3, 3, 5)
                got = mtpi_step(n, x, CFG, current=3, highest_tried=3, n_doses=5)
                assert (got.dose, got.exclude) == want, (n, x)

    def test_exact_upm_tie_breaks_toward_safety(self):
        # Beta(2, 2) at (2, 1): stay mass 0.112/0.1 and de-escalate mass
        # 0.784/0.7 are both exactly 1.12, so the safer verdict wins.
        decision = mtpi_step(2, 1, CFG, current=3, highest_tried=3, n_doses=5)
        assert decision.dose == 2

    def test_exclusion_uses_tail_beyond_target(self):
        # Beta(4, 1) at (3, 3): P(pi > 0.25) = 1 - 0.25^4 = 0.99609 > 0.95
        assert 1.0 - 0.25 ** 4 > CFG.exclusion_threshold
        assert mtpi_step(3, 3, CFG, 2, 2, 5).exclude
        # Beta(1, 4) at (3, 0): P(pi > 0.25) = 0.75^4 = 0.3164, no exclusion
        assert not mtpi_step(3, 0, CFG, 2, 2, 5).exclude

    def test_exclusion_at_lowest_dose_stops_trial(self):
        decision = mtpi_step(3, 3, CFG, current=1, highest_tried=1, n_doses=5)
        assert decision.kind is DecisionKind.STOP
        assert decision.dose is None
        assert decision.exclude

    def test_escalation_never_skips_untried_doses(self):
        decision = mtpi_step(3, 0, CFG, current=2, highest_tried=2, n_doses=5)
        assert decision.dose == 3

    def test_escalation_capped_at_top_dose(self):
        decision = mtpi_step(6, 0, CFG, current=5, highest_tried=5, n_doses=5)
        assert decision.dose == 5

    def test_needs_assessed_patients(self):
        with pytest.raises(ValueError):
            mtpi_step(0, 0, CFG, 1, 1, 5)


class TestBoin:
    def test_boundaries_at_quarter_target(self):
        b = boin_boundaries(0.25)
        assert b.lambda_e == pytest.approx(0.196801, abs=5e-7)
        assert b.lambda_d == pytest.approx(0.298392, abs=5e-7)

    def test_boundaries_at_thirty_percent_target(self):
        b = boin_boundaries(0.30)
        assert b.lambda_e == pytest.approx(0.236491, abs=5e-7)
        assert b.lambda_d == pytest.approx(0.358519, abs=5e-7)

    @given(st.floats(min_value=0.05, max_value=0.45))
    def test_boundaries_bracket_target(self, phi):
        b = boin_boundaries(phi)
        assert 0.0 < b.lambda_e < phi < b.lambda_d < 1.0

    @pytest.mark.parametrize("target", [0.0, 1.0, -0.1])
    def test_degenerate_target_rejected(self, target):
        with pytest.raises(ValueError):
            boin_boundaries(target)

    @pytest.mark.parametrize(
        "n, x, dose",
        [
            (3, 0, 4),   # 0.000 <= 0.1968
            (3, 1, 2),   # 0.333 >= 0.2984
            (6, 0, 4),
            (6, 1, 4),   # 0.167 <= 0.1968
            (6, 2, 2),   # 0.333 >= 0.2984
            (12, 3, 3),  # 0.250 in between
        ],
    )
    def test_decision_table_at_middle_dose(self, n, x, dose):
        decision = boin_step(n, x, boin_boundaries(0.25), 3, highest_tried=3, n_doses=5)
        assert decision.kind is DecisionKind.ASSIGN
        assert decision.dose == dose

    def test_deescalation_floors_at_lowest_dose(self):
        decision = boin_step(3, 2, boin_boundaries(0.25), 1, 1, 5)
        assert decision.dose == 1

    def test_escalation_capped_at_top_dose(self):
        decision = boin_step(3, 0, boin_boundaries(0.25), 5, 5, 5)
        assert decision.dose == 5

    def test_needs_assessed_patients(self):
        with pytest.raises(ValueError):
            boin_step(0, 0, boin_boundaries(0.25), 1, 1, 5)

    def test_inverted_boundaries_rejected(self):
        with pytest.raises(ValueError):
            BoinBoundaries(lambda_e=0.3, lambda_d=0.2, phi=0.25)


class TestRecordBuilders:
    def test_linear_weights_by_followup_fraction(self):
        state = State((Pt(1, 0.0, 6.0), Pt(1, 0.0, None), Pt(2, 8.0, None)))
        records = tite_records(state, clock=12.0, t_max=12.0)
        assert records[0] == LikelihoodRecord(1, 1.0, 0.0)
        assert records[1] == LikelihoodRecord(1, 0.0, 1.0)
        assert records[2].dose_index == 2
        assert records[2].event_weight == 0.0
        assert records[2].nonevent_weight == pytest.approx(4.0 / 12.0)

    def test_adaptive_weight_from_local_event(self):
        # One DLT at u = 6 gives rate 1/36; the pending patient at u = 6
        # has residual hazard (144 - 36)/36 = 3, so w = 1 - exp(-3).
        state = State((Pt(3, 0.0, 6.0), Pt(3, 6.0, None)))
        records = aw_records(state, clock=12.0, cfg=DesignConfig(design="aw-mle"))
        want = 1.0 - math.exp(-3.0)
        assert records[0] == LikelihoodRecord(3, 1.0, 0.0)
        assert records[1].event_weight == pytest.approx(want, abs=1e-12)
        assert records[1].nonevent_weight == pytest.approx(1.0 - want, abs=1e-12)

    def test_pooling_pending_exposure_dilutes_rate(self):
        # Counting the pending patient's own 6 weeks doubles the exposure:
        # rate 1/72, w = 1 - exp(-1.5).
        state = State((Pt(3, 0.0, 6.0), Pt(3, 6.0, None)))
        cfg = DesignConfig(design="aw-mle", exposure_pool="all")
        records = aw_records(state, clock=12.0, cfg=cfg)
        assert records[1].event_weight == pytest.approx(1.0 - math.exp(-1.5), abs=1e-12)

    def test_complement_only_scheme_drops_event_side(self):
        state = State((Pt(3, 0.0, 6.0), Pt(3, 6.0, None)))
        cfg = DesignConfig(design="aw-mle", aw_likelihood="complement-only")
        records = aw_records(state, clock=12.0, cfg=cfg)
        want = 1.0 - math.exp(-3.0)
        assert records[1].event_weight == 0.0
        assert records[1].nonevent_weight == pytest.approx(1.0 - want, abs=1e-12)

    def test_linear_cold_start_falls_back_before_first_event(self):
        state = State((Pt(1, 0.0, None), Pt(1, 8.0, None)))
        cfg = DesignConfig(design="aw-mle", cold_start="linear")
        assert aw_records(state, 12.0, cfg) == tite_records(state, 12.0, 12.0)

    def test_prior_cold_start_weights_from_rate_prior(self):
        # No events anywhere: Gamma(1, 1000) with zero pooled exposure gives
        # w = 1 - (1000 / (1000 + delta)) with delta = 144 - 16 = 128.
        state = State((Pt(1, 8.0, None),))
        records = aw_records(state, 12.0, DesignConfig(design="aw-mle"))
        assert records[0].event_weight == pytest.approx(128.0 / 1128.0, abs=1e-12)

    def test_dose_without_events_borrows_pooled_rate(self):
        # Dose 2 has no events, so its pending patient uses the trial-wide
        # summary (one event, 36 + 144 exposure after dose-1 completion).
        state = State((Pt(1, 0.0, 6.0), Pt(1, 0.0, None), Pt(2, 6.0, None)))
        records = aw_records(state, 12.0, DesignConfig(design="aw-mle"))
        rate = 1.0 / (36.0 + 144.0)
        want = 1.0 - math.exp(-rate * (144.0 - 36.0))
        assert records[2].event_weight == pytest.approx(want, abs=1e-12)

    @given(
        st.lists(
            st.tuples(
                st.integers(min_value=1, max_value=5),
                st.one_of(st.none(), st.floats(min_value=0.1, max_value=12.0)),
                st.floats(min_value=0.0, max_value=40.0),
            ),
            min_size=1,
            max_size=12,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_schemes_coincide_once_resolved(self, rows):
        patients = tuple(Pt(d, t, dlt) for d, dlt, t in rows)
        state = State(patients)
        # strictly past every window so rounding cannot leave anyone pending
        clock = max(p.enroll_time for p in patients) + 13.0
        for cfg in (
            DesignConfig(design="aw-mle"),
            DesignConfig(design="aw-bayes"),
            DesignConfig(design="aw-mle", cold_start="linear"),
        ):
            assert aw_records(state, clock, cfg) == tite_records(state, clock, 12.0)

    @given(
        st.floats(min_value=0.5, max_value=11.5),
        st.floats(min_value=0.5, max_value=11.5),
        st.sampled_from(["aw-mle", "aw-bayes"]),
    )
    @settings(max_examples=60, deadline=None)
    def test_pending_rows_are_convex(self, dlt_time, followup, design):
        state = State((Pt(2, 0.0, dlt_time), Pt(3, 12.0 - followup, None)))
        records = aw_records(state, 12.0, DesignConfig(design=design))
        pending = records[1]
        assert 0.0 <= pending.event_weight <= 1.0
        assert pending.event_weight + pending.nonevent_weight == pytest.approx(1.0)

    def test_resolved_pool_skips_pending_followup(self):
        state = State((Pt(1, 0.0, 6.0), Pt(1, 6.0, None)))
        resolved = exposure_by_dose(state, 12.0, DesignConfig(design="aw-mle"))
        pooled = exposure_by_dose(
            state, 12.0, DesignConfig(design="aw-mle", exposure_pool="all")
        )
        assert resolved[0].events == pooled[0].events == 1
        assert resolved[0].exposure == pytest.approx(36.0)
        assert pooled[0].exposure == pytest.approx(72.0)


class TestNextDose:
    def test_empty_trial_starts_at_lowest_dose(self):
        decision = next_dose("3+3", State(()), 0.0, CFG)
        assert decision.kind is DecisionKind.ASSIGN
        assert decision.dose == 1

    def test_unknown_design_rejected(self):
        with pytest.raises(ValueError):
            next_dose("crm9", State((Pt(1, 0.0),)), 12.0, CFG)

    @pytest.mark.parametrize("design", ["tite", "aw-mle", "aw-bayes"])
    def test_clean_first_cohort_escalates_one_step(self, design):
        state = State((Pt(1, 0.0), Pt(1, 0.0), Pt(1, 0.0)))
        decision = next_dose(design, state, 12.0, DesignConfig(design=design))
        assert decision.kind is DecisionKind.ASSIGN
        assert decision.dose == 2

    def test_interval_designs_consume_resolved_tallies(self):
        state = State((Pt(1, 0.0), Pt(1, 0.0), Pt(1, 0.0)))
        assert next_dose("boin", state, 12.0, CFG).dose == 2
        assert next_dose("mtpi", state, 12.0, CFG).dose == 2
        assert next_dose("3+3", state, 12.0, CFG).dose == 2

    def test_exclusion_ceiling_caps_reescalation(self):
        # Dose 2 was shut down (3/3 DLTs); a clean dose-1 cohort later must
        # not climb back above the ceiling.
        patients = (
            Pt(2, 0.0, 1.0), Pt(2, 0.0, 2.0), Pt(2, 0.0, 3.0),
            Pt(1, 12.0), Pt(1, 12.0), Pt(1, 12.0),
        )
        decision = next_dose("mtpi", State(patients), 24.0, CFG)
        assert decision.kind is DecisionKind.ASSIGN
        assert decision.dose == 1

    def test_toxic_lowest_dose_stops_mtpi_trial(self):
        patients = (Pt(1, 0.0, 1.0), Pt(1, 0.0, 2.0), Pt(1, 0.0, 3.0))
        decision = next_dose("mtpi", State(patients), 12.0, CFG)
        assert decision.kind is DecisionKind.STOP
        assert decision.dose is None


class TestPavaIsotonic:
    def test_monotone_input_unchanged(self):
        assert pava_isotonic([0.0, 0.1, 0.3], [3, 3, 3]) == [0.0, 0.1, 0.3]

    def test_violators_pool_by_weight(self):
        # (0.4 * 3 + 0.1 * 6) / 9 = 0.2
        fit = pava_isotonic([0.4, 0.1, 0.3], [3, 6, 2])
        assert fit == pytest.approx([0.2, 0.2, 0.3])

    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=0.0, max_value=1.0),
                st.integers(min_value=1, max_value=9),
            ),
            min_size=1,
            max_size=8,
        )
    )
    @settings(max_examples=120, deadline=None)
    def test_matches_scipy_oracle(self, rows):
        rates = [r for r, _ in rows]
        weights = [w for _, w in rows]
        fit = pava_isotonic(rates, weights)
        want = isotonic_regression(np.asarray(rates), weights=np.asarray(weights, float))
        assert fit == pytest.approx(list(want.x), abs=1e-12)
        assert all(a <= b + 1e-12 for a, b in zip(fit, fit[1:]))
        assert sum(f * w for f, w in zip(fit, weights)) == pytest.approx(
            sum(r * w for r, w in zip(rates, weights))
        )


class TestFinalMtd:
    def test_empty_trial_has_no_mtd(self):
        assert final_mtd("3+3", State(()), CFG) is None

    def test_three_plus_three_walks_passing_doses(self):
        #  (3,0) pass, (6,1) pass, (3,2) fail -> dose 2
        state = resolved_state([(3, 0), (6, 1), (3, 2), (0, 0), (0, 0)])
        assert final_mtd("3+3", State(state.patients, 5), CFG) == 2

    def test_three_plus_three_unfinished_expansion_keeps_last_pass(self):
        # budget ran out mid-expansion at dose 3: fall back to dose 2
        state = resolved_state([(3, 0), (3, 0), (3, 1), (0, 0), (0, 0)])
        assert final_mtd("3+3", State(state.patients, 5), CFG) == 2

    def test_three_plus_three_toxic_start_yields_none(self):
        state = resolved_state([(3, 2)])
        assert final_mtd("3+3", State(state.patients, 5), CFG) is None

    def test_isotonic_tie_below_target_takes_higher_dose(self):
        # rates (0, 1/6, 1/3) are isotonic; doses 2 and 3 are equidistant
        # from 0.25 and the below-target dose wins.
        state = resolved_state([(3, 0), (6, 1), (6, 2)])
        assert final_mtd("boin", State(state.patients, 3), CFG) == 2

    def test_interval_violators_pool_before_selection(self):
        # rates (1/3, 0): pooled to 1/6 across both, tie -> dose 2
        state = resolved_state([(3, 1), (3, 0)])
        assert final_mtd("boin", State(state.patients, 2), CFG) == 2

    def test_exclusion_ceiling_can_empty_the_candidate_set(self):
        # 3/4 DLTs at dose 1: P(pi > 0.25 | Beta(4, 2)) = 0.984 > 0.95,
        # so mTPI excludes every dose while BOIN still recommends one.
        state = resolved_state([(4, 3), (6, 4)])
        assert final_mtd("mtpi", State(state.patients, 2), CFG) is None
        assert final_mtd("boin", State(state.patients, 2), CFG) == 1

    @pytest.mark.parametrize("design", ["tite", "aw-mle", "aw-bayes"])
    def test_model_based_selects_posterior_nearest_target(self, design):
        state = resolved_state([(3, 0), (3, 1), (2, 0), (0, 0), (0, 0)])
        state = State(state.patients, 5)
        cfg = DesignConfig(design=design)
        records = tite_records(state, 12.0, cfg.t_max)
        summary = posterior_mean_tox(
            records, cfg.skeleton, cfg.alpha_prior, cfg.quadrature
        )
        tried = sorted({p.dose for p in state.patients})
        want = min(tried, key=lambda k: (abs(summary.mean_tox[k - 1] - cfg.target), k))
        assert final_mtd(design, state, cfg) == want

    def test_model_based_never_recommends_untried_dose(self):
        state = resolved_state([(3, 0), (3, 0), (0, 0), (0, 0), (0, 0)])
        state = State(state.patients, 5)
        for design in ("tite", "aw-mle", "aw-bayes"):
            assert final_mtd(design, state, DesignConfig(design=design)) in (1, 2)


class TestConfigAndDecisions:
    def test_assignment_needs_valid_dose(self):
        with pytest.raises(ValueError):
            Decision(DecisionKind.ASSIGN, None)
        with pytest.raises(ValueError):
            Decision(DecisionKind.EXPAND, 0)

    def test_stop_may_carry_no_dose(self):
        assert Decision(DecisionKind.STOP, None).dose is None

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"design": "crm9"},
            {"target": 0.0},
            {"target": 1.0},
            {"cohort_size": 0},
            {"estimator": "map"},
            {"aw_likelihood": "full"},
            {"exposure_pool": "none"},
            {"cold_start": "warm"},
        ],
    )
    def test_bad_config_rejected(self, kwargs):
        with pytest.raises(ValueError):
            DesignConfig(**kwargs)

    def test_estimator_auto_follows_design(self):
        assert DesignConfig(design="aw-mle").effective_estimator == "plugin"
        assert DesignConfig(design="aw-bayes").effective_estimator == "bayes"
        assert DesignConfig(design="tite").effective_estimator == "plugin"

    def test_estimator_override_wins(self):
        cfg = DesignConfig(design="aw-mle", estimator="bayes")
        assert cfg.effective_estimator == "bayes"
