// Recorded responses from the live conduct API; regenerate with
// the commands in the repo README if the API shape changes.
export const fixtures = {
  "freshRecommendation": {
    "trial_id": "fix-a",
    "as_of": "2026-01-05T00:00:00+00:00",
    "clock": 0.0,
    "design": "aw-mle",
    "recommended_dose": 1,
    "decision": "assign",
    "rationale": "start at the lowest dose",
    "posterior_mean_tox": [
      0.17952113770193348,
      0.22364443119052918,
      0.27903910541034177,
      0.3521915873723959,
      0.44274129527882977
    ],
    "target": 0.25,
    "weights": [],
    "safety": {
      "no_skip": true,
      "min_before_deescalation": 3,
      "deescalation_scope": "trial",
      "highest_tried": 0
    }
  },
  "freshState": {
    "trial_id": "fix-a",
    "design": {
      "design": "aw-mle",
      "target": 0.25,
      "t_max": 12.0,
      "gamma_assumed": 2.0,
      "estimator": "auto",
      "rate_prior": {
        "a": 1.0,
        "b": 1000.0
      },
      "aw_likelihood": "fractional",
      "exposure_pool": "resolved",
      "cold_start": "prior",
      "cohort_size": 3,
      "eps_lo": 0.05,
      "eps_hi": 0.05,
      "exclusion_threshold": 0.95,
      "skeleton": [
        0.05,
        0.1,
        0.18,
        0.3,
        0.45
      ],
      "alpha_prior": {
        "mean": 0.0,
        "sd": 1.34
      },
      "quadrature": {
        "points": 401,
        "span_sd": 8.0
      },
      "safety": {
        "no_skip": true,
        "min_before_deescalation": 3,
        "deescalation_scope": "trial"
      }
    },
    "time_unit": "weeks",
    "created_at": "2026-01-05T00:00:00+00:00",
    "patients": [],
    "events": [
      {
        "seq": 1,
        "kind": "trial-created",
        "timestamp": "2026-01-05T00:00:00+00:00",
        "recorded_at": "2026-08-15T20:24:47.557880+00:00",
        "design": {
          "design": "aw-mle",
          "target": 0.25,
          "t_max": 12.0,
          "gamma_assumed": 2.0,
          "estimator": "auto",
          "rate_prior": {
            "a": 1.0,
            "b": 1000.0
          },
          "aw_likelihood": "fractional",
          "exposure_pool": "resolved",
          "cold_start": "prior",
          "cohort_size": 3,
          "eps_lo": 0.05,
          "eps_hi": 0.05,
          "exclusion_threshold": 0.95,
          "skeleton": [
            0.05,
            0.1,
            0.18,
            0.3,
            0.45
          ],
          "alpha_prior": {
            "mean": 0.0,
            "sd": 1.34
          },
          "quadrature": {
            "points": 401,
            "span_sd": 8.0
          },
          "safety": {
            "no_skip": true,
            "min_before_deescalation": 3,
            "deescalation_scope": "trial"
          }
        },
        "time_unit": "weeks"
      }
    ]
  },
  "recommendation": {
    "trial_id": "fix-a",
    "as_of": "2026-03-30T00:00:00+00:00",
    "clock": 12.0,
    "design": "aw-mle",
    "recommended_dose": 1,
    "decision": "assign",
    "rationale": "posterior mean tox 0.398",
    "posterior_mean_tox": [
      0.39810439519946866,
      0.4777842738203582,
      0.5644552976060537,
      0.6593808708081328,
      0.7520832083348508
    ],
    "target": 0.25,
    "weights": [
      {
        "patient_id": "P3",
        "dose": 1,
        "followup": 12.0,
        "status": "complete",
        "event_coefficient": 0.0,
        "nonevent_coefficient": 1.0
      },
      {
        "patient_id": "P1",
        "dose": 3,
        "followup": 6.0,
        "status": "dlt",
        "event_coefficient": 1.0,
        "nonevent_coefficient": 0.0
      },
      {
        "patient_id": "P2",
        "dose": 3,
        "followup": 6.0,
        "status": "pending",
        "event_coefficient": 0.950212931632136,
        "nonevent_coefficient": 0.04978706836786395
      }
    ],
    "safety": {
      "no_skip": true,
      "min_before_deescalation": 3,
      "deescalation_scope": "trial",
      "highest_tried": 3
    }
  },
  "state": {
    "trial_id": "fix-a",
    "design": {
      "design": "aw-mle",
      "target": 0.25,
      "t_max": 12.0,
      "gamma_assumed": 2.0,
      "estimator": "auto",
      "rate_prior": {
        "a": 1.0,
        "b": 1000.0
      },
      "aw_likelihood": "fractional",
      "exposure_pool": "resolved",
      "cold_start": "prior",
      "cohort_size": 3,
      "eps_lo": 0.05,
      "eps_hi": 0.05,
      "exclusion_threshold": 0.95,
      "skeleton": [
        0.05,
        0.1,
        0.18,
        0.3,
        0.45
      ],
      "alpha_prior": {
        "mean": 0.0,
        "sd": 1.34
      },
      "quadrature": {
        "points": 401,
        "span_sd": 8.0
      },
      "safety": {
        "no_skip": true,
        "min_before_deescalation": 3,
        "deescalation_scope": "trial"
      }
    },
    "time_unit": "weeks",
    "created_at": "2026-01-05T00:00:00+00:00",
    "patients": [
      {
        "patient_id": "P3",
        "dose": 1,
        "enrolled_at": "2026-01-05T00:00:00+00:00",
        "dlt_at": null,
        "completed_at": null,
        "followup": 12.0
      },
      {
        "patient_id": "P1",
        "dose": 3,
        "enrolled_at": "2026-01-05T00:00:00+00:00",
        "dlt_at": "2026-02-16T00:00:00+00:00",
        "completed_at": null,
        "followup": 12.0
      },
      {
        "patient_id": "P2",
        "dose": 3,
        "enrolled_at": "2026-02-16T00:00:00+00:00",
        "dlt_at": null,
        "completed_at": null,
        "followup": 12.0
      }
    ],
    "events": [
      {
        "seq": 1,
        "kind": "trial-created",
        "timestamp": "2026-01-05T00:00:00+00:00",
        "recorded_at": "2026-08-15T20:24:47.557880+00:00",
        "design": {
          "design": "aw-mle",
          "target": 0.25,
          "t_max": 12.0,
          "gamma_assumed": 2.0,
          "estimator": "auto",
          "rate_prior": {
            "a": 1.0,
            "b": 1000.0
          },
          "aw_likelihood": "fractional",
          "exposure_pool": "resolved",
          "cold_start": "prior",
          "cohort_size": 3,
          "eps_lo": 0.05,
          "eps_hi": 0.05,
          "exclusion_threshold": 0.95,
          "skeleton": [
            0.05,
            0.1,
            0.18,
            0.3,
            0.45
          ],
          "alpha_prior": {
            "mean": 0.0,
            "sd": 1.34
          },
          "quadrature": {
            "points": 401,
            "span_sd": 8.0
          },
          "safety": {
            "no_skip": true,
            "min_before_deescalation": 3,
            "deescalation_scope": "trial"
          }
        },
        "time_unit": "weeks"
      },
      {
        "seq": 2,
        "kind": "patient-enrolled",
        "timestamp": "2026-01-05T00:00:00+00:00",
        "recorded_at": "2026-08-15T20:24:47.565968+00:00",
        "patient_id": "P3",
        "dose": 1
      },
      {
        "seq": 3,
        "kind": "patient-enrolled",
        "timestamp": "2026-01-05T00:00:00+00:00",
        "recorded_at": "2026-08-15T20:24:47.568235+00:00",
        "patient_id": "P1",
        "dose": 3
      },
      {
        "seq": 4,
        "kind": "dlt-observed",
        "timestamp": "2026-02-16T00:00:00+00:00",
        "recorded_at": "2026-08-15T20:24:47.570159+00:00",
        "patient_id": "P1"
      },
      {
        "seq": 5,
        "kind": "patient-enrolled",
        "timestamp": "2026-02-16T00:00:00+00:00",
        "recorded_at": "2026-08-15T20:24:47.572062+00:00",
        "patient_id": "P2",
        "dose": 3
      }
    ]
  },
  "listing": [
    {
      "trial_id": "fix-a",
      "design": "aw-mle",
      "created_at": "2026-01-05T00:00:00+00:00",
      "n_patients": 3,
      "n_events": 5
    }
  ],
  "whatIf": {
    "trial_id": "fix-a",
    "as_of": "2026-03-30T00:00:00+00:00",
    "clock": 12.0,
    "design": "aw-mle",
    "recommended_dose": 1,
    "decision": "assign",
    "rationale": "posterior mean tox 0.408",
    "posterior_mean_tox": [
      0.4082284365114008,
      0.487706488679986,
      0.5736935051901151,
      0.667378197379166,
      0.7584221364984562
    ],
    "target": 0.25,
    "weights": [
      {
        "patient_id": "P3",
        "dose": 1,
        "followup": 12.0,
        "status": "complete",
        "event_coefficient": 0.0,
        "nonevent_coefficient": 1.0
      },
      {
        "patient_id": "P1",
        "dose": 3,
        "followup": 6.0,
        "status": "dlt",
        "event_coefficient": 1.0,
        "nonevent_coefficient": 0.0
      },
      {
        "patient_id": "P2",
        "dose": 3,
        "followup": 2.0,
        "status": "dlt",
        "event_coefficient": 1.0,
        "nonevent_coefficient": 0.0
      }
    ],
    "safety": {
      "no_skip": true,
      "min_before_deescalation": 3,
      "deescalation_scope": "trial",
      "highest_tried": 3
    },
    "hypothetical": true
  },
  "invalidDose": {
    "code": "conflict",
    "message": "patient 'P1' is already enrolled"
  },
  "ack": {
    "seq": 6,
    "duplicate": false
  },
  "duplicateAck": {
    "seq": 6,
    "duplicate": true
  }
} as const;
