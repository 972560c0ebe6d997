/** Shapes returned by the conduct HTTP API; the server is authoritative. */

export interface ApiErrorBody {
  code: string;
  message: string;
}

export interface DesignSection {
  design: string;
  target: number;
  t_max: number;
  gamma_assumed: number;
  skeleton: readonly number[];
  [key: string]: unknown;
}

export interface TrialSummary {
  trial_id: string;
  design: string;
  created_at: string;
  n_patients: number;
  n_events: number;
}

export interface PatientRow {
  patient_id: string;
  dose: number;
  enrolled_at: string;
  dlt_at: string | null;
  completed_at: string | null;
  followup: number;
}

export interface EventRecord {
  seq: number;
  kind: string;
  timestamp: string;
  [key: string]: unknown;
}

export interface TrialState {
  trial_id: string;
  design: DesignSection;
  time_unit: string;
  created_at: string;
  patients: readonly PatientRow[];
  events: readonly EventRecord[];
}

export interface WeightRow {
  patient_id: string;
  dose: number;
  followup: number;
  status: string;
  event_coefficient: number;
  nonevent_coefficient: number;
}

export interface SafetyEcho {
  no_skip: boolean;
  min_before_deescalation: number;
  deescalation_scope: string;
  highest_tried: number;
}

export interface Recommendation {
  trial_id: string;
  as_of: string;
  clock: number;
  design: string;
  recommended_dose: number | null;
  decision: string;
  rationale: string;
  posterior_mean_tox: readonly number[];
  target: number;
  weights: readonly WeightRow[];
  safety: SafetyEcho;
  hypothetical?: boolean;
}

export interface EventAck {
  seq: number;
  duplicate: boolean;
}

export interface TrialEvent {
  kind: string;
  timestamp: string;
  patient_id?: string;
  dose?: number;
  text?: string;
  dedupe_token?: string;
}
