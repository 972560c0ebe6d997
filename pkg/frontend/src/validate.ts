/** Client-side mirror of the server's trial-setup validation.
 *
 * The server stays authoritative; this only catches obvious mistakes
 * before a round trip and never relaxes a server rule.
 */

export interface SetupForm {
  design: string;
  target: number;
  t_max: number;
  gamma: number;
  skeleton: readonly number[];
}

export const MODEL_DESIGNS = ["aw-mle", "aw-bayes", "tite"] as const;

export const SETUP_DEFAULTS: SetupForm = {
  design: "aw-mle",
  target: 0.25,
  t_max: 12,
  gamma: 2.0,
  skeleton: [0.05, 0.1, 0.18, 0.3, 0.45],
};

/** "0.05, 0.10, 0.18" -> [0.05, 0.1, 0.18]; null when not numeric. */
export function parseSkeleton(text: string): number[] | null {
  const parts = text.split(",").map((part) => part.trim()).filter(Boolean);
  if (parts.length === 0) return null;
  const values = parts.map(Number);
  return values.every(Number.isFinite) ? values : null;
}

export function validateSetup(form: SetupForm): Record<string, string> {
  const errors: Record<string, string> = {};
  if (!MODEL_DESIGNS.includes(form.design as (typeof MODEL_DESIGNS)[number])) {
    errors.design = `design must be one of ${MODEL_DESIGNS.join(", ")}`;
  }
  if (!(form.target > 0 && form.target < 1)) {
    errors.target = "target DLT probability must be strictly between 0 and 1";
  }
  if (!(form.t_max > 0)) {
    errors.t_max = "observation window must be positive";
  }
  if (!(form.gamma > 0)) {
    errors.gamma = "delay shape must be positive";
  }
  if (form.skeleton.length === 0) {
    errors.skeleton = "skeleton needs at least one dose";
  } else if (!form.skeleton.every((p) => p > 0 && p < 1)) {
    errors.skeleton = "skeleton probabilities must lie strictly between 0 and 1";
  } else {
    for (let i = 1; i < form.skeleton.length; i += 1) {
      if (form.skeleton[i] <= form.skeleton[i - 1]) {
        errors.skeleton = "skeleton must be strictly increasing";
        break;
      }
    }
  }
  return errors;
}

export function validateEnrollment(
  patientId: string,
  dose: number,
  nDoses: number,
): Record<string, string> {
  const errors: Record<string, string> = {};
  if (!patientId.trim()) {
    errors.patient_id = "patient id is required";
  }
  if (!Number.isInteger(dose) || dose < 1 || dose > nDoses) {
    errors.dose = `dose must be an integer between 1 and ${nDoses}`;
  }
  return errors;
}
