/** Page controller: hash routing, forms, and refresh-after-write. */

import { ApiClient, ApiRequestError, newDedupeToken } from "./api";
import {
  el,
  errorNote,
  eventLog,
  posteriorChart,
  recommendationBanner,
  rosterTable,
  trialList,
  weightTable,
  whatIfComparison,
} from "./render";
import type { Recommendation, TrialState } from "./types";
import {
  MODEL_DESIGNS,
  SETUP_DEFAULTS,
  parseSkeleton,
  validateEnrollment,
  validateSetup,
} from "./validate";

function field(
  label: string,
  name: string,
  input: HTMLElement,
): HTMLElement {
  const wrap = el("label", "field");
  wrap.append(el("span", undefined, label), input);
  const slot = el("small", "field-error");
  slot.dataset.errorFor = name;
  wrap.append(slot);
  return wrap;
}

function showErrors(form: HTMLElement, errors: Record<string, string>): void {
  for (const slot of form.querySelectorAll<HTMLElement>("[data-error-for]")) {
    slot.textContent = errors[slot.dataset.errorFor ?? ""] ?? "";
  }
}

export class App {
  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  /** Route "#/trial/<id>" to the dashboard, anything else to setup. */
  async route(hash: string): Promise<void> {
    const match = /^#\/trial\/(.+)$/.exec(hash);
    if (match) {
      await this.renderDashboard(decodeURIComponent(match[1]));
    } else {
      await this.renderSetup();
    }
  }

  private open(trialId: string): void {
    window.location.hash = `#/trial/${encodeURIComponent(trialId)}`;
  }

  async renderSetup(): Promise<void> {
    this.root.replaceChildren();
    const page = el("section", "page-setup");
    page.append(el("h2", undefined, "New trial"));
    const form = el("form", "setup-form");
    form.noValidate = true;

    const design = el("select");
    design.name = "design";
    for (const id of MODEL_DESIGNS) {
      const option = el("option", undefined, id);
      option.value = id;
      design.append(option);
    }
    const target = el("input");
    target.name = "target";
    target.value = String(SETUP_DEFAULTS.target);
    const tMax = el("input");
    tMax.name = "t_max";
    tMax.value = String(SETUP_DEFAULTS.t_max);
    const gamma = el("input");
    gamma.name = "gamma";
    gamma.value = String(SETUP_DEFAULTS.gamma);
    const skeleton = el("input");
    skeleton.name = "skeleton";
    skeleton.value = SETUP_DEFAULTS.skeleton.join(", ");

    form.append(
      field("estimator mode", "design", design),
      field("target DLT probability", "target", target),
      field("observation window (weeks)", "t_max", tMax),
      field("assumed delay shape", "gamma", gamma),
      field("skeleton (comma separated)", "skeleton", skeleton),
    );
    const submit = el("button", undefined, "Create trial");
    submit.type = "submit";
    form.append(submit, el("small", "field-error server-error"));
    form.addEventListener("submit", async (event) => {
      event.preventDefault();
      const values = parseSkeleton(skeleton.value);
      const parsed = {
        design: design.value,
        target: Number(target.value),
        t_max: Number(tMax.value),
        gamma: Number(gamma.value),
        skeleton: values ?? [],
      };
      const errors = validateSetup(parsed);
      if (values === null) {
        errors.skeleton = "skeleton must be a comma separated list of numbers";
      }
      showErrors(form, errors);
      if (Object.keys(errors).length > 0) return;
      submit.disabled = true;
      try {
        const created = await this.api.createTrial({
          design: parsed.design,
          target: parsed.target,
          t_max: parsed.t_max,
          gamma_assumed: parsed.gamma,
          skeleton: parsed.skeleton,
        });
        this.open(created.trial_id);
      } catch (error) {
        const message =
          error instanceof ApiRequestError ? error.message : String(error);
        showErrors(form, { "server-error": message });
        const slot = form.querySelector<HTMLElement>(".server-error");
        if (slot) slot.textContent = message;
      } finally {
        submit.disabled = false;
      }
    });
    page.append(form);

    const existing = el("section", "existing");
    existing.append(el("h3", undefined, "Open trials"));
    try {
      const trials = await this.api.listTrials();
      existing.append(trialList(trials, (id) => this.open(id)));
    } catch (error) {
      existing.append(errorNote(String(error)));
    }
    page.append(existing);
    this.root.replaceChildren(page);
  }

  async renderDashboard(trialId: string): Promise<void> {
    let state: TrialState;
    let rec: Recommendation;
    try {
      [state, rec] = await Promise.all([
        this.api.state(trialId),
        this.api.recommendation(trialId),
      ]);
    } catch (error) {
      if (error instanceof ApiRequestError && error.status === 404) {
        const missing = el("section", "page-missing");
        missing.append(
          el("h2", undefined, "Trial not found"),
          errorNote(error.message),
        );
        this.root.replaceChildren(missing);
        return;
      }
      throw error;
    }

    const page = el("section", "page-dashboard");
    page.append(
      el(
        "h2",
        undefined,
        `Trial ${state.trial_id} (${state.design.design}, target ${state.design.target})`,
      ),
    );
    page.append(recommendationBanner(rec));

    const charts = el("div", "row");
    const chartBox = el("div", "box");
    chartBox.append(
      el("h3", undefined, "Posterior mean toxicity"),
      posteriorChart(rec),
    );
    const weightBox = el("div", "box");
    weightBox.append(
      el("h3", undefined, "Weight audit"),
      weightTable(rec.weights, state.design.t_max),
    );
    charts.append(chartBox, weightBox);
    page.append(charts);

    page.append(el("h3", undefined, "Roster"));
    page.append(rosterTable(state.patients, state.design.t_max));

    page.append(el("h3", undefined, "Record an event"));
    page.append(this.eventForm(trialId, state));

    page.append(el("h3", undefined, "What if?"));
    page.append(this.whatIfForm(trialId, state, rec));

    page.append(el("h3", undefined, "Event log"));
    page.append(eventLog(state.events));

    this.root.replaceChildren(page);
  }

  /** Event entry with a per-submission dedupe token: the token is minted
   * when the submission starts and reused on retries, so a double click
   * or a resubmitted form cannot create two events. */
  private eventForm(trialId: string, state: TrialState): HTMLFormElement {
    const form = el("form", "event-form");
    form.noValidate = true;
    const kind = el("select");
    kind.name = "kind";
    for (const value of ["patient-enrolled", "dlt-observed", "followup-completed"]) {
      const option = el("option", undefined, value);
      option.value = value;
      kind.append(option);
    }
    const patient = el("input");
    patient.name = "patient_id";
    patient.placeholder = "P1";
    const dose = el("input");
    dose.name = "dose";
    dose.placeholder = "1";
    const timestamp = el("input");
    timestamp.name = "timestamp";
    timestamp.placeholder = "2026-01-05T00:00:00Z";
    form.append(
      field("event", "kind", kind),
      field("patient", "patient_id", patient),
      field("dose (enrollment only)", "dose", dose),
      field("timestamp (ISO-8601)", "timestamp", timestamp),
    );
    const submit = el("button", undefined, "Append event");
    submit.type = "submit";
    form.append(submit, el("small", "field-error server-error"));

    let pendingToken: string | null = null;
    form.addEventListener("submit", async (event) => {
      event.preventDefault();
      if (submit.disabled) return;
      const errors: Record<string, string> = {};
      if (kind.value === "patient-enrolled") {
        Object.assign(
          errors,
          validateEnrollment(
            patient.value,
            Number(dose.value),
            state.design.skeleton.length,
          ),
        );
      } else if (!patient.value.trim()) {
        errors.patient_id = "patient id is required";
      }
      if (!timestamp.value.trim()) {
        errors.timestamp = "timestamp is required";
      }
      showErrors(form, errors);
      if (Object.keys(errors).length > 0) return;

      pendingToken = pendingToken ?? newDedupeToken();
      submit.disabled = true;
      try {
        await this.api.submitEvent(trialId, {
          kind: kind.value,
          timestamp: timestamp.value.trim(),
          patient_id: patient.value.trim(),
          ...(kind.value === "patient-enrolled"
            ? { dose: Number(dose.value) }
            : {}),
          dedupe_token: pendingToken,
        });
        pendingToken = null;
        await this.renderDashboard(trialId);
      } catch (error) {
        submit.disabled = false;
        const message =
          error instanceof ApiRequestError
            ? `${error.code}: ${error.message}`
            : String(error);
        showErrors(form, { "server-error": message });
        const slot = form.querySelector<HTMLElement>(".server-error");
        if (slot) slot.textContent = message;
        if (error instanceof ApiRequestError && error.status !== 0) {
          // validation and conflict responses mean the submission was
          // judged; the next attempt is a new submission
          pendingToken = null;
        }
      }
    });
    return form;
  }

  private whatIfForm(
    trialId: string,
    state: TrialState,
    actual: Recommendation,
  ): HTMLElement {
    const wrap = el("div", "what-if");
    const form = el("form", "what-if-form");
    form.noValidate = true;
    const patient = el("select");
    patient.name = "patient_id";
    for (const row of state.patients) {
      if (!row.dlt_at && !row.completed_at) {
        const option = el("option", undefined, row.patient_id);
        option.value = row.patient_id;
        patient.append(option);
      }
    }
    const timestamp = el("input");
    timestamp.name = "timestamp";
    timestamp.placeholder = "2026-02-02T00:00:00Z";
    form.append(
      field("pending patient has a DLT at", "patient_id", patient),
      field("timestamp (ISO-8601)", "timestamp", timestamp),
    );
    const submit = el("button", undefined, "Explore");
    submit.type = "submit";
    form.append(submit, el("small", "field-error server-error"));
    const result = el("div", "what-if-slot");
    wrap.append(form, result);

    form.addEventListener("submit", async (event) => {
      event.preventDefault();
      const events =
        patient.value && timestamp.value.trim()
          ? [
              {
                kind: "dlt-observed",
                timestamp: timestamp.value.trim(),
                patient_id: patient.value,
              },
            ]
          : [];
      try {
        const hypothetical = await this.api.whatIf(
          trialId,
          events,
          actual.as_of,
        );
        result.replaceChildren(whatIfComparison(actual, hypothetical));
      } catch (error) {
        const message =
          error instanceof ApiRequestError
            ? `${error.code}: ${error.message}`
            : String(error);
        result.replaceChildren(errorNote(message));
      }
    });
    return wrap;
  }
}
