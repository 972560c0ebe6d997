/** DOM builders for the dashboard; every number shown comes from the API. */

import type {
  EventRecord,
  PatientRow,
  Recommendation,
  TrialSummary,
  WeightRow,
} from "./types";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function cell(text: string, className?: string): HTMLTableCellElement {
  const node = el("td", className, text);
  return node;
}

export function recommendationBanner(rec: Recommendation): HTMLElement {
  const banner = el("div", "banner");
  const headline =
    rec.recommended_dose === null
      ? "No admissible dose"
      : `Recommend dose ${rec.recommended_dose}`;
  banner.append(
    el("strong", "banner-dose", headline),
    el("span", "banner-decision", rec.decision),
    el("span", "banner-rationale", rec.rationale),
  );
  return banner;
}

/** Per-patient likelihood contributions, exactly as the server computed
 * them: status, follow-up with a progress bar, event and non-event
 * coefficients. Completed patients get an explicit weight-0 badge. */
export function weightTable(
  rows: readonly WeightRow[],
  tMax: number,
): HTMLTableElement {
  const table = el("table", "weights");
  const head = table.createTHead().insertRow();
  for (const label of [
    "patient",
    "dose",
    "status",
    "follow-up",
    "event weight",
    "non-event weight",
  ]) {
    head.append(el("th", undefined, label));
  }
  const body = table.createTBody();
  for (const row of rows) {
    const tr = body.insertRow();
    tr.className = `status-${row.status}`;
    tr.append(cell(row.patient_id), cell(String(row.dose)));
    const status = cell(row.status, "status");
    if (row.status === "complete") {
      status.append(el("span", "badge", "past window, w=0"));
    }
    tr.append(status);
    const followup = cell(`${row.followup.toFixed(1)}`);
    const bar = el("div", "bar");
    const fill = el("div", "bar-fill");
    fill.style.width = `${Math.min(100, (100 * row.followup) / tMax)}%`;
    bar.append(fill);
    followup.append(bar);
    tr.append(followup);
    tr.append(
      cell(row.event_coefficient.toFixed(4), "num"),
      cell(row.nonevent_coefficient.toFixed(4), "num"),
    );
  }
  return table;
}

/** Bar chart of posterior mean toxicity by dose with the target line. */
export function posteriorChart(rec: Recommendation): SVGSVGElement {
  const width = 320;
  const height = 160;
  const pad = 24;
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "posterior");
  const n = rec.posterior_mean_tox.length;
  const span = (width - 2 * pad) / Math.max(n, 1);
  const scaleY = (p: number) => height - pad - p * (height - 2 * pad);

  rec.posterior_mean_tox.forEach((p, i) => {
    const bar = document.createElementNS("http://www.w3.org/2000/svg", "rect");
    bar.setAttribute("x", String(pad + i * span + span * 0.15));
    bar.setAttribute("width", String(span * 0.7));
    bar.setAttribute("y", String(scaleY(p)));
    bar.setAttribute("height", String(height - pad - scaleY(p)));
    bar.setAttribute(
      "class",
      i + 1 === rec.recommended_dose ? "bar-recommended" : "bar-dose",
    );
    const title = document.createElementNS(
      "http://www.w3.org/2000/svg",
      "title",
    );
    title.textContent = `dose ${i + 1}: ${p.toFixed(3)}`;
    bar.append(title);
    svg.append(bar);

    const label = document.createElementNS("http://www.w3.org/2000/svg", "text");
    label.setAttribute("x", String(pad + (i + 0.5) * span));
    label.setAttribute("y", String(height - 8));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("class", "axis");
    label.textContent = String(i + 1);
    svg.append(label);
  });

  const target = document.createElementNS("http://www.w3.org/2000/svg", "line");
  target.setAttribute("x1", String(pad));
  target.setAttribute("x2", String(width - pad));
  target.setAttribute("y1", String(scaleY(rec.target)));
  target.setAttribute("y2", String(scaleY(rec.target)));
  target.setAttribute("class", "target-line");
  svg.append(target);
  const targetLabel = document.createElementNS(
    "http://www.w3.org/2000/svg",
    "text",
  );
  targetLabel.setAttribute("x", String(width - pad));
  targetLabel.setAttribute("y", String(scaleY(rec.target) - 4));
  targetLabel.setAttribute("text-anchor", "end");
  targetLabel.setAttribute("class", "axis");
  targetLabel.textContent = `target ${rec.target}`;
  svg.append(targetLabel);
  return svg;
}

export function rosterTable(
  patients: readonly PatientRow[],
  tMax: number,
): HTMLTableElement {
  const table = el("table", "roster");
  const head = table.createTHead().insertRow();
  for (const label of ["patient", "dose", "enrolled", "outcome", "follow-up"]) {
    head.append(el("th", undefined, label));
  }
  const body = table.createTBody();
  for (const p of patients) {
    const tr = body.insertRow();
    const outcome = p.dlt_at
      ? `DLT ${p.dlt_at.slice(0, 10)}`
      : p.completed_at
        ? `completed ${p.completed_at.slice(0, 10)}`
        : "pending";
    tr.append(
      cell(p.patient_id),
      cell(String(p.dose)),
      cell(p.enrolled_at.slice(0, 10)),
      cell(outcome),
      cell(`${p.followup.toFixed(1)} / ${tMax}`),
    );
  }
  return table;
}

export function eventLog(events: readonly EventRecord[]): HTMLElement {
  const list = el("ol", "event-log");
  for (const event of events) {
    const item = el("li");
    const who = typeof event.patient_id === "string" ? ` ${event.patient_id}` : "";
    item.textContent = `#${event.seq} ${event.kind}${who} @ ${event.timestamp}`;
    list.append(item);
  }
  return list;
}

export function trialList(
  trials: readonly TrialSummary[],
  onOpen: (id: string) => void,
): HTMLElement {
  const list = el("ul", "trial-list");
  for (const trial of trials) {
    const item = el("li");
    const link = el("a", undefined, `${trial.trial_id} (${trial.design}, ${trial.n_patients} patients)`);
    link.href = `#/trial/${trial.trial_id}`;
    link.addEventListener("click", (event) => {
      event.preventDefault();
      onOpen(trial.trial_id);
    });
    item.append(link);
    list.append(item);
  }
  return list;
}

/** Side-by-side actual vs hypothetical; highlights a lowered dose. */
export function whatIfComparison(
  actual: Recommendation,
  hypothetical: Recommendation,
): HTMLElement {
  const wrap = el("div", "what-if-result");
  const panels: Array<[string, Recommendation, string]> = [
    ["actual", actual, "panel-actual"],
    ["hypothetical", hypothetical, "panel-hypothetical"],
  ];
  for (const [label, rec, className] of panels) {
    const panel = el("div", `panel ${className}`);
    panel.append(el("h4", undefined, label));
    panel.append(recommendationBanner(rec));
    wrap.append(panel);
  }
  const lowered =
    hypothetical.recommended_dose !== null &&
    actual.recommended_dose !== null &&
    hypothetical.recommended_dose < actual.recommended_dose;
  if (lowered) {
    wrap.classList.add("dose-lowered");
    wrap.append(
      el("p", "note", "the hypothetical outcome lowers the recommended dose"),
    );
  }
  return wrap;
}

export function errorNote(message: string): HTMLElement {
  return el("p", "error", message);
}
