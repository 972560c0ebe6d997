/** Thin fetch client for the conduct API; no statistics happen here. */

import type {
  ApiErrorBody,
  EventAck,
  Recommendation,
  TrialEvent,
  TrialState,
  TrialSummary,
} from "./types";

export class ApiRequestError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiRequestError";
  }
}

let tokenCounter = 0;

/** Unique token attached to one logical submission; retries reuse it. */
export function newDedupeToken(): string {
  const cryptoApi = globalThis.crypto as Crypto | undefined;
  if (cryptoApi?.randomUUID) return cryptoApi.randomUUID();
  tokenCounter += 1;
  return `tok-${Date.now()}-${tokenCounter}`;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    const body = await response.json();
    if (!response.ok) {
      const error = body as ApiErrorBody;
      throw new ApiRequestError(
        response.status,
        error.code ?? "error",
        error.message ?? response.statusText,
      );
    }
    return body as T;
  }

  createTrial(
    design: Record<string, unknown>,
    timeUnit = "weeks",
  ): Promise<{ trial_id: string }> {
    return this.request("/trials", {
      method: "POST",
      body: JSON.stringify({ design, time_unit: timeUnit }),
    });
  }

  listTrials(): Promise<TrialSummary[]> {
    return this.request("/trials");
  }

  state(trialId: string): Promise<TrialState> {
    return this.request(`/trials/${encodeURIComponent(trialId)}/state`);
  }

  recommendation(trialId: string, asOf?: string): Promise<Recommendation> {
    const query = asOf ? `?asOf=${encodeURIComponent(asOf)}` : "";
    return this.request(
      `/trials/${encodeURIComponent(trialId)}/recommendation${query}`,
    );
  }

  submitEvent(trialId: string, event: TrialEvent): Promise<EventAck> {
    return this.request(`/trials/${encodeURIComponent(trialId)}/events`, {
      method: "POST",
      body: JSON.stringify(event),
    });
  }

  whatIf(
    trialId: string,
    events: readonly TrialEvent[],
    asOf?: string,
  ): Promise<Recommendation> {
    return this.request(`/trials/${encodeURIComponent(trialId)}/what-if`, {
      method: "POST",
      body: JSON.stringify(asOf ? { events, as_of: asOf } : { events }),
    });
  }
}
