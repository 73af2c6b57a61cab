/** Thin typed client for the session API. Every request is appended to
 * `log`, which the guard tests use to prove that blocked actions never
 * reach the network. */

import type {
  CriterionView,
  Method,
  ParticipantView,
  Phase,
  SessionView,
  VoteResultView,
} from "./model.js";

export const TOKEN_HEADER = "X-Participant-Token";

export interface ApiErrorBody {
  error: string;
  detail: string;
}

export class HttpError extends Error {
  constructor(
    public status: number,
    public body: ApiErrorBody,
  ) {
    super(`${body.error}: ${body.detail}`);
    this.name = "HttpError";
  }
}

export interface RequestLogEntry {
  method: string;
  path: string;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface CreateSessionRequest {
  alternatives?: Array<string | { id: string; label?: string }>;
  criteria?: CriterionView[];
  matrix_csv?: string;
  facilitator?: { id: string; display_name: string };
}

export class ApiClient {
  readonly log: RequestLogEntry[] = [];
  token: string | null = null;

  constructor(
    public readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    this.log.push({ method, path });
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers[TOKEN_HEADER] = this.token;
    const resp = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await resp.text();
    const parsed = text ? JSON.parse(text) : {};
    if (!resp.ok) {
      const errBody: ApiErrorBody =
        parsed && typeof parsed.error === "string"
          ? parsed
          : { error: `http_${resp.status}`, detail: text };
      throw new HttpError(resp.status, errBody);
    }
    return parsed as T;
  }

  createSession(
    body: CreateSessionRequest,
  ): Promise<{ session: SessionView; token: string }> {
    return this.request("POST", "/sessions", body);
  }

  getSession(id: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${id}`);
  }

  enroll(
    id: string,
    participant: { id: string; display_name?: string; role?: string },
  ): Promise<{ participant: ParticipantView; token: string }> {
    return this.request("POST", `/sessions/${id}/participants`, participant);
  }

  advancePhase(id: string, to: Phase): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/phase`, { advance_to: to });
  }

  submitBallot(
    id: string,
    participantId: string,
    ranking: string[],
  ): Promise<{ ballot_count: number }> {
    return this.request("PUT", `/sessions/${id}/ballots/${participantId}`, { ranking });
  }

  suggest(id: string, weights: Record<string, number>): Promise<{ ranking: string[] }> {
    return this.request("POST", `/sessions/${id}/suggest`, { weights });
  }

  results(id: string, method: Method): Promise<VoteResultView> {
    return this.request("GET", `/sessions/${id}/results?method=${method}`);
  }
}
