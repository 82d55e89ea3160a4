/** Typed client for the service HTTP/JSON API, the UI's only backend contact. */

import type {
  ErrorBody,
  ParseCheck,
  RegistryInfo,
  SessionView,
  StepKind,
  VerificationResult,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ErrorBody,
  ) {
    super(body.message);
    this.name = "ServiceError";
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<Response> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let parsed: ErrorBody;
      try {
        parsed = (await response.json()) as ErrorBody;
      } catch {
        parsed = { code: "internal", message: `service returned ${response.status}` };
      }
      if (typeof parsed.code !== "string") {
        parsed = { code: "internal", message: `service returned ${response.status}` };
      }
      throw new ServiceError(response.status, parsed);
    }
    return response;
  }

  private async json<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.request(method, path, body);
    return (await response.json()) as T;
  }

  createSession(): Promise<{ id: string; phase: string }> {
    return this.json("POST", "/sessions");
  }

  step(sessionId: string, kind: StepKind, payload: unknown): Promise<SessionView> {
    return this.json("POST", `/sessions/${sessionId}/step`, { kind, payload });
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.json("GET", `/sessions/${sessionId}`);
  }

  async getGraph(sessionId: string): Promise<string> {
    const response = await this.request("GET", `/sessions/${sessionId}/graph`);
    return response.text();
  }

  getResult(sessionId: string): Promise<VerificationResult> {
    return this.json("GET", `/sessions/${sessionId}/result`);
  }

  verify(
    model: string,
    formula: string,
    policy?: { explicit_max_states?: number; implicit_max_states?: number },
  ): Promise<VerificationResult> {
    const body: Record<string, unknown> = { model, formula };
    if (policy) body.policy = policy;
    return this.json("POST", "/verify", body);
  }

  parseCheck(formula: string): Promise<ParseCheck> {
    return this.json("POST", "/parse-check", { formula });
  }

  registry(): Promise<RegistryInfo> {
    return this.json("GET", "/meta/registry");
  }
}
