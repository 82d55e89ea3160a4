import { describe, expect, it } from "vitest";

import { ApiClient, ServiceError } from "../src/api.js";

function fakeFetch(
  expectations: {
    url: string;
    method: string;
    status: number;
    body: unknown;
    wantBody?: unknown;
  }[],
) {
  const calls: { url: string; init?: RequestInit }[] = [];
  const fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    const expected = expectations.shift();
    if (!expected) throw new Error(`unexpected request ${url}`);
    expect(url).toBe(expected.url);
    expect(init?.method ?? "GET").toBe(expected.method);
    if (expected.wantBody !== undefined) {
      expect(JSON.parse(String(init?.body))).toEqual(expected.wantBody);
    }
    return new Response(JSON.stringify(expected.body), {
      status: expected.status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetchFn, calls };
}

describe("api client", () => {
  it("joins the base url without doubled slashes", async () => {
    const { fetchFn } = fakeFetch([
      { url: "http://h:1/sessions", method: "POST", status: 201, body: { id: "i", phase: "Agents" } },
    ]);
    const api = new ApiClient("http://h:1/", fetchFn);
    const created = await api.createSession();
    expect(created).toEqual({ id: "i", phase: "Agents" });
  });

  it("sends step bodies as {kind, payload}", async () => {
    const view = { id: "i", phase: "States", draft: {}, steps: [], last_result: null };
    const { fetchFn } = fakeFetch([
      {
        url: "http://h:1/sessions/i/step",
        method: "POST",
        status: 200,
        body: view,
        wantBody: { kind: "agents", payload: { agents: ["A0"] } },
      },
    ]);
    const api = new ApiClient("http://h:1", fetchFn);
    const got = await api.step("i", "agents", { agents: ["A0"] });
    expect(got.phase).toBe("States");
  });

  it("throws ServiceError carrying the flat error body", async () => {
    const { fetchFn } = fakeFetch([
      {
        url: "http://h:1/parse-check",
        method: "POST",
        status: 400,
        body: { code: "parse_error", message: "unexpected token", line: 1, column: 3 },
      },
    ]);
    const api = new ApiClient("http://h:1", fetchFn);
    const err = await api.parseCheck("p &&").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ServiceError);
    const serviceErr = err as ServiceError;
    expect(serviceErr.status).toBe(400);
    expect(serviceErr.body.code).toBe("parse_error");
    expect(serviceErr.body.column).toBe(3);
  });

  it("synthesizes an internal error body for non-JSON failures", async () => {
    const fetchFn = async (): Promise<Response> =>
      new Response("<html>gateway</html>", { status: 502 });
    const api = new ApiClient("http://h:1", fetchFn);
    const err = (await api.registry().catch((e: unknown) => e)) as ServiceError;
    expect(err.body.code).toBe("internal");
    expect(err.status).toBe(502);
  });

  it("returns graph responses as text", async () => {
    const fetchFn = async (): Promise<Response> =>
      new Response('digraph model {\n  "S0" -> "S0";\n}\n', {
        status: 200,
        headers: { "Content-Type": "text/vnd.graphviz" },
      });
    const api = new ApiClient("http://h:1", fetchFn);
    const dot = await api.getGraph("i");
    expect(dot).toContain("digraph model");
  });
});
