/* End-to-end smoke: mounts the real screens in jsdom and drives them against
 * a live service instance spawned for the run (agentmc-service must be on
 * PATH, i.e. the backing python package is installed). */

import { spawn, type ChildProcessWithoutNullStreams } from "node:child_process";
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { ExpertScreen } from "../src/expert.js";
import { App } from "../src/screens.js";

const here = dirname(fileURLToPath(import.meta.url));
const M1_TEXT = readFileSync(join(here, "..", "..", "tests", "fixtures", "m1.cgs"), "utf8");

const K1_TEXT = [
  "ModelType: Kripke",
  "States: S0 S1",
  "Initial: S0",
  "Atoms: goal",
  "Label: S1 goal",
  "Edge: S0 -> S0 S1",
  "Edge: S1 -> S1",
  "",
].join("\n");

let proc: ChildProcessWithoutNullStreams;
let base: string;

beforeAll(async () => {
  const port = 18000 + Math.floor(Math.random() * 2000);
  base = `http://127.0.0.1:${port}`;
  proc = spawn("agentmc-service", {
    env: { ...process.env, AGENTMC_BIND: `127.0.0.1:${port}` },
  });
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const response = await fetch(`${base}/meta/registry`);
      if (response.ok) break;
    } catch {
      /* not up yet */
    }
    if (Date.now() > deadline) {
      throw new Error("agentmc-service did not come up; install the python package first");
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
});

afterAll(() => {
  proc?.kill();
});

function q<T extends Element>(root: ParentNode, selector: string): T {
  const node = root.querySelector(selector);
  if (!node) throw new Error(`expected an element matching ${selector}`);
  return node as T;
}

function setInput(input: HTMLInputElement, value: string): void {
  input.value = value;
  input.dispatchEvent(new Event("input", { bubbles: true }));
  input.dispatchEvent(new Event("change", { bubbles: true }));
}

function setSelect(root: ParentNode, state: string, vector: string, target: string): void {
  const select = q<HTMLSelectElement>(
    root,
    `select.target-select[data-state="${state}"][data-vector="${vector}"]`,
  );
  select.value = target;
  select.dispatchEvent(new Event("change", { bubbles: true }));
}

async function clickButton(root: ParentNode, selector: string, app: App): Promise<void> {
  q<HTMLButtonElement>(root, selector).click();
  await app.settle();
}

function screenOf(root: ParentNode): string {
  return q<HTMLElement>(root, "section.screen").getAttribute("data-screen") ?? "";
}

describe("guided wizard smoke flow", () => {
  it("walks M1 from Agents to a green badge, rendering the missing-vector error inline", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const app = new App(root, new ApiClient(base), { debounceMs: 0 });
    await app.start();

    // Agents: the defaults are already A0, A1
    expect(screenOf(root)).toBe("Agents");
    expect(root.textContent).toContain("How many agents");
    const agentNames = Array.from(
      root.querySelectorAll<HTMLInputElement>("input.agent-name"),
    ).map((i) => i.value);
    expect(agentNames).toEqual(["A0", "A1"]);
    await clickButton(root, ".btn-continue", app);

    // States: S0, S1 suggested; add S2, S3; S0 already initial; atom goal on S3
    expect(screenOf(root)).toBe("States");
    await clickButton(root, ".btn-add-state-name", app);
    await clickButton(root, ".btn-add-state-name", app);
    const stateNames = Array.from(
      root.querySelectorAll<HTMLInputElement>("input.state-name"),
    ).map((i) => i.value);
    expect(stateNames).toEqual(["S0", "S1", "S2", "S3"]);
    expect(
      q<HTMLInputElement>(root, 'input.initial-check[data-state="S0"]').checked,
    ).toBe(true);
    await clickButton(root, ".btn-add-atom-name", app);
    setInput(q(root, 'input.atom-name[data-index="0"]'), "goal");
    await app.settle();
    q<HTMLInputElement>(root, 'input.label-check[data-state="S3"][data-atom="goal"]').click();
    await clickButton(root, ".btn-continue", app);

    // Actions: A0 plays A, B; A1 plays A, B, C
    expect(screenOf(root)).toBe("Actions");
    setInput(q(root, 'input.action-name[data-agent="A0"][data-index="0"]'), "A");
    await app.settle();
    await clickButton(root, '.btn-add-action[data-agent="A0"]', app);
    setInput(q(root, 'input.action-name[data-agent="A0"][data-index="1"]'), "B");
    await app.settle();
    setInput(q(root, 'input.action-name[data-agent="A1"][data-index="0"]'), "A");
    await app.settle();
    await clickButton(root, '.btn-add-action[data-agent="A1"]', app);
    setInput(q(root, 'input.action-name[data-agent="A1"][data-index="1"]'), "B");
    await app.settle();
    await clickButton(root, '.btn-add-action[data-agent="A1"]', app);
    setInput(q(root, 'input.action-name[data-agent="A1"][data-index="2"]'), "C");
    await app.settle();
    await clickButton(root, ".btn-continue", app);

    // Transitions: each state shows the full joint-action table
    expect(screenOf(root)).toBe("Transitions");
    expect(
      root.querySelectorAll('tr.vector-row[data-state="S0"]').length,
    ).toBe(6);
    // M1 targets, except (S0, (B, B)) stays unset for now
    setSelect(root, "S0", "A,A", "S1");
    setSelect(root, "S0", "A,B", "S0");
    setSelect(root, "S0", "B,A", "S0");
    setSelect(root, "S1", "A,A", "S2");
    setSelect(root, "S1", "A,B", "S3");
    setSelect(root, "S1", "A,C", "S3");
    setSelect(root, "S2", "A,A", "S3");
    setSelect(root, "S2", "B,A", "S0");
    setSelect(root, "S3", "A,A", "S3");
    await clickButton(root, ".btn-continue", app);

    // the missing joint vector renders inline, next to its table
    expect(screenOf(root)).toBe("Transitions");
    const inline = q<HTMLElement>(root, ".inline-error");
    expect(inline.textContent).toContain("state S0: no target for (B, B)");
    expect(
      q<HTMLElement>(root, 'tr.vector-row[data-state="S0"][data-vector="B,B"]').className,
    ).toContain("missing");
    expect(root.textContent).not.toContain('"code"');

    // set the missing target and continue to the graph preview
    setSelect(root, "S0", "B,B", "S2");
    await clickButton(root, ".btn-continue", app);
    expect(screenOf(root)).toBe("Review");
    const svg = q<SVGSVGElement>(root, "svg.model-graph");
    expect(svg.querySelectorAll("g.edge").length).toBe(10);
    expect(svg.querySelectorAll("g.node").length).toBe(4);
    expect(q<SVGElement>(svg, 'g.node[data-id="S0"]').classList.contains("initial")).toBe(true);
    expect(svg.textContent).toContain("goal");

    // confirm, write the property with live feedback, verify
    await clickButton(root, ".btn-continue", app);
    expect(screenOf(root)).toBe("Formula");
    setInput(q(root, "input.formula-input"), "<A0, A1> F");
    await app.settle();
    expect(q<HTMLElement>(root, ".parse-feedback").className).toContain("parse-bad");
    setInput(q(root, "input.formula-input"), "<A0, A1> F goal");
    await app.settle();
    const feedback = q<HTMLElement>(root, ".parse-feedback");
    expect(feedback.className).toContain("parse-ok");
    expect(feedback.textContent).toContain("ATL");
    await clickButton(root, ".btn-continue", app);

    // green badge, per-initial verdicts, method note, witness
    expect(screenOf(root)).toBe("Result");
    const badge = q<HTMLElement>(root, ".badge");
    expect(badge.className).toContain("badge-true");
    expect(badge.textContent).toBe("satisfied");
    const s0Row = q<HTMLElement>(root, '.per-initial tr[data-state="S0"]');
    expect(s0Row.textContent).toContain("holds");
    expect(q<HTMLElement>(root, ".method-line").textContent).toContain("method: Explicit");
    const witnessRows = root.querySelectorAll(".witness-table tr");
    expect(witnessRows.length).toBeGreaterThan(1);
    expect(q<HTMLElement>(root, ".witness-table").textContent).toContain("S1");
    expect(root.textContent).toContain("Coalition {A0, A1}");

    // change the formula via the truncating back-edit and re-verify
    await clickButton(root, ".btn-back", app);
    expect(screenOf(root)).toBe("Formula");
    setInput(q(root, "input.formula-input"), "<A1> F goal");
    await app.settle();
    await clickButton(root, ".btn-continue", app);
    expect(screenOf(root)).toBe("Result");
    const badge2 = q<HTMLElement>(root, ".badge");
    expect(badge2.className).toContain("badge-false");
    expect(badge2.textContent).toBe("not satisfied");

    root.remove();
  });

  it("blocks steps ahead of the session phase locally", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const app = new App(root, new ApiClient(base), { debounceMs: 0 });
    await app.start();
    const submitFormula = (
      app as unknown as { performStep(kind: string): Promise<void> }
    ).performStep("formula");
    await expect(submitFormula).rejects.toThrow(/not allowed in phase/);
    root.remove();
  });

  it("resyncs the screen from the service on phase_mismatch", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const app = new App(root, new ApiClient(base), { debounceMs: 0 });
    await app.start();
    // another client (here: a raw call) moves the same session forward
    const sessionId = app.state.sessionId!;
    const api = new ApiClient(base);
    await api.step(sessionId, "agents", { agents: ["A0"] });
    // the app's local picture still says Agents; force a stale later step
    app.state.phase = "Formula";
    app.state.screen = "Formula";
    app.state.buffers.formula = "E F goal";
    app.render();
    q<HTMLButtonElement>(root, ".btn-continue").click();
    await app.settle();
    // phase_mismatch from the service lands in the banner and resyncs
    expect(q<HTMLElement>(root, ".banner").textContent).toContain("out of step");
    expect(screenOf(root)).toBe("States");
    root.remove();
  });
});

describe("expert flow smoke", () => {
  it("renders a red badge for an unsatisfied property on an uploaded model", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const expert = new ExpertScreen(root, new ApiClient(base));
    expert.render();

    // drive the real file input path
    const fileInput = q<HTMLInputElement>(root, "input.model-file");
    Object.defineProperty(fileInput, "files", {
      value: [new File([M1_TEXT], "m1.cgs")],
      configurable: true,
    });
    fileInput.dispatchEvent(new Event("change", { bubbles: true }));
    await expert.settle();
    expect(root.textContent).toContain("Loaded m1.cgs");

    setInput(q(root, "input.formula-input"), "<A0> F goal");
    await expert.verify();
    const badge = q<HTMLElement>(root, ".badge");
    expect(badge.className).toContain("badge-false");
    expect(badge.textContent).toBe("not satisfied");
    root.remove();
  });

  it("highlights the offending line and column of a malformed upload", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const expert = new ExpertScreen(root, new ApiClient(base));
    expert.render();

    const goodLines = M1_TEXT.split("\n");
    const badIndex = goodLines.findIndex((l) => l === "Transition: S0 A A -> S1");
    expect(badIndex).toBeGreaterThanOrEqual(0);
    const broken = M1_TEXT.replace("Transition: S0 A A -> S1", "Transition: S0 A -> S1");

    await expert.handleFile(new File([broken], "broken.cgs"));
    setInput(q(root, "input.formula-input"), "<A0> F goal");
    await expert.verify();

    const badLine = q<HTMLElement>(root, ".bad-line");
    expect(badLine.getAttribute("data-line")).toBe(String(badIndex + 1));
    expect(badLine.textContent).toContain("Transition: S0 A -> S1");
    expect(q<HTMLElement>(root, ".inline-error").textContent).toContain("line");
    expect(root.textContent).not.toContain('"code"');
    expect(root.querySelector(".badge")).toBeNull();
    root.remove();
  });

  it("routes formula mistakes to the formula field, not the model pane", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const expert = new ExpertScreen(root, new ApiClient(base));
    expert.render();
    await expert.handleFile(new File([M1_TEXT], "m1.cgs"));
    setInput(q(root, "input.formula-input"), "<A0> F (goal &&");
    await expert.verify();
    expect(q<HTMLElement>(root, ".inline-error").textContent).toContain("column");
    expect(root.querySelector(".bad-line")).toBeNull();
    root.remove();
  });

  it("verifies a Kripke upload with a branching-time property", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const expert = new ExpertScreen(root, new ApiClient(base));
    expert.render();
    await expert.handleFile(new File([K1_TEXT], "k1.kripke"));
    setInput(q(root, "input.formula-input"), "E F goal");
    await expert.verify();
    const badge = q<HTMLElement>(root, ".badge");
    expect(badge.className).toContain("badge-true");
    expect(badge.textContent).toBe("satisfied");
    root.remove();
  });

  it("refuses oversized uploads before contacting the service", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const expert = new ExpertScreen(root, new ApiClient(base));
    expert.render();
    const big = new File([new ArrayBuffer(1024 * 1024 + 1)], "big.cgs");
    await expert.handleFile(big);
    expect(q<HTMLElement>(root, ".inline-error").textContent).toContain("1 MiB");
    root.remove();
  });
});
