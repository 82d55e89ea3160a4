/** The guided wizard: one screen per service phase, driven by a local copy
 * of the session picture.
 *
 * Screens advance only on a successful service response.  Going back first
 * performs the service's truncating back-edit (resubmitting the step before
 * the screen being returned to, or the agents step when returning to the
 * first screen), then drops every local buffer downstream of the landing
 * screen.  Steps are guarded locally against the session phase so the UI
 * never submits a payload the service would gate with phase_mismatch.
 */

import { ApiClient, ServiceError } from "./api.js";
import { parseDot, renderGraph } from "./dot.js";
import { describeError, missingVectorLines, type ErrorRendering } from "./errors.js";
import {
  SCREENS,
  SCREEN_STEP,
  canSubmit,
  clearDownstream,
  initialViewState,
  jointVectors,
  payloadFor,
  rowKey,
  screenForPhase,
  suggestNames,
  syncFromView,
  type Screen,
  type WizardViewState,
} from "./state.js";
import type { ErrorBody, StepKind } from "./types.js";
import { button, el, errorBox, textInput } from "./ui.js";

export interface AppOptions {
  /** Debounce for the live formula parse feedback; 0 checks immediately. */
  debounceMs?: number;
}

const QUESTIONS: Record<Screen, string> = {
  Agents: "How many agents will your system have? Name each one.",
  States: "Which states can your system be in, where does it start, and which atomic propositions hold where?",
  Actions: "Which actions can each agent perform?",
  Transitions:
    "For every state, pick the target reached under each joint action combination. Leave a combination unset if it is unavailable in that state.",
  Review: "Does this look like your system? Confirm to continue, or go back to change it.",
  Formula: "What property should the system satisfy?",
  Result: "",
};

export class App {
  state: WizardViewState;
  private queue: Promise<void> = Promise.resolve();
  private banner: ErrorRendering | null = null;
  private fieldError: ErrorBody | null = null;
  private parseFeedback: { ok: boolean; text: string } | null = null;
  private parseTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly opts: AppOptions = {},
  ) {
    this.state = initialViewState();
  }

  /** Resolves once every queued action (clicks, feedback checks) finished. */
  settle(): Promise<void> {
    return this.queue;
  }

  private run(fn: () => void | Promise<void>): void {
    this.queue = this.queue.then(async () => {
      try {
        await fn();
      } catch (err) {
        await this.absorb(err);
      }
    });
  }

  private async absorb(err: unknown): Promise<void> {
    if (err instanceof ServiceError) {
      const rendering = describeError(err.body);
      if (rendering.placement === "banner") {
        this.banner = rendering;
        if (rendering.resync && this.state.sessionId) await this.resync();
      } else {
        this.fieldError = err.body;
      }
    } else {
      this.banner = {
        headline: `Unexpected problem: ${err instanceof Error ? err.message : String(err)}`,
        details: [],
        placement: "banner",
        resync: false,
      };
    }
    this.render();
  }

  private async resync(): Promise<void> {
    const view = await this.api.getSession(this.state.sessionId!);
    syncFromView(this.state.buffers, view);
    this.state.phase = view.phase;
    this.state.screen = screenForPhase(view.phase);
    if (this.state.screen === "Review") {
      this.state.graphDot = await this.api.getGraph(view.id);
    }
    if (this.state.screen === "Result") {
      this.state.result = await this.api.getResult(view.id);
    }
  }

  start(): Promise<void> {
    this.run(async () => {
      const created = await this.api.createSession();
      this.state = initialViewState();
      this.state.sessionId = created.id;
      this.state.phase = created.phase as WizardViewState["phase"];
      this.state.screen = "Agents";
      this.render();
    });
    return this.settle();
  }

  /** Submit the current screen's step and move forward on success. */
  private submitCurrent(): void {
    this.run(async () => {
      const screen = this.state.screen;
      if (screen === "Result") return;
      const kind = SCREEN_STEP[screen];
      await this.performStep(kind);
      this.state.screen = screenForPhase(this.state.phase!);
      await this.fetchScreenData();
      this.render();
    });
  }

  /** Truncating back navigation to the previous screen. */
  private goBack(): void {
    this.run(async () => {
      const idx = SCREENS.indexOf(this.state.screen);
      if (idx <= 0) return;
      const target = SCREENS[idx - 1] as Exclude<Screen, "Result">;
      const stepScreen = (idx - 1 === 0 ? "Agents" : SCREENS[idx - 2]) as Exclude<
        Screen,
        "Result"
      >;
      await this.performStep(SCREEN_STEP[stepScreen]);
      clearDownstream(this.state.buffers, target);
      this.state.screen = target;
      await this.fetchScreenData();
      this.render();
    });
  }

  private async performStep(kind: StepKind): Promise<void> {
    this.banner = null;
    this.fieldError = null;
    this.parseFeedback = null;
    if (!this.state.sessionId || !canSubmit(this.state.phase, kind)) {
      throw new Error(`step ${kind} is not allowed in phase ${this.state.phase}`);
    }
    const payload = payloadFor(this.state.buffers, kind);
    const view = await this.api.step(this.state.sessionId, kind, payload);
    this.state.phase = view.phase;
    syncFromView(this.state.buffers, view);
    this.state.graphDot = null;
    this.state.result = null;
  }

  private async fetchScreenData(): Promise<void> {
    if (this.state.screen === "Review" && this.state.graphDot === null) {
      this.state.graphDot = await this.api.getGraph(this.state.sessionId!);
    }
    if (this.state.screen === "Result" && this.state.result === null) {
      this.state.result = await this.api.getResult(this.state.sessionId!);
    }
  }

  private startOver(): void {
    this.run(async () => {
      const created = await this.api.createSession();
      this.state = initialViewState();
      this.state.sessionId = created.id;
      this.state.phase = created.phase as WizardViewState["phase"];
      this.render();
    });
  }

  // ---- live formula feedback ----------------------------------------

  private scheduleParseCheck(): void {
    if (this.parseTimer !== null) clearTimeout(this.parseTimer);
    const text = this.state.buffers.formula.trim();
    if (text === "") {
      this.parseFeedback = null;
      this.updateParseFeedback();
      return;
    }
    const go = () => this.run(() => this.checkFormula(text));
    const ms = this.opts.debounceMs ?? 250;
    if (ms <= 0) go();
    else this.parseTimer = setTimeout(go, ms);
  }

  private async checkFormula(text: string): Promise<void> {
    if (text !== this.state.buffers.formula.trim()) return;
    try {
      const res = await this.api.parseCheck(text);
      this.parseFeedback = { ok: true, text: `well-formed (${res.logic})` };
    } catch (err) {
      if (!(err instanceof ServiceError)) throw err;
      this.parseFeedback = { ok: false, text: describeError(err.body).headline };
    }
    this.updateParseFeedback();
  }

  private updateParseFeedback(): void {
    const slot = this.root.querySelector(".parse-feedback");
    if (!slot) return;
    slot.className = this.parseFeedback
      ? `parse-feedback ${this.parseFeedback.ok ? "parse-ok" : "parse-bad"}`
      : "parse-feedback";
    slot.textContent = this.parseFeedback ? this.parseFeedback.text : "";
  }

  // ---- rendering -----------------------------------------------------

  render(): void {
    this.root.textContent = "";
    if (this.banner) {
      this.root.appendChild(
        el("div", { class: "banner", role: "alert" }, [
          el("p", {}, [this.banner.headline]),
          ...this.banner.details.map((d) => el("p", { class: "banner-detail" }, [d])),
        ]),
      );
    }
    if (!this.state.sessionId) {
      this.root.appendChild(
        el("section", { class: "screen", "data-screen": "Start" }, [
          el("p", { class: "question" }, [
            "Build a model step by step, then check a property of it.",
          ]),
          button("Start", "btn-start", () => void this.start()),
        ]),
      );
      return;
    }
    this.root.appendChild(this.renderStepper());
    const section = el("section", {
      class: "screen",
      "data-screen": this.state.screen,
    });
    const question = QUESTIONS[this.state.screen];
    if (question) {
      section.appendChild(el("h2", {}, [this.screenTitle()]));
      section.appendChild(el("p", { class: "question" }, [question]));
    }
    switch (this.state.screen) {
      case "Agents":
        this.renderAgents(section);
        break;
      case "States":
        this.renderStates(section);
        break;
      case "Actions":
        this.renderActions(section);
        break;
      case "Transitions":
        this.renderTransitions(section);
        break;
      case "Review":
        this.renderReview(section);
        break;
      case "Formula":
        this.renderFormula(section);
        break;
      case "Result":
        this.renderResult(section);
        break;
    }
    this.root.appendChild(section);
  }

  private screenTitle(): string {
    return this.state.screen === "Result" ? "Result" : this.state.screen;
  }

  private renderStepper(): HTMLElement {
    const current = SCREENS.indexOf(this.state.screen);
    return el(
      "ol",
      { class: "stepper" },
      SCREENS.map((s, i) =>
        el(
          "li",
          { class: i === current ? "step current" : i < current ? "step done" : "step" },
          [s],
        ),
      ),
    );
  }

  private renderFieldError(section: HTMLElement, extraLines: string[] = []): void {
    if (!this.fieldError) return;
    const rendering = describeError(this.fieldError);
    section.appendChild(errorBox(rendering.headline, [...rendering.details, ...extraLines]));
  }

  private nav(section: HTMLElement, forwardLabel: string, withBack: boolean): void {
    const row = el("div", { class: "nav" });
    if (withBack) row.appendChild(button("Back", "btn-back", () => this.goBack()));
    row.appendChild(button(forwardLabel, "btn-continue", () => this.submitCurrent()));
    section.appendChild(row);
  }

  private renderNameList(
    section: HTMLElement,
    names: string[],
    cls: string,
    prefix: string,
    minCount: number,
    addLabel: string,
  ): void {
    const list = el("div", { class: `${cls}-list name-list` });
    names.forEach((name, i) => {
      const input = textInput(name, { class: `${cls}`, "data-index": String(i) });
      input.addEventListener("change", () => {
        this.renameAt(names, i, input.value.trim());
        this.render();
      });
      const row = el("div", { class: "name-row" }, [input]);
      if (names.length > minCount) {
        row.appendChild(
          button("Remove", "btn-remove", () => {
            this.renameAt(names, i, null);
            this.render();
          }),
        );
      }
      list.appendChild(row);
    });
    section.appendChild(list);
    section.appendChild(
      button(addLabel, `btn-add-${cls}`, () => {
        names.push(this.freshName(names, prefix));
        this.render();
      }),
    );
  }

  private freshName(names: string[], prefix: string): string {
    for (let i = 0; ; i++) {
      const candidate = `${prefix}${i}`;
      if (!names.includes(candidate)) return candidate;
    }
  }

  /** Rename (or remove, when newName is null) keeping dependent buffers keyed right. */
  private renameAt(names: string[], index: number, newName: string | null): void {
    const old = names[index];
    if (old === undefined) return;
    const b = this.state.buffers;
    if (newName === null) names.splice(index, 1);
    else names[index] = newName;
    if (names === b.states) {
      b.initial = b.initial
        .map((s) => (s === old ? newName : s))
        .filter((s): s is string => s !== null && names.includes(s));
      const labels: Record<string, string[]> = {};
      for (const [s, atoms] of Object.entries(b.labels)) {
        const key = s === old ? newName : s;
        if (key !== null && names.includes(key)) labels[key] = atoms;
      }
      b.labels = labels;
      b.targets = {};
    } else if (names === b.agents) {
      const actions: Record<string, string[]> = {};
      for (const [a, acts] of Object.entries(b.actions)) {
        const key = a === old ? newName : a;
        if (key !== null && names.includes(key)) actions[key] = acts;
      }
      b.actions = actions;
      b.targets = {};
    } else if (names === b.atoms) {
      for (const [s, atoms] of Object.entries(b.labels)) {
        b.labels[s] = atoms
          .map((x) => (x === old ? newName : x))
          .filter((x): x is string => x !== null && names.includes(x));
      }
    }
  }

  private renderAgents(section: HTMLElement): void {
    this.renderNameList(section, this.state.buffers.agents, "agent-name", "A", 1, "Add agent");
    this.renderFieldError(section);
    this.nav(section, "Continue", false);
  }

  private renderStates(section: HTMLElement): void {
    const b = this.state.buffers;
    this.renderNameList(section, b.states, "state-name", "S", 1, "Add state");

    section.appendChild(el("h3", {}, ["Initial states"]));
    section.appendChild(
      el("p", { class: "hint" }, ["Where can a run of the system begin?"]),
    );
    const initialRow = el("div", { class: "check-row" });
    for (const s of b.states) {
      const box = el("input", {
        type: "checkbox",
        class: "initial-check",
        "data-state": s,
      });
      box.checked = b.initial.includes(s);
      box.addEventListener("change", () => {
        b.initial = b.states.filter((x) =>
          x === s ? box.checked : b.initial.includes(x),
        );
      });
      initialRow.appendChild(el("label", {}, [box, s]));
    }
    section.appendChild(initialRow);

    section.appendChild(el("h3", {}, ["Atomic propositions"]));
    section.appendChild(
      el("p", { class: "hint" }, [
        "Name the facts your property will talk about (none is fine).",
      ]),
    );
    this.renderNameList(section, b.atoms, "atom-name", "p", 0, "Add atom");

    if (b.atoms.length) {
      section.appendChild(el("h3", {}, ["Which atoms hold in which states?"]));
      const table = el("table", { class: "label-table" });
      for (const s of b.states) {
        const cells: HTMLElement[] = [el("th", {}, [s])];
        for (const atom of b.atoms) {
          const box = el("input", {
            type: "checkbox",
            class: "label-check",
            "data-state": s,
            "data-atom": atom,
          });
          box.checked = (b.labels[s] ?? []).includes(atom);
          box.addEventListener("change", () => {
            const have = new Set(b.labels[s] ?? []);
            if (box.checked) have.add(atom);
            else have.delete(atom);
            b.labels[s] = b.atoms.filter((x) => have.has(x));
          });
          cells.push(el("td", {}, [el("label", {}, [box, atom])]));
        }
        table.appendChild(el("tr", {}, cells));
      }
      section.appendChild(table);
    }

    this.renderFieldError(section);
    this.nav(section, "Continue", true);
  }

  private renderActions(section: HTMLElement): void {
    const b = this.state.buffers;
    for (const agent of b.agents) {
      if (!b.actions[agent] || b.actions[agent].length === 0) {
        b.actions[agent] = suggestNames("act", 1);
      }
    }
    for (const agent of b.agents) {
      section.appendChild(el("h3", {}, [agent]));
      const names = b.actions[agent]!;
      const list = el("div", { class: "name-list" });
      names.forEach((name, i) => {
        const input = textInput(name, {
          class: "action-name",
          "data-agent": agent,
          "data-index": String(i),
        });
        input.addEventListener("change", () => {
          names[i] = input.value.trim();
          b.targets = {};
          this.render();
        });
        const row = el("div", { class: "name-row" }, [input]);
        if (names.length > 1) {
          row.appendChild(
            button("Remove", "btn-remove", () => {
              names.splice(i, 1);
              b.targets = {};
              this.render();
            }),
          );
        }
        list.appendChild(row);
      });
      section.appendChild(list);
      const add = button("Add action", "btn-add-action", () => {
        names.push(this.freshName(names, "act"));
        b.targets = {};
        this.render();
      });
      add.setAttribute("data-agent", agent);
      section.appendChild(add);
    }
    this.renderFieldError(section);
    this.nav(section, "Continue", true);
  }

  private renderTransitions(section: HTMLElement): void {
    const b = this.state.buffers;
    const vectors = jointVectors(b.agents, b.actions);
    const missing = new Set(
      (this.fieldError?.missing_vectors ?? []).map((mv) =>
        rowKey(mv.state, mv.actions),
      ),
    );
    for (const state of b.states) {
      section.appendChild(el("h3", {}, [state]));
      const table = el("table", { class: "transition-table", "data-state": state });
      table.appendChild(
        el("tr", {}, [
          ...b.agents.map((a) => el("th", {}, [a])),
          el("th", {}, ["target"]),
        ]),
      );
      for (const vec of vectors) {
        const key = rowKey(state, vec);
        const select = el("select", {
          class: "target-select",
          "data-state": state,
          "data-vector": vec.join(","),
        });
        const unset = el("option", { value: "" }, ["(unavailable)"]);
        select.appendChild(unset);
        for (const target of b.states) {
          select.appendChild(el("option", { value: target }, [target]));
        }
        select.value = b.targets[key] ?? "";
        select.addEventListener("change", () => {
          if (select.value === "") delete b.targets[key];
          else b.targets[key] = select.value;
        });
        const row = el("tr", {
          class: missing.has(key) ? "vector-row missing" : "vector-row",
          "data-state": state,
          "data-vector": vec.join(","),
        });
        for (const a of vec) row.appendChild(el("td", {}, [a]));
        row.appendChild(el("td", {}, [select]));
        table.appendChild(row);
      }
      section.appendChild(table);
    }
    this.renderFieldError(
      section,
      this.fieldError ? missingVectorLines(this.fieldError) : [],
    );
    this.nav(section, "Continue", true);
  }

  private renderReview(section: HTMLElement): void {
    const holder = el("div", { class: "graph-holder" });
    if (this.state.graphDot) {
      holder.appendChild(renderGraph(parseDot(this.state.graphDot)));
    } else {
      holder.appendChild(el("p", { class: "hint" }, ["Rendering the graph..."]));
    }
    section.appendChild(holder);
    this.renderFieldError(section);
    this.nav(section, "Confirm", true);
  }

  private renderFormula(section: HTMLElement): void {
    const b = this.state.buffers;
    const input = textInput(b.formula, {
      class: "formula-input",
      placeholder: "<A0, A1> F goal",
      spellcheck: "false",
    });
    input.addEventListener("input", () => {
      b.formula = input.value;
      this.scheduleParseCheck();
    });
    section.appendChild(input);
    const feedback = el("div", { class: "parse-feedback" });
    if (this.parseFeedback) {
      feedback.classList.add(this.parseFeedback.ok ? "parse-ok" : "parse-bad");
      feedback.textContent = this.parseFeedback.text;
    }
    section.appendChild(feedback);
    section.appendChild(this.grammarCheatSheet());
    this.renderFieldError(section);
    this.nav(section, "Verify", true);
  }

  private grammarCheatSheet(): HTMLElement {
    const rows: [string, string][] = [
      ["goal, p, q", "atomic propositions declared on the States screen"],
      ["!f    f && g    f || g    f -> g    f <-> g", "boolean connectives"],
      ["E X f    A F f    E G f    A (f U g)", "path quantifiers: some run / every run"],
      ["<A0, A1> F goal", "the coalition has a strategy to reach goal"],
      ["[A0] G !bad", "A0 cannot avoid keeping !bad forever"],
      ["<> G p", "the empty coalition: p holds on every run regardless"],
    ];
    return el("details", { class: "cheat-sheet", open: "" }, [
      el("summary", {}, ["Property language"]),
      el(
        "table",
        {},
        rows.map(([syntax, meaning]) =>
          el("tr", {}, [
            el("td", {}, [el("code", {}, [syntax])]),
            el("td", {}, [meaning]),
          ]),
        ),
      ),
    ]);
  }

  private renderResult(section: HTMLElement): void {
    const result = this.state.result;
    if (!result) {
      section.appendChild(el("p", { class: "hint" }, ["Fetching the verdict..."]));
      return;
    }
    const badge = el(
      "div",
      { class: result.overall ? "badge badge-true" : "badge badge-false" },
      [result.overall ? "satisfied" : "not satisfied"],
    );
    section.appendChild(badge);

    const table = el("table", { class: "per-initial" }, [
      el("tr", {}, [el("th", {}, ["initial state"]), el("th", {}, ["verdict"])]),
    ]);
    for (const [state, verdict] of Object.entries(result.per_initial)) {
      table.appendChild(
        el("tr", { "data-state": state }, [
          el("td", {}, [state]),
          el("td", { class: verdict ? "verdict-true" : "verdict-false" }, [
            verdict ? "holds" : "fails",
          ]),
        ]),
      );
    }
    section.appendChild(table);

    const note =
      result.trace.fallback_applied && result.trace.note
        ? ` (${result.trace.note})`
        : "";
    section.appendChild(
      el("p", { class: "method-line" }, [`method: ${result.method}${note}`]),
    );

    if (result.witness) {
      section.appendChild(el("h3", {}, ["Witness strategy"]));
      section.appendChild(
        el("p", { class: "hint" }, [
          `Coalition {${result.witness.coalition.join(", ")}} wins by playing:`,
        ]),
      );
      const wt = el("table", { class: "witness-table" }, [
        el("tr", {}, [
          el("th", {}, ["state"]),
          el("th", {}, ["member"]),
          el("th", {}, ["action"]),
        ]),
      ]);
      for (const [state, byMember] of Object.entries(result.witness.choice)) {
        for (const [member, action] of Object.entries(byMember)) {
          wt.appendChild(
            el("tr", {}, [
              el("td", {}, [state]),
              el("td", {}, [member]),
              el("td", {}, [action]),
            ]),
          );
        }
      }
      section.appendChild(wt);
    }

    const row = el("div", { class: "nav" });
    row.appendChild(button("Change formula", "btn-back", () => this.goBack()));
    row.appendChild(button("Start over", "btn-start-over", () => this.startOver()));
    section.appendChild(row);
  }
}
