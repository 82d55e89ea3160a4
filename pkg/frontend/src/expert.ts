/** Expert flow: upload a model file, type a formula, verify in one shot.
 *
 * The formula is parse-checked first, so a later parse error from /verify is
 * known to point into the uploaded model text and is highlighted there at
 * its line and column.  Validation errors highlight their lines the same
 * way.
 */

import { ApiClient, ServiceError } from "./api.js";
import { describeError, missingVectorLines } from "./errors.js";
import type { ErrorBody, VerificationResult } from "./types.js";
import { button, el, errorBox, textInput } from "./ui.js";

const MAX_UPLOAD_BYTES = 1024 * 1024;

function readFileText(file: File): Promise<string> {
  if (typeof file.text === "function") return file.text();
  return new Promise((resolve, reject) => {
    const reader = new FileReader();
    reader.onload = () => resolve(String(reader.result));
    reader.onerror = () => reject(reader.error ?? new Error("file read failed"));
    reader.readAsText(file);
  });
}

export class ExpertScreen {
  modelText = "";
  modelName = "";
  formula = "";
  private result: VerificationResult | null = null;
  private fileError: string | null = null;
  private formulaError: ErrorBody | null = null;
  private modelError: ErrorBody | null = null;
  private queue: Promise<void> = Promise.resolve();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  settle(): Promise<void> {
    return this.queue;
  }

  private run(fn: () => void | Promise<void>): void {
    this.queue = this.queue.then(async () => {
      try {
        await fn();
      } catch (err) {
        this.fileError = `Unexpected problem: ${err instanceof Error ? err.message : String(err)}`;
        this.render();
      }
    });
  }

  /** Take one chosen file; oversized files are refused before any upload. */
  handleFile(file: File): Promise<void> {
    this.run(async () => {
      this.fileError = null;
      this.modelError = null;
      this.result = null;
      if (file.size > MAX_UPLOAD_BYTES) {
        this.fileError = `${file.name} is ${file.size} bytes; the limit is ${MAX_UPLOAD_BYTES} (1 MiB).`;
        this.modelText = "";
        this.modelName = "";
      } else {
        this.modelText = await readFileText(file);
        this.modelName = file.name;
      }
      this.render();
    });
    return this.settle();
  }

  verify(): Promise<void> {
    this.run(async () => {
      this.formulaError = null;
      this.modelError = null;
      this.fileError = null;
      this.result = null;
      if (!this.modelText) {
        this.fileError = "Choose a model file first.";
        this.render();
        return;
      }
      try {
        await this.api.parseCheck(this.formula);
      } catch (err) {
        if (!(err instanceof ServiceError)) throw err;
        this.formulaError = err.body;
        this.render();
        return;
      }
      try {
        this.result = await this.api.verify(this.modelText, this.formula);
      } catch (err) {
        if (!(err instanceof ServiceError)) throw err;
        // formula already parsed, so this one belongs to the model text
        this.modelError = err.body;
      }
      this.render();
    });
    return this.settle();
  }

  render(): void {
    this.root.textContent = "";
    const section = el("section", { class: "screen", "data-screen": "Expert" }, [
      el("h2", {}, ["Expert verify"]),
      el("p", { class: "question" }, [
        "Upload a model file, write a property, and verify it in one step.",
      ]),
    ]);

    const fileInput = el("input", { type: "file", class: "model-file" });
    fileInput.addEventListener("change", () => {
      const file = fileInput.files && fileInput.files[0];
      if (file) void this.handleFile(file);
    });
    section.appendChild(el("div", { class: "file-row" }, [fileInput]));
    if (this.modelName) {
      section.appendChild(
        el("p", { class: "file-name" }, [`Loaded ${this.modelName} (${this.modelText.length} bytes)`]),
      );
    }
    if (this.fileError) {
      section.appendChild(errorBox(this.fileError, []));
    }

    if (this.modelText) {
      section.appendChild(this.renderModelPane());
    }

    const input = textInput(this.formula, {
      class: "formula-input",
      placeholder: "<A0> F goal",
      spellcheck: "false",
    });
    input.addEventListener("input", () => {
      this.formula = input.value;
    });
    section.appendChild(el("div", { class: "formula-row" }, [input]));
    if (this.formulaError) {
      const rendering = describeError(this.formulaError);
      section.appendChild(errorBox(rendering.headline, rendering.details));
    }

    section.appendChild(button("Verify", "btn-verify", () => void this.verify()));

    if (this.result) {
      section.appendChild(this.renderResult(this.result));
    }
    this.root.appendChild(section);
  }

  /** The uploaded text with any error line highlighted and column marked. */
  private renderModelPane(): HTMLElement {
    const pane = el("div", { class: "model-pane" });
    const badLines = new Map<number, string>();
    if (this.modelError) {
      if (this.modelError.line !== undefined) {
        badLines.set(this.modelError.line, this.modelError.message);
      }
      for (const v of this.modelError.violations ?? []) {
        if (v.line !== null && v.line !== undefined) {
          badLines.set(v.line, `${v.invariant}: ${v.message}`);
        }
      }
    }
    const pre = el("pre", { class: "model-text" });
    this.modelText.split("\n").forEach((text, i) => {
      const lineNo = i + 1;
      const line = el(
        "span",
        {
          class: badLines.has(lineNo) ? "model-line bad-line" : "model-line",
          "data-line": String(lineNo),
        },
        [`${String(lineNo).padStart(3)}  ${text}\n`],
      );
      pre.appendChild(line);
      if (
        this.modelError &&
        this.modelError.line === lineNo &&
        this.modelError.column !== undefined
      ) {
        pre.appendChild(
          el("span", { class: "column-caret" }, [
            " ".repeat(5 + Math.max(this.modelError.column - 1, 0)) + "^\n",
          ]),
        );
      }
    });
    pane.appendChild(pre);
    if (this.modelError) {
      const rendering = describeError(this.modelError);
      pane.appendChild(
        errorBox(rendering.headline, [
          ...rendering.details,
          ...missingVectorLines(this.modelError),
        ]),
      );
    }
    return pane;
  }

  private renderResult(result: VerificationResult): HTMLElement {
    const box = el("div", { class: "expert-result" });
    box.appendChild(
      el("div", { class: result.overall ? "badge badge-true" : "badge badge-false" }, [
        result.overall ? "satisfied" : "not satisfied",
      ]),
    );
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
    box.appendChild(table);
    const note =
      result.trace.fallback_applied && result.trace.note ? ` (${result.trace.note})` : "";
    box.appendChild(el("p", { class: "method-line" }, [`method: ${result.method}${note}`]));
    return box;
  }
}
