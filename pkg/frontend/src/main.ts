/** Entry point: load the runtime config, mount the guided wizard and the
 * expert tab. */

import { ApiClient } from "./api.js";
import { ExpertScreen } from "./expert.js";
import { App } from "./screens.js";
import { button, el } from "./ui.js";

interface RuntimeConfig {
  baseUrl: string;
}

async function loadConfig(): Promise<RuntimeConfig> {
  try {
    const response = await fetch("./config.json");
    if (!response.ok) return { baseUrl: "" };
    const parsed = (await response.json()) as Partial<RuntimeConfig>;
    return { baseUrl: typeof parsed.baseUrl === "string" ? parsed.baseUrl : "" };
  } catch {
    return { baseUrl: "" };
  }
}

export async function mount(root: HTMLElement): Promise<void> {
  const config = await loadConfig();
  const api = new ApiClient(config.baseUrl);

  const guidedPane = el("div", { class: "pane" });
  const expertPane = el("div", { class: "pane", hidden: "" });
  const wizard = new App(guidedPane, api);
  const expert = new ExpertScreen(expertPane, api);

  const tabs = el("nav", { class: "tabs" });
  const guidedTab = button("Guided", "tab tab-guided active", () => {
    guidedPane.hidden = false;
    expertPane.hidden = true;
    guidedTab.classList.add("active");
    expertTab.classList.remove("active");
  });
  const expertTab = button("Expert", "tab tab-expert", () => {
    guidedPane.hidden = true;
    expertPane.hidden = false;
    expertTab.classList.add("active");
    guidedTab.classList.remove("active");
  });
  tabs.appendChild(guidedTab);
  tabs.appendChild(expertTab);

  root.appendChild(el("header", {}, [el("h1", {}, ["Model wizard"]), tabs]));
  root.appendChild(guidedPane);
  root.appendChild(expertPane);

  wizard.render();
  expert.render();
}

const rootEl = typeof document !== "undefined" ? document.getElementById("app") : null;
if (rootEl) {
  void mount(rootEl);
}
