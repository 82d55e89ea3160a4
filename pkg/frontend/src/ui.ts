/** Small DOM construction helpers shared by the screens. */

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    if (k === "class") node.className = v;
    else node.setAttribute(k, v);
  }
  for (const child of children) {
    node.appendChild(typeof child === "string" ? document.createTextNode(child) : child);
  }
  return node;
}

export function button(label: string, cls: string, onClick: () => void): HTMLButtonElement {
  const b = el("button", { class: cls, type: "button" }, [label]);
  b.addEventListener("click", onClick);
  return b;
}

export function textInput(
  value: string,
  attrs: Record<string, string> = {},
): HTMLInputElement {
  const input = el("input", { type: "text", ...attrs });
  input.value = value;
  return input;
}

/** The per-screen inline error box: headline plus detail lines. */
export function errorBox(headline: string, details: string[]): HTMLElement {
  const box = el("div", { class: "inline-error", role: "alert" }, [
    el("p", { class: "inline-error-headline" }, [headline]),
  ]);
  if (details.length) {
    box.appendChild(
      el(
        "ul",
        { class: "inline-error-details" },
        details.map((d) => el("li", {}, [d])),
      ),
    );
  }
  return box;
}
