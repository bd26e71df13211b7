// Tabbed button grid rendered from the registry document.  Each tab is a
// panel of labeled rows; a button is red when it sends to the RN-Wizard
// and blue when it sends to the participant, and its hover text is the
// full template.

import type { ButtonDoc, RegistryDocument } from "./types.js";

export function colorClass(recipient: ButtonDoc["recipient"]): string {
  return recipient === "RN_WIZARD" ? "red" : "blue";
}

export interface GridOptions {
  onClick: (button: ButtonDoc) => void;
  // type-to-filter box; plumbing only, hidden unless enabled
  filterBox?: boolean;
}

export class ButtonGrid {
  readonly element: HTMLElement;
  private readonly panels: HTMLElement[] = [];
  private readonly headers: HTMLButtonElement[] = [];
  activeTab = 0;

  constructor(doc: RegistryDocument, opts: GridOptions) {
    const byId = new Map(doc.buttons.map((b) => [b.id, b]));
    this.element = document.createElement("div");
    this.element.className = "woz-grid";

    const tabBar = document.createElement("nav");
    tabBar.className = "woz-tabbar";
    this.element.append(tabBar);

    if (opts.filterBox) {
      const filter = document.createElement("input");
      filter.className = "woz-filter";
      filter.placeholder = "filter buttons";
      filter.addEventListener("input", () => this.applyFilter(filter.value));
      this.element.append(filter);
    }

    doc.tabs.forEach((tab, index) => {
      const header = document.createElement("button");
      header.className = "woz-tab-header";
      header.textContent = tab.title;
      header.addEventListener("click", () => this.activate(index));
      tabBar.append(header);
      this.headers.push(header);

      const panel = document.createElement("section");
      panel.className = "woz-tab-panel";
      panel.dataset.tab = tab.id;
      for (const row of tab.rows) {
        const rowEl = document.createElement("div");
        rowEl.className = "woz-row";
        const label = document.createElement("span");
        label.className = "woz-row-label";
        label.textContent = row.label;
        rowEl.append(label);
        for (const buttonId of row.buttons) {
          const button = byId.get(buttonId);
          if (!button) continue;
          rowEl.append(this.renderButton(button, opts));
        }
        panel.append(rowEl);
      }
      this.element.append(panel);
      this.panels.push(panel);
    });
    this.activate(0);
  }

  private renderButton(button: ButtonDoc, opts: GridOptions): HTMLElement {
    const el = document.createElement("button");
    el.className = `woz-btn ${colorClass(button.recipient)}`;
    el.dataset.buttonId = button.id;
    el.textContent = button.label;
    el.title = button.text; // hover reveals the full template
    el.addEventListener("click", () => opts.onClick(button));
    return el;
  }

  activate(index: number): void {
    this.activeTab = index;
    this.panels.forEach((panel, i) => {
      panel.style.display = i === index ? "" : "none";
    });
    this.headers.forEach((header, i) => {
      header.classList.toggle("active", i === index);
    });
  }

  private applyFilter(query: string): void {
    const q = query.trim().toLowerCase();
    for (const el of this.element.querySelectorAll<HTMLElement>(".woz-btn")) {
      const hit = !q || (el.textContent ?? "").toLowerCase().includes(q);
      el.style.display = hit ? "" : "none";
    }
  }
}

export function loadFailureBanner(message: string): HTMLElement {
  const banner = document.createElement("div");
  banner.className = "woz-banner woz-banner-error";
  banner.textContent = `failed to load button inventory: ${message}`;
  return banner;
}

export function emptyState(): HTMLElement {
  const el = document.createElement("div");
  el.className = "woz-empty";
  el.textContent = "no buttons loaded";
  return el;
}
