import { describe, expect, it } from "vitest";

import { ButtonGrid, colorClass, emptyState } from "../src/grid.js";
import type { RegistryDocument } from "../src/types.js";

import registryJson from "./fixtures/registry.json";

const registry = registryJson as unknown as RegistryDocument;

function render(): ButtonGrid {
  return new ButtonGrid(registry, { onClick: () => {} });
}

describe("ButtonGrid", () => {
  it("renders one header and panel per registry tab", () => {
    const grid = render();
    const headers = grid.element.querySelectorAll(".woz-tab-header");
    const panels = grid.element.querySelectorAll(".woz-tab-panel");
    expect(headers.length).toBe(registry.tabs.length);
    expect(panels.length).toBe(registry.tabs.length);
    expect(headers.length).toBe(5);
  });

  it("gives every rendered button the recipient-derived color class", () => {
    const grid = render();
    const byId = new Map(registry.buttons.map((b) => [b.id, b]));
    const rendered = grid.element.querySelectorAll<HTMLElement>(".woz-btn");
    expect(rendered.length).toBeGreaterThan(0);
    for (const el of rendered) {
      const button = byId.get(el.dataset.buttonId!)!;
      expect(el.classList.contains(colorClass(button.recipient))).toBe(true);
      expect(
        el.classList.contains(
          button.recipient === "RN_WIZARD" ? "blue" : "red",
        ),
      ).toBe(false);
    }
  });

  it("renders every placement, including duplicated buttons", () => {
    const grid = render();
    const placements = registry.tabs
      .flatMap((tab) => tab.rows)
      .flatMap((row) => row.buttons);
    const rendered = grid.element.querySelectorAll(".woz-btn");
    expect(rendered.length).toBe(placements.length);
    const doneButtons = grid.element.querySelectorAll(
      '[data-button-id="complete-done"]',
    );
    expect(doneButtons.length).toBeGreaterThan(1);
  });

  it("exposes the full template text on hover", () => {
    const grid = render();
    const el = grid.element.querySelector<HTMLElement>(
      '[data-button-id="desc-i-see"]',
    )!;
    expect(el.title).toBe("I see {OBJ:FREE_TEXT}.");
  });

  it("shows exactly one panel at a time and switches on header click", () => {
    const grid = render();
    const visible = () =>
      Array.from(
        grid.element.querySelectorAll<HTMLElement>(".woz-tab-panel"),
      ).filter((p) => p.style.display !== "none");
    expect(visible().length).toBe(1);
    grid.activate(2);
    expect(visible().length).toBe(1);
    expect(visible()[0].dataset.tab).toBe(registry.tabs[2].id);
  });

  it("renders an empty state for an empty registry", () => {
    expect(emptyState().textContent).toContain("no buttons");
  });
});
