// Slot pop-up: one text input per slot, labeled by name and kind.
// Confirm validates every fill and hands the bindings back; cancel sends
// nothing.  The first input is pre-focused and Enter submits.

import { Slot, validateFill } from "./slots.js";
import type { ButtonDoc } from "./types.js";

export interface DialogCallbacks {
  onConfirm: (bindings: Record<string, string>) => void;
  onCancel: () => void;
}

export class SlotDialog {
  readonly element: HTMLElement;
  private readonly inputs = new Map<string, HTMLInputElement>();
  private readonly errorEl: HTMLElement;
  private readonly slots: Slot[];
  private readonly callbacks: DialogCallbacks;

  constructor(button: ButtonDoc, slots: Slot[], callbacks: DialogCallbacks) {
    this.slots = slots;
    this.callbacks = callbacks;
    this.element = document.createElement("div");
    this.element.className = "woz-dialog";

    const title = document.createElement("h3");
    title.textContent = button.text;
    this.element.append(title);

    const form = document.createElement("form");
    for (const slot of slots) {
      const label = document.createElement("label");
      label.textContent = `${slot.name} (${slot.kind})`;
      const input = document.createElement("input");
      input.name = slot.name;
      input.dataset.kind = slot.kind;
      label.append(input);
      form.append(label);
      this.inputs.set(slot.name, input);
    }
    this.errorEl = document.createElement("p");
    this.errorEl.className = "woz-dialog-error";

    const confirm = document.createElement("button");
    confirm.type = "submit";
    confirm.textContent = "Send";
    const cancel = document.createElement("button");
    cancel.type = "button";
    cancel.textContent = "Cancel";
    cancel.addEventListener("click", () => this.callbacks.onCancel());
    form.append(this.errorEl, confirm, cancel);
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      this.confirm();
    });
    this.element.append(form);
  }

  focusFirst(): void {
    const first = this.slots[0];
    if (first) this.inputs.get(first.name)?.focus();
  }

  setValue(name: string, value: string): void {
    const input = this.inputs.get(name);
    if (input) input.value = value;
  }

  confirm(): void {
    const bindings: Record<string, string> = {};
    for (const slot of this.slots) {
      const value = this.inputs.get(slot.name)!.value;
      const error = validateFill(slot.kind, value);
      if (error) {
        this.errorEl.textContent = `${slot.name}: ${error}`;
        return;
      }
      bindings[slot.name] = value;
    }
    this.errorEl.textContent = "";
    this.callbacks.onConfirm(bindings);
  }

  get errorText(): string {
    return this.errorEl.textContent ?? "";
  }
}
