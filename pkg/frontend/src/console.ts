// The DM-Wizard console: registry-driven button grid, slot dialogs, and
// the two live chat panes, wired to the session server.  At most one
// slot dialog is open at a time; pane content comes only from server
// events, and sent text only from registry templates plus slot fills.

import { SlotDialog } from "./dialog.js";
import { ButtonGrid, emptyState, loadFailureBanner } from "./grid.js";
import { ChatPanes } from "./panes.js";
import { hasSlots, parseSlots } from "./slots.js";
import type { ButtonDoc, RegistryDocument } from "./types.js";
import { SocketFactory, WireClient } from "./wire.js";

export interface ConsoleOptions {
  registryUrl?: string;
  registry?: RegistryDocument;
  wsUrl: string;
  socketFactory?: SocketFactory;
  reconnectDelayMs?: number;
  participantLabel?: string;
  phase?: string;
}

export class WizardConsole {
  readonly root: HTMLElement;
  readonly wire: WireClient;
  panes!: ChatPanes;
  grid: ButtonGrid | null = null;
  dialog: SlotDialog | null = null;
  status = "disconnected";
  lastError = "";

  private readonly opts: ConsoleOptions;
  private readonly gridHost: HTMLElement;
  private readonly dialogHost: HTMLElement;
  private readonly statusEl: HTMLElement;

  constructor(root: HTMLElement, opts: ConsoleOptions) {
    this.root = root;
    this.opts = opts;
    this.statusEl = document.createElement("div");
    this.statusEl.className = "woz-status";
    this.gridHost = document.createElement("div");
    this.dialogHost = document.createElement("div");
    const paneHost = document.createElement("div");
    paneHost.className = "woz-panes";
    root.append(this.statusEl, this.gridHost, this.dialogHost, paneHost);
    this.panes = new ChatPanes(paneHost);

    this.wire = new WireClient(
      {
        url: opts.wsUrl,
        socketFactory: opts.socketFactory,
        reconnectDelayMs: opts.reconnectDelayMs,
        participantLabel: opts.participantLabel,
        phase: opts.phase,
      },
      {
        onEvent: (event) => this.panes.append(event),
        onError: (code, message) => {
          this.lastError = `${code}: ${message}`;
          this.statusEl.textContent = this.lastError;
        },
        onStatus: (status) => {
          this.status = status;
          this.statusEl.textContent = status;
          this.statusEl.classList.toggle(
            "reconnecting", status === "reconnecting");
        },
      },
    );
  }

  async init(): Promise<void> {
    let doc = this.opts.registry;
    if (!doc) {
      try {
        const resp = await fetch(this.opts.registryUrl ?? "/registry");
        if (!resp.ok) throw new Error(`HTTP ${resp.status}`);
        doc = (await resp.json()) as RegistryDocument;
      } catch (err) {
        this.gridHost.append(loadFailureBanner(String(err)));
        return;
      }
    }
    if (!doc.buttons.length) {
      this.gridHost.append(emptyState());
    } else {
      this.grid = new ButtonGrid(doc, {
        onClick: (button) => this.handleClick(button),
      });
      this.gridHost.append(this.grid.element);
    }
    this.wire.connect();
  }

  handleClick(button: ButtonDoc): void {
    if (this.dialog) return; // at most one dialog open
    if (!hasSlots(button.text)) {
      this.wire.press(button.id, {});
      return;
    }
    const dialog = new SlotDialog(button, parseSlots(button.text), {
      onConfirm: (bindings) => {
        this.wire.press(button.id, bindings);
        this.closeDialog();
      },
      onCancel: () => this.closeDialog(),
    });
    this.dialog = dialog;
    this.dialogHost.append(dialog.element);
    dialog.focusFirst();
  }

  private closeDialog(): void {
    this.dialog?.element.remove();
    this.dialog = null;
  }
}
