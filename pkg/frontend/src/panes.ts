// Dual chat panes: one for the participant channel, one for the RN
// channel.  Panes are strictly append-only in seq order; the wire client
// already deduplicates, this layer enforces the ordering invariant.

import type { Channel, EventRecord } from "./types.js";

export class ChatPanes {
  readonly participantPane: HTMLElement;
  readonly rnPane: HTMLElement;
  private lastSeq = 0;

  constructor(root: HTMLElement) {
    this.participantPane = document.createElement("ul");
    this.participantPane.className = "woz-pane woz-pane-participant";
    this.rnPane = document.createElement("ul");
    this.rnPane.className = "woz-pane woz-pane-rn";
    for (const [title, pane] of [
      ["Participant", this.participantPane],
      ["RN", this.rnPane],
    ] as const) {
      const box = document.createElement("section");
      const heading = document.createElement("h2");
      heading.textContent = title;
      box.append(heading, pane);
      root.append(box);
    }
  }

  append(event: EventRecord): void {
    if (event.seq <= this.lastSeq) {
      throw new Error(
        `out-of-order event: seq ${event.seq} after ${this.lastSeq}`,
      );
    }
    this.lastSeq = event.seq;
    const item = document.createElement("li");
    item.className = "woz-line";
    if (event.sender === "PARTICIPANT") item.classList.add("inbound");
    item.dataset.seq = String(event.seq);
    const ts = document.createElement("time");
    ts.textContent = new Date(event.ts_ms).toISOString();
    const who = document.createElement("span");
    who.className = "woz-sender";
    who.textContent = event.sender;
    const text = document.createElement("span");
    text.className = "woz-text";
    text.textContent = event.text;
    item.append(ts, who, text);
    this.paneFor(event.channel).append(item);
  }

  lines(channel: Channel): string[] {
    return Array.from(
      this.paneFor(channel).querySelectorAll(".woz-text"),
      (el) => el.textContent ?? "",
    );
  }

  seqs(channel: Channel): number[] {
    return Array.from(
      this.paneFor(channel).querySelectorAll<HTMLElement>(".woz-line"),
      (el) => Number(el.dataset.seq),
    );
  }

  private paneFor(channel: Channel): HTMLElement {
    return channel === "PARTICIPANT_CHAT" ? this.participantPane : this.rnPane;
  }
}
