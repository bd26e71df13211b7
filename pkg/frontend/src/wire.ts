// Client side of the wire API: newline-terminated JSON records
// {type, session, payload} over a WebSocket.  On channel loss the client
// reconnects and re-attaches with resume_from = last seen seq, so the
// event stream continues with no duplicated or missing events.

import type { EventRecord, WireRecord } from "./types.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: string }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface WireHandlers {
  onEvent?: (event: EventRecord) => void;
  onOpen?: (sessionId: string, payload: Record<string, unknown>) => void;
  onError?: (code: string, message: string) => void;
  onStatus?: (status: "connected" | "reconnecting" | "closed") => void;
}

export interface WireOptions {
  url: string;
  socketFactory?: SocketFactory;
  reconnectDelayMs?: number;
  participantLabel?: string;
  phase?: string;
}

export class WireClient {
  sessionId: string | null = null;
  lastSeq = 0;

  private socket: SocketLike | null = null;
  private stopped = false;
  private readonly opts: WireOptions;
  private readonly handlers: WireHandlers;

  constructor(opts: WireOptions, handlers: WireHandlers = {}) {
    this.opts = opts;
    this.handlers = handlers;
  }

  connect(): void {
    this.stopped = false;
    const factory =
      this.opts.socketFactory ?? ((url) => new WebSocket(url) as SocketLike);
    const socket = factory(this.opts.url);
    this.socket = socket;
    socket.onopen = () => {
      this.handlers.onStatus?.("connected");
      if (this.sessionId) {
        this.send("open", null, {
          attach: this.sessionId,
          resume_from: this.lastSeq,
        });
      } else {
        this.send("open", null, {
          participant_label: this.opts.participantLabel ?? "anon",
          phase: this.opts.phase ?? "TRAINING",
        });
      }
    };
    socket.onmessage = (ev) => {
      for (const line of ev.data.split("\n")) {
        if (line.trim()) this.dispatch(JSON.parse(line) as WireRecord);
      }
    };
    socket.onclose = () => {
      if (this.stopped) return;
      this.handlers.onStatus?.("reconnecting");
      setTimeout(() => {
        if (!this.stopped) this.connect();
      }, this.opts.reconnectDelayMs ?? 500);
    };
  }

  stop(): void {
    this.stopped = true;
    this.socket?.close();
    this.handlers.onStatus?.("closed");
  }

  press(buttonId: string, bindings: Record<string, string>): void {
    this.send("press", this.sessionId, { button_id: buttonId, bindings });
  }

  utterance(text: string): void {
    this.send("utterance", this.sessionId, { text });
  }

  note(text: string): void {
    this.send("note", this.sessionId, { text });
  }

  private send(
    type: WireRecord["type"],
    session: string | null,
    payload: Record<string, unknown>,
  ): void {
    this.socket?.send(JSON.stringify({ type, session, payload }) + "\n");
  }

  private dispatch(rec: WireRecord): void {
    switch (rec.type) {
      case "open":
        this.sessionId = rec.session;
        this.handlers.onOpen?.(rec.session as string, rec.payload);
        break;
      case "event": {
        const event = rec.payload as unknown as EventRecord;
        // replays may overlap the live stream; seq is the dedupe key
        if (event.seq <= this.lastSeq) return;
        this.lastSeq = event.seq;
        this.handlers.onEvent?.(event);
        break;
      }
      case "error":
        this.handlers.onError?.(
          String(rec.payload.code ?? "Error"),
          String(rec.payload.message ?? ""),
        );
        break;
      case "close":
        break;
      default:
        break;
    }
  }
}
