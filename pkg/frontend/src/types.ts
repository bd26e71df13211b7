// Shapes shared with the session server: the inventory document served
// at /registry and the newline-terminated JSON records on the /ws channel.

export type Recipient = "PARTICIPANT" | "RN_WIZARD";

export interface ButtonDoc {
  id: string;
  label: string;
  text: string;
  recipient: Recipient;
  function: string;
  paired_feedback?: string[];
  semantics?: string[];
}

export interface RowDoc {
  label: string;
  buttons: string[];
}

export interface TabDoc {
  id: string;
  title: string;
  rows: RowDoc[];
}

export interface RegistryDocument {
  buttons: ButtonDoc[];
  tabs: TabDoc[];
}

export type Channel = "PARTICIPANT_CHAT" | "RN_CHAT";

export interface EventRecord {
  session_id: string;
  seq: number;
  ts_ms: number;
  sender: string;
  recipient: string;
  channel: Channel;
  text: string;
  origin: string;
  button_id?: string;
  bindings?: Record<string, string>;
  function?: string;
}

export type WireType =
  | "open"
  | "utterance"
  | "press"
  | "note"
  | "event"
  | "error"
  | "close";

export interface WireRecord {
  type: WireType;
  session: string | null;
  payload: Record<string, unknown>;
}
