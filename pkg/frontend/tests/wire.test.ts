import { beforeEach, describe, expect, it } from "vitest";

import { WizardConsole } from "../src/console.js";
import type { RegistryDocument } from "../src/types.js";
import { MockServer, tick } from "./mockServer.js";

import registryJson from "./fixtures/registry.json";

const registry = registryJson as unknown as RegistryDocument;

let server: MockServer;
let console_: WizardConsole;

beforeEach(async () => {
  document.body.innerHTML = "<div id='app'></div>";
  server = new MockServer(registry);
  console_ = new WizardConsole(document.getElementById("app")!, {
    registry,
    wsUrl: "ws://test/ws",
    socketFactory: server.connect,
    reconnectDelayMs: 0,
  });
  await console_.init();
  await tick();
});

describe("reconnection", () => {
  it("resumes after a dropped channel with no duplicate or missing seq", async () => {
    const sid = console_.wire.sessionId!;
    console_.handleClick(
      registry.buttons.find((b) => b.id === "complete-done")!,
    );
    console_.wire.note("moving now");

    server.dropAll();
    expect(console_.status).toBe("reconnecting");
    // traffic admitted while this console is offline
    const side = server.connect();
    await tick();
    side.send(
      JSON.stringify({
        type: "utterance",
        session: sid,
        payload: { text: "ok go ahead" },
      }) + "\n",
    );
    side.send(
      JSON.stringify({
        type: "note",
        session: sid,
        payload: { text: "arrived" },
      }) + "\n",
    );

    await tick(); // reconnect timer fires
    await tick(); // socket open + resume replay
    expect(console_.status).toBe("connected");
    expect(console_.wire.sessionId).toBe(sid);

    const participantSeqs = console_.panes.seqs("PARTICIPANT_CHAT");
    const rnSeqs = console_.panes.seqs("RN_CHAT");
    const all = [...participantSeqs, ...rnSeqs].sort((a, b) => a - b);
    expect(all).toEqual([1, 2, 3, 4]); // gapless, no duplicates
    expect(console_.panes.lines("PARTICIPANT_CHAT")).toEqual([
      "done",
      "ok go ahead",
    ]);
    expect(console_.panes.lines("RN_CHAT")).toEqual(["moving now", "arrived"]);
  });

  it("ignores replayed events it already has", async () => {
    const sid = console_.wire.sessionId!;
    console_.handleClick(
      registry.buttons.find((b) => b.id === "complete-done")!,
    );
    server.dropAll();
    await tick();
    await tick();
    expect(console_.wire.sessionId).toBe(sid);
    expect(console_.panes.lines("PARTICIPANT_CHAT")).toEqual(["done"]);
    expect(console_.panes.seqs("PARTICIPANT_CHAT")).toEqual([1]);
  });

  it("stays quiet after an explicit stop", async () => {
    const before = server.sockets.length;
    console_.wire.stop();
    await tick();
    await tick();
    expect(console_.status).toBe("closed");
    expect(server.sockets.length).toBe(before);
  });
});

describe("error records", () => {
  it("surfaces server errors without touching the panes", async () => {
    console_.handleClick({
      id: "no-such-button",
      label: "x",
      text: "x",
      recipient: "PARTICIPANT",
      function: "ACK",
    });
    expect(console_.lastError).toContain("UnknownButton");
    expect(console_.panes.lines("PARTICIPANT_CHAT")).toEqual([]);
  });
});
