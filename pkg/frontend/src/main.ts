// Browser entry point: mount the console against the serving host.

import { WizardConsole } from "./console.js";

const host = document.getElementById("app");
if (host) {
  const scheme = location.protocol === "https:" ? "wss" : "ws";
  const console_ = new WizardConsole(host, {
    registryUrl: "/registry",
    wsUrl: `${scheme}://${location.host}/ws`,
  });
  void console_.init();
}
