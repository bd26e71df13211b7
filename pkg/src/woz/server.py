"""Session server: registry snapshot endpoint plus the wire API.

The wire API is a bidirectional channel (WebSocket at ``/ws``) carrying
newline-terminated JSON records ``{type, session, payload}`` with types
``open``, ``utterance``, ``press``, ``note``, ``event``, ``error`` and
``close``.  Every accepted operation is echoed to all connections
attached to the session as an ``event`` record, in seq order.  A client
may re-attach with ``resume_from`` to replay events it missed.
"""

from __future__ import annotations

import json
import threading
from typing import Optional

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .errors import WozError
from .inventory import Registry
from .router import DialogueEvent, SessionStore


def _record(type_: str, session: Optional[str] = None, payload=None) -> str:
    rec = {"type": type_, "session": session, "payload": payload or {}}
    return json.dumps(rec, ensure_ascii=False) + "\n"


class ConnectionHub:
    """Tracks which live connections are attached to which session."""

    def __init__(self):
        self._lock = threading.Lock()
        self._subscribers: dict[str, list] = {}

    def attach(self, session_id: str, sink):
        with self._lock:
            self._subscribers.setdefault(session_id, []).append(sink)

    def detach(self, sink):
        with self._lock:
            for sinks in self._subscribers.values():
                if sink in sinks:
                    sinks.remove(sink)

    def sinks(self, session_id: str) -> list:
        with self._lock:
            return list(self._subscribers.get(session_id, []))


def create_app(store: SessionStore, registry: Registry) -> FastAPI:
    app = FastAPI(title="woz session server")
    hub = ConnectionHub()

    @app.get("/registry")
    def get_registry():
        return registry.document

    @app.get("/health")
    def health():
        return {"status": "ok"}

    async def _broadcast(event: DialogueEvent):
        line = _record("event", event.session_id, event.to_record())
        for ws in hub.sinks(event.session_id):
            try:
                await ws.send_text(line)
            except Exception:
                hub.detach(ws)

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        try:
            while True:
                raw = await ws.receive_text()
                for line in raw.splitlines():
                    if line.strip():
                        await _handle(ws, line)
        except WebSocketDisconnect:
            pass
        finally:
            hub.detach(ws)

    async def _handle(ws: WebSocket, line: str):
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            await ws.send_text(_record("error", None, {"code": "ParseError",
                                                       "message": str(exc)}))
            return
        rtype = rec.get("type")
        session_id = rec.get("session")
        payload = rec.get("payload") or {}
        try:
            if rtype == "open":
                attach_id = payload.get("attach")
                if attach_id:
                    session = store.get(attach_id)
                    hub.attach(session.id, ws)
                    resume_from = payload.get("resume_from", None)
                    if resume_from is not None:
                        for ev in store.export_transcript(session.id):
                            if ev.seq > resume_from:
                                await ws.send_text(_record(
                                    "event", session.id, ev.to_record()))
                else:
                    session = store.open_session(
                        payload.get("participant_label", "anon"),
                        payload.get("phase", "TRAINING"))
                    hub.attach(session.id, ws)
                await ws.send_text(_record("open", session.id, {
                    "participant_label": session.participant_label,
                    "phase": session.phase.value,
                    "time_budget_s": session.time_budget_s,
                }))
            elif rtype == "utterance":
                event = store.ingest_utterance(session_id, payload.get("text", ""))
                await _broadcast(event)
            elif rtype == "press":
                event = store.press_button(session_id, payload.get("button_id"),
                                           payload.get("bindings") or {})
                await _broadcast(event)
            elif rtype == "note":
                event = store.rn_note(session_id, payload.get("text", ""))
                await _broadcast(event)
            elif rtype == "close":
                store.close_session(session_id)
                await ws.send_text(_record("close", session_id))
            else:
                await ws.send_text(_record("error", session_id, {
                    "code": "UnknownType", "message": f"unknown type {rtype!r}"}))
        except WozError as exc:
            await ws.send_text(_record("error", session_id, {
                "code": type(exc).__name__, "message": str(exc)}))

    return app
