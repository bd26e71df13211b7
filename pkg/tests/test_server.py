import json

import pytest
from fastapi.testclient import TestClient

from woz.router import SessionStore
from woz.server import create_app


@pytest.fixture
def client(reference_registry):
    store = SessionStore(registry=reference_registry)
    app = create_app(store, reference_registry)
    return TestClient(app)


def send(ws, rec):
    ws.send_text(json.dumps(rec) + "\n")


def recv(ws):
    return json.loads(ws.receive_text())


class TestHttp:
    def test_registry_endpoint(self, client, reference_doc):
        resp = client.get("/registry")
        assert resp.status_code == 200
        body = resp.json()
        assert len(body["buttons"]) == len(reference_doc["buttons"])
        assert len(body["tabs"]) == 5

    def test_health(self, client):
        assert client.get("/health").json() == {"status": "ok"}


class TestWire:
    def test_open_and_press_flow(self, client):
        with client.websocket_connect("/ws") as ws:
            send(ws, {"type": "open",
                      "payload": {"participant_label": "P01", "phase": "MAIN1"}})
            opened = recv(ws)
            assert opened["type"] == "open"
            assert opened["payload"]["time_budget_s"] == 1200
            sid = opened["session"]

            send(ws, {"type": "utterance", "session": sid,
                      "payload": {"text": "robot go forward"}})
            ev = recv(ws)
            assert ev["type"] == "event"
            assert ev["payload"]["seq"] == 1
            assert ev["payload"]["origin"] == "INGESTED_UTTERANCE"

            send(ws, {"type": "press", "session": sid,
                      "payload": {"button_id": "rn-move-forward-dist",
                                  "bindings": {"D": "3 feet"}}})
            ev = recv(ws)
            assert ev["payload"]["text"] == "move forward 3 feet"
            assert ev["payload"]["channel"] == "RN_CHAT"

            send(ws, {"type": "note", "session": sid,
                      "payload": {"text": "complete"}})
            assert recv(ws)["payload"]["sender"] == "RN_WIZARD"

            send(ws, {"type": "close", "session": sid})
            assert recv(ws)["type"] == "close"

    def test_error_frames(self, client):
        with client.websocket_connect("/ws") as ws:
            send(ws, {"type": "open", "payload": {"participant_label": "P"}})
            sid = recv(ws)["session"]
            send(ws, {"type": "press", "session": sid,
                      "payload": {"button_id": "ghost"}})
            err = recv(ws)
            assert err["type"] == "error"
            assert err["payload"]["code"] == "UnknownButton"
            send(ws, {"type": "utterance", "session": sid,
                      "payload": {"text": ""}})
            assert recv(ws)["payload"]["code"] == "EmptyUtterance"

    def test_resume_replays_missed_events(self, client):
        with client.websocket_connect("/ws") as ws:
            send(ws, {"type": "open", "payload": {"participant_label": "P"}})
            sid = recv(ws)["session"]
            for text in ("one", "two", "three"):
                send(ws, {"type": "utterance", "session": sid,
                          "payload": {"text": text}})
                recv(ws)
        # reconnect and resume from seq 1: events 2 and 3 replayed once
        with client.websocket_connect("/ws") as ws:
            send(ws, {"type": "open",
                      "payload": {"attach": sid, "resume_from": 1}})
            a, b, opened = recv(ws), recv(ws), recv(ws)
            assert [a["payload"]["seq"], b["payload"]["seq"]] == [2, 3]
            assert opened["type"] == "open"

    def test_frames_are_newline_terminated(self, client):
        with client.websocket_connect("/ws") as ws:
            ws.send_text(json.dumps(
                {"type": "open", "payload": {"participant_label": "P"}}) + "\n")
            raw = ws.receive_text()
            assert raw.endswith("\n")
            assert json.loads(raw)["type"] == "open"
