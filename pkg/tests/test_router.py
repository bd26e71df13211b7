import io
import random
import threading

import pytest

from woz.errors import EmptyUtterance, SessionClosed, UnknownButton
from woz.router import (Channel, Origin, Phase, Role, SessionStore,
                        event_line, read_transcript, write_transcript)


@pytest.fixture
def store(reference_registry):
    return SessionStore(registry=reference_registry)


class TestSessions:
    def test_training_has_no_budget(self, store):
        s = store.open_session("P01", "TRAINING")
        assert s.time_budget_s is None
        assert s.seq_counter == 0

    def test_main_budget_1200(self, store):
        assert store.open_session("P01", "MAIN1").time_budget_s == 1200
        assert store.open_session("P01", Phase.MAIN2).time_budget_s == 1200

    def test_reopen_distinct_ids(self, store):
        a = store.open_session("P01", "TRAINING")
        b = store.open_session("P01", "TRAINING")
        assert a.id != b.id

    def test_close_then_reject(self, store):
        s = store.open_session("P01", "TRAINING")
        store.close_session(s.id)
        with pytest.raises(SessionClosed):
            store.ingest_utterance(s.id, "hello")
        with pytest.raises(SessionClosed):
            store.close_session(s.id)
        assert store.export_transcript(s.id) == []


class TestIngest:
    def test_first_event_seq_1(self, store):
        s = store.open_session("P01", "TRAINING")
        ev = store.ingest_utterance(s.id, "move forward")
        assert ev.seq == 1
        assert ev.sender is Role.PARTICIPANT
        assert ev.recipient is Role.DM_WIZARD
        assert ev.origin is Origin.INGESTED_UTTERANCE

    def test_empty_rejected_appends_nothing(self, store):
        s = store.open_session("P01", "TRAINING")
        with pytest.raises(EmptyUtterance):
            store.ingest_utterance(s.id, "")
        assert store.export_transcript(s.id) == []

    def test_ordering(self, store):
        s = store.open_session("P01", "TRAINING")
        a = store.ingest_utterance(s.id, "one")
        b = store.ingest_utterance(s.id, "two")
        assert (a.seq, b.seq) == (1, 2)
        assert a.ts_ms <= b.ts_ms


class TestPress:
    def test_clarification_to_participant(self, store):
        s = store.open_session("P01", "TRAINING")
        ev = store.press_button(s.id, "clarify-underspecified-forward")
        assert ev.channel is Channel.PARTICIPANT_CHAT
        assert ev.text == ("I'm not sure where or when to stop moving forward. "
                           "You can tell me to move a certain distance or to "
                           "move to an object.")

    def test_done_tagged_completion(self, store):
        from woz.inventory import MessageFunction
        s = store.open_session("P01", "TRAINING")
        ev = store.press_button(s.id, "complete-done")
        assert ev.channel is Channel.PARTICIPANT_CHAT
        assert ev.function is MessageFunction.COMPLETION

    def test_slotted_rn_instruction(self, store):
        s = store.open_session("P01", "TRAINING")
        ev = store.press_button(s.id, "rn-move-forward-dist", {"D": "3 feet"})
        assert ev.channel is Channel.RN_CHAT
        assert ev.text == "move forward 3 feet"

    def test_unknown_button(self, store):
        s = store.open_session("P01", "TRAINING")
        with pytest.raises(UnknownButton):
            store.press_button(s.id, "ghost")
        assert store.export_transcript(s.id) == []

    def test_single_recipient(self, store):
        s = store.open_session("P01", "TRAINING")
        rn = store.press_button(s.id, "rn-stop")
        part = store.press_button(s.id, "ack-ok")
        assert rn.channel is Channel.RN_CHAT and part.channel is Channel.PARTICIPANT_CHAT

    def test_deterministic_text_across_sessions(self, store):
        a = store.open_session("P01", "TRAINING")
        b = store.open_session("P02", "MAIN1")
        ev_a = store.press_button(a.id, "rn-turn-left-90")
        ev_b = store.press_button(b.id, "rn-turn-left-90")
        assert ev_a.text == ev_b.text == "turn left 90 degrees"


class TestRnNote:
    def test_note(self, store):
        s = store.open_session("P01", "TRAINING")
        ev = store.rn_note(s.id, "complete")
        assert ev.sender is Role.RN_WIZARD
        assert ev.recipient is Role.DM_WIZARD

    def test_empty_note(self, store):
        s = store.open_session("P01", "TRAINING")
        with pytest.raises(EmptyUtterance):
            store.rn_note(s.id, " ")


class TestTranscriptIO:
    def _sample(self, store):
        s = store.open_session("P01", "MAIN1")
        store.ingest_utterance(s.id, "robot go forward")
        store.press_button(s.id, "clarify-underspecified-forward")
        store.press_button(s.id, "rn-move-forward-dist", {"D": "1 foot"})
        store.press_button(s.id, "complete-done")
        store.rn_note(s.id, "complete")
        return s

    def test_roundtrip_identity(self, store):
        s = self._sample(store)
        events = store.export_transcript(s.id)
        buf = io.StringIO()
        write_transcript(events, buf)
        assert read_transcript(io.StringIO(buf.getvalue())) == events

    def test_reserialization_byte_identical(self, store):
        s = self._sample(store)
        events = store.export_transcript(s.id)
        lines = [event_line(e) for e in events]
        reread = read_transcript(iter(lines))
        assert [event_line(e) for e in reread] == lines

    def test_log_dir_appends(self, reference_registry, tmp_path):
        store = SessionStore(registry=reference_registry, log_dir=tmp_path)
        s = self._sample(store)
        logged = read_transcript(tmp_path / f"{s.id}.jsonl")
        assert logged == store.export_transcript(s.id)

    def test_export_stable(self, store):
        s = self._sample(store)
        assert store.export_transcript(s.id) == store.export_transcript(s.id)


class TestConcurrency:
    def test_parallel_presses_keep_fifo(self, store):
        s = store.open_session("P01", "TRAINING")
        n_threads, per_thread = 8, 50

        def work():
            for _ in range(per_thread):
                store.press_button(s.id, "ack-ok")

        threads = [threading.Thread(target=work) for _ in range(n_threads)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        events = store.export_transcript(s.id)
        assert [e.seq for e in events] == list(range(1, n_threads * per_thread + 1))
        ts = [e.ts_ms for e in events]
        assert ts == sorted(ts)
