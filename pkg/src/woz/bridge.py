"""Bidirectional bridge between wizard-side frames and robot-side topics.

The wizard side speaks a one-line-per-message framing
``MSG <scope> <kind> <percent-encoded body>``; the robot side speaks
``PUB <topic> <percent-encoded k=v pairs joined by &>``.  A declarative
mapping table (a bijection between kinds and topics) decides what is
forwarded; unmapped traffic is counted and dropped, never raised.
"""

from __future__ import annotations

import asyncio
import json
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union
from urllib.parse import quote, unquote

from .errors import ConnectionLost, MappingError, ParseError

DEFAULT_SCOPE = "woz"
BACKOFF_INITIAL_S = 0.5
BACKOFF_CAP_S = 8.0


@dataclass(frozen=True)
class WizardFrame:
    scope: str
    kind: str
    body: str


@dataclass(frozen=True)
class TopicMessage:
    topic: str
    payload: dict[str, str]


@dataclass(frozen=True)
class MappingRule:
    kind: str
    topic: str
    body_field: str = "text"


class MappingTable:
    """Bijective kind <-> topic mapping with a field-extraction spec."""

    def __init__(self, rules: list[MappingRule], scope: str = DEFAULT_SCOPE):
        kinds = [r.kind for r in rules]
        topics = [r.topic for r in rules]
        if len(set(kinds)) != len(kinds):
            raise MappingError("duplicate kind in mapping table")
        if len(set(topics)) != len(topics):
            raise MappingError("duplicate topic in mapping table")
        for r in rules:
            if not r.kind:
                raise MappingError("empty kind")
            if not r.topic.startswith("/"):
                raise MappingError(f"topic '{r.topic}' must begin with '/'")
        self.rules = tuple(rules)
        self.scope = scope
        self._by_kind = {r.kind: r for r in rules}
        self._by_topic = {r.topic: r for r in rules}

    @classmethod
    def load(cls, source: Union[str, Path, list]) -> "MappingTable":
        if isinstance(source, (str, Path)):
            source = json.loads(Path(source).read_text(encoding="utf-8"))
        rules = [MappingRule(kind=e["kind"], topic=e["topic"],
                             body_field=e.get("body_field", "text"))
                 for e in source]
        return cls(rules)


class BridgeStats:
    """Forwarded/dropped counters per direction; safe from both pumps."""

    def __init__(self):
        self._lock = threading.Lock()
        self.to_robot_forwarded = 0
        self.to_robot_dropped = 0
        self.to_wizard_forwarded = 0
        self.to_wizard_dropped = 0

    def count(self, direction: str, forwarded: bool):
        with self._lock:
            attr = f"{direction}_{'forwarded' if forwarded else 'dropped'}"
            setattr(self, attr, getattr(self, attr) + 1)

    def snapshot(self) -> dict[str, int]:
        with self._lock:
            return {
                "to_robot_forwarded": self.to_robot_forwarded,
                "to_robot_dropped": self.to_robot_dropped,
                "to_wizard_forwarded": self.to_wizard_forwarded,
                "to_wizard_dropped": self.to_wizard_dropped,
            }


def to_robot_side(table: MappingTable, frame: WizardFrame,
                  stats: Optional[BridgeStats] = None) -> Optional[TopicMessage]:
    rule = table._by_kind.get(frame.kind)
    if rule is None:
        if stats:
            stats.count("to_robot", forwarded=False)
        return None
    if stats:
        stats.count("to_robot", forwarded=True)
    return TopicMessage(topic=rule.topic, payload={rule.body_field: frame.body})


def to_wizard_side(table: MappingTable, message: TopicMessage,
                   stats: Optional[BridgeStats] = None) -> Optional[WizardFrame]:
    rule = table._by_topic.get(message.topic)
    if rule is None:
        if stats:
            stats.count("to_wizard", forwarded=False)
        return None
    if stats:
        stats.count("to_wizard", forwarded=True)
    return WizardFrame(scope=table.scope, kind=rule.kind,
                       body=message.payload.get(rule.body_field, ""))


# --- wire framing ---

def encode_wizard_line(frame: WizardFrame) -> str:
    return f"MSG {frame.scope} {frame.kind} {quote(frame.body, safe='')}"

def decode_wizard_line(line: str) -> WizardFrame:
    parts = line.rstrip("\n").split(" ")
    if len(parts) != 4 or parts[0] != "MSG":
        raise ParseError(f"bad wizard line: {line!r}")
    return WizardFrame(scope=parts[1], kind=parts[2], body=unquote(parts[3]))

def encode_robot_line(message: TopicMessage) -> str:
    pairs = "&".join(f"{quote(k, safe='')}={quote(v, safe='')}"
                     for k, v in message.payload.items())
    return f"PUB {message.topic} {pairs}"

def decode_robot_line(line: str) -> TopicMessage:
    parts = line.rstrip("\n").split(" ")
    if len(parts) != 3 or parts[0] != "PUB":
        raise ParseError(f"bad robot line: {line!r}")
    payload = {}
    if parts[2]:
        for pair in parts[2].split("&"):
            if "=" not in pair:
                raise ParseError(f"bad payload pair: {pair!r}")
            k, v = pair.split("=", 1)
            payload[unquote(k)] = unquote(v)
    return TopicMessage(topic=parts[1], payload=payload)


class Bridge:
    """Long-running bidirectional forwarder between two line endpoints.

    Each direction pumps independently and preserves arrival order.
    Connection loss triggers reconnect with exponential backoff
    (0.5 s doubling to an 8 s cap).
    """

    def __init__(self, table: MappingTable,
                 wizard_addr: tuple[str, int], robot_addr: tuple[str, int],
                 max_retries: Optional[int] = None):
        self.table = table
        self.wizard_addr = wizard_addr
        self.robot_addr = robot_addr
        self.stats = BridgeStats()
        self.max_retries = max_retries
        self._stopping = asyncio.Event()

    async def _connect(self, addr: tuple[str, int]):
        backoff = BACKOFF_INITIAL_S
        attempts = 0
        while True:
            try:
                return await asyncio.open_connection(*addr)
            except OSError as exc:
                attempts += 1
                if self.max_retries is not None and attempts > self.max_retries:
                    raise ConnectionLost(f"{addr}: {exc}") from exc
                await asyncio.sleep(backoff)
                backoff = min(backoff * 2, BACKOFF_CAP_S)

    async def _pump_to_robot(self, wreader, rwriter):
        async for raw in _lines(wreader):
            try:
                frame = decode_wizard_line(raw)
            except ParseError:
                self.stats.count("to_robot", forwarded=False)
                continue
            msg = to_robot_side(self.table, frame, self.stats)
            if msg is not None:
                rwriter.write((encode_robot_line(msg) + "\n").encode("utf-8"))
        await rwriter.drain()

    async def _pump_to_wizard(self, rreader, wwriter):
        async for raw in _lines(rreader):
            try:
                msg = decode_robot_line(raw)
            except ParseError:
                self.stats.count("to_wizard", forwarded=False)
                continue
            frame = to_wizard_side(self.table, msg, self.stats)
            if frame is not None:
                wwriter.write((encode_wizard_line(frame) + "\n").encode("utf-8"))
        await wwriter.drain()

    async def run_once(self):
        """One connect-and-forward cycle; returns when either side closes."""
        wreader, wwriter = await self._connect(self.wizard_addr)
        rreader, rwriter = await self._connect(self.robot_addr)
        pumps = [asyncio.ensure_future(self._pump_to_robot(wreader, rwriter)),
                 asyncio.ensure_future(self._pump_to_wizard(rreader, wwriter))]
        try:
            # either side closing ends the cycle; the peer pump is cancelled
            done, pending = await asyncio.wait(
                pumps, return_when=asyncio.FIRST_COMPLETED)
            for task in pending:
                task.cancel()
            await asyncio.gather(*pending, return_exceptions=True)
            for task in done:
                task.result()
        finally:
            for w in (wwriter, rwriter):
                w.close()
                try:
                    await w.wait_closed()
                except (OSError, ConnectionError):
                    pass

    async def run_forever(self):
        while not self._stopping.is_set():
            try:
                await self.run_once()
            except ConnectionLost:
                raise
            except (OSError, ConnectionError):
                pass
            if not self._stopping.is_set():
                await asyncio.sleep(BACKOFF_INITIAL_S)

    def stop(self):
        self._stopping.set()


async def _lines(reader: asyncio.StreamReader):
    while True:
        raw = await reader.readline()
        if not raw:
            return
        yield raw.decode("utf-8")


def run_bridge(table: MappingTable, wizard_addr: tuple[str, int],
               robot_addr: tuple[str, int],
               max_retries: Optional[int] = None) -> Bridge:
    """Construct a Bridge handle; callers drive it with `run_once` or
    `run_forever` inside an event loop."""
    return Bridge(table, wizard_addr, robot_addr, max_retries=max_retries)
