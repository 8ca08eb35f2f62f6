"""Trace replay: run a recorded pointer/session trace through the proxy
pipeline under the virtual clock and produce a deterministic output log.

Identical inputs yield byte-identical logs: every record is serialized as
canonical single-line JSON (sorted keys, no whitespace) in processing order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .events import (
    EventKind,
    SessionEvent,
    TraceError,
    TraceItem,
    dumps_canonical,
    read_trace,
)
from .session import DeviceSession, SessionConfig


@dataclass
class ReplayLog:
    """A parsed output log, split by record family."""

    events: list[SessionEvent] = field(default_factory=list)
    virtual_gestures: list[dict] = field(default_factory=list)
    snapshots: list[dict] = field(default_factory=list)
    blocked: list[dict] = field(default_factory=list)

    @property
    def records(self) -> int:
        return (
            len(self.events)
            + len(self.virtual_gestures)
            + len(self.snapshots)
            + len(self.blocked)
        )


_SESSION_KINDS = {k.value for k in EventKind}


def replay(items: Iterable[TraceItem], config: SessionConfig) -> list[dict]:
    """Replay trace items (time-ordered) and return the output records."""
    out: list[dict] = []
    session = DeviceSession(config, out.append)
    last_t = None
    for item in items:
        if last_t is not None and item.t < last_t:
            raise TraceError(f"trace not time-ordered: t={item.t} after {last_t}")
        last_t = item.t
        session.process(item)
    session.finish()
    return out


def replay_stream(fp: TextIO, config: SessionConfig, out_fp: TextIO) -> int:
    """Replay a trace file into an output log file; returns the record count.
    Trace errors carry 1-based line numbers."""
    count = 0

    def write(record: dict) -> None:
        nonlocal count
        out_fp.write(dumps_canonical(record))
        out_fp.write("\n")
        count += 1

    session = DeviceSession(config, write)
    last_t = None
    for line_no, item in _numbered(read_trace(fp)):
        if last_t is not None and item.t < last_t:
            raise TraceError(f"trace not time-ordered: t={item.t} after {last_t}", line_no)
        last_t = item.t
        try:
            session.process(item)
        except TraceError:
            raise
        except ValueError as e:
            raise TraceError(str(e), line_no) from e
    session.finish()
    return count


def _numbered(items: Iterable[TraceItem]) -> Iterable[tuple[int, TraceItem]]:
    for i, item in enumerate(items, start=1):
        yield i, item


def records_to_lines(records: Iterable[dict]) -> str:
    return "".join(dumps_canonical(r) + "\n" for r in records)


def parse_log_line(line: str, line_no: int | None = None) -> tuple[str, object]:
    """Classify one output-log line: ('event', SessionEvent) for the session
    event kinds, or (kind, dict) for replay-specific records."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        raise TraceError(f"invalid JSON: {e.msg}", line_no) from e
    if not isinstance(obj, dict) or "kind" not in obj:
        raise TraceError("log record must be an object with a 'kind'", line_no)
    kind = obj["kind"]
    if kind in _SESSION_KINDS:
        return "event", SessionEvent.from_json_obj(obj)
    return kind, obj


def load_log(fp: TextIO) -> ReplayLog:
    """Parse an output log (or any event trace) into a ReplayLog. Pointer
    samples are skipped so a raw input trace loads too."""
    log = ReplayLog()
    for line_no, line in enumerate(fp, start=1):
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if isinstance(obj, dict) and "phase" in obj:
            continue
        family, parsed = parse_log_line(line, line_no)
        if family == "event":
            log.events.append(parsed)
        elif family == "VirtualGesture":
            log.virtual_gestures.append(parsed)
        elif family == "SchedulerSnapshot":
            log.snapshots.append(parsed)
        elif family == "Blocked":
            log.blocked.append(parsed)
        else:
            raise TraceError(f"unknown record kind {family!r}", line_no)
    return log
