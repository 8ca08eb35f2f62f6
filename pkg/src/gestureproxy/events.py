"""Shared data vocabulary: pointer samples, gestures, configuration, session events.

Everything here is a plain immutable value on an integer-millisecond virtual
clock. Coordinates are density-independent pixels (dp) stored as floats, with
a `Screen` descriptor giving the bounds a session runs against.

The newline-delimited JSON trace format lives here too: one `PointerSample`
or `SessionEvent` per line, discriminated by the presence of a ``phase``
(sample) versus ``kind`` (event) field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, TextIO, Union


class TraceError(ValueError):
    """Malformed trace input. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(ValueError):
    """Invalid configuration value."""


class Phase(Enum):
    DOWN = "Down"
    MOVE = "Move"
    UP = "Up"
    CANCEL = "Cancel"


@dataclass(frozen=True)
class PointerSample:
    """One raw touch frame for one pointer."""

    pointer_id: int
    phase: Phase
    x: float
    y: float
    t: int

    def __post_init__(self):
        if self.pointer_id < 0:
            raise ValueError(f"pointer_id must be >= 0, got {self.pointer_id}")
        if self.t < 0:
            raise ValueError(f"t must be >= 0, got {self.t}")

    def to_json_obj(self) -> dict:
        return {
            "pointer_id": self.pointer_id,
            "phase": self.phase.value,
            "x": self.x,
            "y": self.y,
            "t": self.t,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PointerSample":
        return cls(
            pointer_id=int(obj["pointer_id"]),
            phase=Phase(obj["phase"]),
            x=float(obj["x"]),
            y=float(obj["y"]),
            t=int(obj["t"]),
        )


class Screen(NamedTuple):
    """Screen bounds in dp; positions are clamped to [0, width] x [0, height]."""

    width: float
    height: float

    def clamp(self, x: float, y: float) -> tuple[float, float]:
        return (
            min(max(x, 0.0), self.width),
            min(max(y, 0.0), self.height),
        )


class TrajectoryPoint(NamedTuple):
    x: float
    y: float
    t: int


@dataclass(frozen=True)
class Tap:
    x: float
    y: float
    t_down: int
    duration: int

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError(f"Tap duration must be >= 0, got {self.duration}")

    @property
    def completed_at(self) -> int:
        return self.t_down + self.duration


@dataclass(frozen=True)
class LongPress:
    x: float
    y: float
    t_down: int
    duration: int

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError(f"LongPress duration must be >= 0, got {self.duration}")

    @property
    def completed_at(self) -> int:
        return self.t_down + self.duration


@dataclass(frozen=True)
class DoubleTap:
    first: Tap
    second: Tap

    def __post_init__(self):
        if self.second.t_down <= self.first.completed_at:
            raise ValueError("second tap must start after the first tap ends")

    @property
    def completed_at(self) -> int:
        return self.second.completed_at


@dataclass(frozen=True)
class Swipe:
    trajectory: tuple[TrajectoryPoint, ...]
    finger_count: int

    def __post_init__(self):
        traj = tuple(TrajectoryPoint(*p) for p in self.trajectory)
        object.__setattr__(self, "trajectory", traj)
        if len(traj) < 2:
            raise ValueError("Swipe trajectory needs at least 2 points")
        for a, b in zip(traj, traj[1:]):
            if b.t <= a.t:
                raise ValueError("Swipe trajectory timestamps must strictly increase")
        if self.finger_count < 1:
            raise ValueError(f"finger_count must be >= 1, got {self.finger_count}")

    @property
    def completed_at(self) -> int:
        return self.trajectory[-1].t

    @property
    def start(self) -> TrajectoryPoint:
        return self.trajectory[0]

    @property
    def duration(self) -> int:
        return self.trajectory[-1].t - self.trajectory[0].t


Gesture = Union[Tap, DoubleTap, LongPress, Swipe]


@dataclass(frozen=True)
class VirtualGesture:
    """The rewritten gesture the proxy hands to the application layer."""

    gesture: Gesture
    dispatch_at: int

    def __post_init__(self):
        if self.dispatch_at < 0:
            raise ValueError("dispatch_at must be >= 0")


def gesture_to_json_obj(g: Gesture) -> dict:
    if isinstance(g, Tap):
        return {"type": "Tap", "x": g.x, "y": g.y, "t_down": g.t_down, "duration": g.duration}
    if isinstance(g, LongPress):
        return {"type": "LongPress", "x": g.x, "y": g.y, "t_down": g.t_down, "duration": g.duration}
    if isinstance(g, DoubleTap):
        return {
            "type": "DoubleTap",
            "first": gesture_to_json_obj(g.first),
            "second": gesture_to_json_obj(g.second),
        }
    if isinstance(g, Swipe):
        return {
            "type": "Swipe",
            "trajectory": [[p.x, p.y, p.t] for p in g.trajectory],
            "finger_count": g.finger_count,
        }
    raise TypeError(f"not a gesture: {g!r}")


def gesture_from_json_obj(obj: dict) -> Gesture:
    kind = obj["type"]
    if kind == "Tap":
        return Tap(float(obj["x"]), float(obj["y"]), int(obj["t_down"]), int(obj["duration"]))
    if kind == "LongPress":
        return LongPress(float(obj["x"]), float(obj["y"]), int(obj["t_down"]), int(obj["duration"]))
    if kind == "DoubleTap":
        first = gesture_from_json_obj(obj["first"])
        second = gesture_from_json_obj(obj["second"])
        assert isinstance(first, Tap) and isinstance(second, Tap)
        return DoubleTap(first, second)
    if kind == "Swipe":
        traj = tuple(TrajectoryPoint(float(x), float(y), int(t)) for x, y, t in obj["trajectory"])
        return Swipe(traj, int(obj["finger_count"]))
    raise ValueError(f"unknown gesture type {kind!r}")


class TapStrategy(Enum):
    NONE = "None"
    DELAY = "Delay"
    PROLONG = "Prolong"
    SHIFT = "Shift"
    DOUBLE = "Double"


class SwipeStrategy(Enum):
    NONE = "None"
    DELAY = "Delay"
    DECELERATE = "Decelerate"
    REVERSE = "Reverse"
    MULTI_FINGER = "MultiFinger"


@dataclass(frozen=True)
class InterventionConfig:
    """Strategy selection plus the maximum intensity of every manipulation knob.

    Only the selected strategies' parameters are ever consulted. A
    ``finger_threshold_N`` of 1 is the neutral setting (every swipe passes);
    2 and 3 are the deployed levels.
    """

    tap_strategy: TapStrategy = TapStrategy.NONE
    swipe_strategy: SwipeStrategy = SwipeStrategy.NONE
    T_tap_delay_max: int = 1000
    T_tap_threshold_max: int = 200
    shift_vector: tuple[float, float] = (0.0, -200.0)
    T_swipe_delay_max: int = 800
    F_swipe_decelerate_min: float = 0.25
    finger_threshold_N: int = 2
    lockout_enabled: bool = False

    def __post_init__(self):
        object.__setattr__(self, "shift_vector", tuple(self.shift_vector))
        if self.T_tap_delay_max < 0 or self.T_tap_threshold_max < 0 or self.T_swipe_delay_max < 0:
            raise ConfigError("durations must be >= 0")
        if not 0.0 < self.F_swipe_decelerate_min <= 1.0:
            raise ConfigError(
                f"F_swipe_decelerate_min must be in (0, 1], got {self.F_swipe_decelerate_min}"
            )
        if self.finger_threshold_N < 1:
            raise ConfigError(f"finger_threshold_N must be >= 1, got {self.finger_threshold_N}")

    def to_json_obj(self) -> dict:
        return {
            "tap_strategy": self.tap_strategy.value,
            "swipe_strategy": self.swipe_strategy.value,
            "T_tap_delay_max": self.T_tap_delay_max,
            "T_tap_threshold_max": self.T_tap_threshold_max,
            "shift_vector": list(self.shift_vector),
            "T_swipe_delay_max": self.T_swipe_delay_max,
            "F_swipe_decelerate_min": self.F_swipe_decelerate_min,
            "finger_threshold_N": self.finger_threshold_N,
            "lockout_enabled": self.lockout_enabled,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "InterventionConfig":
        base = cls()
        kwargs = {}
        for name in (
            "T_tap_delay_max",
            "T_tap_threshold_max",
            "T_swipe_delay_max",
            "finger_threshold_N",
        ):
            kwargs[name] = int(obj.get(name, getattr(base, name)))
        kwargs["tap_strategy"] = TapStrategy(obj.get("tap_strategy", base.tap_strategy.value))
        kwargs["swipe_strategy"] = SwipeStrategy(obj.get("swipe_strategy", base.swipe_strategy.value))
        sv = obj.get("shift_vector", list(base.shift_vector))
        kwargs["shift_vector"] = (float(sv[0]), float(sv[1]))
        kwargs["F_swipe_decelerate_min"] = float(
            obj.get("F_swipe_decelerate_min", base.F_swipe_decelerate_min)
        )
        kwargs["lockout_enabled"] = bool(obj.get("lockout_enabled", base.lockout_enabled))
        return cls(**kwargs)


def lab_level_config(level: int, tap_strategy: TapStrategy, swipe_strategy: SwipeStrategy) -> InterventionConfig:
    """The two intensity presets used for in-lab comparison of the strategies.

    Level 1: tap delay 500 ms, prolong threshold 100 ms, shift y+100 dp,
    swipe delay 300 ms, deceleration x0.5, finger threshold 2.
    Level 2: 1000 ms / 200 ms / y+200 dp / 800 ms / x0.25 / 3.
    """
    if level == 1:
        return InterventionConfig(
            tap_strategy=tap_strategy,
            swipe_strategy=swipe_strategy,
            T_tap_delay_max=500,
            T_tap_threshold_max=100,
            shift_vector=(0.0, 100.0),
            T_swipe_delay_max=300,
            F_swipe_decelerate_min=0.5,
            finger_threshold_N=2,
        )
    if level == 2:
        return InterventionConfig(
            tap_strategy=tap_strategy,
            swipe_strategy=swipe_strategy,
            T_tap_delay_max=1000,
            T_tap_threshold_max=200,
            shift_vector=(0.0, 200.0),
            T_swipe_delay_max=800,
            F_swipe_decelerate_min=0.25,
            finger_threshold_N=3,
        )
    raise ConfigError(f"level must be 1 or 2, got {level}")


class EventKind(Enum):
    APP_ENTER = "AppEnter"
    APP_EXIT = "AppExit"
    SCREEN_OFF = "ScreenOff"
    INTERVENTION_ENCOUNTER = "InterventionEncounter"
    BYPASS = "Bypass"
    GESTURE_LOGGED = "GestureLogged"


class InterventionMode(Enum):
    MANIPULATION = "Manipulation"
    LOCKOUT = "Lockout"


class BypassOption(Enum):
    ONE_MINUTE = "OneMinute"
    FIFTEEN_MINUTES = "FifteenMinutes"
    IGNORE_TODAY = "IgnoreToday"


@dataclass(frozen=True)
class SessionEvent:
    """One record in a device session trace, timestamped on the virtual clock."""

    t: int
    kind: EventKind
    app_id: str | None = None
    intervention: InterventionMode | None = None
    option: BypassOption | None = None
    gesture_summary: dict | None = None

    def __post_init__(self):
        if self.t < 0:
            raise ValueError(f"t must be >= 0, got {self.t}")
        needs_app = (EventKind.APP_ENTER, EventKind.APP_EXIT, EventKind.INTERVENTION_ENCOUNTER)
        if self.kind in needs_app and not self.app_id:
            raise ValueError(f"{self.kind.value} requires app_id")
        if self.kind is EventKind.INTERVENTION_ENCOUNTER and self.intervention is None:
            raise ValueError("InterventionEncounter requires intervention")
        if self.kind is EventKind.BYPASS and self.option is None:
            raise ValueError("Bypass requires option")
        if self.kind is EventKind.GESTURE_LOGGED and self.gesture_summary is None:
            raise ValueError("GestureLogged requires gesture_summary")

    @classmethod
    def app_enter(cls, t: int, app_id: str) -> "SessionEvent":
        return cls(t=t, kind=EventKind.APP_ENTER, app_id=app_id)

    @classmethod
    def app_exit(cls, t: int, app_id: str) -> "SessionEvent":
        return cls(t=t, kind=EventKind.APP_EXIT, app_id=app_id)

    @classmethod
    def screen_off(cls, t: int) -> "SessionEvent":
        return cls(t=t, kind=EventKind.SCREEN_OFF)

    @classmethod
    def encounter(cls, t: int, app_id: str, intervention: InterventionMode) -> "SessionEvent":
        return cls(
            t=t, kind=EventKind.INTERVENTION_ENCOUNTER, app_id=app_id, intervention=intervention
        )

    @classmethod
    def bypass(cls, t: int, option: BypassOption) -> "SessionEvent":
        return cls(t=t, kind=EventKind.BYPASS, option=option)

    @classmethod
    def gesture_logged(cls, t: int, gesture_summary: dict) -> "SessionEvent":
        return cls(t=t, kind=EventKind.GESTURE_LOGGED, gesture_summary=gesture_summary)

    def to_json_obj(self) -> dict:
        obj: dict = {"t": self.t, "kind": self.kind.value}
        if self.app_id is not None:
            obj["app_id"] = self.app_id
        if self.intervention is not None:
            obj["intervention"] = self.intervention.value
        if self.option is not None:
            obj["option"] = self.option.value
        if self.gesture_summary is not None:
            obj["gesture_summary"] = self.gesture_summary
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SessionEvent":
        kind = EventKind(obj["kind"])
        return cls(
            t=int(obj["t"]),
            kind=kind,
            app_id=obj.get("app_id"),
            intervention=(
                InterventionMode(obj["intervention"]) if "intervention" in obj else None
            ),
            option=BypassOption(obj["option"]) if "option" in obj else None,
            gesture_summary=obj.get("gesture_summary"),
        )


TraceItem = Union[PointerSample, SessionEvent]


def validate_stream(samples: Iterable[PointerSample]) -> str | None:
    """Check the pointer-stream invariants; return a description of the first
    violation, or None when the stream is legal.

    Per pointer the phase sequence must match Down (Move)* (Up | Cancel), and
    timestamps must be non-decreasing across the whole stream.
    """
    down: set[int] = set()
    last_t: int | None = None
    for i, s in enumerate(samples):
        if last_t is not None and s.t < last_t:
            return f"sample {i}: non-monotonic t ({s.t} after {last_t})"
        last_t = s.t
        if s.phase is Phase.DOWN:
            if s.pointer_id in down:
                return f"sample {i}: Down while pointer {s.pointer_id} already down"
            down.add(s.pointer_id)
        else:
            if s.pointer_id not in down:
                return f"sample {i}: {s.phase.value} before Down for pointer {s.pointer_id}"
            if s.phase in (Phase.UP, Phase.CANCEL):
                down.discard(s.pointer_id)
    return None


def dumps_canonical(obj: dict) -> str:
    """Canonical single-line JSON: sorted keys, no whitespace. Replays must be
    byte-identical, so every serialization in the package funnels through here."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def trace_item_to_line(item: TraceItem) -> str:
    return dumps_canonical(item.to_json_obj())


def parse_trace_line(line: str, line_no: int | None = None) -> TraceItem:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        raise TraceError(f"invalid JSON: {e.msg}", line_no) from e
    if not isinstance(obj, dict):
        raise TraceError("record must be a JSON object", line_no)
    try:
        if "phase" in obj:
            return PointerSample.from_json_obj(obj)
        if "kind" in obj:
            return SessionEvent.from_json_obj(obj)
    except (KeyError, ValueError, TypeError) as e:
        raise TraceError(f"bad record: {e}", line_no) from e
    raise TraceError("record is neither a pointer sample nor a session event", line_no)


def read_trace(fp: TextIO) -> Iterator[TraceItem]:
    """Parse a newline-delimited trace; raises TraceError with line numbers."""
    for line_no, line in enumerate(fp, start=1):
        line = line.strip()
        if not line:
            continue
        yield parse_trace_line(line, line_no)


def write_trace(fp: TextIO, items: Iterable[TraceItem]) -> None:
    for item in items:
        fp.write(trace_item_to_line(item))
        fp.write("\n")

