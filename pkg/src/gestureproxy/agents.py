"""Scripted user agents: generate pointer streams and app-switch behavior
against a live pipeline, for end-to-end exercise without a human.

Agents are rule-based, not models of people. A script is a JSON object:

    {
      "seed": 7,
      "on_blocked": "IgnoreToday",        // or OneMinute / FifteenMinutes / "leave"
      "abandon_latency_ms": 600,          // optional: leave when a gesture's
                                          // dispatch lags its release this much
      "actions": [
        {"do": "open", "app": "feed.app"},
        {"do": "swipe", "count": 100, "cadence_ms": 500, "dy": -300},
        {"do": "tap", "count": 5, "cadence_ms": 400},
        {"do": "double_tap", "count": 2},
        {"do": "wait", "ms": 60000},
        {"do": "bypass", "option": "OneMinute"},
        {"do": "close"},
        {"do": "screen_off"}
      ]
    }

The returned trace holds only user-side items (samples, app events, chosen
bypasses); replaying it through the same configuration reproduces the run
byte for byte, because every agent reaction depends only on deterministic
engine output.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .events import (
    BypassOption,
    Phase,
    PointerSample,
    SessionEvent,
    TraceItem,
)
from .session import DeviceSession, SessionConfig


class ScriptError(ValueError):
    """Malformed agent script or unknown app reference."""


def synth_tap(t0: int, x: float, y: float, duration: int = 80, pointer_id: int = 0) -> list[PointerSample]:
    return [
        PointerSample(pointer_id, Phase.DOWN, x, y, t0),
        PointerSample(pointer_id, Phase.UP, x, y, t0 + duration),
    ]


def synth_swipe(
    t0: int,
    x0: float,
    y0: float,
    dx: float,
    dy: float,
    duration: int = 200,
    points: int = 4,
    fingers: int = 1,
    finger_gap: float = 24.0,
) -> list[PointerSample]:
    """Straight-line swipe; extra fingers ride alongside, offset on x."""
    if points < 1 or duration < points:
        raise ScriptError("swipe needs at least one segment and 1 ms per segment")
    samples: list[PointerSample] = []
    for f in range(fingers):
        samples.append(PointerSample(f, Phase.DOWN, x0 + f * finger_gap, y0, t0))
    for i in range(1, points + 1):
        frac = i / points
        t = t0 + round(duration * frac)
        for f in range(fingers):
            phase = Phase.UP if i == points else Phase.MOVE
            samples.append(
                PointerSample(f, phase, x0 + f * finger_gap + dx * frac, y0 + dy * frac, t)
            )
    samples.sort(key=lambda s: s.t)
    return samples


def synth_double_tap(t0: int, x: float, y: float, duration: int = 60, gap: int = 120) -> list[PointerSample]:
    first = synth_tap(t0, x, y, duration)
    second = synth_tap(t0 + duration + gap, x, y, duration)
    return first + second


@dataclass
class AgentScript:
    seed: int = 0
    on_blocked: str = "leave"
    abandon_latency_ms: int | None = None
    actions: list[dict] = field(default_factory=list)
    known_apps: frozenset[str] = frozenset()

    @classmethod
    def from_json_obj(cls, obj: dict) -> "AgentScript":
        actions = obj.get("actions", [])
        if not isinstance(actions, list):
            raise ScriptError("actions must be a list")
        on_blocked = obj.get("on_blocked", "leave")
        if on_blocked != "leave":
            try:
                BypassOption(on_blocked)
            except ValueError as e:
                raise ScriptError(f"unknown on_blocked policy {on_blocked!r}") from e
        apps = {a.get("app") for a in actions if a.get("do") == "open"}
        apps.discard(None)
        return cls(
            seed=int(obj.get("seed", 0)),
            on_blocked=on_blocked,
            abandon_latency_ms=(
                int(obj["abandon_latency_ms"]) if "abandon_latency_ms" in obj else None
            ),
            actions=actions,
            known_apps=frozenset(apps),
        )

    @classmethod
    def from_json(cls, text: str) -> "AgentScript":
        return cls.from_json_obj(json.loads(text))


@dataclass
class AgentResult:
    trace: list[TraceItem]
    output: list[dict]


class _Abandon(Exception):
    """Agent left the current app (blocked policy or latency tolerance)."""


class AgentRunner:
    """Drives one scripted agent against a DeviceSession in lockstep."""

    REACTION_MS = 400

    def __init__(self, script: AgentScript, config: SessionConfig):
        self.script = script
        self.config = config
        self.rng = random.Random(script.seed)
        self.trace: list[TraceItem] = []
        self.output: list[dict] = []
        self.session = DeviceSession(config, self.output.append)
        self.t = 0
        self.app: str | None = None
        self._watermark = 0

    def run(self) -> AgentResult:
        skip_until_open = False
        for action in self.script.actions:
            kind = action.get("do")
            if skip_until_open and kind != "open":
                continue
            skip_until_open = False
            try:
                self._perform(action)
            except _Abandon:
                skip_until_open = True
        if self.app is not None:
            self._leave()
        self.session.finish()
        return AgentResult(self.trace, self.output)

    # ---------------------------------------------------------------- actions

    def _perform(self, action: dict) -> None:
        kind = action.get("do")
        if kind == "open":
            app = action.get("app")
            if app not in self.script.known_apps:
                raise ScriptError(f"unknown app {app!r}")
            if self.app is not None:
                self._emit(SessionEvent.app_exit(self.t, self.app))
                self.t += 50
            self.app = app
            self._emit(SessionEvent.app_enter(self.t, app))
        elif kind == "close":
            if self.app is not None:
                self._emit(SessionEvent.app_exit(self.t, self.app))
                self.app = None
        elif kind == "screen_off":
            self._emit(SessionEvent.screen_off(self.t))
            self.app = None
        elif kind == "wait":
            self.t += int(action.get("ms", 1000))
        elif kind == "bypass":
            option = BypassOption(action.get("option", "OneMinute"))
            self._emit(SessionEvent.bypass(self.t, option))
        elif kind in ("tap", "swipe", "double_tap"):
            self._gesture_burst(kind, action)
        else:
            raise ScriptError(f"unknown action {kind!r}")

    def _gesture_burst(self, kind: str, action: dict) -> None:
        if self.app is None:
            raise ScriptError(f"{kind} with no app open")
        count = int(action.get("count", 1))
        cadence = int(action.get("cadence_ms", 500))
        for _ in range(count):
            start = self.t
            samples = self._synth(kind, action, start)
            for s in samples:
                self._emit(s)
            self._react()
            gesture_span = samples[-1].t - start
            self.t = max(self.t, start + max(cadence, gesture_span + 10))

    def _synth(self, kind: str, action: dict, t0: int) -> list[PointerSample]:
        w, h = self.config.screen.width, self.config.screen.height
        if kind == "tap":
            # Stay above the lockout menu band so scripted taps never hit it;
            # menu-aimed taps use explicit coordinates.
            x = action.get("x", round(self.rng.uniform(w * 0.2, w * 0.8), 1))
            y = action.get("y", round(self.rng.uniform(h * 0.08, h * 0.35), 1))
            return synth_tap(t0, float(x), float(y), int(action.get("duration_ms", 80)))
        if kind == "double_tap":
            x = action.get("x", round(self.rng.uniform(w * 0.2, w * 0.8), 1))
            y = action.get("y", round(self.rng.uniform(h * 0.08, h * 0.35), 1))
            return synth_double_tap(t0, float(x), float(y))
        dy = float(action.get("dy", -300.0))
        dx = float(action.get("dx", 0.0))
        fingers = int(action.get("fingers", 1))
        x0 = action.get("x", round(self.rng.uniform(w * 0.3, w * 0.6), 1))
        y0 = action.get("y", h * 0.7 if dy < 0 else h * 0.3)
        return synth_swipe(
            t0,
            float(x0),
            float(y0),
            dx,
            dy,
            duration=int(action.get("duration_ms", 200)),
            fingers=fingers,
        )

    # ------------------------------------------------------------- reactions

    def _emit(self, item: TraceItem) -> None:
        self.trace.append(item)
        self.t = max(self.t, item.t)
        self.session.process(item)

    def _react(self) -> None:
        """Inspect engine output since the last gesture and apply policy."""
        fresh = self.output[self._watermark :]
        self._watermark = len(self.output)
        blocked = any(r.get("kind") == "Blocked" for r in fresh)
        if blocked:
            self.t += self.REACTION_MS
            if self.script.on_blocked == "leave":
                self._leave()
                raise _Abandon
            option = BypassOption(self.script.on_blocked)
            self._emit(SessionEvent.bypass(self.t, option))
            return
        if self.script.abandon_latency_ms is not None:
            for r in fresh:
                if r.get("kind") != "VirtualGesture":
                    continue
                latency = r["t"] - r["completed_at"]
                if latency > self.script.abandon_latency_ms:
                    self.t += self.REACTION_MS
                    self._leave()
                    raise _Abandon

    def _leave(self) -> None:
        if self.app is not None:
            self._emit(SessionEvent.app_exit(self.t, self.app))
            self.t += 50
            self.app = None
        self._emit(SessionEvent.screen_off(self.t))


def run_agent(script: AgentScript | dict, config: SessionConfig) -> AgentResult:
    """Run one scripted agent; deterministic for a given script and config."""
    if isinstance(script, dict):
        script = AgentScript.from_json_obj(script)
    return AgentRunner(script, config).run()
