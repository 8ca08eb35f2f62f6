"""One simulated device session: the full proxy pipeline.

Wires the recognizer, the intensity scheduler, the budget controller and the
manipulation strategies together, consuming a time-ordered stream of pointer
samples and app events and emitting a deterministic output log:

* every input session event, echoed,
* derived InterventionEncounter events,
* GestureLogged events (only while the intervention is engaged), carrying
  the gesture's disposition,
* VirtualGesture records in dispatch order (sorted by dispatch_at, FIFO on
  ties),
* Blocked notices under lockout,
* SchedulerSnapshot records whenever the ramp state changes.

Encounter bookkeeping follows the delivery design: under gesture
manipulation, the encounter is logged at the first gesture performed while
the intervention is engaged; under lockout, at the moment the blocking
screen appears. One encounter per engagement: re-entering the app, or a
bypass lapsing mid-session, starts a fresh one.

Buffered taps (double-tap window) are processed under the scheduler and
budget state at the moment the recognizer resolves them; their dispatch
times are still computed from their own completion times.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

from .budget import BudgetConfig, BudgetController
from .events import (
    BypassOption,
    DoubleTap,
    EventKind,
    Gesture,
    InterventionConfig,
    InterventionMode,
    PointerSample,
    Screen,
    SessionEvent,
    Swipe,
    Tap,
    TapStrategy,
    VirtualGesture,
    gesture_to_json_obj,
)
from .manipulations import DispatchQueue, Disposition, apply_strategies
from .recognizer import Recognizer, RecognizerConfig
from .scheduler import IntensityScheduler, SchedulerConfig


@dataclass(frozen=True)
class SessionConfig:
    intervention: InterventionConfig = InterventionConfig()
    scheduler: SchedulerConfig = SchedulerConfig()
    recognizer: RecognizerConfig = RecognizerConfig()
    budget: BudgetConfig = field(default_factory=BudgetConfig)
    screen: Screen = Screen(400.0, 800.0)

    @property
    def mode(self) -> InterventionMode:
        if self.intervention.lockout_enabled:
            return InterventionMode.LOCKOUT
        return InterventionMode.MANIPULATION

    def to_json_obj(self) -> dict:
        return {
            "intervention": self.intervention.to_json_obj(),
            "scheduler": self.scheduler.to_json_obj(),
            "recognizer": {
                "tap_max_movement": self.recognizer.tap_max_movement,
                "tap_max_duration": self.recognizer.tap_max_duration,
                "double_tap_window": self.recognizer.double_tap_window,
                "double_tap_max_distance": self.recognizer.double_tap_max_distance,
                "swipe_min_displacement": self.recognizer.swipe_min_displacement,
            },
            "budget": self.budget.to_json_obj(),
            "screen": {"width": self.screen.width, "height": self.screen.height},
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SessionConfig":
        rec = obj.get("recognizer", {})
        rec_defaults = RecognizerConfig()
        screen = obj.get("screen", {})
        return cls(
            intervention=InterventionConfig.from_json_obj(obj.get("intervention", {})),
            scheduler=SchedulerConfig.from_json_obj(obj.get("scheduler", {})),
            recognizer=RecognizerConfig(
                tap_max_movement=float(rec.get("tap_max_movement", rec_defaults.tap_max_movement)),
                tap_max_duration=int(rec.get("tap_max_duration", rec_defaults.tap_max_duration)),
                double_tap_window=int(rec.get("double_tap_window", rec_defaults.double_tap_window)),
                double_tap_max_distance=float(
                    rec.get("double_tap_max_distance", rec_defaults.double_tap_max_distance)
                ),
                swipe_min_displacement=float(
                    rec.get("swipe_min_displacement", rec_defaults.swipe_min_displacement)
                ),
            ),
            budget=BudgetConfig.from_json_obj(obj.get("budget", {})),
            screen=Screen(
                float(screen.get("width", 400.0)), float(screen.get("height", 800.0))
            ),
        )


def gesture_summary(g: Gesture, disposition: Disposition) -> dict:
    """Compact marker for logs and timelines: gesture class, anchor point,
    and what the engine did with it."""
    if isinstance(g, Swipe):
        x, y = g.trajectory[0].x, g.trajectory[0].y
    elif isinstance(g, DoubleTap):
        x, y = g.first.x, g.first.y
    else:
        x, y = g.x, g.y
    return {
        "type": type(g).__name__,
        "x": x,
        "y": y,
        "disposition": disposition.value,
    }


@dataclass
class BypassMenuLayout:
    """Tap regions of the lockout blocking screen, one per bypass option.
    Taps landing in a region while blocked are routed to the bypass
    controller instead of the application."""

    regions: dict[BypassOption, tuple[float, float, float, float]]

    @classmethod
    def default(cls, screen: Screen) -> "BypassMenuLayout":
        # Three stacked buttons across the middle of the screen.
        w, h = screen.width, screen.height
        x0, x1 = w * 0.1, w * 0.9
        rows = [
            (BypassOption.ONE_MINUTE, 0.40),
            (BypassOption.FIFTEEN_MINUTES, 0.52),
            (BypassOption.IGNORE_TODAY, 0.64),
        ]
        return cls(
            regions={
                opt: (x0, h * frac, x1, h * (frac + 0.08)) for opt, frac in rows
            }
        )

    def hit(self, x: float, y: float) -> BypassOption | None:
        for opt, (rx0, ry0, rx1, ry1) in self.regions.items():
            if rx0 <= x <= rx1 and ry0 <= y <= ry1:
                return opt
        return None


class DeviceSession:
    """Consumes a time-ordered item stream and emits output records.

    Records are plain dicts ready for canonical JSON serialization; a sink
    callable receives each one as it is produced.
    """

    def __init__(self, config: SessionConfig, sink: Callable[[dict], None]):
        self.config = config
        self.sink = sink
        self.screen = config.screen
        detect_double = (
            config.intervention.tap_strategy is TapStrategy.DOUBLE
            and not config.intervention.lockout_enabled
        )
        self.recognizer = Recognizer(config.recognizer, detect_double_taps=detect_double)
        self.scheduler = IntensityScheduler(config.scheduler, config.intervention)
        self.budget = BudgetController(config.budget, on_transition=self._on_transition)
        self.queue = DispatchQueue()
        self.bypass_menu = BypassMenuLayout.default(config.screen)
        self._was_active = False
        self._encounter_logged = False
        self._last_item_t = 0
        self._last_snapshot: dict | None = None

    # ------------------------------------------------------------------ state

    @property
    def mode(self) -> InterventionMode:
        return self.config.mode

    def _on_transition(self, name: str, t: int) -> None:
        """Budget state changed at time t; reconcile engagement bookkeeping."""
        if name == "day_rolled":
            self.scheduler.reset(t)
        active = self.budget.is_active()
        if active and not self._was_active:
            self.scheduler.reset(t)
            self._emit_snapshot(t)
            self._encounter_logged = False
            if self.mode is InterventionMode.LOCKOUT:
                self._log_encounter(t)
        elif not active and self._was_active:
            self._encounter_logged = False
        self._was_active = active

    def _log_encounter(self, t: int) -> None:
        if self._encounter_logged:
            return
        app = self.budget.foreground_app
        if app is None:
            return
        self.budget.note_encounter()
        self._encounter_logged = True
        self.sink(SessionEvent.encounter(t, app, self.mode).to_json_obj())

    # ------------------------------------------------------------------ items

    def process(self, item: PointerSample | SessionEvent) -> None:
        t = item.t
        if t < self._last_item_t:
            raise ValueError(f"trace items out of order: t={t} after {self._last_item_t}")
        self._last_item_t = t
        self._advance(t)

        if isinstance(item, PointerSample):
            for g in self.recognizer.advance_clock(t):
                self._process_gesture(g)
            for g in self.recognizer.feed(item):
                self._process_gesture(g)
            return

        if item.kind in (EventKind.APP_ENTER, EventKind.APP_EXIT, EventKind.SCREEN_OFF):
            for g in self.recognizer.advance_clock(t):
                self._process_gesture(g)
            self.sink(item.to_json_obj())
            self.budget.record_app_event(item)
        elif item.kind is EventKind.BYPASS:
            self.budget.apply_bypass(item.option, t)
            self.sink(item.to_json_obj())
        else:
            raise ValueError(f"trace may not contain derived event {item.kind.value}")

    def advance_clock(self, t: int) -> None:
        """Advance virtual time with no new input: flushes due dispatches,
        applies idle steps, resolves an expired double-tap buffer."""
        if t < self._last_item_t:
            return
        self._last_item_t = t
        self._advance(t)
        for g in self.recognizer.advance_clock(t):
            self._process_gesture(g)

    def update_intervention(self, intervention: InterventionConfig) -> None:
        """Live reconfiguration (playground): swap strategies and maxima."""
        self.config = replace(self.config, intervention=intervention)
        self.scheduler.maxima = intervention
        self.recognizer.detect_double_taps = (
            intervention.tap_strategy is TapStrategy.DOUBLE
            and not intervention.lockout_enabled
        )

    def finish(self) -> None:
        """End of input: resolve buffered gestures, then drain the queue."""
        window_end = self._last_item_t + self.config.recognizer.double_tap_window + 1
        self._advance(window_end)
        for g in self.recognizer.advance_clock(window_end):
            self._process_gesture(g)
        for g in self.recognizer.finish():
            self._process_gesture(g)
        for vg in self.queue.drain():
            self._emit_virtual(vg)

    # ------------------------------------------------------------------ internals

    def _advance(self, t: int) -> None:
        self.budget.advance(t)
        if self.budget.is_active() and self.mode is InterventionMode.MANIPULATION:
            if self.scheduler.on_tick(t):
                self._emit_snapshot(self.scheduler.last_activity)
        for vg in self.queue.pop_due(t):
            self._emit_virtual(vg)

    def _process_gesture(self, g: Gesture) -> None:
        now = self.budget.now
        active = self.budget.is_active()
        blocked = active and self.mode is InterventionMode.LOCKOUT

        if blocked and isinstance(g, Tap):
            option = self.bypass_menu.hit(g.x, g.y)
            if option is not None:
                self._log_gesture(g, Disposition.BLOCKED)
                self.budget.apply_bypass(option, now)
                self.sink(SessionEvent.bypass(now, option).to_json_obj())
                return

        if not active:
            # No intervention: identity regardless of configured strategies.
            self.queue.push(VirtualGesture(g, g.completed_at))
            for vg in self.queue.pop_due(now):
                self._emit_virtual(vg)
            return

        if self.mode is InterventionMode.MANIPULATION:
            self._log_encounter(now)
            outcome = apply_strategies(
                self.config.intervention,
                self.scheduler.intensities(),
                g,
                self.screen,
                blocked=False,
            )
            self._log_gesture(g, outcome.disposition)
            # The step lands after the gesture: the first manipulated gesture
            # runs at zero intensity ("start from zero").
            self.scheduler.on_operation(now)
            self._emit_snapshot(now)
            if outcome.virtual is not None:
                self.queue.push(outcome.virtual)
        else:
            self._log_gesture(g, Disposition.BLOCKED)
            self.sink(
                {
                    "kind": "Blocked",
                    "t": now,
                    "gesture": gesture_to_json_obj(g),
                }
            )
        for vg in self.queue.pop_due(now):
            self._emit_virtual(vg)

    def _log_gesture(self, g: Gesture, disposition: Disposition) -> None:
        ev = SessionEvent.gesture_logged(g.completed_at, gesture_summary(g, disposition))
        self.sink(ev.to_json_obj())

    def _emit_virtual(self, vg: VirtualGesture) -> None:
        self.sink(
            {
                "kind": "VirtualGesture",
                "t": vg.dispatch_at,
                "gesture": gesture_to_json_obj(vg.gesture),
                "completed_at": vg.gesture.completed_at,
            }
        )

    def _emit_snapshot(self, t: int) -> None:
        snap = self.scheduler.snapshot()
        if snap == self._last_snapshot:
            return
        self._last_snapshot = snap
        self.sink({"kind": "SchedulerSnapshot", "t": t, **snap})

    def budget_summary(self) -> dict:
        return {"kind": "BudgetSummary", "t": self.budget.now, **self.budget.summary()}
