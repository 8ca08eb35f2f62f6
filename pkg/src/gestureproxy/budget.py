"""Per-app usage budget and the bypass state machine.

A single daily budget is shared by all target apps. Seconds accrue only
while a target app is foreground; at local midnight (virtual day boundary)
the tally, the ignore-for-today flag, and any encounter bookkeeping reset.
Once the budget is spent the intervention engages, and stays engaged until
bypassed (one minute, fifteen minutes, or the rest of the day) or midnight.

Time advances through `advance(now)`, which walks through every state
transition (midnight rollovers, the exact millisecond the budget crosses the
limit, bypass expiry) in order, invoking the registered transition callback
so the session layer can reset scheduler state and log encounters at the
exact transition times.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .events import BypassOption, EventKind, SessionEvent

MS_PER_DAY = 86_400_000


@dataclass
class BudgetConfig:
    target_apps: frozenset[str] = frozenset()
    daily_limit_s: int = 3600

    def __post_init__(self):
        self.target_apps = frozenset(self.target_apps)
        if self.daily_limit_s < 0:
            raise ValueError("daily_limit_s must be >= 0")

    @property
    def daily_limit_ms(self) -> int:
        return self.daily_limit_s * 1000

    def to_json_obj(self) -> dict:
        return {
            "target_apps": sorted(self.target_apps),
            "daily_limit": self.daily_limit_s,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "BudgetConfig":
        return cls(
            target_apps=frozenset(obj.get("target_apps", ())),
            daily_limit_s=int(obj.get("daily_limit", 3600)),
        )


class BudgetError(ValueError):
    """Illegal session-event sequence or bypass with no encounter."""


@dataclass
class BudgetController:
    """Tracks the budget for one simulated device; single logical owner."""

    config: BudgetConfig
    on_transition: Callable[[str, int], None] | None = None

    now: int = 0
    used_today_ms: int = 0
    foreground_app: str | None = None
    bypass_until: int | None = None
    ignore_today: bool = False
    encounters_today: int = 0
    bypasses_today: int = 0

    @property
    def day_index(self) -> int:
        return self.now // MS_PER_DAY

    @property
    def day_start(self) -> int:
        return self.day_index * MS_PER_DAY

    @property
    def used_today_s(self) -> float:
        return self.used_today_ms / 1000.0

    @property
    def foreground_is_target(self) -> bool:
        return self.foreground_app is not None and self.foreground_app in self.config.target_apps

    def is_active(self, app_id: str | None = None) -> bool:
        """Whether the intervention is engaged right now (for `app_id`, or for
        the current foreground app when omitted)."""
        app = app_id if app_id is not None else self.foreground_app
        if app is None or app not in self.config.target_apps:
            return False
        if self.ignore_today:
            return False
        if self.used_today_ms < self.config.daily_limit_ms:
            return False
        if self.bypass_until is not None and self.now < self.bypass_until:
            return False
        return True

    def advance(self, now: int) -> None:
        """Move the clock forward, accruing foreground time and firing
        transition callbacks at the exact transition instants."""
        if now < self.now:
            raise BudgetError(f"clock moved backwards: {now} < {self.now}")
        while True:
            boundary = self._next_transition(now)
            if boundary is None:
                break
            self._accrue_to(boundary)
            self._apply_boundary(boundary)
        self._accrue_to(now)

    def _next_transition(self, now: int) -> int | None:
        """Earliest transition instant in (self.now, now], if any."""
        candidates: list[int] = []
        next_midnight = self.day_start + MS_PER_DAY
        if next_midnight <= now:
            candidates.append(next_midnight)
        if (
            self.bypass_until is not None
            and self.now < self.bypass_until <= now
        ):
            candidates.append(self.bypass_until)
        if (
            self.foreground_is_target
            and not self.ignore_today
            and self.used_today_ms < self.config.daily_limit_ms
        ):
            cross = self.now + (self.config.daily_limit_ms - self.used_today_ms)
            if cross <= now:
                candidates.append(cross)
        if not candidates:
            return None
        return min(candidates)

    def _apply_boundary(self, t: int) -> None:
        if t % MS_PER_DAY == 0:
            self._roll_day()
        elif self.bypass_until is not None and t == self.bypass_until:
            self.bypass_until = None
            self._fire("bypass_expired", t)
        else:
            # Budget limit crossing while a target app is foreground.
            self._fire("limit_reached", t)

    def _roll_day(self) -> None:
        self.used_today_ms = 0
        self.ignore_today = False
        self.encounters_today = 0
        self.bypasses_today = 0
        self._fire("day_rolled", self.now)

    def _accrue_to(self, t: int) -> None:
        if self.foreground_is_target:
            self.used_today_ms += t - self.now
        self.now = t

    def _fire(self, name: str, t: int) -> None:
        if self.on_transition is not None:
            self.on_transition(name, t)

    def record_app_event(self, ev: SessionEvent) -> None:
        """Handle AppEnter / AppExit / ScreenOff, advancing to the event time."""
        self.advance(ev.t)
        if ev.kind is EventKind.APP_ENTER:
            if self.foreground_app is not None:
                raise BudgetError(
                    f"AppEnter({ev.app_id}) while {self.foreground_app} is foreground"
                )
            self.foreground_app = ev.app_id
            self._fire("app_entered", ev.t)
        elif ev.kind is EventKind.APP_EXIT:
            if self.foreground_app != ev.app_id:
                raise BudgetError(
                    f"AppExit({ev.app_id}) while foreground is {self.foreground_app}"
                )
            self.foreground_app = None
            self._fire("app_left", ev.t)
        elif ev.kind is EventKind.SCREEN_OFF:
            self.foreground_app = None
            self._fire("app_left", ev.t)
        else:
            raise BudgetError(f"not an app event: {ev.kind.value}")

    def apply_bypass(self, option: BypassOption, now: int) -> None:
        """Pause the intervention. Requires an encounter earlier the same day."""
        self.advance(now)
        if self.encounters_today == 0:
            raise BudgetError("bypass with no intervention encounter today")
        if option is BypassOption.ONE_MINUTE:
            self.bypass_until = now + 60_000
        elif option is BypassOption.FIFTEEN_MINUTES:
            self.bypass_until = now + 900_000
        elif option is BypassOption.IGNORE_TODAY:
            self.ignore_today = True
            self.bypass_until = None
        self.bypasses_today += 1
        self._fire("bypassed", now)

    def note_encounter(self) -> None:
        self.encounters_today += 1

    def summary(self) -> dict:
        return {
            "used_seconds": self.used_today_ms / 1000.0,
            "daily_limit": self.config.daily_limit_s,
            "intervention_active": self.is_active(),
            "bypass_until": self.bypass_until,
            "ignore_today": self.ignore_today,
            "foreground_app": self.foreground_app,
            "day": self.day_index,
        }


def foreground_intervals(
    events: Iterable[SessionEvent],
) -> list[tuple[str, int, int]]:
    """(app_id, enter_t, exit_t) intervals from an event sequence; raises
    BudgetError on overlapping or unclosed intervals."""
    intervals: list[tuple[str, int, int]] = []
    open_app: str | None = None
    open_t = 0
    for ev in events:
        if ev.kind is EventKind.APP_ENTER:
            if open_app is not None:
                raise BudgetError(
                    f"unclosed interval: AppEnter({ev.app_id}) at t={ev.t} "
                    f"while {open_app} is open"
                )
            open_app, open_t = ev.app_id, ev.t
        elif ev.kind is EventKind.APP_EXIT:
            if open_app != ev.app_id:
                raise BudgetError(f"AppExit({ev.app_id}) at t={ev.t} without matching enter")
            intervals.append((open_app, open_t, ev.t))
            open_app = None
        elif ev.kind is EventKind.SCREEN_OFF:
            if open_app is not None:
                intervals.append((open_app, open_t, ev.t))
                open_app = None
    if open_app is not None:
        raise BudgetError(f"unclosed interval: {open_app} entered at t={open_t} never exits")
    return intervals
