"""Hand-built session-event fixtures shared by the analytics and acceptance
suites. Every expected value asserted against these is tallied by hand from
the construction, never from the code under test."""

from __future__ import annotations

from gestureproxy.budget import MS_PER_DAY
from gestureproxy.events import BypassOption, InterventionMode, SessionEvent

DAY = MS_PER_DAY
TARGETS = ["t.a", "t.b"]


def mins(m: float) -> int:
    return int(m * 60_000)


def three_day_fixture() -> list[SessionEvent]:
    """Hand-tallied: day 0 targets 20 min (2 openings of t.a), day 1 targets
    25 min (t.a 20 + t.b 5), day 2 targets 15 min (t.b); non-target n.x 10
    min on day 0."""
    ev: list[SessionEvent] = []

    def session(app, start, minutes, screen_off=False):
        ev.append(SessionEvent.app_enter(start, app))
        end = start + mins(minutes)
        if screen_off:
            ev.append(SessionEvent.screen_off(end))
        else:
            ev.append(SessionEvent.app_exit(end, app))

    session("t.a", 0, 10)
    session("n.x", mins(12), 10)
    session("t.a", mins(34), 10, screen_off=True)
    session("t.a", DAY, 20)
    session("t.b", DAY + mins(33), 5)
    session("t.b", 2 * DAY, 15)
    return ev


def encounters_fixture(n_encounters: int, n_bypasses: int) -> list[SessionEvent]:
    """n encounters on t.a, the first n_bypasses of them bypassed."""
    events = []
    t = 0
    for i in range(n_encounters):
        events.append(SessionEvent.app_enter(t, "t.a"))
        events.append(SessionEvent.encounter(t + 1000, "t.a", InterventionMode.MANIPULATION))
        if i < n_bypasses:
            events.append(SessionEvent.bypass(t + 2000, BypassOption.ONE_MINUTE))
        events.append(SessionEvent.app_exit(t + 10_000, "t.a"))
        t += 20_000
    return events


def ipm_span_fixture(minutes: float, touches: int) -> list[SessionEvent]:
    """One engaged span on t.a with exactly `touches` logged gestures."""
    events = [SessionEvent.app_enter(0, "t.a")]
    events.append(SessionEvent.encounter(0, "t.a", InterventionMode.MANIPULATION))
    for i in range(touches):
        events.append(
            SessionEvent.gesture_logged(
                1 + i, {"type": "Tap", "x": 0.0, "y": 0.0, "disposition": "Dispatched"}
            )
        )
    events.append(SessionEvent.app_exit(mins(minutes), "t.a"))
    return events


def after_acceptance_fixture(
    non_target: int = 508, target: int = 271, screen: int = 221
) -> list[SessionEvent]:
    """Accepted encounters shaped to a chosen destination split."""
    events = []
    t = 0

    def accepted_encounter(destination: str):
        nonlocal t
        events.append(SessionEvent.app_enter(t, "t.a"))
        events.append(SessionEvent.encounter(t + 500, "t.a", InterventionMode.MANIPULATION))
        if destination == "screen":
            events.append(SessionEvent.screen_off(t + 5000))
        else:
            events.append(SessionEvent.app_exit(t + 5000, "t.a"))
            app = "n.x" if destination == "non_target" else "t.b"
            events.append(SessionEvent.app_enter(t + 6000, app))
            events.append(SessionEvent.screen_off(t + 9000))
        t += 10_000

    for _ in range(non_target):
        accepted_encounter("non_target")
    for _ in range(target):
        accepted_encounter("target")
    for _ in range(screen):
        accepted_encounter("screen")
    return events
