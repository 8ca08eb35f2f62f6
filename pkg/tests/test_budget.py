"""Budget accrual, the exact trigger point, day rollover, and the three
bypass options."""

from __future__ import annotations

import pytest

from gestureproxy.budget import (
    MS_PER_DAY,
    BudgetConfig,
    BudgetController,
    BudgetError,
    foreground_intervals,
)
from gestureproxy.events import BypassOption, SessionEvent

TARGETS = frozenset({"target.a", "target.b"})


def controller(limit_s: int = 3600) -> BudgetController:
    return BudgetController(BudgetConfig(target_apps=TARGETS, daily_limit_s=limit_s))


class TestAccrual:
    def test_ten_minute_session(self):
        c = controller()
        c.record_app_event(SessionEvent.app_enter(0, "target.a"))
        c.record_app_event(SessionEvent.app_exit(600_000, "target.a"))
        assert c.used_today_s == 600.0

    def test_non_target_never_accrues(self):
        c = controller()
        c.record_app_event(SessionEvent.app_enter(0, "other.app"))
        c.record_app_event(SessionEvent.app_exit(5_000_000, "other.app"))
        assert c.used_today_s == 0.0

    def test_screen_off_closes_interval(self):
        c = controller()
        c.record_app_event(SessionEvent.app_enter(0, "target.a"))
        c.record_app_event(SessionEvent.screen_off(120_000))
        assert c.used_today_s == 120.0

    def test_midnight_splits_accrual(self):
        # 30 min before midnight to 30 min after: 1800 s to each day.
        c = controller()
        start = MS_PER_DAY - 1_800_000
        c.record_app_event(SessionEvent.app_enter(start, "target.a"))
        day1_used = []
        c.on_transition = lambda name, t: name == "day_rolled" and day1_used.append(t)
        c.record_app_event(SessionEvent.app_exit(MS_PER_DAY + 1_800_000, "target.a"))
        assert day1_used == [MS_PER_DAY]
        assert c.used_today_s == 1800.0  # day 2's share only

    def test_budget_conservation(self):
        c = controller()
        intervals = [(0, 60_000), (100_000, 160_000), (200_000, 260_000)]
        for start, end in intervals:
            c.record_app_event(SessionEvent.app_enter(start, "target.a"))
            c.record_app_event(SessionEvent.app_exit(end, "target.a"))
        assert c.used_today_ms == sum(end - start for start, end in intervals)

    def test_overlapping_enter_rejected(self):
        c = controller()
        c.record_app_event(SessionEvent.app_enter(0, "target.a"))
        with pytest.raises(BudgetError):
            c.record_app_event(SessionEvent.app_enter(10, "target.b"))


class TestActivation:
    def test_exact_trigger_at_limit(self):
        c = controller()
        c.record_app_event(SessionEvent.app_enter(0, "target.a"))
        c.advance(3_599_999)
        assert not c.is_active()
        c.advance(3_600_000)
        assert c.is_active()

    def test_transition_fires_at_crossing_instant(self):
        c = controller()
        fired = []
        c.on_transition = lambda name, t: fired.append((name, t))
        c.record_app_event(SessionEvent.app_enter(1000, "target.a"))
        c.advance(5_000_000)
        assert ("limit_reached", 3_601_000) in fired

    def test_non_target_not_active_even_over_limit(self):
        c = controller()
        c.record_app_event(SessionEvent.app_enter(0, "target.a"))
        c.record_app_event(SessionEvent.app_exit(3_700_000, "target.a"))
        assert not c.is_active("other.app")
        assert c.is_active("target.b")

    def test_below_limit_not_active(self):
        c = controller()
        c.record_app_event(SessionEvent.app_enter(0, "target.a"))
        c.advance(3_599_000)
        assert not c.is_active()

    def test_day_rollover_resets(self):
        c = controller()
        c.record_app_event(SessionEvent.app_enter(0, "target.a"))
        c.advance(3_700_000)
        assert c.is_active()
        c.advance(MS_PER_DAY + 5)
        assert c.used_today_ms == 5
        assert not c.is_active()


class TestBypass:
    def _engaged_controller(self) -> BudgetController:
        c = controller()
        c.record_app_event(SessionEvent.app_enter(0, "target.a"))
        c.advance(3_600_000)
        c.note_encounter()
        return c

    def test_one_minute(self):
        c = self._engaged_controller()
        c.apply_bypass(BypassOption.ONE_MINUTE, 3_600_000)
        assert c.bypass_until == 3_660_000
        assert not c.is_active()
        c.advance(3_660_000)
        assert c.is_active()

    def test_fifteen_minutes_then_expiry(self):
        c = self._engaged_controller()
        c.apply_bypass(BypassOption.FIFTEEN_MINUTES, 3_600_000)
        assert c.bypass_until == 4_500_000
        c.advance(3_600_000 + 16 * 60_000)
        assert c.is_active()

    def test_ignore_today_holds_until_midnight(self):
        c = self._engaged_controller()
        c.apply_bypass(BypassOption.IGNORE_TODAY, 3_600_000)
        c.advance(MS_PER_DAY - 1)
        assert not c.is_active()
        c.record_app_event(SessionEvent.app_exit(MS_PER_DAY - 1, "target.a"))
        c.record_app_event(SessionEvent.app_enter(MS_PER_DAY + 10, "target.a"))
        assert not c.ignore_today  # fresh day
        assert not c.is_active()  # fresh budget too

    def test_bypass_requires_encounter(self):
        c = controller()
        c.record_app_event(SessionEvent.app_enter(0, "target.a"))
        c.advance(3_600_000)
        with pytest.raises(BudgetError, match="encounter"):
            c.apply_bypass(BypassOption.ONE_MINUTE, 3_600_000)

    def test_expiry_transition_fires(self):
        c = self._engaged_controller()
        fired = []
        c.on_transition = lambda name, t: fired.append((name, t))
        c.apply_bypass(BypassOption.ONE_MINUTE, 3_600_000)
        c.advance(3_700_000)
        assert ("bypass_expired", 3_660_000) in fired

    def test_encounters_never_below_bypasses(self):
        c = self._engaged_controller()
        c.apply_bypass(BypassOption.ONE_MINUTE, 3_600_000)
        assert c.encounters_today >= c.bypasses_today
        c.advance(3_660_000)
        c.note_encounter()
        c.apply_bypass(BypassOption.FIFTEEN_MINUTES, 3_661_000)
        assert c.encounters_today >= c.bypasses_today


class TestForegroundIntervals:
    def test_extracts_intervals(self):
        events = [
            SessionEvent.app_enter(0, "a"),
            SessionEvent.app_exit(100, "a"),
            SessionEvent.app_enter(200, "b"),
            SessionEvent.screen_off(350),
        ]
        assert foreground_intervals(events) == [("a", 0, 100), ("b", 200, 350)]

    def test_unclosed_trailing_interval(self):
        with pytest.raises(BudgetError, match="unclosed interval"):
            foreground_intervals([SessionEvent.app_enter(0, "a")])

    def test_overlapping_enters(self):
        with pytest.raises(BudgetError, match="unclosed interval"):
            foreground_intervals(
                [SessionEvent.app_enter(0, "a"), SessionEvent.app_enter(10, "b")]
            )
