"""The shared daily budget and the bypass state machine.

All target apps draw from one budget (an hour by default). The moment it is
spent, the intervention engages; the user can pause it for one minute,
fifteen minutes, or the rest of the day. At midnight everything resets.
"""

from gestureproxy import BudgetConfig, BudgetController, BypassOption, SessionEvent

controller = BudgetController(
    BudgetConfig(target_apps=frozenset({"feed.app", "video.app"}), daily_limit_s=3600)
)
controller.on_transition = lambda name, t: print(f"  [transition] {name} at t={t} ms")

print("Half an hour in feed.app, half an hour in video.app:")
controller.record_app_event(SessionEvent.app_enter(0, "feed.app"))
controller.record_app_event(SessionEvent.app_exit(1_800_000, "feed.app"))
controller.record_app_event(SessionEvent.app_enter(1_900_000, "video.app"))
print(f"  used so far: {controller.used_today_s:.0f} s, engaged: {controller.is_active()}")

print("\nThe second half hour runs the shared budget out mid-session:")
controller.advance(3_800_000)
print(f"  used: {controller.used_today_s:.0f} s, engaged: {controller.is_active()}")

print("\nBypassing for fifteen minutes:")
controller.note_encounter()  # normally logged by the session pipeline
controller.apply_bypass(BypassOption.FIFTEEN_MINUTES, 3_800_000)
print(f"  engaged during bypass: {controller.is_active()}")
controller.advance(3_800_000 + 900_000)
print(f"  engaged after it lapses: {controller.is_active()}")

print("\nIgnoring for the rest of the day, then midnight:")
controller.note_encounter()
controller.apply_bypass(BypassOption.IGNORE_TODAY, 4_800_000)
print(f"  engaged after ignore-today: {controller.is_active()}")
controller.record_app_event(SessionEvent.app_exit(5_000_000, "video.app"))
controller.record_app_event(SessionEvent.app_enter(86_500_000, "feed.app"))
print(
    f"  next morning: used {controller.used_today_s:.0f} s, "
    f"ignore flag {controller.ignore_today}, engaged {controller.is_active()}"
)
