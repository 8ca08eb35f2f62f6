"""End to end: a scripted agent generates a trace, the engine replays it,
and the analytics turn the log into usage metrics and a timeline page.

Outputs land in demos/out/.
"""

import json
from pathlib import Path

from gestureproxy import BudgetConfig, InterventionConfig, SessionConfig, SwipeStrategy, TapStrategy
from gestureproxy.agents import run_agent
from gestureproxy.analytics import (
    acceptance_rate,
    opening_frequency,
    render_timeline_html,
    timeline_export,
    usage_time,
)
from gestureproxy.events import dumps_canonical, write_trace
from gestureproxy.replay import load_log, replay

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

config = SessionConfig(
    intervention=InterventionConfig(
        tap_strategy=TapStrategy.DELAY,
        swipe_strategy=SwipeStrategy.DECELERATE,
        T_tap_delay_max=1000,
        F_swipe_decelerate_min=0.25,
    ),
    budget=BudgetConfig(target_apps=frozenset({"feed.app"}), daily_limit_s=60),
)

script = {
    "seed": 42,
    "actions": [
        {"do": "open", "app": "feed.app"},
        {"do": "swipe", "count": 20, "cadence_ms": 4000},
        {"do": "tap", "count": 10, "cadence_ms": 2000},
        {"do": "close"},
        {"do": "screen_off"},
    ],
}

print("Running the scripted agent (60 s budget, so the ramp engages quickly)...")
result = run_agent(script, config)
trace_path = out_dir / "demo_trace.jsonl"
with trace_path.open("w") as fp:
    write_trace(fp, result.trace)
log_path = out_dir / "demo_log.jsonl"
log_path.write_text("".join(dumps_canonical(r) + "\n" for r in result.output))
print(f"  trace: {trace_path} ({len(result.trace)} items)")
print(f"  log:   {log_path} ({len(result.output)} records)")

print("\nReplaying the trace reproduces the log exactly:")
print(f"  identical: {replay(result.trace, config) == result.output}")

log = load_log(log_path.open())
print("\nMetrics from the log:")
print(f"  usage on day 0:        {usage_time(log.events, ['feed.app'], (0, 0)):.2f} min")
print(f"  openings on day 0:     {opening_frequency(log.events, ['feed.app'], (0, 0))}")
print(f"  acceptance rate:       {acceptance_rate(log.events)}")
delays = [r["t"] - r["completed_at"] for r in log.virtual_gestures]
print(f"  per-gesture lag (ms):  first {delays[0]}, last {delays[-1]}")

timeline_path = out_dir / "demo_day0.html"
doc = timeline_export(log.events, 0)
timeline_path.write_text(render_timeline_html(doc))
print(f"\nTimeline page with {len(doc.markers)} gesture markers: {timeline_path}")

stats_path = out_dir / "demo_stats.json"
stats_path.write_text(
    json.dumps(
        {
            "usage_minutes_day0": usage_time(log.events, ["feed.app"], (0, 0)),
            "openings_day0": opening_frequency(log.events, ["feed.app"], (0, 0)),
            "acceptance_rate": acceptance_rate(log.events),
        },
        indent=2,
    )
)
print(f"Stats summary: {stats_path}")
