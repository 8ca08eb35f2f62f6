"""Usage metrics over session-event logs, plus the daily timeline export.

Every metric is a pure function of the event list; recomputation is
idempotent. Day boundaries fall at multiples of 24 h on the virtual clock
(the simulated local midnight). Undefined ratios (zero encounters, zero base
usage) come back as None and are excluded from aggregates, never zero-filled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .budget import MS_PER_DAY, foreground_intervals
from .events import EventKind, SessionEvent

MS_PER_MINUTE = 60_000.0


def _day_window(day_range: tuple[int, int]) -> tuple[int, int]:
    first, last = day_range
    if last < first:
        raise ValueError(f"empty day range {day_range}")
    return first * MS_PER_DAY, (last + 1) * MS_PER_DAY


def usage_time(
    events: Sequence[SessionEvent],
    apps: Iterable[str] | None,
    day_range: tuple[int, int],
) -> float:
    """Foreground minutes of `apps` (all apps when None) inside the inclusive
    day range. Raises on overlapping or unclosed intervals."""
    lo, hi = _day_window(day_range)
    app_set = None if apps is None else set(apps)
    total_ms = 0
    for app, start, end in foreground_intervals(events):
        if app_set is not None and app not in app_set:
            continue
        clipped = min(end, hi) - max(start, lo)
        if clipped > 0:
            total_ms += clipped
    return total_ms / MS_PER_MINUTE


def opening_frequency(
    events: Sequence[SessionEvent],
    apps: Iterable[str] | None,
    day_range: tuple[int, int],
) -> int:
    """Number of AppEnter events for `apps` inside the inclusive day range."""
    lo, hi = _day_window(day_range)
    app_set = None if apps is None else set(apps)
    return sum(
        1
        for ev in events
        if ev.kind is EventKind.APP_ENTER
        and lo <= ev.t < hi
        and (app_set is None or ev.app_id in app_set)
    )


def normalize(period_value: float, base_value: float) -> float | None:
    """Ratio of a period measure against the matching base-period measure;
    below 1 means reduced usage. None (undefined) when the base is zero."""
    if base_value <= 0:
        return None
    return period_value / base_value


def daily_mean(total: float, day_range: tuple[int, int]) -> float:
    first, last = day_range
    return total / (last - first + 1)


def _attributed_bypasses(events: Sequence[SessionEvent]) -> list[tuple[SessionEvent, str]]:
    """Each bypass paired with the app of the most recent encounter."""
    out = []
    last_app: str | None = None
    for ev in events:
        if ev.kind is EventKind.INTERVENTION_ENCOUNTER:
            last_app = ev.app_id
        elif ev.kind is EventKind.BYPASS:
            if last_app is None:
                raise ValueError(f"Bypass at t={ev.t} precedes any encounter")
            out.append((ev, last_app))
    return out


def acceptance_rate(
    events: Sequence[SessionEvent],
    apps: Iterable[str] | None = None,
) -> float | None:
    """1 - bypasses/encounters over the filtered events; None when there are
    no encounters to accept."""
    app_set = None if apps is None else set(apps)
    encounters = sum(
        1
        for ev in events
        if ev.kind is EventKind.INTERVENTION_ENCOUNTER
        and (app_set is None or ev.app_id in app_set)
    )
    if encounters == 0:
        return None
    bypasses = sum(
        1
        for _, app in _attributed_bypasses(events)
        if app_set is None or app in app_set
    )
    return 1.0 - bypasses / encounters


@dataclass(frozen=True)
class InterventionSpan:
    """One engaged stretch: from the encounter to the first bypass, app exit,
    screen-off or midnight."""

    app_id: str
    start: int
    end: int
    touches: int


def intervention_spans(events: Sequence[SessionEvent]) -> list[InterventionSpan]:
    spans: list[InterventionSpan] = []
    span_start: int | None = None
    span_app = ""
    touches = 0

    def close(end_t: int) -> None:
        nonlocal span_start, span_app, touches
        if span_start is not None:
            # The budget resets at midnight, so a span never crosses it.
            end = min(end_t, (span_start // MS_PER_DAY + 1) * MS_PER_DAY)
            spans.append(InterventionSpan(span_app, span_start, end, touches))
        span_start, span_app, touches = None, "", 0

    last_t = 0
    for ev in events:
        last_t = max(last_t, ev.t)
        if ev.kind in (EventKind.APP_EXIT, EventKind.SCREEN_OFF, EventKind.BYPASS):
            close(ev.t)
        elif ev.kind is EventKind.INTERVENTION_ENCOUNTER:
            close(ev.t)
            span_app = ev.app_id or ""
            span_start = ev.t
        elif ev.kind is EventKind.GESTURE_LOGGED and span_start is not None:
            touches += 1
    close(last_t)
    return spans


def ipm(events: Sequence[SessionEvent], app: str) -> float | None:
    """Mean screen touches per minute across the app's engaged spans; None
    when the app was never engaged for a positive duration."""
    total_ms = 0
    total_touches = 0
    for span in intervention_spans(events):
        if span.app_id != app:
            continue
        total_ms += span.end - span.start
        total_touches += span.touches
    if total_ms <= 0:
        return None
    return total_touches / (total_ms / MS_PER_MINUTE)


def ipm_class(value: float) -> str:
    """Interaction-intensity class: Low (<=10), Medium (10, 18], High (>18)."""
    if value <= 10:
        return "Low"
    if value <= 18:
        return "Medium"
    return "High"


def after_acceptance(
    events: Sequence[SessionEvent],
    target_apps: Iterable[str] | None = None,
) -> dict[str, float]:
    """Where users went right after an accepted (non-bypassed) encounter's
    session ended: another target app, a non-target app, or screen off.
    Proportions over the classified encounters; empty dict when none."""
    targets = (
        set(target_apps)
        if target_apps is not None
        else {
            ev.app_id
            for ev in events
            if ev.kind is EventKind.INTERVENTION_ENCOUNTER
        }
    )
    counts = {"NonTargetApp": 0, "TargetApp": 0, "ScreenClose": 0}
    n = len(events)
    for i, ev in enumerate(events):
        if ev.kind is not EventKind.INTERVENTION_ENCOUNTER:
            continue
        app = ev.app_id
        # Find this session's end; a bypass on the way disqualifies.
        j = i + 1
        bypassed = False
        session_end = None
        while j < n:
            nxt = events[j]
            if nxt.kind is EventKind.BYPASS:
                bypassed = True
                break
            if nxt.kind is EventKind.SCREEN_OFF:
                session_end = ("ScreenClose", j)
                break
            if nxt.kind is EventKind.APP_EXIT and nxt.app_id == app:
                session_end = ("Exit", j)
                break
            if nxt.kind is EventKind.INTERVENTION_ENCOUNTER:
                # Fresh encounter in the same session supersedes this one.
                session_end = None
                break
            j += 1
        if bypassed or session_end is None:
            continue
        how, j = session_end
        if how == "ScreenClose":
            counts["ScreenClose"] += 1
            continue
        # Session ended with an app exit: classify the next destination.
        k = j + 1
        while k < n:
            nxt = events[k]
            if nxt.kind is EventKind.APP_ENTER:
                counts["TargetApp" if nxt.app_id in targets else "NonTargetApp"] += 1
                break
            if nxt.kind is EventKind.SCREEN_OFF:
                counts["ScreenClose"] += 1
                break
            k += 1
    total = sum(counts.values())
    if total == 0:
        return {}
    return {key: value / total for key, value in counts.items()}


@dataclass(frozen=True)
class TimelineDocument:
    """App activity spans and gesture markers for one day. Markers exist only
    where the engine logged gestures, i.e. while the intervention was on."""

    day: int
    spans: tuple[tuple[str, int, int], ...]
    markers: tuple[dict, ...]

    def to_json_obj(self) -> dict:
        return {
            "day": self.day,
            "spans": [
                {"app_id": app, "start": start, "end": end}
                for app, start, end in self.spans
            ],
            "markers": list(self.markers),
        }


def timeline_export(events: Sequence[SessionEvent], day: int) -> TimelineDocument:
    """Collect one day's app spans and intervention-period gesture markers."""
    lo, hi = day * MS_PER_DAY, (day + 1) * MS_PER_DAY
    spans = []
    for app, start, end in foreground_intervals(events):
        s, e = max(start, lo), min(end, hi)
        if s < e:
            spans.append((app, s, e))
    markers = []
    for ev in events:
        if ev.kind is EventKind.GESTURE_LOGGED and lo <= ev.t < hi:
            summary = dict(ev.gesture_summary or {})
            summary["t"] = ev.t
            markers.append(summary)
    return TimelineDocument(day=day, spans=tuple(spans), markers=tuple(markers))


_MARKER_COLORS = {
    "Swipe": "#111111",
    "Tap": "#c0392b",
    "DoubleTap": "#c0392b",
    "LongPress": "#e67e22",
}


def render_timeline_html(doc: TimelineDocument) -> str:
    """Self-contained static document: embedded JSON data plus an SVG
    rendering of the spans (lanes per app) and gesture dots."""
    import json as _json

    lo = doc.day * MS_PER_DAY
    apps = sorted({app for app, _, _ in doc.spans})
    lane = {app: i for i, app in enumerate(apps)}
    width, lane_h, left = 1000.0, 28, 140

    def x_of(t: int) -> float:
        return left + (t - lo) / MS_PER_DAY * (width - left - 20)

    parts = [
        "<!DOCTYPE html>",
        "<html><head><meta charset='utf-8'><title>Day %d timeline</title></head><body>" % doc.day,
        "<h1>App activity, day %d</h1>" % doc.day,
        "<p>Dots mark gestures recorded while the intervention was on: "
        "<span style='color:#c0392b'>red = taps</span>, black = swipes.</p>",
        '<script type="application/json" id="timeline-data">%s</script>'
        % _json.dumps(doc.to_json_obj(), sort_keys=True, separators=(",", ":")),
    ]
    height = lane_h * max(len(apps), 1) + 40
    parts.append(
        f'<svg width="{width:.0f}" height="{height}" '
        'xmlns="http://www.w3.org/2000/svg" font-family="sans-serif" font-size="12">'
    )
    for app in apps:
        y = 20 + lane[app] * lane_h
        parts.append(f'<text x="4" y="{y + 14}">{_escape(app)}</text>')
    for app, start, end in doc.spans:
        y = 20 + lane[app] * lane_h
        parts.append(
            f'<rect x="{x_of(start):.2f}" y="{y + 4}" '
            f'width="{max(x_of(end) - x_of(start), 0.5):.2f}" height="{lane_h - 10}" '
            'fill="#aed6f1" stroke="#2e86c1"/>'
        )
    for m in doc.markers:
        t = int(m["t"])
        app = _marker_app(doc.spans, t)
        if app is None:
            continue
        y = 20 + lane[app] * lane_h + lane_h / 2 - 1
        color = _MARKER_COLORS.get(str(m.get("type", "")), "#7f8c8d")
        parts.append(f'<circle cx="{x_of(t):.2f}" cy="{y:.1f}" r="3" fill="{color}"/>')
    for hour in range(0, 25, 6):
        x = x_of(lo + hour * 3_600_000)
        parts.append(f'<text x="{x:.2f}" y="{height - 6}" fill="#555">{hour:02d}:00</text>')
    parts.append("</svg></body></html>")
    return "\n".join(parts) + "\n"


def _marker_app(spans: Sequence[tuple[str, int, int]], t: int) -> str | None:
    for app, start, end in spans:
        if start <= t <= end:
            return app
    return None


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


@dataclass(frozen=True)
class UsageStats:
    """One base-vs-period comparison for an app set, plus intervention
    receptivity measures over the whole log."""

    apps: tuple[str, ...] | None
    base_days: tuple[int, int]
    period_days: tuple[int, int]
    usage_minutes_base: float
    usage_minutes_period: float
    opening_count_base: int
    opening_count_period: int
    normalized_usage_ratio: float | None
    normalized_frequency_ratio: float | None
    acceptance_rate: float | None
    ipm_by_app: dict[str, tuple[float, str]]
    after_acceptance_distribution: dict[str, float]

    def to_json_obj(self) -> dict:
        return {
            "apps": list(self.apps) if self.apps is not None else None,
            "base_days": list(self.base_days),
            "period_days": list(self.period_days),
            "usage_minutes": {"base": self.usage_minutes_base, "period": self.usage_minutes_period},
            "opening_count": {"base": self.opening_count_base, "period": self.opening_count_period},
            "normalized_usage_ratio": self.normalized_usage_ratio,
            "normalized_frequency_ratio": self.normalized_frequency_ratio,
            "acceptance_rate": self.acceptance_rate,
            "ipm": {
                app: {"ipm": value, "class": label}
                for app, (value, label) in sorted(self.ipm_by_app.items())
            },
            "after_acceptance": self.after_acceptance_distribution,
        }


def summarize(
    events: Sequence[SessionEvent],
    apps: Iterable[str] | None,
    base_days: tuple[int, int],
    period_days: tuple[int, int],
) -> UsageStats:
    """Compute the full comparison for one app set in one pass."""
    app_tuple = tuple(apps) if apps is not None else None
    base_usage = usage_time(events, app_tuple, base_days)
    period_usage = usage_time(events, app_tuple, period_days)
    base_freq = opening_frequency(events, app_tuple, base_days)
    period_freq = opening_frequency(events, app_tuple, period_days)
    app_ids = (
        sorted(app_tuple)
        if app_tuple
        else sorted({ev.app_id for ev in events if ev.app_id is not None})
    )
    ipm_by_app = {}
    for app in app_ids:
        value = ipm(events, app)
        if value is not None:
            ipm_by_app[app] = (value, ipm_class(value))
    return UsageStats(
        apps=app_tuple,
        base_days=base_days,
        period_days=period_days,
        usage_minutes_base=base_usage,
        usage_minutes_period=period_usage,
        opening_count_base=base_freq,
        opening_count_period=period_freq,
        normalized_usage_ratio=normalize(
            daily_mean(period_usage, period_days), daily_mean(base_usage, base_days)
        ),
        normalized_frequency_ratio=normalize(
            daily_mean(period_freq, period_days), daily_mean(base_freq, base_days)
        ),
        acceptance_rate=acceptance_rate(events, app_tuple),
        ipm_by_app=ipm_by_app,
        after_acceptance_distribution=after_acceptance(events, app_tuple),
    )
