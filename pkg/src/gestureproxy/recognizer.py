"""Streaming recognizer: turns a raw pointer-sample stream into gestures.

Pointers that coexist on screen form one *group*; a group completes when its
last pointer lifts. Classification of a completed group:

* one finger, little movement, short: Tap (at the Down position)
* one finger, little movement, long: LongPress
* otherwise: Swipe along the per-frame centroid of the down pointers,
  provided the end-to-end displacement reaches ``swipe_min_displacement``;
  degenerate wiggles are dropped.

`finger_count` is the maximum number of simultaneously-down pointers during
the group. Cancel ends a pointer's participation without disqualifying the
rest of the group; a group whose every pointer was cancelled yields nothing.

With double-tap detection on, a completed tap is buffered until either a
second tap lands close enough inside ``double_tap_window`` (emitting a
DoubleTap) or the window lapses (emitting the buffered Tap). Emission order
always matches completion order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .events import (
    DoubleTap,
    Gesture,
    LongPress,
    Phase,
    PointerSample,
    Swipe,
    Tap,
    TrajectoryPoint,
)


class RecognizerError(ValueError):
    """Illegal phase transition or clock violation in the fed stream."""


@dataclass(frozen=True)
class RecognizerConfig:
    tap_max_movement: float = 10.0
    tap_max_duration: int = 500
    double_tap_window: int = 300
    double_tap_max_distance: float = 50.0
    swipe_min_displacement: float = 10.0

    def __post_init__(self):
        thresholds = (
            self.tap_max_movement,
            self.tap_max_duration,
            self.double_tap_window,
            self.double_tap_max_distance,
            self.swipe_min_displacement,
        )
        if any(v <= 0 for v in thresholds):
            raise ValueError("all recognizer thresholds must be > 0")


@dataclass
class _Track:
    """One pointer lifetime (Down .. Up/Cancel) within a group. The same
    pointer id may contribute several tracks if it lifts and lands again
    while other group members are still down."""

    samples: list[PointerSample] = field(default_factory=list)
    end_t: int | None = None
    cancelled: bool = False

    @property
    def down(self) -> PointerSample:
        return self.samples[0]


@dataclass
class _Group:
    first_down_t: int
    tracks: list[_Track] = field(default_factory=list)
    open_by_pid: dict[int, _Track] = field(default_factory=dict)
    max_simultaneous: int = 0


def _dist(ax: float, ay: float, bx: float, by: float) -> float:
    return math.hypot(ax - bx, ay - by)


def _group_frames(tracks: list[_Track]) -> list[TrajectoryPoint]:
    """Centroid of the down pointers at each distinct sample timestamp; a
    pointer participates in the frame of its own final sample."""
    times = sorted({s.t for tr in tracks for s in tr.samples})
    frames: list[TrajectoryPoint] = []
    for t in times:
        points = []
        for tr in tracks:
            if tr.down.t <= t <= tr.samples[-1].t:
                latest = None
                for s in tr.samples:
                    if s.t <= t:
                        latest = s
                if latest is not None:
                    points.append((latest.x, latest.y))
        if points:
            frames.append(
                TrajectoryPoint(
                    sum(p[0] for p in points) / len(points),
                    sum(p[1] for p in points) / len(points),
                    t,
                )
            )
    return frames


def classify_group(
    config: RecognizerConfig,
    tracks: list[_Track],
    finger_count: int,
) -> Gesture | None:
    """Classify one completed pointer group; None when it forms no gesture."""
    if all(tr.cancelled for tr in tracks):
        return None
    frames = _group_frames(tracks)
    if not frames:
        return None
    if finger_count == 1:
        (track,) = tracks
        down = track.down
        # Movement is judged over the raw samples, not the deduplicated frames.
        movement = max(_dist(down.x, down.y, s.x, s.y) for s in track.samples)
        if movement <= config.tap_max_movement:
            duration = track.samples[-1].t - down.t
            if duration <= config.tap_max_duration:
                return Tap(down.x, down.y, down.t, duration)
            return LongPress(down.x, down.y, down.t, duration)
    first, last = frames[0], frames[-1]
    displacement = _dist(first.x, first.y, last.x, last.y)
    if len(frames) >= 2 and displacement >= config.swipe_min_displacement:
        return Swipe(tuple(frames), finger_count)
    return None


class Recognizer:
    """Single-owner streaming recognizer; one instance per device session."""

    def __init__(self, config: RecognizerConfig | None = None, detect_double_taps: bool = False):
        self.config = config or RecognizerConfig()
        self.detect_double_taps = detect_double_taps
        self._group: _Group | None = None
        self._pending_tap: Tap | None = None
        self._last_t = 0

    @property
    def has_active_pointers(self) -> bool:
        return self._group is not None

    def feed(self, sample: PointerSample) -> list[Gesture]:
        """Consume one sample; return gestures that completed, oldest first."""
        if sample.t < self._last_t:
            raise RecognizerError(
                f"pointer {sample.pointer_id}: non-monotonic t {sample.t} after {self._last_t}"
            )
        self._last_t = sample.t

        out: list[Gesture] = []
        group = self._group

        if sample.phase is Phase.DOWN:
            if group is not None and sample.pointer_id in group.open_by_pid:
                raise RecognizerError(f"pointer {sample.pointer_id}: Down while already down")
            if group is None:
                # Starting a fresh group; a stale buffered tap can no longer pair.
                out.extend(self._flush_pending_if_expired(sample.t))
                group = _Group(first_down_t=sample.t)
                self._group = group
            track = _Track(samples=[sample])
            group.tracks.append(track)
            group.open_by_pid[sample.pointer_id] = track
            group.max_simultaneous = max(group.max_simultaneous, len(group.open_by_pid))
            return out

        if group is None or sample.pointer_id not in group.open_by_pid:
            raise RecognizerError(
                f"pointer {sample.pointer_id}: {sample.phase.value} before Down"
            )
        track = group.open_by_pid[sample.pointer_id]
        track.samples.append(sample)
        if sample.phase is Phase.MOVE:
            return out
        # Up or Cancel ends this pointer lifetime.
        track.end_t = sample.t
        track.cancelled = sample.phase is Phase.CANCEL
        del group.open_by_pid[sample.pointer_id]
        if not group.open_by_pid:
            self._group = None
            out.extend(self._complete_group(group))
        return out

    def advance_clock(self, now: int) -> list[Gesture]:
        """Advance the virtual clock; flushes a buffered tap whose double-tap
        window has lapsed. Safe to call repeatedly."""
        if now < self._last_t:
            raise RecognizerError(f"clock moved backwards: {now} after {self._last_t}")
        self._last_t = now
        if self._group is not None:
            return []
        return self._flush_pending_if_expired(now)

    def finish(self) -> list[Gesture]:
        """End of stream: resolve any buffered tap."""
        out: list[Gesture] = []
        if self._pending_tap is not None:
            out.append(self._pending_tap)
            self._pending_tap = None
        return out

    def _flush_pending_if_expired(self, now: int) -> list[Gesture]:
        pending = self._pending_tap
        if pending is None:
            return []
        if now > pending.completed_at + self.config.double_tap_window:
            self._pending_tap = None
            return [pending]
        return []

    def _complete_group(self, group: _Group) -> list[Gesture]:
        gesture = classify_group(self.config, group.tracks, group.max_simultaneous)
        if gesture is None:
            return []
        if not self.detect_double_taps:
            return [gesture]
        return self._resolve_double_tap(gesture)

    def _resolve_double_tap(self, gesture: Gesture) -> list[Gesture]:
        pending = self._pending_tap
        if isinstance(gesture, Tap):
            if pending is None:
                self._pending_tap = gesture
                return []
            gap = gesture.t_down - pending.completed_at
            close = (
                _dist(pending.x, pending.y, gesture.x, gesture.y)
                <= self.config.double_tap_max_distance
            )
            if 0 < gap <= self.config.double_tap_window and close:
                self._pending_tap = None
                return [DoubleTap(pending, gesture)]
            self._pending_tap = gesture
            return [pending]
        if pending is not None:
            self._pending_tap = None
            return [pending, gesture]
        return [gesture]
