"""Gesture rewriting: the four tap and four swipe manipulation strategies,
plus the lockout filter that consumes everything behind a blocking screen.

Every operation is a pure function from a recognized gesture (and explicit
parameters) to the virtual gesture the proxy dispatches, or to suppression.
``apply_strategies`` routes one gesture through exactly one strategy for its
category; long presses always pass through untouched.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .events import (
    ConfigError,
    DoubleTap,
    Gesture,
    InterventionConfig,
    LongPress,
    Screen,
    Swipe,
    SwipeStrategy,
    Tap,
    TapStrategy,
    TrajectoryPoint,
    VirtualGesture,
)


class Disposition(Enum):
    DISPATCHED = "Dispatched"
    SUPPRESSED = "Suppressed"
    BLOCKED = "Blocked"


@dataclass(frozen=True)
class GestureOutcome:
    """What became of one recognized gesture: exactly one of a dispatched
    virtual gesture, a suppression, or a lockout block."""

    gesture: Gesture
    disposition: Disposition
    virtual: VirtualGesture | None = None

    def __post_init__(self):
        if (self.disposition is Disposition.DISPATCHED) != (self.virtual is not None):
            raise ValueError("dispatched outcomes carry a virtual gesture; others do not")


class Intensities(NamedTuple):
    """The manipulation magnitudes currently in force (ramped or static)."""

    tap_delay_ms: int
    tap_threshold_ms: int
    swipe_delay_ms: int
    decel_factor: float

    @classmethod
    def at_max(cls, config: InterventionConfig) -> "Intensities":
        return cls(
            tap_delay_ms=config.T_tap_delay_max,
            tap_threshold_ms=config.T_tap_threshold_max,
            swipe_delay_ms=config.T_swipe_delay_max,
            decel_factor=config.F_swipe_decelerate_min,
        )

    @classmethod
    def zero(cls) -> "Intensities":
        return cls(tap_delay_ms=0, tap_threshold_ms=0, swipe_delay_ms=0, decel_factor=1.0)


def _identity(g: Gesture) -> VirtualGesture:
    return VirtualGesture(g, dispatch_at=g.completed_at)


def _round_half_up(x: float) -> int:
    # Banker's rounding can collapse strictly increasing timestamps.
    return math.floor(x + 0.5)


def tap_delay(g: Tap, delay_ms: int) -> VirtualGesture:
    """Postpone the tap: identical gesture dispatched delay_ms after release."""
    if delay_ms < 0:
        raise ConfigError(f"delay must be >= 0, got {delay_ms}")
    return VirtualGesture(g, dispatch_at=g.completed_at + delay_ms)


def tap_prolong(g: Tap, threshold_ms: int) -> VirtualGesture | None:
    """Require a press of at least threshold_ms; shorter taps are ignored."""
    if threshold_ms < 0:
        raise ConfigError(f"threshold must be >= 0, got {threshold_ms}")
    if g.duration < threshold_ms:
        return None
    return _identity(g)


def tap_shift(g: Tap, shift: tuple[float, float], screen: Screen) -> VirtualGesture:
    """Move the tap by a fixed offset, clamped onto the screen; timing unchanged."""
    x, y = screen.clamp(g.x + shift[0], g.y + shift[1])
    return _identity(Tap(x, y, g.t_down, g.duration))


def tap_double_remap(g: Tap | DoubleTap) -> VirtualGesture | None:
    """A double tap becomes a single tap at the first tap's location; a lone
    single tap is ignored."""
    if isinstance(g, DoubleTap):
        virtual_tap = Tap(g.first.x, g.first.y, g.first.t_down, g.first.duration)
        return VirtualGesture(virtual_tap, dispatch_at=g.completed_at)
    return None


def swipe_delay(g: Swipe, delay_ms: int) -> VirtualGesture:
    """Postpone the swipe: unchanged trajectory, dispatched delay_ms later."""
    if delay_ms < 0:
        raise ConfigError(f"delay must be >= 0, got {delay_ms}")
    return VirtualGesture(g, dispatch_at=g.completed_at + delay_ms)


def swipe_decelerate(g: Swipe, factor: float) -> VirtualGesture:
    """Slow the swipe's effect: same path, velocity scaled by `factor`, so the
    virtual gesture plays out over duration/factor."""
    if not 0.0 < factor <= 1.0:
        raise ConfigError(f"deceleration factor must be in (0, 1], got {factor}")
    t0 = g.trajectory[0].t
    stretched = tuple(
        TrajectoryPoint(p.x, p.y, t0 + _round_half_up((p.t - t0) / factor))
        for p in g.trajectory
    )
    return VirtualGesture(Swipe(stretched, g.finger_count), dispatch_at=g.completed_at)


def swipe_reverse(g: Swipe, screen: Screen) -> VirtualGesture:
    """Reflect every trajectory point about the start point (clamped to the
    screen); timestamps unchanged, so speed is preserved."""
    origin = g.trajectory[0]
    reflected = []
    for p in g.trajectory:
        x, y = screen.clamp(2 * origin.x - p.x, 2 * origin.y - p.y)
        reflected.append(TrajectoryPoint(x, y, p.t))
    return VirtualGesture(Swipe(tuple(reflected), g.finger_count), dispatch_at=g.completed_at)


def swipe_multi_finger(g: Swipe, finger_threshold: int) -> VirtualGesture | None:
    """Ignore swipes made with fewer than `finger_threshold` fingers; passing
    swipes dispatch as a one-finger gesture along the centroid trajectory."""
    if finger_threshold < 1:
        raise ConfigError(f"finger threshold must be >= 1, got {finger_threshold}")
    if g.finger_count < finger_threshold:
        return None
    return VirtualGesture(Swipe(g.trajectory, 1), dispatch_at=g.completed_at)


def lockout_filter(g: Gesture, blocked: bool) -> GestureOutcome:
    """Behind the blocking screen every gesture is consumed; otherwise identity."""
    if blocked:
        return GestureOutcome(g, Disposition.BLOCKED)
    return GestureOutcome(g, Disposition.DISPATCHED, _identity(g))


def apply_strategies(
    config: InterventionConfig,
    intensities: Intensities,
    g: Gesture,
    screen: Screen,
    blocked: bool = False,
) -> GestureOutcome:
    """Route one gesture through the single strategy selected for its category.

    `blocked` short-circuits everything (lockout's blocking screen). Long
    presses pass through untouched; double taps are only produced by the
    recognizer when the Double strategy is active.
    """
    if blocked:
        return lockout_filter(g, blocked=True)

    if isinstance(g, LongPress):
        return _dispatched(g, _identity(g))

    if isinstance(g, (Tap, DoubleTap)):
        strategy = config.tap_strategy
        if strategy is TapStrategy.DOUBLE:
            return _maybe(g, tap_double_remap(g))
        if isinstance(g, DoubleTap):
            return _dispatched(g, _identity(g))
        if strategy is TapStrategy.NONE:
            return _dispatched(g, _identity(g))
        if strategy is TapStrategy.DELAY:
            return _dispatched(g, tap_delay(g, intensities.tap_delay_ms))
        if strategy is TapStrategy.PROLONG:
            return _maybe(g, tap_prolong(g, intensities.tap_threshold_ms))
        if strategy is TapStrategy.SHIFT:
            return _dispatched(g, tap_shift(g, config.shift_vector, screen))
        raise AssertionError(strategy)

    if isinstance(g, Swipe):
        strategy = config.swipe_strategy
        if strategy is SwipeStrategy.NONE:
            return _dispatched(g, _identity(g))
        if strategy is SwipeStrategy.DELAY:
            return _dispatched(g, swipe_delay(g, intensities.swipe_delay_ms))
        if strategy is SwipeStrategy.DECELERATE:
            return _dispatched(g, swipe_decelerate(g, intensities.decel_factor))
        if strategy is SwipeStrategy.REVERSE:
            return _dispatched(g, swipe_reverse(g, screen))
        if strategy is SwipeStrategy.MULTI_FINGER:
            return _maybe(g, swipe_multi_finger(g, config.finger_threshold_N))
        raise AssertionError(strategy)

    raise TypeError(f"not a gesture: {g!r}")


def _dispatched(g: Gesture, virtual: VirtualGesture) -> GestureOutcome:
    return GestureOutcome(g, Disposition.DISPATCHED, virtual)


def _maybe(g: Gesture, virtual: VirtualGesture | None) -> GestureOutcome:
    if virtual is None:
        return GestureOutcome(g, Disposition.SUPPRESSED)
    return GestureOutcome(g, Disposition.DISPATCHED, virtual)


class DispatchQueue:
    """Orders virtual gestures for the application layer: sorted by
    dispatch_at, FIFO among ties."""

    def __init__(self):
        self._items: list[tuple[int, int, VirtualGesture]] = []
        self._seq = 0

    def push(self, vg: VirtualGesture) -> None:
        heapq.heappush(self._items, (vg.dispatch_at, self._seq, vg))
        self._seq += 1

    def peek_at(self) -> int | None:
        """Dispatch time of the next queued gesture, if any."""
        return self._items[0][0] if self._items else None

    def pop_due(self, now: int) -> list[VirtualGesture]:
        """All gestures with dispatch_at <= now, in dispatch order."""
        due = []
        while self._items and self._items[0][0] <= now:
            due.append(heapq.heappop(self._items)[2])
        return due

    def drain(self) -> list[VirtualGesture]:
        out = []
        while self._items:
            out.append(heapq.heappop(self._items)[2])
        return out

    def __len__(self) -> int:
        return len(self._items)
