"""Seeded random legal pointer streams for equivalence and property tests.

Episodes are drawn to hit the recognizer's decision boundaries on purpose:
tap durations straddling the long-press threshold, gaps straddling the
double-tap window, distances straddling the pairing radius, cancels,
multi-finger groups with staggered lifts, and pointer-id reuse inside a
still-active group.
"""

from __future__ import annotations

import random

from gestureproxy.events import Phase, PointerSample


def _tap(rng: random.Random, t: int, x: float, y: float) -> tuple[list[PointerSample], int]:
    duration = rng.choice([0, 40, 80, 200, 499, 500])
    samples = [PointerSample(0, Phase.DOWN, x, y, t)]
    if duration >= 80 and rng.random() < 0.5:
        # small wander, still within tap_max_movement
        samples.append(PointerSample(0, Phase.MOVE, x + rng.choice([0, 3, -4]), y + 5, t + duration // 2))
    samples.append(PointerSample(0, Phase.UP, x, y + rng.choice([0, 2]), t + duration))
    return samples, t + duration


def _long_press(rng: random.Random, t: int, x: float, y: float) -> tuple[list[PointerSample], int]:
    duration = rng.choice([501, 900, 2500])
    return [
        PointerSample(0, Phase.DOWN, x, y, t),
        PointerSample(0, Phase.MOVE, x + 4, y - 3, t + duration // 2),
        PointerSample(0, Phase.UP, x, y, t + duration),
    ], t + duration


def _swipe(rng: random.Random, t: int, x: float, y: float) -> tuple[list[PointerSample], int]:
    steps = rng.randrange(2, 6)
    dx = rng.choice([0.0, 40.0, -60.0])
    dy = rng.choice([-300.0, -150.0, 120.0, 10.0 if dx else 11.0])
    duration = rng.choice([100, 200, 450, 700])
    samples = [PointerSample(0, Phase.DOWN, x, y, t)]
    for i in range(1, steps):
        frac = i / steps
        samples.append(
            PointerSample(0, Phase.MOVE, x + dx * frac, y + dy * frac, t + round(duration * frac))
        )
    samples.append(PointerSample(0, Phase.UP, x + dx, y + dy, t + duration))
    return samples, t + duration


def _wiggle(rng: random.Random, t: int, x: float, y: float) -> tuple[list[PointerSample], int]:
    # Out beyond the tap radius and back: neither tap nor swipe.
    out = rng.choice([15.0, 30.0])
    return [
        PointerSample(0, Phase.DOWN, x, y, t),
        PointerSample(0, Phase.MOVE, x + out, y, t + 40),
        PointerSample(0, Phase.UP, x + rng.choice([0.0, 4.0]), y, t + 90),
    ], t + 90


def _cancelled(rng: random.Random, t: int, x: float, y: float) -> tuple[list[PointerSample], int]:
    samples = [
        PointerSample(0, Phase.DOWN, x, y, t),
        PointerSample(0, Phase.MOVE, x, y - 120, t + 60),
        PointerSample(0, Phase.CANCEL, x, y - 200, t + 110),
    ]
    return samples, t + 110


def _multi(rng: random.Random, t: int, x: float, y: float) -> tuple[list[PointerSample], int]:
    fingers = rng.choice([2, 2, 3])
    dy = rng.choice([-250.0, 180.0])
    duration = 240
    cancel_one = rng.random() < 0.25
    samples = []
    for f in range(fingers):
        samples.append(PointerSample(f, Phase.DOWN, x + f * 30, y, t + f * 10))
    for i in (1, 2):
        frac = i / 3
        for f in range(fingers):
            samples.append(
                PointerSample(f, Phase.MOVE, x + f * 30, y + dy * frac, t + round(duration * frac))
            )
    for f in range(fingers):
        phase = Phase.CANCEL if (cancel_one and f == 0) else Phase.UP
        samples.append(PointerSample(f, phase, x + f * 30, y + dy, t + duration + f * 5))
    return samples, t + duration + (fingers - 1) * 5


def _reuse(rng: random.Random, t: int, x: float, y: float) -> tuple[list[PointerSample], int]:
    # Pointer 0 lifts and lands again while pointer 1 keeps the group alive.
    return [
        PointerSample(0, Phase.DOWN, x, y, t),
        PointerSample(1, Phase.DOWN, x + 40, y, t + 20),
        PointerSample(0, Phase.UP, x, y - 80, t + 100),
        PointerSample(0, Phase.DOWN, x + 10, y - 90, t + 140),
        PointerSample(1, Phase.MOVE, x + 40, y - 160, t + 180),
        PointerSample(0, Phase.UP, x + 10, y - 170, t + 230),
        PointerSample(1, Phase.UP, x + 40, y - 200, t + 260),
    ], t + 260


_EPISODES = [_tap, _tap, _tap, _swipe, _swipe, _long_press, _wiggle, _cancelled, _multi, _reuse]


def random_stream(seed: int, episodes: int = 8) -> list[PointerSample]:
    rng = random.Random(seed)
    t = rng.randrange(0, 500)
    samples: list[PointerSample] = []
    last_xy: tuple[float, float] | None = None
    for _ in range(episodes):
        if last_xy is not None and rng.random() < 0.4:
            # Stay near the previous tap to exercise double-tap pairing.
            x = last_xy[0] + rng.choice([0.0, 20.0, 49.0, 51.0, 80.0])
            y = last_xy[1]
        else:
            x = float(rng.randrange(40, 360))
            y = float(rng.randrange(60, 740))
        maker = rng.choice(_EPISODES)
        episode, end_t = maker(rng, t, x, y)
        samples.extend(episode)
        last_xy = (x, y)
        # Gaps straddle the 300 ms double-tap window.
        t = end_t + rng.choice([60, 120, 299, 300, 301, 450, 900])
    return samples
