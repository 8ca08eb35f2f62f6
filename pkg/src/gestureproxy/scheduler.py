"""Intensity ramping: manipulations start at zero and step up to their maxima.

Delays and the prolong threshold grow linearly (one fixed step per trigger);
the deceleration factor shrinks exponentially (multiplied by a fixed factor
per trigger). A trigger is either a user operation or a full idle interval
with no touches. The shift vector never ramps.

Counters reset to zero whenever a new intervention-on period begins (first
activation of the day, or reactivation after a bypass lapses).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .events import ConfigError, InterventionConfig
from .manipulations import Intensities

# Relative guard for the exponential floor: float pow of the default factor
# overshoots the floor by ~3e-15 at the saturating step, and saturation must
# land on the configured minimum exactly.
_SATURATION_RTOL = 1e-12


@dataclass(frozen=True)
class SchedulerConfig:
    tap_delay_step: int = 10
    swipe_delay_step: int = 10
    tap_threshold_step: int = 2
    decel_step_factor: float = 4 ** (-1 / 100)
    idle_step_interval: int = 60_000

    def __post_init__(self):
        if self.tap_delay_step <= 0 or self.swipe_delay_step <= 0 or self.tap_threshold_step <= 0:
            raise ConfigError("linear steps must be > 0")
        if not 0.0 < self.decel_step_factor < 1.0:
            raise ConfigError(
                f"decel_step_factor must be in (0, 1), got {self.decel_step_factor}"
            )
        if self.idle_step_interval <= 0:
            raise ConfigError("idle_step_interval must be > 0")

    def to_json_obj(self) -> dict:
        return {
            "tap_delay_step": self.tap_delay_step,
            "swipe_delay_step": self.swipe_delay_step,
            "tap_threshold_step": self.tap_threshold_step,
            "decel_step_factor": self.decel_step_factor,
            "idle_step_interval": self.idle_step_interval,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SchedulerConfig":
        base = cls()
        return cls(
            tap_delay_step=int(obj.get("tap_delay_step", base.tap_delay_step)),
            swipe_delay_step=int(obj.get("swipe_delay_step", base.swipe_delay_step)),
            tap_threshold_step=int(obj.get("tap_threshold_step", base.tap_threshold_step)),
            decel_step_factor=float(obj.get("decel_step_factor", base.decel_step_factor)),
            idle_step_interval=int(obj.get("idle_step_interval", base.idle_step_interval)),
        )


class IntensityScheduler:
    """Step counters plus the current ramped intensities for one session."""

    def __init__(
        self,
        config: SchedulerConfig,
        maxima: InterventionConfig,
        now: int = 0,
    ):
        self.config = config
        self.maxima = maxima
        self.k_tap = 0
        self.k_swipe = 0
        self.k_threshold = 0
        self.k_decel = 0
        self.last_activity = now

    def reset(self, now: int) -> None:
        """New intervention-on period: everything restarts from zero."""
        self.k_tap = 0
        self.k_swipe = 0
        self.k_threshold = 0
        self.k_decel = 0
        self.last_activity = now

    @property
    def tap_delay_ms(self) -> int:
        return min(self.k_tap * self.config.tap_delay_step, self.maxima.T_tap_delay_max)

    @property
    def swipe_delay_ms(self) -> int:
        return min(self.k_swipe * self.config.swipe_delay_step, self.maxima.T_swipe_delay_max)

    @property
    def tap_threshold_ms(self) -> int:
        return min(
            self.k_threshold * self.config.tap_threshold_step,
            self.maxima.T_tap_threshold_max,
        )

    @property
    def decel_factor(self) -> float:
        raw = self.config.decel_step_factor ** self.k_decel
        floor = self.maxima.F_swipe_decelerate_min
        if raw <= floor * (1.0 + _SATURATION_RTOL):
            return floor
        return raw

    def intensities(self) -> Intensities:
        return Intensities(
            tap_delay_ms=self.tap_delay_ms,
            tap_threshold_ms=self.tap_threshold_ms,
            swipe_delay_ms=self.swipe_delay_ms,
            decel_factor=self.decel_factor,
        )

    def on_operation(self, now: int) -> None:
        """One user operation (any touch gesture, including suppressed ones)
        advances every counter by one step."""
        if now < self.last_activity:
            raise ValueError(f"clock moved backwards: {now} < {self.last_activity}")
        self._step()
        self.last_activity = now

    def on_tick(self, now: int) -> int:
        """Apply one step per full idle interval elapsed since the last step;
        returns the number of steps applied. Leftover idle time carries over."""
        if now < self.last_activity:
            raise ValueError(f"clock moved backwards: {now} < {self.last_activity}")
        steps = (now - self.last_activity) // self.config.idle_step_interval
        for _ in range(steps):
            self._step()
        self.last_activity += steps * self.config.idle_step_interval
        return steps

    def _step(self) -> None:
        if self.tap_delay_ms < self.maxima.T_tap_delay_max:
            self.k_tap += 1
        if self.swipe_delay_ms < self.maxima.T_swipe_delay_max:
            self.k_swipe += 1
        if self.tap_threshold_ms < self.maxima.T_tap_threshold_max:
            self.k_threshold += 1
        if self.decel_factor > self.maxima.F_swipe_decelerate_min:
            self.k_decel += 1

    def snapshot(self) -> dict:
        return {
            "k_tap": self.k_tap,
            "k_swipe": self.k_swipe,
            "k_threshold": self.k_threshold,
            "k_decel": self.k_decel,
            "T_tap_delay": self.tap_delay_ms,
            "T_swipe_delay": self.swipe_delay_ms,
            "T_tap_threshold": self.tap_threshold_ms,
            "F": self.decel_factor,
        }


def saturation_operations(config: SchedulerConfig, maxima: InterventionConfig) -> dict:
    """How many operation steps each knob needs to reach its maximum."""
    return {
        "tap_delay": math.ceil(maxima.T_tap_delay_max / config.tap_delay_step),
        "swipe_delay": math.ceil(maxima.T_swipe_delay_max / config.swipe_delay_step),
        "tap_threshold": math.ceil(maxima.T_tap_threshold_max / config.tap_threshold_step),
        "decel": math.ceil(
            math.log(maxima.F_swipe_decelerate_min) / math.log(config.decel_step_factor)
            - _SATURATION_RTOL
        ),
    }
