"""gestureproxy: a deterministic touch-input interception engine.

Recognizes gestures from raw pointer streams, rewrites them through
configurable manipulation strategies whose intensity ramps over use,
enforces shared daily usage budgets with a bypass state machine, and
replays/analyzes session traces on an integer-millisecond virtual clock.
"""

from .budget import BudgetConfig, BudgetController, BudgetError
from .events import (
    BypassOption,
    ConfigError,
    DoubleTap,
    EventKind,
    Gesture,
    InterventionConfig,
    InterventionMode,
    LongPress,
    Phase,
    PointerSample,
    Screen,
    SessionEvent,
    Swipe,
    SwipeStrategy,
    Tap,
    TapStrategy,
    TraceError,
    TrajectoryPoint,
    VirtualGesture,
    lab_level_config,
    validate_stream,
)
from .manipulations import (
    DispatchQueue,
    Disposition,
    GestureOutcome,
    Intensities,
    apply_strategies,
    lockout_filter,
    swipe_decelerate,
    swipe_delay,
    swipe_multi_finger,
    swipe_reverse,
    tap_delay,
    tap_double_remap,
    tap_prolong,
    tap_shift,
)
from .recognizer import Recognizer, RecognizerConfig, RecognizerError
from .replay import ReplayLog, load_log, replay, replay_stream
from .scheduler import IntensityScheduler, SchedulerConfig
from .session import DeviceSession, SessionConfig

__version__ = "0.1.0"

__all__ = [
    "BudgetConfig",
    "BudgetController",
    "BudgetError",
    "BypassOption",
    "ConfigError",
    "DeviceSession",
    "DispatchQueue",
    "Disposition",
    "DoubleTap",
    "EventKind",
    "Gesture",
    "GestureOutcome",
    "Intensities",
    "IntensityScheduler",
    "InterventionConfig",
    "InterventionMode",
    "LongPress",
    "Phase",
    "PointerSample",
    "Recognizer",
    "RecognizerConfig",
    "RecognizerError",
    "ReplayLog",
    "SchedulerConfig",
    "Screen",
    "SessionConfig",
    "SessionEvent",
    "Swipe",
    "SwipeStrategy",
    "Tap",
    "TapStrategy",
    "TraceError",
    "TrajectoryPoint",
    "VirtualGesture",
    "apply_strategies",
    "lab_level_config",
    "load_log",
    "lockout_filter",
    "replay",
    "replay_stream",
    "swipe_decelerate",
    "swipe_delay",
    "swipe_multi_finger",
    "swipe_reverse",
    "tap_delay",
    "tap_double_remap",
    "tap_prolong",
    "tap_shift",
    "validate_stream",
]
