"""The eight manipulation strategies, at both deployed intensity levels.

Each strategy is a pure function from a recognized gesture to the virtual
gesture the proxy dispatches in its place (or to suppression). Taps and
swipes each get exactly one strategy at a time.
"""

from gestureproxy import (
    DoubleTap,
    Screen,
    Swipe,
    Tap,
    TrajectoryPoint,
    swipe_decelerate,
    swipe_delay,
    swipe_multi_finger,
    swipe_reverse,
    tap_delay,
    tap_double_remap,
    tap_prolong,
    tap_shift,
)

screen = Screen(400.0, 800.0)
tap = Tap(200.0, 300.0, 0, 150)
swipe = Swipe((TrajectoryPoint(100.0, 500.0, 0), TrajectoryPoint(100.0, 200.0, 200)), 1)

print(f"input tap:   {tap} (completes at {tap.completed_at} ms)")
print(f"input swipe: 300 dp upward, {swipe.duration} ms\n")

print("Tap Delay: the tap lands late")
for level, delay in ((1, 500), (2, 1000)):
    print(f"  level {level}: dispatch_at = {tap_delay(tap, delay).dispatch_at} ms")

print("Tap Prolong: short presses are swallowed")
for level, threshold in ((1, 100), (2, 200)):
    result = tap_prolong(tap, threshold)
    print(f"  level {level} (threshold {threshold} ms): {'passes' if result else 'suppressed'}")

print("Tap Shift: the activation point moves")
for level, dy in ((1, 100.0), (2, 200.0)):
    shifted = tap_shift(tap, (0.0, dy), screen).gesture
    print(f"  level {level}: ({tap.x}, {tap.y}) -> ({shifted.x}, {shifted.y})")

print("Tap Double: a double tap is required for a single activation")
double = DoubleTap(Tap(40.0, 40.0, 0, 50), Tap(44.0, 40.0, 170, 50))
print(f"  double tap -> {tap_double_remap(double).gesture}")
print(f"  lone tap   -> {tap_double_remap(tap)}")

print("Swipe Delay: the scroll lands late")
for level, delay in ((1, 300), (2, 800)):
    print(f"  level {level}: dispatch_at = {swipe_delay(swipe, delay).dispatch_at} ms")

print("Swipe Deceleration: same path, slower effect")
for level, factor in ((1, 0.5), (2, 0.25)):
    slowed = swipe_decelerate(swipe, factor).gesture
    print(f"  level {level} (x{factor}): {swipe.duration} ms -> {slowed.duration} ms")

print("Swipe Reverse: the feed scrolls the other way")
reversed_swipe = swipe_reverse(swipe, screen).gesture
print(f"  {[(p.x, p.y) for p in swipe.trajectory]} -> {[(p.x, p.y) for p in reversed_swipe.trajectory]}")

print("Swipe Multiple Fingers: one finger is no longer enough")
for level, n in ((1, 2), (2, 3)):
    verdicts = []
    for fingers in (1, 2, 3):
        result = swipe_multi_finger(Swipe(swipe.trajectory, fingers), n)
        verdicts.append(f"{fingers}f={'pass' if result else 'drop'}")
    print(f"  level {level} (N={n}): {', '.join(verdicts)}")
