"""Watching the intensity ramp.

Manipulations start imperceptible and step toward their maxima: +10 ms per
touch for the delays, x4^(-1/100) per touch for the deceleration factor, and
one extra step per full idle minute. Delays saturate after 100 touches
(80 for the 800 ms swipe delay); the factor reaches 0.25 exactly at step 100.
"""

from gestureproxy import InterventionConfig, IntensityScheduler, SchedulerConfig

maxima = InterventionConfig(
    T_tap_delay_max=1000,
    T_swipe_delay_max=800,
    F_swipe_decelerate_min=0.25,
)
scheduler = IntensityScheduler(SchedulerConfig(), maxima)

print("touches  tap_delay  swipe_delay  decel_factor")
for k in range(1, 121):
    scheduler.on_operation(k * 1000)
    if k in (1, 10, 25, 50, 79, 80, 81, 99, 100, 101, 120):
        i = scheduler.intensities()
        print(
            f"{k:>7}  {i.tap_delay_ms:>6} ms  {i.swipe_delay_ms:>8} ms  {i.decel_factor:>.6f}"
        )

print("\nIdle time steps the ramp too (one step per full minute):")
idle = IntensityScheduler(SchedulerConfig(), maxima)
for now, label in ((59_000, "59 s"), (60_000, "60 s"), (210_000, "210 s")):
    steps = idle.on_tick(now)
    print(f"  after {label:>6}: +{steps} step(s), tap delay now {idle.tap_delay_ms} ms")

print("\nA new engagement restarts from zero:")
idle.reset(300_000)
print(f"  after reset: tap delay {idle.tap_delay_ms} ms, factor {idle.decel_factor}")
