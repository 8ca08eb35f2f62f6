"""Recognizing gestures from a raw pointer stream.

The recognizer consumes one PointerSample at a time and emits a gesture the
moment its defining pointer sequence completes. Everything runs on a virtual
millisecond clock, so the same stream always yields the same gestures.
"""

from gestureproxy import Phase, PointerSample, Recognizer

recognizer = Recognizer()


def feed(samples):
    for sample in samples:
        for gesture in recognizer.feed(sample):
            print(f"  t={sample.t:>5}  ->  {gesture}")


print("A quick tap (small movement, short press):")
feed(
    [
        PointerSample(0, Phase.DOWN, 100.0, 200.0, 0),
        PointerSample(0, Phase.UP, 100.0, 202.0, 80),
    ]
)

print("\nA vertical swipe (the trajectory is the gesture's payload):")
feed(
    [
        PointerSample(0, Phase.DOWN, 0.0, 0.0, 1000),
        PointerSample(0, Phase.MOVE, 0.0, 150.0, 1100),
        PointerSample(0, Phase.UP, 0.0, 300.0, 1200),
    ]
)

print("\nTwo fingers swiping together become one centroid trajectory:")
feed(
    [
        PointerSample(0, Phase.DOWN, 100.0, 500.0, 2000),
        PointerSample(1, Phase.DOWN, 200.0, 500.0, 2000),
        PointerSample(0, Phase.MOVE, 100.0, 300.0, 2100),
        PointerSample(1, Phase.MOVE, 200.0, 300.0, 2100),
        PointerSample(0, Phase.UP, 100.0, 100.0, 2200),
        PointerSample(1, Phase.UP, 200.0, 100.0, 2200),
    ]
)

print("\nWith double-tap detection on, taps buffer until the window resolves:")
paired = Recognizer(detect_double_taps=True)
out = []
for s in [
    PointerSample(0, Phase.DOWN, 50.0, 50.0, 3000),
    PointerSample(0, Phase.UP, 50.0, 50.0, 3060),
    PointerSample(0, Phase.DOWN, 50.0, 50.0, 3210),
    PointerSample(0, Phase.UP, 50.0, 50.0, 3270),
]:
    out += paired.feed(s)
print(f"  paired: {out[0]}")
