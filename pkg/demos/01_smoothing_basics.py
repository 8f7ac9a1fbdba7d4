"""A tour of the probability-smoothing predictor.

The model keeps a running distribution over the next letter. After seeing
letter y it shrinks every probability by a smoothing rate alpha and
redistributes the freed mass: most goes to y, and a share eps is spread over
the other letters so no prediction ever reaches 0 or 1.
"""

import numpy as np

from probsmooth import (
    PsModel,
    PsParams,
    fixed_schedule,
    ps1_model,
    ps2_model,
    varying_schedule,
)

# ---------------------------------------------------------------------------
# One update, by hand. Start uniform over a 3-letter alphabet and observe
# letter 2 with alpha = 0.8, eps = 0.3.
model = PsModel(PsParams.fixed(alpha=0.8, eps=0.3, n=3))
print("before:", model.predict())
model.update(2)
print("after :", model.predict(), "(sums to", model.predict().sum(), ")")

# ---------------------------------------------------------------------------
# The tuned constant schedule. Given the alphabet size and the sequence
# length in advance, these rates balance adaptation speed against stability.
alpha, eps = fixed_schedule(2, 8192)
print(f"\nconstant schedule for n=2, T=8192: alpha={alpha:.5f} eps={eps:.2e}")

# Feed a sequence that flips its bias halfway and watch the estimate chase it.
rng = np.random.default_rng(0)
letters = np.concatenate([
    rng.choice([1, 2], p=[0.9, 0.1], size=300),
    rng.choice([1, 2], p=[0.1, 0.9], size=300),
])
tracker = ps1_model(2, letters.size)
checkpoints = {0, 150, 299, 310, 350, 599}
for t, x in enumerate(letters):
    if t in checkpoints:
        print(f"  t={t:3d} p(1)={tracker.predict()[0]:.3f}")
    tracker.update(int(x))

# ---------------------------------------------------------------------------
# The horizon-free schedule: eps_t shrinks like 1/t and alpha_t creeps toward
# one, so the model needs no advance knowledge of the sequence length.
print("\nvarying schedule at n=2:")
for t in (1, 10, 100, 1000, 10000):
    a_t, e_t = varying_schedule(2, t)
    print(f"  t={t:5d} alpha={a_t:.5f} eps={e_t:.5f}")

# Every prediction respects the floor eps_t / n, however adversarial the input.
worst = ps2_model(2)
floor_ok = True
for t in range(1, 2001):
    worst.update(1)  # constant input drives p(2) as low as it can go
    floor_ok &= worst.predict()[1] >= varying_schedule(2, t)[1] / 2
print("\nfloor held over 2000 one-sided steps:", floor_ok)
print("final p(2):", worst.predict()[1])
