"""Optical loss on squeezed light, and working backwards from a measurement.

Loss mixes in vacuum: V -> T V + (1-T)/2. It degrades squeezing but never
erases it, and it breaks the minimum-uncertainty property, which is
exactly what lets us estimate the effective loss of a source from a
measured (min, max) variance pair.
"""

import numpy as np

from sqzlab import (
    infer_effective_loss,
    loss_channel,
    quadrature_variance,
    squeeze,
    squeezing_db,
    vacuum,
)

r = 1.15  # roughly 10 dB of squeezing before loss
print(f"== transmitting a squeezed vacuum (r = {r}) through loss ==")
print(f"{'T':>5} {'Var(X)':>9} {'dB':>8} {'Var(X)Var(P)':>14}")
sq = squeeze(vacuum(1), 0, r)
for t in np.linspace(1.0, 0.1, 10):
    out = loss_channel(sq, 0, t)
    vx = quadrature_variance(out, 0, 0.0)
    vp = quadrature_variance(out, 0, np.pi / 2)
    print(f"{t:5.2f} {vx:9.4f} {squeezing_db(vx):8.2f} {vx * vp:14.4f}")
print("Var(X) stays below 1/2 for every T > 0; the uncertainty product")
print("rises above 1/4 as soon as loss enters")

print("\n== inferring the effective loss from measured variances ==")
t_true, r_true = 0.7, 1.0
state = loss_channel(squeeze(vacuum(1), 0, r_true), 0, t_true)
v_min = quadrature_variance(state, 0, 0.0)
v_max = quadrature_variance(state, 0, np.pi / 2)
print(f"simulated measurement: v_min = {v_min:.5f}, v_max = {v_max:.5f}")
t_est, r_est = infer_effective_loss(v_min, v_max)
print(f"inferred transmission T = {t_est:.6f}   (true {t_true})")
print(f"inferred squeezing   r = {r_est:.6f}   (true {r_true})")

print("\na minimum-uncertainty pair maps to T = 1 (no loss at all):")
print(infer_effective_loss(np.exp(-2 * 0.6) / 2, np.exp(2 * 0.6) / 2))
