"""Single-mode squeezed vacuum: variances, decibels, and the Wigner picture.

Builds squeezed states in the Gaussian engine and walks through the basic
numbers: quadrature variances below and above the vacuum level, their
product saturating the uncertainty bound, and the squeezing expressed in
decibels relative to the standard quantum limit.
"""

import numpy as np

from sqzlab import (
    quadrature_variance,
    squeeze,
    squeezing_db,
    vacuum,
    wigner_gaussian,
)

print("== vacuum reference ==")
vac = vacuum(1)
print(f"Var(X) = Var(P) = {quadrature_variance(vac, 0, 0.0):.4f}  (the SQL, 0 dB)")
print(f"Wigner peak at the origin: {wigner_gaussian(vac, [[0.0, 0.0]])[0]:.4f} = 1/pi")

print("\n== squeezed vacuum for a few squeezing parameters ==")
print(f"{'r':>5} {'Var(X)':>9} {'Var(P)':>9} {'product':>9} {'dB':>7}")
for r in (0.2, 0.5, np.log(2.0), 1.0, 1.151):
    st = squeeze(vacuum(1), 0, r)
    vx = quadrature_variance(st, 0, 0.0)
    vp = quadrature_variance(st, 0, np.pi / 2)
    print(f"{r:5.3f} {vx:9.4f} {vp:9.4f} {vx * vp:9.4f} {squeezing_db(vx):7.2f}")
print("the product stays at 1/4: pure squeezed states are minimum-uncertainty")

print("\n== variance versus the measured quadrature angle (r = 0.5) ==")
st = squeeze(vacuum(1), 0, 0.5)
for theta in np.linspace(0, np.pi, 7):
    v = quadrature_variance(st, 0, theta)
    bar = "#" * int(40 * v / 1.4)
    print(f"theta = {theta:5.2f}  Var = {v:6.3f}  {bar}")

print("\n== a squeezed axis rotated to 60 degrees ==")
tilted = squeeze(vacuum(1), 0, 0.5, phi=np.pi / 3)
thetas = np.linspace(0, np.pi, 181)
variances = [quadrature_variance(tilted, 0, t) for t in thetas]
best = thetas[int(np.argmin(variances))]
print(f"variance minimum found at theta = {np.degrees(best):.1f} degrees")
