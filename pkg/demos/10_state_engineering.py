"""Conditional state engineering: heralded photons and Schrodinger kittens.

A click on the idler of a weakly squeezed pair heralds a single photon. A
weak tap plus a click subtracts a photon from a squeezed vacuum, turning
the "even kitten" into the "odd kitten"; mixing a faint coherent ancilla
into the heralding path dials a coherent superposition of the two.
"""

import numpy as np

from sqzlab import fidelity, make_heralded_photon, make_kitten, wigner_fock
from sqzlab.fock import branch_probabilities, from_amplitudes, overlap
from sqzlab.protocols import (
    engineer_kitten_superposition,
    ideal_even_kitten,
    ideal_odd_kitten,
)

print("== heralded single photons from a two-mode squeezed source ==")
print(f"{'r':>5} {'click prob':>11} {'fidelity with |1>':>18}")
one = from_amplitudes([0, 1] + [0] * 14)
for r in (0.01, 0.05, 0.2, 0.5):
    state, prob = make_heralded_photon(r, 16)
    print(f"{r:5.2f} {prob:11.5f} {fidelity(state, one):18.6f}")
print("small r: near-perfect photons but rare clicks - a rate/purity tradeoff")

state, _ = make_heralded_photon(0.05, 16)
print(f"heralded-photon W(0,0) = {wigner_fock(state, [[0.0, 0.0]])[0]:.4f}"
      f" (=-1/pi: maximally negative)")

print("\n== photon subtraction makes an odd kitten ==")
r, rho = 0.2, 0.05
kitten, prob, fid = make_kitten(r, 20, rho)
print(f"squeezing r = {r}, tap reflectivity {rho}: click probability {prob:.2e}")
print(f"fidelity with the ideal odd kitten (alpha = sqrt(r)): {fid:.4f}")
probs = branch_probabilities(kitten, 0)
print("number content:", np.array_str(probs[:6], precision=4), "(odd terms only)")

print("\n== dialing even/odd superpositions with an ancilla ==")
even = ideal_even_kitten(np.sqrt(r), 20)
odd = ideal_odd_kitten(np.sqrt(r), 20)
print(f"{'ancilla':>8} {'|<even|psi>|^2':>15} {'|<odd|psi>|^2':>15}")
for amp in (0.0, 0.02, 0.05, 0.15, 0.35):
    psi = engineer_kitten_superposition(r, amp, 0.05, 0.2, 20)
    print(f"{amp:8.2f} {abs(overlap(even, psi))**2:15.4f} {abs(overlap(odd, psi))**2:15.4f}")
print("flipping the ancilla phase flips the sign of the odd component:")
plus = engineer_kitten_superposition(r, 0.05, 0.05, 0.05, 20)
minus = engineer_kitten_superposition(r, -0.05, 0.05, 0.05, 20)
for label, psi in (("+", plus), ("-", minus)):
    ratio = overlap(odd, psi) / overlap(even, psi)
    print(f"  ancilla {label}0.05: odd/even amplitude ratio {ratio.real:+.4f}")
