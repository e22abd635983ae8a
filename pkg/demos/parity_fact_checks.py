"""Walk through the two parity facts that power every protocol in this package.

Fact A: split any state together with its quarter-cycle-shifted copy on the
50/50 beamsplitter and output A can only ever carry an even photon number.

Fact B: replace the shifted copy by the shifted version of an *orthogonal*
state and output A carries an odd count with probability exactly one half.
"""

import math

import numpy as np

from paritysim import (
    beamsplitter_5050,
    bipartite_coefficients,
    build_state,
    coherent_spec,
    normalize,
    odd_parity_probability,
    phase_shift,
    squeezed_spec,
    SingleModeState,
    tensor,
)

rng = np.random.default_rng(1)

print("Fact A: the shifted/unshifted split never shows an odd count in A")
print("-" * 66)
cases = {
    "coherent alpha=1.2": build_state(coherent_spec(1.2, 22)),
    "squeezed r=0.5": build_state(squeezed_spec(0.5, 40)),
    "random 6-level state": normalize(
        SingleModeState(rng.normal(size=7) + 1j * rng.normal(size=7))),
}
for label, psi in cases.items():
    shifted = phase_shift(psi, math.pi / 2)
    out = beamsplitter_5050(tensor(shifted, psi), 0, 1)
    print(f"  {label:24s}  P_odd(A) = {odd_parity_probability(out, 0):.3e}")

print()
print("Fact B: shifted state orthogonal to its partner -> P_odd(A) = 1/2")
print("-" * 66)
for _ in range(3):
    psi = normalize(SingleModeState(rng.normal(size=8) + 1j * rng.normal(size=8)))
    w = rng.normal(size=8) + 1j * rng.normal(size=8)
    w -= np.vdot(psi.amplitudes, w) * psi.amplitudes  # project out psi
    phi = normalize(SingleModeState(w))
    out = beamsplitter_5050(tensor(phase_shift(phi, math.pi / 2), psi), 0, 1)
    print(f"  random orthogonal pair   P_odd(A) = {odd_parity_probability(out, 0):.15f}")

print()
print("Both facts live in the coefficient matrix of the split state: its")
print("antisymmetric weight fraction IS the odd-count probability in A.")
print("-" * 66)
psi = normalize(SingleModeState(rng.normal(size=6) + 1j * rng.normal(size=6)))
phi_raw = rng.normal(size=6) + 1j * rng.normal(size=6)
phi_raw -= np.vdot(psi.amplitudes, phi_raw) * psi.amplitudes
phi = normalize(SingleModeState(phi_raw))
out = beamsplitter_5050(tensor(phase_shift(phi, math.pi / 2), psi), 0, 1)
coeffs = bipartite_coefficients(out, 0, 1)
print(f"  symmetric weight      {coeffs.symmetric_weight():.12f}")
print(f"  antisymmetric weight  {coeffs.antisymmetric_weight():.12f}")
print(f"  ratio                 {coeffs.odd_parity_probability():.12f}")
print(f"  counted P_odd(A)      {odd_parity_probability(out, 0):.12f}")
