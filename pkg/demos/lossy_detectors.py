"""Why parity heralding gets hard at high photon numbers with real detectors.

A detector of efficiency eta registers each photon independently with
probability eta (binomial thinning).  Losing an odd number of photons flips
the observed parity, and that becomes ever more likely as the mean photon
number grows; at the ~85% efficiency of good optical detectors the even/odd
distinction is trustworthy only for small states.
"""

import math

from paritysim import (
    DetectorModel,
    build_state,
    coherent_spec,
    count_distribution,
    number_spec,
    parity_flip_probability,
    sample_counts,
    tensor,
    thinned_distribution,
    total_variation_distance,
)

import numpy as np

detector = DetectorModel(0.85)
print(f"detector efficiency: {detector.efficiency}")
print()
print(f"{'|alpha|^2':>10s} {'count TVD':>12s} {'P(parity flipped)':>20s}")
print("-" * 46)
for mean in (0.5, 1.0, 2.0, 4.0):
    state = tensor(build_state(coherent_spec(math.sqrt(mean), 30)),
                   build_state(number_spec(0, 0)))
    ideal = count_distribution(state, 0)
    lossy = thinned_distribution(ideal, detector)
    tvd = total_variation_distance(ideal, lossy)
    flip = parity_flip_probability(ideal, detector)
    print(f"{mean:10.1f} {tvd:12.6f} {flip:20.6f}")

print()
print("For Poisson light, losing photons at rate 1-eta flips the parity with")
print("probability (1 - exp(-2 mu (1-eta)))/2 -> 1/2: heralds become coin flips.")
print()

# simulated experiment: draw counting records from the exact distribution
state = tensor(build_state(coherent_spec(1.0, 20)), build_state(number_spec(0, 0)))
rng = np.random.default_rng(7)
draws = sample_counts(state, (0,), rng, shots=20)
print(f"20 sampled photon counts for a coherent state (mean 1): "
      f"{[c[0] for c in draws]}")
