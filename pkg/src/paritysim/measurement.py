"""Projective photon counting, parity statistics, and the lossy-detector model.

Probabilities are computed exactly from amplitudes by exhaustive enumeration;
the seeded sampler on top of the exact joint distribution is a convenience,
never the source of any reported number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidMode, ZeroProbabilityOutcome
from .fock import MultiModeState

#: Outcomes with probability below this are treated as impossible.
OUTCOME_FLOOR = 1e-14


@dataclass(frozen=True)
class CountDistribution:
    """Exact photon-count probabilities for one mode."""

    probabilities: dict

    def __post_init__(self):
        probs = {int(n): float(p) for n, p in self.probabilities.items() if p > 0.0}
        total = sum(probs.values())
        if any(p < 0.0 or p > 1.0 + 1e-12 for p in probs.values()):
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "probabilities", probs)

    def probability(self, n: int) -> float:
        return self.probabilities.get(n, 0.0)

    def odd_probability(self) -> float:
        return sum(p for n, p in self.probabilities.items() if n % 2 == 1)

    def even_probability(self) -> float:
        return sum(p for n, p in self.probabilities.items() if n % 2 == 0)

    def max_count(self) -> int:
        return max(self.probabilities, default=0)


@dataclass(frozen=True)
class MeasurementOutcome:
    """One photon-counting record with its probability and the collapsed state."""

    counts: tuple
    probability: float
    post_state: MultiModeState


@dataclass(frozen=True)
class DetectorModel:
    """Number-resolving detector that registers each photon with probability
    ``efficiency``; no dark counts."""

    efficiency: float

    def __post_init__(self):
        if not (0.0 <= self.efficiency <= 1.0):
            raise ValueError("efficiency must lie in [0, 1]")


def _check_mode(state: MultiModeState, mode: int):
    if not (0 <= mode < state.mode_count):
        raise InvalidMode(f"mode {mode} out of range for {state.mode_count} modes")


def count_distribution(state: MultiModeState, mode: int) -> CountDistribution:
    """Marginal photon-count distribution of one mode."""
    _check_mode(state, mode)
    probs: dict[int, float] = {}
    for occ, amp in state.items():
        n = occ[mode]
        probs[n] = probs.get(n, 0.0) + abs(amp) ** 2
    return CountDistribution(probs)


def odd_parity_probability(state: MultiModeState, mode: int) -> float:
    """Probability of finding an odd photon number in ``mode``."""
    return count_distribution(state, mode).odd_probability()


def _split_occupation(occ, measured: tuple[int, ...]):
    counts = tuple(occ[i] for i in measured)
    rest = tuple(occ[i] for i in range(len(occ)) if i not in measured)
    return counts, rest


def project_counts(
    state: MultiModeState, measured_modes, counts
) -> MeasurementOutcome:
    """Condition on specific photon counts in the measured modes.

    The post-state lives on the remaining modes, renormalized.  Raises
    ZeroProbabilityOutcome when the requested record has probability below
    1e-14 (the post-state would be meaningless noise).
    """
    measured = tuple(measured_modes)
    wanted = tuple(int(c) for c in counts)
    if len(set(measured)) != len(measured):
        raise InvalidMode("measured modes must be distinct")
    for m in measured:
        _check_mode(state, m)
    if len(measured) >= state.mode_count:
        raise InvalidMode("at least one mode must remain unmeasured")
    if len(wanted) != len(measured):
        raise ValueError("one count per measured mode is required")
    if any(c < 0 or c > state.per_mode_cutoff for c in wanted):
        raise ValueError(f"counts {wanted} outside 0..{state.per_mode_cutoff}")

    post: dict[tuple[int, ...], complex] = {}
    prob = 0.0
    for occ, amp in state.items():
        got, rest = _split_occupation(occ, measured)
        if got != wanted:
            continue
        prob += abs(amp) ** 2
        post[rest] = amp
    if prob < OUTCOME_FLOOR:
        raise ZeroProbabilityOutcome(f"counts {wanted} occur with probability {prob:.3e}")
    scale = 1.0 / math.sqrt(prob)
    post = {occ: amp * scale for occ, amp in post.items()}
    return MeasurementOutcome(
        counts=wanted,
        probability=prob,
        post_state=MultiModeState(state.mode_count - len(measured), state.per_mode_cutoff, post),
    )


def measure_modes(state: MultiModeState, modes) -> list[MeasurementOutcome]:
    """Exhaustively enumerate every joint counting record on ``modes``.

    Returns outcomes sorted by counts, each with its exact probability and
    normalized post-state; records below the 1e-14 probability floor are
    dropped as rounding noise.
    """
    measured = tuple(modes)
    if len(set(measured)) != len(measured):
        raise InvalidMode("measured modes must be distinct")
    for m in measured:
        _check_mode(state, m)
    if len(measured) >= state.mode_count:
        raise InvalidMode("at least one mode must remain unmeasured")

    buckets: dict[tuple, dict] = {}
    weights: dict[tuple, float] = {}
    for occ, amp in state.items():
        got, rest = _split_occupation(occ, measured)
        buckets.setdefault(got, {})[rest] = amp
        weights[got] = weights.get(got, 0.0) + abs(amp) ** 2

    outcomes = []
    remaining = state.mode_count - len(measured)
    for got in sorted(weights):
        prob = weights[got]
        if prob < OUTCOME_FLOOR:
            continue
        scale = 1.0 / math.sqrt(prob)
        post = {occ: amp * scale for occ, amp in buckets[got].items()}
        outcomes.append(MeasurementOutcome(
            counts=got,
            probability=prob,
            post_state=MultiModeState(remaining, state.per_mode_cutoff, post),
        ))
    return outcomes


def thinned_distribution(dist: CountDistribution, det: DetectorModel) -> CountDistribution:
    """Binomial thinning of an exact count distribution by detector efficiency."""
    eta = det.efficiency
    out: dict[int, float] = {}
    for n, p in dist.probabilities.items():
        for k in range(n + 1):
            w = math.comb(n, k) * (eta ** k) * ((1.0 - eta) ** (n - k))
            if w:
                out[k] = out.get(k, 0.0) + p * w
    return CountDistribution(out)


def lossy_count_distribution(
    state: MultiModeState, mode: int, det: DetectorModel
) -> CountDistribution:
    """Observed-count distribution for a detector of efficiency eta:
    P(k) = sum_{n >= k} P(n) C(n, k) eta^k (1-eta)^(n-k)."""
    return thinned_distribution(count_distribution(state, mode), det)


def parity_flip_probability(dist: CountDistribution, det: DetectorModel) -> float:
    """Probability that the observed parity differs from the true parity,
    i.e. that an odd number of photons goes undetected."""
    eta = det.efficiency
    total = 0.0
    for n, p in dist.probabilities.items():
        lost_odd = sum(
            math.comb(n, k) * (eta ** k) * ((1.0 - eta) ** (n - k))
            for k in range(n + 1)
            if (n - k) % 2 == 1
        )
        total += p * lost_odd
    return total


def total_variation_distance(d1: CountDistribution, d2: CountDistribution) -> float:
    counts = set(d1.probabilities) | set(d2.probabilities)
    return 0.5 * sum(abs(d1.probability(n) - d2.probability(n)) for n in counts)


def sample_counts(
    state: MultiModeState, modes, rng: np.random.Generator, shots: int
) -> list[tuple]:
    """Draw joint counting records from the exact distribution.

    Purely a convenience for simulated experiments; takes the caller's seeded
    generator so there is no hidden randomness.
    """
    outcomes = measure_modes(state, modes)
    probs = np.array([o.probability for o in outcomes])
    probs = probs / probs.sum()
    picks = rng.choice(len(outcomes), size=shots, p=probs)
    return [outcomes[i].counts for i in picks]
