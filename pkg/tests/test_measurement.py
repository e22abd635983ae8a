import math

import numpy as np
import pytest

from conftest import random_multimode
from paritysim import (
    CountDistribution,
    DetectorModel,
    InvalidMode,
    MultiModeState,
    SingleModeState,
    ZeroProbabilityOutcome,
    beamsplitter_5050,
    build_state,
    coherent_spec,
    count_distribution,
    explicit_spec,
    lossy_count_distribution,
    measure_modes,
    number_spec,
    odd_parity_probability,
    parity_flip_probability,
    phase_shift,
    prepend_mode,
    project_counts,
    resource_from_states,
    sample_counts,
    tensor,
    thinned_distribution,
    total_variation_distance,
)


def single_photon_pair():
    return MultiModeState(2, 1, {(0, 1): 1 / math.sqrt(2), (1, 0): -1 / math.sqrt(2)})


class TestCountDistribution:
    def test_entangled_pair(self):
        dist = count_distribution(single_photon_pair(), 0)
        assert dist.probability(0) == pytest.approx(0.5)
        assert dist.probability(1) == pytest.approx(0.5)

    def test_vacuum(self):
        dist = count_distribution(MultiModeState(2, 1, {(0, 0): 1.0}), 0)
        assert dist.probabilities == {0: pytest.approx(1.0)}

    def test_coherent_marginal_is_poisson(self):
        st = tensor(build_state(coherent_spec(1.0, 20)), build_state(number_spec(0, 0)))
        dist = count_distribution(st, 0)
        for n in range(15):
            poisson = math.exp(-1.0) / math.factorial(n)  # independent series
            assert dist.probability(n) == pytest.approx(poisson, abs=1e-13)

    def test_invalid_mode(self):
        with pytest.raises(InvalidMode):
            count_distribution(single_photon_pair(), 2)

    def test_rejects_unnormalized(self):
        st = MultiModeState(2, 1, {(0, 0): 0.5})
        with pytest.raises(ValueError):
            count_distribution(st, 0)


class TestOddParity:
    def test_vacuum_is_even(self):
        assert odd_parity_probability(MultiModeState(2, 1, {(0, 0): 1.0}), 0) == 0.0

    def test_shifted_pair_gives_zero(self):
        from paritysim import split_with_phase_shifted

        for spec in (coherent_spec(0.9, 16), explicit_spec([0.2, 0.4, 0.1, 0.7])):
            out = split_with_phase_shifted(build_state(spec))
            assert odd_parity_probability(out, 0) <= 1e-12

    def test_orthogonal_pair_gives_half(self):
        from paritysim import split_with_phase_shifted

        out = split_with_phase_shifted(build_state(number_spec(0, 2)), build_state(number_spec(1, 2)))
        assert odd_parity_probability(out, 0) == pytest.approx(0.5, abs=1e-12)


class TestProjectCounts:
    def test_schmidt_form(self):
        outcome = project_counts(single_photon_pair(), [0], [0])
        assert outcome.probability == pytest.approx(0.5)
        post = outcome.post_state.as_single_mode()
        assert abs(post.amplitudes[1]) == pytest.approx(1.0)

    def test_scissors_pre_measurement_state(self):
        # assemble the truncation-protocol state right before counting and
        # project onto one photon at each splitter output
        alpha = np.array([0.5, 0.5, 0.5, 0.5], dtype=complex)
        sent = phase_shift(SingleModeState(alpha), math.pi / 2)
        resource = resource_from_states(
            build_state(number_spec(0, 2)), build_state(number_spec(2, 2)), "phi_minus")
        full = prepend_mode(resource, sent)
        after = beamsplitter_5050(full, 0, 1)
        outcome = project_counts(after, [0, 1], [1, 1])
        expected_prob = (abs(alpha[0]) ** 2 + abs(alpha[2]) ** 2) / 4
        assert outcome.probability == pytest.approx(expected_prob, abs=1e-12)
        post = outcome.post_state.as_single_mode()
        expected = np.zeros(3, dtype=complex)
        expected[0], expected[2] = alpha[0], alpha[2]
        expected /= np.linalg.norm(expected)
        overlap = abs(np.vdot(expected, post.padded(2)))
        assert overlap == pytest.approx(1.0, abs=1e-12)

    def test_impossible_outcome(self):
        st = MultiModeState(3, 1, {(0, 0, 0): 1.0})
        with pytest.raises(ZeroProbabilityOutcome):
            project_counts(st, [0, 1], [1, 0])

    def test_all_outcomes_sum_to_one(self, rng):
        for _ in range(5):
            st = random_multimode(rng, 3, 5, 20)
            outcomes = measure_modes(st, (0, 1))
            assert sum(o.probability for o in outcomes) == pytest.approx(1.0, abs=1e-10)
            for o in outcomes:
                assert o.post_state.norm_squared() == pytest.approx(1.0, abs=1e-12)

    def test_agrees_with_measure_modes(self, rng):
        st = random_multimode(rng, 2, 4, 10)
        for outcome in measure_modes(st, (0,)):
            direct = project_counts(st, (0,), outcome.counts)
            assert direct.probability == pytest.approx(outcome.probability, abs=1e-15)

    def test_guard_rails(self, rng):
        st = random_multimode(rng, 2, 4, 6)
        with pytest.raises(InvalidMode):
            project_counts(st, [0, 0], [1, 1])
        with pytest.raises(InvalidMode):
            project_counts(st, [0, 1], [0, 0])  # nothing left unmeasured
        with pytest.raises(ValueError):
            project_counts(st, [0], [9])


class TestLossyDetector:
    def test_perfect_detector_is_identity(self):
        st = tensor(build_state(coherent_spec(1.0, 18)), build_state(number_spec(0, 0)))
        ideal = count_distribution(st, 0)
        lossy = lossy_count_distribution(st, 0, DetectorModel(1.0))
        assert total_variation_distance(ideal, lossy) < 1e-14

    def test_blind_detector_sees_vacuum(self):
        st = tensor(build_state(coherent_spec(1.0, 18)), build_state(number_spec(0, 0)))
        lossy = lossy_count_distribution(st, 0, DetectorModel(0.0))
        assert lossy.probability(0) == pytest.approx(1.0)

    def test_single_photon_thinning_by_hand(self):
        st = tensor(build_state(number_spec(1, 1)), build_state(number_spec(0, 0)))
        lossy = lossy_count_distribution(st, 0, DetectorModel(0.85))
        assert lossy.probability(1) == pytest.approx(0.85)
        assert lossy.probability(0) == pytest.approx(0.15)

    def test_coherent_thinning_is_poisson(self):
        # thinned Poisson(mu) is Poisson(eta*mu): check against the series
        st = tensor(build_state(coherent_spec(1.0, 22)), build_state(number_spec(0, 0)))
        lossy = lossy_count_distribution(st, 0, DetectorModel(0.85))
        for n in range(10):
            expected = math.exp(-0.85) * 0.85 ** n / math.factorial(n)
            assert lossy.probability(n) == pytest.approx(expected, abs=1e-12)

    def test_efficiency_domain(self):
        with pytest.raises(ValueError):
            DetectorModel(1.2)

    def test_count_tvd_grows_with_mean_photon_number(self):
        det = DetectorModel(0.85)
        tvds = []
        flips = []
        for mean in (0.5, 1.0, 2.0, 4.0):
            st = tensor(build_state(coherent_spec(math.sqrt(mean), 30)),
                        build_state(number_spec(0, 0)))
            ideal = count_distribution(st, 0)
            lossy = thinned_distribution(ideal, det)
            tvds.append(total_variation_distance(ideal, lossy))
            flips.append(parity_flip_probability(ideal, det))
        assert all(b >= a for a, b in zip(tvds, tvds[1:]))
        # the parity-misreading probability behind the "low photon numbers"
        # caveat grows as well
        assert all(b >= a for a, b in zip(flips, flips[1:]))

    def test_binary_parity_marginal_tvd_shrinks(self):
        # the even/odd marginals of lossy and ideal counting actually move
        # closer together as the mean grows (both approach 1/2); kept as a
        # regression against reading the monotonicity claim that way
        det = DetectorModel(0.85)
        gaps = []
        for mean in (0.5, 1.0, 2.0, 4.0):
            st = tensor(build_state(coherent_spec(math.sqrt(mean), 30)),
                        build_state(number_spec(0, 0)))
            ideal = count_distribution(st, 0)
            lossy = thinned_distribution(ideal, det)
            gaps.append(abs(ideal.odd_probability() - lossy.odd_probability()))
        assert all(b < a for a, b in zip(gaps, gaps[1:]))


class TestSampler:
    def test_reproducible_and_consistent(self, rng):
        st = random_multimode(rng, 2, 4, 8)
        draws1 = sample_counts(st, (0,), np.random.default_rng(5), 2000)
        draws2 = sample_counts(st, (0,), np.random.default_rng(5), 2000)
        assert draws1 == draws2
        freq = {c: draws1.count(c) / 2000 for c in set(draws1)}
        dist = count_distribution(st, 0)
        for counts, f in freq.items():
            assert abs(f - dist.probability(counts[0])) < 0.06


class TestCountDistributionType:
    def test_rejects_bad_total(self):
        with pytest.raises(ValueError):
            CountDistribution({0: 0.5, 1: 0.4})

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            CountDistribution({0: 1.5, 1: -0.5})
