import math

import numpy as np
import pytest

from conftest import random_qubit, random_single, real_overlap_partner
from oracle import dense_scissors, dense_teleport
from paritysim import (
    DegenerateState,
    DegenerateSuperposition,
    InvalidResource,
    MultiModeState,
    QubitAmplitudes,
    SingleModeState,
    beamsplitter_5050,
    build_state,
    coherent_spec,
    encode_qubit,
    entanglement_entropy,
    explicit_spec,
    fidelity,
    normalize,
    number_spec,
    odd_parity_probability,
    phase_shift,
    plus_minus,
    quantum_scissors,
    squeezed_spec,
    teleport_basic,
    teleport_enhanced,
    tensor,
)


def ipow(k: int) -> complex:
    return (1.0, 1j, -1.0, -1j)[k % 4]


def collapsed_receiver_state(alpha, na: int, nb: int) -> np.ndarray:
    """Receiver-mode state after counting (na, nb), for the (0, 2) resource.

    Independent evaluation of the four-term collapsed-state expression
    (binomials and factorials written out); unnormalized, so the squared norm
    is the outcome probability.
    """
    nt = na + nb

    def choose(n, k):
        return math.comb(n, k) if 0 <= k <= n else 0

    def a(n):
        return alpha[n] if 0 <= n < len(alpha) else 0.0

    pref = math.sqrt(math.factorial(nb) * math.factorial(na))
    out = np.zeros(3, dtype=complex)
    out[2] = (a(nt) * choose(nt, nb) * pref / math.sqrt(math.factorial(nt))
              * ipow(na) / math.sqrt(2.0) ** (nt + 1))
    if nt >= 2:
        common = pref / math.sqrt(math.factorial(nt - 2)) / math.sqrt(2.0) ** (nt + 2)
        out[0] += -a(nt - 2) * choose(nt - 2, nb - 2) * common * ipow(na)
        out[0] += a(nt - 2) * choose(nt - 2, nb) * common * ipow(na - 2)
        out[0] += 2j * a(nt - 2) * choose(nt - 2, nb - 1) * common * ipow(na - 1)
    return out


def report_invariants(report):
    assert report.total_probability == pytest.approx(1.0, abs=1e-9)
    assert report.success_probability == pytest.approx(
        sum(o.probability for o in report.success_outcomes()), abs=1e-15)
    for o in report.success_outcomes():
        assert o.fidelity_to_target >= 1 - 1e-9


class TestTeleportBasic:
    def test_finite_pair_exact(self):
        q = QubitAmplitudes(0.6, 0.8)
        report = teleport_basic(q, number_spec(0, 1), number_spec(1, 1))
        assert report.success_probability == pytest.approx(0.25, abs=1e-12)
        assert report.min_success_fidelity() == pytest.approx(1.0, abs=1e-12)
        report_invariants(report)

    def test_squeezed_opposite_phase_pair(self):
        q = QubitAmplitudes(1 / math.sqrt(2), 1j / math.sqrt(2))
        report = teleport_basic(q, squeezed_spec(0.4, 30), squeezed_spec(-0.4, 30))
        assert report.success_probability == pytest.approx(0.25, abs=1e-9)
        assert report.min_success_fidelity() >= 1 - 1e-9
        report_invariants(report)

    def test_success_rate_independent_of_inputs(self, rng):
        # 5 random qubits x 5 random finite-support pairs
        for _ in range(5):
            u = random_single(rng, 4)
            v = real_overlap_partner(rng, u)
            u_spec = explicit_spec(u.amplitudes)
            v_spec = explicit_spec(v.amplitudes)
            for _ in range(5):
                q = random_qubit(rng)
                report = teleport_basic(q, u_spec, v_spec)
                assert report.success_probability == pytest.approx(0.25, abs=1e-9)
                assert report.min_success_fidelity() >= 1 - 1e-9
                report_invariants(report)

    def test_matches_dense_oracle(self, rng):
        q = random_qubit(rng)
        u = normalize(SingleModeState([0.8, 0.1, 0.4]))
        v = normalize(SingleModeState([0.1, -0.7, 0.2]))
        report = teleport_basic(q, explicit_spec(u.amplitudes), explicit_spec(v.amplitudes))
        expected = dense_teleport(q, u.amplitudes, v.amplitudes, dim=6, enhanced=False)
        got = {o.counts: o for o in report.outcomes}
        assert set(got) == set(expected)
        for counts, (prob, classification, fid) in expected.items():
            assert got[counts].probability == pytest.approx(prob, abs=1e-12)
            assert got[counts].classification == classification
            assert got[counts].fidelity_to_target == pytest.approx(fid, abs=1e-12)

    def test_same_basis_combinations_never_odd_in_a(self, rng):
        # the two matched sender/resource basis combinations feed the
        # even-parity guarantee, outcome by outcome
        u = random_single(rng, 5)
        v = real_overlap_partner(rng, u)
        plus, minus = plus_minus(u, v)
        for basis in (plus, minus):
            shifted = phase_shift(basis, math.pi / 2)
            out = beamsplitter_5050(tensor(shifted, basis), 0, 1)
            assert odd_parity_probability(out, 0) <= 1e-12

    def test_odd_a_restriction_reproduces_logical_state(self, rng):
        # the antisymmetric-part argument, numerically: every odd-count-A
        # record leaves the receiver in the plain logical encoding
        for _ in range(3):
            u = random_single(rng, 4)
            v = real_overlap_partner(rng, u)
            q = random_qubit(rng)
            report = teleport_basic(q, explicit_spec(u.amplitudes), explicit_spec(v.amplitudes))
            target = encode_qubit(q, u, v, tilde=False)
            for o in report.outcomes:
                if o.counts[0] % 2 == 1:
                    assert fidelity(o.corrected_post_state, target) == pytest.approx(1.0, abs=1e-10)

    def test_odd_b_outcomes_recorded_as_failures(self):
        q = QubitAmplitudes(0.6, 0.8)
        report = teleport_basic(q, number_spec(0, 1), number_spec(1, 1))
        failures = [o for o in report.outcomes if o.classification == "failure"]
        assert failures and all(o.counts[1] % 2 == 1 for o in failures)
        assert all(o.fidelity_to_target is not None for o in failures)

    def test_retilde_restores_sent_encoding(self, rng):
        u = random_single(rng, 4)
        v = real_overlap_partner(rng, u)
        q = random_qubit(rng)
        report = teleport_basic(q, explicit_spec(u.amplitudes), explicit_spec(v.amplitudes),
                                retilde=True)
        sent = encode_qubit(q, u, v, tilde=True)
        for o in report.success_outcomes():
            assert fidelity(o.corrected_post_state, sent) == pytest.approx(1.0, abs=1e-10)


class TestTeleportEnhanced:
    def test_single_photon_resource_case(self):
        q = QubitAmplitudes(0.28, 0.96j)
        report = teleport_enhanced(q, explicit_spec([1.0, 1.0]))
        assert report.success_probability == pytest.approx(0.5, abs=1e-12)
        assert report.min_success_fidelity() == pytest.approx(1.0, abs=1e-12)
        report_invariants(report)

    def test_coherent(self):
        q = QubitAmplitudes(0.6, -0.8)
        report = teleport_enhanced(q, coherent_spec(1.0, 25))
        assert report.success_probability == pytest.approx(0.5, abs=1e-9)
        assert report.min_success_fidelity() >= 1 - 1e-9

    def test_vacuum_input_degenerate(self):
        with pytest.raises(DegenerateSuperposition):
            teleport_enhanced(QubitAmplitudes(1, 0), coherent_spec(0.0, 5))

    def test_independence_sweep(self, rng):
        for _ in range(5):
            amps = rng.normal(size=5) + 1j * rng.normal(size=5)
            u_spec = explicit_spec(amps)
            for _ in range(5):
                q = random_qubit(rng)
                report = teleport_enhanced(q, u_spec)
                assert report.success_probability == pytest.approx(0.5, abs=1e-9)
                assert report.min_success_fidelity() >= 1 - 1e-9
                report_invariants(report)

    def test_exactly_one_odd_count_per_success(self, rng):
        amps = rng.normal(size=4) + 1j * rng.normal(size=4)
        report = teleport_enhanced(random_qubit(rng), explicit_spec(amps))
        for o in report.outcomes:
            odd_count = (o.counts[0] % 2) + (o.counts[1] % 2)
            assert odd_count != 2  # never both odd
            assert (o.classification == "success") == (odd_count == 1)

    def test_combination_parity_structure(self, rng):
        # for these pairs, matched sender/resource basis combinations produce
        # even counts at BOTH outputs; cross combinations produce an odd
        # total, split between exactly one of the two outputs
        amps = rng.normal(size=5) + 1j * rng.normal(size=5)
        u = normalize(SingleModeState(amps))
        v = phase_shift(u, math.pi)
        plus, minus = plus_minus(u, v)
        for a_basis, b_basis, expect_total_odd in (
            (plus, plus, False), (minus, minus, False),
            (plus, minus, True), (minus, plus, True),
        ):
            out = beamsplitter_5050(tensor(phase_shift(a_basis, math.pi / 2), b_basis), 0, 1)
            for occ, amp in out.items():
                if abs(amp) > 1e-12:
                    assert (sum(occ) % 2 == 1) == expect_total_odd

    def test_half_cycle_correction_flips_only_odd_basis_state(self, rng):
        # the claimed correction: for these pairs the half-cycle shift leaves
        # the even-support basis state alone and negates the odd-support one
        amps = rng.normal(size=6) + 1j * rng.normal(size=6)
        u = normalize(SingleModeState(amps))
        v = phase_shift(u, math.pi)
        plus, minus = plus_minus(u, v)
        np.testing.assert_allclose(phase_shift(plus, math.pi).amplitudes, plus.amplitudes,
                                   atol=1e-14)
        np.testing.assert_allclose(phase_shift(minus, math.pi).amplitudes, -minus.amplitudes,
                                   atol=1e-14)

    def test_matches_dense_oracle(self, rng):
        q = random_qubit(rng)
        u = normalize(SingleModeState([0.7, 0.3, 0.5, 0.2]))
        report = teleport_enhanced(q, explicit_spec(u.amplitudes))
        v_amp = u.amplitudes * np.array([1, -1, 1, -1])
        expected = dense_teleport(q, u.amplitudes, v_amp, dim=8, enhanced=True)
        got = {o.counts: o for o in report.outcomes}
        assert set(got) == set(expected)
        for counts, (prob, classification, fid) in expected.items():
            assert got[counts].probability == pytest.approx(prob, abs=1e-12)
            assert got[counts].classification == classification
            assert got[counts].fidelity_to_target == pytest.approx(fid, abs=1e-12)


class TestQuantumScissors:
    def test_low_instance_probabilities(self):
        state = build_state(explicit_spec([0.5, 0.5, 0.5, 0.5]))
        report = quantum_scissors(state, 0, 2)
        by_counts = {o.counts: o for o in report.outcomes}
        assert by_counts[(1, 1)].probability == pytest.approx(0.125, abs=1e-12)
        joint = by_counts[(2, 0)].probability + by_counts[(0, 2)].probability
        assert joint == pytest.approx(0.125, abs=1e-12)
        assert report.success_probability == pytest.approx(0.25, abs=1e-12)
        for counts in ((1, 1), (2, 0), (0, 2)):
            assert by_counts[counts].fidelity_to_target == pytest.approx(1.0, abs=1e-12)
        report_invariants(report)

    def test_collapsed_state_formula_term_by_term(self):
        # every counting record of the (0, 2) instance must reproduce the
        # four-term expression, amplitude for amplitude (global phase included)
        alpha = np.array([0.5, -0.3 + 0.2j, 0.6, 0.1j, 0.35], dtype=complex)
        alpha = alpha / np.linalg.norm(alpha)
        report = quantum_scissors(SingleModeState(alpha), 0, 2)
        for o in report.outcomes:
            expected = collapsed_receiver_state(alpha, *o.counts)
            prob = float(np.sum(np.abs(expected) ** 2))
            assert o.probability == pytest.approx(prob, abs=1e-12)
            # compare the raw collapsed state, not the corrected one
            post = o.corrected_post_state
            if o.correction_phase:
                post = phase_shift(post, -o.correction_phase)
            got = post.padded(4)[:3] * math.sqrt(o.probability)
            np.testing.assert_allclose(got, expected, atol=1e-12)
        total_grid = sum(
            float(np.sum(np.abs(collapsed_receiver_state(alpha, na, nb)) ** 2))
            for na in range(8) for nb in range(8))
        assert total_grid == pytest.approx(1.0, abs=1e-9)

    def test_input_supported_on_kept_levels(self):
        state = build_state(explicit_spec([0.8, 0.0, 0.6]))
        report = quantum_scissors(state, 0, 2)
        assert report.success_probability == pytest.approx(0.5, abs=1e-12)
        assert report.min_success_fidelity() == pytest.approx(1.0, abs=1e-12)

    def test_general_pair_matches_dense_oracle(self):
        alpha = np.array([0.4, 0.3, 0.5, 0.2, 0.3, 0.1], dtype=complex)
        alpha = alpha / np.linalg.norm(alpha)
        report = quantum_scissors(SingleModeState(alpha), 1, 3)
        expected = dense_scissors(alpha, 1, 3, dim=10)
        got = {o.counts: o for o in report.outcomes}
        assert set(got) == set(expected)
        for counts, (prob, classification, fid) in expected.items():
            assert got[counts].probability == pytest.approx(prob, abs=1e-12)
            assert got[counts].classification == classification
            assert got[counts].fidelity_to_target == pytest.approx(fid, abs=1e-12)
        kept = abs(alpha[1]) ** 2 + abs(alpha[3]) ** 2
        assert report.success_probability == pytest.approx(kept / 2, abs=1e-12)

    def test_correction_depends_on_parity_of_a(self):
        state = build_state(explicit_spec([0.5, 0.5, 0.5, 0.5]))
        report = quantum_scissors(state, 0, 2)
        for o in report.success_outcomes():
            if o.counts[0] % 2 == 1:
                assert o.correction_phase == 0.0
            else:
                assert o.correction_phase == pytest.approx(math.pi / 2)

    def test_equal_kept_levels_rejected(self):
        state = build_state(explicit_spec([1.0, 1.0]))
        with pytest.raises(InvalidResource):
            quantum_scissors(state, 2, 2)

    def test_no_weight_on_kept_levels(self):
        state = build_state(explicit_spec([0.0, 1.0]))
        with pytest.raises(DegenerateState):
            quantum_scissors(state, 0, 2)


class TestFidelity:
    def test_identical(self, rng):
        s = random_single(rng, 5)
        assert fidelity(s, s) == pytest.approx(1.0, abs=1e-14)

    def test_orthogonal(self):
        assert fidelity(build_state(number_spec(0, 1)), build_state(number_spec(1, 1))) == 0.0

    def test_half_overlap(self):
        plus = build_state(explicit_spec([1.0, 1.0]))
        assert fidelity(plus, build_state(number_spec(0, 1))) == pytest.approx(0.5, abs=1e-14)


class TestEntanglementEntropy:
    def test_product_state(self):
        st = tensor(build_state(number_spec(0, 1)), build_state(number_spec(1, 1)))
        assert entanglement_entropy(st) == pytest.approx(0.0, abs=1e-12)

    def test_single_photon_pair(self):
        st = MultiModeState(2, 1, {(0, 1): 1 / math.sqrt(2), (1, 0): -1 / math.sqrt(2)})
        assert entanglement_entropy(st) == pytest.approx(1.0, abs=1e-14)

    def test_coherent_resource(self):
        from paritysim import build_resource

        res = build_resource(coherent_spec(1.3, 26), coherent_spec(-1.3, 26), "phi_minus")
        assert entanglement_entropy(res.two_mode_state) == pytest.approx(1.0, abs=1e-9)

    def test_requires_two_modes(self):
        with pytest.raises(ValueError):
            entanglement_entropy(MultiModeState(3, 1, {(0, 0, 0): 1.0}))
