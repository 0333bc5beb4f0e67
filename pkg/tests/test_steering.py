import numpy as np
import pytest
from numpy.testing import assert_allclose

from qsteer.pauli import pauli_tensor
from qsteer.states import (
    density_from_pure,
    ghz_state,
    partial_trace,
    permute_qubits,
    schmidt_state,
    w_state,
)
from qsteer.steering import (
    classify_pairs,
    correlation_one_to_two,
    correlation_pair,
    correlation_two_to_one,
    h_one_to_two,
    h_pair,
    h_two_to_one,
    steering_report,
    steering_value,
    trace_norm,
)

from conftest import (
    SIGMA,
    kron3,
    oracle_ptrace,
    random_mixed_density,
    random_pure_density,
    random_unitary_2,
)

R2 = 1 / np.sqrt(2)
GHZ_H = 1.5 - np.sqrt(0.75)  # 0.6339745962155614
GHZ_PAIR_H = 0.5 - np.sqrt(0.75)  # -0.3660254037844386
# trace norm sqrt(3)/2 + 3/8, bound sqrt(1.375 * 0.375); computed by the
# explicit LOO covariance oracle below and frozen here
W_HALFPI_H = 0.5229550729671851


def oracle_one_to_two_entries(rho):
    """Definition-level covariance matrix: explicit LOO kron products."""
    rho_a = oracle_ptrace(rho, (0,))
    rho_bc = oracle_ptrace(rho, (1, 2))
    out = np.zeros((4, 16))
    for m in range(4):
        ga = SIGMA[m] / np.sqrt(2)
        for n in range(16):
            j, k = divmod(n, 4)
            gbc = np.kron(SIGMA[j], SIGMA[k]) / 2
            op = np.kron(ga, gbc)
            out[m, n] = np.trace(op @ (rho - np.kron(rho_a, rho_bc))).real
    return out


def oracle_pair_entries(rho2):
    r0 = np.einsum("abcb->ac", rho2.reshape(2, 2, 2, 2))
    r1 = np.einsum("abac->bc", rho2.reshape(2, 2, 2, 2))
    out = np.zeros((4, 4))
    for i in range(4):
        for j in range(4):
            op = np.kron(SIGMA[i], SIGMA[j]) / 2
            out[i, j] = np.trace(op @ (rho2 - np.kron(r0, r1))).real
    return out


class TestCorrelationMatrices:
    def test_matches_definition(self, rng):
        for maker in (random_pure_density, random_mixed_density):
            rho = maker(rng)
            m = correlation_one_to_two(pauli_tensor(rho))
            assert_allclose(m.entries, oracle_one_to_two_entries(rho), atol=1e-12)

    def test_zero_borders(self, rng):
        for _ in range(10):
            rho = random_mixed_density(rng)
            m = correlation_one_to_two(pauli_tensor(rho)).entries
            assert np.max(np.abs(m[0, :])) < 1e-12
            assert np.max(np.abs(m[:, 0])) < 1e-12
            mp = correlation_two_to_one(pauli_tensor(rho)).entries
            assert np.max(np.abs(mp[0, :])) < 1e-12
            assert np.max(np.abs(mp[:, 0])) < 1e-12
            c = correlation_pair(partial_trace(rho, ("A", "B"))).entries
            assert np.max(np.abs(c[0, :])) < 1e-12
            assert np.max(np.abs(c[:, 0])) < 1e-12

    def test_product_state_vanishes(self):
        theta = pauli_tensor(density_from_pure(np.eye(8)[0]))
        assert np.max(np.abs(correlation_one_to_two(theta).entries)) < 1e-14
        assert np.max(np.abs(correlation_two_to_one(theta).entries)) < 1e-14

    def test_maximally_mixed_vanishes(self):
        theta = pauli_tensor(np.eye(8, dtype=complex) / 8)
        assert np.max(np.abs(correlation_one_to_two(theta).entries)) < 1e-14

    def test_ghz_rows_and_norm(self):
        theta = pauli_tensor(density_from_pure(ghz_state(np.pi / 4)))
        m = correlation_one_to_two(theta)
        assert np.max(np.abs(m.entries[0])) < 1e-14
        assert trace_norm(m) == pytest.approx(1.5, abs=1e-12)

    def test_two_to_one_is_transpose(self, rng):
        rho = random_mixed_density(rng)
        theta = pauli_tensor(rho)
        assert_allclose(correlation_two_to_one(theta).entries,
                        correlation_one_to_two(theta).entries.T, atol=1e-13)

    def test_two_to_one_via_permutation_pipeline(self, rng):
        # same matrix out of the relabeled-state tensor and the direct formula
        rho = random_mixed_density(rng)
        tp = pauli_tensor(permute_qubits(rho, ("B", "C", "A")))
        scale = 1 / (2 * np.sqrt(2))
        direct = np.zeros((16, 4))
        for n in range(16):
            j, k = divmod(n, 4)
            for m in range(4):
                direct[n, m] = scale * (tp[j, k, m] - tp[j, k, 0] * tp[0, 0, m])
        assert_allclose(correlation_two_to_one(pauli_tensor(rho)).entries, direct, atol=1e-12)

    def test_pair_matches_definition(self, rng):
        rho2 = partial_trace(random_mixed_density(rng), ("A", "C"))
        c = correlation_pair(rho2)
        assert_allclose(c.entries, oracle_pair_entries(rho2), atol=1e-12)

    def test_pair_examples(self):
        prod = np.kron(np.diag([1.0, 0.0]), np.eye(2) / 2).astype(complex)
        assert np.max(np.abs(correlation_pair(prod).entries)) < 1e-14
        bell = np.zeros(4, dtype=complex)
        bell[1] = bell[2] = R2
        c = correlation_pair(np.outer(bell, bell.conj()))
        assert trace_norm(c) == pytest.approx(1.5, abs=1e-12)

    def test_ghz_pair_norm_closed_form(self):
        for th in np.linspace(0, np.pi / 2, 21):
            rho2 = partial_trace(density_from_pure(ghz_state(th)), ("A", "B"))
            expect = 2 * np.cos(th) ** 2 * np.sin(th) ** 2
            assert trace_norm(correlation_pair(rho2)) == pytest.approx(expect, abs=1e-12)


class TestTraceNorm:
    def test_zero(self):
        assert trace_norm(np.zeros((4, 16))) == 0.0

    def test_identity(self):
        assert trace_norm(np.eye(4)) == pytest.approx(4.0)

    def test_positive_iff_nonzero(self, rng):
        m = rng.standard_normal((4, 16))
        assert trace_norm(m) > 0


class TestHValues:
    def test_ghz_point(self):
        rho = density_from_pure(ghz_state(np.pi / 4))
        assert h_one_to_two(rho) == pytest.approx(GHZ_H, abs=1e-9)

    def test_product_zero(self):
        assert h_one_to_two(density_from_pure(np.eye(8)[0])) == pytest.approx(0.0, abs=1e-12)

    def test_w_half_pi(self):
        # oracle: definition-level covariance matrix + marginal purities
        rho = density_from_pure(w_state(np.pi / 3, np.pi / 2))
        m = oracle_one_to_two_entries(rho)
        norm = np.linalg.svd(m, compute_uv=False).sum()
        pa = np.trace(oracle_ptrace(rho, (0,)) @ oracle_ptrace(rho, (0,))).real
        pbc = np.trace(oracle_ptrace(rho, (1, 2)) @ oracle_ptrace(rho, (1, 2))).real
        oracle = norm - np.sqrt((2 - pa) * (1 - pbc))
        assert oracle == pytest.approx(W_HALFPI_H, abs=1e-12)
        assert h_one_to_two(rho) == pytest.approx(oracle, abs=1e-10)
        assert norm == pytest.approx(np.sqrt(3) / 2 + 3 / 8, abs=1e-12)

    def test_two_to_one(self, rng):
        assert h_two_to_one(density_from_pure(np.eye(8)[0])) == pytest.approx(0.0, abs=1e-12)
        mixed = np.eye(8, dtype=complex) / 8
        assert h_two_to_one(mixed) == pytest.approx(-np.sqrt(3.75 * 0.5), abs=1e-12)
        rho = density_from_pure(ghz_state(np.pi / 4))
        assert h_two_to_one(rho) == pytest.approx(1.5 - np.sqrt(1.75), abs=1e-10)

    def test_pair_values(self):
        bell = np.zeros(4, dtype=complex)
        bell[1] = bell[2] = R2
        rho2 = np.outer(bell, bell.conj())
        for side in (0, 1):
            assert h_pair(rho2, side) == pytest.approx(1.5 - np.sqrt(0.75), abs=1e-10)
        prod = np.kron(np.diag([1.0, 0.0]), np.diag([0.5, 0.5]) + 0.5 * np.array([[0, 1], [1, 0]]))
        assert h_pair(prod.astype(complex)) == pytest.approx(0.0, abs=1e-12)

    def test_pair_ghz_closed_form(self):
        for th in np.linspace(0, np.pi / 2, 21):
            rho2 = partial_trace(density_from_pure(ghz_state(th)), ("A", "B"))
            p4 = np.cos(th) ** 4 + np.sin(th) ** 4
            expect = 2 * np.cos(th) ** 2 * np.sin(th) ** 2 - np.sqrt((2 - p4) * (1 - p4))
            assert h_pair(rho2) == pytest.approx(expect, abs=1e-10)

    def test_steering_value(self):
        assert steering_value(0.634) == 0.634
        assert steering_value(-0.7) == 0.0
        assert steering_value(0.0) == 0.0


class TestWPairNorms:
    def test_tt1_closed_forms(self):
        # the ac/bc forms need |sin 2a| to stay nonnegative past pi/2
        for al in np.linspace(0.05, np.pi - 0.05, 29):
            rho = density_from_pure(w_state(np.pi / 3, al))
            s, s2 = np.sin(al), np.sin(2 * al)
            nab = trace_norm(correlation_pair(partial_trace(rho, ("A", "B"))))
            nac = trace_norm(correlation_pair(partial_trace(rho, ("A", "C"))))
            nbc = trace_norm(correlation_pair(partial_trace(rho, ("B", "C"))))
            assert nab == pytest.approx(np.sqrt(3) / 2 * s**2 + 3 / 8 * s**4, abs=1e-10)
            assert nac == pytest.approx(np.sqrt(3) / 2 * abs(s2) + 3 / 8 * s2**2, abs=1e-10)
            assert nbc == pytest.approx(0.5 * abs(s2) + 0.5 * s**2 * np.cos(al) ** 2, abs=1e-10)


class TestReport:
    def test_ghz_report(self):
        rep = steering_report(density_from_pure(ghz_state(np.pi / 4)))
        assert rep.s_a_bc == pytest.approx(GHZ_H, abs=1e-9)
        for key in ("AB", "AC", "BC"):
            assert rep.pair_h[key] == pytest.approx(GHZ_PAIR_H, abs=1e-12)
        assert rep.classification == "corollary2"
        assert rep.margin == pytest.approx(np.sqrt(3), abs=1e-9)
        assert rep.margin > 0

    def test_product_report(self):
        rep = steering_report(density_from_pure(np.eye(8)[0]))
        assert rep.h_a_bc == pytest.approx(0.0, abs=1e-12)
        assert rep.s_tot == 0.0
        assert rep.margin == pytest.approx(0.0, abs=1e-12)

    def test_schmidt_bell_report(self):
        rep = steering_report(density_from_pure(schmidt_state((0, 0, R2, R2))))
        assert rep.s_a_bc == pytest.approx(0.0, abs=1e-12)
        assert rep.pair_h["AB"] == pytest.approx(-R2, abs=1e-10)
        assert rep.pair_h["AC"] == pytest.approx(-R2, abs=1e-10)
        assert rep.pair_h["BC"] == pytest.approx(GHZ_H, abs=1e-10)
        assert rep.margin == pytest.approx(0.780239, abs=1e-5)
        assert rep.classification == "mixed"

    def test_w_half_pi_report(self):
        rep = steering_report(density_from_pure(w_state(np.pi / 3, np.pi / 2)))
        assert rep.h_a_bc == pytest.approx(W_HALFPI_H, abs=1e-10)
        assert rep.pair_h["AB"] == pytest.approx(W_HALFPI_H, abs=1e-10)
        assert rep.pair_h["AC"] == pytest.approx(0.0, abs=1e-12)
        assert rep.pair_h["BC"] == pytest.approx(0.0, abs=1e-12)
        assert rep.classification == "corollary1"

    def test_classification_rule(self):
        assert classify_pairs(0.0, 0.1, 0.2) == "corollary1"
        assert classify_pairs(-0.1, -0.2, -0.3) == "corollary2"
        assert classify_pairs(-0.1, 0.2, 0.3) == "mixed"

    def test_report_keys(self, rng):
        rep = steering_report(random_mixed_density(rng), include_all_cuts=True,
                              include_two_to_one=True, include_reverse_pairs=True)
        d = rep.to_dict()
        core = {"h_a_bc", "s_a_bc", "h_ab", "h_ac", "h_bc", "s_ab", "s_ac", "s_bc",
                "h_tot", "s_tot", "margin", "classification"}
        assert core <= set(d)
        for extra in ("h_b_to_ca", "h_c_to_ab", "h_bc_to_a", "h_ba"):
            assert extra in d
        assert d["s_ab"] == steering_value(d["h_ab"])

    def test_cut_consistency_via_permutation(self, rng):
        # the B->CA cut equals the A->BC cut of the relabeled state
        rho = random_mixed_density(rng)
        rep = steering_report(rho, include_all_cuts=True)
        direct = h_one_to_two(permute_qubits(rho, ("B", "C", "A")))
        assert rep.cuts["B->CA"].h == pytest.approx(direct, abs=1e-12)

    def test_invalid_state_rejected(self, rng):
        rho = random_mixed_density(rng)
        rho[0, 0] += 0.2
        with pytest.raises(ValueError, match="invalid density matrix"):
            steering_report(rho)


class TestInvariance:
    def test_local_unitary_invariance(self, rng):
        for _ in range(10):
            rho = random_mixed_density(rng)
            u = np.kron(np.kron(random_unitary_2(rng), random_unitary_2(rng)),
                        random_unitary_2(rng))
            rotated = u @ rho @ u.conj().T
            a = steering_report(rho, include_two_to_one=True, validate=False)
            b = steering_report(rotated, include_two_to_one=True, validate=False)
            assert b.h_a_bc == pytest.approx(a.h_a_bc, abs=1e-9)
            assert b.cuts["BC->A"].h == pytest.approx(a.cuts["BC->A"].h, abs=1e-9)
            for key in ("AB", "AC", "BC"):
                assert b.pair_h[key] == pytest.approx(a.pair_h[key], abs=1e-9)

    def test_pure_state_monogamy_sample(self, rng):
        for _ in range(300):
            rep = steering_report(random_pure_density(rng), validate=False)
            assert rep.margin >= -1e-9

    def test_corollary_consistency(self, rng):
        seen = {"corollary1": 0, "corollary2": 0}
        for _ in range(600):
            rep = steering_report(random_pure_density(rng), validate=False)
            if rep.classification == "corollary1":
                assert rep.s_a_bc >= rep.s_tot - 1e-9
                seen["corollary1"] += 1
            elif rep.classification == "corollary2":
                assert rep.s_tot == 0.0
                assert rep.s_a_bc >= 0.0
                seen["corollary2"] += 1
        assert seen["corollary2"] > 0  # the ensemble hits this class often
