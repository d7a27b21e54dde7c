import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from densecoding import qmath, states
from densecoding.errors import DimensionMismatch, NotHermitian, ResultDimUnsupported


def random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return a + a.conj().T


def loop_partial_trace(rho, keep, n):
    """Index-by-index contraction, written independently of qmath."""
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)
    for row in range(2 ** n):
        for col in range(2 ** n):
            rb = [(row >> (n - 1 - q)) & 1 for q in range(n)]
            cb = [(col >> (n - 1 - q)) & 1 for q in range(n)]
            traced = [q for q in range(n) if q + 1 not in keep]
            if any(rb[q] != cb[q] for q in traced):
                continue
            r = sum(rb[k - 1] << (len(keep) - 1 - i) for i, k in enumerate(keep))
            c = sum(cb[k - 1] << (len(keep) - 1 - i) for i, k in enumerate(keep))
            out[r, c] += rho[row, col]
    return out


class TestEigenvalues:
    def test_isotropic_qubit(self):
        np.testing.assert_allclose(qmath.hermitian_eigenvalues(np.eye(2) / 2), [0.5, 0.5])

    def test_diagonal(self):
        w = qmath.hermitian_eigenvalues(np.diag([0.5, 0.25, 0.25, 0.0]))
        np.testing.assert_allclose(w, [0.5, 0.25, 0.25, 0.0], atol=1e-15)

    def test_bell_projector(self):
        phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
        w = qmath.hermitian_eigenvalues(np.outer(phi, phi))
        np.testing.assert_allclose(w, [1, 0, 0, 0], atol=1e-14)

    @pytest.mark.parametrize("n", [2, 4, 8])
    def test_matches_lapack(self, rng, n):
        for _ in range(20):
            m = random_hermitian(rng, n)
            w = qmath.hermitian_eigenvalues(m)
            np.testing.assert_allclose(w, np.sort(np.linalg.eigvalsh(m))[::-1], atol=1e-11)

    def test_eigh_reconstructs(self, rng):
        m = random_hermitian(rng, 8)
        w, v = qmath.hermitian_eigh(m)
        np.testing.assert_allclose(v @ np.diag(w) @ v.conj().T, m, atol=1e-11)
        np.testing.assert_allclose(v.conj().T @ v, np.eye(8), atol=1e-12)

    def test_degenerate_spectrum(self, rng):
        u = states.random_unitary(rng, 8)
        m = u @ np.diag([1, 1, 1, 0.5, 0.5, 0, 0, 0]) @ u.conj().T
        np.testing.assert_allclose(qmath.hermitian_eigenvalues(m),
                                   [1, 1, 1, 0.5, 0.5, 0, 0, 0], atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            qmath.hermitian_eigenvalues(np.array([[1, 1], [0, 1]]))

    def test_rejects_bad_dimension(self):
        with pytest.raises(DimensionMismatch):
            qmath.hermitian_eigenvalues(np.eye(3))

    def test_batch(self, rng):
        stack = np.stack([random_hermitian(rng, 4) for _ in range(5)])
        w = np.sort(qmath.batch_eigenvalues(stack), axis=-1)
        np.testing.assert_allclose(w, np.linalg.eigvalsh(stack), atol=1e-11)

    def test_two_by_two_closed_form(self, rng):
        for _ in range(50):
            m = random_hermitian(rng, 2)
            big, small = qmath.eigenvalues_2x2(m)
            np.testing.assert_allclose([small, big], np.linalg.eigvalsh(m), atol=1e-12)


class TestPartialTrace:
    def test_ghz_marginals(self):
        rho = states.density(states.standard_ghz())
        np.testing.assert_allclose(qmath.partial_trace(rho, (1, 2)),
                                   np.diag([0.5, 0, 0, 0.5]), atol=1e-15)
        np.testing.assert_allclose(qmath.partial_trace(rho, (1,)), np.eye(2) / 2, atol=1e-15)

    def test_generalized_w_marginal(self):
        rho = states.density(states.generalized_w(np.sqrt(0.5), np.sqrt(0.3), np.sqrt(0.2)))
        r23 = qmath.partial_trace(rho, (2, 3))
        assert abs(np.trace(r23) - 1) < 1e-14
        w = qmath.hermitian_eigenvalues(r23)
        np.testing.assert_allclose(w, [0.5, 0.5, 0, 0], atol=1e-12)

    @pytest.mark.parametrize("keep", [k for r in (1, 2, 3)
                                      for k in itertools.permutations((1, 2, 3), r)])
    def test_matches_index_contraction(self, rng, keep):
        rho = states.random_density(rng)
        np.testing.assert_allclose(qmath.partial_trace(rho, keep),
                                   loop_partial_trace(rho, keep, 3), atol=1e-14)

    def test_rejects_repeated_qubit(self):
        with pytest.raises(DimensionMismatch):
            qmath.partial_trace(np.eye(8) / 8, (1, 1))

    @given(st.integers(0, 2 ** 32 - 1))
    def test_composition(self, seed):
        rho = states.random_density(np.random.default_rng(seed))
        via_pair = qmath.partial_trace(qmath.partial_trace(rho, (2, 3)), (2,))
        np.testing.assert_allclose(via_pair, qmath.partial_trace(rho, (3,)), atol=1e-14)


class TestTensor:
    def test_identities(self):
        np.testing.assert_array_equal(qmath.tensor(np.eye(2), np.eye(2)), np.eye(4))

    def test_diagonals(self):
        np.testing.assert_array_equal(qmath.tensor(np.diag([1, 0]), np.diag([0, 1])),
                                      np.diag([0, 1, 0, 0]))

    def test_conjugation_flips_first_qubit(self):
        x1 = qmath.tensor(qmath.PAULI_X, np.eye(2))
        p00 = qmath.projector([1, 0, 0, 0])
        np.testing.assert_array_equal(x1 @ p00 @ x1.conj().T, qmath.projector([0, 0, 1, 0]))

    def test_rejects_large_result(self):
        with pytest.raises(ResultDimUnsupported):
            qmath.tensor(np.eye(4), np.eye(4))
