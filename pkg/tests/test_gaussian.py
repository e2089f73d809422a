import json
import math

import numpy as np
import pytest
import scipy.linalg

from bosonic_renyi.errors import (
    BadOrder,
    DimensionMismatch,
    NegativeMeanPhotons,
    NotSymmetric,
    PairingFailed,
    UncertaintyViolated,
)
from bosonic_renyi.gaussian import (
    GaussianState,
    make_state,
    purity,
    random_state,
    random_symplectic,
    renyi_trace_entropy,
    squeezed_vacuum,
    symplectic_eigenvalues,
    symplectic_form,
    thermal,
    two_mode_squeezed_vacuum,
    vacuum,
    von_neumann_entropy,
)
from bosonic_renyi.gfunc import g_function

from helpers import random_states


def williamson_oracle(cov):
    """Symplectic eigenvalues via the Hermitian matrix i sqrt(cov) Omega sqrt(cov)."""
    root = scipy.linalg.sqrtm(cov).real
    m = 1j * root @ symplectic_form(cov.shape[0] // 2) @ root
    ev = np.linalg.eigvalsh(m)
    return np.sort(ev[ev > 0])


def thermal_trace_power(nbar, p, cutoff=4000):
    """Tr rho^p summed over the geometric Fock distribution."""
    n = np.arange(cutoff)
    logp = n * math.log(nbar / (nbar + 1)) - math.log(nbar + 1)
    probs = np.exp(logp)
    return float(np.sum(probs**p))


def is_symplectic(S):
    om = symplectic_form(S.shape[0] // 2)
    return np.allclose(S @ om @ S.T, om, atol=1e-10)


class TestMakeState:
    def test_vacuum(self):
        s = make_state(np.zeros(2), np.eye(2))
        assert s.modes == 1

    def test_below_vacuum_noise(self):
        with pytest.raises(UncertaintyViolated):
            make_state(np.zeros(2), 0.5 * np.eye(2))

    def test_squeezed_vacuum_is_pure(self):
        r = 0.5
        s = make_state(np.zeros(2), np.diag([math.exp(2 * r), math.exp(-2 * r)]))
        assert williamson_oracle(s.cov) == pytest.approx([1.0], abs=1e-12)
        assert symplectic_eigenvalues(s) == pytest.approx([1.0], abs=1e-12)

    @pytest.mark.parametrize(
        "mean, cov, exc",
        [
            (np.zeros(3), np.eye(3), DimensionMismatch),
            (np.zeros(4), np.eye(2), DimensionMismatch),
            (np.zeros(2), np.array([[1.0, 0.1], [0.0, 1.0]]), NotSymmetric),
            (np.zeros(2), np.array([[np.nan, 0], [0, 1]]), DimensionMismatch),
        ],
    )
    def test_rejects(self, mean, cov, exc):
        with pytest.raises(exc):
            make_state(mean, cov)

    def test_json_round_trip(self):
        s = random_state(2, seed=3)
        text = s.to_json()
        back = GaussianState.from_json(text)
        np.testing.assert_array_equal(back.cov, s.cov)
        np.testing.assert_array_equal(back.mean, s.mean)
        assert json.loads(text)["modes"] == 2

    def test_json_digits(self):
        text = make_state([1 / 3, 0], np.eye(2)).to_json()
        assert "0.33333333333333331" in text


class TestSymplecticEigenvalues:
    def test_vacuum(self):
        assert symplectic_eigenvalues(vacuum(3)) == pytest.approx([1, 1, 1])

    def test_thermal(self):
        assert symplectic_eigenvalues(thermal(2)) == pytest.approx([5.0])

    def test_tmsv(self):
        r = 0.6
        s = two_mode_squeezed_vacuum(r)
        assert symplectic_eigenvalues(s) == pytest.approx([1, 1], abs=1e-12)
        assert symplectic_eigenvalues(s.reduced([0])) == pytest.approx([math.cosh(2 * r)], rel=1e-14)

    def test_pairing_failure(self):
        # bypass make_state to feed a corrupted covariance
        bad = GaussianState(1, np.zeros(2), np.array([[2.0, 1.0], [-1.0, 2.0]]))
        with pytest.raises(PairingFailed):
            symplectic_eigenvalues(bad)

    def test_matches_oracle(self, modes):
        for s in random_states(modes, 50, seed=11):
            np.testing.assert_allclose(symplectic_eigenvalues(s), williamson_oracle(s.cov), rtol=1e-9)

    def test_williamson_consistency(self, modes):
        for s in random_states(modes, 1000, seed=1):
            nu = symplectic_eigenvalues(s)
            assert np.all(nu >= 1 - 1e-9)
            assert np.linalg.det(s.cov) == pytest.approx(np.prod(nu**2), rel=1e-8)

    def test_symplectic_invariance(self, modes, rng):
        for s in random_states(modes, 50, seed=5):
            S = random_symplectic(modes, rng, squeeze_max=1.0)
            assert is_symplectic(S)
            moved = make_state(S @ s.mean, 0.5 * (S @ s.cov @ S.T + (S @ s.cov @ S.T).T))
            np.testing.assert_allclose(symplectic_eigenvalues(moved), symplectic_eigenvalues(s), rtol=1e-8)


class TestEntropies:
    def test_von_neumann(self):
        assert von_neumann_entropy(vacuum()) == 0.0
        assert von_neumann_entropy(thermal(1)) == pytest.approx(2 * math.log(2), rel=1e-14)
        r = 0.6
        expected = g_function((math.cosh(2 * r) - 1) / 2)
        assert von_neumann_entropy(two_mode_squeezed_vacuum(r).reduced([1])) == pytest.approx(expected, rel=1e-12)

    def test_von_neumann_pure_only_at_zero(self, modes):
        for s in random_states(modes, 20, seed=2):
            assert von_neumann_entropy(s) > 0

    @pytest.mark.parametrize("p", [0.5, 2.0, 3.0])
    def test_renyi_vacuum(self, p):
        assert renyi_trace_entropy(vacuum(2), p) == pytest.approx(0.0, abs=1e-14)

    def test_renyi_thermal_p2(self):
        assert renyi_trace_entropy(thermal(1), 2.0) == pytest.approx(math.log(3), rel=1e-14)

    @pytest.mark.parametrize("nbar", [0.3, 1.0, 4.0])
    @pytest.mark.parametrize("p", [0.5, 1.5, 2.0, 3.7])
    def test_renyi_matches_fock_sum(self, nbar, p):
        expected = math.log(thermal_trace_power(nbar, p)) / (1 - p)
        assert renyi_trace_entropy(thermal(nbar), p) == pytest.approx(expected, rel=1e-12)

    def test_renyi_product_additive(self):
        s = make_state(np.zeros(4), np.diag([3.0, 3.0, 5.0, 5.0]))
        assert renyi_trace_entropy(s, 2.5) == pytest.approx(
            renyi_trace_entropy(thermal(1), 2.5) + renyi_trace_entropy(thermal(2), 2.5), rel=1e-14
        )

    def test_renyi_limit_p_to_one(self):
        # symmetric difference cancels the O(h) term
        s = thermal(1)
        h = 1e-4
        mid = 0.5 * (renyi_trace_entropy(s, 1 + h) + renyi_trace_entropy(s, 1 - h))
        assert mid == pytest.approx(von_neumann_entropy(s), abs=1e-6)
        assert renyi_trace_entropy(s, 1 + h) == pytest.approx(2 * math.log(2), abs=1e-4)

    @pytest.mark.parametrize("p", [0.0, -1.0, 1.0])
    def test_bad_order(self, p):
        with pytest.raises(BadOrder):
            renyi_trace_entropy(vacuum(), p)

    def test_ordering(self, modes):
        for s in random_states(modes, 100, seed=7):
            S = von_neumann_entropy(s)
            s15, s2, s3 = (renyi_trace_entropy(s, p) for p in (1.5, 2.0, 3.0))
            assert S >= s15 - 1e-9
            assert s15 >= s2 - 1e-9
            assert s2 >= s3 - 1e-9


class TestPurity:
    def test_values(self):
        assert purity(vacuum()) == 1.0
        assert purity(thermal(1)) == pytest.approx(1 / 3)
        assert purity(squeezed_vacuum(0.5)) == pytest.approx(1.0, abs=1e-12)

    def test_matches_renyi_two(self, modes):
        for s in random_states(modes, 100, seed=8):
            mu = purity(s)
            assert 0 < mu <= 1
            assert mu == pytest.approx(math.exp(-renyi_trace_entropy(s, 2.0)), rel=1e-10)
            assert mu == pytest.approx(1 / math.sqrt(np.linalg.det(s.cov)), rel=1e-10)


class TestFixtures:
    def test_thermal_zero_is_vacuum(self):
        np.testing.assert_array_equal(thermal(0, 2).cov, np.eye(4))

    def test_tmsv_zero_is_vacuum(self):
        np.testing.assert_array_equal(two_mode_squeezed_vacuum(0).cov, np.eye(4))

    def test_tmsv_reduced_is_thermal(self):
        r = 0.6
        nu = symplectic_eigenvalues(two_mode_squeezed_vacuum(r).reduced([0]))[0]
        assert (nu - 1) / 2 == pytest.approx(math.sinh(r) ** 2, rel=1e-13)

    def test_negative_photons(self):
        with pytest.raises(NegativeMeanPhotons):
            thermal(-1)


class TestRandomState:
    def test_deterministic(self):
        a, b = random_state(3, seed=42), random_state(3, seed=42)
        np.testing.assert_array_equal(a.cov, b.cov)
        np.testing.assert_array_equal(a.mean, b.mean)

    def test_degenerate_parameters_give_vacuum_noise(self):
        s = random_state(2, seed=1, squeeze_max=0.0, thermal_rate=1e12)
        np.testing.assert_allclose(s.cov, np.eye(4), atol=1e-10)

    def test_valid(self, modes):
        for s in random_states(modes, 200, seed=9, squeeze_max=2.0, thermal_rate=0.2):
            assert s.modes == modes
