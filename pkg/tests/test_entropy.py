import math

import numpy as np
import pytest

from bosonic_renyi.entropy import (
    EntropyValue,
    classical_renyi_entropy,
    classical_renyi_quadrature,
    entropy_power,
    lp_norm_from_entropy,
    photon_number,
    shannon_entropy,
    state_entropy,
    wehrl_renyi_entropy,
    wigner_renyi_entropy,
)
from bosonic_renyi.errors import BadOrder
from bosonic_renyi.gaussian import thermal, two_mode_squeezed_vacuum, vacuum
from bosonic_renyi.phase_space import PhaseSpaceGaussian, QuadratureSpec, husimi_of, lp_norm

from helpers import random_states

GH = QuadratureSpec("tensor_gauss_hermite", 64)
LN2PI = math.log(2 * math.pi)


def std_normal(n):
    return PhaseSpaceGaussian(np.zeros(n), np.eye(n))


class TestClassicalRenyi:
    def test_one_dim_p2(self):
        # integral of N(0,1)^2 is 1/(2 sqrt(pi)); H_2 = -ln of that
        expected = -math.log(1 / (2 * math.sqrt(math.pi)))
        assert expected == pytest.approx(0.5 * LN2PI + 0.5 * math.log(2))
        assert classical_renyi_entropy(std_normal(1), 2).value == pytest.approx(expected, rel=1e-14)
        assert classical_renyi_quadrature(std_normal(1), 2, GH) == pytest.approx(expected, rel=1e-12)

    def test_two_dim_p2(self):
        expected = LN2PI + math.log(2)
        assert classical_renyi_entropy(std_normal(2), 2).value == pytest.approx(expected, rel=1e-14)
        assert classical_renyi_quadrature(std_normal(2), 2, GH) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("p", [0.5, 1.5, 2.0, 3.0])
    def test_scaling(self, p):
        g = husimi_of(random_states(2, 1, seed=3)[0])
        c = 2.7
        scaled = PhaseSpaceGaussian(g.mean, c * g.sigma)
        diff = classical_renyi_entropy(scaled, p).value - classical_renyi_entropy(g, p).value
        assert diff == pytest.approx(2 * math.log(c), rel=1e-12)

    def test_shannon_limit(self):
        g = husimi_of(random_states(2, 1, seed=5)[0])
        h = 1e-4
        mid = 0.5 * (classical_renyi_entropy(g, 1 + h).value + classical_renyi_entropy(g, 1 - h).value)
        assert mid == pytest.approx(shannon_entropy(g).value, abs=1e-6)

    def test_non_increasing_in_p(self):
        g = husimi_of(random_states(1, 1, seed=6)[0])
        values = [classical_renyi_entropy(g, p).value for p in (0.5, 0.9, 1.1, 1.5, 2, 3, 10)]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_translation_invariant(self):
        g = husimi_of(random_states(1, 1, seed=7)[0])
        moved = PhaseSpaceGaussian(g.mean + 5.0, g.sigma)
        assert classical_renyi_entropy(moved, 2).value == classical_renyi_entropy(g, 2).value

    @pytest.mark.parametrize("p", [1.0, 0.0, -2.0])
    def test_bad_order(self, p):
        with pytest.raises(BadOrder):
            classical_renyi_entropy(std_normal(2), p)


class TestQuantumFunctionals:
    def test_wehrl_vacuum(self):
        e = wehrl_renyi_entropy(vacuum(), 2)
        assert e.value == pytest.approx(LN2PI + math.log(2), rel=1e-14)
        assert e.value == pytest.approx(2.5310, abs=1e-4)

    def test_wehrl_thermal(self):
        assert wehrl_renyi_entropy(thermal(1), 2).value == pytest.approx(LN2PI + 2 * math.log(2), rel=1e-14)

    def test_wigner_vacuum(self):
        assert wigner_renyi_entropy(vacuum(), 2).value == pytest.approx(math.log(math.pi) + math.log(2), rel=1e-14)

    def test_entropy_powers(self):
        assert entropy_power(wigner_renyi_entropy(vacuum(), 2)).value == pytest.approx(2 * math.pi)
        assert entropy_power(wehrl_renyi_entropy(vacuum(), 2)).value == pytest.approx(4 * math.pi)

    def test_entropy_power_per_mode(self):
        # product of identical modes has the single-mode entropy power
        for p in (1.5, 3.0):
            one = entropy_power(wehrl_renyi_entropy(thermal(0.4), p)).value
            three = entropy_power(wehrl_renyi_entropy(thermal(0.4, 3), p)).value
            assert three == pytest.approx(one, rel=1e-13)

    def test_norm_bridge(self):
        for s in random_states(2, 10, seed=8):
            g = husimi_of(s)
            for p in (1.5, 2.0, 3.0):
                assert lp_norm_from_entropy(classical_renyi_entropy(g, p)) == pytest.approx(lp_norm(g, p), rel=1e-12)

    def test_dispatch(self):
        s = thermal(1)
        assert state_entropy(s, "von_neumann").value == pytest.approx(2 * math.log(2))
        assert state_entropy(s, "trace_renyi", 2).value == pytest.approx(math.log(3))
        assert state_entropy(s, "wigner", 2).functional == "wigner_renyi"
        with pytest.raises(ValueError):
            state_entropy(s, "bogus")

    def test_units(self):
        e = EntropyValue(math.log(2), "von_neumann", 1.0, 1)
        assert e.in_units("bits") == pytest.approx(1.0)
        with pytest.raises(ValueError):
            e.in_units("hartleys")


class TestPhotonNumber:
    def test_vacuum(self):
        assert photon_number(vacuum(2)) == 0.0

    def test_thermal(self):
        assert abs(photon_number(thermal(2)) - 2) <= 1e-9
        assert abs(photon_number(thermal(2, 3)) - 2) <= 1e-9

    def test_tmsv_reduced(self):
        r = 0.8
        assert photon_number(two_mode_squeezed_vacuum(r).reduced([0])) == pytest.approx(math.sinh(r) ** 2, rel=1e-10)
