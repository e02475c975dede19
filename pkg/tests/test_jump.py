import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detjump.errors import DomainError
from detjump.jump import (JumpInputs, assemble_jump, isigma_rate_from_schedule, jump_from_layer,
                          stretch_from_field)
from detjump.layer import layer_integrals
from detjump.znd import params_at_overdrive, znd_params

from conftest import reference_gas

GAS = reference_gas()
CJ = params_at_overdrive(GAS, 1.0)
LAYER = layer_integrals(CJ, GAS)


def as_vec(res):
    return np.array([res.mass_jump, res.normal_momentum_jump, res.tangential_momentum_jump,
                     res.energy_jump])


class TestJump:
    def test_zero_inputs(self):
        assert as_vec(jump_from_layer(LAYER, JumpInputs())).tolist() == [0.0, 0.0, 0.0, 0.0]

    def test_curvature(self):
        res = jump_from_layer(LAYER, JumpInputs(H=10.0))
        assert res.normal_momentum_jump == 2 * 10.0 * LAYER.alpha
        assert res.mass_jump == 0.0 and res.energy_jump == 0.0

    def test_stretch(self):
        res = jump_from_layer(LAYER, JumpInputs(chi=100.0))
        assert res.energy_jump == -100.0 * LAYER.ISigmap

    def test_assemble_matches(self):
        inputs = JumpInputs(H=0.3, chi=2.0, grad_alpha_tangential=5.0, dISigma_dt=7.0)
        np.testing.assert_array_equal(as_vec(assemble_jump(GAS, CJ.D, inputs)),
                                      as_vec(jump_from_layer(LAYER, inputs)))

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=4, max_size=4),
           st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=4, max_size=4),
           st.floats(-10, 10, allow_nan=False))
    def test_linearity(self, u, v, c):
        J = lambda z: as_vec(jump_from_layer(LAYER, JumpInputs(*z)))
        lhs = J([c * a + b for a, b in zip(u, v)])
        rhs = c * J(u) + J(v)
        scale = np.abs(c * J(u)) + np.abs(J(v)) + 1e-300
        assert np.all(np.abs(lhs - rhs) <= 1e-12 * scale)

    def test_matrix(self):
        """The response matrix has the predicted entries, column by column."""
        cols = [as_vec(jump_from_layer(LAYER, JumpInputs(*np.eye(4)[j]))) for j in range(4)]
        expected = np.array([[0, 0, 0, 0],
                             [2 * LAYER.alpha, 0, 0, 0],
                             [0, 0, 1, 0],
                             [0, -LAYER.ISigmap, 0, -1]])
        np.testing.assert_array_equal(np.array(cols).T, expected)

    @pytest.mark.parametrize("bad", [math.nan, math.inf])
    def test_non_finite(self, bad):
        with pytest.raises(DomainError):
            JumpInputs(H=bad)


class TestSchedule:
    def test_central_difference(self):
        times = [0.0, 1e-3, 2e-3]
        machs = [1.9, 2.0, 2.1]
        rate = isigma_rate_from_schedule(GAS, times, machs, 1e-3)
        sig = lambda D: layer_integrals(znd_params(GAS, D), GAS).ISigmap
        assert rate == pytest.approx((sig(2.1) - sig(1.9)) / 2e-3, rel=1e-14)

    def test_bad_schedule(self):
        with pytest.raises(DomainError):
            isigma_rate_from_schedule(GAS, [0.0], [2.0], 0.0)
        with pytest.raises(DomainError):
            isigma_rate_from_schedule(GAS, [0.0, 0.0], [2.0, 2.1], 0.0)


class TestStretch:
    def test_uniform_flow(self):
        chi = stretch_from_field(lambda x: 1.0 + 0.2 * x[0], lambda x: np.array([3.0, 0.0, 0.0]),
                                 [0.5, 0.0, 0.0])
        assert abs(chi) < 1e-8

    def test_exponential(self):
        L, U = 2.0, 3.0
        chi = stretch_from_field(lambda x: math.exp(x[0] / L), lambda x: np.array([U, 0.0, 0.0]),
                                 [0.3, 0.1, -0.2])
        assert chi == pytest.approx(U / L, rel=1e-7)

    def test_spherical_second_order(self):
        A = 2.0
        rho = lambda x: float(np.dot(x, x)) ** 1.5
        vel = lambda x: A * np.asarray(x) / np.linalg.norm(x)
        point = np.array([1.0, 0.5, -0.3])
        exact = 4 * A / np.linalg.norm(point)
        hs = [1e-2 / 2 ** k for k in range(4)]
        errs = [abs(stretch_from_field(rho, vel, point, h) - exact) for h in hs]
        orders = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
        assert all(1.8 < p < 2.2 for p in orders), orders

    def test_degenerate(self):
        with pytest.raises(DomainError, match="degenerate"):
            stretch_from_field(lambda x: 1.0, lambda x: np.zeros(3), [0.0, 0.0, 0.0])
