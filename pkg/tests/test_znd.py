import math

import numpy as np
import pytest
from scipy.integrate import quad

from detjump.errors import DomainError
from detjump.gas import flux_leading, vn_state
from detjump.oracle import cj_tangency_oracle
from detjump.znd import (cj_speed, half_reaction_length, invert_spatial_map, params_at_overdrive,
                         profile_arrays, profile_at, shock_coefficients, spatial_map,
                         taylor_extension, to_thermo, znd_params)

from conftest import random_gases


def closed_form_cj(gas):
    q = (gas.gamma ** 2 - 1) * gas.Q / (2 * gas.c0 ** 2)
    return math.sqrt(1 + q) + math.sqrt(q)


class TestShockCoefficients:
    def test_d_squared_nine(self):
        ms2, a, b = shock_coefficients(1.4, 3.0)
        assert a == pytest.approx(13.6 / 24.8, rel=1e-15)
        assert ms2 == pytest.approx(5.6 / 24.8, rel=1e-15)

    def test_density_ratio(self, gas):
        vn = vn_state(gas, 3.0)
        assert vn.rho / gas.rho0 == pytest.approx(3.857, rel=1e-4)

    def test_strong_shock_limit(self):
        _, a, _ = shock_coefficients(1.4, 1e4)
        assert a == pytest.approx(0.5, abs=1e-8)

    def test_weak_shock_limit(self):
        ms2, a, _ = shock_coefficients(1.4, 1 + 1e-9)
        assert a == pytest.approx(1.0, abs=1e-8)
        assert ms2 == pytest.approx(1.0, abs=1e-8)

    def test_verbatim_differs_by_one_plus_a_over_one_minus_a(self):
        _, a, b = shock_coefficients(1.4, 2.0)
        _, _, bv = shock_coefficients(1.4, 2.0, verbatim_b=True)
        assert b / bv == pytest.approx((1 + a) / (1 - a), rel=1e-14)


class TestCJ:
    def test_reference(self, gas):
        D = cj_speed(gas)
        assert D == pytest.approx(1.7444, rel=1e-4)
        assert D * gas.c0 == pytest.approx(652.7, rel=1e-3)
        p = znd_params(gas, D)
        assert p.a == pytest.approx(0.6478, abs=1e-4)
        assert p.Ms ** 2 == pytest.approx(0.3962, abs=1e-4)
        assert p.b_beta == pytest.approx(1.0, abs=1e-4)
        assert p.theta_a == pytest.approx(19.2559, abs=1e-3)

    def test_closed_form_sample(self):
        for g in random_gases(20):
            assert cj_speed(g) == pytest.approx(closed_form_cj(g), rel=1e-10)

    def test_small_heat_release(self, gas):
        assert cj_speed(gas.replace(Q=1e-3)) == pytest.approx(1.0, abs=1e-3)

    def test_inconsistent_heat_release(self, gas):
        with pytest.raises(DomainError, match="inconsistent"):
            cj_speed(gas.replace(Q=1e12))

    def test_verbatim_disagrees_with_tangency(self, gas):
        assert abs(cj_speed(gas, verbatim_b=True) / cj_tangency_oracle(gas) - 1) > 0.1

    def test_below_cj_rejected(self, gas):
        with pytest.raises(DomainError, match="below"):
            znd_params(gas, 0.99 * cj_speed(gas))
        with pytest.raises(DomainError):
            params_at_overdrive(gas, 0.9)


def reference_profile(params, lam):
    """Pressure, velocity and volume from the closed-form profile, written directly."""
    g, ms, a = params.gamma, params.Ms, params.a
    p = a + (1 - a) * np.sqrt(np.maximum(0.0, 1 - params.b * params.beta * lam))
    v = (1 - p) / (g * ms) + ms
    return p, v, v / ms


@pytest.fixture(params=[1.0, 1.5, 2.0], ids=lambda f: f"f{f}")
def params(request, gas):
    return params_at_overdrive(gas, request.param)


class TestProfile:
    def test_vn_anchor(self, params):
        st = profile_at(params, 0.0)
        assert (st.p, st.upsilon) == (1.0, 1.0)
        assert st.v == pytest.approx(params.Ms, rel=1e-15)

    def test_cj_end(self, gas):
        p = params_at_overdrive(gas, 1.0)
        assert profile_at(p, 1.0).p == pytest.approx(p.a, abs=1e-12)

    def test_reference_formula(self, params):
        lam = np.linspace(0, 1, 101)
        p_a, v_a, ups_a, _ = profile_arrays(params, lam)
        p, v, ups = reference_profile(params, lam)
        np.testing.assert_allclose(p_a, p, rtol=1e-12)
        np.testing.assert_allclose(v_a, v, rtol=1e-12)
        np.testing.assert_allclose(ups_a, ups, rtol=1e-12)

    def test_pressure_decreases(self, params):
        p = profile_arrays(params, np.linspace(0, 1, 200))[0]
        assert np.all(np.diff(p) < 0)

    def test_flux_constancy(self, params):
        lam = np.linspace(0, 1, 50)
        ref = np.array(flux_leading(profile_at(params, 0.0), params.Ms).as_tuple())
        for l in lam:
            f = np.array(flux_leading(profile_at(params, l), params.Ms).as_tuple())
            np.testing.assert_allclose(f[:4], ref[:4], rtol=1e-12)

    def test_thermo_anchor(self, gas, params):
        th = to_thermo(params, profile_at(params, 0.0))
        assert th.p == pytest.approx(params.stateVN.p, rel=1e-14)
        assert th.rho == pytest.approx(params.stateVN.rho, rel=1e-14)
        assert th.T == pytest.approx(th.p / (th.rho * gas.Rg), rel=1e-14)


class TestSpatialMap:
    def direct(self, params, gas, lam):
        """x(lam) by quadrature of u/W in lam with the reference profile."""
        vn = params.stateVN

        def dxdl(l):
            p, v, ups = reference_profile(params, l)
            return v * vn.c / (gas.k * (1 - l) * math.exp(-params.theta_a / (p * ups)))
        return quad(dxdl, 0.0, lam, epsabs=0, epsrel=1e-12, limit=200)[0]

    @pytest.mark.parametrize("lam", [0.1, 0.5, 0.9, 0.99])
    def test_against_direct_quadrature(self, gas, params, lam):
        assert spatial_map(params, gas, lam) == pytest.approx(self.direct(params, gas, lam), rel=1e-9)

    def test_half_reaction_length(self, gas, params):
        assert spatial_map(params, gas, 0.5) == pytest.approx(params.lc, rel=1e-10)
        assert half_reaction_length(params, gas) == pytest.approx(params.lc, rel=1e-10)

    def test_reference_half_length(self, gas):
        assert params_at_overdrive(gas, 1.0).lc == pytest.approx(2.664e5, rel=1e-3)

    def test_monotone_and_inverse(self, gas, params):
        xs = [spatial_map(params, gas, l) for l in np.linspace(0, 0.999, 30)]
        assert xs[0] == 0.0 and np.all(np.diff(xs) > 0)
        for l in (0.05, 0.5, 0.97):
            assert invert_spatial_map(params, gas, spatial_map(params, gas, l)) == pytest.approx(l, abs=1e-12)

    def test_infinite_tail(self, gas, params):
        with pytest.raises(DomainError, match="infinite"):
            spatial_map(params, gas, 1.0)


class TestTaylor:
    def test_fan(self, gas):
        params = params_at_overdrive(gas, 1.0)
        g = gas.gamma
        samples = taylor_extension(params, gas, 25)
        cj = params.stateCJ
        first, last = samples[0], samples[-1]
        assert first.x == 0.0
        assert (first.p, first.rho) == pytest.approx((cj.p, cj.rho), rel=1e-14)
        assert first.u == pytest.approx(params.D_m_s - cj.u, rel=1e-14)
        assert last.u == 0.0
        entropy = [s.p / s.rho ** g for s in samples]
        np.testing.assert_allclose(entropy, entropy[0], rtol=1e-12)
        t = gas.lf / params.D_m_s
        for s in samples:
            c = math.sqrt(g * s.p / s.rho)
            assert s.u - 2 * c / (g - 1) == pytest.approx(first.u - 2 * cj.c / (g - 1), rel=1e-10)
            # self-similar: the characteristic through x has speed u + c = (D t - x)/t
            assert s.u + c == pytest.approx(params.D_m_s - s.x / t, rel=1e-10)
        assert np.all(np.diff([s.p for s in samples]) < 0)

    def test_only_at_cj(self, gas):
        with pytest.raises(DomainError, match="CJ"):
            taylor_extension(params_at_overdrive(gas, 1.2), gas, 10)
