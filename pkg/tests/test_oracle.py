import math

import numpy as np

import pytest

from detjump.oracle import (ValidationReport, cj_closed_form, cj_tangency_oracle,
                            flux_balance_check, ode_profile_oracle, run_validation,
                            spatial_layer_oracle)
from detjump.errors import DomainError
from detjump.layer import layer_integrals
from detjump.znd import cj_speed, params_at_overdrive

from conftest import random_gases


def test_tangency_matches_closed_form(gas):
    assert cj_tangency_oracle(gas) == pytest.approx(cj_closed_form(gas), rel=1e-12)


def test_tangency_sample():
    for g in random_gases(10):
        assert cj_tangency_oracle(g) == pytest.approx(cj_closed_form(g), rel=1e-10)


def test_report_line():
    r = ValidationReport.make("x", 0.5, 1.0)
    assert r.passed and r.line() == "x,0.5,1,PASS"
    assert not ValidationReport.make("y", 2.0, 1.0).passed
    assert not ValidationReport.make("z", math.nan, 1.0).passed


def test_ode_profile_domain(gas):
    with pytest.raises(DomainError):
        ode_profile_oracle(gas, 2.0, -1.0, 10)


def test_ode_profile_reaches_half_at_lc(gas):
    p = params_at_overdrive(gas, 1.5)
    prof = ode_profile_oracle(gas, p.D, p.lc, 4)
    assert prof.lam[-1] == pytest.approx(0.5, abs=1e-7)


def test_spatial_oracle_density_excess_matches_layer(gas):
    p = params_at_overdrive(gas, 1.5)
    sp = spatial_layer_oracle(p, gas)
    assert sp["excess_mass"] == pytest.approx(layer_integrals(p, gas).Irho, rel=1e-9)
    assert sp["status"] == 1  # stopped by the tail event


def test_full_suite_passes(gas):
    reports = run_validation(gas)
    failed = [r.line() for r in reports if not r.passed]
    assert not failed


def test_verbatim_b_is_detected(gas):
    reports = {r.name: r for r in run_validation(gas, verbatim_b=True)}
    assert not reports["cj_speed_vs_tangency"].passed
    assert not reports["flux_balance_energy"].passed


def test_verbatim_momentum_row_is_an_identity(gas):
    """Momentum constancy follows from v(p) alone, whatever b is."""
    p = params_at_overdrive(gas, 1.0, verbatim_b=True)
    by_name = {r.name: r for r in flux_balance_check(p, gas, np.linspace(0.05, 0.95, 19))}
    assert by_name["flux_balance_momentum"].passed
    assert not by_name["flux_balance_energy"].passed


def test_verbatim_speed_is_below_true_cj(gas):
    assert cj_speed(gas, verbatim_b=True) < cj_tangency_oracle(gas)
