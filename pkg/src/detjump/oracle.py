"""Independent validators for the ZND and layer computations.

None of these reuse the quadrature or root-finding kernels of the primary
path: the CJ speed comes from a Rayleigh/Hugoniot tangency scan, profiles
and spatial integrals from ODE integration in the physical coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError
from .gas import GasSpec, flux_leading
from .layer import alpha0_nondimensional, layer_integrals
from .znd import (ZndParams, cj_speed, invert_spatial_map, params_at_overdrive, profile_at,
                  profile_at_deficit, spatial_map, znd_params)

ODE_RTOL = 1e-10
# log(1/(1 - lam)) at which spatial integrations stop
TAIL_LOG_DEFICIT = 80.0


@dataclass(frozen=True)
class ValidationReport:
    name: str
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""

    @classmethod
    def make(cls, name, residual, tolerance, detail=""):
        residual = float(residual)
        return cls(name, residual, tolerance, bool(residual <= tolerance), detail)

    def line(self) -> str:
        return f"{self.name},{self.residual:.17g},{self.tolerance:.17g},{'PASS' if self.passed else 'FAIL'}"


# -- CJ speed ---------------------------------------------------------------

def cj_closed_form(gas: GasSpec) -> float:
    """``sqrt(1 + q) + sqrt(q)`` with ``q = (gamma**2 - 1) Q / (2 c0**2)``."""
    q = (gas.gamma ** 2 - 1.0) * gas.Q / (2.0 * gas.c0 ** 2)
    return math.sqrt(1.0 + q) + math.sqrt(q)


def _burned_discriminant(gas: GasSpec, D):
    """Discriminant of the Rayleigh-line / equilibrium-Hugoniot quadratic in ``upsilon``."""
    g, p0 = gas.gamma, gas.p0
    ups0 = 1.0 / gas.rho0
    m2 = (gas.rho0 * D * gas.c0) ** 2
    A = p0 + m2 * ups0
    c2 = -m2 * (g + 1.0) / (2.0 * (g - 1.0))
    c1 = A / (g - 1.0) + 0.5 * (p0 + A) + 0.5 * m2 * ups0
    c0 = -p0 * ups0 / (g - 1.0) - gas.Q - 0.5 * (p0 + A) * ups0
    return (c1 * c1 - 4.0 * c2 * c0) / c1 ** 2


def cj_tangency_oracle(gas: GasSpec, step: float = 1e-3, d_max: float = 100.0) -> float:
    """Lowest Mach at which the Rayleigh line touches the equilibrium Hugoniot.

    Scans ``D`` upward for the sign change of the burned-state discriminant,
    then bisects to relative width ``1e-13``.
    """
    grid = np.arange(1.0, d_max + step, step)
    disc = _burned_discriminant(gas, grid)
    if disc[0] >= 0.0:
        return 1.0
    idx = int(np.argmax(disc >= 0.0))
    if disc[idx] < 0.0:
        raise DomainError("no tangency found below the scan limit")
    lo, hi = grid[idx - 1], grid[idx]
    while hi - lo > 1e-13 * hi:
        mid = 0.5 * (lo + hi)
        if _burned_discriminant(gas, mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# -- spatial profile ----------------------------------------------------------

@dataclass(frozen=True)
class OdeProfile:
    x: np.ndarray
    lam: np.ndarray
    truncated: bool
    lam_reached: float


def _rate_over_speed(params: ZndParams, gas: GasSpec, lam: float) -> float:
    st = profile_at(params, min(max(lam, 0.0), 1.0))
    return gas.k * (1.0 - st.lam) * math.exp(-params.theta_a / (st.p * st.upsilon)) / (st.v * params.stateVN.c)


def ode_profile_oracle(gas: GasSpec, D: float, x_max: float, n_steps: int,
                       verbatim_b: bool = False) -> OdeProfile:
    """Integrate ``dlam/dx = W/u`` from the shock with adaptive RK4(5) stepping."""
    if x_max <= 0.0:
        raise DomainError("x_max must be positive")
    params = znd_params(gas, D, verbatim_b=verbatim_b)
    x_eval = np.linspace(0.0, x_max, n_steps + 1)
    sol = solve_ivp(lambda x, y: [_rate_over_speed(params, gas, y[0])], (0.0, x_max), [0.0],
                    method="RK45", t_eval=x_eval, rtol=ODE_RTOL, atol=1e-14)
    lam = np.clip(sol.y[0], 0.0, 1.0)
    truncated = sol.status != 0 or len(sol.t) < len(x_eval)
    return OdeProfile(x=sol.t, lam=lam, truncated=truncated,
                      lam_reached=float(lam[-1]) if len(lam) else 0.0)


def spatial_layer_oracle(params: ZndParams, gas: GasSpec) -> dict:
    """Integrate layer quantities along ``x`` behind the shock.

    The state variable is ``s = -log(1 - lam)``; integration stops at
    ``s = TAIL_LOG_DEFICIT``.  Returns the density excess, its absolute
    value, and the integrated species source (all SI) plus the end point.
    """
    vn = params.stateVN
    rho_end = params.stateCJ.rho / vn.rho
    theta = params.theta_a
    lc = params.lc
    m = vn.rho * vn.u

    # x in half-reaction lengths, densities in von Neumann units
    def rhs(x, z):
        y = math.exp(-z[0])
        st = profile_at_deficit(params, y)
        arrh = math.exp(-theta / (st.p * st.upsilon))
        drho = st.rho - rho_end
        return [lc * gas.k * arrh / (st.v * vn.c), drho, abs(drho),
                st.rho * vn.rho * gas.k * y * arrh * lc / m]

    def tail(x, z):
        return z[0] - TAIL_LOG_DEFICIT
    tail.terminal = True

    sol = solve_ivp(rhs, (0.0, 1e12), [0.0, 0.0, 0.0, 0.0], method="DOP853",
                    rtol=1e-12, atol=1e-16, events=tail)
    z = sol.y[:, -1]
    scale = vn.rho * lc
    return {"excess_mass": z[1] * scale, "abs_excess_mass": z[2] * scale,
            "species_source": z[3] * m, "x_end": sol.t[-1] * lc,
            "lam_end": -math.expm1(-z[0]), "status": sol.status}


def excess_mass_residual(params: ZndParams, gas: GasSpec, xVN: float | None = None) -> ValidationReport:
    """Surface-excess mass with the shock offset by ``xVN`` from the discontinuity."""
    if xVN is None:
        xVN = layer_integrals(params, gas).xVN
    sp = spatial_layer_oracle(params, gas)
    resid = sp["excess_mass"] - (params.stateCJ.rho - params.state0.rho) * xVN
    return ValidationReport.make(f"excess_mass_f{params.overdrive:.6g}",
                                 abs(resid) / sp["abs_excess_mass"], 1e-8,
                                 f"I_R={resid:.6g} kg/m2")


def species_flux_closure(params: ZndParams, gas: GasSpec) -> ValidationReport:
    sp = spatial_layer_oracle(params, gas)
    m = params.stateVN.rho * params.stateVN.u
    return ValidationReport.make(f"species_flux_f{params.overdrive:.6g}",
                                 abs(sp["species_source"] - m) / m, 1e-6,
                                 f"integral={sp['species_source']:.12g} m={m:.12g}")


# -- flux balance -------------------------------------------------------------

ROWS = ("mass", "momentum_normal", "energy", "species")


def flux_balance_check(params: ZndParams, gas: GasSpec, grid, h: float = 1e-5) -> list[ValidationReport]:
    """Check that d/dX of the leading-order normal flux equals its source.

    Derivatives use central differences in ``lam`` and ``dlam/dX = W/v``
    (``X`` in half-reaction lengths).  Only the species row has a source.
    """
    grid = np.asarray(grid, dtype=float)
    if np.any((grid - h <= 0.0) | (grid + h >= 1.0)):
        raise DomainError("grid must lie inside (0, 1)")
    m = params.mass_flux
    worst = dict.fromkeys(ROWS, 0.0)
    for lam in grid:
        st = profile_at(params, lam)
        w = params.k_nd * (1.0 - lam) * math.exp(-params.theta_a / (st.p * st.upsilon))
        dlam_dX = w / st.v
        j_mid = flux_leading(st, m)
        j_plus = flux_leading(profile_at(params, lam + h), m)
        j_minus = flux_leading(profile_at(params, lam - h), m)
        source = {"species": st.rho * w}
        for row in ROWS:
            deriv = (getattr(j_plus, row) - getattr(j_minus, row)) / (2.0 * h) * dlam_dX
            scale = abs(source[row]) if row in source else abs(getattr(j_mid, row)) * dlam_dX
            resid = abs(deriv - source.get(row, 0.0)) / scale
            worst[row] = max(worst[row], resid)
    tol = {"mass": 1e-8, "momentum_normal": 1e-8, "energy": 1e-8, "species": 1e-6}
    name = {"mass": "mass", "momentum_normal": "momentum", "energy": "energy", "species": "species"}
    return [ValidationReport.make(f"flux_balance_{name[r]}", worst[r], tol[r],
                                  f"max over {len(grid)} samples") for r in ROWS]


# -- suite --------------------------------------------------------------------

def sonic_closure(params: ZndParams) -> ValidationReport:
    st = profile_at(params, 1.0)
    return ValidationReport.make("sonic_closure", abs(st.v ** 2 - st.p * st.upsilon), 1e-8)


def ode_map_agreement(params: ZndParams, gas: GasSpec, lam_max: float = 0.999,
                      n_points: int = 20) -> ValidationReport:
    """Largest |lam_ode(x) - lam_map(x)| over ``[0, x(lam_max)]``."""
    x_max = spatial_map(params, gas, lam_max)
    ode = ode_profile_oracle(gas, params.D, x_max, n_points, verbatim_b=params.verbatim_b)
    err = max(abs(l - invert_spatial_map(params, gas, x)) for x, l in zip(ode.x, ode.lam))
    return ValidationReport.make(f"ode_vs_spatial_map_f{params.overdrive:.6g}", err, 1e-6,
                                 "truncated" if ode.truncated else "")


def run_validation(gas: GasSpec, verbatim_b: bool = False) -> list[ValidationReport]:
    """Every oracle check for ``gas`` at the CJ speed and at overdrive 2."""
    reports = []
    d_primary = cj_speed(gas, verbatim_b)
    d_tangent = cj_tangency_oracle(gas)
    d_closed = cj_closed_form(gas)
    reports.append(ValidationReport.make("cj_speed_vs_tangency", abs(d_primary - d_tangent) / d_tangent,
                                         1e-6, f"primary={d_primary:.12g} tangency={d_tangent:.12g}"))
    reports.append(ValidationReport.make("tangency_vs_closed_form", abs(d_tangent - d_closed) / d_closed,
                                         1e-10))
    cj = params_at_overdrive(gas, 1.0, verbatim_b)
    reports.extend(flux_balance_check(cj, gas, np.linspace(0.01, 0.99, 99)))
    reports.append(sonic_closure(cj))
    for f in (1.0, 2.0):
        params = cj if f == 1.0 else params_at_overdrive(gas, f, verbatim_b)
        li = layer_integrals(params, gas)
        reports.append(ode_map_agreement(params, gas))
        reports.append(excess_mass_residual(params, gas, li.xVN))
        reports.append(species_flux_closure(params, gas))
        reports.append(ValidationReport.make(
            f"alpha0_routes_f{f:g}", abs(alpha0_nondimensional(params) - li.alpha0) / abs(li.alpha0), 1e-10))
        reports.append(ValidationReport.make(
            f"alpha0_decomposition_f{f:g}", abs(li.alpha0 - (li.alpha01 + li.alpha02)) / abs(li.alpha0), 1e-14))
    return reports
