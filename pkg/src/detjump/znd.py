"""Planar ZND reaction-zone structure for single-step Arrhenius kinetics.

The profile is parametrised by the progress variable ``lam``.  Pressure,
velocity and specific volume follow in closed form from the Rayleigh
line and the Hugoniot of partially reacted gas:

    p = a + (1 - a) sqrt(1 - b beta lam),  v = (1 - p)/(gamma Ms) + Ms,
    upsilon = v / Ms

in von Neumann units.  ``D`` is the detonation Mach number relative to
the upstream sound speed.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .errors import DomainError, NumericalError
from .gas import GasSpec, ThermoState, vn_state

QUAD_RTOL = 1e-10
CJ_RTOL = 1e-10
CJ_BRACKET = (1.0 + 1e-6, 100.0)
# |b beta - 1| below this counts as a Chapman-Jouguet wave
CJ_CLOSURE_TOL = 1e-8
# b beta may exceed 1 by this much before the wave is rejected as sub-CJ
SUB_CJ_TOL = 1e-9


def shock_coefficients(gamma: float, D: float, verbatim_b: bool = False):
    """Return ``(Ms**2, a, b)`` for upstream Mach ``D``.

    ``verbatim_b`` selects ``1 - a**2`` in the denominator of ``b`` instead
    of ``(1 - a)**2``.  Only the latter closes the energy balance.
    """
    g = gamma
    D2 = D * D
    den = 2.0 * g * D2 - (g - 1.0)
    ms2 = ((g - 1.0) * D2 + 2.0) / den
    a = (g * D2 + 1.0) / den
    one_minus_a = g * (D2 - 1.0) / den  # 1 - a without cancellation
    denom = one_minus_a * (1.0 + a) if verbatim_b else one_minus_a ** 2
    b = ms2 * 2.0 * g * (g - 1.0) / (denom * (g + 1.0))
    return ms2, a, b


def heat_release_parameter(gas: GasSpec, D: float) -> float:
    """``beta = gamma Q / c_s**2`` with ``c_s`` the von Neumann sound speed."""
    vn = vn_state(gas, D)
    return gas.gamma * gas.Q / vn.c ** 2


def _closure(gas: GasSpec, D: float, verbatim_b: bool) -> float:
    _, _, b = shock_coefficients(gas.gamma, D, verbatim_b)
    return b * heat_release_parameter(gas, D) - 1.0


def cj_speed(gas: GasSpec, verbatim_b: bool = False) -> float:
    """Chapman-Jouguet Mach number: the root of ``b(D) beta(D) = 1``.

    Bisection narrows the bracket, a safeguarded secant iteration finishes.
    """
    lo, hi = CJ_BRACKET
    f_lo, f_hi = _closure(gas, lo, verbatim_b), _closure(gas, hi, verbatim_b)
    if not (f_lo > 0.0 > f_hi):
        raise DomainError("heat release inconsistent with CJ detonation")
    while hi - lo > 1e-4 * lo:
        mid = 0.5 * (lo + hi)
        f_mid = _closure(gas, mid, verbatim_b)
        if f_mid > 0.0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    x0, f0, x1, f1 = lo, f_lo, hi, f_hi
    for _ in range(100):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not lo <= x2 <= hi:
            x2 = 0.5 * (lo + hi)
        f2 = _closure(gas, x2, verbatim_b)
        if f2 == 0.0:
            return x2
        if f2 > 0.0:
            lo = x2
        else:
            hi = x2
        converged = abs(x2 - x1) <= 1e-3 * CJ_RTOL * x2
        x0, f0, x1, f1 = x1, f1, x2, f2
        if converged:
            break
    if hi - lo > CJ_RTOL * lo and abs(x1 - x0) > CJ_RTOL * x1:
        raise NumericalError("CJ root did not converge", estimate=x1)
    return x1


@dataclass(frozen=True)
class ZndState:
    """One point of the reaction zone in von Neumann units.

    ``e`` is the total energy per unit mass (internal, kinetic and
    unreleased chemical) in units of ``c_s**2``.
    """

    lam: float
    p: float
    v: float
    upsilon: float
    e: float
    gamma: float
    x: float | None = None

    @property
    def rho(self) -> float:
        return 1.0 / self.upsilon


@dataclass(frozen=True)
class ZndParams:
    D: float
    Ms: float
    a: float
    b: float
    beta: float
    theta_a: float
    k_nd: float
    lc: float
    state0: ThermoState
    stateVN: ThermoState
    stateCJ: ThermoState
    overdrive: float
    D_cj: float
    gamma: float
    verbatim_b: bool = False
    # built at the computed CJ speed: the closure gap is zero by definition
    cj_wave: bool = False

    @property
    def b_beta(self) -> float:
        return self.b * self.beta

    @property
    def closure_gap(self) -> float:
        """``1 - b beta`` clamped at zero; vanishes at the CJ speed.

        At the computed CJ speed the root-finder residual is discarded, since
        the square root in the end state would amplify it.
        """
        if self.cj_wave:
            return 0.0
        return max(0.0, 1.0 - self.b * self.beta)

    @property
    def at_cj(self) -> bool:
        return self.cj_wave or abs(1.0 - self.b * self.beta) < CJ_CLOSURE_TOL

    @property
    def D_m_s(self) -> float:
        return self.D * self.state0.c

    @property
    def p_ref(self) -> float:
        """Pressure unit ``rho_s c_s**2 / gamma`` (equals ``p_VN``)."""
        return self.stateVN.rho * self.stateVN.c ** 2 / self.gamma

    @property
    def p_end(self) -> float:
        """Dimensionless pressure of the fully burned state."""
        return self.a + (1.0 - self.a) * math.sqrt(self.closure_gap)

    @property
    def mass_flux(self) -> float:
        return self.Ms


def pressure_excess(params: ZndParams, y):
    """``p(lam) - p(1)`` at ``y = 1 - lam``, free of cancellation."""
    gap = params.closure_gap
    bb = params.b_beta
    y = np.asarray(y, dtype=float)
    root = np.sqrt(gap + bb * y)
    den = root + math.sqrt(gap)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(den > 0.0, (1.0 - params.a) * bb * y / np.where(den > 0.0, den, 1.0), 0.0)
    return out if out.ndim else float(out)


def _state_from_pressure(params: ZndParams, lam, p):
    g, ms = params.gamma, params.Ms
    v = (1.0 - p) / (g * ms) + ms
    ups = v / ms
    e = p * ups / (g * (g - 1.0)) + 0.5 * v * v + (1.0 - lam) * params.beta / g
    return v, ups, e


def profile_arrays(params: ZndParams, lam):
    """Vectorised profile: returns ``(p, v, upsilon, e)`` arrays."""
    lam = np.asarray(lam, dtype=float)
    if np.any((lam < 0.0) | (lam > 1.0)):
        raise DomainError("progress variable outside [0, 1]")
    p = params.p_end + pressure_excess(params, 1.0 - lam)
    v, ups, e = _state_from_pressure(params, lam, p)
    return p, v, ups, e


def profile_at(params: ZndParams, lam: float) -> ZndState:
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"progress variable {lam!r} outside [0, 1]")
    if lam == 0.0:
        p = 1.0
    else:
        p = params.a + (1.0 - params.a) * math.sqrt(params.closure_gap + params.b_beta * (1.0 - lam))
    v, ups, e = _state_from_pressure(params, lam, p)
    return ZndState(lam=lam, p=p, v=v, upsilon=ups, e=e, gamma=params.gamma)


def profile_at_deficit(params: ZndParams, y: float) -> ZndState:
    """State at ``lam = 1 - y``; accurate for ``y`` near zero."""
    p = params.p_end + pressure_excess(params, y)
    lam = 1.0 - y
    v, ups, e = _state_from_pressure(params, lam, p)
    return ZndState(lam=lam, p=p, v=v, upsilon=ups, e=e, gamma=params.gamma)


def to_thermo(params: ZndParams, state: ZndState) -> ThermoState:
    """Dimensional mirror of a reaction-zone state."""
    vn = params.stateVN
    p = state.p * params.p_ref
    rho = vn.rho / state.upsilon
    return ThermoState(p=p, rho=rho, u=state.v * vn.c, T=state.p * state.upsilon * vn.T,
                       c=math.sqrt(state.p * state.upsilon) * vn.c)


def _quad(func, a, b, what, points=None):
    value, err, info = integrate.quad(func, a, b, epsabs=0.0, epsrel=QUAD_RTOL,
                                      limit=500, full_output=1, points=points)[:3]
    if not math.isfinite(value) or err > 100 * QUAD_RTOL * abs(value) + 1e-300:
        raise NumericalError(f"quadrature for {what} did not converge (estimate {value:.6g}, "
                             f"error {err:.3g})", estimate=value)
    return value


def _half_length_nd(a, ms, gap, bb, g, theta_a):
    # int_0^1/2 v exp(theta/(p ups)) / (1 - lam) dlam, in c_s / k units
    def f(lam):
        p = a + (1.0 - a) * math.sqrt(gap + bb * (1.0 - lam))
        v = (1.0 - p) / (g * ms) + ms
        return v * math.exp(theta_a * ms / (p * v)) / (1.0 - lam)
    return _quad(f, 0.0, 0.5, "half reaction length")


def znd_params(gas: GasSpec, D: float, verbatim_b: bool = False, D_cj: float | None = None) -> ZndParams:
    if not D > 1.0:
        raise DomainError("subsonic wave has no shock")
    g = gas.gamma
    ms2, a, b = shock_coefficients(g, D, verbatim_b)
    vn = vn_state(gas, D)
    beta = g * gas.Q / vn.c ** 2
    if b * beta > 1.0 + SUB_CJ_TOL:
        raise DomainError("D below Chapman-Jouguet speed: no steady planar solution")
    if D_cj is None:
        D_cj = cj_speed(gas, verbatim_b)
    ms = math.sqrt(ms2)
    cj_wave = D == D_cj
    gap = 0.0 if cj_wave else max(0.0, 1.0 - b * beta)
    theta_a = gas.Ea_over_Rg / vn.T
    lc = vn.c / gas.k * _half_length_nd(a, ms, gap, b * beta, g, theta_a)
    state0 = ThermoState(p=gas.p0, rho=gas.rho0, u=D * gas.c0, T=gas.T0, c=gas.c0)
    # burned end state
    p_end = a + (1.0 - a) * math.sqrt(gap)
    v_end = (1.0 - p_end) / (g * ms) + ms
    ups_end = v_end / ms
    p_ref = vn.rho * vn.c ** 2 / g
    state_cj = ThermoState(p=p_end * p_ref, rho=vn.rho / ups_end, u=v_end * vn.c,
                           T=p_end * ups_end * vn.T, c=math.sqrt(p_end * ups_end) * vn.c)
    return ZndParams(D=D, Ms=ms, a=a, b=b, beta=beta, theta_a=theta_a,
                     k_nd=gas.k * lc / vn.c, lc=lc, state0=state0, stateVN=vn,
                     stateCJ=state_cj, overdrive=(D / D_cj) ** 2, D_cj=D_cj,
                     gamma=g, verbatim_b=verbatim_b, cj_wave=cj_wave)


def params_at_overdrive(gas: GasSpec, f: float, verbatim_b: bool = False) -> ZndParams:
    """Parameters at overdrive ``f = (D / D_CJ)**2``."""
    if not f >= 1.0:
        raise DomainError(f"overdrive {f!r} below 1: no steady planar solution")
    D_cj = cj_speed(gas, verbatim_b)
    D = D_cj if f == 1.0 else D_cj * math.sqrt(f)
    params = znd_params(gas, D, verbatim_b=verbatim_b, D_cj=D_cj)
    # keep the requested f rather than the rounded (D / D_CJ)**2
    return dataclasses.replace(params, overdrive=float(f))


def _check_gas(params: ZndParams, gas: GasSpec):
    if gas.gamma != params.gamma:
        raise DomainError("gas does not match the ZND parameters")


def spatial_map(params: ZndParams, gas: GasSpec, lam: float) -> float:
    """Distance behind the shock (m) at which progress ``lam`` is reached.

    Integrates ``u / W`` over ``s = -log(1 - lam)``, which removes the
    ``1/(1 - lam)`` growth of the integrand.
    """
    _check_gas(params, gas)
    if lam == 1.0:
        raise DomainError("infinite reaction-zone tail")
    if not 0.0 <= lam < 1.0:
        raise DomainError(f"progress variable {lam!r} outside [0, 1)")
    if lam == 0.0:
        return 0.0
    s_end = -math.log1p(-lam)
    theta, ms, g = params.theta_a, params.Ms, params.gamma
    p_end = params.p_end

    def f(s):
        p = p_end + pressure_excess(params, math.exp(-s))
        v = (1.0 - p) / (g * ms) + ms
        return v * math.exp(theta * ms / (p * v))

    return params.stateVN.c / gas.k * _quad(f, 0.0, s_end, "spatial map")


def invert_spatial_map(params: ZndParams, gas: GasSpec, x: float, tol: float = 1e-13) -> float:
    """Progress variable reached at distance ``x`` (m) behind the shock.

    Safeguarded Newton iteration on ``spatial_map`` using ``dx/dlam = u/W``.
    """
    if x < 0.0:
        raise DomainError("distance must be non-negative")
    if x == 0.0:
        return 0.0
    lo, hi = 0.0, 1.0
    lam = 0.5
    for _ in range(200):
        r = spatial_map(params, gas, lam) - x
        if r > 0.0:
            hi = lam
        else:
            lo = lam
        st = profile_at(params, lam)
        slope = st.v * params.stateVN.c / (gas.k * (1.0 - lam)) * math.exp(params.theta_a / (st.p * st.upsilon))
        step = lam - r / slope
        new = step if lo < step < hi else 0.5 * (lo + hi)
        if abs(new - lam) <= tol or hi - lo <= tol:
            return new
        lam = new
    raise NumericalError("spatial map inversion did not converge", estimate=lam)


def half_reaction_length(params: ZndParams, gas: GasSpec) -> float:
    """Distance from the shock to ``lam = 1/2`` (m), integrated in ``lam``."""
    _check_gas(params, gas)
    nd = _half_length_nd(params.a, params.Ms, params.closure_gap, params.b_beta,
                         params.gamma, params.theta_a)
    return params.stateVN.c / gas.k * nd


def dimensional_rate(params: ZndParams, gas: GasSpec, lam: float) -> float:
    """Consumption rate (1/s) at progress ``lam``."""
    st = profile_at(params, lam)
    return gas.k * (1.0 - lam) * math.exp(-params.theta_a / (st.p * st.upsilon))


class TaylorSample(NamedTuple):
    x: float
    p: float
    rho: float
    u: float


def taylor_extension(params: ZndParams, gas: GasSpec, n_samples: int,
                     distance: float | None = None) -> list[TaylorSample]:
    """Centred rarefaction fan behind a CJ wave started from a closed end.

    ``distance`` is how far the front has travelled (default ``gas.lf``).
    ``x`` is measured behind the front and ``u`` is the laboratory-frame
    flow speed, which drops to zero at the foot of the fan.
    """
    _check_gas(params, gas)
    if not params.at_cj:
        raise DomainError("Taylor extension only defined at CJ")
    if n_samples < 2:
        raise DomainError("n_samples must be at least 2")
    if distance is None:
        distance = gas.lf
    g = params.gamma
    cj = params.stateCJ
    front = params.D_m_s
    u_lab = front - cj.u
    riemann = u_lab - 2.0 * cj.c / (g - 1.0)
    c_core = -0.5 * (g - 1.0) * riemann
    if c_core <= 0.0:
        raise DomainError("rarefaction reaches vacuum before stagnation")
    t = distance / front
    out = []
    for i in range(n_samples):
        xi = front + (c_core - front) * i / (n_samples - 1)
        if i == 0:
            c, u = cj.c, u_lab
        elif i == n_samples - 1:
            c, u = c_core, 0.0
        else:
            c = (xi - riemann) * (g - 1.0) / (g + 1.0)
            u = xi - c
        ratio = c / cj.c
        out.append(TaylorSample(x=(front - xi) * t,
                                p=cj.p * ratio ** (2.0 * g / (g - 1.0)),
                                rho=cj.rho * ratio ** (2.0 / (g - 1.0)),
                                u=u))
    return out
