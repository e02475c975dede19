"""Surface-excess integrals of the reaction layer and virtual surface tension.

The integrals compare the resolved reaction zone with its burned end state
(the hydrodynamic model just behind the discontinuity) and are evaluated in
the composition formulation, ``dx = (u / W) dlam``.  Near ``lam = 1``
the integrands of a CJ wave grow like ``(1 - lam)**-1/2``; writing
``1 - lam = t**2`` turns every integrand into a bounded function of ``t``.
The substitution is used for all overdrives.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import integrate

from .errors import NumericalError
from .gas import GasSpec
from .znd import ZndParams, _check_gas, znd_params

QUAD_RTOL = 1e-12
GL_ORDER = 10


@dataclass(frozen=True)
class LayerIntegrals:
    """Layer integrals in SI units.

    ``alpha0`` is the surface tension per unit half-reaction length (Pa);
    ``alpha = lf * alpha0``.
    """

    lc: float
    I1p: float
    Irho: float
    ISigmap: float
    xVN: float
    alpha: float
    alpha0: float
    alpha01: float
    alpha02: float

    def as_dict(self) -> dict:
        return asdict(self)


class _Kernels:
    """Integrands in ``t`` (``lam = 1 - t**2``), each divided out by ``t``."""

    def __init__(self, params: ZndParams, gas: GasSpec):
        self.params = params
        g, ms = params.gamma, params.Ms
        self.g, self.ms = g, ms
        self.gap = params.closure_gap
        self.sgap = math.sqrt(self.gap)
        self.bb = params.b_beta
        self.one_minus_a = 1.0 - params.a
        self.p_end = params.p_end
        self.v_end = (1.0 - self.p_end) / (g * ms) + ms
        self.ups_end = self.v_end / ms
        vn = params.stateVN
        self.c_s = vn.c
        self.rho_vn = vn.rho
        self.p_ref = params.p_ref
        self.k = gas.k
        self.Q = gas.Q
        self.mass_flux = vn.rho * vn.u
        self.theta = params.theta_a

    def parts(self, t):
        """Return ``(dp/t, v, upsilon, 2 t dx/dlam)`` at ``t``."""
        root = math.sqrt(self.gap + self.bb * t * t)
        den = root + self.sgap
        dp_t = self.one_minus_a * self.bb * t / den if den > 0.0 else self.one_minus_a * math.sqrt(self.bb)
        p = self.p_end + dp_t * t
        v = (1.0 - p) / (self.g * self.ms) + self.ms
        ups = v / self.ms
        # 2 t * (u / W), with W = k t**2 exp(-theta/(p ups)); one t cancels against dp/t
        jac = 2.0 * v * self.c_s * math.exp(self.theta / (p * ups)) / self.k
        return dp_t, v, ups, jac

    def pressure(self, t):
        dp_t, _, _, jac = self.parts(t)
        return self.p_ref * dp_t * jac

    def density(self, t):
        dp_t, _, ups, jac = self.parts(t)
        return self.rho_vn * dp_t / (self.g * self.ms ** 2 * ups * self.ups_end) * jac

    def energy(self, t):
        dp_t, _, ups, jac = self.parts(t)
        rho = self.rho_vn / ups
        # R E - rho_end e_end = dp/(gamma-1) + m (u - u_end)/2 + R (1 - lam) Q
        val = (self.p_ref * dp_t / (self.g - 1.0)
               - 0.5 * self.mass_flux * self.c_s * dp_t / (self.g * self.ms)
               + rho * t * self.Q)
        return val * jac

    def knee(self):
        """``t`` where the near-CJ integrand changes scale, if inside (0, 1)."""
        if self.gap <= 0.0:
            return None
        tk = math.sqrt(self.gap / self.bb)
        return tk if 0.0 < tk < 1.0 else None


def _adaptive(func, knee, what):
    points = [knee] if knee is not None else None
    value, err, info = integrate.quad(func, 0.0, 1.0, epsabs=0.0, epsrel=QUAD_RTOL,
                                      limit=1000, points=points, full_output=1)[:3]
    if not math.isfinite(value) or err > 1e-9 * abs(value) + 1e-300:
        raise NumericalError(f"{what} quadrature did not converge (estimate {value:.6g}, "
                             f"error {err:.3g})", estimate=value)
    return value


def _gauss_legendre(func, knee, panels):
    """Composite Gauss-Legendre rule, ``panels`` panels per segment.

    Above the knee the panels grow geometrically: the integrand has complex
    singularities at ``t = +-i knee``, so each panel is kept narrower than
    its distance from them.
    """
    x, w = np.polynomial.legendre.leggauss(GL_ORDER)
    if knee is None:
        segments = [np.linspace(0.0, 1.0, panels + 1)]
    else:
        segments = [np.linspace(0.0, knee, panels + 1), np.geomspace(knee, 1.0, panels + 1)]
    total = 0.0
    for edges in segments:
        for a, b in zip(edges[:-1], edges[1:]):
            half = 0.5 * (b - a)
            mid = 0.5 * (a + b)
            total += half * sum(wi * func(mid + half * xi) for xi, wi in zip(x, w))
    return total


def layer_integrals(params: ZndParams, gas: GasSpec, panels: int | None = None) -> LayerIntegrals:
    """Compute the layer integrals for a wave at ``params.D``.

    ``panels=None`` uses adaptive Gauss-Kronrod quadrature; an integer
    selects a fixed composite Gauss-Legendre rule, for refinement studies.
    """
    _check_gas(params, gas)
    kern = _Kernels(params, gas)
    knee = kern.knee()
    if panels is None:
        quad = lambda f, what: _adaptive(f, knee, what)
    else:
        quad = lambda f, what: _gauss_legendre(f, knee, panels)

    I1p = quad(kern.pressure, "pressure-excess")
    Irho = quad(kern.density, "density-excess")
    energy_raw = quad(kern.energy, "energy-excess")

    g = params.gamma
    st0, cj = params.state0, params.stateCJ
    d_rho = cj.rho - st0.rho
    d_p = cj.p - st0.p
    xVN = Irho / d_rho
    e_end = cj.p / ((g - 1.0) * cj.rho) + 0.5 * cj.u ** 2
    e_0 = st0.p / ((g - 1.0) * st0.rho) + 0.5 * st0.u ** 2 + gas.Q
    ISigmap = energy_raw - (cj.rho * e_end - st0.rho * e_0) * xVN

    lc = params.lc
    alpha01 = -I1p / lc
    alpha02 = d_p / d_rho * Irho / lc
    alpha0 = alpha01 + alpha02
    return LayerIntegrals(lc=lc, I1p=I1p, Irho=Irho, ISigmap=ISigmap, xVN=xVN,
                          alpha=gas.lf * alpha0, alpha0=alpha0, alpha01=alpha01,
                          alpha02=alpha02)


def nondimensional_layer_integrals(params: ZndParams):
    """Pressure and density excess integrals in von Neumann units.

    Lengths are measured in half-reaction lengths, i.e. the rate uses
    ``k_nd = k lc / c_s``.  Returns ``(I1, Irho)``.
    """
    g, ms = params.gamma, params.Ms
    bb, gap = params.b_beta, params.closure_gap
    a, theta, k_nd = params.a, params.theta_a, params.k_nd
    p_end = params.p_end
    ups_end = ((1.0 - p_end) / (g * ms) + ms) / ms

    def excess(t):
        # p - p_end and rho - rho_end, both divided by t
        dp_t = (1.0 - a) * bb * t / (math.sqrt(gap + bb * t * t) + math.sqrt(gap)) if t > 0.0 \
            else (1.0 - a) * math.sqrt(bb)
        p = p_end + dp_t * t
        v = (1.0 - p) / (g * ms) + ms
        ups = v / ms
        drho_t = dp_t / (g * ms ** 2 * ups * ups_end)
        dx = 2.0 * v / k_nd * math.exp(theta / (p * ups))
        return dp_t * dx, drho_t * dx

    knee = math.sqrt(gap / bb) if gap > 0.0 and gap < bb else None
    pts = [knee] if knee is not None else None
    i1 = integrate.quad(lambda t: excess(t)[0], 0.0, 1.0, epsabs=0.0, epsrel=QUAD_RTOL,
                        limit=1000, points=pts)[0]
    irho = integrate.quad(lambda t: excess(t)[1], 0.0, 1.0, epsabs=0.0, epsrel=QUAD_RTOL,
                          limit=1000, points=pts)[0]
    return i1, irho


def alpha0_nondimensional(params: ZndParams) -> float:
    """``alpha0`` assembled from the von Neumann-unit integrals."""
    i1, irho = nondimensional_layer_integrals(params)
    cj, st0 = params.stateCJ, params.state0
    return -(params.p_ref * i1 - (cj.p - st0.p) / (cj.rho - st0.rho) * params.stateVN.rho * irho)


def surface_tension(gas: GasSpec, D: float, verbatim_b: bool = False):
    """Return ``(alpha, alpha0, alpha01, alpha02)`` for a wave at Mach ``D``."""
    li = layer_integrals(znd_params(gas, D, verbatim_b=verbatim_b), gas)
    return li.alpha, li.alpha0, li.alpha01, li.alpha02
