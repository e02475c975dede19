"""Modified Rankine-Hugoniot jump conditions of a curved, stretched detonation."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .gas import GasSpec
from .layer import LayerIntegrals, layer_integrals
from .znd import znd_params


@dataclass(frozen=True)
class JumpInputs:
    """Geometric rates of the discontinuity surface (SI)."""

    H: float = 0.0
    chi: float = 0.0
    grad_alpha_tangential: float = 0.0
    dISigma_dt: float = 0.0

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite")


@dataclass(frozen=True)
class JumpResult:
    mass_jump: float
    normal_momentum_jump: float
    tangential_momentum_jump: float
    energy_jump: float

    def as_dict(self) -> dict:
        return asdict(self)


def jump_from_layer(layer: LayerIntegrals, inputs: JumpInputs) -> JumpResult:
    """Jumps across the discontinuity, given precomputed layer integrals.

    The discontinuity sits where the excess mass vanishes, so the mass
    flux is continuous.  The curvature term is ``2 H alpha``, the
    tangential row is the surface gradient of ``alpha`` and the energy row
    is ``-(d/dt + chi)`` of the energy excess.
    """
    return JumpResult(
        mass_jump=0.0,
        normal_momentum_jump=2.0 * inputs.H * layer.alpha,
        tangential_momentum_jump=inputs.grad_alpha_tangential,
        energy_jump=-(inputs.dISigma_dt + inputs.chi * layer.ISigmap),
    )


def assemble_jump(gas: GasSpec, D: float, inputs: JumpInputs, verbatim_b: bool = False) -> JumpResult:
    params = znd_params(gas, D, verbatim_b=verbatim_b)
    return jump_from_layer(layer_integrals(params, gas), inputs)


def isigma_rate_from_schedule(gas: GasSpec, times: Sequence[float], machs: Sequence[float],
                              t: float, verbatim_b: bool = False) -> float:
    """``dISigma'/dt`` for a tabulated speed history ``D(t)``.

    Central difference with the table spacing around the nearest interior
    node; one-sided at the ends.
    """
    times = np.asarray(times, dtype=float)
    machs = np.asarray(machs, dtype=float)
    if times.ndim != 1 or times.size < 2 or times.shape != machs.shape:
        raise DomainError("schedule needs at least two (time, Mach) pairs")
    if np.any(np.diff(times) <= 0.0):
        raise DomainError("schedule times must be strictly increasing")
    n = times.size
    i = int(np.argmin(np.abs(times - t)))
    lo, hi = max(i - 1, 0), min(i + 1, n - 1)

    def sigma(mach):
        return layer_integrals(znd_params(gas, mach, verbatim_b=verbatim_b), gas).ISigmap

    return (sigma(machs[hi]) - sigma(machs[lo])) / (times[hi] - times[lo])


def _gradient(f, x, h):
    g = np.empty(3)
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2.0 * h)
    return g


def stretch_from_field(density_sampler: Callable, velocity_sampler: Callable, point,
                       h: float | None = None) -> float:
    """Stretch ``|grad rho|**-1 div(|grad rho| u)`` by central differences.

    ``density_sampler(x)`` returns a scalar and ``velocity_sampler(x)`` a
    3-vector, both at a position ``x`` of shape (3,).  Samples are taken
    within ``2 h`` of ``point``.  The default step is ``1e-4`` times the
    local density length ``rho / |grad rho|``.
    """
    x0 = np.asarray(point, dtype=float)
    rho = lambda x: float(density_sampler(x))
    if h is None:
        probe = 1e-6 * max(1.0, float(np.linalg.norm(x0)))
        g0 = np.linalg.norm(_gradient(rho, x0, probe))
        if g0 == 0.0:
            raise DomainError("degenerate gradient; stretch undefined")
        h = 1e-4 * abs(rho(x0)) / g0
    if not h > 0.0:
        raise DomainError("finite-difference step must be positive")

    def grad_norm(x):
        return float(np.linalg.norm(_gradient(rho, x, h)))

    g_center = grad_norm(x0)
    div = 0.0
    neighbour = []
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        gp, gm = grad_norm(x0 + e), grad_norm(x0 - e)
        neighbour += [gp, gm]
        up = np.asarray(velocity_sampler(x0 + e), dtype=float)[i]
        um = np.asarray(velocity_sampler(x0 - e), dtype=float)[i]
        div += (gp * up - gm * um) / (2.0 * h)
    if g_center < 1e-12 * max(neighbour + [g_center]) or g_center == 0.0:
        raise DomainError("degenerate gradient; stretch undefined")
    return div / g_center
