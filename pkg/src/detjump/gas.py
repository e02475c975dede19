"""Gas specification, von Neumann reference state and flux/source evaluators.

Dimensionless quantities use the von Neumann (post-shock) state as
reference: density ``rho_s``, sound speed ``c_s``, pressure
``rho_s * c_s**2 / gamma`` (so ``p = 1`` at the shock) and temperature
``T_s``.  Velocities are in units of ``c_s``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import DomainError, GasSpecError

if TYPE_CHECKING:
    from .znd import ZndState

# JSON key -> GasSpec attribute
CONFIG_KEYS = {
    "gamma": "gamma",
    "p0_Pa": "p0",
    "rho0_kg_m3": "rho0",
    "Q_J_kg": "Q",
    "k_1_s": "k",
    "Ea_over_Rg_K": "Ea_over_Rg",
    "Rg_J_kgK": "Rg",
    "lf_m": "lf",
}


@dataclass(frozen=True)
class GasSpec:
    """Ideal-gas mixture with single-step Arrhenius kinetics (SI units)."""

    gamma: float
    p0: float
    rho0: float
    Q: float
    k: float
    Ea_over_Rg: float
    Rg: float
    lf: float

    def __post_init__(self):
        for name in ("gamma", "p0", "rho0", "Q", "k", "Ea_over_Rg", "Rg", "lf"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise GasSpecError(f"{name} must be finite")
        if self.gamma <= 1.0:
            raise GasSpecError("gamma must exceed 1")
        for name in ("p0", "rho0", "Q", "k", "Ea_over_Rg", "Rg", "lf"):
            if getattr(self, name) <= 0.0:
                raise GasSpecError(f"{name} must be positive")

    @property
    def c0(self) -> float:
        """Upstream sound speed (m/s)."""
        return math.sqrt(self.gamma * self.p0 / self.rho0)

    @property
    def T0(self) -> float:
        return self.p0 / (self.rho0 * self.Rg)

    def replace(self, **changes) -> "GasSpec":
        fields = {name: getattr(self, name) for name in CONFIG_KEYS.values()}
        fields.update(changes)
        return GasSpec(**fields)

    def to_config(self) -> dict:
        return {key: getattr(self, attr) for key, attr in CONFIG_KEYS.items()}


@dataclass(frozen=True)
class ThermoState:
    """Dimensional state; ``u`` is the flow speed relative to the shock."""

    p: float
    rho: float
    u: float
    T: float
    c: float


@dataclass(frozen=True)
class FieldVector4:
    """Normal flux rows of the conservation system plus the species row."""

    mass: float
    momentum_normal: float
    momentum_tangential: float
    energy: float
    species: float

    def as_tuple(self):
        return (self.mass, self.momentum_normal, self.momentum_tangential,
                self.energy, self.species)


@dataclass(frozen=True)
class Perturbation:
    """First-order correction fields of the asymptotic expansion."""

    rho1: float = 0.0
    v1: float = 0.0
    v1_tangential: float = 0.0
    p1: float = 0.0
    e1: float = 0.0
    lam1: float = 0.0
    m1: float = 0.0

    def scaled(self, factor: float) -> "Perturbation":
        return Perturbation(*(factor * x for x in (
            self.rho1, self.v1, self.v1_tangential, self.p1, self.e1,
            self.lam1, self.m1)))


def load_gas_spec(text: str) -> GasSpec:
    """Parse a JSON gas configuration document.

    All eight keys of ``CONFIG_KEYS`` are required and no others are allowed.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GasSpecError(f"gas configuration is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GasSpecError("gas configuration must be a JSON object")
    unknown = sorted(set(doc) - set(CONFIG_KEYS))
    if unknown:
        raise GasSpecError(f"unknown key(s): {', '.join(unknown)}")
    values = {}
    for key, attr in CONFIG_KEYS.items():
        if key not in doc:
            raise GasSpecError(f"missing {attr} (key '{key}')")
        value = doc[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise GasSpecError(f"{attr} (key '{key}') must be a number, got {value!r}")
        values[attr] = float(value)
    return GasSpec(**values)


def read_gas_spec(path) -> GasSpec:
    with open(path, encoding="utf-8") as fh:
        return load_gas_spec(fh.read())


def vn_state(gas: GasSpec, D: float) -> ThermoState:
    """Post-shock (von Neumann) state behind a normal shock at upstream Mach ``D``."""
    if not D > 1.0:
        raise DomainError("subsonic wave has no shock")
    g = gas.gamma
    D2 = D * D
    p = gas.p0 * (2.0 * g * D2 - (g - 1.0)) / (g + 1.0)
    rho = gas.rho0 * (g + 1.0) * D2 / ((g - 1.0) * D2 + 2.0)
    u = D * gas.c0 * gas.rho0 / rho
    return ThermoState(p=p, rho=rho, u=u, T=p / (rho * gas.Rg), c=math.sqrt(g * p / rho))


def rate_w(theta_a: float, k_nd: float, lam: float, p: float, upsilon: float) -> float:
    """Dimensionless Arrhenius consumption rate ``k (1-lam) exp(-theta_a/(p upsilon))``."""
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"progress variable {lam!r} outside [0, 1]")
    if p <= 0.0 or upsilon <= 0.0:
        raise DomainError("pressure and specific volume must be positive")
    return k_nd * (1.0 - lam) * math.exp(-theta_a / (p * upsilon))


def flux_leading(state: "ZndState", mass_flux: float, v_tangential: float = 0.0) -> FieldVector4:
    """Leading-order normal fluxes at a reaction-zone state.

    The coordinates move with the tangential flow, so the tangential
    momentum row vanishes unless ``v_tangential`` is given.
    """
    m = mass_flux
    p_g = state.p / state.gamma
    return FieldVector4(
        mass=m,
        momentum_normal=m * state.v + p_g,
        momentum_tangential=m * v_tangential,
        energy=m * state.e + p_g * m * state.upsilon,
        species=m * state.lam,
    )


def flux_first_order(state0: "ZndState", pert: Perturbation, mass_flux: float | None = None) -> FieldVector4:
    """First-order normal fluxes, linear in ``pert``.

    ``mass_flux`` is the leading-order ``m``; it defaults to ``rho v`` of
    ``state0``.
    """
    rho0 = 1.0 / state0.upsilon
    m0 = rho0 * state0.v if mass_flux is None else mass_flux
    g = state0.gamma
    # (m/rho) at first order
    m_over_rho_1 = pert.m1 / rho0 - m0 * pert.rho1 / rho0 ** 2
    return FieldVector4(
        mass=pert.m1,
        momentum_normal=m0 * pert.v1 + pert.m1 * state0.v + pert.p1 / g,
        momentum_tangential=m0 * pert.v1_tangential,
        energy=(pert.m1 * state0.e + m0 * pert.e1 + pert.p1 / g * (m0 / rho0)
                + state0.p / g * m_over_rho_1),
        species=pert.m1 * state0.lam + m0 * pert.lam1,
    )


def source_expansion(state0: "ZndState", pert: Perturbation, theta_a: float, k_nd: float):
    """Leading and first-order species source terms ``(Q0, Q1)``."""
    lam0 = state0.lam
    if not 0.0 <= lam0 <= 1.0:
        raise DomainError(f"progress variable {lam0!r} outside [0, 1]")
    rho0 = 1.0 / state0.upsilon
    p0, ups0 = state0.p, state0.upsilon
    arrh = math.exp(-theta_a / (p0 * ups0))
    ups1 = -pert.rho1 * ups0 ** 2
    q0 = rho0 * k_nd * (1.0 - lam0) * arrh
    q1 = ((pert.rho1 * k_nd * (1.0 - lam0) - rho0 * k_nd * pert.lam1) * arrh
          + rho0 * k_nd * (1.0 - lam0) * (ups1 / ups0 + pert.p1 / p0)
          * theta_a / (p0 * ups0) * arrh)
    return q0, q1
