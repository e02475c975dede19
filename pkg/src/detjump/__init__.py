"""Detonation fronts as gas-dynamic discontinuities with surface tension.

Computes planar ZND profiles of a single-step Arrhenius detonation, the
layer integrals that give the surface-tension coefficient, and the
modified jump conditions across a curved, stretched front.
"""

__version__ = "0.1.0"

from .errors import DetJumpError, DomainError, GasSpecError, NumericalError
from .gas import (FieldVector4, GasSpec, Perturbation, ThermoState, flux_first_order,
                  flux_leading, load_gas_spec, rate_w, read_gas_spec, source_expansion, vn_state)
from .jump import (JumpInputs, JumpResult, assemble_jump, isigma_rate_from_schedule,
                   jump_from_layer, stretch_from_field)
from .layer import LayerIntegrals, layer_integrals, surface_tension
from .znd import (ZndParams, ZndState, cj_speed, half_reaction_length, params_at_overdrive,
                  profile_at, profile_arrays, spatial_map, taylor_extension, znd_params)

__all__ = [
    "DetJumpError", "DomainError", "GasSpecError", "NumericalError",
    "FieldVector4", "GasSpec", "Perturbation", "ThermoState", "flux_first_order",
    "flux_leading", "load_gas_spec", "rate_w", "read_gas_spec", "source_expansion", "vn_state",
    "JumpInputs", "JumpResult", "assemble_jump", "isigma_rate_from_schedule",
    "jump_from_layer", "stretch_from_field",
    "LayerIntegrals", "layer_integrals", "surface_tension",
    "ZndParams", "ZndState", "cj_speed", "half_reaction_length", "params_at_overdrive",
    "profile_at", "profile_arrays", "spatial_map", "taylor_extension", "znd_params",
]
