"""Overdrive sweeps of the surface-tension coefficient over a gas family."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError
from .gas import GasSpec
from .layer import layer_integrals
from .znd import cj_speed, znd_params

HEADER = ("param_name", "param_value", "overdrive_f", "D_mach", "D_m_s", "alpha0_Pa",
          "alpha01_Pa", "alpha02_Pa", "lc_m", "xVN_m")
VARIABLES = ("p0", "Q")


@dataclass(frozen=True)
class SweepRequest:
    gas: GasSpec
    vary: str
    values: tuple
    f_grid: tuple
    out: str | None = None

    def __post_init__(self):
        if self.vary not in VARIABLES:
            raise DomainError(f"vary must be one of {', '.join(VARIABLES)}")
        if not self.values or any(not v > 0.0 for v in self.values):
            raise DomainError("sweep values must be non-empty and positive")
        f = self.f_grid
        if not f or f[0] < 1.0 or any(b <= a for a, b in zip(f, f[1:])):
            raise DomainError("f_grid must be ascending and start at or above 1")


class SweepRow(NamedTuple):
    param_name: str
    param_value: float
    overdrive_f: float
    D_mach: float
    D_m_s: float
    alpha0_Pa: float
    alpha01_Pa: float
    alpha02_Pa: float
    lc_m: float
    xVN_m: float


def parse_f_grid(text: str) -> tuple:
    """``"start:stop:count"`` (inclusive linspace) or a comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError(f"bad grid {text!r}; expected start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise DomainError("grid count must be positive")
        return tuple(float(x) for x in np.linspace(start, stop, count))
    return tuple(float(x) for x in text.split(",") if x.strip())


def _family_member(request: SweepRequest, value: float, verbatim_b: bool) -> list[SweepRow]:
    gas = request.gas.replace(**{request.vary: value})
    d_cj = cj_speed(gas, verbatim_b)
    rows = []
    for f in request.f_grid:
        D = d_cj if f == 1.0 else d_cj * math.sqrt(f)
        params = znd_params(gas, D, verbatim_b=verbatim_b, D_cj=d_cj)
        li = layer_integrals(params, gas)
        rows.append(SweepRow(request.vary, value, f, D, params.D_m_s, li.alpha0, li.alpha01,
                             li.alpha02, li.lc, li.xVN))
    return rows


def run_sweep(request: SweepRequest, workers: int = 1, verbatim_b: bool = False) -> list[SweepRow]:
    """Rows ordered by (parameter value, f); ``workers > 1`` uses processes."""
    values = list(request.values)
    if workers > 1 and len(values) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_family_member, [request] * len(values), values,
                                   [verbatim_b] * len(values)))
    else:
        chunks = [_family_member(request, v, verbatim_b) for v in values]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r.param_value, r.overdrive_f))
    return rows


def format_number(x) -> str:
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def write_csv(rows: Sequence[Sequence], header: Sequence[str], stream) -> None:
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(format_number(v) for v in row) + "\n")
