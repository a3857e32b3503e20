"""Named scalar quantities computable from a state, shared by reports and sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import DensityMatrix, bloch_vector, horodecki
from .bell import (
    chsh_settings,
    normalized_value,
    optimize_functional_value,
    preset_functional,
)
from .witness import (
    OptimizerConfig,
    bound_geometry_free,
    mermin_lpo_witness,
    mermin_value,
    sym_sup,
    sym_value_fixed,
)

QUANTITY_NAMES = (
    "s_chsh",
    "s_chsh_lpo",
    "i3322_tilde",
    "c3322",
    "i2222_tilde",
    "i2222_lpo_tilde",
    "horodecki_m",
    "bloch_norm_a",
    "bloch_norm_b",
    "mermin",
    "mermin_lpo",
)

_TWO_QUBIT = {
    "s_chsh",
    "s_chsh_lpo",
    "i3322_tilde",
    "c3322",
    "i2222_tilde",
    "i2222_lpo_tilde",
    "horodecki_m",
}
_THREE_QUBIT = {"mermin", "mermin_lpo"}

# Quantities whose emitted bounds are true caps on the value (the rest carry
# reference thresholds such as the classical bound that values may exceed).
WITNESS_QUANTITIES = ("s_chsh_lpo", "i2222_lpo_tilde", "mermin_lpo")


@dataclass(frozen=True)
class QuantityResult:
    name: str
    value: float
    bounds: tuple[tuple[str, float], ...]
    converged: bool


def _require_dims(name: str, rho: DensityMatrix) -> None:
    if name in _TWO_QUBIT and rho.dims != (2, 2):
        raise ValueError(f"quantity {name!r} needs a two-qubit state")
    if name in _THREE_QUBIT and rho.dims != (2, 2, 2):
        raise ValueError(f"quantity {name!r} needs a three-qubit state")
    if name == "bloch_norm_b" and rho.n_parties < 2:
        raise ValueError("quantity 'bloch_norm_b' needs at least two parties")


def compute_quantities(
    names, rho: DensityMatrix, cfg: OptimizerConfig | None = None
) -> list[QuantityResult]:
    """Evaluate the named quantities, sharing expensive intermediates."""
    names = list(names)
    unknown = [n for n in names if n not in QUANTITY_NAMES]
    if unknown:
        raise ValueError(f"unknown quantity name(s): {', '.join(sorted(unknown))}")
    cfg = cfg or OptimizerConfig()
    cache: dict[str, object] = {}
    return [_compute(name, rho, cfg, cache) for name in names]


def compute_quantity(name: str, rho: DensityMatrix, cfg: OptimizerConfig | None = None) -> QuantityResult:
    return compute_quantities([name], rho, cfg)[0]


def _horodecki(rho, cache):
    if "horodecki" not in cache:
        cache["horodecki"] = horodecki(rho)
    return cache["horodecki"]


def _c3322_optimum(rho, cfg, cache):
    if "c3322_opt" not in cache:
        cache["c3322_opt"] = optimize_functional_value(
            rho,
            preset_functional("c3322"),
            restarts=cfg.restarts,
            seed=cfg.seed,
            max_iterations=cfg.max_iterations,
            value_tolerance=cfg.value_tolerance,
        )
    return cache["c3322_opt"]


def _compute(name: str, rho: DensityMatrix, cfg: OptimizerConfig, cache) -> QuantityResult:
    _require_dims(name, rho)

    if name == "s_chsh":
        h = _horodecki(rho, cache)
        return QuantityResult(
            name, 2.0 * h.m_value, (("lhv", 2.0), ("quantum_max", 2.0 * math.sqrt(2.0))), True
        )
    if name == "horodecki_m":
        h = _horodecki(rho, cache)
        return QuantityResult(name, h.m_value, (("lhv", 1.0),), True)
    if name == "i2222_tilde":
        h = _horodecki(rho, cache)
        return QuantityResult(name, h.m_value, (("lhv", 1.0), ("quantum_max", math.sqrt(2.0))), True)
    if name == "c3322":
        opt = _c3322_optimum(rho, cfg, cache)
        return QuantityResult(name, opt.value, (("lhv", 4.0),), opt.converged)
    if name == "i3322_tilde":
        opt = _c3322_optimum(rho, cfg, cache)
        return QuantityResult(name, opt.value / 4.0, (("lhv", 1.0),), opt.converged)
    if name == "s_chsh_lpo":
        report = sym_sup(rho, preset_functional("chsh"), "free", cfg)
        return QuantityResult(name, report.value, report.bounds, report.converged)
    if name == "i2222_lpo_tilde":
        chsh = preset_functional("chsh")
        raw = sym_value_fixed(rho, chsh, chsh_settings()) / 4.0 - 0.5
        value = normalized_value("i2222_lpo_tilde", raw)
        cap = bound_geometry_free(rho, chsh) / 2.0
        return QuantityResult(name, value, (("geometry_free", cap),), True)
    if name == "bloch_norm_a":
        value = float(np.linalg.norm(bloch_vector(rho.marginal(0))))
        return QuantityResult(name, value, (("unit", 1.0),), True)
    if name == "bloch_norm_b":
        value = float(np.linalg.norm(bloch_vector(rho.marginal(1))))
        return QuantityResult(name, value, (("unit", 1.0),), True)
    if name == "mermin":
        value = mermin_value(rho)
        return QuantityResult(name, value, (("lhv", 2.0), ("quantum_max", 4.0)), True)
    if name == "mermin_lpo":
        report = mermin_lpo_witness(rho, "asym_sup")
        return QuantityResult(name, report.value, report.bounds, report.converged)
    raise ValueError(f"unknown quantity name {name!r}")
