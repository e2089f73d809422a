"""Entropy functionals on Gaussian densities and states, and entropy powers.

Quantum phase-space entropies are classical Renyi entropies of the
corresponding density: Wehrl-p uses the Husimi density, the Wigner-based
quantum Renyi-p entropy uses the Wigner density. Entropy powers are
``exp(S/D) = exp(2S/n)`` with ``n = 2D`` real dimensions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadOrder
from .gaussian import GaussianState, renyi_trace_entropy, von_neumann_entropy
from .gfunc import g_derivative, g_function, g_inverse  # noqa: F401  (re-exported)
from .phase_space import (
    PhaseSpaceGaussian,
    QuadratureSpec,
    husimi_of,
    log_power_integral,
    power_integral_quadrature,
    wigner_of,
)

FUNCTIONALS = ("classical_renyi", "wehrl", "wigner_renyi", "von_neumann", "trace_renyi", "shannon")
_PHASE_SPACE = ("classical_renyi", "shannon")


@dataclass(frozen=True)
class EntropyValue:
    """An entropy in nats together with how it was produced.

    ``dims`` is the real dimension n for classical densities and the mode
    count D for quantum functionals.
    """

    value: float
    functional: str
    order_p: float
    dims: int

    def __post_init__(self):
        if self.functional not in FUNCTIONALS:
            raise ValueError(f"unknown functional {self.functional!r}")
        if not self.order_p > 0:
            raise BadOrder(f"order must be positive, got {self.order_p}")

    def in_units(self, units: str = "nats") -> float:
        if units == "nats":
            return self.value
        if units == "bits":
            return self.value / math.log(2.0)
        raise ValueError(f"unknown units {units!r}")


@dataclass(frozen=True)
class EntropyPower:
    value: float
    functional: str
    order_p: float
    dims: int


def _check_renyi_order(p: float) -> None:
    if not p > 0 or p == 1:
        raise BadOrder(f"Renyi order must be > 0 and != 1, got {p}")


def classical_renyi_entropy(g: PhaseSpaceGaussian, p: float) -> EntropyValue:
    """H_p = 1/2 ln((2 pi)^n det Sigma) + (n/2) ln(p)/(p-1)."""
    _check_renyi_order(p)
    n = g.dims
    value = 0.5 * (n * math.log(2 * math.pi) + g.logdet()) + 0.5 * n * math.log(p) / (p - 1.0)
    return EntropyValue(value, "classical_renyi", p, n)


def shannon_entropy(g: PhaseSpaceGaussian) -> EntropyValue:
    n = g.dims
    return EntropyValue(0.5 * (n * math.log(2 * math.pi * math.e) + g.logdet()), "shannon", 1.0, n)


def renyi_from_integral(log_integral: float, p: float) -> float:
    """Convert ln of the integral of g^p into the order-p Renyi entropy."""
    return log_integral / (1.0 - p)


def classical_renyi_quadrature(g: PhaseSpaceGaussian, p: float, spec: QuadratureSpec | None = None) -> float:
    """Renyi entropy of ``g`` computed from a numerical integral of g^p."""
    _check_renyi_order(p)
    return renyi_from_integral(math.log(power_integral_quadrature(g, p, spec or QuadratureSpec())), p)


def wehrl_renyi_entropy(state: GaussianState, p: float) -> EntropyValue:
    h = classical_renyi_entropy(husimi_of(state), p)
    return EntropyValue(h.value, "wehrl", p, state.modes)


def wigner_renyi_entropy(state: GaussianState, p: float) -> EntropyValue:
    h = classical_renyi_entropy(wigner_of(state), p)
    return EntropyValue(h.value, "wigner_renyi", p, state.modes)


def state_entropy(state: GaussianState, functional: str, p: float = 2.0) -> EntropyValue:
    """Dispatch on a functional tag; ``von_neumann`` ignores ``p``."""
    if functional == "wehrl":
        return wehrl_renyi_entropy(state, p)
    if functional in ("wigner", "wigner_renyi"):
        return wigner_renyi_entropy(state, p)
    if functional == "von_neumann":
        return EntropyValue(von_neumann_entropy(state), "von_neumann", 1.0, state.modes)
    if functional == "trace_renyi":
        return EntropyValue(renyi_trace_entropy(state, p), "trace_renyi", p, state.modes)
    raise ValueError(f"unknown state functional {functional!r}")


def entropy_power(e: EntropyValue) -> EntropyPower:
    """exp(2H/n) for classical densities, exp(S/D) for quantum functionals."""
    if e.functional in _PHASE_SPACE:
        value = math.exp(2.0 * e.value / e.dims)
    else:
        value = math.exp(e.value / e.dims)
    return EntropyPower(value, e.functional, e.order_p, e.dims)


def lp_norm_from_entropy(e: EntropyValue) -> float:
    """||g||_p = exp(((1-p)/p) H_p) for a phase-space entropy of order p."""
    return math.exp((1.0 - e.order_p) / e.order_p * e.value)


def photon_number(state: GaussianState) -> float:
    """N = g^{-1}(S / D): the thermal mean photon number per mode with equal entropy."""
    return g_inverse(von_neumann_entropy(state) / state.modes)


__all__ = [
    "EntropyPower",
    "EntropyValue",
    "classical_renyi_entropy",
    "classical_renyi_quadrature",
    "entropy_power",
    "g_function",
    "g_inverse",
    "log_power_integral",
    "lp_norm_from_entropy",
    "photon_number",
    "renyi_from_integral",
    "shannon_entropy",
    "state_entropy",
    "wehrl_renyi_entropy",
    "wigner_renyi_entropy",
]
