"""Gaussian phase-space densities (Wigner, Husimi, classical) and their L^p norms.

A D-mode state with covariance ``cov`` has Wigner density ``N(mean, cov/2)``
and Husimi density ``N(mean, (cov + I)/2)`` on R^{2D}; both integrate to one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import BadOrder, BadTau, DimensionMismatch, KindMismatch, SchemeUnsupported
from .gaussian import GaussianState, symplectic_form

KINDS = ("wigner", "husimi", "classical")
CONVENTIONS = ("eq5", "eq9")


@dataclass(frozen=True, eq=False)
class PhaseSpaceGaussian:
    """Normal density ``N(mean, sigma)`` on R^n tagged with its origin."""

    mean: np.ndarray
    sigma: np.ndarray
    kind: str = "classical"

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        sigma = np.asarray(self.sigma, dtype=float)
        if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or mean.shape != (sigma.shape[0],):
            raise DimensionMismatch(f"mean {mean.shape} / sigma {sigma.shape} are inconsistent")
        if self.kind not in KINDS:
            raise ValueError(f"unknown density kind {self.kind!r}")
        # raises LinAlgError if not positive definite
        chol = np.linalg.cholesky(sigma)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "_chol", chol)

    @property
    def dims(self) -> int:
        return self.mean.shape[0]

    @property
    def chol(self) -> np.ndarray:
        return self._chol

    def logdet(self) -> float:
        return 2.0 * float(np.sum(np.log(np.diag(self._chol))))


def wigner_of(state: GaussianState) -> PhaseSpaceGaussian:
    return PhaseSpaceGaussian(state.mean.copy(), state.cov / 2.0, "wigner")


def husimi_of(state: GaussianState) -> PhaseSpaceGaussian:
    return PhaseSpaceGaussian(state.mean.copy(), (state.cov + np.eye(2 * state.modes)) / 2.0, "husimi")


def characteristic_function(state: GaussianState, eta) -> complex:
    r"""Symmetrically ordered characteristic function :math:`\chi(\eta)`.

    :math:`\chi(\eta) = \exp(i\sqrt{2}\,m^T\Omega\eta - \tfrac12\eta^T\Omega^T\sigma\Omega\eta)`.
    The :math:`\sqrt{2}` converts the mean to quadratures with vacuum variance
    one, so that :func:`wigner_from_characteristic` recovers :func:`wigner_of`.
    """
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (2 * state.modes,):
        raise DimensionMismatch(f"eta must have length {2 * state.modes}")
    k = symplectic_form(state.modes) @ eta
    return complex(np.exp(1j * math.sqrt(2.0) * state.mean @ k - 0.5 * k @ state.cov @ k))


def wigner_from_characteristic(state: GaussianState, x, points: int = 33, half_width: float = 8.0) -> np.ndarray:
    """Fourier-invert the characteristic function on a ``points``^2 grid (D=1 only).

    Args:
        state: single-mode state.
        x: evaluation points, shape ``(2,)`` or ``(m, 2)``.
        points: grid points per axis in eta-space.
        half_width: grid covers ``[-half_width, half_width]`` per axis.
    """
    if state.modes != 1:
        raise DimensionMismatch("characteristic-function inversion is implemented for D=1")
    x = np.atleast_2d(np.asarray(x, dtype=float))
    axis = np.linspace(-half_width, half_width, points)
    h = axis[1] - axis[0]
    e1, e2 = np.meshgrid(axis, axis, indexing="ij")
    etas = np.column_stack([e1.ravel(), e2.ravel()])
    chi = np.array([characteristic_function(state, e) for e in etas])
    k = etas @ symplectic_form(1).T
    phase = np.exp(-1j * math.sqrt(2.0) * x @ k.T)
    # W(x) = 2^D / (2 pi)^{2D} * integral exp(-i sqrt2 x^T Omega eta) chi(eta) d eta
    return (2.0 / (2.0 * math.pi) ** 2) * (phase @ chi).real * h * h


def log_density(g: PhaseSpaceGaussian, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != g.dims:
        raise DimensionMismatch(f"point dimension {x.shape[-1]} != density dimension {g.dims}")
    diff = (x - g.mean).reshape(-1, g.dims)
    white = np.linalg.solve(g.chol, diff.T)
    quad = np.sum(white**2, axis=0)
    out = -0.5 * quad - 0.5 * g.dims * math.log(2 * math.pi) - 0.5 * g.logdet()
    return out.reshape(x.shape[:-1])


def eval_density(g: PhaseSpaceGaussian, x) -> np.ndarray:
    """Normal pdf at ``x`` (shape ``(n,)`` or ``(..., n)``)."""
    return np.exp(log_density(g, x))


def _check_order(p: float) -> None:
    if not p >= 1:
        raise BadOrder(f"L^p norms need p >= 1, got {p}")


def log_power_integral(g: PhaseSpaceGaussian, p: float) -> float:
    """ln of the integral of g^p, closed form for any p > 0."""
    if not p > 0:
        raise BadOrder(f"need p > 0, got {p}")
    n = g.dims
    return -0.5 * n * math.log(p) + 0.5 * n * (1 - p) * math.log(2 * math.pi) + 0.5 * (1 - p) * g.logdet()


def lp_norm(g: PhaseSpaceGaussian, p: float) -> float:
    _check_order(p)
    return math.exp(log_power_integral(g, p) / p)


@dataclass(frozen=True)
class QuadratureSpec:
    scheme: str = "tensor_gauss_hermite"
    nodes_per_axis: int = 64
    sample_count: int = 10**6
    seed: int = 0

    def __post_init__(self):
        if self.scheme not in ("tensor_gauss_hermite", "monte_carlo"):
            raise SchemeUnsupported(f"unknown quadrature scheme {self.scheme!r}")
        if self.scheme == "tensor_gauss_hermite" and self.nodes_per_axis < 8:
            raise ValueError("nodes_per_axis must be >= 8")
        if self.scheme == "monte_carlo" and self.sample_count < 10**4:
            raise ValueError("sample_count must be >= 1e4")


def power_integral_quadrature(g: PhaseSpaceGaussian, p: float, spec: QuadratureSpec) -> float:
    """Numerical integral of g^p using only pointwise evaluations of g.

    The tensor Gauss-Hermite grid is placed in the whitened coordinates of
    ``g``; the Monte Carlo estimator samples from ``g`` and averages g^{p-1}.
    """
    return float(power_integrals_quadrature(g, [p], spec)[0])


def power_integrals_quadrature(g: PhaseSpaceGaussian, ps, spec: QuadratureSpec) -> np.ndarray:
    """Like :func:`power_integral_quadrature` for several orders on one node set."""
    ps = np.asarray(ps, dtype=float)
    if spec.scheme == "monte_carlo":
        rng = np.random.default_rng(spec.seed)
        z = rng.standard_normal((spec.sample_count, g.dims))
        logg = log_density(g, g.mean + z @ g.chol.T)
        return np.array([np.mean(np.exp((p - 1.0) * logg)) for p in ps])
    n = g.dims
    if n > 4:
        raise SchemeUnsupported("tensor Gauss-Hermite grids are limited to n <= 4")
    u, w = np.polynomial.hermite.hermgauss(spec.nodes_per_axis)
    # weight-corrected 1-D factors: integral f(u) du ~ sum w_i e^{u_i^2} f(u_i)
    wu = w * np.exp(u**2)
    jac = (2.0 ** (n / 2)) * math.exp(0.5 * g.logdet())
    totals = np.zeros(ps.size)
    # loop over the first axis to bound memory at nodes^3 points
    rest = np.array(list(itertools.product(range(u.size), repeat=n - 1)), dtype=int).reshape(u.size ** (n - 1), n - 1)
    rest_u = u[rest]
    rest_w = np.prod(wu[rest], axis=1)
    for i in range(u.size):
        pts_u = np.column_stack([np.full(rest_u.shape[0], u[i]), rest_u])
        logg = log_density(g, g.mean + math.sqrt(2.0) * pts_u @ g.chol.T)
        for j, p in enumerate(ps):
            totals[j] += wu[i] * float(np.sum(rest_w * np.exp(p * logg)))
    return totals * jac


def lp_norm_quadrature(g: PhaseSpaceGaussian, p: float, spec: QuadratureSpec | None = None) -> float:
    _check_order(p)
    spec = spec or QuadratureSpec()
    return power_integral_quadrature(g, p, spec) ** (1.0 / p)


def _mix_weights(tau: float, convention: str) -> tuple[float, float]:
    if not 0 < tau < 1:
        raise BadTau(f"tau must lie in (0, 1), got {tau}")
    if convention == "eq5":
        return tau, 1.0 - tau
    if convention == "eq9":
        return 1.0 - tau, tau
    raise ValueError(f"unknown convention {convention!r}")


def convolve_densities(
    gx: PhaseSpaceGaussian, gy: PhaseSpaceGaussian, tau: float, convention: str = "eq5"
) -> PhaseSpaceGaussian:
    """Density of ``sqrt(w) X + sqrt(1-w) Y`` for independent X ~ gx, Y ~ gy.

    ``w = tau`` under the field-operator convention ``eq5`` (default) and
    ``w = 1 - tau`` under the literal ``eq9`` weighting.
    """
    if gx.dims != gy.dims:
        raise DimensionMismatch(f"dimensions differ: {gx.dims} vs {gy.dims}")
    if gx.kind != gy.kind:
        raise KindMismatch(f"cannot convolve {gx.kind} with {gy.kind}")
    wx, wy = _mix_weights(tau, convention)
    mean = math.sqrt(wx) * gx.mean + math.sqrt(wy) * gy.mean
    return PhaseSpaceGaussian(mean, wx * gx.sigma + wy * gy.sigma, gx.kind)


def convolution_quadrature(
    gx: PhaseSpaceGaussian, gy: PhaseSpaceGaussian, tau: float, z, convention: str = "eq5", box: float = 12.0
) -> float:
    """Output density at ``z`` from direct adaptive integration of the mixing integral.

    Integrates ``gx(a) gy((z - sqrt(wx) a)/sqrt(wy)) / wy^{n/2}`` over ``a``;
    limited to n = 2 (one mode).
    """
    if gx.dims != 2 or gy.dims != 2:
        raise SchemeUnsupported("direct convolution integral is implemented for n = 2")
    wx, wy = _mix_weights(tau, convention)
    z = np.asarray(z, dtype=float)
    pref = 1.0 / wy  # Jacobian (1/wy)^{n/2} with n = 2

    def integrand(a2, a1):
        a = np.array([a1, a2])
        return float(eval_density(gx, a) * eval_density(gy, (z - math.sqrt(wx) * a) / math.sqrt(wy)))

    sd = np.sqrt(np.diag(gx.sigma))
    lo, hi = gx.mean - box * sd, gx.mean + box * sd
    val, _ = integrate.dblquad(integrand, lo[0], hi[0], lo[1], hi[1], epsabs=1e-13, epsrel=1e-11)
    return pref * val
