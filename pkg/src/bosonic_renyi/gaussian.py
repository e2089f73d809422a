r"""Bosonic Gaussian states at the covariance-matrix level.

Conventions: quadratures are ordered :math:`(q_1, p_1, \ldots, q_D, p_D)`,
the vacuum covariance is the identity, and the symplectic form is the
block-diagonal sum of :math:`\begin{pmatrix}0&1\\-1&0\end{pmatrix}`.
Entropies are in nats.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.stats import unitary_group

from .errors import (
    BadOrder,
    DimensionMismatch,
    NegativeMeanPhotons,
    NotSymmetric,
    PairingFailed,
    UncertaintyViolated,
)
from .gfunc import g_function

SYMMETRY_TOL = 1e-12
UNCERTAINTY_TOL = 1e-9
PAIRING_TOL = 1e-9

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


def symplectic_form(modes: int) -> np.ndarray:
    """Block-diagonal symplectic form for ``modes`` modes."""
    omega = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(modes), omega)


def phase_conjugation(modes: int) -> np.ndarray:
    """Per-mode ``diag(1, -1)``; maps the symplectic form to its negative."""
    return np.kron(np.eye(modes), np.diag([1.0, -1.0]))


@dataclass(frozen=True, eq=False)
class GaussianState:
    """A D-mode Gaussian state given by its mean vector and covariance matrix.

    Build instances through :func:`make_state` (or the fixtures below) so that
    the uncertainty principle is checked.
    """

    modes: int
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        self.mean.setflags(write=False)
        self.cov.setflags(write=False)

    def reduced(self, keep: Sequence[int]) -> "GaussianState":
        """Partial trace: keep the listed modes (block extraction)."""
        idx = np.array([[2 * k, 2 * k + 1] for k in keep], dtype=int).ravel()
        if idx.size == 0 or idx.max() >= 2 * self.modes or idx.min() < 0:
            raise DimensionMismatch(f"cannot keep modes {list(keep)} of {self.modes}")
        return make_state(self.mean[idx], self.cov[np.ix_(idx, idx)])

    def displaced(self, shift) -> "GaussianState":
        return make_state(self.mean + np.asarray(shift, dtype=float), self.cov)

    def fingerprint(self) -> str:
        """Short content hash, stable across runs and platforms."""
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.mean, dtype="<f8").tobytes())
        h.update(np.ascontiguousarray(self.cov, dtype="<f8").tobytes())
        return h.hexdigest()[:12]

    def to_dict(self) -> dict:
        return {"modes": self.modes, "mean": self.mean.tolist(), "cov": self.cov.tolist()}

    def to_json(self) -> str:
        """Serialize with 17 significant digits per entry (lossless round trip)."""

        def fmt(x):
            return format(float(x), ".17g")

        mean = "[" + ", ".join(fmt(x) for x in self.mean) + "]"
        rows = ",\n    ".join("[" + ", ".join(fmt(x) for x in row) + "]" for row in self.cov)
        return f'{{"modes": {self.modes},\n "mean": {mean},\n "cov": [\n    {rows}\n ]}}\n'

    @classmethod
    def from_dict(cls, data: dict) -> "GaussianState":
        state = make_state(data["mean"], data["cov"])
        if "modes" in data and int(data["modes"]) != state.modes:
            raise DimensionMismatch(f"modes={data['modes']} but arrays describe {state.modes} modes")
        return state

    @classmethod
    def from_json(cls, text: str) -> "GaussianState":
        return cls.from_dict(json.loads(text))


def make_state(mean, cov) -> GaussianState:
    """Validate and wrap a mean vector and covariance matrix.

    Raises:
        DimensionMismatch: shapes are not ``(2D,)`` and ``(2D, 2D)``.
        NotSymmetric: ``cov`` deviates from its transpose by more than 1e-12.
        UncertaintyViolated: ``cov + i*Omega`` has an eigenvalue below -1e-9.
    """
    mean = np.array(mean, dtype=float)
    cov = np.array(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] == 0 or cov.shape[0] % 2:
        raise DimensionMismatch(f"covariance must be 2D x 2D, got shape {cov.shape}")
    if mean.shape != (cov.shape[0],):
        raise DimensionMismatch(f"mean shape {mean.shape} does not match covariance {cov.shape}")
    if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
        raise DimensionMismatch("non-finite entries in state")
    if np.max(np.abs(cov - cov.T)) > SYMMETRY_TOL:
        raise NotSymmetric("covariance matrix is not symmetric")
    modes = cov.shape[0] // 2
    cov = 0.5 * (cov + cov.T)
    min_eig = np.linalg.eigvalsh(cov + 1j * symplectic_form(modes)).min()
    if min_eig < -UNCERTAINTY_TOL:
        raise UncertaintyViolated(f"cov + i*Omega has eigenvalue {min_eig:.3e} < 0")
    return GaussianState(modes, mean, cov)


def symplectic_eigenvalues(state: GaussianState) -> np.ndarray:
    """Williamson spectrum: moduli of the eigenvalues of ``Omega @ cov``, ascending.

    Raises:
        PairingFailed: the eigenvalues are not purely imaginary +-i*nu pairs
            to 1e-9 relative tolerance.
    """
    return _symplectic_spectrum(state.cov)


def _symplectic_spectrum(cov: np.ndarray) -> np.ndarray:
    modes = cov.shape[0] // 2
    ev = np.linalg.eigvals(symplectic_form(modes) @ cov)
    scale = max(1.0, float(np.max(np.abs(ev))))
    if np.max(np.abs(ev.real)) > PAIRING_TOL * scale:
        raise PairingFailed(f"eigenvalues have real parts up to {np.max(np.abs(ev.real)):.3e}")
    pos = np.sort(ev.imag[ev.imag > 0])
    neg = np.sort(-ev.imag[ev.imag < 0])
    if pos.size != modes or neg.size != modes:
        raise PairingFailed("eigenvalues do not split into conjugate pairs")
    if np.any(np.abs(pos - neg) > PAIRING_TOL * np.maximum(1.0, pos)):
        raise PairingFailed("conjugate eigenvalue moduli disagree")
    return 0.5 * (pos + neg)


def _mean_photons(nu: np.ndarray) -> np.ndarray:
    # clip the -1e-9 validation slack
    return np.clip((nu - 1.0) / 2.0, 0.0, None)


def von_neumann_entropy(state: GaussianState) -> float:
    """S = sum_k g((nu_k - 1)/2) in nats."""
    return float(sum(g_function(float(n)) for n in _mean_photons(symplectic_eigenvalues(state))))


def log_trace_power(state: GaussianState, p: float) -> float:
    """ln Tr(rho^p) from the closed form prod_k 2^p / ((nu+1)^p - (nu-1)^p)."""
    nu = np.maximum(symplectic_eigenvalues(state), 1.0)
    ratio = ((nu - 1.0) / (nu + 1.0)) ** p
    return float(np.sum(p * math.log(2.0) - p * np.log(nu + 1.0) - np.log1p(-ratio)))


def renyi_trace_entropy(state: GaussianState, p: float) -> float:
    """Quantum Renyi entropy (1/(1-p)) ln Tr rho^p, in nats.

    Raises:
        BadOrder: ``p <= 0`` or ``p == 1`` (use :func:`von_neumann_entropy`).
    """
    if not p > 0 or p == 1:
        raise BadOrder(f"Renyi order must be > 0 and != 1, got {p}")
    return max(0.0, log_trace_power(state, p) / (1.0 - p))


def purity(state: GaussianState) -> float:
    """Tr rho^2 = prod_k 1/nu_k."""
    nu = np.maximum(symplectic_eigenvalues(state), 1.0)
    return float(np.prod(1.0 / nu))


# Fixtures


def vacuum(modes: int = 1) -> GaussianState:
    return make_state(np.zeros(2 * modes), np.eye(2 * modes))


def coherent(mean) -> GaussianState:
    mean = np.asarray(mean, dtype=float)
    return make_state(mean, np.eye(mean.size))


def thermal(nbar: float, modes: int = 1) -> GaussianState:
    if nbar < 0:
        raise NegativeMeanPhotons(f"mean photon number must be >= 0, got {nbar}")
    return make_state(np.zeros(2 * modes), (2.0 * nbar + 1.0) * np.eye(2 * modes))


def squeezed_vacuum(r: float) -> GaussianState:
    return make_state(np.zeros(2), np.diag([math.exp(2 * r), math.exp(-2 * r)]))


def two_mode_squeezed_vacuum(r: float) -> GaussianState:
    """TMSV covariance: cosh(2r) I on the diagonal blocks, sinh(2r) diag(1,-1) off it."""
    c, s = math.cosh(2 * r), math.sinh(2 * r)
    z = np.diag([1.0, -1.0])
    cov = np.block([[c * np.eye(2), s * z], [s * z, c * np.eye(2)]])
    return make_state(np.zeros(4), cov)


def product_state(a: GaussianState, b: GaussianState) -> GaussianState:
    n, m = 2 * a.modes, 2 * b.modes
    cov = np.zeros((n + m, n + m))
    cov[:n, :n] = a.cov
    cov[n:, n:] = b.cov
    return make_state(np.concatenate([a.mean, b.mean]), cov)


# Random states


def _xxpp_to_qpqp(modes: int) -> np.ndarray:
    perm = np.empty(2 * modes, dtype=int)
    perm[0::2] = np.arange(modes)
    perm[1::2] = np.arange(modes) + modes
    return np.eye(2 * modes)[perm]


def random_passive(modes: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random orthogonal symplectic matrix (a passive interferometer)."""
    u = np.atleast_2d(unitary_group.rvs(modes, random_state=rng)) if modes > 1 else np.array(
        [[np.exp(2j * np.pi * rng.random())]]
    )
    o = np.block([[u.real, -u.imag], [u.imag, u.real]])
    perm = _xxpp_to_qpqp(modes)
    return perm @ o @ perm.T


def random_symplectic(modes: int, rng: np.random.Generator, squeeze_max: float = 1.0) -> np.ndarray:
    """Euler (Bloch-Messiah) form: passive x single-mode squeezers x passive."""
    s = rng.uniform(-squeeze_max, squeeze_max, size=modes)
    squeezers = np.diag(np.exp(np.column_stack([s, -s]).ravel()))
    return random_passive(modes, rng) @ squeezers @ random_passive(modes, rng)


def random_state(
    modes: int, seed: SeedLike = None, squeeze_max: float = 1.0, thermal_rate: float = 1.0
) -> GaussianState:
    """Seeded random Gaussian state.

    The covariance is ``S diag(nu_1, nu_1, ..., nu_D, nu_D) S^T`` with ``S`` a
    random symplectic whose squeezers have ``|log scale| <= squeeze_max`` and
    ``nu_k = 1 + Exp(rate=thermal_rate)``. Mean entries are standard normal.

    Args:
        modes: number of modes ``D >= 1``.
        seed: integer seed, ``SeedSequence`` or an existing ``Generator``.
        squeeze_max: bound on the squeezing parameters.
        thermal_rate: rate of the exponential excess-noise draws; large values
            push the state towards purity.
    """
    if modes < 1:
        raise DimensionMismatch("modes must be >= 1")
    if squeeze_max < 0 or not thermal_rate > 0:
        raise ValueError("need squeeze_max >= 0 and thermal_rate > 0")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    S = random_symplectic(modes, rng, squeeze_max)
    nu = 1.0 + rng.exponential(1.0 / thermal_rate, size=modes)
    cov = S @ np.diag(np.repeat(nu, 2)) @ S.T
    mean = rng.normal(0.0, 1.0, size=2 * modes)
    return make_state(mean, 0.5 * (cov + cov.T))
