"""Quantum convolution (beam splitter), Gaussian amplifier and thermal-noise channel.

All channels act directly on (mean, covariance); no unitary is materialized.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BadGain, BadTau, ModeMismatch
from .gaussian import GaussianState, make_state, phase_conjugation, thermal


def _check_tau(tau: float) -> None:
    if not 0 < tau < 1:
        raise BadTau(f"tau must lie in (0, 1), got {tau}")


def _check_gain(zeta: float) -> None:
    if not zeta > 1:
        raise BadGain(f"amplifier gain must exceed 1, got {zeta}")


def beam_splitter_mix(x: GaussianState, y: GaussianState, tau: float) -> GaussianState:
    """Output port ``a_Z = sqrt(tau) a_X + sqrt(1-tau) a_Y`` of a beam splitter.

    Covariance ``tau cov_X + (1-tau) cov_Y``; means combine with square-root weights.
    """
    _check_tau(tau)
    if x.modes != y.modes:
        raise ModeMismatch(f"mode counts differ: {x.modes} vs {y.modes}")
    mean = math.sqrt(tau) * x.mean + math.sqrt(1.0 - tau) * y.mean
    return make_state(mean, tau * x.cov + (1.0 - tau) * y.cov)


def two_mode_squeezer(modes: int, zeta: float) -> np.ndarray:
    """Symplectic matrix of a gain-``zeta`` amplifier on (signal, idler) blocks.

    The idler couples through ``-sqrt(zeta - 1) Z`` with ``Z = diag(1, -1)``
    per mode; with this sign it undoes a TMSV of matching squeezing.
    """
    _check_gain(zeta)
    eye = np.eye(2 * modes)
    z = phase_conjugation(modes)
    a, b = math.sqrt(zeta), math.sqrt(zeta - 1.0)
    return np.block([[a * eye, -b * z], [-b * z, a * eye]])


def amplifier_mix(a: GaussianState, b: GaussianState, zeta: float) -> GaussianState:
    """Signal output of a gain-``zeta`` amplifier fed with independent ``a`` (signal) and ``b`` (idler)."""
    _check_gain(zeta)
    if a.modes != b.modes:
        raise ModeMismatch(f"mode counts differ: {a.modes} vs {b.modes}")
    z = phase_conjugation(a.modes)
    cov = zeta * a.cov + (zeta - 1.0) * z @ b.cov @ z
    mean = math.sqrt(zeta) * a.mean - math.sqrt(zeta - 1.0) * z @ b.mean
    return make_state(mean, cov)


def amplifier_joint(ab: GaussianState, zeta: float) -> GaussianState:
    """Amplify a possibly correlated (signal, idler) state and trace out the idler.

    The first half of the modes is the signal, the second half the idler.
    """
    _check_gain(zeta)
    if ab.modes % 2:
        raise ModeMismatch(f"joint input needs an even number of modes, got {ab.modes}")
    k = ab.modes // 2
    S = two_mode_squeezer(k, zeta)
    cov = S @ ab.cov @ S.T
    mean = S @ ab.mean
    n = 2 * k
    return make_state(mean[:n], 0.5 * (cov[:n, :n] + cov[:n, :n].T))


def thermal_noise_channel(state: GaussianState, tau: float, n_env: float) -> GaussianState:
    """Mix ``state`` with a thermal environment of ``n_env`` mean photons per mode."""
    return beam_splitter_mix(state, thermal(n_env, state.modes), tau)

