"""Renyi entropy functionals and entropy power inequalities for bosonic Gaussian states."""

from .convolution import amplifier_joint, amplifier_mix, beam_splitter_mix, thermal_noise_channel
from .entropy import (
    EntropyPower,
    EntropyValue,
    classical_renyi_entropy,
    entropy_power,
    photon_number,
    wehrl_renyi_entropy,
    wigner_renyi_entropy,
)
from .gaussian import (
    GaussianState,
    make_state,
    purity,
    random_state,
    renyi_trace_entropy,
    symplectic_eigenvalues,
    thermal,
    two_mode_squeezed_vacuum,
    vacuum,
    von_neumann_entropy,
)
from .gfunc import g_function, g_inverse
from .harness import BatteryConfig, InequalityParams, epi_check, epni_check, run_battery
from .phase_space import PhaseSpaceGaussian, husimi_of, lp_norm, wigner_of

__version__ = "0.1.0"
