"""Three-mode optomechanical teleportation network.

Numerical work happens in the compiled ``_core`` module in extended
precision; results come back as floats and numpy arrays. ``r``, ``nbar``
and ``t_prime`` may be given as strings to avoid rounding them to double.
"""

from ._core import (
    ConsistencyError,
    coefficients,
    covariance,
    curve_csv,
    fidelity,
    fidelity_curve,
    mc_presets,
    mc_verify,
    milestones,
    reference_ratio,
    ppt_separable,
    symplectic_eigenvalues,
    telecloning_interval,
)

__all__ = [
    "ConsistencyError",
    "coefficients",
    "covariance",
    "curve_csv",
    "fidelity",
    "fidelity_curve",
    "mc_presets",
    "mc_verify",
    "milestones",
    "reference_ratio",
    "ppt_separable",
    "symplectic_eigenvalues",
    "telecloning_interval",
]

__version__ = "0.1.0"
