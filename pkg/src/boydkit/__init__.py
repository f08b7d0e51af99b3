"""Boyd indices, Hardy operators and interpolation functionals on rearrangement-invariant spaces."""

from boydkit.boyd import (
    Bounded,
    BoundednessReport,
    BoydReport,
    DivergingWitness,
    boundedness_probe,
    converse_bound,
    converse_certificate,
    estimate_indices,
)
from boydkit.hardy import Lower, Upper, apply, dilation_minorant, iterated_apply
from boydkit.interp import holmstedt_sweep, k_bruteforce, sandwich_check, theorem7_verify
from boydkit.piecewise import PiecewiseFn, PowerPiece, StepFn, distribution, power_integral, rearrange
from boydkit.spaces import HolmstedtSpace, Lorentz, SumSpace, norm

__version__ = "0.1.0"

__all__ = [
    "Bounded",
    "BoundednessReport",
    "BoydReport",
    "DivergingWitness",
    "HolmstedtSpace",
    "Lorentz",
    "Lower",
    "PiecewiseFn",
    "PowerPiece",
    "StepFn",
    "SumSpace",
    "Upper",
    "apply",
    "boundedness_probe",
    "converse_bound",
    "converse_certificate",
    "dilation_minorant",
    "distribution",
    "estimate_indices",
    "holmstedt_sweep",
    "iterated_apply",
    "k_bruteforce",
    "norm",
    "power_integral",
    "rearrange",
    "sandwich_check",
    "theorem7_verify",
]
