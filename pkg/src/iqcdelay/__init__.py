"""IQC-based robustness analysis for time-delayed LTI, LPV and polynomial systems."""

__version__ = "0.1.0"

from . import errors
from .statespace import (
    StateSpaceModel,
    FrequencyGrid,
    DelayChannelSpec,
    ss,
    static_gain,
    identity,
    from_tf,
    freq_response,
    delay_deviation_response,
    para_hermitian_conjugate,
    series,
    parallel,
    append,
    feedback,
    interconnect,
    stable_unstable_split,
    minreal,
)
from .riccati import solve_are

__all__ = [
    "errors",
    "StateSpaceModel",
    "FrequencyGrid",
    "DelayChannelSpec",
    "ss",
    "static_gain",
    "identity",
    "from_tf",
    "freq_response",
    "delay_deviation_response",
    "para_hermitian_conjugate",
    "series",
    "parallel",
    "append",
    "feedback",
    "interconnect",
    "stable_unstable_split",
    "minreal",
    "solve_are",
    "__version__",
]
