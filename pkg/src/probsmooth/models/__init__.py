"""Online elementary models: probability smoothing, KT counting, and PTW."""

from .ps import (
    PsModel,
    PsParams,
    fixed_schedule,
    ps1_model,
    ps2_model,
    smooth_update,
    varying_schedule,
)
from .kt import KtModel, kt_probabilities
from .ptw import PtwModel

__all__ = [
    "KtModel",
    "PsModel",
    "PsParams",
    "PtwModel",
    "fixed_schedule",
    "kt_probabilities",
    "ps1_model",
    "ps2_model",
    "smooth_update",
    "varying_schedule",
]
