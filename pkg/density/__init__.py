from .models import DensityReport, VanishingReport, Verdict
from .seip import (
    annular_sums,
    density_verdict,
    profile_csv,
    seip_density,
    vanishing_at_origin,
    vanishing_report,
    verdict_from_density,
)

__all__ = [
    "DensityReport",
    "VanishingReport",
    "Verdict",
    "annular_sums",
    "density_verdict",
    "profile_csv",
    "seip_density",
    "vanishing_at_origin",
    "vanishing_report",
    "verdict_from_density",
]
