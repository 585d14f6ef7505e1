from .integrals import (
    ball_integral,
    ball_integral_complex,
    ball_weight_moment,
    default_spec,
    kernel_ball_moment,
    kernel_sphere_moment,
    pole_kernel_integrand,
    sphere_integral,
    tau_integral,
)
from .models import ComplexEstimate, Estimate, QuadratureMethod, QuadratureSpec
from .sampling import sample_ball, sample_sphere

__all__ = [
    "ComplexEstimate",
    "Estimate",
    "QuadratureMethod",
    "QuadratureSpec",
    "ball_integral",
    "ball_integral_complex",
    "ball_weight_moment",
    "default_spec",
    "kernel_ball_moment",
    "kernel_sphere_moment",
    "pole_kernel_integrand",
    "sample_ball",
    "sample_sphere",
    "sphere_integral",
    "tau_integral",
]
