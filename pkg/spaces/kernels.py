"""
Reproducing kernels, the isometries T_φ and the weighted pairing.
"""

import math
from typing import Any

import numpy as np
from scipy.special import gammaln

from errors import PreconditionError
from geometry.ball import as_point, norm_sq, require_interior
from geometry.models import Automorphism
from quadrature.integrals import ball_integral_complex
from quadrature.models import ComplexEstimate, QuadratureSpec
from spaces.functions import compose, kernel_fn, multiply, scale
from spaces.models import SpaceKind, SpaceParams


def kernel_constant(params: SpaceParams) -> float:
    """Γ(n+αp+1) / (Γ(n+1) Γ(αp+1))."""
    ap = params.weight_exponent
    return math.exp(gammaln(params.n + ap + 1) - gammaln(params.n + 1) - gammaln(ap + 1))


def reproducing_kernel(z: Any, params: SpaceParams):
    """
    K_z(ζ) = c · (1 − ⟨ζ, z⟩)^{−(n+1+αp)} reproducing B_α^p functions for the
    pairing ∫ f ḡ (1−|w|²)^{αp} dm.
    """
    if not (1.0 < params.p < math.inf and params.kind is SpaceKind.BERGMAN):
        raise PreconditionError("reproducing kernel needs 1 < p < inf and alpha > -1/p")
    z = as_point(z, params.n)
    require_interior(z)
    return scale(kernel_constant(params), kernel_fn(params.n + 1 + params.weight_exponent, z))


def apply_Tphi(f, phi: Automorphism, params: SpaceParams):
    """
    T_φ f = ((1−|b|²)/(1−⟨z,b⟩)²)^β · f∘φ with b = φ^{-1}(0), β = (n+1)/p + α.

    The prefactor is dropped when b = 0, so rotations act by plain composition.
    """
    if phi.dimension != params.n:
        raise PreconditionError(f"automorphism acts on C^{phi.dimension}, params on C^{params.n}")
    b = phi.preimage_of_origin()
    require_interior(b, "φ^{-1}(0)")
    composed = compose(f, phi)
    bb = float(norm_sq(b))
    if bb == 0.0:
        return composed
    beta = params.beta
    return multiply(scale((1.0 - bb) ** beta, kernel_fn(2.0 * beta, b)), composed)


def inner_product(f, g, params: SpaceParams, spec: QuadratureSpec) -> ComplexEstimate:
    """⟨f, g⟩ = ∫ f ḡ (1−|w|²)^{αp} dm."""
    if params.kind is not SpaceKind.BERGMAN or math.isinf(params.p):
        raise PreconditionError("the weighted pairing is defined for Bergman parameters")

    def integrand(points: np.ndarray) -> np.ndarray:
        return f.evaluate(points) * np.conj(g.evaluate(points))

    return ball_integral_complex(integrand, params.n, spec, params.weight_exponent)
