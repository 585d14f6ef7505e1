"""
Which weighted spaces sit inside which, by the exponents alone.
"""

from typing import Optional

from errors import PreconditionError
from spaces.models import InclusionVerdict, SpaceParams

TOL = 1e-12


def _same_dimension(params: SpaceParams, target: SpaceParams) -> None:
    if params.n != target.n:
        raise PreconditionError(f"dimensions differ: {params.n} vs {target.n}")


def space_inclusion(params: SpaceParams, target: SpaceParams) -> InclusionVerdict:
    """
    B_α^p ⊂ B_{α'}^{p'}?

    For p ≤ p' this holds exactly when (n+1)/p + α ≤ (n+1)/p' + α'. For p > p'
    it holds when α + 1/p < α' + 1/p' and fails when α + 1/p > α' + 1/p'; the
    equality case is left undetermined.
    """
    _same_dimension(params, target)
    if params.p <= target.p:
        if params.beta <= target.beta + TOL:
            return InclusionVerdict.INCLUDED
        return InclusionVerdict.NOT_INCLUDED
    gap = target.smoothness - params.smoothness
    if gap > TOL:
        return InclusionVerdict.INCLUDED
    if gap < -TOL:
        return InclusionVerdict.NOT_INCLUDED
    return InclusionVerdict.UNDETERMINED


def sequence_space_inclusion(params: SpaceParams, target: SpaceParams) -> InclusionVerdict:
    """
    ℓ^p_β ⊂ ℓ^{p'}_{β'} for every separated sequence?

    p ≤ p': exactly when β ≤ β'. p ≥ p': when α + 1/p < α' + 1/p'; for p > p'
    and α + 1/p ≥ α' + 1/p' some separated sequence breaks it.
    """
    _same_dimension(params, target)
    if params.p <= target.p:
        if params.beta <= target.beta + TOL:
            return InclusionVerdict.INCLUDED
        return InclusionVerdict.NOT_INCLUDED
    if target.smoothness - params.smoothness > TOL:
        return InclusionVerdict.INCLUDED
    return InclusionVerdict.NOT_INCLUDED


def transfer_regime(params: SpaceParams, target: SpaceParams) -> Optional[str]:
    """
    "a" when p ≤ p' and (n+1)/p + α < (n+1)/p' + α', "b" when p ≥ p' and
    α + 1/p < α' + 1/p', otherwise None. Interpolating sequences of the first
    space then interpolate the second.
    """
    _same_dimension(params, target)
    if params.p <= target.p and params.beta < target.beta - TOL:
        return "a"
    if params.p >= target.p and params.smoothness < target.smoothness - TOL:
        return "b"
    return None
