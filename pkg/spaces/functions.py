"""
Holomorphic functions on the ball as immutable expression trees.

Each node evaluates on an (m, n) point array and serialises to JSON with a
``kind`` tag; complex numbers are stored as [re, im] pairs. Real powers of
1 − ⟨z, a⟩ use the principal branch, which is continuous on the ball because
Re(1 − ⟨z, a⟩) > 0 there.
"""

from functools import cached_property
from typing import Annotated, Any, List, Literal, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator

from errors import PreconditionError
from geometry.ball import as_point, as_points, norm_sq, require_interior
from geometry.models import Automorphism, Complex, Coords, coords_of

EVAL_ROWS = 4096


def _principal_power(base: np.ndarray, exponent: float) -> np.ndarray:
    """base^{−exponent} on the principal branch."""
    return np.exp(-exponent * np.log(base))


class _Node(BaseModel):
    model_config = ConfigDict(frozen=True)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Values at the rows of ``points``; no boundary checks."""
        raise NotImplementedError

    def hot_points(self) -> np.ndarray:
        """Interior points near which |f| concentrates (kernel centres)."""
        return np.zeros((0, 0), dtype=complex)

    def __call__(self, z: Any) -> complex:
        point = as_point(z)
        require_interior(point)
        return complex(self.evaluate(point.reshape(1, -1))[0])


class ConstantNode(_Node):
    kind: Literal["constant"] = "constant"
    value: Complex

    def evaluate(self, points):
        return np.full(len(points), self.value, dtype=complex)


class AffineNode(_Node):
    """c₀ + ⟨z, w⟩."""

    kind: Literal["affine"] = "affine"
    offset: Complex
    direction: Coords

    def evaluate(self, points):
        w = np.asarray(self.direction, dtype=complex)
        return self.offset + np.sum(points * w.conj(), axis=-1)


class KernelNode(_Node):
    """(1 − ⟨z, a⟩)^{−γ}."""

    kind: Literal["kernel"] = "kernel"
    center: Coords
    exponent: float

    @field_validator("center")
    @classmethod
    def _interior(cls, center):
        require_interior(np.asarray(center, dtype=complex), "kernel centre")
        return center

    def evaluate(self, points):
        a = np.asarray(self.center, dtype=complex)
        return _principal_power(1.0 - np.sum(points * a.conj(), axis=-1), self.exponent)

    def hot_points(self):
        return np.asarray(self.center, dtype=complex).reshape(1, -1)


class KernelSumNode(_Node):
    """Σ_k c_k (1 − ⟨z, a_k⟩)^{−γ}; the workhorse of every interpolant."""

    kind: Literal["kernel_sum"] = "kernel_sum"
    centers: Tuple[Coords, ...]
    coefficients: Tuple[Complex, ...]
    exponent: float

    @field_validator("coefficients")
    @classmethod
    def _aligned(cls, coefficients, info):
        centers = info.data.get("centers")
        if centers is not None and len(centers) != len(coefficients):
            raise ValueError(f"{len(centers)} centres but {len(coefficients)} coefficients")
        return coefficients

    @cached_property
    def center_array(self) -> np.ndarray:
        array = np.asarray(self.centers, dtype=complex)
        if array.size:
            require_interior(array, "kernel centre")
        return array

    @cached_property
    def coefficient_array(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=complex)

    def evaluate(self, points):
        if len(self.coefficients) == 0:
            return np.zeros(len(points), dtype=complex)
        centers, coeffs = self.center_array, self.coefficient_array
        out = np.empty(len(points), dtype=complex)
        for start in range(0, len(points), EVAL_ROWS):
            block = points[start : start + EVAL_ROWS]
            terms = _principal_power(1.0 - block @ centers.conj().T, self.exponent)
            out[start : start + EVAL_ROWS] = terms @ coeffs
        return out

    def hot_points(self):
        return self.center_array


class VanishingNode(_Node):
    """Π_k (|b_k|² − ⟨z, b_k⟩)/|b_k|²: equals 1 at 0 and vanishes at every b_k."""

    kind: Literal["vanishing"] = "vanishing"
    nodes: Tuple[Coords, ...]

    def evaluate(self, points):
        out = np.ones(len(points), dtype=complex)
        for node in self.nodes:
            b = np.asarray(node, dtype=complex)
            bb = np.sum(b * b.conj()).real
            out = out * (bb - np.sum(points * b.conj(), axis=-1)) / bb
        return out


class SumNode(_Node):
    kind: Literal["sum"] = "sum"
    terms: List["AnalyticFunction"]

    def evaluate(self, points):
        out = np.zeros(len(points), dtype=complex)
        for term in self.terms:
            out = out + term.evaluate(points)
        return out

    def hot_points(self):
        return _stack_hot(self.terms)


class ProductNode(_Node):
    kind: Literal["product"] = "product"
    factors: List["AnalyticFunction"]

    def evaluate(self, points):
        out = np.ones(len(points), dtype=complex)
        for factor in self.factors:
            out = out * factor.evaluate(points)
        return out

    def hot_points(self):
        return _stack_hot(self.factors)


class ScaleNode(_Node):
    kind: Literal["scale"] = "scale"
    factor: Complex
    term: "AnalyticFunction"

    def evaluate(self, points):
        return self.factor * self.term.evaluate(points)

    def hot_points(self):
        return self.term.hot_points()


class PowerNode(_Node):
    kind: Literal["power"] = "power"
    base: "AnalyticFunction"
    exponent: int = Field(ge=0)

    def evaluate(self, points):
        return self.base.evaluate(points) ** self.exponent

    def hot_points(self):
        return self.base.hot_points()


class ComposeNode(_Node):
    """f∘φ, evaluated lazily by mapping the points through φ first."""

    kind: Literal["compose"] = "compose"
    outer: "AnalyticFunction"
    inner: Automorphism

    def evaluate(self, points):
        return self.outer.evaluate(self.inner(points))

    def hot_points(self):
        hot = self.outer.hot_points()
        if hot.size == 0:
            return hot
        return self.inner.inverse()(hot)


AnalyticFunction = Annotated[
    Union[
        ConstantNode,
        AffineNode,
        KernelNode,
        KernelSumNode,
        VanishingNode,
        SumNode,
        ProductNode,
        ScaleNode,
        PowerNode,
        ComposeNode,
    ],
    Field(discriminator="kind"),
]

for _model in (SumNode, ProductNode, ScaleNode, PowerNode, ComposeNode):
    _model.model_rebuild()

function_adapter: TypeAdapter = TypeAdapter(AnalyticFunction)


def _stack_hot(children: Sequence[_Node]) -> np.ndarray:
    parts = [c.hot_points() for c in children]
    parts = [p for p in parts if p.size]
    return np.concatenate(parts) if parts else np.zeros((0, 0), dtype=complex)


# ---------- constructors ----------
def constant(value: complex) -> ConstantNode:
    return ConstantNode(value=complex(value))


def affine(offset: complex, direction: Any) -> AffineNode:
    return AffineNode(offset=complex(offset), direction=coords_of(direction))


def kernel_fn(exponent: float, a: Any) -> _Node:
    """f_{N,a}(z) = (1 − ⟨z, a⟩)^{−N}; the constant 1 when a = 0 or N = 0."""
    a = as_point(a)
    require_interior(a, "kernel centre")
    if exponent == 0 or not np.any(a):
        return constant(1.0)
    return KernelNode(center=coords_of(a), exponent=float(exponent))


def kernel_sum(centers: Any, coefficients: Any, exponent: float) -> KernelSumNode:
    centers = np.asarray(centers, dtype=complex)
    coefficients = np.asarray(coefficients, dtype=complex).ravel()
    if centers.size == 0:
        return KernelSumNode(centers=(), coefficients=(), exponent=float(exponent))
    centers = as_points(centers)
    return KernelSumNode(
        centers=tuple(coords_of(row) for row in centers),
        coefficients=coords_of(coefficients),
        exponent=float(exponent),
    )


def vanishing(nodes: Any) -> VanishingNode:
    nodes = np.asarray(nodes, dtype=complex)
    if nodes.size == 0:
        return VanishingNode(nodes=())
    nodes = as_points(nodes)
    if np.any(norm_sq(nodes) == 0.0):
        raise PreconditionError("vanishing product cannot have a node at the origin")
    return VanishingNode(nodes=tuple(coords_of(row) for row in nodes))


def add(*terms: _Node) -> SumNode:
    return SumNode(terms=list(terms))


def multiply(*factors: _Node) -> ProductNode:
    return ProductNode(factors=list(factors))


def scale(factor: complex, term: _Node) -> ScaleNode:
    return ScaleNode(factor=complex(factor), term=term)


def power(base: _Node, exponent: int) -> PowerNode:
    return PowerNode(base=base, exponent=exponent)


def compose(outer: _Node, inner: Automorphism) -> ComposeNode:
    return ComposeNode(outer=outer, inner=inner)


# ---------- evaluation ----------
def evaluate(f: _Node, points: Any) -> np.ndarray:
    """Values of f at interior points (an (m, n) array)."""
    pts = as_points(points)
    if len(pts):
        require_interior(pts)
    return f.evaluate(pts)


def eval_at(f: _Node, z: Any) -> complex:
    return f(z)


def load_function(text: str) -> _Node:
    return function_adapter.validate_json(text)


def dump_function(f: _Node) -> str:
    return function_adapter.dump_json(f, indent=2).decode("utf-8")
