"""The sequential product ``a & b = Q_{sqrt a}(b)`` and the maps built from it."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    Element,
    NotPositiveError,
    Tolerances,
    block_jordan,
    block_to_coords,
    coords_to_block,
    is_effect,
    min_eigenvalue,
    norm,
    parse_descriptor,
)
from .spectral import NotAnEffectError, inverse, sqrt_effect


def _quadratic_blocks(factor, x, y):
    xy = block_jordan(factor, x, y)
    return 2.0 * block_jordan(factor, x, xy) - block_jordan(factor, block_jordan(factor, x, x), y)


def quadratic(x: Element, y: Element) -> Element:
    """Quadratic representation ``Q_x(y) = 2 x.(x.y) - (x.x).y``."""
    if x.descriptor != y.descriptor:
        from .algebra import DescriptorMismatch

        raise DescriptorMismatch(f"{x.descriptor} vs {y.descriptor}")
    return Element._trusted(
        x.descriptor,
        [_quadratic_blocks(f, u, v) for f, u, v in zip(x.descriptor.factors, x.blocks, y.blocks)],
    )


def seq_prod(a: Element, b: Element, tol: Tolerances = DEFAULT_TOL) -> Element:
    """``a & b``: first measure ``a``, then ``b``.  ``a`` must be positive; ``b`` is arbitrary."""
    return quadratic(sqrt_effect(a, tol), b)


def is_compatible(a: Element, b: Element, tol: Tolerances = DEFAULT_TOL) -> bool:
    if not (is_effect(a, tol) and is_effect(b, tol)):
        raise NotAnEffectError("compatibility is defined on effects")
    return compatibility_defect(a, b, tol) <= tol.eps(a.descriptor, a, b)


def compatibility_defect(a: Element, b: Element, tol: Tolerances = DEFAULT_TOL) -> float:
    """``|a & b - b & a|`` in the reference norm."""
    return norm(seq_prod(a, b, tol) - seq_prod(b, a, tol))


@dataclass(frozen=True)
class LeftMultMap:
    """A linear map on the coordinate space, usually ``L_a: b -> a & b``."""

    descriptor: object
    matrix: np.ndarray
    base: Element | None = None

    def __call__(self, b: Element) -> Element:
        return Element.from_coords(self.descriptor, self.matrix @ b.coords)

    def __matmul__(self, other: "LeftMultMap") -> "LeftMultMap":
        return LeftMultMap(self.descriptor, self.matrix @ other.matrix)

    def apply_coords(self, coords: np.ndarray) -> np.ndarray:
        """Apply to a stack of coordinate rows."""
        return np.atleast_2d(coords) @ self.matrix.T

    def adjoint(self) -> "LeftMultMap":
        # coordinates are orthonormal for the reference inner product
        return LeftMultMap(self.descriptor, self.matrix.T.copy())


def quadratic_map(x: Element) -> LeftMultMap:
    """Matrix of ``Q_x`` on the orthonormal coordinates (block diagonal)."""
    desc = x.descriptor
    mat = np.zeros((desc.dim, desc.dim))
    off = desc.offsets
    for i, f in enumerate(desc.factors):
        eye_blocks = coords_to_block(f, np.eye(f.dim))
        images = _quadratic_blocks(f, x.blocks[i], eye_blocks)
        mat[off[i] : off[i + 1], off[i] : off[i + 1]] = block_to_coords(f, images).T
    return LeftMultMap(desc, mat, x)


def left_mult_map(a: Element, tol: Tolerances = DEFAULT_TOL) -> LeftMultMap:
    """``L_a`` as a dense matrix; ``a`` must be positive."""
    m = quadratic_map(sqrt_effect(a, tol))
    return LeftMultMap(m.descriptor, m.matrix, a)


@dataclass(frozen=True)
class OrderIsomorphism:
    """``Phi = L_b L_{a^-1}`` together with its inverse ``L_a L_{b^-1}``."""

    forward: LeftMultMap
    backward: LeftMultMap
    source: Element
    target: Element

    def __call__(self, x: Element) -> Element:
        return self.forward(x)

    def inverse(self, x: Element) -> Element:
        return self.backward(x)


def homogeneity_iso(a: Element, b: Element, tol: Tolerances = DEFAULT_TOL) -> OrderIsomorphism:
    """Order isomorphism of the cone sending the strictly positive ``a`` to ``b``."""
    for name, x in (("a", a), ("b", b)):
        if min_eigenvalue(x) <= tol.zero_cutoff:
            raise NotPositiveError(f"{name} must be strictly positive (invertible)")
    fwd = left_mult_map(b, tol) @ left_mult_map(inverse(a, tol), tol)
    bwd = left_mult_map(a, tol) @ left_mult_map(inverse(b, tol), tol)
    return OrderIsomorphism(fwd, bwd, a, b)


def unit_map(descriptor) -> LeftMultMap:
    descriptor = parse_descriptor(descriptor)
    return LeftMultMap(descriptor, np.eye(descriptor.dim))
