"""The lattice of sharp effects: joins, meets, atoms, rank and covering."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import DEFAULT_TOL, Element, Tolerances, is_effect, norm
from .seqprod import seq_prod
from .spectral import (
    NotAnEffectError,
    SpectralForm,
    ceiling,
    is_atomic,
    spectral_decompose,
    split_idempotent,
)


class NotSharpError(ValueError):
    pass


class SharpEffect:
    """An effect certified idempotent under the sequential product.

    Construction re-checks sharpness and refuses near-sharp values, since the
    lattice identities silently break on them.
    """

    def __init__(self, value: Element, tol: Tolerances = DEFAULT_TOL):
        if not is_effect(value, tol):
            raise NotSharpError("value is not an effect")
        defect = norm(seq_prod(value, value, tol) - value)
        if defect > tol.eps(value.descriptor, value):
            raise NotSharpError(f"value is not sharp (|p&p - p| = {defect:.3e})")
        self.value = value
        self.tol = tol

    @property
    def descriptor(self):
        return self.value.descriptor

    @cached_property
    def spectral(self) -> SpectralForm:
        return spectral_decompose(self.value, self.tol)

    @cached_property
    def projection(self) -> Element:
        """The eigenvalue-one idempotent, free of solver noise."""
        out = Element.zero(self.descriptor)
        for lam, p in self.spectral.terms:
            if lam > 0.5:
                out = out + p
        return out

    def complement(self) -> "SharpEffect":
        return SharpEffect(self.value.complement(), self.tol)

    def __repr__(self) -> str:
        return f"SharpEffect({self.value!r})"


def as_sharp(p, tol: Tolerances = DEFAULT_TOL) -> SharpEffect:
    if isinstance(p, SharpEffect):
        return p
    if isinstance(p, Element):
        return SharpEffect(p, tol)
    raise TypeError(f"expected a sharp effect, got {type(p).__name__}")


def join(p, q, tol: Tolerances = DEFAULT_TOL) -> SharpEffect:
    """Least upper bound ``ceil((p + q)/2)``."""
    p, q = as_sharp(p, tol), as_sharp(q, tol)
    return SharpEffect(ceiling(0.5 * (p.value + q.value), tol), tol)


def meet(p, q, tol: Tolerances = DEFAULT_TOL) -> SharpEffect:
    """Greatest lower bound ``(p' v q')'``."""
    p, q = as_sharp(p, tol), as_sharp(q, tol)
    return SharpEffect(join(p.complement(), q.complement(), tol).value.complement(), tol)


def orthogonal(p, q, tol: Tolerances = DEFAULT_TOL) -> bool:
    """``p & q = 0``."""
    p, q = as_sharp(p, tol), as_sharp(q, tol)
    return norm(seq_prod(p.value, q.value, tol)) <= tol.eps(p.descriptor, p.value, q.value)


@dataclass(frozen=True)
class AtomicDecomposition:
    atoms: tuple[Element, ...]
    target: Element

    def residual(self) -> float:
        total = Element.zero(self.target.descriptor)
        for a in self.atoms:
            total = total + a
        return norm(total - self.target)

    def max_overlap(self, tol: Tolerances = DEFAULT_TOL) -> float:
        worst = 0.0
        for i, a in enumerate(self.atoms):
            for b in self.atoms[i + 1 :]:
                worst = max(worst, norm(seq_prod(a, b, tol)))
        return worst

    def __len__(self) -> int:
        return len(self.atoms)


def atomic_decomposition(p, seed: int = 0, tol: Tolerances = DEFAULT_TOL) -> AtomicDecomposition:
    """Split a sharp effect into orthogonal atoms along a seeded random frame."""
    p = as_sharp(p, tol)
    rng = np.random.default_rng(seed)
    atoms = split_idempotent(p.projection, rng, tol)
    return AtomicDecomposition(tuple(atoms), p.value)


def rank_of(p, seed: int = 0, tol: Tolerances = DEFAULT_TOL) -> int:
    """Number of atoms in any orthogonal atomic decomposition of ``p``."""
    return len(atomic_decomposition(p, seed, tol))


@dataclass(frozen=True)
class CoveringResult:
    kind: str  # "zero" or "atom"
    witness: Element
    identity_residual: float


def covering_check(p, q_atom, tol: Tolerances = DEFAULT_TOL) -> CoveringResult:
    """Classify ``(q v p) - p`` for an atom ``q`` as zero or atomic.

    Also measures ``|ceil(p' & q) - ((q v p) - p)|``, the identity behind the
    covering property.
    """
    p, q = as_sharp(p, tol), as_sharp(q_atom, tol)
    if not is_atomic(q.value, tol):
        raise NotSharpError("second argument must be atomic")
    witness = join(q, p, tol).value - p.value
    eps = tol.eps(p.descriptor, p.value, q.value)
    compressed = seq_prod(p.value.complement(), q.value, tol)
    identity = norm(ceiling(compressed, tol) - witness)
    if norm(witness) <= eps:
        return CoveringResult("zero", witness, identity)
    if is_effect(witness, tol) and is_atomic(witness, tol):
        return CoveringResult("atom", witness, identity)
    return CoveringResult("other", witness, identity)


def below(a: Element, p, tol: Tolerances = DEFAULT_TOL) -> bool:
    """``a <= p`` for sharp ``p``, tested as ``p & a = a``."""
    p = as_sharp(p, tol)
    if not is_effect(a, tol):
        raise NotAnEffectError("first argument must be an effect")
    return norm(seq_prod(p.value, a, tol) - a) <= tol.eps(p.descriptor, a)
