"""Pure states of atoms, transition probabilities and the self-dual inner product."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    Element,
    Tolerances,
    _quat_atoms_from_vectors,
    parse_descriptor,
    reference_inner,
)
from .seqprod import left_mult_map, seq_prod
from .spectral import atomic_spectral, is_atomic


class NotAtomicError(ValueError):
    pass


@dataclass(frozen=True)
class StateFunctional:
    """A state ``omega(a) = <riesz, a>`` under the reference inner product."""

    riesz: Element
    label: Element | None = None

    def __call__(self, a: Element) -> float:
        return reference_inner(self.riesz, a)

    def is_state(self, tol: Tolerances = DEFAULT_TOL, probes=()) -> bool:
        desc = self.riesz.descriptor
        eps = tol.eps(desc)
        if abs(self(Element.unit(desc)) - 1.0) > eps:
            return False
        return all(self(x) >= -eps for x in probes)


def trace_state(a: Element) -> float:
    """The separating state: the normalized trace ``<a, 1>/rank``."""
    unit = Element.unit(a.descriptor)
    return reference_inner(a, unit) / a.descriptor.rank


def _require_atomic(p: Element, tol: Tolerances):
    if not is_atomic(p, tol):
        raise NotAtomicError("pure states are attached to atomic effects")


def pure_state_of(p: Element, tol: Tolerances = DEFAULT_TOL) -> StateFunctional:
    """``omega_p(a) = omega(p & a)/omega(p)`` with ``omega`` the normalized trace.

    The Riesz vector is tabulated on the orthonormal basis through ``L_p``.
    """
    _require_atomic(p, tol)
    desc = p.descriptor
    lp = left_mult_map(p, tol).matrix
    unit = Element.unit(desc).coords
    riesz = lp.T @ unit / (desc.rank * trace_state(p))
    return StateFunctional(Element.from_coords(desc, riesz), p)


def pure_state_by_inner(p: Element, tol: Tolerances = DEFAULT_TOL) -> StateFunctional:
    """Independent construction ``a -> <p, a>/<p, p>``."""
    _require_atomic(p, tol)
    return StateFunctional(p / reference_inner(p, p), p)


def omega(p: Element, a: Element, tol: Tolerances = DEFAULT_TOL) -> float:
    """``omega_p(a)`` without building the Riesz vector (``p`` assumed atomic)."""
    return trace_state(seq_prod(p, a, tol)) / trace_state(p)


def transition_probability(p: Element, q: Element, tol: Tolerances = DEFAULT_TOL) -> float:
    """``omega_p(q)`` for atoms ``p`` and ``q``; symmetric in its arguments."""
    if p.descriptor != q.descriptor:
        from .algebra import DescriptorMismatch

        raise DescriptorMismatch(f"{p.descriptor} vs {q.descriptor}")
    _require_atomic(p, tol)
    _require_atomic(q, tol)
    return omega(p, q, tol)


def _block_candidates(f) -> list[np.ndarray]:
    """Atoms of one factor that span it."""
    if f.kind == "spin":
        out = []
        for k in range(f.size):
            u = np.zeros(f.size)
            u[k] = 1.0
            out.append(0.5 * np.concatenate([[1.0], u]))
        u = np.zeros(f.size)
        u[0] = -1.0
        out.append(0.5 * np.concatenate([[1.0], u]))
        return out
    n = f.size
    width = 2 * n if f.kind == "quat" else n
    vecs = []
    eye = np.eye(width, dtype=np.complex128)
    for i in range(n):
        vecs.append(eye[i])
    phases = [1.0] if f.kind == "real" else [1.0, 1j]
    for i in range(n):
        for j in range(i + 1, n):
            for ph in phases:
                vecs.append((eye[i] + ph * eye[j]) / math.sqrt(2))
        if f.kind == "quat":
            for j in range(n):
                if j != i:
                    for ph in phases:
                        vecs.append((eye[i] + ph * eye[n + j]) / math.sqrt(2))
    out = []
    for v in vecs:
        if f.kind == "quat":
            out.extend(_quat_atoms_from_vectors(n, v[:, None], 1))
        elif f.kind == "real":
            out.append(np.outer(v.real, v.real))
        else:
            out.append(np.outer(v, np.conj(v)))
    return out


def spanning_atoms(descriptor) -> list[Element]:
    """A deterministic linearly independent family of ``dim`` atoms."""
    desc = parse_descriptor(descriptor)
    chosen: list[Element] = []
    mat = np.zeros((0, desc.dim))
    for i, f in enumerate(desc.factors):
        for blk in _block_candidates(f):
            blocks = [np.zeros(g.shape, dtype=g.dtype) for g in desc.factors]
            blocks[i] = blk
            atom = Element.from_blocks(desc, blocks)
            trial = np.vstack([mat, atom.coords])
            if np.linalg.matrix_rank(trial, tol=1e-9) > mat.shape[0]:
                mat = trial
                chosen.append(atom)
    if len(chosen) != desc.dim:
        raise RuntimeError(f"found {len(chosen)} independent atoms, expected {desc.dim}")
    return chosen


class SelfDualForm:
    """``<p, q> := omega_p(q)`` on atoms, extended bilinearly through spectral forms."""

    def __init__(self, descriptor, basis_atoms, tol: Tolerances = DEFAULT_TOL):
        self.descriptor = parse_descriptor(descriptor)
        self.basis_atoms = list(basis_atoms)
        self.tol = tol
        self.gram = np.array(
            [[omega(p, q, tol) for q in self.basis_atoms] for p in self.basis_atoms]
        )

    @property
    def gram_min_eigenvalue(self) -> float:
        return float(np.min(np.linalg.eigvalsh(0.5 * (self.gram + self.gram.T))))

    @property
    def gram_asymmetry(self) -> float:
        return float(np.max(np.abs(self.gram - self.gram.T)))

    def __call__(self, a: Element, b: Element, rng: np.random.Generator | None = None) -> float:
        """``sum_i lambda_i omega_{p_i}(b)`` over an atomic spectral form of ``a``."""
        return sum(
            lam * omega(p, b, self.tol)
            for lam, p in atomic_spectral(a, self.tol, keep_zero=True, rng=rng)
        )

    def double_expansion(self, a: Element, b: Element, rng=None) -> float:
        """``sum_ij lambda_i mu_j <p_i, q_j>`` using atomic forms of both sides."""
        ta = atomic_spectral(a, self.tol, keep_zero=True, rng=rng)
        tb = atomic_spectral(b, self.tol, keep_zero=True, rng=rng)
        return sum(la * mb * omega(p, q, self.tol) for la, p in ta for mb, q in tb)

    def frame_pairings(self, a: Element, rng=None) -> list[tuple[float, float]]:
        """``(lambda_j, <a, p_j>)`` for the atoms of ``a``'s own decomposition."""
        terms = atomic_spectral(a, self.tol, keep_zero=True, rng=rng)
        return [
            (lam, sum(mu * omega(q, p, self.tol) for mu, q in terms)) for lam, p in terms
        ]


def build_self_dual_inner(
    descriptor, basis_atoms=None, tol: Tolerances = DEFAULT_TOL
) -> SelfDualForm:
    desc = parse_descriptor(descriptor)
    if basis_atoms is None:
        basis_atoms = spanning_atoms(desc)
    return SelfDualForm(desc, basis_atoms, tol)
