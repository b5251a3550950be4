"""Spectral decomposition and functional calculus.

Matrix blocks are diagonalized with ``numpy.linalg.eigh``; quaternionic
blocks go through the same solver on their complex embedding (each Jordan
eigenvalue then appears twice).  Spin blocks use the closed form
``t +- |v|`` with idempotents ``((1, +-v/|v|))/2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    Element,
    NotPositiveError,
    Tolerances,
    _quat_atoms_from_vectors,
    block_atoms,
    clean_block,
    cluster_indices,
    eigenvalues,
    is_effect,
    jordan_mul,
    min_eigenvalue,
    norm,
    reference_inner,
)


class NotAnEffectError(ValueError):
    pass


@dataclass(frozen=True)
class SpectralForm:
    """``a = sum_i lambda_i p_i`` with orthogonal idempotents ``p_i``."""

    descriptor: object
    terms: tuple[tuple[float, Element], ...]

    @property
    def lambdas(self) -> list[float]:
        return [lam for lam, _ in self.terms]

    @property
    def idempotents(self) -> list[Element]:
        return [p for _, p in self.terms]

    def reconstruct(self) -> Element:
        out = Element.zero(self.descriptor)
        for lam, p in self.terms:
            out = out + lam * p
        return out

    def __len__(self) -> int:
        return len(self.terms)


def eigen_atoms(a: Element, tol: Tolerances = DEFAULT_TOL) -> list[tuple[float, Element]]:
    """Every Jordan eigenvalue of ``a`` with an atom from the solver's eigenframe."""
    desc = a.descriptor
    out = []
    for i, (f, blk) in enumerate(zip(desc.factors, a.blocks)):
        try:
            pieces = block_atoms(f, blk, tol.eig_cluster_gap)
        except np.linalg.LinAlgError as exc:
            raise np.linalg.LinAlgError(f"eigen-solver failed on factor {f}: {exc}") from exc
        for lam, atom in pieces:
            blocks = [np.zeros(g.shape, dtype=g.dtype) for g in desc.factors]
            blocks[i] = atom
            out.append((lam, Element(desc, blocks)))
    return out


def spectral_decompose(
    a: Element, tol: Tolerances = DEFAULT_TOL, keep_zero: bool = False
) -> SpectralForm:
    """Clustered spectral form of ``a``.

    Eigenvalues closer than ``tol.eig_cluster_gap`` (single linkage) share one
    term whose idempotent is the sum of their eigenprojections and whose value
    is their mean.  Terms with ``|lambda| <= tol.zero_cutoff`` are dropped
    unless ``keep_zero``.
    """
    atoms = eigen_atoms(a, tol)
    lams = np.array([lam for lam, _ in atoms])
    terms = []
    for idx in cluster_indices(lams, tol.eig_cluster_gap):
        lam = float(np.mean(lams[idx]))
        if not keep_zero and abs(lam) <= tol.zero_cutoff:
            continue
        p = atoms[idx[0]][1]
        for k in idx[1:]:
            p = p + atoms[k][1]
        terms.append((lam, p))
    return SpectralForm(a.descriptor, tuple(terms))


def split_idempotent(
    e: Element, rng: np.random.Generator | None = None, tol: Tolerances = DEFAULT_TOL
) -> list[Element]:
    """Split an idempotent into orthogonal atoms.

    Without ``rng`` the frame is the solver's eigenframe of each block; with
    ``rng`` a random frame inside the range is used instead.
    """
    desc = e.descriptor
    atoms = []
    for i, (f, blk) in enumerate(zip(desc.factors, e.blocks)):
        for piece in _split_block(f, blk, rng):
            blocks = [np.zeros(g.shape, dtype=g.dtype) for g in desc.factors]
            blocks[i] = piece
            atoms.append(Element(desc, blocks))
    return atoms


def _split_block(f, blk, rng):
    if f.kind == "spin":
        t = float(blk[0])
        m = int(round(2.0 * t))
        if m <= 0:
            return []
        if m == 1:
            return [np.array(blk, dtype=np.float64)]
        if rng is None:
            u = np.zeros(f.size)
            u[0] = 1.0
        else:
            u = rng.standard_normal(f.size)
            u /= np.linalg.norm(u)
        return [0.5 * np.concatenate([[1.0], u]), 0.5 * np.concatenate([[1.0], -u])]
    trace = float(np.real(np.trace(blk)))
    m = int(round(trace / 2.0)) if f.kind == "quat" else int(round(trace))
    if m <= 0:
        return []
    if rng is None:
        w, vecs = np.linalg.eigh(blk)
        cols = vecs[:, w > 0.5]
    else:
        width = m if f.kind != "quat" else 2 * m
        shape = (blk.shape[0], width)
        g = rng.standard_normal(shape)
        if f.kind != "real":
            g = g + 1j * rng.standard_normal(shape)
        cols = blk @ g
    if f.kind == "quat":
        return _quat_atoms_from_vectors(f.size, cols, m)
    q, _ = np.linalg.qr(cols)
    q = q[:, :m]
    return [np.outer(q[:, k], np.conj(q[:, k])) for k in range(m)]


def atomic_spectral(
    a: Element,
    tol: Tolerances = DEFAULT_TOL,
    keep_zero: bool = False,
    rng: np.random.Generator | None = None,
) -> list[tuple[float, Element]]:
    """``a = sum_i lambda_i p_i`` with orthogonal *atomic* ``p_i``.

    With ``rng`` every cluster idempotent is re-split along a random frame,
    which exercises the freedom inside degenerate eigenspaces.
    """
    if rng is None:
        key = ("eigen_atoms", tol)
        if key not in a.memo:
            a.memo[key] = tuple(eigen_atoms(a, tol))
        atoms = list(a.memo[key])
        if keep_zero:
            return atoms
        return [(lam, p) for lam, p in atoms if abs(lam) > tol.zero_cutoff]
    out = []
    for lam, p in spectral_decompose(a, tol, keep_zero=keep_zero).terms:
        out.extend((lam, q) for q in split_idempotent(p, rng, tol))
    return out


def apply_function(
    a: Element, fn: Callable[[np.ndarray], np.ndarray], min_allowed: float | None = None
) -> Element:
    """Functional calculus ``sum_i fn(lambda_i) p_i`` computed per block.

    With ``min_allowed`` set, raise :class:`NotPositiveError` when an
    eigenvalue falls below it (checked on the same decomposition).
    """
    blocks = []
    for f, blk in zip(a.descriptor.factors, a.blocks):
        if f.kind == "spin":
            t = float(blk[0])
            v = np.asarray(blk[1:])
            r = float(np.linalg.norm(v))
            w = np.array([t + r, t - r])
            _floor_check(w, min_allowed)
            hi, lo = fn(w)
            out = np.zeros_like(blk)
            out[0] = 0.5 * (hi + lo)
            if r > 0:
                out[1:] = 0.5 * (hi - lo) * v / r
            blocks.append(out)
            continue
        w, vecs = np.linalg.eigh(blk)
        _floor_check(w, min_allowed)
        m = (vecs * fn(w)) @ np.conj(vecs.T)
        blocks.append(clean_block(f, m))
    return Element._trusted(a.descriptor, blocks)


def _floor_check(w: np.ndarray, min_allowed: float | None):
    if min_allowed is not None and np.min(w) < min_allowed:
        raise NotPositiveError(f"needs a positive element (min eigenvalue {np.min(w):.3e})")


# eigenvalues this close to zero are solver noise; their square roots are not
_SQRT_SNAP = 32 * np.finfo(np.float64).eps


def _noise_free_sqrt(w: np.ndarray) -> np.ndarray:
    snap = _SQRT_SNAP * max(1.0, float(np.max(np.abs(w))))
    return np.sqrt(np.where(w <= snap, 0.0, w))


def sqrt_effect(a: Element, tol: Tolerances = DEFAULT_TOL) -> Element:
    """Positive square root of a positive element.

    Eigenvalues within a few ulps of zero are treated as zero: the square
    root would otherwise blow rounding noise of 1e-16 up to 1e-8.
    """
    key = ("sqrt", tol.eq_tol)
    if key not in a.memo:
        a.memo[key] = apply_function(a, _noise_free_sqrt, -tol.eq_tol)
    return a.memo[key]


def power(a: Element, n: int, tol: Tolerances = DEFAULT_TOL) -> Element:
    """``a^n`` for positive ``a`` (``a^0`` is the unit)."""
    if int(n) != n or n < 0:
        raise ValueError("power needs a natural number exponent")
    if n == 0:
        _require_positive(a, tol, "power")
        return Element.unit(a.descriptor)
    return apply_function(a, lambda w: np.clip(w, 0.0, None) ** int(n), -tol.eq_tol)


def inverse(a: Element, tol: Tolerances = DEFAULT_TOL) -> Element:
    """``sum_i lambda_i^{-1} p_i``; needs every eigenvalue above ``zero_cutoff``."""
    lo = min_eigenvalue(a)
    if lo <= tol.zero_cutoff:
        raise NotPositiveError(f"inverse needs a strictly positive element (min eigenvalue {lo:.3e})")
    return apply_function(a, lambda w: 1.0 / w)


def _require_effect(a: Element, tol: Tolerances):
    if not is_effect(a, tol):
        raise NotAnEffectError("operation is only defined on effects")


def is_sharp(a: Element, tol: Tolerances = DEFAULT_TOL) -> bool:
    from .seqprod import seq_prod

    _require_effect(a, tol)
    key = ("sharp", tol)
    if key not in a.memo:
        a.memo[key] = norm(seq_prod(a, a, tol) - a) <= tol.eps(a.descriptor, a)
    return a.memo[key]


def jordan_rank_of_idempotent(p: Element) -> int:
    """Number of atoms in an idempotent: its trace under the reference form."""
    return int(round(reference_inner(p, Element.unit(p.descriptor))))


def is_atomic(a: Element, tol: Tolerances = DEFAULT_TOL) -> bool:
    if not is_sharp(a, tol):
        return False
    return int(np.sum(eigenvalues(a) > 0.5)) == 1


def ceiling(a: Element, tol: Tolerances = DEFAULT_TOL) -> Element:
    """Smallest sharp effect above ``a``: the sum of its nonzero-eigenvalue idempotents."""
    _require_effect(a, tol)
    out = Element.zero(a.descriptor)
    for lam, p in spectral_decompose(a, tol, keep_zero=True).terms:
        if lam > tol.zero_cutoff:
            out = out + p
    return out


def floor(a: Element, tol: Tolerances = DEFAULT_TOL) -> Element:
    """Largest sharp effect below ``a``: ``1 - ceil(1 - a)``."""
    _require_effect(a, tol)
    return ceiling(a.complement(), tol).complement()


def _require_positive(a: Element, tol: Tolerances, what: str):
    lo = min_eigenvalue(a)
    if lo < -tol.eq_tol:
        raise NotPositiveError(f"{what} needs a positive element (min eigenvalue {lo:.3e})")


@dataclass
class ClassicalAlgebraReport:
    dim: int
    gram_rank: int
    max_commutator: float
    max_associator: float
    max_closure: float
    samples: int
    notes: list[str] = field(default_factory=list)


def classical_algebra_check(
    a: Element,
    max_power: int | None = None,
    tol: Tolerances = DEFAULT_TOL,
    samples: int = 8,
    rng: np.random.Generator | None = None,
) -> ClassicalAlgebraReport:
    """Numerical stand-in for ``C(a) = span{a^n, (1-a)^m}`` being a copy of R^k.

    Effects sampled from the span are checked for pairwise compatibility,
    associativity and closure of the sequential product; ``dim`` counts the
    spectral clusters of ``a`` (a zero cluster included) and ``gram_rank`` is
    the numerical rank of the Gram matrix of ``a^0 .. a^max_power``.
    """
    from .seqprod import seq_prod

    _require_effect(a, tol)
    desc = a.descriptor
    if max_power is None:
        max_power = 2 * desc.rank
    rng = rng if rng is not None else np.random.default_rng(0)
    unit = Element.unit(desc)
    comp = a.complement()
    powers, comp_powers = [unit], [unit]
    for _ in range(max_power):
        powers.append(seq_prod(a, powers[-1], tol))
        comp_powers.append(seq_prod(comp, comp_powers[-1], tol))
    span = powers + comp_powers[1:]

    gram = np.array([[reference_inner(x, y) for y in powers] for x in powers])
    sv = np.linalg.svd(gram, compute_uv=False)
    gram_rank = int(np.sum(sv > sv[0] * 1e-12))

    dim = len(spectral_decompose(a, tol, keep_zero=True).terms)

    basis_mat = np.array([x.coords for x in span]).T
    q, r = np.linalg.qr(basis_mat)
    keep = np.abs(np.diag(r)) > 1e-12 * max(1.0, np.abs(r[0, 0]))
    q = q[:, keep]

    def pick():
        w = rng.dirichlet(np.ones(len(span)))
        out = Element.zero(desc)
        for wi, x in zip(w, span):
            out = out + float(wi) * x
        return out

    comm = assoc = closure = 0.0
    for _ in range(samples):
        x, y, z = pick(), pick(), pick()
        xy = seq_prod(x, y, tol)
        comm = max(comm, norm(xy - seq_prod(y, x, tol)))
        assoc = max(assoc, norm(seq_prod(x, seq_prod(y, z, tol), tol) - seq_prod(xy, z, tol)))
        c = xy.coords
        closure = max(closure, float(np.linalg.norm(c - q @ (q.T @ c))))
    notes = ["commutativity/associativity sampled on the span; no finite certificate"]
    return ClassicalAlgebraReport(dim, gram_rank, comm, assoc, closure, samples, notes)
