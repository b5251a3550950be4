"""Euclidean Jordan algebra zoo: descriptors, elements and the canonical product.

Every algebra is a direct sum of simple factors of four kinds:

* ``real:n``    real symmetric n x n matrices
* ``complex:n`` complex Hermitian n x n matrices
* ``quat:n``    quaternionic Hermitian n x n matrices, stored through the
  2n x 2n complex symplectic embedding ``[[A, B], [-conj(B), conj(A)]]``
* ``spin:d``    the spin factor R^d (+) R, stored as ``[t, v_1, ..., v_d]``

Elements keep one native block per factor and every operation works
blockwise.  The block helpers accept arbitrary leading batch axes so that
linear maps can be tabulated on a whole basis at once.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

KINDS = ("real", "complex", "quat", "spin")


class DescriptorError(ValueError):
    """Raised when an algebra descriptor string cannot be parsed."""


class DescriptorMismatch(ValueError):
    """Raised when two elements of different algebras are combined."""


class NotPositiveError(ValueError):
    """Raised when an operation needs a positive (or effect) argument."""


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerance vocabulary shared by every module.

    ``eq_tol`` is the relative equality tolerance, ``eig_cluster_gap`` the
    width below which eigenvalues are merged, ``zero_cutoff`` the threshold
    under which spectral terms count as zero.
    """

    eq_tol: float = 1e-9
    eig_cluster_gap: float = 1e-7
    zero_cutoff: float = 1e-10

    def __post_init__(self):
        for name in ("eq_tol", "eig_cluster_gap", "zero_cutoff"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")

    def eps(self, descriptor: "AlgebraDescriptor", *operands) -> float:
        """Scale-free equality threshold ``eq_tol * dim * max(1, |operands|)``."""
        scale = 1.0
        for op in operands:
            s = order_unit_norm(op) if isinstance(op, Element) else abs(float(op))
            scale = max(scale, s)
        return self.eq_tol * descriptor.dim * scale

    def with_overrides(self, **kw) -> "Tolerances":
        return replace(self, **{k: float(v) for k, v in kw.items()})


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class SimpleFactor:
    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DescriptorError(f"unknown factor kind {self.kind!r}")
        if int(self.size) != self.size or self.size < 1:
            raise DescriptorError(f"factor size must be a positive integer, got {self.size!r}")

    @property
    def dim(self) -> int:
        n = self.size
        return {
            "real": n * (n + 1) // 2,
            "complex": n * n,
            "quat": n * (2 * n - 1),
            "spin": n + 1,
        }[self.kind]

    @property
    def rank(self) -> int:
        return 2 if self.kind == "spin" else self.size

    @property
    def shape(self) -> tuple[int, ...]:
        """Shape of the native block."""
        if self.kind == "spin":
            return (self.size + 1,)
        n = 2 * self.size if self.kind == "quat" else self.size
        return (n, n)

    @property
    def dtype(self):
        return np.float64 if self.kind in ("real", "spin") else np.complex128

    def __str__(self) -> str:
        return f"{self.kind}:{self.size}"


_FACTOR_RE = re.compile(r"^(real|complex|quat|spin):([0-9]+)$")


@dataclass(frozen=True)
class AlgebraDescriptor:
    """An EJA as an ordered direct sum of simple factors."""

    factors: tuple[SimpleFactor, ...]

    def __post_init__(self):
        if not self.factors:
            raise DescriptorError("an algebra needs at least one factor")
        object.__setattr__(self, "factors", tuple(self.factors))

    @classmethod
    def parse(cls, text: str) -> "AlgebraDescriptor":
        if not isinstance(text, str) or not text:
            raise DescriptorError("empty algebra descriptor")
        factors = []
        for part in text.split("+"):
            m = _FACTOR_RE.match(part)
            if m is None:
                raise DescriptorError(f"cannot parse factor {part!r} in {text!r}")
            factors.append(SimpleFactor(m.group(1), int(m.group(2))))
        return cls(tuple(factors))

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for f in self.factors:
            out.append(acc)
            acc += f.dim
        out.append(acc)
        return tuple(out)

    def __str__(self) -> str:
        return "+".join(str(f) for f in self.factors)

    def __repr__(self) -> str:
        return f"AlgebraDescriptor({str(self)!r})"


def parse_descriptor(text: str | AlgebraDescriptor) -> AlgebraDescriptor:
    if isinstance(text, AlgebraDescriptor):
        return text
    return AlgebraDescriptor.parse(text)


# ----------------------------------------------------------------------------
# block level helpers (support leading batch axes)


@lru_cache(maxsize=None)
def _symplectic_j(n: int) -> np.ndarray:
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    j.setflags(write=False)
    return j


def _dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def clean_block(factor: SimpleFactor, block: np.ndarray) -> np.ndarray:
    """Project a block onto its valid subspace (Hermitian, symplectic)."""
    if factor.kind == "spin":
        return np.asarray(block, dtype=np.float64)
    m = np.asarray(block, dtype=factor.dtype)
    m = 0.5 * (m + _dagger(m))
    if factor.kind == "quat":
        j = _symplectic_j(factor.size)
        m = 0.5 * (m + j @ np.conj(m) @ j.T)
    return m


def block_jordan(factor: SimpleFactor, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if factor.kind == "spin":
        s, v = x[..., :1], x[..., 1:]
        t, w = y[..., :1], y[..., 1:]
        head = np.sum(v * w, axis=-1, keepdims=True) + s * t
        return np.concatenate([head, t * v + s * w], axis=-1)
    return 0.5 * (x @ y + y @ x)


def block_inner(factor: SimpleFactor, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if factor.kind == "spin":
        return 2.0 * np.sum(x * y, axis=-1)
    val = np.real(np.sum(x * np.conj(y), axis=(-2, -1)))
    return 0.5 * val if factor.kind == "quat" else val


def block_unit(factor: SimpleFactor) -> np.ndarray:
    if factor.kind == "spin":
        u = np.zeros(factor.size + 1)
        u[0] = 1.0
        return u
    return np.eye(factor.shape[0], dtype=factor.dtype)


def block_eigvalsh(factor: SimpleFactor, x: np.ndarray) -> np.ndarray:
    """Jordan eigenvalues (ascending, with Jordan multiplicity)."""
    if factor.kind == "spin":
        t = x[..., 0]
        r = np.linalg.norm(x[..., 1:], axis=-1)
        return np.stack([t - r, t + r], axis=-1)
    ev = np.linalg.eigvalsh(x)
    if factor.kind == "quat":
        # Kramers pairs: average each doubled eigenvalue
        ev = 0.5 * (ev[..., 0::2] + ev[..., 1::2])
    return ev


def block_eigh(factor: SimpleFactor, x: np.ndarray):
    """Eigenvalues and eigenvectors of a single matrix block (no batching)."""
    return np.linalg.eigh(x)


@lru_cache(maxsize=None)
def _triu(n: int):
    iu = np.triu_indices(n, 1)
    for arr in iu:
        arr.setflags(write=False)
    return iu


def block_to_coords(factor: SimpleFactor, x: np.ndarray) -> np.ndarray:
    """Orthonormal coordinates with respect to the reference inner product."""
    r2 = math.sqrt(2.0)
    if factor.kind == "spin":
        return r2 * np.asarray(x, dtype=np.float64)
    n = factor.size
    iu = _triu(n)
    if factor.kind == "real":
        d = np.diagonal(x, axis1=-2, axis2=-1)
        return np.concatenate([d, r2 * x[..., iu[0], iu[1]]], axis=-1)
    if factor.kind == "complex":
        d = np.real(np.diagonal(x, axis1=-2, axis2=-1))
        off = x[..., iu[0], iu[1]]
        return np.concatenate([d, r2 * off.real, r2 * off.imag], axis=-1)
    a = x[..., :n, :n]
    b = x[..., :n, n:]
    d = np.real(np.diagonal(a, axis1=-2, axis2=-1))
    aoff = a[..., iu[0], iu[1]]
    boff = b[..., iu[0], iu[1]]
    return np.concatenate(
        [d, r2 * aoff.real, r2 * aoff.imag, r2 * boff.real, r2 * boff.imag], axis=-1
    )


def coords_to_block(factor: SimpleFactor, c: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=np.float64)
    r2 = math.sqrt(2.0)
    if factor.kind == "spin":
        return c / r2
    n = factor.size
    iu = _triu(n)
    m = len(iu[0])
    batch = c.shape[:-1]
    if factor.kind == "real":
        x = np.zeros(batch + (n, n))
        x[..., np.arange(n), np.arange(n)] = c[..., :n]
        off = c[..., n:] / r2
        x[..., iu[0], iu[1]] = off
        x[..., iu[1], iu[0]] = off
        return x
    if factor.kind == "complex":
        x = np.zeros(batch + (n, n), dtype=np.complex128)
        x[..., np.arange(n), np.arange(n)] = c[..., :n]
        off = (c[..., n : n + m] + 1j * c[..., n + m :]) / r2
        x[..., iu[0], iu[1]] = off
        x[..., iu[1], iu[0]] = np.conj(off)
        return x
    a = np.zeros(batch + (n, n), dtype=np.complex128)
    a[..., np.arange(n), np.arange(n)] = c[..., :n]
    aoff = (c[..., n : n + m] + 1j * c[..., n + m : n + 2 * m]) / r2
    a[..., iu[0], iu[1]] = aoff
    a[..., iu[1], iu[0]] = np.conj(aoff)
    b = np.zeros(batch + (n, n), dtype=np.complex128)
    boff = (c[..., n + 2 * m : n + 3 * m] + 1j * c[..., n + 3 * m :]) / r2
    b[..., iu[0], iu[1]] = boff
    b[..., iu[1], iu[0]] = -boff
    top = np.concatenate([a, b], axis=-1)
    bottom = np.concatenate([-np.conj(b), np.conj(a)], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


# ----------------------------------------------------------------------------
# elements


class Element:
    """A point of an algebra, one native block per simple factor.

    Elements are immutable; arithmetic returns new elements.
    """

    def __init__(self, descriptor: AlgebraDescriptor, blocks: Sequence[np.ndarray]):
        if len(blocks) != len(descriptor.factors):
            raise ValueError("one block per factor is required")
        frozen = []
        for f, b in zip(descriptor.factors, blocks):
            arr = np.array(b, dtype=f.dtype)
            if arr.shape != f.shape:
                raise ValueError(f"block for {f} must have shape {f.shape}, got {arr.shape}")
            arr.setflags(write=False)
            frozen.append(arr)
        self.descriptor = descriptor
        self.blocks = tuple(frozen)

    @classmethod
    def _trusted(cls, descriptor: AlgebraDescriptor, blocks) -> "Element":
        """Wrap blocks produced by our own arithmetic (no copy, no validation)."""
        out = cls.__new__(cls)
        for b in blocks:
            b.setflags(write=False)
        out.descriptor = descriptor
        out.blocks = tuple(blocks)
        return out

    @cached_property
    def memo(self) -> dict:
        """Per-instance cache for derived values (square root, complement)."""
        return {}

    # -- construction -----------------------------------------------------
    @classmethod
    def from_blocks(cls, descriptor, blocks, clean: bool = True) -> "Element":
        descriptor = parse_descriptor(descriptor)
        if clean:
            blocks = [clean_block(f, b) for f, b in zip(descriptor.factors, blocks)]
        return cls(descriptor, blocks)

    @classmethod
    def from_coords(cls, descriptor, coords) -> "Element":
        descriptor = parse_descriptor(descriptor)
        coords = np.asarray(coords, dtype=np.float64)
        if coords.shape != (descriptor.dim,):
            raise ValueError(f"expected {descriptor.dim} coordinates, got {coords.shape}")
        off = descriptor.offsets
        blocks = [
            coords_to_block(f, coords[off[i] : off[i + 1]])
            for i, f in enumerate(descriptor.factors)
        ]
        return cls(descriptor, blocks)

    @classmethod
    def unit(cls, descriptor) -> "Element":
        descriptor = parse_descriptor(descriptor)
        return cls(descriptor, [block_unit(f) for f in descriptor.factors])

    @classmethod
    def zero(cls, descriptor) -> "Element":
        descriptor = parse_descriptor(descriptor)
        return cls(descriptor, [np.zeros(f.shape, dtype=f.dtype) for f in descriptor.factors])

    @classmethod
    def spin(cls, v, t) -> "Element":
        v = np.atleast_1d(np.asarray(v, dtype=np.float64))
        desc = AlgebraDescriptor((SimpleFactor("spin", len(v)),))
        return cls(desc, [np.concatenate([[float(t)], v])])

    @classmethod
    def matrix(cls, kind: str, m) -> "Element":
        m = np.asarray(m)
        n = m.shape[0] // 2 if kind == "quat" else m.shape[0]
        desc = AlgebraDescriptor((SimpleFactor(kind, n),))
        return cls.from_blocks(desc, [m])

    # -- views ------------------------------------------------------------
    @cached_property
    def coords(self) -> np.ndarray:
        parts = [block_to_coords(f, b) for f, b in zip(self.descriptor.factors, self.blocks)]
        out = np.concatenate(parts)
        out.setflags(write=False)
        return out

    def block_only(self, index: int) -> "Element":
        """This element with every block except ``index`` zeroed."""
        blocks = [
            b if i == index else np.zeros_like(b) for i, b in enumerate(self.blocks)
        ]
        return Element(self.descriptor, blocks)

    def support_blocks(self, atol: float = 0.0) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if np.max(np.abs(b), initial=0.0) > atol]

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            return NotImplemented
        if other.descriptor != self.descriptor:
            raise DescriptorMismatch(f"{self.descriptor} vs {other.descriptor}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Element._trusted(self.descriptor, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Element._trusted(self.descriptor, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return Element._trusted(self.descriptor, [-a for a in self.blocks])

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            return NotImplemented
        s = float(scalar)
        return Element._trusted(self.descriptor, [s * a for a in self.blocks])

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / float(scalar))

    def complement(self) -> "Element":
        """``1 - a``."""
        if "complement" not in self.memo:
            self.memo["complement"] = Element.unit(self.descriptor) - self
        return self.memo["complement"]

    def __repr__(self) -> str:
        return f"Element({self.descriptor}, coords={np.array2string(self.coords, precision=4)})"

    def to_hex(self) -> list[str]:
        """Bit-exact serialization of the coordinates."""
        return [float(x).hex() for x in self.coords]

    @classmethod
    def from_hex(cls, descriptor, items: Iterable[str]) -> "Element":
        return cls.from_coords(descriptor, [float.fromhex(s) for s in items])


def _same(a: Element, b: Element) -> AlgebraDescriptor:
    if a.descriptor != b.descriptor:
        raise DescriptorMismatch(f"{a.descriptor} vs {b.descriptor}")
    return a.descriptor


def jordan_mul(a: Element, b: Element) -> Element:
    """Canonical Jordan product: ``(ab + ba)/2`` on matrices, the spin rule on spin blocks."""
    desc = _same(a, b)
    return Element(
        desc, [block_jordan(f, x, y) for f, x, y in zip(desc.factors, a.blocks, b.blocks)]
    )


def reference_inner(a: Element, b: Element) -> float:
    """Trace form normalized so that every atomic idempotent has unit norm."""
    desc = _same(a, b)
    return float(
        sum(block_inner(f, x, y) for f, x, y in zip(desc.factors, a.blocks, b.blocks))
    )


def norm(a: Element) -> float:
    """Euclidean norm of the reference inner product (dominates the order-unit norm)."""
    total = 0.0
    for f, x in zip(a.descriptor.factors, a.blocks):
        total += float(block_inner(f, x, x))
    return math.sqrt(max(total, 0.0))


def eigenvalues(a: Element) -> np.ndarray:
    """All Jordan eigenvalues of ``a`` with multiplicity, ascending."""
    if "eigenvalues" not in a.memo:
        ev = [block_eigvalsh(f, b) for f, b in zip(a.descriptor.factors, a.blocks)]
        out = np.sort(np.concatenate(ev))
        out.setflags(write=False)
        a.memo["eigenvalues"] = out
    return a.memo["eigenvalues"]


def min_eigenvalue(a: Element) -> float:
    return float(eigenvalues(a)[0])


def order_unit_norm(a: Element) -> float:
    """``inf{r : -r 1 <= a <= r 1}``, i.e. the largest absolute eigenvalue."""
    ev = eigenvalues(a)
    return float(max(abs(ev[0]), abs(ev[-1])))


def is_positive(a: Element, tol: Tolerances = DEFAULT_TOL) -> bool:
    return min_eigenvalue(a) >= -tol.eq_tol


def is_effect(a: Element, tol: Tolerances = DEFAULT_TOL) -> bool:
    ev = eigenvalues(a)
    return bool(ev[0] >= -tol.eq_tol and ev[-1] <= 1.0 + tol.eq_tol)


def order_violation(lower: Element, upper: Element) -> float:
    """How far ``lower <= upper`` fails: ``max(0, -min eig(upper - lower))``."""
    return max(0.0, -min_eigenvalue(upper - lower))


def basis(descriptor) -> list[Element]:
    """Orthonormal basis (reference inner product) matching :attr:`Element.coords`."""
    descriptor = parse_descriptor(descriptor)
    eye = np.eye(descriptor.dim)
    return [Element.from_coords(descriptor, row) for row in eye]


def batch_min_eigenvalues(descriptor, coords: np.ndarray) -> np.ndarray:
    """Smallest Jordan eigenvalue for each row of a coordinate matrix."""
    descriptor = parse_descriptor(descriptor)
    coords = np.atleast_2d(coords)
    off = descriptor.offsets
    mins = []
    for i, f in enumerate(descriptor.factors):
        blocks = coords_to_block(f, coords[:, off[i] : off[i + 1]])
        mins.append(np.min(block_eigvalsh(f, blocks), axis=-1))
    return np.min(np.stack(mins, axis=0), axis=0)


# ----------------------------------------------------------------------------
# Jordan frames and random effects


def _quat_atoms_from_vectors(n: int, vectors: np.ndarray, count: int) -> list[np.ndarray]:
    """Split span(vectors) into ``count`` quaternionic rank-one projections.

    Each atom is the complex projection onto ``{x, J conj(x)}``.
    """
    j = _symplectic_j(n)
    atoms = []
    remaining = np.array(vectors, dtype=np.complex128)
    proj_done = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    for _ in range(count):
        resid = remaining - proj_done @ remaining
        norms = np.linalg.norm(resid, axis=0)
        k = int(np.argmax(norms))
        x = resid[:, k] / norms[k]
        y = j @ np.conj(x)
        y = y - proj_done @ y - x * np.vdot(x, y)
        y = y / np.linalg.norm(y)
        p = np.outer(x, np.conj(x)) + np.outer(y, np.conj(y))
        atoms.append(p)
        proj_done = proj_done + p
    return atoms


def block_atoms(factor: SimpleFactor, block: np.ndarray, gap: float) -> list[tuple[float, np.ndarray]]:
    """Eigen-frame of one block: ``(lambda, atom block)`` with Jordan multiplicity."""
    if factor.kind == "spin":
        t = float(block[0])
        v = np.asarray(block[1:], dtype=np.float64)
        r = float(np.linalg.norm(v))
        if 2.0 * r < gap or r == 0.0:
            u = np.zeros_like(v)
            u[0] = 1.0
            lo, hi = t, t
        else:
            u = v / r
            lo, hi = t - r, t + r
        return [
            (lo, 0.5 * np.concatenate([[1.0], -u])),
            (hi, 0.5 * np.concatenate([[1.0], u])),
        ]
    w, vecs = np.linalg.eigh(block)
    if factor.kind != "quat":
        return [(float(w[k]), np.outer(vecs[:, k], np.conj(vecs[:, k]))) for k in range(len(w))]
    out = []
    n = factor.size
    for idx in cluster_indices(w, gap):
        lam = float(np.mean(w[idx]))
        count = len(idx) // 2
        if count == 0:
            # an odd cluster of a Kramers spectrum cannot occur for valid input
            raise np.linalg.LinAlgError("quaternionic block has unpaired eigenvalue")
        for p in _quat_atoms_from_vectors(n, vecs[:, idx], count):
            out.append((lam, p))
    return out


def cluster_indices(values: np.ndarray, gap: float) -> list[list[int]]:
    """Single-linkage clusters of sorted values whose neighbours are closer than ``gap``."""
    order = np.argsort(values, kind="stable")
    groups: list[list[int]] = []
    for k in order:
        if groups and values[k] - values[groups[-1][-1]] < gap:
            groups[-1].append(int(k))
        else:
            groups.append([int(k)])
    return groups


def random_frame(descriptor, rng: np.random.Generator) -> list[Element]:
    """A random Jordan frame: ``rank`` orthogonal atoms summing to the unit."""
    descriptor = parse_descriptor(descriptor)
    atoms = []
    for i, f in enumerate(descriptor.factors):
        for blk in _random_block_frame(f, rng):
            blocks = [np.zeros(g.shape, dtype=g.dtype) for g in descriptor.factors]
            blocks[i] = blk
            atoms.append(Element(descriptor, blocks))
    return atoms


def _random_block_frame(f: SimpleFactor, rng: np.random.Generator) -> list[np.ndarray]:
    if f.kind == "spin":
        u = rng.standard_normal(f.size)
        u /= np.linalg.norm(u)
        return [0.5 * np.concatenate([[1.0], u]), 0.5 * np.concatenate([[1.0], -u])]
    if f.kind == "real":
        q, _ = np.linalg.qr(rng.standard_normal((f.size, f.size)))
        return [np.outer(q[:, k], q[:, k]) for k in range(f.size)]
    if f.kind == "complex":
        z = rng.standard_normal((f.size, f.size)) + 1j * rng.standard_normal((f.size, f.size))
        q, _ = np.linalg.qr(z)
        return [np.outer(q[:, k], np.conj(q[:, k])) for k in range(f.size)]
    n = f.size
    z = rng.standard_normal((2 * n, n)) + 1j * rng.standard_normal((2 * n, n))
    return _quat_atoms_from_vectors(n, z, n)


PROFILES = ("generic", "sharp", "atomic", "degenerate", "boundary")


def effect_from_frame(frame: Sequence[Element], weights: Sequence[float]) -> Element:
    desc = frame[0].descriptor
    blocks = [np.zeros(f.shape, dtype=f.dtype) for f in desc.factors]
    for w, atom in zip(weights, frame):
        for i in range(len(blocks)):
            blocks[i] = blocks[i] + float(w) * atom.blocks[i]
    return Element.from_blocks(desc, blocks)


def random_weights(rank: int, rng: np.random.Generator, profile: str) -> np.ndarray:
    if profile == "generic":
        return rng.uniform(0.0, 1.0, rank)
    if profile == "sharp":
        return rng.integers(0, 2, rank).astype(float)
    if profile == "atomic":
        w = np.zeros(rank)
        w[rng.integers(rank)] = 1.0
        return w
    if profile == "degenerate":
        w = rng.uniform(0.0, 1.0, rank)
        k = -(-rank // 2)
        slots = rng.permutation(rank)[:k]
        w[slots] = rng.uniform(0.0, 1.0)
        return w
    if profile == "boundary":
        w = rng.uniform(0.0, 1.0, rank)
        slots = rng.permutation(rank)
        if rank <= 2:
            w[slots[0]] = float(rng.integers(0, 2))
            return w
        w[slots[0]] = 0.0
        w[slots[1]] = 1.0
        return w
    raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")


def random_effect(descriptor, rng: np.random.Generator, profile: str = "generic") -> Element:
    """Random effect built on a random Jordan frame.

    ``sharp`` gives idempotents, ``atomic`` a single atom, ``degenerate``
    repeats one eigenvalue over ceil(rank/2) frame slots, ``boundary`` pins
    eigenvalues to the ends of [0, 1] (one at 0 and one at 1 from rank 3 on,
    a single pinned end below that).
    """
    descriptor = parse_descriptor(descriptor)
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    frame = random_frame(descriptor, rng)
    weights = random_weights(len(frame), rng, profile)
    return effect_from_frame(frame, weights)


def random_element(descriptor, rng: np.random.Generator, scale: float = 1.0) -> Element:
    """Gaussian element (indefinite in general)."""
    descriptor = parse_descriptor(descriptor)
    return Element.from_coords(descriptor, scale * rng.standard_normal(descriptor.dim))


def random_strictly_positive(
    descriptor, rng: np.random.Generator, low: float = 0.1, high: float = 2.0
) -> Element:
    frame = random_frame(descriptor, rng)
    return effect_from_frame(frame, rng.uniform(low, high, len(frame)))
