"""Local tomography: which algebras admit a factor-wise tensor composite with themselves.

The classification side is pure arithmetic on (rank, dim) pairs of simple
EJAs.  The constructive side builds complex composites with ``numpy.kron``
and checks the product law and the atom/rank bookkeeping directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    AlgebraDescriptor,
    Element,
    SimpleFactor,
    Tolerances,
    norm,
    parse_descriptor,
    random_effect,
    random_frame,
)
from .seqprod import is_compatible, seq_prod
from .spectral import is_atomic, is_sharp

FAMILIES = ("RealSym", "ComplexHerm", "QuatHerm", "SpinFactor", "Albert")
# lower index wins when two families give the same (rank, dim)
_FAMILY_PRIORITY = {"ComplexHerm": 0, "RealSym": 1, "QuatHerm": 2, "Albert": 3, "SpinFactor": 4}


@dataclass(frozen=True)
class SimpleEjaRow:
    family: str
    rank: int
    dim: int

    def expected_dim(self) -> int | None:
        """Dimension predicted by the family formula (``None`` for free spin dims)."""
        r = self.rank
        return {
            "RealSym": r * (r + 1) // 2,
            "ComplexHerm": r * r,
            "QuatHerm": r * (2 * r - 1),
            "Albert": 27,
            "SpinFactor": None,
        }[self.family]

    def consistent(self) -> bool:
        if self.family == "SpinFactor":
            return self.rank == 2 and self.dim >= 3
        if self.family == "Albert":
            return self.rank == 3 and self.dim == 27
        return self.dim == self.expected_dim()


def simple_ejas_of_rank(r: int, dim_limit: int) -> list[SimpleEjaRow]:
    """All simple EJAs of rank ``r`` and dimension ``<= dim_limit``, one row per (rank, dim)."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    if r == 1:
        return [SimpleEjaRow("RealSym", 1, 1)] if dim_limit >= 1 else []
    rows = [
        SimpleEjaRow("RealSym", r, r * (r + 1) // 2),
        SimpleEjaRow("ComplexHerm", r, r * r),
        SimpleEjaRow("QuatHerm", r, r * (2 * r - 1)),
    ]
    if r == 3:
        rows.append(SimpleEjaRow("Albert", 3, 27))
    if r == 2:
        rows.extend(SimpleEjaRow("SpinFactor", 2, d) for d in range(3, dim_limit + 1))
    best: dict[int, SimpleEjaRow] = {}
    for row in rows:
        if row.dim > dim_limit:
            continue
        cur = best.get(row.dim)
        if cur is None or _FAMILY_PRIORITY[row.family] < _FAMILY_PRIORITY[cur.family]:
            best[row.dim] = row
    return [best[d] for d in sorted(best)]


def row_for_factor(f: SimpleFactor) -> SimpleEjaRow:
    """Classification row of a zoo factor (identifications are by (rank, dim))."""
    if f.rank == 1 or f.dim == 1:
        return SimpleEjaRow("RealSym", 1, 1)
    family = {
        "real": "RealSym",
        "complex": "ComplexHerm",
        "quat": "QuatHerm",
        "spin": "SpinFactor",
    }[f.kind]
    row = SimpleEjaRow(family, f.rank, f.dim)
    same = [x for x in simple_ejas_of_rank(row.rank, row.dim) if x.dim == row.dim]
    return same[0] if same else row


def square_composite_exists(row: SimpleEjaRow) -> bool:
    """Is there a simple EJA of rank ``r^2`` and dimension ``N^2``?"""
    r2, n2 = row.rank**2, row.dim**2
    return any(x.dim == n2 for x in simple_ejas_of_rank(r2, n2))


@dataclass
class SummandVerdict:
    factor: str
    rank: int
    dim: int
    rank_sq: int
    dim_sq: int
    verdict: bool
    note: str = ""


@dataclass
class LocalTomographyReport:
    algebra: str
    verdict: bool
    summands: list[SummandVerdict] = field(default_factory=list)

    def table(self) -> str:
        head = f"{'summand':<12}{'rank':>6}{'dim':>6}{'rank^2':>8}{'dim^2':>8}  verdict"
        lines = [head, "-" * len(head)]
        for s in self.summands:
            mark = "yes" if s.verdict else "no"
            extra = f"  ({s.note})" if s.note else ""
            lines.append(
                f"{s.factor:<12}{s.rank:>6}{s.dim:>6}{s.rank_sq:>8}{s.dim_sq:>8}  {mark}{extra}"
            )
        lines.append(f"locally tomographic self-composite: {'yes' if self.verdict else 'no'}")
        return "\n".join(lines)


def is_locally_tomographic_self_composite(descriptor) -> LocalTomographyReport:
    """True iff every simple summand of rank > 1 is a complex matrix algebra."""
    desc = parse_descriptor(descriptor)
    summands = []
    for f in desc.factors:
        if f.kind == "spin" and f.size == 1:
            # R^1 (+) R is R (+) R: two classical rank-one summands
            summands.append(SummandVerdict(str(f), 2, 2, 4, 4, True, "splits as R+R"))
            continue
        row = row_for_factor(f)
        if row.rank == 1:
            summands.append(SummandVerdict(str(f), 1, 1, 1, 1, True, "classical"))
            continue
        ok = square_composite_exists(row)
        note = f"same (rank, dim) as {row.family}" if row.family != row_for_kind(f) else ""
        summands.append(
            SummandVerdict(str(f), row.rank, row.dim, row.rank**2, row.dim**2, ok, note)
        )
    return LocalTomographyReport(str(desc), all(s.verdict for s in summands), summands)


def row_for_kind(f: SimpleFactor) -> str:
    return {"real": "RealSym", "complex": "ComplexHerm", "quat": "QuatHerm", "spin": "SpinFactor"}[
        f.kind
    ]


# ----------------------------------------------------------------------------
# explicit complex composites


def tensor_descriptor(left, right) -> AlgebraDescriptor:
    """Composite of two all-complex algebras: ``complex:n_i n_j`` for every pair of summands."""
    left, right = parse_descriptor(left), parse_descriptor(right)
    for f in left.factors + right.factors:
        if f.kind != "complex":
            raise ValueError("explicit composites exist only for complex factors")
    return AlgebraDescriptor(
        tuple(SimpleFactor("complex", f.size * g.size) for f in left.factors for g in right.factors)
    )


def tensor(x: Element, y: Element) -> Element:
    """``x (x) y`` in the blockwise composite of two all-complex algebras."""
    desc = tensor_descriptor(x.descriptor, y.descriptor)
    blocks = [np.kron(bx, by) for bx in x.blocks for by in y.blocks]
    return Element(desc, blocks)


def overlap_witness(frame: list[Element], block: int) -> Element:
    """An atom with nonzero overlap with every frame atom of one matrix block.

    Matrix blocks use the projection onto the normalized sum of the frame
    vectors; spin blocks use the atom at 45 degrees between the frame pair.
    """
    desc = frame[0].descriptor
    f = desc.factors[block]
    mine = [p for p in frame if p.support_blocks() == [block]]
    blocks = [np.zeros(g.shape, dtype=g.dtype) for g in desc.factors]
    if f.kind == "spin":
        u = 2.0 * np.asarray(mine[0].blocks[block][1:])
        w = np.zeros_like(u)
        k = int(np.argmin(np.abs(u)))
        w[k] = 1.0
        w = w - u * np.dot(u, w)
        w /= np.linalg.norm(w)
        direction = (u + w) / np.linalg.norm(u + w)
        blocks[block] = 0.5 * np.concatenate([[1.0], direction])
        return Element(desc, blocks)
    total = np.zeros(f.shape[0], dtype=np.complex128)
    for p in mine:
        w, vecs = np.linalg.eigh(p.blocks[block])
        total = total + vecs[:, -1]
    total /= np.linalg.norm(total)
    if f.kind == "quat":
        from .algebra import _quat_atoms_from_vectors

        blocks[block] = _quat_atoms_from_vectors(f.size, total[:, None], 1)[0]
    elif f.kind == "real":
        blocks[block] = np.outer(total.real, total.real) / np.dot(total.real, total.real)
    else:
        blocks[block] = np.outer(total, np.conj(total))
    return Element.from_blocks(desc, blocks)


@dataclass
class TensorCheckReport:
    n: int
    m: int
    samples: int
    product_law: float
    atom_tensor_sharpness: float
    atom_tensor_atomic: bool
    classical_tensor_defect: float
    identity_rank: int
    dims: tuple[int, int]
    eps: float

    @property
    def ok(self) -> bool:
        return (
            self.product_law <= self.eps
            and self.atom_tensor_sharpness <= self.eps
            and self.atom_tensor_atomic
            and self.classical_tensor_defect <= self.eps
            and self.identity_rank == self.n * self.m
            and self.dims[0] == self.dims[1]
        )


class CapExceeded(ValueError):
    pass


def explicit_tensor_checks(
    n: int,
    m: int,
    samples: int = 100,
    seed: int = 0,
    cap: int = 16,
    tol: Tolerances = DEFAULT_TOL,
) -> TensorCheckReport:
    """Build ``complex:n (x) complex:m = complex:nm`` and check the composite laws."""
    from .lattice import rank_of

    if n * m > cap:
        raise CapExceeded(f"n*m = {n * m} exceeds the cap {cap}")
    left = parse_descriptor(f"complex:{n}")
    right = parse_descriptor(f"complex:{m}")
    comp = tensor_descriptor(left, right)
    rng = np.random.default_rng(seed)
    eps = tol.eps(comp)
    law = 0.0
    for _ in range(samples):
        a1, a2 = random_effect(left, rng), random_effect(left, rng)
        b1, b2 = random_effect(right, rng), random_effect(right, rng)
        lhs = seq_prod(tensor(a1, b1), tensor(a2, b2), tol)
        rhs = tensor(seq_prod(a1, a2, tol), seq_prod(b1, b2, tol))
        law = max(law, norm(lhs - rhs))

    p = random_effect(left, rng, "atomic")
    q = random_effect(right, rng, "atomic")
    pq = tensor(p, q)
    sharp_defect = norm(seq_prod(pq, pq, tol) - pq)
    atomic = is_atomic(pq, tol)

    # classical effects of a simple factor are multiples of its unit
    c = float(rng.uniform(0.1, 1.0)) * Element.unit(left)
    d = float(rng.uniform(0.1, 1.0)) * Element.unit(right)
    cd = tensor(c, d)
    classical = 0.0
    for _ in range(min(samples, 20)):
        x = random_effect(comp, rng)
        classical = max(classical, norm(seq_prod(cd, x, tol) - seq_prod(x, cd, tol)))

    unit = tensor(Element.unit(left), Element.unit(right))
    ident_rank = rank_of(unit, seed=seed, tol=tol)
    return TensorCheckReport(
        n, m, samples, law, sharp_defect, atomic, classical, ident_rank,
        (comp.dim, left.dim * right.dim), eps,
    )


def tensor_frame_is_maximal(n: int, m: int, seed: int = 0, tol: Tolerances = DEFAULT_TOL) -> float:
    """Residual of ``sum_ij p_i (x) q_j = 1`` for Jordan frames of both factors."""
    rng = np.random.default_rng(seed)
    left = random_frame(f"complex:{n}", rng)
    right = random_frame(f"complex:{m}", rng)
    comp = tensor_descriptor(f"complex:{n}", f"complex:{m}")
    total = Element.zero(comp)
    for p in left:
        for q in right:
            total = total + tensor(p, q)
    return norm(total - Element.unit(comp))
