"""Join, meet, orthogonality, atomic decompositions, rank and covering."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqjordan import (
    DEFAULT_TOL,
    Element,
    NotSharpError,
    SharpEffect,
    atomic_decomposition,
    ceiling,
    covering_check,
    is_atomic,
    join,
    meet,
    norm,
    orthogonal,
    random_effect,
    random_frame,
    rank_of,
    seq_prod,
)
from seqjordan.lattice import below

from conftest import ZOO


def projector(v):
    v = np.asarray(v, dtype=np.complex128)
    v = v / np.linalg.norm(v)
    return Element.matrix("complex", np.outer(v, np.conj(v)))


class TestSharpEffect:
    def test_refuses_near_sharp(self):
        with pytest.raises(NotSharpError):
            SharpEffect(0.5 * Element.unit("real:2"))

    def test_refuses_non_effects(self):
        with pytest.raises(NotSharpError):
            SharpEffect(2.0 * Element.unit("real:2"))

    def test_complement(self, zoo_desc, rng):
        p = SharpEffect(random_effect(zoo_desc, rng, "sharp"))
        assert norm(p.complement().value + p.value - Element.unit(zoo_desc)) < 1e-15


class TestJoinMeet:
    def test_idempotent(self, zoo_desc, rng):
        p = random_effect(zoo_desc, rng, "sharp")
        assert norm(join(p, p).value - p) < 1e-12
        assert norm(meet(p, p).value - p) < 1e-12

    def test_orthogonal_join_is_sum(self, zoo_desc, rng):
        frame = random_frame(zoo_desc, rng)
        p, q = frame[0], frame[-1]
        assert orthogonal(p, q)
        assert norm(join(p, q).value - (p + q)) < 1e-12

    def test_two_distinct_qubit_atoms(self):
        p, q = projector([1, 0]), projector([1, 1j])
        assert norm(join(p, q).value - Element.unit("complex:2")) < 1e-12
        assert norm(meet(p, q).value) < 1e-12

    def test_de_morgan(self, zoo_desc, rng):
        p, q = random_effect(zoo_desc, rng, "sharp"), random_effect(zoo_desc, rng, "sharp")
        lhs = join(p, q).complement().value
        rhs = meet(p.complement(), q.complement()).value
        assert norm(lhs - rhs) < 1e-12

    def test_bounds(self, zoo_desc, rng):
        p, q = random_effect(zoo_desc, rng, "sharp"), random_effect(zoo_desc, rng, "sharp")
        j, m = join(p, q), meet(p, q)
        for x in (p, q):
            assert below(x, j)
            assert below(m.value, SharpEffect(x))

    def test_rank_two_join(self):
        rng = np.random.default_rng(5)
        p, q = random_effect("complex:3", rng, "atomic"), random_effect("complex:3", rng, "atomic")
        assert rank_of(join(p, q)) == 2


class TestOrthogonality:
    def test_complement_is_orthogonal(self, zoo_desc, rng):
        p = random_effect(zoo_desc, rng, "sharp")
        assert orthogonal(p, p.complement())

    def test_nonzero_not_orthogonal_to_itself(self, zoo_desc, rng):
        p = random_effect(zoo_desc, rng, "atomic")
        assert not orthogonal(p, p)

    def test_complementary_spin_atoms(self):
        u = np.array([0.6, 0.0, 0.8])
        assert orthogonal(Element.spin(u / 2, 0.5), Element.spin(-u / 2, 0.5))


class TestRank:
    @pytest.mark.parametrize("desc, rank", [("real:3", 3), ("complex:4", 4), ("quat:2", 2), ("spin:3", 2), ("spin:7", 2), ("complex:2+spin:3", 4)])
    def test_rank_of_unit(self, desc, rank):
        assert rank_of(Element.unit(desc)) == rank

    def test_atom_decomposes_into_itself(self, zoo_desc, rng):
        p = random_effect(zoo_desc, rng, "atomic")
        dec = atomic_decomposition(p)
        assert len(dec) == 1 and norm(dec.atoms[0] - p) < 1e-12

    def test_unit_of_complex3(self):
        dec = atomic_decomposition(Element.unit("complex:3"), seed=2)
        assert len(dec) == 3
        assert dec.residual() < 1e-12 and dec.max_overlap() < 1e-12
        assert all(is_atomic(a) for a in dec.atoms)

    def test_unit_of_spin(self):
        dec = atomic_decomposition(Element.unit("spin:4"), seed=1)
        assert len(dec) == 2
        a, b = dec.atoms
        assert a.blocks[0][0] == pytest.approx(0.5) and b.blocks[0][0] == pytest.approx(0.5)
        np.testing.assert_allclose(a.blocks[0][1:], -b.blocks[0][1:], atol=1e-14)

    def test_frame_independent(self, zoo_desc, rng):
        p = random_effect(zoo_desc, rng, "sharp")
        assert len({rank_of(p, seed=s) for s in range(3)}) == 1


class TestCovering:
    def test_atom_below_gives_zero(self):
        p = Element.matrix("real", np.diag([1.0, 1.0, 0.0]))
        q = Element.matrix("real", np.diag([1.0, 0.0, 0.0]))
        assert covering_check(p, q).kind == "zero"

    def test_orthogonal_atom_returned_unchanged(self):
        p = Element.matrix("real", np.diag([1.0, 0.0, 0.0]))
        q = Element.matrix("real", np.diag([0.0, 0.0, 1.0]))
        res = covering_check(p, q)
        assert res.kind == "atom" and norm(res.witness - q) < 1e-12

    def test_generic_atom(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            p = random_effect("complex:3", rng, "sharp")
            q = random_effect("complex:3", rng, "atomic")
            res = covering_check(p, q)
            assert res.kind in ("zero", "atom")
            assert res.identity_residual < 1e-9

    def test_needs_atomic_second_argument(self):
        with pytest.raises(NotSharpError):
            covering_check(Element.zero("real:2"), Element.unit("real:2"))


@settings(max_examples=30, deadline=None)
@given(desc=st.sampled_from(ZOO), seed=st.integers(0, 2**32 - 1))
def test_compatible_sharp_product_is_meet(desc, seed):
    rng = np.random.default_rng(seed)
    frame = random_frame(desc, rng)
    pick = lambda: sum((f for f in frame if rng.random() < 0.5), Element.zero(desc))
    p, q = pick(), pick()
    assert norm(seq_prod(p, q) - meet(p, q).value) <= DEFAULT_TOL.eps(p.descriptor)


@settings(max_examples=30, deadline=None)
@given(desc=st.sampled_from(ZOO), seed=st.integers(0, 2**32 - 1))
def test_annihilation_passes_to_ceiling(desc, seed):
    rng = np.random.default_rng(seed)
    frame = random_frame(desc, rng)
    a = 0.7 * frame[0]
    b = random_effect(desc, rng) if len(frame) < 2 else 0.3 * frame[-1]
    if norm(seq_prod(a, b)) <= DEFAULT_TOL.eps(a.descriptor):
        assert norm(seq_prod(ceiling(a), b)) <= 10 * DEFAULT_TOL.eps(a.descriptor)
