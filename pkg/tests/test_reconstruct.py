"""Rebuilding the Jordan product from the sequential product."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqjordan import (
    DEFAULT_TOL,
    Element,
    NotAtomicError,
    ReconstructedProduct,
    atom_jordan,
    jordan_mul,
    join,
    norm,
    order_unit_norm,
    random_effect,
    random_element,
    random_frame,
    reconstructed_mul,
    reference_inner,
    seq_prod,
    t_operator,
    transition_probability,
    verify_T_commutation,
)
from seqjordan.reconstruct import (
    adjoint_commutator,
    atom_operator,
    positive_negative_parts,
    square_via_parts,
    t_operator_columns,
)

from conftest import ZOO


def threshold(a, b):
    dim = len(a.coords)
    na, nb = order_unit_norm(a), order_unit_norm(b)
    return 1e-8 * dim * max(1.0, na, nb, na * nb)


class TestAtomProduct:
    def test_unit_argument(self, zoo_desc, rng):
        p = random_effect(zoo_desc, rng, "atomic")
        assert norm(atom_jordan(p, Element.unit(zoo_desc)) - p) < 1e-13

    def test_idempotent(self, zoo_desc, rng):
        p = random_effect(zoo_desc, rng, "atomic")
        assert norm(atom_jordan(p, p) - p) < 1e-13

    def test_orthogonal_atoms_annihilate(self, zoo_desc, rng):
        frame = random_frame(zoo_desc, rng)
        assert norm(atom_jordan(frame[0], frame[-1])) < 1e-13

    def test_closed_form_for_two_atoms(self, zoo_desc, rng):
        p, q = random_effect(zoo_desc, rng, "atomic"), random_effect(zoo_desc, rng, "atomic")
        pc = join(p, q).value - p
        rhs = q + transition_probability(p, q) * p
        if norm(pc) > 1e-9:
            rhs = rhs - transition_probability(pc, q) * pc
        assert norm(2.0 * atom_jordan(p, q) - rhs) < 1e-10

    def test_symmetric_closed_form(self, zoo_desc, rng):
        # 2(p*q) = p + q - (1 - <p,q>)(p v q)
        p, q = random_effect(zoo_desc, rng, "atomic"), random_effect(zoo_desc, rng, "atomic")
        rhs = p + q - (1.0 - transition_probability(p, q)) * join(p, q).value
        assert norm(2.0 * atom_jordan(p, q) - rhs) < 1e-10
        assert norm(atom_jordan(p, q) - atom_jordan(q, p)) < 1e-12

    def test_requires_atom(self):
        with pytest.raises(NotAtomicError):
            atom_jordan(Element.unit("real:2"), Element.unit("real:2"))

    def test_operator_matches_pointwise(self, zoo_desc, rng):
        p, b = random_effect(zoo_desc, rng, "atomic"), random_element(zoo_desc, rng)
        np.testing.assert_allclose(atom_operator(p) @ b.coords, atom_jordan(p, b).coords, atol=1e-13)


class TestReconstructedProduct:
    def test_matches_jordan_product(self, zoo_desc, rng):
        for _ in range(10):
            a, b = random_element(zoo_desc, rng), random_element(zoo_desc, rng)
            assert norm(reconstructed_mul(a, b) - jordan_mul(a, b)) <= threshold(a, b)

    def test_unit_is_neutral(self, zoo_desc, rng):
        b = random_element(zoo_desc, rng)
        assert norm(reconstructed_mul(Element.unit(zoo_desc), b) - b) < 1e-12

    def test_frame_independent(self, zoo_desc, rng):
        a, b = random_effect(zoo_desc, rng, "degenerate"), random_element(zoo_desc, rng)
        x = reconstructed_mul(a, b, rng=np.random.default_rng(1))
        y = reconstructed_mul(a, b, rng=np.random.default_rng(2))
        assert norm(x - y) <= 2 * threshold(a, b)

    def test_associative_with_form(self, zoo_desc, rng):
        a, b, c = (random_element(zoo_desc, rng) for _ in range(3))
        lhs = reference_inner(reconstructed_mul(a, b), c)
        rhs = reference_inner(b, reconstructed_mul(a, c))
        assert lhs == pytest.approx(rhs, abs=threshold(a, b) * max(1.0, order_unit_norm(c)))

    def test_wrapper(self, rng):
        mul = ReconstructedProduct("spin:3")
        a, b = random_element("spin:3", rng), random_element("spin:3", rng)
        assert norm(mul(a, b) - reconstructed_mul(a, b)) == 0.0

    def test_square_via_positive_negative_parts(self, zoo_desc, rng):
        a = random_element(zoo_desc, rng)
        plus, minus = positive_negative_parts(a)
        assert norm(plus - minus - a) < 1e-12
        assert norm(seq_prod(plus, minus)) < 1e-12
        assert norm(square_via_parts(a) - jordan_mul(a, a)) < 1e-11

    def test_formally_real(self, zoo_desc, rng):
        xs = [random_element(zoo_desc, rng) for _ in range(3)]
        total = sum((reconstructed_mul(x, x) for x in xs[1:]), reconstructed_mul(xs[0], xs[0]))
        assert reference_inner(total, Element.unit(zoo_desc)) > 0


class TestTOperator:
    def test_unit_gives_identity(self, zoo_desc):
        m = t_operator(Element.unit(zoo_desc))
        np.testing.assert_allclose(m, np.eye(m.shape[0]), atol=1e-13)

    def test_columns_agree(self, rng):
        a = random_element("complex:2+spin:3", rng)
        np.testing.assert_allclose(t_operator(a), t_operator_columns(a), atol=1e-12)

    def test_commuting_diagonal(self):
        a = Element.matrix("real", np.diag([0.2, 0.5, 0.9]))
        b = Element.matrix("real", np.diag([0.7, 0.1, 0.4]))
        rep = verify_T_commutation(a, b)
        assert rep.commutator <= DEFAULT_TOL.eps(a.descriptor) * rep.scale

    def test_jordan_identity(self, zoo_desc, rng):
        a = random_element(zoo_desc, rng)
        rep = verify_T_commutation(a, a)
        assert rep.jordan_identity <= DEFAULT_TOL.eps(a.descriptor) * rep.scale

    def test_noncommuting_elements_detected(self, rng):
        a, b = random_element("complex:3", rng), random_element("complex:3", rng)
        assert verify_T_commutation(a, b).commutator > 1e-3

    def test_left_multiplication_is_normal(self, zoo_desc, rng):
        assert adjoint_commutator(random_effect(zoo_desc, rng)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(desc=st.sampled_from(ZOO), seed=st.integers(0, 2**32 - 1))
def test_reconstruction_property(desc, seed):
    rng = np.random.default_rng(seed)
    a, b = random_element(desc, rng, scale=3.0), random_element(desc, rng)
    assert norm(reconstructed_mul(a, b) - jordan_mul(a, b)) <= threshold(a, b)
    assert norm(reconstructed_mul(a, b) - reconstructed_mul(b, a)) <= 2 * threshold(a, b)
