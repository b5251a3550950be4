"""Pure states, transition probabilities and the self-dual inner form."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqjordan import (
    DEFAULT_TOL,
    Element,
    NotAtomicError,
    build_self_dual_inner,
    min_eigenvalue,
    norm,
    pure_state_of,
    random_effect,
    random_element,
    random_frame,
    reference_inner,
    transition_probability,
)
from seqjordan.duality import omega, pure_state_by_inner, spanning_atoms, trace_state

from conftest import ZOO


def projector(v):
    v = np.asarray(v, dtype=np.complex128)
    v = v / np.linalg.norm(v)
    return Element.matrix("complex", np.outer(v, np.conj(v))), v


class TestPureStates:
    def test_diagonal_example(self):
        p = Element.matrix("complex", np.diag([1.0, 0.0]))
        a = Element.matrix("complex", np.diag([0.37, 0.81]))
        assert pure_state_of(p)(a) == pytest.approx(0.37, abs=1e-14)

    def test_complement_has_zero_value(self, zoo_desc, rng):
        p = random_effect(zoo_desc, rng, "atomic")
        assert pure_state_of(p)(p.complement()) == pytest.approx(0.0, abs=1e-12)

    def test_constructions_agree(self, zoo_desc, rng):
        p = random_effect(zoo_desc, rng, "atomic")
        s1, s2 = pure_state_of(p), pure_state_by_inner(p)
        for _ in range(20):
            a = random_element(zoo_desc, rng)
            assert s1(a) == pytest.approx(s2(a), abs=DEFAULT_TOL.eps(a.descriptor, a))

    def test_is_a_state(self, zoo_desc, rng):
        p = random_effect(zoo_desc, rng, "atomic")
        probes = [random_effect(zoo_desc, rng) for _ in range(10)]
        assert pure_state_of(p).is_state(probes=probes)

    def test_requires_atom(self):
        with pytest.raises(NotAtomicError):
            pure_state_of(Element.unit("complex:2"))

    def test_trace_state_is_normalized(self, zoo_desc):
        assert trace_state(Element.unit(zoo_desc)) == pytest.approx(1.0)


class TestTransitionProbability:
    def test_self_is_one(self, zoo_desc, rng):
        p = random_effect(zoo_desc, rng, "atomic")
        assert transition_probability(p, p) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_is_zero(self, zoo_desc, rng):
        frame = random_frame(zoo_desc, rng)
        assert transition_probability(frame[0], frame[-1]) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_overlap_of_unit_vectors(self, n):
        rng = np.random.default_rng(n)
        p, u = projector(rng.normal(size=n) + 1j * rng.normal(size=n))
        q, v = projector(rng.normal(size=n) + 1j * rng.normal(size=n))
        assert transition_probability(p, q) == pytest.approx(abs(np.vdot(u, v)) ** 2, abs=1e-13)

    def test_symmetric(self, zoo_desc, rng):
        for _ in range(10):
            p, q = random_effect(zoo_desc, rng, "atomic"), random_effect(zoo_desc, rng, "atomic")
            assert transition_probability(p, q) == pytest.approx(transition_probability(q, p), abs=1e-12)


class TestSelfDualForm:
    def test_spanning_atoms(self, zoo_desc):
        atoms = spanning_atoms(zoo_desc)
        assert len(atoms) == len(Element.unit(zoo_desc).coords)
        mat = np.array([a.coords for a in atoms])
        assert np.linalg.matrix_rank(mat) == mat.shape[0]

    def test_gram_positive_definite_and_symmetric(self, zoo_desc):
        form = build_self_dual_inner(zoo_desc)
        assert form.gram_min_eigenvalue > 1e-8
        assert form.gram_asymmetry < 1e-12

    def test_atoms_have_unit_square(self, zoo_desc, rng):
        form = build_self_dual_inner(zoo_desc)
        p = random_effect(zoo_desc, rng, "atomic")
        assert form(p, p) == pytest.approx(1.0, abs=1e-12)

    def test_equals_reference(self, zoo_desc, rng):
        form = build_self_dual_inner(zoo_desc)
        for _ in range(5):
            a, b = random_element(zoo_desc, rng), random_element(zoo_desc, rng)
            eps = DEFAULT_TOL.eps(a.descriptor, a, b)
            assert form(a, b) == pytest.approx(reference_inner(a, b), abs=eps)
            assert form.double_expansion(a, b) == pytest.approx(form(b, a), abs=eps)

    def test_square_is_sum_of_squared_eigenvalues(self, zoo_desc, rng):
        form = build_self_dual_inner(zoo_desc)
        a = random_element(zoo_desc, rng)
        from seqjordan import eigenvalues

        assert form(a, a) == pytest.approx(float(np.sum(eigenvalues(a) ** 2)), abs=1e-10)

    def test_frame_pairings_recover_eigenvalues(self, zoo_desc, rng):
        form = build_self_dual_inner(zoo_desc)
        for lam, val in form.frame_pairings(random_element(zoo_desc, rng)):
            assert val == pytest.approx(lam, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(desc=st.sampled_from(ZOO), seed=st.integers(0, 2**32 - 1))
def test_cone_is_self_dual(desc, seed):
    # positive pairs pair non-negatively; a non-positive x is detected by an atom
    rng = np.random.default_rng(seed)
    form = build_self_dual_inner(desc)
    a, b = random_effect(desc, rng), random_effect(desc, rng)
    assert form(a, b) >= -DEFAULT_TOL.eps(a.descriptor)
    x = random_element(desc, rng)
    if min_eigenvalue(x) < -1e-6:
        from seqjordan import atomic_spectral

        lam, p = min(atomic_spectral(x, keep_zero=True), key=lambda t: t[0])
        assert form(x, p) < 0
        assert omega(p, x) == pytest.approx(lam, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(desc=st.sampled_from(ZOO), seed=st.integers(0, 2**32 - 1))
def test_transition_probability_in_unit_interval(desc, seed):
    rng = np.random.default_rng(seed)
    p, q = random_effect(desc, rng, "atomic"), random_effect(desc, rng, "atomic")
    t = transition_probability(p, q)
    assert -1e-12 <= t <= 1 + 1e-12
    assert t == pytest.approx(reference_inner(p, q), abs=1e-12)
    assert norm(p) == pytest.approx(1.0)
