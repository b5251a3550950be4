"""Spectral forms, functional calculus, sharpness, ceiling and floor."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqjordan import (
    DEFAULT_TOL,
    Element,
    NotAnEffectError,
    NotPositiveError,
    atomic_spectral,
    ceiling,
    classical_algebra_check,
    floor,
    inverse,
    is_atomic,
    is_sharp,
    jordan_mul,
    norm,
    power,
    random_effect,
    random_element,
    seq_prod,
    spectral_decompose,
    sqrt_effect,
)
from seqjordan.algebra import PROFILES
from seqjordan.spectral import jordan_rank_of_idempotent

from conftest import ZOO


def diag(kind, *values):
    return Element.matrix(kind, np.diag(values))


class TestSpectralDecompose:
    def test_unit_has_one_term(self, zoo_desc):
        form = spectral_decompose(Element.unit(zoo_desc))
        if "+" in zoo_desc:
            # the eigenvalue 1 of every summand merges into one cluster
            assert len(form) == 1
        assert form.lambdas == pytest.approx([1.0])
        assert norm(form.idempotents[0] - Element.unit(zoo_desc)) < 1e-14

    def test_spin_closed_form(self):
        v, t = np.array([0.3, -0.4, 1.2]), 0.2
        r = np.linalg.norm(v)
        form = spectral_decompose(Element.spin(v, t), keep_zero=True)
        got = sorted(zip(form.lambdas, form.idempotents), key=lambda x: x[0])
        expected = [(t - r, Element.spin(-v / r / 2, 0.5)), (t + r, Element.spin(v / r / 2, 0.5))]
        for (lam, p), (lam0, p0) in zip(got, expected):
            assert lam == pytest.approx(lam0, abs=1e-14)
            assert norm(p - p0) < 1e-14
            assert norm(jordan_mul(p, p) - p) < 1e-14
        assert norm(form.reconstruct() - Element.spin(v, t)) < 1e-14

    def test_near_degenerate_eigenvalues_cluster(self):
        a = diag("real", 0.5, 0.5 + 1e-12, 0.2)
        form = spectral_decompose(a)
        assert len(form) == 2
        by_value = dict(zip(np.round(form.lambdas, 6), form.idempotents))
        assert jordan_rank_of_idempotent(by_value[0.5]) == 2
        assert jordan_rank_of_idempotent(by_value[0.2]) == 1
        # oracle: the unclustered eigensolve
        w = np.linalg.eigvalsh(a.blocks[0])
        np.testing.assert_allclose(sorted(form.lambdas), [w[0], 0.5 * (w[1] + w[2])], atol=1e-15)

    def test_zero_terms_dropped_unless_kept(self):
        a = diag("complex", 0.0, 0.7)
        assert len(spectral_decompose(a)) == 1
        assert len(spectral_decompose(a, keep_zero=True)) == 2

    @pytest.mark.parametrize("profile", PROFILES)
    def test_reconstruction_and_orthogonality(self, zoo_desc, profile):
        a = random_effect(zoo_desc, np.random.default_rng(11), profile)
        form = spectral_decompose(a, keep_zero=True)
        assert norm(form.reconstruct() - a) <= DEFAULT_TOL.eps(a.descriptor, a)
        ps = form.idempotents
        for i, p in enumerate(ps):
            assert norm(jordan_mul(p, p) - p) < 1e-12
            for q in ps[i + 1 :]:
                assert norm(jordan_mul(p, q)) < 1e-12
        assert norm(sum(ps[1:], ps[0]) - Element.unit(zoo_desc)) < 1e-12

    def test_clusters_are_separated(self, zoo_desc, rng):
        form = spectral_decompose(random_effect(zoo_desc, rng, "degenerate"), keep_zero=True)
        lams = sorted(form.lambdas)
        assert all(b - a > DEFAULT_TOL.eig_cluster_gap for a, b in zip(lams, lams[1:]))

    def test_atomic_spectral_terms_are_atoms(self, zoo_desc, rng):
        a = random_effect(zoo_desc, rng, "degenerate")
        terms = atomic_spectral(a, keep_zero=True, rng=np.random.default_rng(1))
        assert len(terms) == a.descriptor.rank
        assert all(is_atomic(p) for _, p in terms)
        total = sum((lam * p for lam, p in terms[1:]), terms[0][0] * terms[0][1])
        assert norm(total - a) < 1e-9


class TestFunctionalCalculus:
    def test_sqrt_unit(self, zoo_desc):
        u = Element.unit(zoo_desc)
        assert norm(sqrt_effect(u) - u) < 1e-14

    def test_sqrt_squares_back(self, zoo_desc, rng):
        a = random_effect(zoo_desc, rng)
        r = sqrt_effect(a)
        assert norm(jordan_mul(r, r) - a) < 1e-12

    def test_sqrt_of_negative_raises(self):
        with pytest.raises(NotPositiveError):
            sqrt_effect(diag("real", 1.0, -0.5))

    def test_inverse_diagonal(self):
        assert norm(inverse(diag("real", 2.0, 4.0)) - diag("real", 0.5, 0.25)) < 1e-15

    def test_inverse_needs_strict_positivity(self):
        with pytest.raises(NotPositiveError):
            inverse(diag("complex", 1.0, 0.0))

    def test_power_matches_iterated_product(self, zoo_desc, rng):
        a = random_effect(zoo_desc, rng)
        assert norm(power(a, 2) - seq_prod(a, a)) <= DEFAULT_TOL.eps(a.descriptor, a)
        assert norm(power(a, 3) - seq_prod(a, seq_prod(a, a))) <= DEFAULT_TOL.eps(a.descriptor, a)
        assert norm(power(a, 0) - Element.unit(zoo_desc)) == 0.0

    def test_power_rejects_bad_exponent(self):
        with pytest.raises(ValueError):
            power(Element.unit("real:2"), -1)
        with pytest.raises(ValueError):
            power(Element.unit("real:2"), 1.5)


class TestSharpness:
    def test_unit_is_sharp_not_atomic(self):
        u = Element.unit("real:2")
        assert is_sharp(u) and not is_atomic(u)

    def test_rank_one_projection_is_atomic(self):
        v = np.array([1.0, 1j, -0.5]) / np.linalg.norm([1.0, 1.0, 0.5])
        p = Element.matrix("complex", np.outer(v, np.conj(v)))
        assert is_atomic(p)

    def test_half_projection_not_sharp(self):
        p = diag("complex", 1.0, 0.0)
        assert is_sharp(p) and not is_sharp(0.5 * p)

    def test_rank_two_projection_not_atomic(self):
        assert not is_atomic(diag("real", 1.0, 1.0, 0.0))

    def test_non_effect_rejected(self):
        with pytest.raises(NotAnEffectError):
            is_sharp(2.0 * Element.unit("real:2"))

    def test_profiles(self, zoo_desc, rng):
        assert is_sharp(random_effect(zoo_desc, rng, "sharp"))
        assert is_atomic(random_effect(zoo_desc, rng, "atomic"))


class TestCeilingFloor:
    def test_diagonal_example(self):
        a = diag("real", 0.3, 0.0, 0.9)
        assert norm(ceiling(a) - diag("real", 1.0, 0.0, 1.0)) < 1e-15
        assert norm(floor(a)) < 1e-15

    def test_sharp_is_fixed(self, zoo_desc, rng):
        p = random_effect(zoo_desc, rng, "sharp")
        assert norm(ceiling(p) - p) < 1e-12
        assert norm(floor(p) - p) < 1e-12

    def test_scale_invariant(self, zoo_desc, rng):
        a = random_effect(zoo_desc, rng, "boundary")
        for lam in (1.0, 0.5, 0.01):
            assert norm(ceiling(lam * a) - ceiling(a)) < 1e-12

    def test_duality(self, zoo_desc, rng):
        a = random_effect(zoo_desc, rng, "degenerate")
        assert norm(floor(a) - ceiling(a.complement()).complement()) < 1e-14

    def test_bounds(self, zoo_desc, rng):
        a = random_effect(zoo_desc, rng, "boundary")
        from seqjordan.algebra import order_violation

        assert order_violation(a, ceiling(a)) < 1e-12
        assert order_violation(floor(a), a) < 1e-12


class TestClassicalAlgebra:
    def test_unit_gives_dimension_one(self):
        rep = classical_algebra_check(Element.unit("complex:3"))
        assert rep.dim == 1 and rep.gram_rank == 1

    def test_dimension_counts_distinct_eigenvalues(self):
        rep = classical_algebra_check(diag("real", 0.1, 0.5, 0.5, 0.9))
        assert rep.dim == 3 and rep.gram_rank == 3

    def test_zero_eigenvalue_counts(self):
        assert classical_algebra_check(diag("real", 0.0, 0.6)).dim == 2

    def test_span_is_commutative_and_associative(self, zoo_desc, rng):
        a = random_effect(zoo_desc, rng)
        rep = classical_algebra_check(a, rng=np.random.default_rng(4))
        eps = DEFAULT_TOL.eps(a.descriptor)
        assert rep.max_commutator <= eps
        assert rep.max_associator <= eps


@settings(max_examples=30, deadline=None)
@given(desc=st.sampled_from(ZOO), seed=st.integers(0, 2**32 - 1), profile=st.sampled_from(PROFILES))
def test_ceiling_is_smallest_sharp_above(desc, seed, profile):
    rng = np.random.default_rng(seed)
    a = random_effect(desc, rng, profile)
    c = ceiling(a)
    assert is_sharp(c)
    # any sharp p above a is above ceil(a): p & c = c
    p = ceiling(0.5 * (c + random_effect(desc, rng, "sharp")))
    assert norm(seq_prod(p, c) - c) <= 10 * DEFAULT_TOL.eps(a.descriptor)


@settings(max_examples=30, deadline=None)
@given(desc=st.sampled_from(ZOO), seed=st.integers(0, 2**32 - 1))
def test_sqrt_is_positive_and_monotone_in_spectrum(desc, seed):
    a = random_element(desc, np.random.default_rng(seed))
    sq = jordan_mul(a, a)
    r = sqrt_effect(sq)
    from seqjordan import min_eigenvalue

    assert min_eigenvalue(r) >= -1e-12
    assert norm(jordan_mul(r, r) - sq) <= 1e-10 * max(1.0, norm(sq))
