"""The Jordan product rebuilt from the sequential product alone.

For an atom ``p`` the product is ``p * b = (b + p & b - p' & b)/2``; general
elements are handled by expanding both factors in atomic spectral forms.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import DEFAULT_TOL, Element, Tolerances, basis
from .duality import NotAtomicError
from .seqprod import left_mult_map, seq_prod
from .spectral import atomic_spectral, is_atomic


def atom_jordan(p: Element, b: Element, tol: Tolerances = DEFAULT_TOL, check: bool = True) -> Element:
    """``p * b = (id + L_p - L_{p'}) b / 2`` for an atomic ``p``."""
    if check and not is_atomic(p, tol):
        raise NotAtomicError("atom_jordan needs an atomic first argument")
    return 0.5 * (b + seq_prod(p, b, tol) - seq_prod(p.complement(), b, tol))


def _pairwise_sum(items: list[Element], zero: Element) -> Element:
    # fixed reduction tree keeps summation order independent of evaluation order
    if not items:
        return zero
    while len(items) > 1:
        nxt = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def reconstructed_mul(
    a: Element,
    b: Element,
    tol: Tolerances = DEFAULT_TOL,
    rng: np.random.Generator | None = None,
) -> Element:
    """``a * b = sum_ij lambda_i mu_j p_i * q_j`` over atomic spectral forms."""
    ta = atomic_spectral(a, tol, keep_zero=True, rng=rng)
    tb = atomic_spectral(b, tol, keep_zero=True, rng=rng)
    terms = [
        (la * mb) * atom_jordan(p, q, tol, check=False)
        for la, p in ta
        for mb, q in tb
        if la != 0.0 and mb != 0.0
    ]
    return _pairwise_sum(terms, Element.zero(a.descriptor))


@dataclass(frozen=True)
class ReconstructedProduct:
    """Callable wrapper binding a tolerance set (and optionally a frame rng)."""

    descriptor: object
    tol: Tolerances = DEFAULT_TOL

    def __call__(self, a: Element, b: Element, rng=None) -> Element:
        return reconstructed_mul(a, b, self.tol, rng)


def atom_operator(p: Element, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Matrix of ``b -> p * b`` for an atom ``p``."""
    lp = left_mult_map(p, tol).matrix
    lq = left_mult_map(p.complement(), tol).matrix
    return 0.5 * (np.eye(lp.shape[0]) + lp - lq)


def t_operator(a: Element, tol: Tolerances = DEFAULT_TOL, rng=None) -> np.ndarray:
    """Matrix of ``T_a: b -> a * b`` built as ``sum_i lambda_i T_{p_i}``."""
    desc = a.descriptor
    mat = np.zeros((desc.dim, desc.dim))
    for lam, p in atomic_spectral(a, tol, keep_zero=True, rng=rng):
        if lam != 0.0:
            mat = mat + lam * atom_operator(p, tol)
    return mat


def t_operator_columns(a: Element, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """``T_a`` tabulated column by column through :func:`reconstructed_mul`."""
    return np.array([reconstructed_mul(a, e, tol).coords for e in basis(a.descriptor)]).T


@dataclass
class TCommutationReport:
    commutator: float
    jordan_identity: float
    scale: float


def _opnorm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, 2))


def verify_T_commutation(a: Element, b: Element, tol: Tolerances = DEFAULT_TOL) -> TCommutationReport:
    """Operator norms of ``[T_a, T_b]`` and ``[T_a, T_{a*a}]``."""
    ta = t_operator(a, tol)
    tb = t_operator(b, tol)
    aa = reconstructed_mul(a, a, tol)
    taa = t_operator(aa, tol)
    scale = max(1.0, _opnorm(ta), _opnorm(tb), _opnorm(taa))
    return TCommutationReport(
        commutator=_opnorm(ta @ tb - tb @ ta),
        jordan_identity=_opnorm(ta @ taa - taa @ ta),
        scale=scale,
    )


def positive_negative_parts(a: Element, tol: Tolerances = DEFAULT_TOL) -> tuple[Element, Element]:
    """``a = a+ - a-`` with orthogonal positive parts; eigenvalues within ``zero_cutoff`` go to neither."""
    plus = Element.zero(a.descriptor)
    minus = Element.zero(a.descriptor)
    for lam, p in atomic_spectral(a, tol):
        if lam > tol.zero_cutoff:
            plus = plus + lam * p
        elif lam < -tol.zero_cutoff:
            minus = minus + (-lam) * p
    return plus, minus


def square_via_parts(a: Element, tol: Tolerances = DEFAULT_TOL) -> Element:
    """``a+ & a - a- & a``."""
    plus, minus = positive_negative_parts(a, tol)
    return seq_prod(plus, a, tol) - seq_prod(minus, a, tol)


def adjoint_commutator(a: Element, tol: Tolerances = DEFAULT_TOL) -> float:
    """``|L_a L_a* - L_a* L_a|`` with adjoints taken for the reference form."""
    la = left_mult_map(a, tol).matrix
    return _opnorm(la @ la.T - la.T @ la)
