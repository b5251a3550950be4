"""Sequential products on Euclidean Jordan algebras.

The package implements ``a & b = Q_{sqrt a}(b)`` on direct sums of real,
complex and quaternionic hermitian matrices and spin factors, the spectral
and lattice machinery built on it, the reconstruction of the Jordan product
from it, and a seeded property-suite engine that checks all of it.
"""
from .algebra import (
    DEFAULT_TOL,
    AlgebraDescriptor,
    DescriptorError,
    DescriptorMismatch,
    Element,
    NotPositiveError,
    SimpleFactor,
    Tolerances,
    basis,
    eigenvalues,
    is_effect,
    is_positive,
    jordan_mul,
    min_eigenvalue,
    norm,
    order_unit_norm,
    parse_descriptor,
    random_effect,
    random_element,
    random_frame,
    random_strictly_positive,
    reference_inner,
)
from .duality import (
    NotAtomicError,
    SelfDualForm,
    StateFunctional,
    build_self_dual_inner,
    pure_state_of,
    transition_probability,
)
from .lattice import (
    AtomicDecomposition,
    NotSharpError,
    SharpEffect,
    atomic_decomposition,
    covering_check,
    join,
    meet,
    orthogonal,
    rank_of,
)
from .loctom import (
    SimpleEjaRow,
    explicit_tensor_checks,
    is_locally_tomographic_self_composite,
    simple_ejas_of_rank,
    square_composite_exists,
)
from .reconstruct import (
    ReconstructedProduct,
    atom_jordan,
    reconstructed_mul,
    t_operator,
    verify_T_commutation,
)
from .seqprod import (
    LeftMultMap,
    compatibility_defect,
    homogeneity_iso,
    is_compatible,
    left_mult_map,
    seq_prod,
)
from .spectral import (
    NotAnEffectError,
    SpectralForm,
    atomic_spectral,
    ceiling,
    classical_algebra_check,
    floor,
    inverse,
    is_atomic,
    is_sharp,
    power,
    spectral_decompose,
    sqrt_effect,
)
from .verify import CATALOG, DEFAULT_ZOO, VerificationReport, run_all, run_suite

__version__ = "0.1.0"
