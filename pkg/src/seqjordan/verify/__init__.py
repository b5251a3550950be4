"""Property-suite engine: named predicates, seeded sampling and JSON reports."""
from .engine import (
    CATALOG,
    DEFAULT_ZOO,
    EVALUATION_ERROR,
    Predicate,
    Suite,
    SuiteCatalog,
    UnknownSuiteError,
    VerificationReport,
    merge_reports,
    run_all,
    run_suite,
    sample_rng,
)
from . import suites  # noqa: F401  (fills the catalog)

__all__ = [
    "CATALOG",
    "DEFAULT_ZOO",
    "EVALUATION_ERROR",
    "Predicate",
    "Suite",
    "SuiteCatalog",
    "UnknownSuiteError",
    "VerificationReport",
    "merge_reports",
    "run_all",
    "run_suite",
    "sample_rng",
]
