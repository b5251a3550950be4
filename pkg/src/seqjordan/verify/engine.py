"""Suite registry, per-sample bookkeeping and report assembly."""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from ..algebra import DEFAULT_TOL, AlgebraDescriptor, Element, Tolerances, parse_descriptor

DEFAULT_ZOO = (
    "real:2",
    "real:3",
    "complex:2",
    "complex:3",
    "quat:2",
    "spin:3",
    "spin:5",
    "complex:2+spin:3",
)

# predicate recorded when a sample raises instead of returning numbers
EVALUATION_ERROR = "evaluation-error"


class UnknownSuiteError(KeyError):
    pass


@dataclass(frozen=True)
class Predicate:
    """One named check.

    ``tier`` says which threshold applies: ``eps`` (equality), ``eps_prime``
    (consequent of an implication, 10 eps), ``fixed`` (threshold stated by the
    check itself), ``boolean`` or ``report`` (recorded, never asserted).
    """

    name: str
    anchor: str
    arity: int = 1
    profiles: tuple[str, ...] = ("generic",)
    tier: str = "eps"


@dataclass(frozen=True)
class Suite:
    name: str
    summary: str
    predicates: tuple[Predicate, ...]
    sample: Callable[["SuiteContext", int, np.random.Generator, "Recorder"], None]
    setup: Callable[["SuiteContext", "Recorder"], None] | None = None

    def predicate(self, name: str) -> Predicate:
        for p in self.predicates:
            if p.name == name:
                return p
        raise KeyError(f"suite {self.name!r} has no predicate {name!r}")

    @property
    def anchors(self) -> list[str]:
        return [p.anchor for p in self.predicates]


class SuiteCatalog:
    """Ordered registry of suites."""

    def __init__(self):
        self._suites: dict[str, Suite] = {}

    def register(self, suite: Suite) -> Suite:
        if suite.name in self._suites:
            raise ValueError(f"suite {suite.name!r} registered twice")
        names = [p.name for p in suite.predicates]
        if len(set(names)) != len(names):
            raise ValueError(f"suite {suite.name!r} repeats a predicate name")
        for p in suite.predicates:
            if not p.anchor.strip():
                raise ValueError(f"predicate {p.name!r} has no anchor")
        self._suites[suite.name] = suite
        return suite

    def get(self, name: str) -> Suite:
        try:
            return self._suites[name]
        except KeyError:
            known = ", ".join(self._suites)
            raise UnknownSuiteError(f"unknown suite {name!r}; known suites: {known}") from None

    def names(self) -> list[str]:
        return list(self._suites)

    def __iter__(self):
        return iter(self._suites.values())

    def __len__(self) -> int:
        return len(self._suites)


CATALOG = SuiteCatalog()


@dataclass
class SuiteContext:
    descriptor: AlgebraDescriptor
    tol: Tolerances
    seed: int
    samples: int
    cache: dict = field(default_factory=dict)

    def eps(self, *operands) -> float:
        return self.tol.eps(self.descriptor, *operands)

    def eps_prime(self, *operands) -> float:
        return 10.0 * self.eps(*operands)

    def cached(self, key: str, build: Callable[[], object]):
        if key not in self.cache:
            self.cache[key] = build()
        return self.cache[key]


def _serialize_input(value):
    if isinstance(value, Element):
        return value.to_hex()
    if isinstance(value, (list, tuple)):
        return [_serialize_input(v) for v in value]
    if isinstance(value, (float, np.floating)):
        return float(value).hex()
    if isinstance(value, (int, np.integer)):
        return int(value)
    return str(value)


def _finite(x: float):
    x = float(x)
    return x if math.isfinite(x) else repr(x)


class Recorder:
    """Collects check outcomes for one suite run in sample order."""

    def __init__(self, suite: Suite):
        self.suite = suite
        self.failures: list[dict] = []
        self.maxima: dict[str, float] = {}
        self.counts: dict[str, int] = {}

    def _note(self, name: str, value: float):
        self.suite.predicate(name)
        self.counts[name] = self.counts.get(name, 0) + 1
        prev = self.maxima.get(name)
        if prev is None or not (value <= prev):
            self.maxima[name] = value

    def check(self, name: str, value: float, threshold: float, **inputs) -> bool:
        """Record ``value``; it is a failure unless ``value <= threshold``."""
        value = float(value)
        self._note(name, value)
        if value <= threshold:
            return True
        self._fail(name, value, inputs)
        return False

    def require(self, name: str, ok: bool, **inputs) -> bool:
        """Boolean predicate; a failure is recorded with violation 1."""
        self._note(name, 0.0 if ok else 1.0)
        if not ok:
            self._fail(name, 1.0, inputs)
        return bool(ok)

    def metric(self, name: str, value: float):
        """Reported, never asserted."""
        self._note(name, float(value))

    def error(self, sample: int, exc: BaseException):
        self.counts[EVALUATION_ERROR] = self.counts.get(EVALUATION_ERROR, 0) + 1
        self.maxima[EVALUATION_ERROR] = 1.0
        self.failures.append(
            {
                "predicate": EVALUATION_ERROR,
                "inputs": {"sample": sample, "error": f"{type(exc).__name__}: {exc}"},
                "violation": 1.0,
            }
        )

    def _fail(self, name: str, value: float, inputs: dict):
        self.failures.append(
            {
                "predicate": name,
                "inputs": {k: _serialize_input(v) for k, v in inputs.items()},
                "violation": _finite(value),
            }
        )

    def metrics(self) -> dict:
        out = {}
        for p in self.suite.predicates:
            if p.name in self.counts:
                out[p.name] = {"max": _finite(self.maxima[p.name]), "count": self.counts[p.name]}
        if EVALUATION_ERROR in self.counts:
            out[EVALUATION_ERROR] = {"max": 1.0, "count": self.counts[EVALUATION_ERROR]}
        return out


@dataclass
class VerificationReport:
    """Outcome of one suite on one algebra."""

    suite: str
    algebra: str
    seed: int
    samples: int
    failures: list[dict]
    elapsed_s: float
    vacuous: bool = False
    metrics: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_elapsed: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "algebra": self.algebra,
            "seed": self.seed,
            "samples": self.samples,
            "pass": self.passed,
            "failures": self.failures,
        }
        if include_elapsed:
            out["elapsed_s"] = round(self.elapsed_s, 6)
        out["vacuous"] = self.vacuous
        out["tolerances"] = self.tolerances
        out["metrics"] = self.metrics
        out.update(self.extra)
        return out

    def to_json(self, include_elapsed: bool = True, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(include_elapsed), indent=indent)

    def max_value(self, predicate: str) -> float | None:
        entry = self.metrics.get(predicate)
        return None if entry is None else entry["max"]


def sample_rng(seed: int, k: int) -> np.random.Generator:
    """Independent stream for sample ``k`` derived from ``(seed, k)`` only."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(k),)))


def _as_tolerances(tolerances) -> Tolerances:
    if tolerances is None:
        return DEFAULT_TOL
    if isinstance(tolerances, Tolerances):
        return tolerances
    if isinstance(tolerances, dict):
        return DEFAULT_TOL.with_overrides(**tolerances)
    raise TypeError("tolerances must be a Tolerances, a dict of overrides or None")


def run_suite(name: str, descriptor, samples: int, seed: int = 0, tolerances=None) -> VerificationReport:
    """Run one suite; the result depends only on the arguments."""
    from . import suites  # noqa: F401  (registers the catalog)

    suite = CATALOG.get(name)
    desc = parse_descriptor(descriptor)
    tol = _as_tolerances(tolerances)
    if int(samples) != samples or samples < 0:
        raise ValueError("samples must be a natural number")
    if int(seed) != seed or seed < 0:
        raise ValueError("seed must be a natural number")
    samples, seed = int(samples), int(seed)
    ctx = SuiteContext(desc, tol, seed, samples)
    rec = Recorder(suite)
    start = time.perf_counter()
    if samples > 0:
        if suite.setup is not None:
            try:
                suite.setup(ctx, rec)
            except Exception as exc:  # surfaced in the report, never swallowed
                rec.error(-1, exc)
        for k in range(samples):
            try:
                suite.sample(ctx, k, sample_rng(seed, k), rec)
            except Exception as exc:
                rec.error(k, exc)
    elapsed = time.perf_counter() - start
    return VerificationReport(
        suite=suite.name,
        algebra=str(desc),
        seed=seed,
        samples=samples,
        failures=rec.failures,
        elapsed_s=elapsed,
        vacuous=samples == 0,
        metrics=rec.metrics(),
        tolerances={
            "eq_tol": tol.eq_tol,
            "eig_cluster_gap": tol.eig_cluster_gap,
            "zero_cutoff": tol.zero_cutoff,
        },
    )


def run_all(
    descriptors: Iterable | None = None,
    samples: int = 100,
    seed: int = 0,
    tolerances=None,
    suites: Iterable[str] | None = None,
) -> list[VerificationReport]:
    """Every catalog suite on every descriptor (default zoo when ``None``)."""
    from . import suites as _registered  # noqa: F401

    descs = DEFAULT_ZOO if descriptors is None else list(descriptors)
    names = CATALOG.names() if suites is None else list(suites)
    return [run_suite(n, d, samples, seed, tolerances) for d in descs for n in names]


def merge_reports(reports: list[VerificationReport], suite: str = "all") -> VerificationReport:
    """Fold several reports on one algebra into a single document."""
    if not reports:
        raise ValueError("nothing to merge")
    failures, metrics = [], {}
    for r in reports:
        for f in r.failures:
            failures.append({**f, "predicate": f"{r.suite}/{f['predicate']}"})
        for k, v in r.metrics.items():
            metrics[f"{r.suite}/{k}"] = v
    first = reports[0]
    return VerificationReport(
        suite=suite,
        algebra=first.algebra,
        seed=first.seed,
        samples=first.samples,
        failures=failures,
        elapsed_s=sum(r.elapsed_s for r in reports),
        vacuous=all(r.vacuous for r in reports),
        metrics=metrics,
        tolerances=first.tolerances,
    )
