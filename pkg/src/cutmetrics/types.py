"""Result containers shared by the graph, measure, distance, and oracle modules.

Vertex ids are 1-based everywhere in the public API; matrices are plain
``numpy.ndarray`` objects whose row/column ``i - 1`` corresponds to vertex
``i``.  All containers are immutable carriers: validity properties such as
the triangle inequality are established by the explicit checker functions,
not assumed at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericError

MEASURE_KINDS = ("path", "reliability", "forest", "walk")


@dataclass(frozen=True)
class Violation:
    """One failed triple comparison.

    ``lhs``/``rhs`` are the two compared quantities (their meaning depends on
    the check that produced the violation) and ``expected_equal`` records
    whether the cutpoint oracle demanded equality for the triple.
    """

    i: int
    j: int
    k: int
    lhs: float
    rhs: float
    expected_equal: bool


@dataclass(frozen=True)
class ValidationReport:
    """Pass/fail evidence for a structural check."""

    passed: bool
    violations: tuple[Violation, ...] = ()

    def __post_init__(self) -> None:
        if self.passed != (len(self.violations) == 0):
            raise ValueError("passed flag inconsistent with violation list")


@dataclass(frozen=True, eq=False)
class TransitionalMeasure:
    """A positive symmetric matrix of vertex-to-vertex accessibility values."""

    kind: str
    matrix: np.ndarray
    params: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in MEASURE_KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}")
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("measure matrix must be square")
        if not np.all(np.isfinite(m)) or not np.all(m > 0.0):
            raise NumericError(f"{self.kind} measure has non-positive or non-finite entries")
        if not np.allclose(m, m.T, rtol=1e-9, atol=1e-12):
            raise NumericError(f"{self.kind} measure is not symmetric")
        if self.kind in ("path", "reliability") and not np.all(np.diag(m) == 1.0):
            raise NumericError(f"{self.kind} measure must have unit diagonal")

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """A square matrix of pairwise values tagged with its metric provenance.

    Construction checks only shape and finiteness; symmetry, zero diagonal,
    and the triangle inequality are verified by ``check_metric_axioms`` so
    that deliberately broken candidates can be fed to the checkers.
    """

    values: np.ndarray
    metric: str
    params: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        v = self.values
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.all(np.isfinite(v)):
            raise NumericError(f"{self.metric} distance has non-finite entries")

    @property
    def order(self) -> int:
        return self.values.shape[0]

    def value(self, u: int, v: int) -> float:
        """Distance between vertices ``u`` and ``v`` (1-based ids)."""
        if not (1 <= u <= self.order and 1 <= v <= self.order):
            raise IndexError(f"vertex pair ({u}, {v}) out of range 1..{self.order}")
        return float(self.values[u - 1, v - 1])


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Spectral radius and Perron vector of a weighted adjacency matrix.

    The Perron vector is strictly positive and normalized to sum 1.
    """

    rho: float
    perron: np.ndarray


@dataclass(frozen=True)
class Path:
    """A simple path: distinct vertices joined by explicit edge instances."""

    vertices: tuple[int, ...]
    edge_indices: tuple[int, ...]
    length: int
    weight: float


@dataclass(frozen=True, eq=False)
class RootedForestSummary:
    """Aggregate weights of the spanning rooted forests of a multigraph.

    ``weights[i - 1, j - 1]`` totals the forests in which vertex ``i`` lies
    in the tree rooted at ``j``; ``total_weight`` totals all rooted forests.
    """

    total_weight: float
    weights: np.ndarray
