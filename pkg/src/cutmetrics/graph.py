"""Connected weighted multigraphs: parsing, matrices, and the cutpoint oracle.

A graph is a frozen value object with 1-based vertex ids.  Parallel edges
and loops are kept as distinct edge instances; connectivity (ignoring
loops) is enforced at construction because every downstream computation
assumes it.  Loops contribute to the adjacency diagonal but cancel out of
the Laplacian.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import GraphInputError
from .types import DistanceMatrix

__all__ = [
    "Graph",
    "parse_graph",
    "adjacency_matrix",
    "laplacian",
    "is_cutpoint_between",
    "shortest_path_lengths",
]


@dataclass(frozen=True)
class Graph:
    """Connected weighted multigraph with vertices ``1..n``.

    ``edges`` is a sequence of ``(u, v, w)`` triples with ``w > 0``;
    repeated ``(u, v)`` pairs are parallel edges and ``u == v`` is a loop.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n <= 1:
            raise GraphInputError(f"vertex count must be an integer > 1, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        canonical = []
        for u, v, w in self.edges:
            if int(u) != u or int(v) != v:
                raise GraphInputError(f"vertex ids must be integers, got ({u!r}, {v!r})")
            u, v = int(u), int(v)
            w = float(w)
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphInputError(f"vertex id out of range 1..{self.n}: edge ({u}, {v})")
            if not (w > 0.0) or not np.isfinite(w):
                raise GraphInputError(f"edge ({u}, {v}) has non-positive weight {w!r}")
            canonical.append((u, v, w))
        object.__setattr__(self, "edges", tuple(canonical))
        unreached = self._unreachable_from(1)
        if unreached:
            raise GraphInputError(
                f"graph is disconnected: vertex {min(unreached)} unreachable from vertex 1"
            )

    def neighbor_sets(self) -> list[set[int]]:
        """Adjacency sets indexed 1..n (index 0 unused); loops omitted."""
        adj: list[set[int]] = [set() for _ in range(self.n + 1)]
        for u, v, _ in self.edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return adj

    def _unreachable_from(self, start: int, removed: int | None = None) -> set[int]:
        adj = self.neighbor_sets()
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y != removed and y not in seen:
                    seen.add(y)
                    queue.append(y)
        vertices = set(range(1, self.n + 1))
        if removed is not None:
            vertices.discard(removed)
        return vertices - seen


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document into a :class:`Graph`.

    Format: ``#`` lines and blank lines are ignored; the first significant
    line is the vertex count ``n``; every following significant line is
    ``u v w`` with 1-based integer ids and a decimal weight ``w > 0``.
    Repeated ``u v`` lines are parallel edges, ``u u w`` is a loop.

    Raises :class:`GraphInputError` with the offending line number on
    syntax errors, and without one when the graph is disconnected.
    """
    n: int | None = None
    edges: list[tuple[int, int, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise GraphInputError(f"line {lineno}: expected vertex count, got {line!r}") from None
            if n <= 1:
                raise GraphInputError(f"line {lineno}: vertex count must exceed 1, got {n}")
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphInputError(f"line {lineno}: expected 'u v w', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise GraphInputError(f"line {lineno}: expected 'u v w', got {line!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphInputError(f"line {lineno}: vertex id out of range 1..{n}")
        if not (w > 0.0):
            raise GraphInputError(f"line {lineno}: weight must be positive, got {parts[2]}")
        edges.append((u, v, w))
    if n is None:
        raise GraphInputError("empty document: vertex count line missing")
    return Graph(n, tuple(edges))


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Symmetric weighted adjacency matrix; parallel weights are summed,
    loop weights land on the diagonal."""
    a = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        if u == v:
            a[u - 1, u - 1] += w
        else:
            a[u - 1, v - 1] += w
            a[v - 1, u - 1] += w
    return a


def laplacian(g: Graph) -> np.ndarray:
    """Weighted Laplacian ``diag(A 1) - A``; loops cancel out."""
    a = adjacency_matrix(g)
    return np.diag(a.sum(axis=1)) - a


def is_cutpoint_between(g: Graph, j: int, i: int, k: int) -> bool:
    """True iff every path from ``i`` to ``k`` visits ``j``.

    Endpoints contain themselves, so ``j == i`` or ``j == k`` is True.
    Otherwise ``j`` is removed and ``k`` must become unreachable from ``i``.
    """
    for v in (i, j, k):
        if not (1 <= v <= g.n):
            raise GraphInputError(f"vertex id out of range 1..{g.n}: {v}")
    if j == i or j == k:
        return True
    return k in g._unreachable_from(i, removed=j)


def cutpoint_table(g: Graph) -> list[list[list[bool]]]:
    """Precomputed ``table[j][i][k] = is_cutpoint_between(g, j, i, k)``.

    Indexed with 1-based ids (index 0 unused).  One vertex-removal sweep
    per ``j`` instead of one per triple.
    """
    size = g.n + 1
    table = [[[False] * size for _ in range(size)] for _ in range(size)]
    for j in range(1, size):
        labels = _component_labels(g, removed=j)
        for i in range(1, size):
            row = table[j][i]
            for k in range(1, size):
                if j == i or j == k:
                    row[k] = True
                elif i != j and k != j:
                    row[k] = labels[i] != labels[k]
    return table


def _component_labels(g: Graph, removed: int) -> list[int]:
    """Connected-component label per vertex after deleting ``removed``."""
    adj = g.neighbor_sets()
    labels = [-1] * (g.n + 1)
    current = 0
    for start in range(1, g.n + 1):
        if start == removed or labels[start] != -1:
            continue
        labels[start] = current
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y != removed and labels[y] == -1:
                    labels[y] = current
                    queue.append(y)
        current += 1
    return labels


def shortest_path_lengths(g: Graph) -> DistanceMatrix:
    """Edge-count shortest-path distances (weights and loops ignored),
    by breadth-first search from every vertex."""
    adj = g.neighbor_sets()
    values = np.zeros((g.n, g.n))
    for s in range(1, g.n + 1):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        for v, d in dist.items():
            values[s - 1, v - 1] = float(d)
    return DistanceMatrix(values, "shortest")
