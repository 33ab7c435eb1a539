"""Independent brute-force references for certifying the closed-form
pipelines on small instances.

Nothing here shares traversal or factorization code with the main modules:
paths come from a recursive enumerator, walk weights from repeated matrix
powers, reliabilities from a sweep over all edge-survival states, and
forest weights from explicit subset enumeration.  Caps fail loudly; the
oracles are exact or absent.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import CapExceededError, GraphInputError, ParameterError
from .graph import Graph, adjacency_matrix
from .types import Path, RootedForestSummary

__all__ = [
    "enumerate_paths",
    "truncated_walk_sum",
    "reliability_by_edge_states",
    "enumerate_rooted_forests",
]

PATH_VERTEX_CAP = 12
EDGE_STATE_CAP = 20
FOREST_EDGE_CAP = 20


def enumerate_paths(g: Graph, i: int, j: int, max_vertices: int = PATH_VERTEX_CAP) -> list[Path]:
    """Every simple path from ``i`` to ``j``, in lexicographic order of the
    (vertex, edge-instance) sequence.

    Parallel edges yield distinct paths; the ``i == j`` case is the single
    empty path of length 0 and weight 1.
    """
    if g.n > max_vertices:
        raise CapExceededError(f"path enumeration capped at {max_vertices} vertices, graph has {g.n}")
    for v in (i, j):
        if not (1 <= v <= g.n):
            raise GraphInputError(f"vertex id out of range 1..{g.n}: {v}")
    if i == j:
        return [Path((i,), (), 0, 1.0)]

    adj: list[list[tuple[int, int, float]]] = [[] for _ in range(g.n + 1)]
    for idx, (u, v, w) in enumerate(g.edges):
        if u != v:  # loops never lie on a simple path
            adj[u].append((v, idx, w))
            adj[v].append((u, idx, w))
    for entry in adj:
        entry.sort()

    paths: list[Path] = []
    on_path = [False] * (g.n + 1)
    on_path[i] = True
    vertices = [i]
    edge_ids: list[int] = []

    def extend(v: int, weight: float) -> None:
        for u, idx, w in adj[v]:
            if on_path[u]:
                continue
            wt = weight * w
            vertices.append(u)
            edge_ids.append(idx)
            if u == j:
                paths.append(Path(tuple(vertices), tuple(edge_ids), len(edge_ids), wt))
            else:
                on_path[u] = True
                extend(u, wt)
                on_path[u] = False
            vertices.pop()
            edge_ids.pop()

    extend(i, 1.0)
    return paths


def truncated_walk_sum(g: Graph, t: float, k_terms: int) -> np.ndarray:
    """Partial walk-weight sum ``I + tA + ... + (tA)^K`` by repeated
    multiplication.  Converges to the full walk matrix for ``t rho < 1``
    with entrywise tail below ``(t rho)^(K+1) / (1 - t rho)``."""
    ta = t * adjacency_matrix(g)
    acc = np.eye(g.n)
    term = np.eye(g.n)
    for _ in range(k_terms):
        term = term @ ta
        acc = acc + term
    return acc


class _Kahan:
    """Compensated summation over a small dense table."""

    def __init__(self, n: int) -> None:
        self.sums = [[0.0] * n for _ in range(n)]
        self._comp = [[0.0] * n for _ in range(n)]

    def add(self, i: int, j: int, value: float) -> None:
        s, c = self.sums[i], self._comp[i]
        y = value - c[j]
        t = s[j] + y
        c[j] = (t - s[j]) - y
        s[j] = t


def _survival_edges(g: Graph) -> list[tuple[int, int, float]]:
    for _, _, w in g.edges:
        if not 0.0 < w <= 1.0:
            raise ParameterError(f"reliability needs edge weights in (0, 1], got {w}")
    return [(u - 1, v - 1, w) for u, v, w in g.edges if u != v]


@lru_cache(maxsize=32)
def _edge_state_table(g: Graph) -> np.ndarray:
    """All-pairs connection probabilities from the 2^m edge-state sweep."""
    edges = _survival_edges(g)
    m = len(edges)
    n = g.n
    # Survival probability of every state, built edge by edge.
    states = np.arange(1 << m)
    prob = np.ones(1 << m)
    for e, (_, _, w) in enumerate(edges):
        alive = (states >> e) & 1
        prob *= np.where(alive, w, 1.0 - w)

    acc = _Kahan(n)
    for state in range(1 << m):
        adj = [0] * n
        rest = state
        e = 0
        while rest:
            if rest & 1:
                u, v, _ = edges[e]
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            rest >>= 1
            e += 1
        comp = [-1] * n
        label = 0
        for s in range(n):
            if comp[s] != -1:
                continue
            comp[s] = label
            stack = [s]
            while stack:
                x = stack.pop()
                mask = adj[x]
                while mask:
                    bit = mask & (-mask)
                    mask ^= bit
                    y = bit.bit_length() - 1
                    if comp[y] == -1:
                        comp[y] = label
                        stack.append(y)
            label += 1
        p = float(prob[state])
        for a in range(n):
            for b in range(a + 1, n):
                if comp[a] == comp[b]:
                    acc.add(a, b, p)

    table = np.ones((n, n))
    for a in range(n):
        for b in range(a + 1, n):
            table[a, b] = table[b, a] = acc.sums[a][b]
    table.setflags(write=False)
    return table


def reliability_by_edge_states(g: Graph, i: int, j: int, max_edges: int = EDGE_STATE_CAP) -> float:
    """Probability that ``i`` and ``j`` stay connected under independent
    edge failures, summed over all 2^m survival states.

    The per-graph table is cached, so asking for every pair costs one sweep.
    """
    m = sum(1 for u, v, _ in g.edges if u != v)
    if m > max_edges:
        raise CapExceededError(f"edge-state sweep capped at {max_edges} edges, graph has {m}")
    for v in (i, j):
        if not (1 <= v <= g.n):
            raise GraphInputError(f"vertex id out of range 1..{g.n}: {v}")
    return float(_edge_state_table(g)[i - 1, j - 1])


def enumerate_rooted_forests(g: Graph, max_edges: int = FOREST_EDGE_CAP) -> RootedForestSummary:
    """Total weights of all spanning rooted forests by subset enumeration.

    Every acyclic subset of non-loop edge instances is a spanning forest;
    each of its trees independently picks one root.  ``weights[i-1, j-1]``
    accumulates forests whose tree containing ``i`` is rooted at ``j``.
    """
    edges = [(u - 1, v - 1, w) for u, v, w in g.edges if u != v]
    m = len(edges)
    if m > max_edges:
        raise CapExceededError(f"forest enumeration capped at {max_edges} edges, graph has {m}")
    n = g.n

    acc = _Kahan(n)
    total = 0.0
    total_comp = 0.0

    for subset in range(1 << m):
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        weight = 1.0
        acyclic = True
        rest = subset
        e = 0
        while rest:
            if rest & 1:
                u, v, w = edges[e]
                ru, rv = find(u), find(v)
                if ru == rv:
                    acyclic = False
                    break
                parent[ru] = rv
                weight *= w
            rest >>= 1
            e += 1
        if not acyclic:
            continue

        members: dict[int, list[int]] = {}
        for v in range(n):
            members.setdefault(find(v), []).append(v)
        rootings = 1
        for group in members.values():
            rootings *= len(group)
        # Kahan-compensated total: f = sum of weight * rootings.
        y = weight * rootings - total_comp
        t = total + y
        total_comp = (t - total) - y
        total = t
        for group in members.values():
            cofactor = rootings // len(group)
            contribution = weight * cofactor
            for a in group:
                for b in group:
                    acc.add(a, b, contribution)

    weights = np.array(acc.sums)
    return RootedForestSummary(total_weight=total, weights=weights)
