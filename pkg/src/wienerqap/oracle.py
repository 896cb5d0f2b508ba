"""Brute-force ground truth.

Everything here is deliberately naive: full permutation enumeration for the
QAP, Prüfer-code enumeration of labeled trees, and breadth-first search for
Wiener indices.  None of it shares code with the dynamic programs.
"""

from __future__ import annotations

import heapq
import itertools
import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .core import Assignment, Sense, Shape, WienerQapInstance, objective, objective_bound
from .degrees import DegreeSequence, validate_degree_sequence, wiener_from_ell
from .errors import InstanceTooLarge, InvalidDegreeSequence

__all__ = [
    "DEFAULT_CAP",
    "default_cap",
    "Tree",
    "BruteForceResult",
    "brute_force",
    "brute_force_restricted",
    "v_shaped_permutations",
    "pyramidal_permutations",
    "wiener_index",
    "prufer_decode",
    "prufer_encode",
    "distinct_permutations",
    "enumerate_trees_with_degrees",
    "enumerate_caterpillars",
]

DEFAULT_CAP = 9
CAP_ENV = "WIENERQAP_ORACLE_CAP"


def default_cap() -> int:
    """Oracle cap from ``$WIENERQAP_ORACLE_CAP``, else 9."""
    try:
        return int(os.environ.get(CAP_ENV, DEFAULT_CAP))
    except ValueError:
        return DEFAULT_CAP


@dataclass(frozen=True)
class Tree:
    """Tree on vertices ``0 .. vertex_count - 1``."""

    vertex_count: int
    edges: tuple

    def __post_init__(self):
        r = self.vertex_count
        edges = tuple(tuple(sorted(e)) for e in self.edges)
        if r < 1 or len(edges) != r - 1:
            raise InvalidDegreeSequence(f"{len(edges)} edges cannot form a tree on {r} vertices")
        parent = list(range(r))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in edges:
            if not (0 <= u < r and 0 <= v < r) or u == v:
                raise InvalidDegreeSequence(f"bad edge ({u}, {v})")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise InvalidDegreeSequence(f"edge ({u}, {v}) closes a cycle")
            parent[ru] = rv
        object.__setattr__(self, "edges", edges)

    def adjacency(self) -> list:
        adj = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> list:
        return [len(nb) for nb in self.adjacency()]

    def canonical_edges(self) -> tuple:
        return tuple(sorted(self.edges))


def wiener_index(t: Tree) -> int:
    """Sum of distances over unordered vertex pairs, by BFS from every vertex."""
    adj = t.adjacency()
    r = t.vertex_count
    total = 0
    for s in range(r):
        dist = [-1] * r
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        total += sum(dist)
    return total // 2


def prufer_decode(word: Sequence[int], r: int) -> Tree:
    if r == 1:
        return Tree(1, ())
    degree = [1] * r
    for x in word:
        degree[x] += 1
    leaves = [v for v in range(r) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in word:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Tree(r, tuple(edges))


def prufer_encode(t: Tree) -> tuple:
    r = t.vertex_count
    adj = [set(nb) for nb in t.adjacency()]
    leaves = [v for v in range(r) if len(adj[v]) == 1]
    heapq.heapify(leaves)
    word = []
    for _ in range(r - 2):
        leaf = heapq.heappop(leaves)
        (nb,) = adj[leaf]
        word.append(nb)
        adj[nb].discard(leaf)
        adj[leaf].clear()
        if len(adj[nb]) == 1:
            heapq.heappush(leaves, nb)
    return tuple(word)


def distinct_permutations(items: Sequence) -> Iterator[tuple]:
    """All distinct orderings of a multiset, in lexicographic order."""
    a = sorted(items)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1 :] = reversed(a[i + 1 :])


def _as_degrees(d) -> DegreeSequence:
    return d if isinstance(d, DegreeSequence) else validate_degree_sequence(d)


def enumerate_trees_with_degrees(d, cap: int | None = None) -> Iterator[Tree]:
    """Every labeled tree where vertex ``i`` has degree ``d.degrees[i]``."""
    d = _as_degrees(d)
    cap = default_cap() if cap is None else cap
    r = d.r
    if r > cap:
        raise InstanceTooLarge(f"r={r} exceeds oracle cap {cap}")
    want = list(d.degrees)
    if r <= 2:
        yield prufer_decode((), r)
        return
    word = [v for v in range(r) for _ in range(want[v] - 1)]
    for w in distinct_permutations(word):
        t = prufer_decode(w, r)
        if t.degrees() != want:
            raise AssertionError(f"Prüfer word {w} decoded to wrong degrees")
        yield t


def enumerate_caterpillars(d, cap: int | None = None) -> Iterator[tuple]:
    """Yield ``(ell, W)`` for every placement of the backbone degrees.

    End positions carry ``d - 1`` leaves and interior ones ``d - 2``.
    """
    d = _as_degrees(d)
    cap = default_cap() if cap is None else cap
    n, r = d.n, d.r
    if n > cap:
        raise InstanceTooLarge(f"backbone length {n} exceeds oracle cap {cap}")
    if n == 0:
        yield (), r - 1
        return
    if n == 1:
        ell = (d.degrees[0],)
        yield ell, wiener_from_ell(ell, 1, r)
        return
    for placement in distinct_permutations(d.backbone):
        ell = (placement[0] - 1,) + tuple(x - 2 for x in placement[1:-1]) + (placement[-1] - 1,)
        yield ell, wiener_from_ell(ell, n, r)


@lru_cache(maxsize=16)
def _all_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def v_shaped_permutations(n: int) -> Iterator[tuple]:
    """The ``2^(n-1)`` V-shaped permutations of ``1..n`` (1-indexed)."""
    rest = list(range(2, n + 1))
    for mask in range(1 << len(rest)):
        left = [v for i, v in enumerate(rest) if mask >> i & 1]
        right = [v for i, v in enumerate(rest) if not mask >> i & 1]
        yield tuple(sorted(left, reverse=True)) + (1,) + tuple(right)


def pyramidal_permutations(n: int) -> Iterator[tuple]:
    for p in v_shaped_permutations(n):
        yield tuple(n + 1 - x for x in p)


def _objectives(inst: WienerQapInstance, perms0: np.ndarray):
    """Objective of each row of 0-based ``perms0``."""
    if objective_bound(inst.alphas, inst.betas) < 2**62:
        alpha = np.array(inst.alphas, dtype=np.int64)
        beta = np.array(inst.betas, dtype=np.int64)
        D = np.abs(beta[:, None] - beta[None, :])
        W = alpha[perms0]
        return np.einsum("pi,ij,pj->p", W, D, W)
    return np.array(
        [objective(inst.alphas, inst.betas, [x + 1 for x in p]) for p in perms0],
        dtype=object,
    )


@dataclass(frozen=True)
class BruteForceResult:
    optimum: int
    optimal_count: int
    witness: Assignment


def _check_cap(n, cap):
    cap = default_cap() if cap is None else cap
    if n > cap:
        raise InstanceTooLarge(f"n={n} exceeds oracle cap {cap}")


def _best(obj, sense):
    best = obj.max() if sense is Sense.MAX else obj.min()
    hits = np.flatnonzero(obj == best)
    return int(best), hits


def brute_force(inst: WienerQapInstance, sense: Sense = Sense.MAX, cap: int | None = None) -> BruteForceResult:
    """Exact optimum over all ``n!`` permutations, with count and a witness."""
    _check_cap(inst.n, cap)
    perms = _all_perms(inst.n)
    best, hits = _best(_objectives(inst, perms), sense)
    witness = Assignment(tuple(int(x) + 1 for x in perms[hits[0]]))
    return BruteForceResult(best, len(hits), witness)


def brute_force_restricted(
    inst: WienerQapInstance, sense: Sense, shape: Shape, cap: int | None = None
) -> int:
    """Optimum over V-shaped or pyramidal permutations only."""
    _check_cap(inst.n, cap)
    if shape is Shape.V_SHAPED:
        gen = v_shaped_permutations(inst.n)
    elif shape is Shape.PYRAMIDAL:
        gen = pyramidal_permutations(inst.n)
    else:
        raise ValueError(f"unsupported shape {shape}")
    perms = np.array([[x - 1 for x in p] for p in gen], dtype=np.int64)
    best, _ = _best(_objectives(inst, perms), sense)
    return best
