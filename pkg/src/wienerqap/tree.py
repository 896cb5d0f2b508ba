"""Trees of maximum Wiener index for a prescribed degree sequence.

Every maximizer is a caterpillar.  With backbone degrees ``d_1 <= ... <= d_n``
the placement problem becomes an ``(n+2)``-dimensional Wiener max-QAP: values
``d_i - 1`` on the backbone points ``1..n`` plus two unit values pinned to
duplicate points at both backbone ends, which turns ``d - 1`` into the
correct end weight ``d = ell + 1``.

On that instance every inner gap has length one, so the state value does not
depend on the interval position and the table is indexed by ``(k, L)`` only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import Sense, WienerQapInstance
from .degrees import DegreeSequence, validate_degree_sequence, wiener_from_ell
from .dp import SolveContext, SolveResult, reconstruct
from .errors import BackboneTooShort, IncompatibleEll
from .oracle import Tree, wiener_index

__all__ = [
    "DegreeSequence",
    "validate_degree_sequence",
    "wiener_from_ell",
    "ConstrainedInstance",
    "Caterpillar",
    "build_constrained_instance",
    "tree_state_filter",
    "solve_constrained",
    "solve_max_wiener",
    "caterpillar_edges",
    "caterpillar_from_ell",
    "ell_from_placement",
]


@dataclass(frozen=True)
class ConstrainedInstance:
    """The pinned ``(n+2)``-dimensional instance built from a degree sequence.

    ``alphas``/``betas`` keep the constructed index order, in which the two
    pinned unit values come last.  ``pins`` maps value index to point index
    (both 1-based).  ``base`` is the same data as a canonical (sorted)
    :class:`WienerQapInstance`, i.e. the unconstrained relaxation.
    """

    alphas: tuple
    betas: tuple
    pins: dict
    backbone: tuple

    @property
    def n(self) -> int:
        return len(self.backbone)

    @property
    def base(self) -> WienerQapInstance:
        return WienerQapInstance(self.alphas, self.betas)


@dataclass(frozen=True)
class Caterpillar:
    ell: tuple
    edges: tuple
    wiener: int
    backbone_degrees: tuple = ()
    states_visited: int = field(default=0, compare=False)

    @property
    def r(self) -> int:
        return len(self.edges) + 1

    @property
    def n(self) -> int:
        return len(self.ell)

    def to_tree(self) -> Tree:
        return Tree(self.r, tuple((u - 1, v - 1) for u, v in self.edges))

    def to_json(self, emit_tree: bool = True) -> dict:
        out = {
            "wiener": self.wiener,
            "ell": list(self.ell),
            "backbone_degrees": list(self.backbone_degrees),
            "r": self.r,
            "n": self.n,
        }
        if emit_tree:
            out["edges"] = [list(e) for e in self.edges]
        return out


def _degrees(d) -> DegreeSequence:
    return d if isinstance(d, DegreeSequence) else validate_degree_sequence(d)


def build_constrained_instance(d) -> ConstrainedInstance:
    """``alpha = (d_1-1, .., d_n-1, 1, 1)``, ``beta = (1, 1, 2, .., n, n)``."""
    d = _degrees(d)
    n = d.n
    if n < 2:
        raise BackboneTooShort(f"backbone has {n} vertices, need at least 2")
    alphas = tuple(x - 1 for x in d.backbone) + (1, 1)
    betas = (1,) + tuple(range(1, n + 1)) + (n,)
    return ConstrainedInstance(alphas, betas, {n + 1: 1, n + 2: n + 2}, d.backbone)


def tree_state_filter(n: int):
    """State restrictions that force the two pinned values onto their points.

    Levels ``k <= n`` need ``2 <= m <= n - k + 2`` and ``L, R >= 1``; level
    ``n + 1`` needs ``m = 1, L = 0, R = 1``; level ``n + 2`` needs
    ``m = 1, L = R = 0``.
    """

    def admissible(k, m, L, R):
        if k <= n:
            return (m >= 2) & (m <= n - k + 2) & (L >= 1) & (R >= 1)
        if k == n + 1:
            return (m == 1) & (L == 0) & (R == 1)
        return (m == 1) & (L == 0) & (R == 0)

    return admissible


def solve_constrained(ci: ConstrainedInstance) -> SolveResult:
    """Run the general dynamic program, with the pins, on ``ci``.

    Slower than :func:`solve_max_wiener` since it keeps the interval position
    in the state; used to cross-check it.
    """
    n = ci.n
    ctx = SolveContext(
        ci.alphas, ci.betas, Sense.MAX, order=range(1, n + 3), state_filter=tree_state_filter(n)
    ).solve()
    return SolveResult(ctx.optimum, reconstruct(ctx), Sense.MAX, ctx.states_visited, ctx)


def ell_from_placement(placement: Sequence[int]) -> tuple:
    """Leaf counts for backbone degrees listed in backbone order."""
    if len(placement) == 1:
        return (placement[0],)
    return (
        (placement[0] - 1,)
        + tuple(x - 2 for x in placement[1:-1])
        + (placement[-1] - 1,)
    )


def caterpillar_edges(ell: Sequence[int]) -> tuple:
    """Backbone ``1..n`` in order, then the leaves grouped by backbone vertex."""
    n = len(ell)
    edges = [(i, i + 1) for i in range(1, n)]
    nxt = n + 1
    for i, count in enumerate(ell, start=1):
        for _ in range(count):
            edges.append((i, nxt))
            nxt += 1
    return tuple(edges)


def _trivial(d: DegreeSequence) -> Optional[Caterpillar]:
    if d.r == 1:
        return Caterpillar((), (), 0, ())
    if d.r == 2:
        return Caterpillar((), ((1, 2),), 1, ())
    if d.n == 1:
        ell = (d.degrees[0],)
        return Caterpillar(ell, caterpillar_edges(ell), (d.r - 1) ** 2, d.backbone, 1)
    return None


def caterpillar_from_ell(d, ell: Sequence[int]) -> Caterpillar:
    """Materialize the caterpillar with leaf counts ``ell``; W by BFS."""
    d = _degrees(d)
    ell = tuple(int(x) for x in ell)
    if d.r <= 2:
        if ell:
            raise IncompatibleEll(f"a tree on {d.r} vertices has no backbone")
        return _trivial(d)
    if len(ell) != d.n or sum(ell) != d.r - d.n or min(ell) < 0:
        raise IncompatibleEll(f"ell={list(ell)} does not fit r={d.r}, n={d.n}")
    if d.n == 1:
        placed = (ell[0],)
    else:
        placed = (ell[0] + 1,) + tuple(x + 2 for x in ell[1:-1]) + (ell[-1] + 1,)
    if sorted(placed) != sorted(d.backbone):
        raise IncompatibleEll(
            f"ell={list(ell)} implies backbone degrees {sorted(placed)}, "
            f"expected {sorted(d.backbone)}"
        )
    edges = caterpillar_edges(ell)
    cat = Caterpillar(ell, edges, 0, placed)
    return Caterpillar(ell, edges, wiener_index(cat.to_tree()), placed)


def _int_dtype(r, n):
    return object if (r + 2) ** 2 * (n + 1) >= 2**61 else np.int64


def solve_max_wiener(d) -> Caterpillar:
    """Caterpillar of maximum Wiener index for the degree sequence ``d``.

    Runs in ``O(r^2)`` time.  Among optimal caterpillars, ties are broken
    towards placing the current value on the left end.

    >>> solve_max_wiener([3, 3, 2, 1, 1, 1, 1]).wiener
    48
    """
    d = _degrees(d)
    trivial = _trivial(d)
    if trivial is not None:
        return trivial
    n, r = d.n, d.r
    alpha = [x - 1 for x in d.backbone]
    dtype = _int_dtype(r, n)

    # before[k]: sum of alpha_1..alpha_k; placed[k] = L + R at level k
    before = [0]
    for a in alpha:
        before.append(before[-1] + a)
    placed = [before[n] - before[k] + 2 for k in range(n + 1)]

    # level 1: L = 1 .. placed[1] - 1, every value zero
    prev = np.zeros(placed[1] - 1, dtype=dtype)
    states = len(prev) + 2  # plus the two forced pin levels
    choices = [None, None]
    for k in range(2, n + 1):
        P = placed[k]
        L = np.arange(1, P, dtype=np.int64).astype(dtype)
        R = P - L
        a, M = alpha[k - 1], before[k - 1]
        idx = np.arange(0, P - 1)
        z1 = prev[idx + a] + 2 * (L + a) * (M + R)
        z2 = prev[idx] + 2 * (L + M) * (R + a)
        left = (z1 >= z2).astype(bool)
        choices.append(left)
        prev = np.where(left, z1, z2)
        states += P - 1
    z_star = int(prev[0])

    pos = [0] * (n + 1)
    lo, hi, Lv = 1, n, 1
    for k in range(n, 1, -1):
        if choices[k][Lv - 1]:
            pos[lo] = k
            lo += 1
            Lv += alpha[k - 1]
        else:
            pos[hi] = k
            hi -= 1
    pos[lo] = 1
    placement = tuple(d.backbone[pos[p] - 1] for p in range(1, n + 1))
    ell = ell_from_placement(placement)
    s = r - n
    wiener = s * s + (n - 1) * s + z_star // 2
    return Caterpillar(ell, caterpillar_edges(ell), wiener, placement, states)
