"""Instances, permutations and the objective of the Wiener QAP.

An instance is a pair of sorted integer sequences ``alphas`` and ``betas``.
The first stands for the product matrix ``a_ij = alpha_i * alpha_j`` and the
second for the 1-D distance matrix ``b_ij = |beta_i - beta_j|``.  A
permutation ``perm`` (1-indexed) puts weight ``alphas[perm[i] - 1]`` on point
``betas[i]``, and the objective

    Z(perm) = sum_i sum_j alpha_perm(i) * alpha_perm(j) * |beta_i - beta_j|

runs over *ordered* pairs, so every unordered pair is counted twice.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidPartitionInstance,
    Not1DDistanceMatrix,
    NotProductMatrix,
    NotSquare,
    ObjectiveOverflow,
    PermutationInvalid,
)

__all__ = [
    "ACCUMULATOR_LIMIT",
    "Sense",
    "Shape",
    "WienerQapInstance",
    "Assignment",
    "PartitionInstance",
    "objective",
    "evaluate_objective",
    "evaluate_general_qap",
    "is_v_shaped",
    "is_pyramidal",
    "classify_shape",
    "product_matrix",
    "distance_matrix",
    "factor_product_matrix",
    "recover_point_set",
    "reduce_partition",
    "decomposition_split",
]

# Signed 128-bit accumulator.  Python ints never wrap; the limit is enforced
# so that results stay portable to fixed-width consumers.
ACCUMULATOR_LIMIT = 2**127 - 1


class Sense(enum.Enum):
    MAX = "max"
    MIN = "min"


class Shape(enum.Enum):
    V_SHAPED = "v-shaped"
    PYRAMIDAL = "pyramidal"
    BOTH = "both"
    NEITHER = "neither"


def _as_int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        if hasattr(x, "__index__"):
            return x.__index__()
        raise TypeError(f"{what} must be integers, got {x!r}")
    return x


def objective_bound(alphas: Sequence[int], betas: Sequence[int]) -> int:
    """A-priori upper bound ``(sum alpha)^2 * (beta_max - beta_min)``."""
    if not betas:
        return 0
    return sum(alphas) ** 2 * (max(betas) - min(betas))


@dataclass(frozen=True)
class WienerQapInstance:
    """Canonical Wiener QAP instance.

    Both sequences are sorted non-decreasingly on construction; the sort is
    harmless because relabelling facilities or locations only re-indexes the
    permutation.  Construction raises :class:`ObjectiveOverflow` when the
    objective could leave the 128-bit accumulator range.
    """

    alphas: tuple
    betas: tuple

    def __post_init__(self):
        alphas = tuple(_as_int(a, "alphas") for a in self.alphas)
        betas = tuple(_as_int(b, "betas") for b in self.betas)
        if len(alphas) != len(betas):
            raise DimensionMismatch(
                f"{len(alphas)} alphas but {len(betas)} betas"
            )
        if not alphas:
            raise DimensionMismatch("instance dimension must be at least 1")
        if min(alphas) < 0:
            raise ValueError("alphas must be non-negative")
        if objective_bound(alphas, betas) > ACCUMULATOR_LIMIT:
            raise ObjectiveOverflow(
                "objective bound (sum alpha)^2 * (beta_n - beta_1) exceeds 2^127 - 1"
            )
        object.__setattr__(self, "alphas", tuple(sorted(alphas)))
        object.__setattr__(self, "betas", tuple(sorted(betas)))

    @property
    def n(self) -> int:
        return len(self.alphas)

    def to_json(self) -> dict:
        return {"alphas": list(self.alphas), "betas": list(self.betas)}


def _check_perm(perm, n=None) -> tuple:
    perm = tuple(perm)
    size = len(perm) if n is None else n
    if len(perm) != size or sorted(perm) != list(range(1, size + 1)):
        raise PermutationInvalid(
            f"{list(perm)!r} is not a permutation of 1..{size}"
        )
    return perm


def is_v_shaped(perm: Sequence[int]) -> bool:
    """Strictly decreasing, then strictly increasing (either part may be empty).

    >>> is_v_shaped((3, 1, 2)), is_v_shaped((1, 3, 2))
    (True, False)
    """
    perm = _check_perm(perm)
    i = 0
    while i + 1 < len(perm) and perm[i] > perm[i + 1]:
        i += 1
    while i + 1 < len(perm) and perm[i] < perm[i + 1]:
        i += 1
    return i + 1 >= len(perm)


def is_pyramidal(perm: Sequence[int]) -> bool:
    """Strictly increasing, then strictly decreasing."""
    perm = _check_perm(perm)
    n = len(perm)
    return is_v_shaped([n + 1 - p for p in perm])


def classify_shape(perm: Sequence[int]) -> Shape:
    v, p = is_v_shaped(perm), is_pyramidal(perm)
    if v and p:
        return Shape.BOTH
    if v:
        return Shape.V_SHAPED
    if p:
        return Shape.PYRAMIDAL
    return Shape.NEITHER


@dataclass(frozen=True)
class Assignment:
    """A 1-indexed permutation: ``perm[i]`` is the value index on point ``i+1``."""

    perm: tuple
    shape: Shape = field(init=False)

    def __post_init__(self):
        perm = _check_perm(self.perm)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "shape", classify_shape(perm))

    @classmethod
    def identity(cls, n: int) -> "Assignment":
        return cls(tuple(range(1, n + 1)))

    def __len__(self):
        return len(self.perm)


PermLike = Union[Assignment, Sequence[int]]


def _perm_of(a: PermLike) -> tuple:
    return a.perm if isinstance(a, Assignment) else _check_perm(a)


def objective(alphas: Sequence[int], betas: Sequence[int], perm: Sequence[int]) -> int:
    """Ordered-pair objective on raw (not necessarily sorted) sequences."""
    n = len(betas)
    w = [alphas[p - 1] for p in perm]
    total = 0
    for i in range(n):
        wi, bi = w[i], betas[i]
        for j in range(i + 1, n):
            total += wi * w[j] * abs(bi - betas[j])
    return 2 * total


def evaluate_objective(inst: WienerQapInstance, a: PermLike) -> int:
    """Exact objective value of assignment ``a`` on ``inst``.

    >>> evaluate_objective(WienerQapInstance((1, 2, 3), (0, 1, 2)), (2, 1, 3))
    34
    """
    perm = _check_perm(_perm_of(a), inst.n)
    return objective(inst.alphas, inst.betas, perm)


def _square(M, name):
    rows = [list(r) for r in M]
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise NotSquare(f"{name} is not square")
    return rows


def evaluate_general_qap(A, B, a: PermLike) -> int:
    """Koopmans-Beckmann objective ``sum_ij A[pi(i), pi(j)] * B[i, j]``."""
    A = _square(A, "A")
    B = _square(B, "B")
    if len(A) != len(B):
        raise DimensionMismatch(f"A is {len(A)}x{len(A)} but B is {len(B)}x{len(B)}")
    perm = _check_perm(_perm_of(a), len(A))
    p = [x - 1 for x in perm]
    n = len(A)
    return sum(A[p[i]][p[j]] * B[i][j] for i in range(n) for j in range(n))


def product_matrix(alphas: Sequence[int]) -> list:
    return [[ai * aj for aj in alphas] for ai in alphas]


def distance_matrix(betas: Sequence[int]) -> list:
    return [[abs(bi - bj) for bj in betas] for bi in betas]


def factor_product_matrix(A) -> tuple:
    """Recover non-negative ``alpha`` with ``A[i][j] == alpha_i * alpha_j``.

    Raises
    ------
    NotSquare
        If ``A`` is not square.
    NotProductMatrix
        If no such ``alpha`` exists; ``err.cell`` is the first bad cell.
    """
    A = _square(A, "A")
    n = len(A)
    for i in range(n):
        for j in range(n):
            if A[i][j] < 0:
                raise NotProductMatrix(f"negative entry at ({i}, {j})", (i, j))
    nonzero_rows = [i for i in range(n) if any(A[i])]
    if not nonzero_rows:
        return (0,) * n
    t = nonzero_rows[0]
    if A[t][t] == 0:
        # a_tt = alpha_t^2 = 0 would force a zero row
        raise NotProductMatrix(
            f"row {t} is nonzero but its diagonal entry is zero", (t, t)
        )
    root = math.isqrt(A[t][t])
    if root * root != A[t][t]:
        raise NotProductMatrix(f"diagonal entry ({t}, {t}) is not a perfect square", (t, t))
    alphas = []
    for j in range(n):
        q, rem = divmod(A[t][j], root)
        if rem:
            raise NotProductMatrix(f"entry ({t}, {j}) is not divisible by {root}", (t, j))
        alphas.append(q)
    for i in range(n):
        for j in range(n):
            if A[i][j] != alphas[i] * alphas[j]:
                raise NotProductMatrix(
                    f"entry ({i}, {j}) = {A[i][j]} but alpha_i * alpha_j = "
                    f"{alphas[i] * alphas[j]}",
                    (i, j),
                )
    return tuple(alphas)


def recover_point_set(B) -> tuple:
    """Recover sorted points from a 1-D distance matrix, anchored at 0.

    The points are read off the first row, so the matrix must list its
    points in non-decreasing order.
    """
    B = _square(B, "B")
    n = len(B)
    betas = tuple(B[0][j] for j in range(n)) if n else ()
    if n and betas[0] != 0:
        raise Not1DDistanceMatrix("diagonal entry (0, 0) is nonzero", (0, 0))
    for j in range(1, n):
        if betas[j] < betas[j - 1]:
            raise Not1DDistanceMatrix(
                f"first row is not non-decreasing at column {j}", (0, j)
            )
    for i in range(n):
        for j in range(n):
            if B[i][j] != abs(betas[i] - betas[j]):
                raise Not1DDistanceMatrix(
                    f"entry ({i}, {j}) = {B[i][j]} but |beta_i - beta_j| = "
                    f"{abs(betas[i] - betas[j])}",
                    (i, j),
                )
    return betas


@dataclass(frozen=True)
class PartitionInstance:
    """``2k`` positive integers with an even total ``2Q``."""

    q: tuple

    def __post_init__(self):
        q = tuple(self.q)
        if not q or len(q) % 2:
            raise InvalidPartitionInstance("need an even, positive number of integers")
        if any(isinstance(x, bool) or not isinstance(x, int) or x <= 0 for x in q):
            raise InvalidPartitionInstance("all entries must be positive integers")
        if sum(q) % 2:
            raise InvalidPartitionInstance(f"total {sum(q)} is odd")
        object.__setattr__(self, "q", q)

    @property
    def k(self) -> int:
        return len(self.q) // 2

    @property
    def Q(self) -> int:
        return sum(self.q) // 2


def reduce_partition(p: PartitionInstance):
    """Build the Partition gadget: ``alpha = q``, ``beta = (1,..,1,2,..,2)``.

    Returns ``(instance, threshold)``.  With ``J`` the set of weights on the
    points at 1 and ``x`` its total, the ordered-pair objective is
    ``2 * x * (2Q - x)``, so the instance reaches ``threshold = 2 * Q**2`` iff
    some ``k`` of the numbers sum to exactly ``Q``.
    """
    if not isinstance(p, PartitionInstance):
        p = PartitionInstance(tuple(p))
    inst = WienerQapInstance(tuple(p.q), (1,) * p.k + (2,) * p.k)
    return inst, 2 * p.Q**2


def decomposition_split(inst: WienerQapInstance, a: PermLike, k: int):
    """Split the objective at position ``k`` into ``(Z1, Z2, Z3)``.

    ``Z1`` is the objective inside the first ``k`` positions, ``Z2`` inside the
    rest and ``Z3`` the one-directional cross term, so that
    ``Z1 + Z2 + 2 * Z3 == evaluate_objective(inst, a)``.
    """
    n = inst.n
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"k={k} outside 1..{n}")
    perm = _check_perm(_perm_of(a), n)
    w = [inst.alphas[p - 1] for p in perm]
    b = inst.betas

    def inner(lo, hi):
        return sum(
            w[i] * w[j] * abs(b[i] - b[j]) for i in range(lo, hi) for j in range(lo, hi)
        )

    z3 = sum(w[i] * w[j] * abs(b[i] - b[j]) for i in range(k) for j in range(k, n))
    return inner(0, k), inner(k, n), z3
