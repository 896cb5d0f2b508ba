"""Pseudo-polynomial dynamic program for the Wiener max- and min-QAP.

A state ``(k, m, L, R)`` says that ``k`` values are still unassigned and
must go onto the point interval ``beta_m .. beta_{m+k-1}``, while a total
weight ``L`` already sits on the left of that interval and ``R`` on its right.
Since ``L + R`` is the total of the assigned values, ``R`` is never stored.

At each level one value is placed on either end of the interval.  The
objective splits into one term per gap between consecutive points, namely
``2 * (weight left of gap) * (weight right of gap) * gap``, so placing a value
on the left end settles the gap ``beta_{m+1} - beta_m`` and placing it on the
right end settles ``beta_{m+k-1} - beta_{m+k-2}``.

For the max problem the largest remaining value is peeled off first, which
explores exactly the V-shaped permutations.  For the min problem the
smallest one is, which explores the pyramidal ones.

The solver materializes only states reachable from the root ``(n, 1, 0, 0)``,
one level at a time, with numpy arrays; it uses no recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .core import Assignment, Sense, WienerQapInstance, objective_bound
from .errors import InconsistentTables, StateInvalid

__all__ = [
    "Sense",
    "DpState",
    "SolveContext",
    "SolveResult",
    "state_value",
    "solve",
    "solve_max",
    "solve_min",
    "reconstruct",
]

# Above this a-priori bound the tables fall back to Python ints (object dtype).
_INT64_SAFE = 2**61

StateFilter = Callable[[int, np.ndarray, np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class DpState:
    k: int
    m: int
    L: int
    R: int


@dataclass
class _Level:
    keys: np.ndarray
    values: Optional[np.ndarray] = None
    choices: Optional[np.ndarray] = None  # True = left end
    alive: Optional[np.ndarray] = None


class SolveContext:
    """Tables of one dynamic-program run.

    Parameters
    ----------
    alphas, betas : sequences of int
        Values and points.  ``betas`` must be non-decreasing; ``alphas`` need
        not be sorted when an explicit ``order`` is given.
    sense : Sense
    order : sequence of int, optional
        ``order[k - 1]`` is the 1-based index of the value placed at level
        ``k``.  Defaults to ``k`` for MAX (largest value placed first) and to
        ``n - k + 1`` for MIN.
    state_filter : callable, optional
        ``state_filter(k, m, L, R)`` on numpy arrays returns a boolean mask of
        admissible states; used to pin values to points.
    """

    def __init__(
        self,
        alphas: Sequence[int],
        betas: Sequence[int],
        sense: Sense = Sense.MAX,
        order: Optional[Sequence[int]] = None,
        state_filter: Optional[StateFilter] = None,
        instance: Optional[WienerQapInstance] = None,
    ):
        self.alphas = tuple(alphas)
        self.betas = tuple(betas)
        if len(self.alphas) != len(self.betas) or not self.alphas:
            raise StateInvalid("alphas and betas must have the same positive length")
        if any(b2 < b1 for b1, b2 in zip(self.betas, self.betas[1:])):
            raise StateInvalid("betas must be non-decreasing")
        self.instance = instance
        self.sense = sense
        n = self.n = len(self.alphas)
        if order is None:
            order = range(1, n + 1) if sense is Sense.MAX else range(n, 0, -1)
        self.order = tuple(order)
        if sorted(self.order) != list(range(1, n + 1)):
            raise StateInvalid("order must be a permutation of 1..n")
        self.state_filter = state_filter

        # prefix_sums[k]: total of the k values still unassigned at level k.
        # Under the default MAX order this is alpha_1 + ... + alpha_k.
        ps = [0]
        for v in self.order:
            ps.append(ps[-1] + self.alphas[v - 1])
        self.prefix_sums = tuple(ps)
        self.total = ps[-1]

        stride = self.total + 1
        self._stride = stride
        big_keys = (n + 2) * stride >= _INT64_SAFE
        big_vals = objective_bound(self.alphas, self.betas) >= _INT64_SAFE
        self._key_dtype = object if big_keys else np.int64
        self._val_dtype = object if (big_vals or big_keys) else np.int64
        self._beta = np.array(self.betas, dtype=self._val_dtype)
        self._levels: dict = {}
        self._memo: dict = {}
        self.optimum = None
        self.solved = False

    @classmethod
    def for_instance(cls, inst: WienerQapInstance, sense: Sense = Sense.MAX):
        return cls(inst.alphas, inst.betas, sense, instance=inst)

    def placed(self, k: int) -> int:
        """``L + R`` at level ``k``."""
        return self.total - self.prefix_sums[k]

    @property
    def states_visited(self) -> int:
        return sum(len(lv.keys) for lv in self._levels.values())

    def _better(self, z1, z2):
        return z1 >= z2 if self.sense is Sense.MAX else z1 <= z2

    def _admissible(self, k, m, L):
        R = self.placed(k) - L
        ok = (L >= 0) & (R >= 0)
        if self.state_filter is not None:
            ok = ok & self.state_filter(k, m, L, R)
        return ok

    def _find(self, k, key) -> int:
        lv = self._levels.get(k)
        if lv is None:
            return -1
        i = int(np.searchsorted(lv.keys, key))
        if i < len(lv.keys) and lv.keys[i] == key:
            return i
        return -1

    def value(self, k: int, m: int, L: int):
        """Stored ``Z(k, m, L)`` of a reachable state, or ``None``."""
        i = self._find(k, m * self._stride + L)
        if i < 0 or not self._levels[k].alive[i]:
            return None
        return int(self._levels[k].values[i])

    def choice(self, k: int, m: int, L: int):
        """``'left'``/``'right'`` decision stored for a reachable state."""
        i = self._find(k, m * self._stride + L)
        if i < 0 or not self._levels[k].alive[i]:
            return None
        return "left" if self._levels[k].choices[i] else "right"

    def solve(self):
        n, stride = self.n, self._stride
        kd, vd = self._key_dtype, self._val_dtype
        one = np.array([1], dtype=kd)
        zero = np.array([0], dtype=kd)
        if not self._admissible(n, one, zero)[0]:
            raise StateInvalid("root state is not admissible")
        self._levels = {n: _Level(keys=np.array([stride], dtype=kd))}

        # forward: collect reachable states level by level
        keys = self._levels[n].keys
        for k in range(n, 1, -1):
            m, L = keys // stride, keys % stride
            a = self.alphas[self.order[k - 1] - 1]
            lm, lL = m + 1, L + a
            okl = self._admissible(k - 1, lm, lL)
            okr = self._admissible(k - 1, m, L)
            keys = np.unique(np.concatenate([(lm * stride + lL)[okl], keys[okr]]))
            self._levels[k - 1] = _Level(keys=keys)

        base = self._levels[1]
        base.values = np.zeros(len(base.keys), dtype=vd)
        base.alive = np.ones(len(base.keys), dtype=bool)
        base.choices = np.ones(len(base.keys), dtype=bool)

        beta = self._beta
        for k in range(2, n + 1):
            lv, child = self._levels[k], self._levels[k - 1]
            keys = lv.keys
            m, L = keys // stride, keys % stride
            a = self.alphas[self.order[k - 1] - 1]
            M = self.prefix_sums[k - 1]
            R = self.placed(k) - L
            if vd is object:
                m, L, R = m.astype(object), L.astype(object), R.astype(object)
            else:
                m, L, R = m.astype(np.int64), L.astype(np.int64), R.astype(np.int64)
            mi = (keys // stride).astype(np.int64)

            zl, okl = self._lookup(child, keys + stride + a)
            zr, okr = self._lookup(child, keys)
            gap_l = beta[mi] - beta[mi - 1]
            gap_r = beta[mi + k - 2] - beta[mi + k - 3]
            z1 = zl + 2 * (L + a) * (M + R) * gap_l
            z2 = zr + 2 * (L + M) * (R + a) * gap_r
            pick_left = okl & (~okr | self._better(z1, z2).astype(bool))
            lv.choices = pick_left
            lv.alive = okl | okr
            lv.values = np.where(pick_left, z1, z2)

        root = self._levels[n]
        if not root.alive[0]:
            raise StateInvalid("no admissible complete assignment")
        self.optimum = int(root.values[0])
        self.solved = True
        return self

    @staticmethod
    def _lookup(level: _Level, query):
        if len(level.keys) == 0:
            return np.zeros(len(query), dtype=level.values.dtype), np.zeros(len(query), dtype=bool)
        idx = np.searchsorted(level.keys, query)
        idx = np.minimum(idx, len(level.keys) - 1).astype(np.int64)
        found = (level.keys[idx] == query).astype(bool) & level.alive[idx]
        return level.values[idx], found


def state_value(ctx: SolveContext, k: int, m: int, L: int) -> int:
    """``Z(k, m, L, R)`` by memoized recursion, independent of the tables.

    Any state valid for ``ctx`` may be queried, reachable or not.  The
    recursion is driven by an explicit stack.
    """
    n = ctx.n
    if not (1 <= k <= n and 1 <= m <= n - k + 1):
        raise StateInvalid(f"state (k={k}, m={m}) outside 1 <= k <= n, 1 <= m <= n-k+1")
    if not ctx._admissible(k, np.array([m]), np.array([L]))[0]:
        raise StateInvalid(f"state (k={k}, m={m}, L={L}) is not admissible")
    memo = ctx._memo
    betas, alphas = ctx.betas, ctx.alphas

    def children(k, m, L):
        a = alphas[ctx.order[k - 1] - 1]
        out = []
        for cm, cL in ((m + 1, L + a), (m, L)):
            if ctx._admissible(k - 1, np.array([cm]), np.array([cL]))[0]:
                out.append((k - 1, cm, cL))
            else:
                out.append(None)
        return out

    stack = [(k, m, L)]
    while stack:
        s = stack[-1]
        if s in memo:
            stack.pop()
            continue
        sk, sm, sL = s
        if sk == 1:
            memo[s] = 0
            stack.pop()
            continue
        left, right = children(sk, sm, sL)
        pending = [c for c in (left, right) if c is not None and c not in memo]
        if pending:
            stack.extend(pending)
            continue
        a = alphas[ctx.order[sk - 1] - 1]
        M = ctx.prefix_sums[sk - 1]
        R = ctx.placed(sk) - sL
        opts = []
        if left is not None and memo[left] is not None:
            gap = betas[sm] - betas[sm - 1]
            opts.append(memo[left] + 2 * (sL + a) * (M + R) * gap)
        if right is not None and memo[right] is not None:
            gap = betas[sm + sk - 2] - betas[sm + sk - 3]
            opts.append(memo[right] + 2 * (sL + M) * (R + a) * gap)
        if not opts:
            memo[s] = None
        else:
            memo[s] = max(opts) if ctx.sense is Sense.MAX else min(opts)
        stack.pop()
    if memo[(k, m, L)] is None:
        raise StateInvalid(f"state (k={k}, m={m}, L={L}) has no admissible completion")
    return memo[(k, m, L)]


def reconstruct(ctx: SolveContext) -> Assignment:
    """Walk the stored decisions from the root and return the permutation."""
    if not ctx.solved:
        raise InconsistentTables("context has not been solved")
    n = ctx.n
    perm = [0] * n
    m, L = 1, 0
    for k in range(n, 0, -1):
        i = ctx._find(k, m * ctx._stride + L)
        if i < 0 or not ctx._levels[k].alive[i]:
            raise InconsistentTables(f"walk reached missing state (k={k}, m={m}, L={L})")
        v = ctx.order[k - 1]
        if k == 1 or ctx._levels[k].choices[i]:
            perm[m - 1] = v
            L += ctx.alphas[v - 1]
            m += 1
        else:
            perm[m + k - 2] = v
    return Assignment(tuple(perm))


@dataclass
class SolveResult:
    optimum: int
    assignment: Optional[Assignment]
    sense: Sense
    states_visited: int
    context: Optional[SolveContext] = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        out = {
            "sense": self.sense.value,
            "optimum": self.optimum,
            "states_visited": self.states_visited,
        }
        if self.assignment is not None:
            out["perm"] = list(self.assignment.perm)
            out["shape"] = self.assignment.shape.value
        return out


def solve(inst: WienerQapInstance, sense: Sense, reconstruct_perm: bool = True) -> SolveResult:
    ctx = SolveContext.for_instance(inst, sense).solve()
    assignment = reconstruct(ctx) if reconstruct_perm else None
    return SolveResult(ctx.optimum, assignment, sense, ctx.states_visited, ctx)


def solve_max(inst: WienerQapInstance, reconstruct_perm: bool = True) -> SolveResult:
    """Maximum objective and a V-shaped optimal permutation.

    >>> solve_max(WienerQapInstance((1, 2, 3), (0, 1, 2))).optimum
    34
    """
    return solve(inst, Sense.MAX, reconstruct_perm)


def solve_min(inst: WienerQapInstance, reconstruct_perm: bool = True) -> SolveResult:
    """Minimum objective and a pyramidal optimal permutation."""
    return solve(inst, Sense.MIN, reconstruct_perm)
