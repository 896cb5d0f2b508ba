"""Tree degree sequences and the closed-form Wiener index of caterpillars."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyDegreeSequence, IncompatibleEll, NotATreeDegreeSequence

__all__ = ["DegreeSequence", "validate_degree_sequence", "wiener_from_ell"]


@dataclass(frozen=True)
class DegreeSequence:
    """Normalized tree degree sequence.

    ``degrees`` lists the backbone degrees (those >= 2) in non-decreasing
    order followed by the ``r - n`` ones.  The single-vertex tree is the only
    sequence allowed to contain a zero: ``(0,)``.
    """

    degrees: tuple

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def n(self) -> int:
        return sum(1 for d in self.degrees if d >= 2)

    @property
    def leaf_count(self) -> int:
        return self.r - self.n

    @property
    def backbone(self) -> tuple:
        return self.degrees[: self.n]


def validate_degree_sequence(raw: Sequence[int]) -> DegreeSequence:
    """Check the tree condition ``sum(d) == 2r - 2`` and normalize.

    >>> validate_degree_sequence([3, 1, 3, 1, 1, 1]).degrees
    (3, 3, 1, 1, 1, 1)
    """
    degrees = [int(d) for d in raw]
    if not degrees:
        raise EmptyDegreeSequence("degree sequence is empty")
    r = len(degrees)
    if degrees == [0]:
        return DegreeSequence((0,))
    if min(degrees) < 1:
        raise NotATreeDegreeSequence(f"non-positive degree {min(degrees)}")
    if sum(degrees) != 2 * r - 2:
        raise NotATreeDegreeSequence(
            f"degrees sum to {sum(degrees)}, a tree on {r} vertices needs {2 * r - 2}"
        )
    inner = sorted(d for d in degrees if d >= 2)
    return DegreeSequence(tuple(inner) + (1,) * (r - len(inner)))


def wiener_from_ell(ell: Sequence[int], n: int, r: int) -> int:
    """Wiener index of the caterpillar with leaf counts ``ell`` on its backbone.

    Uses ``W = s^2 + (n-1) s + 1/2 sum_ij (ell_i+1)(ell_j+1)|i-j|`` with
    ``s = sum(ell) = r - n``; the double sum is evaluated through prefix sums.
    """
    ell = list(ell)
    if n < 1 or len(ell) != n or any(x < 0 for x in ell) or sum(ell) != r - n:
        raise IncompatibleEll(f"ell={ell} does not describe a caterpillar with n={n}, r={r}")
    s = r - n
    # sum over i<j of w_i w_j (j - i) == sum over gaps of left_weight * right_weight
    total_w = sum(x + 1 for x in ell)
    left = 0
    half = 0
    for x in ell[:-1]:
        left += x + 1
        half += left * (total_w - left)
    return s * s + (n - 1) * s + half
