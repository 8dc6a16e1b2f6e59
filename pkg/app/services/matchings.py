"""
Crossingless matchings of 2n boundary points.

Points are numbered 1..2n bottom-to-top. Matchings are kept in a canonical
order (lexicographic on their sorted pair lists) so that every basis built
on top of them is reproducible.
"""
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Tuple

from app.core.exceptions import MatchingError

Pair = Tuple[int, int]


@dataclass(frozen=True, order=True)
class CrossinglessMatching:
    """A non-crossing perfect matching of {1, ..., 2n}."""

    n: int
    pairs: Tuple[Pair, ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        points = sorted(p for pair in pairs for p in pair)
        if points != list(range(1, 2 * self.n + 1)):
            raise MatchingError(f"pairs {pairs} are not a perfect matching of 1..{2 * self.n}")
        for i, j in pairs:
            for k, l in pairs:
                if i < k < j < l:
                    raise MatchingError(f"pairs ({i},{j}) and ({k},{l}) cross")

    @property
    def partner(self) -> Dict[int, int]:
        table = {}
        for i, j in self.pairs:
            table[i] = j
            table[j] = i
        return table

    def surgery_order(self, order: str = "innermost") -> List[Pair]:
        """
        Order in which the arcs of this matching are surgered when b̄b is
        collapsed to the identity.

        Nested arcs have strictly smaller span than the arcs around them,
        so sorting by span puts innermost arcs first.
        """
        if order not in ("innermost", "outermost"):
            raise MatchingError(f"Unknown surgery order: {order}")
        ranked = sorted(self.pairs, key=lambda p: (p[1] - p[0], p[0]))
        return ranked if order == "innermost" else ranked[::-1]

    def label(self) -> str:
        return "{" + ",".join(f"({i},{j})" for i, j in self.pairs) + "}"

    def __str__(self) -> str:
        return self.label()


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def _matchings_of(points: Tuple[int, ...]) -> List[Tuple[Pair, ...]]:
    if not points:
        return [()]
    first = points[0]
    result = []
    # first pairs with a point leaving an even number of points on each side
    for k in range(1, len(points), 2):
        inner = points[1:k]
        outer = points[k + 1:]
        for left in _matchings_of(inner):
            for right in _matchings_of(outer):
                result.append(((first, points[k]),) + left + right)
    return result


@lru_cache(maxsize=None)
def enumerate_matchings(n: int) -> Tuple[CrossinglessMatching, ...]:
    """
    Enumerate all crossingless matchings of 2n points in canonical order.

    Args:
        n: Half the number of boundary points

    Returns:
        Tuple of Catalan(n) matchings, sorted lexicographically by pair list
    """
    if n < 0:
        raise MatchingError(f"n must be non-negative, got {n}")
    found = [CrossinglessMatching(n, pairs) for pairs in _matchings_of(tuple(range(1, 2 * n + 1)))]
    return tuple(sorted(found, key=lambda m: m.pairs))


def matching_index(matching: CrossinglessMatching) -> int:
    return enumerate_matchings(matching.n).index(matching)
