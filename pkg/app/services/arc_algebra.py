"""
Khovanov's arc algebra H^n.

As a group H^n is the sum of V(a b̄) over pairs of crossingless matchings.
The product V(a b̄) ⊗ V(b c̄) -> V(a c̄) places the two closures side by
side and collapses b̄b by one saddle per arc of b. The same collapse drives
the bimodule actions on tangle complexes and the gluing map, so it lives
here as :class:`Collapse`.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Tuple

from app import logger
from app.core.exceptions import MatchingError
from app.models.schemas import VerificationReport
from app.services.burnside import Token, surgery_paths
from app.services.frobenius import (
    SYMBOLS,
    EMPTY,
    GradingContext,
    Labeling,
    Values,
    all_labelings,
    birth,
    q_grade,
)
from app.services.matchings import CrossinglessMatching, enumerate_matchings
from app.services.resolutions import ClosedConfig, EdgeKey, close_matchings, glue_closures, match_circles, seam_order

BasisElement = Tuple[int, int, Values]
FormalSum = Dict[int, int]

SURGERY_ORDERS = ("innermost", "outermost")


def add_into(total: Dict, key, coeff: int) -> None:
    value = total.get(key, 0) + coeff
    if value:
        total[key] = value
    else:
        total.pop(key, None)


@dataclass
class Collapse:
    """
    Two closures glued along a shared matching, with the seam saddles
    performed in a fixed order and the result read off on ``target``.

    ``key_map`` sends edge keys of ``target`` to edge keys of the glued
    configuration.
    """

    first: ClosedConfig
    second: ClosedConfig
    target: ClosedConfig
    key_map: Dict[EdgeKey, EdgeKey]
    order: str = "innermost"
    glued: ClosedConfig = field(init=False)
    sites: List[int] = field(init=False)
    final: ClosedConfig = field(init=False)
    readout: List[int] = field(init=False)

    def __post_init__(self):
        if self.first.right != self.second.left:
            raise MatchingError(f"cannot collapse {self.first.right} against {self.second.left}")
        self.glued, seams = glue_closures(self.first, self.second)
        self.sites = seam_order(self.glued, seams, self.first.right, self.order)
        final = self.glued
        for index in self.sites:
            final = final.flip(index)
        self.final = final
        self.readout = match_circles(final, self.target, self.key_map)
        shift = self.first.max_layer() + 1
        self._sources = []
        for circle in self.glued.circles:
            layer, e = circle.min_edge
            if layer < shift:
                self._sources.append((0, self.first.circle_of[(layer, e)]))
            else:
                self._sources.append((1, self.second.circle_of[(layer - shift, e)]))

    def initial(self, x: Values, y: Values) -> Values:
        return tuple(x[k] if side == 0 else y[k] for side, k in self._sources)

    def tokens(self, x: Values, y: Values) -> Dict[Values, List[Token]]:
        """Surgery paths from x ⊗ y grouped by their labeling of ``target``."""
        grouped: Dict[Values, List[Token]] = {}
        for path in surgery_paths(self.glued, self.initial(x, y), self.sites):
            z = tuple(path[-1][k] for k in self.readout)
            grouped.setdefault(z, []).append(path)
        return grouped

    def apply(self, x: Values, y: Values) -> Dict[Values, int]:
        return {z: len(paths) for z, paths in self.tokens(x, y).items()}


def identity_keys(config: ClosedConfig) -> Dict[EdgeKey, EdgeKey]:
    return {e: e for e in config.edges}


@lru_cache(maxsize=None)
def closure(a: CrossinglessMatching, b: CrossinglessMatching) -> ClosedConfig:
    return close_matchings(a, b)


class ArcAlgebra:
    """
    The arc algebra H^n with its multiplication table.

    Basis elements are (a, b, labels) with a, b indices into the canonical
    list of matchings and labels one symbol per circle of a b̄.
    """

    def __init__(self, n: int, order: str = "innermost"):
        if order not in SURGERY_ORDERS:
            raise MatchingError(f"Unknown surgery order: {order}")
        self.n = n
        self.order = order
        self.matchings = enumerate_matchings(n)
        self.basis: List[BasisElement] = []
        for a, b in product(range(len(self.matchings)), repeat=2):
            config = self.closure(a, b)
            self.basis.extend((a, b, values) for values in all_labelings(config.num_circles))
        self.index = {element: i for i, element in enumerate(self.basis)}
        self.table: Dict[Tuple[int, int], FormalSum] = {}
        self.tokens: Dict[Tuple[int, int], Dict[int, Tuple[Token, ...]]] = {}
        self._build_table()

    def closure(self, a: int, b: int) -> ClosedConfig:
        return closure(self.matchings[a], self.matchings[b])

    def _build_table(self) -> None:
        size = len(self.matchings)
        for a, b, c in product(range(size), repeat=3):
            first, second, target = self.closure(a, b), self.closure(b, c), self.closure(a, c)
            collapse = Collapse(first, second, target, identity_keys(target), self.order)
            for x in all_labelings(first.num_circles):
                for y in all_labelings(second.num_circles):
                    i, j = self.index[(a, b, x)], self.index[(b, c, y)]
                    grouped = collapse.tokens(x, y)
                    self.table[(i, j)] = {self.index[(a, c, z)]: len(p) for z, p in grouped.items()}
                    self.tokens[(i, j)] = {self.index[(a, c, z)]: tuple(p) for z, p in grouped.items()}
        logger.info(f"H^{self.n}: rank {self.rank}, {len(self.table)} structure constants ({self.order} surgery order)")

    # ------------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.basis)

    def grading(self, i: int) -> int:
        return q_grade(self.basis[i][2], GradingContext("algebra", m=self.n))

    def idempotent(self, a: int) -> int:
        """Basis index of 1_a, the all-1 labeling of a ā born from the empty configuration."""
        unit = birth(Labeling(EMPTY, ()), self.closure(a, a))
        return self.index[(a, a, unit.values)]

    @property
    def idempotents(self) -> List[int]:
        return [self.idempotent(a) for a in range(len(self.matchings))]

    @property
    def unit(self) -> FormalSum:
        return {i: 1 for i in self.idempotents}

    def multiply(self, x, y) -> FormalSum:
        """
        Product of two formal sums (or basis indices).

        Pairs whose inner matchings differ contribute nothing.
        """
        x = {x: 1} if isinstance(x, int) else x
        y = {y: 1} if isinstance(y, int) else y
        result: FormalSum = {}
        for i, ci in x.items():
            for j, cj in y.items():
                for k, ck in self.table.get((i, j), {}).items():
                    add_into(result, k, ci * cj * ck)
        return result

    def label(self, i: int) -> str:
        a, b, values = self.basis[i]
        symbols = "".join(SYMBOLS[v] for v in values)
        return f"{self.matchings[a]}|{self.matchings[b]}|{symbols}"

    def is_composable(self, i: int, j: int) -> bool:
        return self.basis[i][1] == self.basis[j][0]


@lru_cache(maxsize=8)
def build_arc_algebra(n: int, order: str = "innermost") -> ArcAlgebra:
    """
    Build H^n with its full structure-constant table.

    Args:
        n: Half the number of boundary points
        order: Order of the saddles collapsing b̄b

    Returns:
        ArcAlgebra, cached per (n, order)
    """
    if n < 0:
        raise MatchingError(f"n must be non-negative, got {n}")
    return ArcAlgebra(n, order)


def multiply(algebra: ArcAlgebra, x, y) -> FormalSum:
    return algebra.multiply(x, y)


def verify_algebra(algebra: ArcAlgebra, compare_order: Optional[str] = None) -> VerificationReport:
    """
    Exhaustively check the arc algebra axioms.

    Covers associativity over all basis triples, unitality, idempotent
    orthogonality, vanishing of products with different inner matchings,
    grading additivity, the lowest grading, agreement of the correspondence
    table with the integer table and independence of the surgery order.
    """
    report = VerificationReport(subject=f"H^{algebra.n}")
    rank = algebra.rank
    report.stats["rank"] = rank
    report.stats["structure_constants"] = sum(len(v) for v in algebra.table.values())

    by_left: Dict[int, List[int]] = {}
    for i, (a, _, _) in enumerate(algebra.basis):
        by_left.setdefault(a, []).append(i)

    triples = 0
    for i in range(rank):
        for j in by_left.get(algebra.basis[i][1], ()):
            xy = algebra.multiply(i, j)
            for k in by_left.get(algebra.basis[j][1], ()):
                triples += 1
                left = algebra.multiply(xy, k)
                right = algebra.multiply(i, algebra.multiply(j, k))
                report.record("associativity", left == right,
                              f"({algebra.label(i)})({algebra.label(j)})({algebra.label(k)})")
    report.stats["associativity_triples"] = triples

    unit = algebra.unit
    for i in range(rank):
        report.record("unitality", algebra.multiply(unit, i) == {i: 1} and algebra.multiply(i, unit) == {i: 1},
                      algebra.label(i))

    idempotents = algebra.idempotents
    for p, e in enumerate(idempotents):
        for r, f in enumerate(idempotents):
            expected = {e: 1} if p == r else {}
            report.record("idempotents", algebra.multiply(e, f) == expected, f"1_{p} * 1_{r}")

    for i in range(rank):
        for j in range(rank):
            if not algebra.is_composable(i, j):
                report.record("inner_mismatch", not algebra.multiply(i, j),
                              f"{algebra.label(i)} * {algebra.label(j)}")

    for (i, j), result in algebra.table.items():
        for k in result:
            report.record("grading", algebra.grading(k) == algebra.grading(i) + algebra.grading(j),
                          f"{algebra.label(i)} * {algebra.label(j)} -> {algebra.label(k)}")
        tokens = algebra.tokens[(i, j)]
        report.record("abelianization", {k: len(t) for k, t in tokens.items()} == result,
                      f"{algebra.label(i)} * {algebra.label(j)}")

    gradings = [algebra.grading(i) for i in range(rank)]
    lowest = {i for i, q in enumerate(gradings) if q == min(gradings, default=0)}
    report.record("lowest_grading", min(gradings, default=0) == 0 and lowest == set(idempotents),
                  f"grading 0 is carried by {sorted(lowest)}")

    other = compare_order or ("outermost" if algebra.order == "innermost" else "innermost")
    if other != algebra.order:
        twin = build_arc_algebra(algebra.n, other)
        diff = [key for key in set(algebra.table) | set(twin.table)
                if algebra.table.get(key, {}) != twin.table.get(key, {})]
        report.record("surgery_order", not diff,
                      f"{len(diff)} products change under the {other} order")

    logger.info(f"H^{algebra.n} verification {'passed' if report.passed else 'FAILED'}")
    return report