"""
Khovanov's Frobenius algebra V = Z[X]/(X^2) acting on circle labelings.

Labels are stored as bits: 0 for ``1`` and 1 for ``X``.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from app import logger
from app.core.exceptions import SurgeryError
from app.services.resolutions import ClosedConfig, ResolutionConfig, shift_config

ONE, X = 0, 1
SYMBOLS = ("1", "X")

Values = Tuple[int, ...]


class FrobeniusV:
    """Structure constants of V on the basis (1, X)."""

    unit = ONE

    @staticmethod
    def multiply(a: int, b: int) -> List[int]:
        if a == X and b == X:
            return []
        return [X if X in (a, b) else ONE]

    @staticmethod
    def comultiply(a: int) -> List[Tuple[int, int]]:
        if a == ONE:
            return [(ONE, X), (X, ONE)]
        return [(X, X)]

    @staticmethod
    def counit(a: int) -> int:
        # no death moves occur in the cube or the algebra
        return 1 if a == X else 0

    @classmethod
    def verify_axioms(cls) -> Dict[str, bool]:
        """Check the Frobenius algebra axioms on the rank-2 basis."""

        def mult(x: Dict[Tuple[int, ...], int], left: int) -> Dict[Tuple[int, ...], int]:
            # multiply tensor positions (left, left+1)
            out: Dict[Tuple[int, ...], int] = {}
            for key, coeff in x.items():
                for c in cls.multiply(key[left], key[left + 1]):
                    new = key[:left] + (c,) + key[left + 2:]
                    out[new] = out.get(new, 0) + coeff
            return {k: v for k, v in out.items() if v}

        def comult(x: Dict[Tuple[int, ...], int], pos: int) -> Dict[Tuple[int, ...], int]:
            out: Dict[Tuple[int, ...], int] = {}
            for key, coeff in x.items():
                for b, c in cls.comultiply(key[pos]):
                    new = key[:pos] + (b, c) + key[pos + 1:]
                    out[new] = out.get(new, 0) + coeff
            return {k: v for k, v in out.items() if v}

        checks = {"associative": True, "commutative": True, "unital": True,
                  "coassociative": True, "cocommutative": True, "counital": True, "frobenius": True}
        for a, b, c in product((ONE, X), repeat=3):
            start = {(a, b, c): 1}
            checks["associative"] &= mult(mult(start, 0), 0) == mult(mult(start, 1), 0)
        for a, b in product((ONE, X), repeat=2):
            checks["commutative"] &= cls.multiply(a, b) == cls.multiply(b, a)
            lhs = comult(mult({(a, b): 1}, 0), 0)
            checks["frobenius"] &= lhs == mult(comult({(a, b): 1}, 1), 0)
            checks["frobenius"] &= lhs == mult(comult({(a, b): 1}, 0), 1)
        for a in (ONE, X):
            checks["unital"] &= cls.multiply(cls.unit, a) == [a]
            checks["coassociative"] &= comult(comult({(a,): 1}, 0), 0) == comult(comult({(a,): 1}, 0), 1)
            swapped = sorted((c, b) for b, c in cls.comultiply(a))
            checks["cocommutative"] &= swapped == sorted(cls.comultiply(a))
            counted = {}
            for b, c in cls.comultiply(a):
                if cls.counit(c):
                    counted[b] = counted.get(b, 0) + cls.counit(c)
            checks["counital"] &= counted == {a: 1}
        return checks


@dataclass(frozen=True)
class Labeling:
    """A generator of V(Z): one label per circle of ``config``."""

    config: ClosedConfig
    values: Values

    def __post_init__(self):
        if len(self.values) != self.config.num_circles:
            raise SurgeryError(
                f"labeling has {len(self.values)} labels for {self.config.num_circles} circles"
            )

    @property
    def p(self) -> int:
        return sum(1 for v in self.values if v == ONE)

    @property
    def n(self) -> int:
        return sum(1 for v in self.values if v == X)

    def symbol(self) -> str:
        return "⊗".join(SYMBOLS[v] for v in self.values) or "∅"


@dataclass(frozen=True)
class GradingContext:
    """
    Quantum grading shift for labelings.

    Algebra side: shift m. Tangle side: shift n - |v| (writhe terms are
    added by the complex).
    """

    kind: str
    m: int = 0
    n: int = 0
    weight: int = 0

    @property
    def shift(self) -> int:
        if self.kind == "algebra":
            return self.m
        if self.kind == "tangle":
            return self.n - self.weight
        raise ValueError(f"unknown grading context {self.kind}")


def q_grade(x, context: GradingContext) -> int:
    """n(x) - p(x) plus the context shift; ``x`` is a Labeling or a value tuple."""
    values = x.values if isinstance(x, Labeling) else x
    xs = sum(values)
    return xs - (len(values) - xs) + context.shift


def all_labelings(num_circles: int) -> List[Values]:
    """Labelings in canonical order (lexicographic, 1 before X)."""
    return [tuple(v) for v in product((ONE, X), repeat=num_circles)]


@lru_cache(maxsize=65536)
def surgery_table(config: ResolutionConfig, index: int) -> Tuple[ResolutionConfig, Dict[Values, Tuple[Values, ...]]]:
    """
    The TQFT map of the surgery at site ``index`` on every labeling.

    Returns:
        The configuration after surgery and, for each source labeling, the
        target labelings appearing with coefficient 1
    """
    record_a, record_b = config.surgery_records[index]
    if not (record_a.closed and record_b.closed):
        raise SurgeryError(f"site {config.sites[index].label} is not on closed circles")
    after = config.flip(index)
    old_index = [config.circle_of[c.min_edge] for c in after.circles]
    table: Dict[Values, Tuple[Values, ...]] = {}

    if record_a.component != record_b.component:
        first, second = record_a.component, record_b.component
        merged = after.circle_of[config.circles[first].min_edge]
        if after.circle_of[config.circles[second].min_edge] != merged:
            raise SurgeryError(f"merge at {config.sites[index].label} did not join its circles")
        for x in all_labelings(config.num_circles):
            results = []
            for label in FrobeniusV.multiply(x[first], x[second]):
                results.append(tuple(label if k == merged else x[old_index[k]]
                                     for k in range(after.num_circles)))
            table[x] = tuple(results)
    else:
        split = record_a.component
        p, q = config.sites[index].junctions()[0]
        one, two = after.circle_of[p[0]], after.circle_of[q[0]]
        if one == two:
            raise SurgeryError(f"split at {config.sites[index].label} left a single circle")
        for x in all_labelings(config.num_circles):
            results = []
            for a, b in FrobeniusV.comultiply(x[split]):
                y = []
                for k in range(after.num_circles):
                    y.append(a if k == one else b if k == two else x[old_index[k]])
                results.append(tuple(y))
            table[x] = tuple(results)
    return after, table


def apply_surgery(x: Labeling, index: int) -> Dict[Labeling, int]:
    """
    Apply the merge or split at site ``index`` to ``x``.

    Raises:
        SurgeryError: If the site is not on ``x``'s circles
    """
    if not 0 <= index < len(x.config.sites):
        raise SurgeryError(f"site {index} is not part of the configuration")
    after, table = surgery_table(x.config, index)
    return {Labeling(after, y): 1 for y in table[x.values]}


def apply_surgeries(config: ResolutionConfig, values: Values, order: Sequence[int]) -> Tuple[ResolutionConfig, Dict[Values, int]]:
    """Run a sequence of surgeries on a formal sum, starting from one labeling."""
    current = {values: 1}
    for index in order:
        config, table = surgery_table(config, index)
        nxt: Dict[Values, int] = {}
        for x, coeff in current.items():
            for y in table[x]:
                nxt[y] = nxt.get(y, 0) + coeff
        current = {k: c for k, c in nxt.items() if c}
    return config, current


def juxtapose(first: ClosedConfig, second: ClosedConfig) -> ClosedConfig:
    """Disjoint union with ``second`` placed on new layers."""
    moved = shift_config(second, first.max_layer() + 1)
    left = first.left if first.edges else second.left
    right = first.right if first.edges else second.right
    return ClosedConfig(first.edges + moved.edges, first.fixed + moved.fixed, first.sites + moved.sites,
                        first.boundary + moved.boundary if not first.edges else first.boundary,
                        first.v + moved.v, left=left, right=right)


EMPTY = ClosedConfig((), (), (), (), ())


def birth(x: Labeling, new_circles: ClosedConfig) -> Labeling:
    """Add the circles of ``new_circles`` labelled 1."""
    union = juxtapose(x.config, new_circles)
    old = {e: k for e, k in x.config.circle_of.items()}
    shift = x.config.max_layer() + 1
    values = []
    for circle in union.circles:
        layer, e = circle.min_edge
        if (layer, e) in old and layer < shift:
            values.append(x.values[old[(layer, e)]])
        else:
            values.append(ONE)
    logger.debug(f"birth of {new_circles.num_circles} circles on {x.config.num_circles}")
    return Labeling(union, tuple(values))
