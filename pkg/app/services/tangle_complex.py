"""
The Khovanov complex of a tangle and its Burnside-level cube.

For a (2m, 2n)-tangle T the complex is the sum over matchings a, b and
vertices v of V(a T_v b̄). Edge maps are surgeries with standard signs,
H^m acts on the left and H^n on the right by collapsing the shared
matching.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from app import logger
from app.config.settings import settings
from app.core.exceptions import VerificationError
from app.models.schemas import VerificationReport
from app.services.arc_algebra import ArcAlgebra, Collapse, FormalSum, add_into, build_arc_algebra, closure, identity_keys
from app.services.burnside import (
    Correspondence,
    FaceSquare,
    check_face,
    check_hexagon,
    cube_faces,
    saddle_correspondence,
)
from app.services.diagrams import TangleDiagram, _union_find_classes, reorder_diagram, writhe_counts
from app.services.frobenius import GradingContext, Values, all_labelings, q_grade, surgery_table
from app.services.homology import ChainComplex
from app.services.matchings import CrossinglessMatching, enumerate_matchings
from app.services.resolutions import ClosedConfig, close_resolution, resolve, vertices


class Generator(NamedTuple):
    a: int
    b: int
    v: Tuple[int, ...]
    values: Values


def standard_sign(v: Sequence[int], i: int) -> int:
    """(-1)^{#{j < i : v_j = 1}} for the edge leaving v in direction i (0-based)."""
    if v[i] != 0:
        raise ValueError(f"no edge leaves {tuple(v)} in direction {i}")
    return -1 if sum(v[:i]) % 2 else 1


def closed_config(diagram: TangleDiagram, a: CrossinglessMatching, b: CrossinglessMatching,
                  v: Tuple[int, ...]) -> ClosedConfig:
    return close_resolution(a, resolve(diagram, v), b)


def _cube_block(diagram: TangleDiagram, a: CrossinglessMatching, b: CrossinglessMatching):
    """Generators and signed edge maps of the (a, b) summand, keyed by (v, values)."""
    gens: List[Tuple[Tuple[int, ...], Values]] = []
    edges: List[Tuple[Tuple[Tuple[int, ...], Values], Tuple[Tuple[int, ...], Values], int]] = []
    for v in vertices(diagram.num_crossings):
        config = closed_config(diagram, a, b, v)
        gens.extend((v, x) for x in all_labelings(config.num_circles))
        for i, bit in enumerate(v):
            if bit:
                continue
            sign = standard_sign(v, i)
            after, table = surgery_table(config, i)
            w = after.v
            for x, ys in table.items():
                for y in ys:
                    edges.append(((v, x), (w, y), sign))
    return gens, edges


class KhComplex:
    """
    The bigraded complex C_Kh(T) with its arc algebra actions.

    Generators are ordered by (a, b, v, labels). ``differential[g]`` maps
    generator g to its signed image.
    """

    def __init__(self, diagram: TangleDiagram, jobs: Optional[int] = None):
        self.diagram = diagram
        self.name = diagram.name or "tangle"
        self.m, self.n = diagram.m, diagram.n
        self.positive, self.negative = writhe_counts(diagram)
        self.left_matchings = enumerate_matchings(self.m)
        self.right_matchings = enumerate_matchings(self.n)
        self.generators: List[Generator] = []
        self.differential: Dict[int, Dict[int, int]] = {}
        self._configs: Dict[Tuple[int, int, Tuple[int, ...]], ClosedConfig] = {}
        self._collapses: Dict[Tuple, Collapse] = {}
        self._build(jobs or settings.JOBS)

    def _build(self, jobs: int) -> None:
        pairs = self.pairs()
        args = [(self.diagram, self.left_matchings[a], self.right_matchings[b]) for a, b in pairs]
        if jobs > 1 and len(pairs) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                blocks = list(pool.map(_cube_block, *zip(*args)))
        else:
            blocks = [_cube_block(*arg) for arg in args]

        for (a, b), (gens, _) in zip(pairs, blocks):
            self.generators.extend(Generator(a, b, v, x) for v, x in gens)
        self.index = {g: k for k, g in enumerate(self.generators)}
        for (a, b), (_, edges) in zip(pairs, blocks):
            for (v, x), (w, y), sign in edges:
                source = self.index[Generator(a, b, v, x)]
                add_into(self.differential.setdefault(source, {}), self.index[Generator(a, b, w, y)], sign)

        self.h = [self.negative - sum(g.v) for g in self.generators]
        self.q = [
            q_grade(g.values, GradingContext("tangle", n=self.n, weight=sum(g.v))) - self.positive + 2 * self.negative
            for g in self.generators
        ]
        logger.info(
            f"{self.name}: {len(self.generators)} generators over {len(pairs)} matching pairs, "
            f"N+={self.positive}, N-={self.negative}"
        )

    # ------------------------------------------------------------------

    def pairs(self) -> List[Tuple[int, int]]:
        return [(a, b) for a in range(len(self.left_matchings)) for b in range(len(self.right_matchings))]

    @property
    def num_crossings(self) -> int:
        return self.diagram.num_crossings

    @property
    def rank(self) -> int:
        return len(self.generators)

    @cached_property
    def left_algebra(self) -> ArcAlgebra:
        return build_arc_algebra(self.m, settings.SURGERY_ORDER)

    @cached_property
    def right_algebra(self) -> ArcAlgebra:
        return build_arc_algebra(self.n, settings.SURGERY_ORDER)

    def config(self, a: int, b: int, v: Tuple[int, ...]) -> ClosedConfig:
        key = (a, b, tuple(v))
        if key not in self._configs:
            self._configs[key] = closed_config(self.diagram, self.left_matchings[a], self.right_matchings[b], key[2])
        return self._configs[key]

    def d(self, chain: FormalSum) -> FormalSum:
        result: FormalSum = {}
        for g, c in chain.items():
            for t, ct in self.differential.get(g, {}).items():
                add_into(result, t, c * ct)
        return result

    def act_left(self, x: int, g: int) -> FormalSum:
        """x · g for a basis element x of H^m."""
        a2, a1, xv = self.left_algebra.basis[x]
        gen = self.generators[g]
        if a1 != gen.a:
            return {}
        key = ("left", a2, gen.a, gen.b, gen.v)
        if key not in self._collapses:
            first = closure(self.left_matchings[a2], self.left_matchings[gen.a])
            second = self.config(gen.a, gen.b, gen.v)
            target = self.config(a2, gen.b, gen.v)
            shift = first.max_layer() + 1
            keys = {e: (e[0] + shift, e[1]) for e in target.edges}
            self._collapses[key] = Collapse(first, second, target, keys, settings.SURGERY_ORDER)
        images = self._collapses[key].apply(xv, gen.values)
        return {self.index[Generator(a2, gen.b, gen.v, z)]: c for z, c in images.items()}

    def act_right(self, g: int, y: int) -> FormalSum:
        """g · y for a basis element y of H^n."""
        b1, c, yv = self.right_algebra.basis[y]
        gen = self.generators[g]
        if b1 != gen.b:
            return {}
        key = ("right", gen.a, gen.b, c, gen.v)
        if key not in self._collapses:
            first = self.config(gen.a, gen.b, gen.v)
            second = closure(self.right_matchings[gen.b], self.right_matchings[c])
            target = self.config(gen.a, c, gen.v)
            self._collapses[key] = Collapse(first, second, target, identity_keys(target), settings.SURGERY_ORDER)
        images = self._collapses[key].apply(gen.values, yv)
        return {self.index[Generator(gen.a, c, gen.v, z)]: k for z, k in images.items()}

    def act_left_sum(self, x: FormalSum, chain: FormalSum) -> FormalSum:
        result: FormalSum = {}
        for i, ci in x.items():
            for g, cg in chain.items():
                for t, ct in self.act_left(i, g).items():
                    add_into(result, t, ci * cg * ct)
        return result

    def act_right_sum(self, chain: FormalSum, y: FormalSum) -> FormalSum:
        result: FormalSum = {}
        for g, cg in chain.items():
            for j, cj in y.items():
                for t, ct in self.act_right(g, j).items():
                    add_into(result, t, cg * cj * ct)
        return result

    def block(self, pair: Optional[Tuple[int, int]] = None) -> List[int]:
        if pair is None:
            return list(range(self.rank))
        return [g for g, gen in enumerate(self.generators) if (gen.a, gen.b) == tuple(pair)]

    def to_chain_complex(self, pair: Optional[Tuple[int, int]] = None) -> ChainComplex:
        """Bigraded matrices of the (a, b) summand, or of the whole complex."""
        chosen = self.block(pair)
        by_grading: Dict[Tuple[int, int], List[int]] = {}
        for g in chosen:
            by_grading.setdefault((self.h[g], self.q[g]), []).append(g)
        position = {g: k for gens in by_grading.values() for k, g in enumerate(gens)}
        dims = {k: len(v) for k, v in by_grading.items()}
        maps = {}
        for (h, q), sources in by_grading.items():
            targets = by_grading.get((h - 1, q))
            if not targets:
                continue
            matrix = np.zeros((len(targets), len(sources)), dtype=object)
            for g in sources:
                for t, c in self.differential.get(g, {}).items():
                    matrix[position[t], position[g]] += c
            maps[(h, q)] = matrix
        return ChainComplex(dims, maps)

    def euler_characteristic(self, pair: Optional[Tuple[int, int]] = None) -> Dict[int, int]:
        return self.to_chain_complex(pair).euler()

    def label(self, g: int) -> str:
        gen = self.generators[g]
        symbols = "".join("1X"[x] for x in gen.values)
        bits = "".join(str(b) for b in gen.v)
        return f"{self.left_matchings[gen.a]}|{self.right_matchings[gen.b]}|{bits or '-'}|{symbols}"


# ----------------------------------------------------------------------
# Burnside-level data


@dataclass
class StableFunctorData:
    """
    The Burnside-valued cube of T without writhe shifts, plus S = N_+.

    Configurations are stored per (a, b, v); edge correspondences are built
    on demand.
    """

    diagram: TangleDiagram
    shift: int
    left_matchings: Tuple[CrossinglessMatching, ...]
    right_matchings: Tuple[CrossinglessMatching, ...]
    configs: Dict[Tuple[int, int, Tuple[int, ...]], ClosedConfig] = field(default_factory=dict, repr=False)

    def generators(self, a: int, b: int, v: Tuple[int, ...]) -> List[Values]:
        return all_labelings(self.config(a, b, v).num_circles)

    def config(self, a: int, b: int, v: Tuple[int, ...]) -> ClosedConfig:
        key = (a, b, tuple(v))
        if key not in self.configs:
            self.configs[key] = closed_config(self.diagram, self.left_matchings[a], self.right_matchings[b], key[2])
        return self.configs[key]

    def edge_correspondence(self, a: int, b: int, v: Tuple[int, ...], i: int) -> Correspondence:
        w = tuple(1 if k == i else bit for k, bit in enumerate(v))
        return saddle_correspondence(self.config(a, b, v), self.config(a, b, w), i)

    def left_action_correspondence(self, a2: int, a: int, b: int, v: Tuple[int, ...]) -> Correspondence:
        """The correspondence H^m(a2, a) x V(a T_v b̄) -> V(a2 T_v b̄) of the multi-merge."""
        first = closure(self.left_matchings[a2], self.left_matchings[a])
        second = self.config(a, b, v)
        target = self.config(a2, b, v)
        shift = first.max_layer() + 1
        collapse = Collapse(first, second, target, {e: (e[0] + shift, e[1]) for e in target.edges},
                            settings.SURGERY_ORDER)
        sources = [(x, y) for x in all_labelings(first.num_circles) for y in all_labelings(second.num_circles)]
        fibers = {}
        for x, y in sources:
            for z, paths in collapse.tokens(x, y).items():
                fibers[(z, (x, y))] = tuple(paths)
        return Correspondence(tuple(sources), tuple(all_labelings(target.num_circles)), fibers)

    def check_coherence(self, rule: Optional[str] = None) -> VerificationReport:
        """check_face on every 2-face and check_hexagon on every 3-face of every (a, b) cube."""
        rule = rule or settings.LADYBUG_RULE
        report = VerificationReport(subject=f"{self.diagram.name or 'tangle'} [{rule}]")
        n = self.diagram.num_crossings
        stats = {"faces": 0, "ladybug_fibers": 0, "hexagons": 0, "hexagon_tokens": 0}
        for a in range(len(self.left_matchings)):
            for b in range(len(self.right_matchings)):
                corners = list(vertices(n))
                for v, (i, j) in cube_faces(n, 2, corners):
                    verdict = check_face(FaceSquare.from_config(self.config(a, b, v), i, j, rule))
                    stats["faces"] += 1
                    stats["ladybug_fibers"] += verdict.ladybugs
                    report.record("faces", verdict.passed, f"({a},{b}) v={v} face ({i},{j}): {verdict.problems[:1]}")
                for v, sites in cube_faces(n, 3, corners):
                    verdict = check_hexagon(self.config(a, b, v), sites, rule)
                    stats["hexagons"] += 1
                    stats["hexagon_tokens"] += verdict.tokens_checked
                    report.record("hexagons", verdict.passed, f"({a},{b}) v={v} sites {sites}: {verdict.problems[:1]}")
        report.checks.setdefault("faces", True)
        report.checks.setdefault("hexagons", True)
        report.stats.update(stats)
        logger.info(f"coherence of {report.subject}: {stats['faces']} faces, {stats['hexagons']} hexagons, "
                    f"{'passed' if report.passed else 'FAILED'}")
        return report


def build_complex(diagram: TangleDiagram, jobs: Optional[int] = None,
                  verify: Optional[bool] = None) -> Tuple[KhComplex, StableFunctorData]:
    """
    Build C_Kh(T) and its stable functor data.

    Raises:
        OrientationError: If the diagram has unsigned crossings
        VerificationError: In verify mode, if the complex fails its checks
    """
    K = KhComplex(diagram, jobs)
    data = StableFunctorData(diagram, K.positive, K.left_matchings, K.right_matchings, K._configs)
    if settings.VERIFY if verify is None else verify:
        report = verify_complex(K)
        if not report.passed:
            logger.error(f"complex of {K.name} failed verification: {report.counterexamples[:3]}")
            raise VerificationError(f"complex of {K.name} failed verification", report)
    return K, data


def verify_complex(K: KhComplex, actions: bool = True) -> VerificationReport:
    """
    Check d² = 0, the gradings of d, the entries of the unsigned edge maps
    and, with ``actions``, that both arc algebra actions are unital,
    associative, graded, commute with each other and with d.
    """
    report = VerificationReport(subject=K.name)
    report.stats["generators"] = K.rank
    report.stats["differential_entries"] = sum(len(v) for v in K.differential.values())
    for g in range(K.rank):
        image = K.d({g: 1})
        report.record("d_squared", not K.d(image), f"d²({K.label(g)}) ≠ 0")
        for t, c in image.items():
            report.record("entries", abs(c) == 1, f"{K.label(g)} -> {K.label(t)} has coefficient {c}")
            report.record("h_drops", K.h[t] == K.h[g] - 1, f"{K.label(g)} -> {K.label(t)}")
            report.record("q_preserved", K.q[t] == K.q[g], f"{K.label(g)} -> {K.label(t)}")
    if not actions:
        return report

    left, right = K.left_algebra, K.right_algebra
    for g in range(K.rank):
        report.record("left_unit", K.act_left_sum(left.unit, {g: 1}) == {g: 1}, K.label(g))
        report.record("right_unit", K.act_right_sum({g: 1}, right.unit) == {g: 1}, K.label(g))
        dg = K.d({g: 1})
        for x in range(left.rank):
            xg = K.act_left(x, g)
            if not xg:
                continue
            report.record("left_chain_map", K.d(xg) == K.act_left_sum({x: 1}, dg), f"{left.label(x)} · {K.label(g)}")
            for t in xg:
                report.record("left_grading", K.q[t] == K.q[g] + left.grading(x), f"{left.label(x)} · {K.label(g)}")
            for y in range(left.rank):
                if left.is_composable(y, x):
                    report.record("left_associative",
                                  K.act_left_sum(left.multiply(y, x), {g: 1}) == K.act_left_sum({y: 1}, xg),
                                  f"{left.label(y)} · {left.label(x)} · {K.label(g)}")
            for y in range(right.rank):
                if right.basis[y][0] == K.generators[g].b:
                    report.record("bimodule",
                                  K.act_right_sum(xg, {y: 1}) == K.act_left_sum({x: 1}, K.act_right(g, y)),
                                  f"{left.label(x)} · {K.label(g)} · {right.label(y)}")
        for y in range(right.rank):
            gy = K.act_right(g, y)
            if not gy:
                continue
            report.record("right_chain_map", K.d(gy) == K.act_right_sum(dg, {y: 1}), f"{K.label(g)} · {right.label(y)}")
            for t in gy:
                report.record("right_grading", K.q[t] == K.q[g] + right.grading(y), f"{K.label(g)} · {right.label(y)}")
            for z in range(right.rank):
                if right.is_composable(y, z):
                    report.record("right_associative",
                                  K.act_right_sum({g: 1}, right.multiply(y, z)) == K.act_right_sum(gy, {z: 1}),
                                  f"{K.label(g)} · {right.label(y)} · {right.label(z)}")
    logger.info(f"complex of {K.name}: verification {'passed' if report.passed else 'FAILED'}")
    return report


# ----------------------------------------------------------------------
# crossing order


def reorder_crossings(K: KhComplex, permutation: Sequence[int]) -> KhComplex:
    """The complex of the same diagram with crossing k replaced by old crossing ``permutation[k]``."""
    return KhComplex(reorder_diagram(K.diagram, permutation))


def reordering_isomorphism(K: KhComplex, reordered: KhComplex, permutation: Sequence[int]) -> Dict[int, Tuple[int, int]]:
    """
    Signed permutation of generators from ``K`` to ``reordered``.

    A generator at v is sent to the vertex with coordinates permuted, with
    the sign of the permutation that sorts the 1-coordinates of v into the
    new crossing order.
    """
    new_position = {old: new for new, old in enumerate(permutation)}
    result = {}
    for g, gen in enumerate(K.generators):
        w = tuple(gen.v[old] for old in permutation)
        ones = [new_position[j] for j, bit in enumerate(gen.v) if bit]
        inversions = sum(1 for x in range(len(ones)) for y in range(x + 1, len(ones)) if ones[x] > ones[y])
        target = reordered.index[Generator(gen.a, gen.b, w, gen.values)]
        result[g] = (target, -1 if inversions % 2 else 1)
    return result


# ----------------------------------------------------------------------
# Jones polynomial cross-check


def _state_circles(diagram: TangleDiagram, v: Sequence[int]) -> int:
    links = []
    for c, bit in zip(diagram.crossings, v):
        e = c.edges
        joins = ((0, 1), (2, 3)) if bit == 0 else ((0, 3), (1, 2))
        links.extend((e[p], e[q]) for p, q in joins)
    return len(set(_union_find_classes(diagram.edges, links).values()))


def jones_state_sum(diagram: TangleDiagram) -> Dict[int, int]:
    """
    Unnormalized Jones polynomial of a closed diagram as {q exponent: coefficient}.

    (-1)^{N_-} q^{2N_- - N_+} Σ_v (-1)^{|v|} q^{-|v|} (q + q^{-1})^{c(v)}, with circles
    counted straight from the crossing smoothings.
    """
    if diagram.m or diagram.n:
        raise ValueError(f"{diagram} has boundary; the state sum needs a closed diagram")
    positive, negative = writhe_counts(diagram)
    total: Dict[int, int] = {}
    for v in vertices(diagram.num_crossings):
        weight = sum(v)
        poly = {0: 1}
        for _ in range(_state_circles(diagram, v)):
            nxt: Dict[int, int] = {}
            for e, c in poly.items():
                for step in (-1, 1):
                    nxt[e + step] = nxt.get(e + step, 0) + c
            poly = nxt
        for e, c in poly.items():
            key = e - weight - positive + 2 * negative
            total[key] = total.get(key, 0) + (-1) ** ((weight + negative) % 2) * c
    return {q: c for q, c in sorted(total.items()) if c}
