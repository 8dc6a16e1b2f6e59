"""
Burnside-category refinement of the TQFT maps.

A correspondence between generator sets is a matrix of finite sets. Each
token records its path of labelings, so composites concatenate paths and
face bijections can be checked token by token. Split-then-merge faces on
a single circle carry two tokens per fiber; the ladybug matching pairs
them using the side data stored in the surgery records.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from app import logger
from app.core.exceptions import CorrespondenceError, SurgeryError
from app.services.frobenius import Values, all_labelings, surgery_table
from app.services.resolutions import ResolutionConfig

Token = Tuple[Values, ...]
Fibers = Dict[Tuple[Hashable, Hashable], Tuple[Token, ...]]

LADYBUG_RULES = ("right", "left", "alternating")


@dataclass
class Correspondence:
    """A (target x source)-matrix of finite sets of tokens."""

    source: Tuple[Hashable, ...]
    target: Tuple[Hashable, ...]
    fibers: Fibers = field(default_factory=dict)

    def fiber(self, y, x) -> Tuple[Token, ...]:
        return self.fibers.get((y, x), ())

    def size(self, y, x) -> int:
        return len(self.fiber(y, x))


def identity_correspondence(generators: Sequence[Hashable]) -> Correspondence:
    gens = tuple(generators)
    return Correspondence(gens, gens, {(x, x): ((x,),) for x in gens})


def saddle_correspondence(frm: ResolutionConfig, to: Optional[ResolutionConfig], index: int) -> Correspondence:
    """
    The correspondence of a single surgery: one token per TQFT term.

    Raises:
        SurgeryError: If ``to`` is not ``frm`` with the surgery applied
    """
    after, table = surgery_table(frm, index)
    if to is not None and to != after:
        raise SurgeryError(f"target configuration is not the result of surgery at {frm.sites[index].label}")
    fibers: Fibers = {}
    for x, ys in table.items():
        for y in ys:
            fibers[(y, x)] = fibers.get((y, x), ()) + ((x, y),)
    return Correspondence(tuple(all_labelings(frm.num_circles)), tuple(all_labelings(after.num_circles)), fibers)


def compose(second: Correspondence, first: Correspondence) -> Correspondence:
    """
    Composite ``second ∘ first``; tokens concatenate their paths.

    Raises:
        CorrespondenceError: If the middle generator sets differ
    """
    if first.target != second.source:
        raise CorrespondenceError("cannot compose: target of the first map is not the source of the second")
    by_source: Dict[Hashable, List[Tuple[Hashable, Tuple[Token, ...]]]] = {}
    for (z, y), tokens in second.fibers.items():
        by_source.setdefault(y, []).append((z, tokens))
    fibers: Dict[Tuple[Hashable, Hashable], List[Token]] = {}
    for y in first.target:
        for (yy, x), left in first.fibers.items():
            if yy != y:
                continue
            for z, right in by_source.get(y, ()):
                bucket = fibers.setdefault((z, x), [])
                for a in left:
                    for b in right:
                        bucket.append(a + b[1:])
    return Correspondence(first.source, second.target, {k: tuple(v) for k, v in fibers.items()})


def abelianize(correspondence: Correspondence) -> np.ndarray:
    """Integer matrix with entry (y, x) = |A_{y,x}|."""
    rows = {y: r for r, y in enumerate(correspondence.target)}
    cols = {x: c for c, x in enumerate(correspondence.source)}
    matrix = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for (y, x), tokens in correspondence.fibers.items():
        matrix[rows[y], cols[x]] = len(tokens)
    return matrix


# ----------------------------------------------------------------------
# ladybug matching


def _effective_rule(rule: str, base: ResolutionConfig) -> str:
    if rule not in LADYBUG_RULES:
        raise CorrespondenceError(f"unknown ladybug rule {rule}")
    if rule == "alternating":
        return "left" if sum(base.v) % 2 else "right"
    return rule


def ladybug_edge(base: ResolutionConfig, first: int, second: int, rule: str = "right"):
    """
    An edge on one segment of the ladybug's chosen pair.

    Both surgery arcs attach to the same circle Z, on opposite sides.
    Orient Z so that the arc of the lower-indexed site lies on its left.
    The right pair is formed by the two segments of Z that end at that
    arc's endpoints. The returned edge is the one just before the first of
    those endpoints. ``left`` picks the segments starting there instead.
    """
    i, j = sorted((first, second))
    records_i = base.surgery_records[i]
    records_j = base.surgery_records[j]
    circles = {r.component for r in records_i + records_j if r.closed}
    if len(circles) != 1 or not all(r.closed for r in records_i + records_j):
        raise CorrespondenceError(f"sites {i} and {j} do not form a ladybug on one circle")
    sides = {r.side for r in records_i}
    if len(sides) != 1:
        raise CorrespondenceError(f"surgery arc of site {i} crosses its circle")
    if {r.side for r in records_j} == sides:
        raise CorrespondenceError(f"sites {i} and {j} lie on the same side of their circle")
    segments = base.circles[records_i[0].component].segments
    position = min(r.position for r in records_i)
    ending = (sides == {"left"}) == (_effective_rule(rule, base) == "right")
    offset = 0 if ending else 1
    return segments[(position + offset) % len(segments)][0]


@lru_cache(maxsize=65536)
def _face_fibers(base: ResolutionConfig, first: int, second: int, x: Values) -> Dict[Values, Tuple[Token, ...]]:
    mid, table_first = surgery_table(base, first)
    fibers: Dict[Values, List[Token]] = {}
    for y in table_first[x]:
        _, table_second = surgery_table(mid, second)
        for z in table_second[y]:
            fibers.setdefault(z, []).append((x, y, z))
    return {z: tuple(tokens) for z, tokens in fibers.items()}


def ladybug_bijection(base: ResolutionConfig, first: int, second: int,
                      along: Tuple[Token, ...], across: Tuple[Token, ...],
                      rule: str = "right") -> Dict[Token, Token]:
    """
    Pair the two tokens of path ``first``-then-``second`` with the two of
    the other path.

    A token is identified by whether its intermediate labeling puts X on
    the circle through the ladybug edge; tokens with the same answer are
    paired.

    Raises:
        CorrespondenceError: If either fiber does not have two tokens
    """
    if len(along) != 2 or len(across) != 2:
        raise CorrespondenceError(f"ladybug matching needs two tokens per path, got {len(along)} and {len(across)}")
    edge = ladybug_edge(base, first, second, rule)
    mid_first = surgery_table(base, first)[0]
    mid_second = surgery_table(base, second)[0]
    key_first = {t: t[1][mid_first.circle_of[edge]] for t in along}
    key_second = {t[1][mid_second.circle_of[edge]]: t for t in across}
    if len(set(key_first.values())) != 2 or len(key_second) != 2:
        raise CorrespondenceError("ladybug tokens are not separated by the chosen segment")
    return {t: key_second[k] for t, k in key_first.items()}


def face_bijection(base: ResolutionConfig, first: int, second: int, x: Values, z: Values,
                   rule: str = "right") -> Dict[Token, Token]:
    """Bijection from the (z, x) fiber of path first-then-second to that of second-then-first."""
    along = _face_fibers(base, first, second, x).get(z, ())
    across = _face_fibers(base, second, first, x).get(z, ())
    if len(along) != len(across):
        raise CorrespondenceError(
            f"face ({first},{second}) fiber over ({z},{x}) has {len(along)} vs {len(across)} tokens"
        )
    if len(along) > 2:
        raise CorrespondenceError(f"fiber of size {len(along)} over a 2-face; genus above one is not supported")
    if len(along) == 2:
        return ladybug_bijection(base, first, second, along, across, rule)
    return dict(zip(along, across))


@dataclass
class FaceSquare:
    """A 2-dimensional cube face with both composite correspondences."""

    base: ResolutionConfig
    first: int
    second: int
    along: Correspondence
    across: Correspondence
    rule: str = "right"

    @classmethod
    def from_config(cls, base: ResolutionConfig, first: int, second: int, rule: str = "right") -> "FaceSquare":
        mid_first = surgery_table(base, first)[0]
        mid_second = surgery_table(base, second)[0]
        along = compose(saddle_correspondence(mid_first, None, second), saddle_correspondence(base, None, first))
        across = compose(saddle_correspondence(mid_second, None, first), saddle_correspondence(base, None, second))
        return cls(base, first, second, along, across, rule)


@dataclass
class FaceVerdict:
    passed: bool
    ladybugs: int = 0
    problems: List[str] = field(default_factory=list)


def check_face(face: FaceSquare) -> FaceVerdict:
    """Confirm the two composites of ``face`` are fiberwise in bijection."""
    verdict = FaceVerdict(True)
    keys = sorted(set(face.along.fibers) | set(face.across.fibers))
    for z, x in keys:
        along, across = face.along.fiber(z, x), face.across.fiber(z, x)
        if len(along) != len(across):
            verdict.passed = False
            verdict.problems.append(f"fiber over ({z},{x}): {len(along)} vs {len(across)} tokens")
            continue
        if len(along) == 2:
            try:
                ladybug_bijection(face.base, face.first, face.second, along, across, face.rule)
                verdict.ladybugs += 1
            except CorrespondenceError as e:
                verdict.passed = False
                verdict.problems.append(f"fiber over ({z},{x}): {e}")
        elif len(along) > 2:
            verdict.passed = False
            verdict.problems.append(f"fiber over ({z},{x}) has {len(along)} tokens")
    return verdict


# ----------------------------------------------------------------------
# hexagons


def surgery_paths(base: ResolutionConfig, x: Values, order: Sequence[int]) -> List[Token]:
    """Every token of the composite of surgeries at ``order`` starting from ``x``."""
    tokens: List[Token] = [(x,)]
    config = base
    for index in order:
        config_next, table = surgery_table(config, index)
        tokens = [t + (y,) for t in tokens for y in table[t[-1]]]
        config = config_next
    return tokens


def _swap(base: ResolutionConfig, token: Token, order: Tuple[int, int, int], position: int,
          rule: str) -> Tuple[Token, Tuple[int, int, int]]:
    if position == 0:
        bijection = face_bijection(base, order[0], order[1], token[0], token[2], rule)
        moved = bijection[token[:3]]
        return moved + token[3:], (order[1], order[0], order[2])
    corner = surgery_table(base, order[0])[0]
    bijection = face_bijection(corner, order[1], order[2], token[1], token[3], rule)
    moved = bijection[token[1:]]
    return token[:1] + moved, (order[0], order[2], order[1])


@dataclass
class HexagonVerdict:
    passed: bool
    tokens_checked: int = 0
    problems: List[str] = field(default_factory=list)


def check_hexagon(base: ResolutionConfig, sites: Tuple[int, int, int], rule: str = "right") -> HexagonVerdict:
    """
    Compose the six face bijections around the 3-face spanned by ``sites``.

    Starting from order (i, j, k) the faces are crossed by swapping the
    first two steps, then the last two, alternately; after six swaps every
    token must come back to itself.
    """
    order0 = tuple(sorted(sites))
    verdict = HexagonVerdict(True)
    for x in all_labelings(base.num_circles):
        for token in surgery_paths(base, x, order0):
            current, order = token, order0
            try:
                for step in range(6):
                    current, order = _swap(base, current, order, step % 2, rule)
            except (CorrespondenceError, KeyError) as e:
                verdict.passed = False
                verdict.problems.append(f"hexagon {order0} from {x}: {e}")
                continue
            verdict.tokens_checked += 1
            if current != token or order != order0:
                verdict.passed = False
                verdict.problems.append(f"hexagon {order0} moves token {token} to {current}")
    return verdict


def cube_faces(num_sites: int, dimension: int, vertex_list: Sequence[Tuple[int, ...]]):
    """Faces as (base vertex, directions) with the base zero in those directions."""
    for v in vertex_list:
        zeros = [i for i, bit in enumerate(v) if bit == 0]
        for dirs in combinations(zeros, dimension):
            yield v, dirs


def count_ladybugs(base: ResolutionConfig, first: int, second: int) -> int:
    count = 0
    for x in all_labelings(base.num_circles):
        count += sum(1 for tokens in _face_fibers(base, first, second, x).values() if len(tokens) == 2)
    logger.debug(f"face ({first},{second}) at {base.v}: {count} ladybug fibers")
    return count
