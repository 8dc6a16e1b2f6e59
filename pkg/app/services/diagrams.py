"""
Planar tangle diagrams.

A diagram is a 4-valent planar graph in a square, with 2m boundary points
on the left side and 2n on the right (each numbered bottom-to-top).
Crossings are ordered. Each crossing lists its four edges in
counterclockwise order, starting at the incoming under-strand:

            c
            |
      d ----|---- b       a, b, c, d counterclockwise; a is the incoming under-strand
            |
            a

    0-smoothing: a joins b, c joins d      1-smoothing: a joins d, b joins c

The under-strand runs a -> c. The crossing is positive when the
over-strand runs d -> b, and negative when it runs b -> d.
"""
import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError as SchemaValidationError

from app import logger
from app.core.exceptions import DiagramError, OrientationError, PlanarityError
from app.models.schemas import TangleFileSchema

Attachment = Tuple  # ("x", crossing, slot) | ("L", point) | ("R", point)


def _attachment_key(att: Attachment) -> Tuple[int, int, int]:
    if att[0] == "x":
        return (0, att[1], att[2])
    return (1 if att[0] == "L" else 2, att[1], 0)


@dataclass(frozen=True)
class Crossing:
    """Four edge ids, counterclockwise from the incoming under-strand, and the sign."""

    edges: Tuple[int, int, int, int]
    sign: Optional[int] = None

    def __post_init__(self):
        if len(self.edges) != 4:
            raise DiagramError(f"crossing must list four edges, got {self.edges}")
        if self.sign not in (None, 1, -1):
            raise DiagramError(f"crossing sign must be +1, -1 or None, got {self.sign}")

    def incoming_slots(self) -> Tuple[int, ...]:
        """Slots whose edge points into the crossing, as far as the sign tells."""
        if self.sign is None:
            return (0,)
        return (0, 3) if self.sign == 1 else (0, 1)

    def outgoing_slots(self) -> Tuple[int, ...]:
        if self.sign is None:
            return (2,)
        return (2, 1) if self.sign == 1 else (2, 3)


@dataclass(frozen=True)
class TangleDiagram:
    """
    An oriented planar (2m, 2n)-tangle diagram with ordered crossings.

    Edges listed in ``edges`` but attached to nothing are free loops.
    """

    m: int
    n: int
    crossings: Tuple[Crossing, ...]
    left_boundary: Tuple[int, ...]
    right_boundary: Tuple[int, ...]
    edges: Tuple[int, ...]
    name: str = ""
    _attachments: Dict[int, Tuple[Attachment, ...]] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "left_boundary", tuple(self.left_boundary))
        object.__setattr__(self, "right_boundary", tuple(self.right_boundary))
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))
        object.__setattr__(self, "_attachments", self._collect_attachments())
        self._check_orientation()
        self._check_planarity()

    # ------------------------------------------------------------------
    # validation

    def _collect_attachments(self) -> Dict[int, Tuple[Attachment, ...]]:
        if len(self.left_boundary) != 2 * self.m:
            raise DiagramError(f"left boundary has {len(self.left_boundary)} edges, expected {2 * self.m}")
        if len(self.right_boundary) != 2 * self.n:
            raise DiagramError(f"right boundary has {len(self.right_boundary)} edges, expected {2 * self.n}")
        found: Dict[int, List[Attachment]] = defaultdict(list)
        for c, crossing in enumerate(self.crossings):
            for s, e in enumerate(crossing.edges):
                found[e].append(("x", c, s))
        for i, e in enumerate(self.left_boundary, start=1):
            found[e].append(("L", i))
        for j, e in enumerate(self.right_boundary, start=1):
            found[e].append(("R", j))
        known = set(self.edges)
        for e, atts in found.items():
            if e not in known:
                raise DiagramError(f"edge {e} is used but not listed in edges")
            if len(atts) != 2:
                raise DiagramError(f"edge {e} has {len(atts)} ends attached, expected 2")
        return {e: tuple(sorted(found.get(e, ()), key=_attachment_key)) for e in self.edges}

    def _check_orientation(self) -> None:
        heads: Dict[int, List[Attachment]] = defaultdict(list)
        tails: Dict[int, List[Attachment]] = defaultdict(list)
        for c, crossing in enumerate(self.crossings):
            for s in crossing.incoming_slots():
                heads[crossing.edges[s]].append(("x", c, s))
            for s in crossing.outgoing_slots():
                tails[crossing.edges[s]].append(("x", c, s))
        for e in self.edges:
            if len(heads[e]) > 1 or len(tails[e]) > 1:
                raise OrientationError(
                    f"edge {e} is directed inconsistently: heads at {heads[e]}, tails at {tails[e]}"
                )

    def _check_planarity(self) -> None:
        trace = face_trace(self)
        for component in trace:
            if component["euler"] != 2:
                raise PlanarityError(
                    f"rotation system is not planar: component with V={component['vertices']}, "
                    f"E={component['edges']}, F={len(component['faces'])} has Euler characteristic "
                    f"{component['euler']}; failing face trace {component['faces'][0]}",
                    face_trace=component["faces"],
                )

    # ------------------------------------------------------------------
    # derived data

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    def attachments(self, edge: int) -> Tuple[Attachment, ...]:
        return self._attachments[edge]

    @property
    def free_loops(self) -> Tuple[int, ...]:
        return tuple(e for e in self.edges if not self._attachments[e])

    def boundary_edge(self, side: str, point: int) -> int:
        return (self.left_boundary if side == "L" else self.right_boundary)[point - 1]

    def is_oriented(self) -> bool:
        return all(c.sign is not None for c in self.crossings)

    def with_name(self, name: str) -> "TangleDiagram":
        return TangleDiagram(self.m, self.n, self.crossings, self.left_boundary,
                             self.right_boundary, self.edges, name)

    def __str__(self) -> str:
        label = self.name or "tangle"
        return f"{label} ({2 * self.m},{2 * self.n}) with {self.num_crossings} crossings"


# ----------------------------------------------------------------------
# planarity


def _boundary_cycle(diagram: TangleDiagram) -> List[Tuple[str, int]]:
    """Boundary points in counterclockwise order around the square."""
    right = [("R", j) for j in range(1, 2 * diagram.n + 1)]
    left = [("L", i) for i in range(2 * diagram.m, 0, -1)]
    return right + left


def face_trace(diagram: TangleDiagram) -> List[dict]:
    """
    Trace faces of the rotation system, one record per connected component.

    Boundary points are joined in a frame around the square so that their
    bottom-to-top order is part of the embedding. Each boundary point has
    three darts in counterclockwise order: strand, previous frame edge,
    next frame edge.
    """
    alpha: Dict[tuple, tuple] = {}
    sigma: Dict[tuple, tuple] = {}
    for c in range(diagram.num_crossings):
        for s in range(4):
            sigma[("x", c, s)] = ("x", c, (s + 1) % 4)

    def dart(att: Attachment) -> tuple:
        return att if att[0] == "x" else ("b", att[0], att[1], 0)

    for e in diagram.edges:
        atts = diagram.attachments(e)
        if atts:
            d1, d2 = dart(atts[0]), dart(atts[1])
            alpha[d1] = d2
            alpha[d2] = d1

    cycle = _boundary_cycle(diagram)
    for k, (side, point) in enumerate(cycle):
        darts = [("b", side, point, r) for r in range(3)]
        for r in range(3):
            sigma[darts[r]] = darts[(r + 1) % 3]
        nxt = cycle[(k + 1) % len(cycle)]
        alpha[("b", side, point, 2)] = ("b", nxt[0], nxt[1], 1)
        alpha[("b", nxt[0], nxt[1], 1)] = ("b", side, point, 2)

    # connected components over darts
    parent = {d: d for d in sigma}

    def find(d):
        while parent[d] != d:
            parent[d] = parent[parent[d]]
            d = parent[d]
        return d

    for d in sigma:
        for other in (sigma[d], alpha[d]):
            ra, rb = find(d), find(other)
            if ra != rb:
                parent[ra] = rb

    groups: Dict[tuple, List[tuple]] = defaultdict(list)
    for d in sorted(sigma, key=repr):
        groups[find(d)].append(d)

    records = []
    for darts in groups.values():
        seen_v, seen_f = set(), set()
        vertices = faces_count = 0
        faces = []
        for d in darts:
            if d not in seen_v:
                vertices += 1
                x = d
                while x not in seen_v:
                    seen_v.add(x)
                    x = sigma[x]
            if d not in seen_f:
                face = []
                x = d
                while x not in seen_f:
                    seen_f.add(x)
                    face.append(x)
                    x = sigma[alpha[x]]
                faces.append(face)
                faces_count += 1
        edges = len(darts) // 2
        records.append({
            "vertices": vertices,
            "edges": edges,
            "faces": faces,
            "euler": vertices - edges + faces_count,
        })
    return records


# ----------------------------------------------------------------------
# strands and orientations


@dataclass(frozen=True)
class Step:
    edge: int
    tail: Attachment
    head: Attachment


def _other(diagram: TangleDiagram, edge: int, att: Attachment) -> Attachment:
    a, b = diagram.attachments(edge)
    return b if a == att else a


def _trace_strand(diagram: TangleDiagram, edge: int, tail: Attachment) -> Tuple[List[Step], bool]:
    """Follow a strand straight through crossings; returns the steps and whether it closed up."""
    steps: List[Step] = []
    start = (edge, tail)
    while True:
        head = _other(diagram, edge, tail)
        steps.append(Step(edge, tail, head))
        if head[0] != "x":
            return steps, False
        c, s = head[1], head[2]
        tail = ("x", c, (s + 2) % 4)
        edge = diagram.crossings[c].edges[tail[2]]
        if (edge, tail) == start:
            return steps, True


def _passage_sign(head: Attachment) -> Optional[int]:
    """Sign implied by entering a crossing at ``head``; 0 for the under-strand."""
    slot = head[2]
    if slot == 0:
        return 0
    if slot == 2:
        return None
    return -1 if slot == 1 else 1


def _candidate_orientations(diagram: TangleDiagram, walk: Sequence[int]) -> List[List[Step]]:
    first = walk[0]
    atts = diagram.attachments(first)
    candidates = []
    for tail in atts:
        steps, closed = _trace_strand(diagram, first, tail)
        if [s.edge for s in steps] != list(walk):
            continue
        if not closed and tail[0] == "x":
            continue
        if closed:
            lowest = min(s.tail[1] for s in steps)
            if steps[0].tail[1] != lowest:
                continue
        if any(s.head[0] == "x" and _passage_sign(s.head) is None for s in steps):
            continue
        candidates.append(steps)
    # straight boundary-to-boundary strands have two readings with no sign content
    if len(candidates) == 2 and all(s.head[0] != "x" for steps in candidates for s in steps):
        candidates = candidates[:1]
    return candidates


def signs_from_walks(diagram: TangleDiagram, walks: Iterable[Sequence[int]]) -> List[Optional[int]]:
    """
    Read crossing signs off orientation walks.

    A walk lists one component's edges in order of travel. A closed walk
    starts with an edge leaving the lowest-indexed crossing on its
    component; an open walk starts at the boundary.
    """
    signs: List[Optional[int]] = [None] * diagram.num_crossings
    used = set()
    for walk in walks:
        walk = list(walk)
        if not walk:
            raise OrientationError("empty orientation walk")
        if used & set(walk):
            raise OrientationError(f"walk {walk} repeats edges of an earlier walk")
        used |= set(walk)
        if not diagram.attachments(walk[0]):
            if len(walk) != 1:
                raise OrientationError(f"free loop {walk[0]} cannot continue into {walk[1:]}")
            continue
        candidates = _candidate_orientations(diagram, walk)
        if not candidates:
            raise OrientationError(f"walk {walk} does not trace a consistently oriented component")
        if len(candidates) > 1:
            raise OrientationError(f"walk {walk} is ambiguous; start it at the lowest crossing")
        for step in candidates[0]:
            if step.head[0] != "x":
                continue
            sign = _passage_sign(step.head)
            if sign:
                c = step.head[1]
                if signs[c] not in (None, sign):
                    raise OrientationError(f"crossing {c} receives conflicting signs")
                signs[c] = sign
    return signs


def _full_strand(diagram: TangleDiagram, edge: int, tail: Attachment) -> Tuple[List[Step], bool]:
    """The whole component through ``edge`` travelling away from ``tail``; open ones start at the boundary."""
    steps, closed = _trace_strand(diagram, edge, tail)
    if closed:
        return steps, True
    end = steps[-1]
    back, _ = _trace_strand(diagram, end.edge, end.head)
    return [Step(s.edge, s.head, s.tail) for s in reversed(back)], False


def orientation_walks(diagram: TangleDiagram) -> List[List[int]]:
    """Walks in the file convention for every component whose direction is known."""
    heads = {}
    for c, crossing in enumerate(diagram.crossings):
        for s in crossing.incoming_slots():
            heads[crossing.edges[s]] = ("x", c, s)
    walks, seen = [], set()
    for e in diagram.edges:
        if e in seen:
            continue
        if not diagram.attachments(e):
            seen.add(e)
            walks.append([e])
            continue
        readings = []
        for tail in diagram.attachments(e):
            steps, closed = _full_strand(diagram, e, tail)
            seen.update(s.edge for s in steps)
            if any(s.edge in heads and heads[s.edge] != s.head for s in steps):
                continue
            if any(s.head[0] == "x" and s.head[2] == 2 for s in steps):
                continue
            readings.append((steps, closed))
        if not readings:
            continue
        steps, closed = readings[0]
        if len(readings) > 1 and any(s.head[0] == "x" for s in steps):
            # direction not determined by the signs
            continue
        if closed:
            lowest = min(s.tail[1] for s in steps)
            k = next(i for i, s in enumerate(steps) if s.tail[1] == lowest)
            steps = steps[k:] + steps[:k]
        walks.append([s.edge for s in steps])
    return walks


def writhe_counts(diagram: TangleDiagram) -> Tuple[int, int]:
    """
    Count positive and negative crossings.

    Raises:
        OrientationError: If a crossing has no sign
    """
    if not diagram.is_oriented():
        unsigned = [c for c, x in enumerate(diagram.crossings) if x.sign is None]
        raise OrientationError(f"crossings {unsigned} of {diagram} have no orientation")
    positive = sum(1 for c in diagram.crossings if c.sign == 1)
    return positive, diagram.num_crossings - positive


# ----------------------------------------------------------------------
# file format


def diagram_from_schema(schema: TangleFileSchema) -> TangleDiagram:
    """Build a diagram from a validated tangle file."""
    unsigned = TangleDiagram(
        m=schema.left // 2,
        n=schema.right // 2,
        crossings=tuple(Crossing(tuple(c)) for c in schema.crossings),
        left_boundary=tuple(schema.left_boundary),
        right_boundary=tuple(schema.right_boundary),
        edges=tuple(schema.edges),
        name=schema.name or "",
    )
    signs = signs_from_walks(unsigned, schema.orientations)
    crossings = tuple(Crossing(c.edges, s) for c, s in zip(unsigned.crossings, signs))
    return TangleDiagram(unsigned.m, unsigned.n, crossings, unsigned.left_boundary,
                         unsigned.right_boundary, unsigned.edges, unsigned.name)


def diagram_to_schema(diagram: TangleDiagram) -> TangleFileSchema:
    return TangleFileSchema(
        name=diagram.name or None,
        left=2 * diagram.m,
        right=2 * diagram.n,
        edges=list(diagram.edges),
        crossings=[list(c.edges) for c in diagram.crossings],
        left_boundary=list(diagram.left_boundary),
        right_boundary=list(diagram.right_boundary),
        orientations=orientation_walks(diagram),
    )


def parse_tangle(text: str, name: str = "") -> TangleDiagram:
    """
    Parse a tangle file.

    Raises:
        DiagramError: If the text is not valid JSON or fails the schema
    """
    try:
        schema = TangleFileSchema.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise DiagramError(f"tangle file is not valid JSON: {e}")
    except SchemaValidationError as e:
        raise DiagramError(f"tangle file failed validation: {e}")
    if name and not schema.name:
        schema = schema.model_copy(update={"name": name})
    return diagram_from_schema(schema)


def load_tangle(path: Union[str, Path]) -> TangleDiagram:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        logger.error(f"Error reading tangle file {path}: {e}")
        raise DiagramError(f"cannot read {path}: {e}")
    return parse_tangle(text, name=path.stem)


def dump_tangle(diagram: TangleDiagram) -> str:
    return diagram_to_schema(diagram).model_dump_json(indent=2, exclude_none=True)


# ----------------------------------------------------------------------
# constructions


def _union_find_classes(keys: Iterable, links: Iterable[Tuple]) -> Dict:
    parent = {k: k for k in keys}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for a, b in links:
        ra, rb = find(a), find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra
    return {k: find(k) for k in parent}


def compose_with_origin(first: TangleDiagram, second: TangleDiagram) -> Tuple[TangleDiagram, Dict[int, Tuple[int, int]]]:
    """
    Compose two tangles and report where each new edge came from.

    Returns:
        The composite and a map from composite edge id to (factor, old edge id)
    """
    if first.n != second.m:
        raise DiagramError(
            f"cannot compose: right boundary of {first} has {2 * first.n} points, "
            f"left boundary of {second} has {2 * second.m}"
        )
    keys = [(0, e) for e in first.edges] + [(1, e) for e in second.edges]
    links = [((0, a), (1, b)) for a, b in zip(first.right_boundary, second.left_boundary)]
    root = _union_find_classes(keys, links)
    roots = sorted(set(root.values()))
    new_id = {r: k + 1 for k, r in enumerate(roots)}
    relabel = {key: new_id[root[key]] for key in keys}
    origin = {new_id[r]: r for r in roots}

    crossings = [Crossing(tuple(relabel[(0, e)] for e in c.edges), c.sign) for c in first.crossings]
    crossings += [Crossing(tuple(relabel[(1, e)] for e in c.edges), c.sign) for c in second.crossings]
    name = f"{first.name or 'T1'}*{second.name or 'T2'}"
    composite = TangleDiagram(
        m=first.m,
        n=second.n,
        crossings=tuple(crossings),
        left_boundary=tuple(relabel[(0, e)] for e in first.left_boundary),
        right_boundary=tuple(relabel[(1, e)] for e in second.right_boundary),
        edges=tuple(new_id.values()),
        name=name,
    )
    return composite, origin


def compose_tangles(first: TangleDiagram, second: TangleDiagram) -> TangleDiagram:
    """Glue the right boundary of ``first`` to the left boundary of ``second``."""
    return compose_with_origin(first, second)[0]


def stack_tangles(bottom: TangleDiagram, top: TangleDiagram) -> TangleDiagram:
    """Place ``top`` above ``bottom``; boundary points of ``bottom`` come first."""
    offset = max(bottom.edges, default=0)
    shift = lambda e: e + offset
    crossings = list(bottom.crossings)
    crossings += [Crossing(tuple(shift(e) for e in c.edges), c.sign) for c in top.crossings]
    return TangleDiagram(
        m=bottom.m + top.m,
        n=bottom.n + top.n,
        crossings=tuple(crossings),
        left_boundary=bottom.left_boundary + tuple(shift(e) for e in top.left_boundary),
        right_boundary=bottom.right_boundary + tuple(shift(e) for e in top.right_boundary),
        edges=bottom.edges + tuple(shift(e) for e in top.edges),
        name=f"{bottom.name or 'T1'}/{top.name or 'T2'}",
    )


def mirror(diagram: TangleDiagram) -> TangleDiagram:
    """Switch every crossing."""
    crossings = []
    for c in diagram.crossings:
        a, b, cc, d = c.edges
        if c.sign == 1:
            crossings.append(Crossing((d, a, b, cc), -1))
        elif c.sign == -1:
            crossings.append(Crossing((b, cc, d, a), 1))
        else:
            raise OrientationError(f"cannot mirror {diagram}: crossing {c.edges} has no sign")
    return TangleDiagram(diagram.m, diagram.n, tuple(crossings), diagram.left_boundary,
                         diagram.right_boundary, diagram.edges, f"mirror({diagram.name})")


def identity_tangle(n: int) -> TangleDiagram:
    edges = tuple(range(1, 2 * n + 1))
    return TangleDiagram(n, n, (), edges, edges, edges, name=f"id{2 * n}")


def cup_tangle() -> TangleDiagram:
    return TangleDiagram(0, 1, (), (), (1, 1), (1,), name="cup")


def cap_tangle() -> TangleDiagram:
    return TangleDiagram(1, 0, (), (1, 1), (), (1,), name="cap")


def unknot_diagram() -> TangleDiagram:
    return TangleDiagram(0, 0, (), (), (), (1,), name="unknot")


# corners counterclockwise: SW (e_lo), SE (f_lo), NE (f_hi), NW (e_hi)
_ENTRY = {("lower", 1): 0, ("lower", -1): 2, ("upper", 1): 3, ("upper", -1): 1}


def _braid_crossing(corners: Sequence[int], letter: int, lower: int, upper: int) -> Crossing:
    """
    One braid crossing between the strand entering at the lower position
    and the one entering at the upper position.

    ``lower`` and ``upper`` are +1 for a strand running left to right and
    -1 for one running right to left. A positive letter puts the lower
    strand under.
    """
    under, over = (("lower", lower), ("upper", upper)) if letter > 0 else (("upper", upper), ("lower", lower))
    u = _ENTRY[under]
    o = _ENTRY[over]
    edges = tuple(corners[(u + k) % 4] for k in range(4))
    return Crossing(edges, 1 if o == (u + 3) % 4 else -1)


def _braid_crossings(word: Sequence[int], strands: int, directions: Optional[Sequence[int]] = None):
    current = list(range(1, strands + 1))
    initial = list(current)
    heading = list(directions) if directions is not None else [1] * strands
    if len(heading) != strands or any(d not in (1, -1) for d in heading):
        raise DiagramError(f"directions {heading} do not fit {strands} strands")
    next_id = strands + 1
    crossings = []
    for letter in word:
        i = abs(letter) - 1
        if letter == 0 or not 0 <= i < strands - 1:
            raise DiagramError(f"braid letter {letter} out of range for {strands} strands")
        e_lo, e_hi = current[i], current[i + 1]
        f_lo, f_hi = next_id, next_id + 1
        next_id += 2
        crossings.append(_braid_crossing((e_lo, f_lo, f_hi, e_hi), letter, heading[i], heading[i + 1]))
        current[i], current[i + 1] = f_lo, f_hi
        heading[i], heading[i + 1] = heading[i + 1], heading[i]
    return crossings, initial, current, list(range(1, next_id))


def braid_tangle(word: Sequence[int], strands: int, name: str = "",
                 directions: Optional[Sequence[int]] = None) -> TangleDiagram:
    """
    A braid drawn left to right as a (strands, strands)-tangle.

    Letter +i is a crossing between positions i and i+1 with the strand
    coming from position i underneath; -i puts it on top. ``directions``
    gives each starting position +1 (left to right, the default) or -1.
    """
    if strands % 2:
        raise DiagramError(f"braid tangles need an even number of strands, got {strands}")
    crossings, initial, final, edges = _braid_crossings(word, strands, directions)
    return TangleDiagram(strands // 2, strands // 2, tuple(crossings), tuple(initial),
                         tuple(final), tuple(edges), name=name or f"braid{list(word)}")


def braid_closure(word: Sequence[int], strands: int, name: str = "",
                  directions: Optional[Sequence[int]] = None) -> TangleDiagram:
    """The closed diagram obtained by joining the ends of a braid over the top."""
    crossings, initial, final, edges = _braid_crossings(word, strands, directions)
    root = _union_find_classes(edges, zip(initial, final))
    roots = sorted(set(root.values()))
    new_id = {r: k + 1 for k, r in enumerate(roots)}
    relabel = {e: new_id[root[e]] for e in edges}
    closed = tuple(Crossing(tuple(relabel[e] for e in c.edges), c.sign) for c in crossings)
    return TangleDiagram(0, 0, closed, (), (), tuple(new_id.values()),
                         name=name or f"closure{list(word)}")


def reorder_diagram(diagram: TangleDiagram, permutation: Sequence[int]) -> TangleDiagram:
    """Reorder crossings: new crossing k is old crossing ``permutation[k]``."""
    if sorted(permutation) != list(range(diagram.num_crossings)):
        raise DiagramError(f"{list(permutation)} is not a permutation of the crossings")
    crossings = tuple(diagram.crossings[k] for k in permutation)
    return TangleDiagram(diagram.m, diagram.n, crossings, diagram.left_boundary,
                         diagram.right_boundary, diagram.edges, diagram.name)
