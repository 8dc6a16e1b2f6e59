"""
Complete resolutions and their closures.

A configuration is a set of edges whose ends are paired by junctions.
Some junctions are fixed (caps, free loops); the rest belong to sites. A
site has four ends in counterclockwise order and a state: state 0 pairs
ends (0,1) and (2,3), state 1 pairs (0,3) and (1,2). Crossings are sites,
and so are the saddles that collapse b̄b when two closures are glued.
Flipping a site's state is a surgery.

Edges are keyed by (layer, edge id) so that disjoint unions of
configurations keep their edges apart.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.core.exceptions import MatchingError, SurgeryError
from app.services.diagrams import TangleDiagram, identity_tangle
from app.services.matchings import CrossinglessMatching

EdgeKey = Tuple[int, int]
End = Tuple[EdgeKey, int]
Segment = Tuple[EdgeKey, int]  # direction 0 travels from end 0 to end 1
BoundaryPoint = Tuple[str, int]


@dataclass(frozen=True)
class Site:
    ends: Tuple[End, End, End, End]
    state: int
    label: Tuple

    def junctions(self, state: Optional[int] = None) -> Tuple[Tuple[End, End], Tuple[End, End]]:
        s = self.state if state is None else state
        e = self.ends
        if s == 0:
            return (e[0], e[1]), (e[2], e[3])
        return (e[0], e[3]), (e[1], e[2])

    def slot(self, end: End) -> int:
        return self.ends.index(end)

    def flipped(self) -> "Site":
        return Site(self.ends, 1 - self.state, self.label)


@dataclass(frozen=True)
class Component:
    """A circle or an open arc, as a sequence of oriented edge segments."""

    segments: Tuple[Segment, ...]
    closed: bool

    @property
    def edges(self) -> frozenset:
        return frozenset(e for e, _ in self.segments)

    @property
    def min_edge(self) -> EdgeKey:
        return min(e for e, _ in self.segments)


@dataclass(frozen=True)
class SurgeryAttachment:
    """Where a site's junction sits on a component, and which side the site lies on."""

    site: int
    component: int
    closed: bool
    position: int
    slots: Tuple[int, int]
    side: str


def _exit_end(segment: Segment) -> End:
    edge, direction = segment
    return (edge, 1 - direction)


def _entry_end(segment: Segment) -> End:
    edge, direction = segment
    return (edge, direction)


def _canonical_circle(segments: List[Segment]) -> Tuple[Segment, ...]:
    k = min(range(len(segments)), key=lambda i: segments[i][0])
    if segments[k][1] == 1:
        segments = [(e, 1 - d) for e, d in reversed(segments)]
        k = min(range(len(segments)), key=lambda i: segments[i][0])
    return tuple(segments[k:] + segments[:k])


@dataclass(frozen=True)
class ResolutionConfig:
    """
    A resolved diagram: traced circles and arcs with surgery records.

    ``boundary`` maps uncapped boundary points to their ends. ``v`` is the
    cube vertex the crossing sites were resolved at.
    """

    edges: Tuple[EdgeKey, ...]
    fixed: Tuple[Tuple[End, End], ...]
    sites: Tuple[Site, ...]
    boundary: Tuple[Tuple[BoundaryPoint, End], ...] = ()
    v: Tuple[int, ...] = ()
    circles: Tuple[Component, ...] = field(default=(), compare=False)
    arcs: Tuple[Component, ...] = field(default=(), compare=False)
    surgery_records: Tuple[Tuple[SurgeryAttachment, SurgeryAttachment], ...] = field(default=(), compare=False, repr=False)
    circle_of: Dict[EdgeKey, int] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        self._trace()

    def _junction_map(self) -> Tuple[Dict[End, End], Dict[End, Tuple[int, int]]]:
        junction: Dict[End, End] = {}
        site_slot: Dict[End, Tuple[int, int]] = {}
        for p, q in self.fixed:
            junction[p] = q
            junction[q] = p
        for index, site in enumerate(self.sites):
            for slot, end in enumerate(site.ends):
                site_slot[end] = (index, slot)
            for p, q in site.junctions():
                junction[p] = q
                junction[q] = p
        return junction, site_slot

    def _trace(self) -> None:
        junction, site_slot = self._junction_map()
        visited = set()

        def walk(start: End) -> Tuple[List[Segment], bool]:
            segments = []
            entry = start
            while True:
                segment = (entry[0], entry[1])
                segments.append(segment)
                visited.add(entry[0])
                exit_end = _exit_end(segment)
                nxt = junction.get(exit_end)
                if nxt is None:
                    return segments, False
                if nxt == start:
                    return segments, True
                entry = nxt

        arcs = []
        open_ends = sorted(end for _, end in self.boundary if end not in junction)
        for end in open_ends:
            if end[0] in visited:
                continue
            segments, _ = walk(end)
            arcs.append(Component(tuple(segments), False))

        circles = []
        for edge in sorted(self.edges):
            if edge in visited:
                continue
            segments, closed = walk((edge, 0))
            if not closed:
                raise SurgeryError(f"edge {edge} lies on an open strand that does not reach the boundary")
            circles.append(Component(_canonical_circle(segments), True))
        circles.sort(key=lambda c: c.min_edge)
        arcs.sort(key=lambda c: c.min_edge)

        circle_of = {}
        for k, circle in enumerate(circles):
            for e in circle.edges:
                circle_of[e] = k

        passages: Dict[int, List[SurgeryAttachment]] = {i: [] for i in range(len(self.sites))}
        for closed, family in ((True, circles), (False, arcs)):
            for k, comp in enumerate(family):
                segs = comp.segments
                count = len(segs) if closed else len(segs) - 1
                for pos in range(count):
                    p_end = _exit_end(segs[pos])
                    q_end = _entry_end(segs[(pos + 1) % len(segs)])
                    if p_end not in site_slot or q_end not in site_slot:
                        continue
                    index, p = site_slot[p_end]
                    other, q = site_slot[q_end]
                    if index != other:
                        continue
                    side = "left" if q == (p + 1) % 4 else "right"
                    passages[index].append(SurgeryAttachment(index, k, closed, pos, (p, q), side))
        records = []
        for index in range(len(self.sites)):
            found = passages[index]
            if len(found) != 2:
                raise SurgeryError(f"site {self.sites[index].label} is passed {len(found)} times, expected 2")
            records.append(tuple(found))

        object.__setattr__(self, "circles", tuple(circles))
        object.__setattr__(self, "arcs", tuple(arcs))
        object.__setattr__(self, "circle_of", circle_of)
        object.__setattr__(self, "surgery_records", tuple(records))

    # ------------------------------------------------------------------

    @property
    def num_circles(self) -> int:
        return len(self.circles)

    def boundary_end(self, point: BoundaryPoint) -> End:
        return dict(self.boundary)[point]

    def site_index(self, label: Tuple) -> int:
        for index, site in enumerate(self.sites):
            if site.label == label:
                return index
        raise SurgeryError(f"no site labelled {label}")

    def flip(self, index: int) -> "ResolutionConfig":
        """The configuration after surgery at site ``index``."""
        if not 0 <= index < len(self.sites):
            raise SurgeryError(f"site index {index} out of range")
        sites = list(self.sites)
        sites[index] = sites[index].flipped()
        v = tuple(s.state for s in sites if s.label[0] == "x")
        return type(self)(self.edges, self.fixed, tuple(sites), self.boundary, v)

    def is_merge(self, index: int) -> bool:
        first, second = self.surgery_records[index]
        if not (first.closed and second.closed):
            raise SurgeryError(f"site {self.sites[index].label} touches an open arc")
        return first.component != second.component

    def relabel_layers(self, offset: int) -> Dict[EdgeKey, EdgeKey]:
        return {e: (e[0] + offset, e[1]) for e in self.edges}

    def max_layer(self) -> int:
        return max((e[0] for e in self.edges), default=-1)


@dataclass(frozen=True)
class ClosedConfig(ResolutionConfig):
    """
    A closure aT_v b̄: every boundary point capped.

    ``left`` and ``right`` are the matchings used; the boundary ends are
    kept so that caps can be replaced by seam saddles when gluing.
    """

    left: Optional[CrossinglessMatching] = None
    right: Optional[CrossinglessMatching] = None

    def __post_init__(self):
        super().__post_init__()
        if self.arcs:
            raise MatchingError(f"closure leaves {len(self.arcs)} open arcs")

    def flip(self, index: int) -> "ClosedConfig":
        if not 0 <= index < len(self.sites):
            raise SurgeryError(f"site index {index} out of range")
        sites = list(self.sites)
        sites[index] = sites[index].flipped()
        v = tuple(s.state for s in sites if s.label[0] == "x")
        return ClosedConfig(self.edges, self.fixed, tuple(sites), self.boundary, v,
                            left=self.left, right=self.right)

    def points_by_circle(self) -> List[List[BoundaryPoint]]:
        """Boundary points lying on each circle."""
        result: List[List[BoundaryPoint]] = [[] for _ in self.circles]
        for point, end in self.boundary:
            result[self.circle_of[end[0]]].append(point)
        return [sorted(points) for points in result]


# ----------------------------------------------------------------------


def resolve(diagram: TangleDiagram, v: Sequence[int], layer: int = 0) -> ResolutionConfig:
    """
    Resolve every crossing of ``diagram`` according to ``v``.

    Args:
        diagram: The tangle diagram
        v: One bit per crossing, in crossing order
        layer: Layer tag for the edge keys

    Returns:
        ResolutionConfig with circles, open arcs and surgery records
    """
    v = tuple(v)
    if len(v) != diagram.num_crossings or any(bit not in (0, 1) for bit in v):
        raise SurgeryError(f"vertex {v} does not fit {diagram.num_crossings} crossings")
    end_at = {}
    fixed = []
    for e in diagram.edges:
        atts = diagram.attachments(e)
        for k, att in enumerate(atts):
            end_at[att] = ((layer, e), k)
        if not atts:
            fixed.append((((layer, e), 0), ((layer, e), 1)))
    sites = tuple(
        Site(tuple(end_at[("x", c, s)] for s in range(4)), v[c], ("x", c))
        for c in range(diagram.num_crossings)
    )
    boundary = tuple(
        [(("L", i), end_at[("L", i)]) for i in range(1, 2 * diagram.m + 1)]
        + [(("R", j), end_at[("R", j)]) for j in range(1, 2 * diagram.n + 1)]
    )
    edges = tuple((layer, e) for e in diagram.edges)
    return ResolutionConfig(edges, tuple(fixed), sites, boundary, v)


def _cap_junctions(config: ResolutionConfig, side: str, matching: CrossinglessMatching) -> List[Tuple[End, End]]:
    ends = dict(config.boundary)
    caps = []
    for i, j in matching.pairs:
        try:
            caps.append((ends[(side, i)], ends[(side, j)]))
        except KeyError:
            raise MatchingError(f"matching {matching} does not fit side {side} of the resolution")
    return caps


def close_resolution(a: CrossinglessMatching, resolution: ResolutionConfig,
                     b: CrossinglessMatching) -> ClosedConfig:
    """
    Cap the left boundary with ``a`` and the right boundary with b̄.

    Raises:
        MatchingError: If the matchings do not fit the boundary sizes
    """
    left_points = sum(1 for p, _ in resolution.boundary if p[0] == "L")
    right_points = len(resolution.boundary) - left_points
    if 2 * a.n != left_points or 2 * b.n != right_points:
        raise MatchingError(
            f"matchings of sizes ({2 * a.n},{2 * b.n}) do not fit boundary ({left_points},{right_points})"
        )
    fixed = resolution.fixed + tuple(_cap_junctions(resolution, "L", a)) + tuple(_cap_junctions(resolution, "R", b))
    return ClosedConfig(resolution.edges, fixed, resolution.sites, resolution.boundary, resolution.v,
                        left=a, right=b)


def close_matchings(a: CrossinglessMatching, b: CrossinglessMatching) -> ClosedConfig:
    """The circles of a b̄, drawn on the identity tangle."""
    if a.n != b.n:
        raise MatchingError(f"cannot close matchings of different sizes {a.n} and {b.n}")
    return close_resolution(a, resolve(identity_tangle(a.n), ()), b)


def shift_config(config: ClosedConfig, offset: int) -> ClosedConfig:
    """Copy of ``config`` with every edge layer raised by ``offset``."""
    def move(end: End) -> End:
        (layer, e), k = end
        return ((layer + offset, e), k)

    return ClosedConfig(
        tuple((l + offset, e) for l, e in config.edges),
        tuple((move(p), move(q)) for p, q in config.fixed),
        tuple(Site(tuple(move(x) for x in s.ends), s.state, s.label) for s in config.sites),
        tuple((point, move(end)) for point, end in config.boundary),
        config.v,
        left=config.left,
        right=config.right,
    )


def glue_closures(first: ClosedConfig, second: ClosedConfig) -> Tuple[ClosedConfig, List[int]]:
    """
    Place two closures side by side with their facing caps turned into saddles.

    The right matching of ``first`` must equal the left matching of
    ``second``. Each of its pairs (i, j) becomes a seam site with ends
    (L_i, R_i, R_j, L_j), where L_p is the end of ``first`` at its right
    point p and R_p the end of ``second`` at its left point p. The sites
    start in state 1 (the two caps); flipping them all yields the closure
    of the composite.

    Returns:
        The glued configuration and the indices of the seam sites, in the
        order of the matching's pairs
    """
    if first.right != second.left:
        raise MatchingError(f"inner matchings differ: {first.right} vs {second.left}")
    second = shift_config(second, first.max_layer() + 1)
    middle = first.right
    ends_first = dict(first.boundary)
    ends_second = dict(second.boundary)
    cap_ends = {ends_first[("R", p)] for p in range(1, 2 * middle.n + 1)}
    cap_ends |= {ends_second[("L", p)] for p in range(1, 2 * middle.n + 1)}
    fixed = tuple(j for j in first.fixed + second.fixed if j[0] not in cap_ends and j[1] not in cap_ends)

    seam = []
    for i, j in middle.pairs:
        ends = (ends_first[("R", i)], ends_second[("L", i)], ends_second[("L", j)], ends_first[("R", j)])
        seam.append(Site(ends, 1, ("seam", i, j)))
    sites = first.sites + second.sites + tuple(seam)
    boundary = tuple((p, e) for p, e in first.boundary if p[0] == "L")
    boundary += tuple((p, e) for p, e in second.boundary if p[0] == "R")
    glued = ClosedConfig(first.edges + second.edges, fixed, sites, boundary, first.v + second.v,
                         left=first.left, right=second.right)
    start = len(first.sites) + len(second.sites)
    return glued, list(range(start, start + len(seam)))


def seam_order(glued: ClosedConfig, seam_sites: List[int], middle: CrossinglessMatching,
               order: str) -> List[int]:
    """Seam site indices in the surgery order requested for ``middle``."""
    by_pair = {glued.sites[k].label[1:]: k for k in seam_sites}
    return [by_pair[pair] for pair in middle.surgery_order(order)]


def match_circles(source: ResolutionConfig, target: ResolutionConfig,
                  key_map: Dict[EdgeKey, EdgeKey]) -> List[int]:
    """
    For each circle of ``target``, the index of the circle of ``source``
    carrying the same edges.

    ``key_map`` sends target edge keys to source edge keys.
    """
    result = []
    for circle in target.circles:
        k = source.circle_of.get(key_map.get(circle.min_edge))
        if k is None:
            raise SurgeryError(f"target circle through {circle.min_edge} has no counterpart")
        result.append(k)
    if sorted(result) != list(range(source.num_circles)):
        raise SurgeryError("circle correspondence between configurations is not a bijection")
    return result


def vertices(n: int) -> Iterable[Tuple[int, ...]]:
    """All cube vertices {0,1}^n in lexicographic order."""
    for k in range(2 ** n):
        yield tuple((k >> (n - 1 - i)) & 1 for i in range(n))
