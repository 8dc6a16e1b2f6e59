"""
Tests for tangle diagrams: file format, orientation, planarity and builders.
"""
import json

import pytest

from app.core.exceptions import DiagramError, OrientationError, PlanarityError
from app.services.corpus import BUILDERS, build
from app.services.diagrams import (
    Crossing,
    TangleDiagram,
    braid_tangle,
    compose_tangles,
    cap_tangle,
    cup_tangle,
    dump_tangle,
    identity_tangle,
    load_tangle,
    mirror,
    parse_tangle,
    reorder_diagram,
    stack_tangles,
    writhe_counts,
)


def test_load_fixtures(fixtures_dir):
    """Test that every fixture file parses and carries signs."""
    files = sorted(fixtures_dir.glob("*.tgl"))
    assert len(files) >= 10
    for path in files:
        diagram = load_tangle(path)
        assert diagram.is_oriented()
        assert diagram.name


def test_fixture_signs(fixtures_dir):
    """Test the signs read off the orientation walks."""
    assert writhe_counts(load_tangle(fixtures_dir / "hopf.tgl")) == (2, 0)
    assert writhe_counts(load_tangle(fixtures_dir / "trefoil.tgl")) == (3, 0)
    assert writhe_counts(load_tangle(fixtures_dir / "figure_eight.tgl")) == (2, 2)
    assert writhe_counts(load_tangle(fixtures_dir / "ladybug.tgl")) == (0, 1)
    assert writhe_counts(load_tangle(fixtures_dir / "unknot_kink.tgl")) == (1, 0)


def test_fixture_matches_builder(fixtures_dir):
    """Test that hand-written files agree with the builders."""
    assert load_tangle(fixtures_dir / "ladybug.tgl").crossings == build("ladybug").crossings
    assert load_tangle(fixtures_dir / "twist.tgl").crossings == build("twist").crossings
    assert load_tangle(fixtures_dir / "hopf.tgl").crossings == build("hopf").crossings


@pytest.mark.parametrize("name", ["hopf", "trefoil_right", "figure_eight", "ladybug", "twist", "tangle24"])
def test_dump_and_parse(name):
    """Test that a dumped diagram parses back to the same crossings."""
    diagram = build(name)
    again = parse_tangle(dump_tangle(diagram))
    assert again.crossings == diagram.crossings
    assert (again.m, again.n) == (diagram.m, diagram.n)


def test_parse_errors():
    """Test malformed tangle files."""
    with pytest.raises(DiagramError) as exc_info:
        parse_tangle("{not json")
    assert "not valid JSON" in str(exc_info.value)

    with pytest.raises(DiagramError) as exc_info:
        parse_tangle(json.dumps({"left": 1, "right": 0, "edges": [1]}))
    assert "failed validation" in str(exc_info.value)

    with pytest.raises(DiagramError) as exc_info:
        parse_tangle(json.dumps({"left": 0, "right": 0, "edges": [1], "crossings": [[1, 1, 2, 2]]}))
    assert "not listed" in str(exc_info.value)


def test_orientation_errors():
    """Test walks that disagree with the crossings."""
    text = json.dumps({
        "left": 0, "right": 0, "edges": [1, 2],
        "crossings": [[1, 1, 2, 2]], "orientations": [[1], [2]],
    })
    with pytest.raises(OrientationError):
        parse_tangle(text)

    with pytest.raises(OrientationError):
        writhe_counts(TangleDiagram(0, 0, (Crossing((1, 1, 2, 2)),), (), (), (1, 2)))


def test_planarity_error():
    """Test that a non-planar rotation system is rejected with its face trace."""
    with pytest.raises(PlanarityError) as exc_info:
        TangleDiagram(0, 0, (Crossing((1, 2, 1, 2), 1),), (), (), (1, 2))
    assert exc_info.value.face_trace
    assert "Euler characteristic" in str(exc_info.value)


def test_braid_builders():
    """Test braid tangles and closures."""
    twist = braid_tangle([1], 2)
    assert (twist.m, twist.n, twist.num_crossings) == (1, 1, 1)
    assert twist.crossings[0] == Crossing((1, 3, 4, 2), 1)
    assert braid_tangle([-1], 2).crossings[0] == Crossing((2, 1, 3, 4), -1)
    assert build("unknot_kink_pos").crossings == (Crossing((1, 1, 2, 2), 1),)

    with pytest.raises(DiagramError):
        braid_tangle([1], 3)
    with pytest.raises(DiagramError):
        braid_tangle([2], 2)


def test_antiparallel_twist():
    """Test braid crossings between strands running opposite ways."""
    twist = build("antiparallel")
    assert twist.crossings[0] == Crossing((1, 3, 4, 2), -1)
    back = build("antiparallel_back")
    assert back.crossings[0] == Crossing((4, 2, 1, 3), -1)


def test_composition():
    """Test composing and stacking."""
    closed = compose_tangles(cup_tangle(), cap_tangle())
    assert (closed.m, closed.n, closed.num_crossings) == (0, 0, 0)
    assert len(closed.free_loops) == 1

    tangle = build("tangle24")
    assert (tangle.m, tangle.n, tangle.num_crossings) == (1, 2, 1)

    stacked = stack_tangles(identity_tangle(1), build("twist"))
    assert (stacked.m, stacked.n) == (2, 2)

    with pytest.raises(DiagramError) as exc_info:
        compose_tangles(build("twist"), build("ladybug"))
    assert "cannot compose" in str(exc_info.value)


def test_inconsistent_composition():
    """Test that joining two incoming strands with a cup fails."""
    with pytest.raises(OrientationError):
        compose_tangles(cup_tangle(), braid_tangle([1], 2))


def test_mirror_and_reorder():
    """Test mirror images and crossing reordering."""
    trefoil = build("trefoil_right")
    assert writhe_counts(mirror(trefoil)) == (0, 3)
    hopf = build("hopf")
    swapped = reorder_diagram(hopf, [1, 0])
    assert swapped.crossings == (hopf.crossings[1], hopf.crossings[0])
    with pytest.raises(DiagramError):
        reorder_diagram(hopf, [0, 0])


def test_corpus_builds():
    """Test that every corpus builder gives an oriented planar diagram."""
    for name in BUILDERS:
        diagram = build(name)
        assert diagram.is_oriented(), name
        assert diagram.num_crossings <= 8
    with pytest.raises(DiagramError):
        build("no_such_diagram")
