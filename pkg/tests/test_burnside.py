"""
Tests for Burnside correspondences, ladybug matchings and hexagons.
"""
from math import comb

import numpy as np
import pytest

from app.core.exceptions import CorrespondenceError
from app.services.burnside import (
    FaceSquare,
    abelianize,
    check_face,
    check_hexagon,
    compose,
    count_ladybugs,
    cube_faces,
    face_bijection,
    identity_correspondence,
    ladybug_edge,
    saddle_correspondence,
)
from app.services.corpus import BUILDERS, build
from app.services.frobenius import ONE, X
from app.services.matchings import enumerate_matchings
from app.services.resolutions import vertices
from app.services.tangle_complex import KhComplex, StableFunctorData, closed_config

EMPTY = enumerate_matchings(0)[0]


def test_saddle_abelianizes_to_merge():
    """Test the merge correspondence at the kink."""
    base = closed_config(build("unknot_kink_pos"), EMPTY, EMPTY, (0,))
    merge = saddle_correspondence(base, base.flip(0), 0)
    expected = np.array([[1, 0, 0, 0], [0, 1, 1, 0]])
    assert np.array_equal(abelianize(merge), expected)


def test_compose():
    """Test composition with identities and mismatched sets."""
    base = closed_config(build("unknot_kink_pos"), EMPTY, EMPTY, (0,))
    merge = saddle_correspondence(base, None, 0)
    same = compose(identity_correspondence(merge.target), merge)
    assert np.array_equal(abelianize(same), abelianize(merge))

    with pytest.raises(CorrespondenceError):
        compose(merge, merge)


def test_ladybug_face():
    """Test the split-then-merge face of the RII unlink."""
    base = closed_config(build("unlink_r2"), EMPTY, EMPTY, (0, 0))
    assert base.num_circles == 1
    assert count_ladybugs(base, 0, 1) == 1

    verdict = check_face(FaceSquare.from_config(base, 0, 1, "right"))
    assert verdict.passed
    assert verdict.ladybugs == 1

    right = face_bijection(base, 0, 1, (ONE,), (X,), "right")
    left = face_bijection(base, 0, 1, (ONE,), (X,), "left")
    assert set(right.values()) == set(left.values())
    assert right != left


# 00 face of the ladybug closure. Both paths split the circle and merge it
# back; the first splits it into {1,4} and {2,3}, the second into {1,2} and
# {3,4}. The right rule pairs the tokens through edge 3, the left through edge 4.
LADYBUG_CLOSURE_RIGHT = {
    ((ONE,), (ONE, X), (X,)): ((ONE,), (ONE, X), (X,)),
    ((ONE,), (X, ONE), (X,)): ((ONE,), (X, ONE), (X,)),
}
LADYBUG_CLOSURE_LEFT = {
    ((ONE,), (ONE, X), (X,)): ((ONE,), (X, ONE), (X,)),
    ((ONE,), (X, ONE), (X,)): ((ONE,), (ONE, X), (X,)),
}


def test_ladybug_closure_pairing():
    """Test the frozen ladybug pairing on the two-crossing closure of the ladybug tangle."""
    diagram = build("ladybug_closure")
    assert diagram.num_crossings == 2
    base = closed_config(diagram, EMPTY, EMPTY, (0, 0))
    assert base.num_circles == 1
    assert count_ladybugs(base, 0, 1) == 1
    assert [r.side for r in base.surgery_records[0]] == ["right", "right"]
    assert [r.side for r in base.surgery_records[1]] == ["left", "left"]

    assert ladybug_edge(base, 0, 1, "right") == (0, 3)
    assert ladybug_edge(base, 0, 1, "left") == (0, 4)
    assert face_bijection(base, 0, 1, (ONE,), (X,), "right") == LADYBUG_CLOSURE_RIGHT
    assert face_bijection(base, 0, 1, (ONE,), (X,), "left") == LADYBUG_CLOSURE_LEFT


def test_faces_abelianize_equally():
    """Test that both composites of every face of the trefoil agree as matrices."""
    trefoil = build("trefoil_right")
    base = closed_config(trefoil, EMPTY, EMPTY, (0, 0, 0))
    for i, j in [(0, 1), (0, 2), (1, 2)]:
        face = FaceSquare.from_config(base, i, j)
        assert np.array_equal(abelianize(face.along), abelianize(face.across))


@pytest.mark.parametrize("rule", ["right", "left"])
def test_hexagon_coherent(kinked_unlink, rule):
    """Test that a consistent ladybug rule closes every hexagon."""
    base = closed_config(kinked_unlink, EMPTY, EMPTY, (0, 0, 0))
    verdict = check_hexagon(base, (0, 1, 2), rule)
    assert verdict.passed, verdict.problems
    assert verdict.tokens_checked > 0


def test_hexagon_alternating_fails(kinked_unlink):
    """Test that switching the ladybug matching by vertex parity breaks a hexagon."""
    base = closed_config(kinked_unlink, EMPTY, EMPTY, (0, 0, 0))
    verdict = check_hexagon(base, (0, 1, 2), "alternating")
    assert not verdict.passed
    assert verdict.problems


CUBE_CHECKED = [name for name in BUILDERS if build(name).num_crossings <= 6]


def _functor_data(name):
    K = KhComplex(build(name))
    return K, StableFunctorData(K.diagram, K.positive, K.left_matchings, K.right_matchings)


def test_cube_faces():
    """Test that 2- and 3-faces of the 3-cube are listed once each."""
    corners = list(vertices(3))
    squares = list(cube_faces(3, 2, corners))
    assert len(squares) == 6
    assert len(set(squares)) == 6
    assert ((1, 0, 0), (1, 2)) in squares
    assert list(cube_faces(3, 3, corners)) == [((0, 0, 0), (0, 1, 2))]
    assert list(cube_faces(1, 2, list(vertices(1)))) == []


@pytest.mark.parametrize("name", CUBE_CHECKED)
def test_corpus_coherence(name):
    """Test every face and hexagon of every corpus cube."""
    K, data = _functor_data(name)
    report = data.check_coherence("right")
    assert report.passed, report.counterexamples

    n = K.diagram.num_crossings
    blocks = len(K.left_matchings) * len(K.right_matchings)
    assert report.stats["faces"] == blocks * comb(n, 2) * 2 ** max(n - 2, 0)
    assert report.stats["hexagons"] == blocks * comb(n, 3) * 2 ** max(n - 3, 0)


def test_alternating_coherence_report(kinked_unlink):
    """Test the coherence report of the deliberately incoherent rule."""
    K = KhComplex(kinked_unlink)
    data = StableFunctorData(K.diagram, K.positive, K.left_matchings, K.right_matchings)
    report = data.check_coherence("alternating")
    assert report.checks["faces"]
    assert not report.checks["hexagons"]
    assert data.check_coherence("right").passed


def test_alternating_rule_fails_on_corpus():
    """Test that the parity-switched matching breaks a hexagon somewhere in the corpus."""
    failing = []
    for name in CUBE_CHECKED:
        if build(name).num_crossings < 3:
            continue
        _, data = _functor_data(name)
        if not data.check_coherence("alternating").checks["hexagons"]:
            failing.append(name)
    assert "kinked_unlink" in failing


def test_left_action_correspondence_counts_the_action():
    """Test that the multi-merge correspondence abelianizes to the left H^2 action."""
    K, data = _functor_data("ladybug_cap")
    assert len(K.left_matchings) == 2
    checked = 0
    for x, (a2, a, xv) in enumerate(K.left_algebra.basis):
        for g, gen in enumerate(K.generators):
            if gen.a != a:
                continue
            correspondence = data.left_action_correspondence(a2, a, gen.b, gen.v)
            matrix = abelianize(correspondence)
            column = correspondence.source.index((xv, gen.values))
            expected = {K.generators[t].values: c for t, c in K.act_left(x, g).items()}
            for row, z in enumerate(correspondence.target):
                assert matrix[row, column] == expected.get(z, 0)
            checked += 1
    assert checked > 0


def test_unknown_rule():
    """Test an unknown ladybug rule."""
    base = closed_config(build("unlink_r2"), EMPTY, EMPTY, (0, 0))
    with pytest.raises(CorrespondenceError):
        face_bijection(base, 0, 1, (ONE,), (X,), "sideways")
