"""
Tests for resolutions, closures and gluing of closures.
"""
import pytest

from app.core.exceptions import MatchingError, SurgeryError
from app.services.corpus import build
from app.services.matchings import enumerate_matchings
from app.services.resolutions import close_matchings, glue_closures, resolve, seam_order, vertices
from app.services.tangle_complex import closed_config

EMPTY = enumerate_matchings(0)[0]


def test_close_matchings():
    """Test circle counts of a b̄."""
    for n in range(4):
        for a in enumerate_matchings(n):
            assert close_matchings(a, a).num_circles == n
    a, b = enumerate_matchings(2)
    assert close_matchings(a, b).num_circles == 1

    with pytest.raises(MatchingError):
        close_matchings(enumerate_matchings(1)[0], a)


def test_resolution_circles():
    """Test oriented and all-one resolutions of the trefoil."""
    trefoil = build("trefoil_right")
    assert resolve(trefoil, (0, 0, 0)).num_circles == 2
    assert resolve(trefoil, (1, 1, 1)).num_circles == 3

    with pytest.raises(SurgeryError):
        resolve(trefoil, (0, 1))


def test_open_arcs():
    """Test that tangle resolutions keep their boundary arcs open."""
    config = resolve(build("twist"), (0,))
    assert len(config.arcs) == 2
    assert config.num_circles == 0


def test_flip_and_merge():
    """Test surgeries on the kinked unknot."""
    kink = build("unknot_kink_pos")
    zero = closed_config(kink, EMPTY, EMPTY, (0,))
    assert zero.num_circles == 2
    assert zero.is_merge(0)

    one = zero.flip(0)
    assert one.v == (1,)
    assert one.num_circles == 1
    assert not one.is_merge(0)

    with pytest.raises(SurgeryError):
        zero.flip(3)


def test_glue_closures():
    """Test that collapsing all seams gives the closure of the outer matchings."""
    matchings = enumerate_matchings(2)
    for a in matchings:
        for b in matchings:
            for c in matchings:
                glued, seams = glue_closures(close_matchings(a, b), close_matchings(b, c))
                assert len(seams) == 2
                final = glued
                for k in seam_order(glued, seams, b, "innermost"):
                    final = final.flip(k)
                assert final.num_circles == close_matchings(a, c).num_circles

    a, b = matchings
    with pytest.raises(MatchingError):
        glue_closures(close_matchings(a, a), close_matchings(b, a))


def test_vertices():
    """Test the lexicographic order of cube vertices."""
    assert list(vertices(2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert list(vertices(0)) == [()]
