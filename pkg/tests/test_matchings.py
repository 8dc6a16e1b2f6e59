"""
Tests for crossingless matchings.
"""
import pytest

from app.core.exceptions import MatchingError
from app.services.matchings import CrossinglessMatching, catalan, enumerate_matchings, matching_index


@pytest.mark.parametrize("n,expected", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 14), (5, 42)])
def test_catalan_counts(n, expected):
    """Test that matchings are counted by Catalan numbers."""
    assert len(enumerate_matchings(n)) == expected
    assert catalan(n) == expected


def test_canonical_order():
    """Test the lexicographic order of the basis."""
    pairs = [m.pairs for m in enumerate_matchings(2)]
    assert pairs == [((1, 2), (3, 4)), ((1, 4), (2, 3))]

    all_three = enumerate_matchings(3)
    assert [m.pairs for m in all_three] == sorted(m.pairs for m in all_three)
    assert len({m.pairs for m in all_three}) == 5


def test_matching_validation():
    """Test rejection of crossing and incomplete matchings."""
    with pytest.raises(MatchingError) as exc_info:
        CrossinglessMatching(2, ((1, 3), (2, 4)))
    assert "cross" in str(exc_info.value)

    with pytest.raises(MatchingError) as exc_info:
        CrossinglessMatching(2, ((1, 2),))
    assert "perfect matching" in str(exc_info.value)

    with pytest.raises(MatchingError):
        enumerate_matchings(-1)


def test_pairs_are_normalized():
    """Test that pair order does not matter."""
    m = CrossinglessMatching(2, ((4, 1), (3, 2)))
    assert m.pairs == ((1, 4), (2, 3))
    assert m.partner == {1: 4, 4: 1, 2: 3, 3: 2}
    assert matching_index(m) == 1
    assert str(m) == "{(1,4),(2,3)}"


def test_surgery_order():
    """Test innermost-first and outermost-first orders."""
    m = CrossinglessMatching(3, ((1, 6), (2, 3), (4, 5)))
    assert m.surgery_order("innermost") == [(2, 3), (4, 5), (1, 6)]
    assert m.surgery_order("outermost") == [(1, 6), (4, 5), (2, 3)]
    with pytest.raises(MatchingError):
        m.surgery_order("random")
