"""
Tests for invariance under Reidemeister moves and crossing reordering.
"""
import pytest

from app.core.exceptions import DiagramError
from app.services.corpus import build, reidemeister_pairs
from app.services.diagrams import reorder_diagram
from app.services.homology import compare_homology, homology
from app.services.tangle_complex import KhComplex, reorder_crossings, reordering_isomorphism


@pytest.mark.parametrize("label,first,second", reidemeister_pairs(), ids=[p[0] for p in reidemeister_pairs()])
def test_move_preserves_homology(label, first, second):
    """Test that both diagrams of a move have the same homology."""
    report = compare_homology(KhComplex(first), KhComplex(second), label)
    assert report.passed, report.counterexamples
    assert report.stats["pairs"] >= 1


@pytest.mark.parametrize("name,permutation", [
    ("hopf", [1, 0]),
    ("trefoil_right", [2, 0, 1]),
    ("figure_eight", [3, 1, 0, 2]),
    ("tangle24_b", [1, 0]),
])
def test_reordering_is_chain_isomorphism(name, permutation):
    """Test that the signed generator permutation commutes with the differentials."""
    K = KhComplex(build(name))
    reordered = reorder_crossings(K, permutation)
    phi = reordering_isomorphism(K, reordered, permutation)
    assert sorted(t for t, _ in phi.values()) == list(range(reordered.rank))
    for g in range(K.rank):
        target, sign = phi[g]
        assert (reordered.h[target], reordered.q[target]) == (K.h[g], K.q[g])
        image = {}
        for t, c in K.differential.get(g, {}).items():
            t2, s2 = phi[t]
            image[t2] = c * s2
        pushed = {t: sign * c for t, c in reordered.differential.get(target, {}).items()}
        assert pushed == image


def test_reordering_preserves_homology(trefoil_complex):
    """Test that reordering does not change the homology."""
    reordered = reorder_crossings(trefoil_complex, [1, 2, 0])
    assert homology(reordered) == homology(trefoil_complex)


def test_reorder_rejects_non_permutation():
    """Test that a bad permutation is refused."""
    with pytest.raises(DiagramError):
        reorder_diagram(build("hopf"), [0, 0])


def test_mirror_differs_from_knot():
    """Test that the trefoil is told apart from its mirror."""
    report = compare_homology(KhComplex(build("trefoil_right")), KhComplex(build("trefoil_left")))
    assert not report.passed
