"""
Tests for Hochschild homology of (2n,2n)-tangle bimodules.
"""
import pytest

from app.core.exceptions import DiagramError
from app.services.corpus import rotation_pairs
from app.services.diagrams import compose_tangles
from app.services.hochschild import HochschildComplex, hochschild_homology
from app.services.homology import homology
from app.services.tangle_complex import KhComplex


def test_identity_bimodule(identity_complex):
    """Test HH_0 and HH_1 of H^1 as a bimodule over itself."""
    HH = hochschild_homology(identity_complex, 1)
    assert len(HH) == 2
    assert HH[0].groups == {(0, 0): (1, ()), (0, 2): (1, ())}
    assert HH[1].rank(1, 2) == 1
    assert HH[1].rank(1, 4) == 0
    assert HH[1].torsion(1, 4) == (2,)


def test_truncation_is_stable(identity_complex):
    """Test that a larger truncation does not change the lower degrees."""
    low = hochschild_homology(identity_complex, 1)
    high = hochschild_homology(identity_complex, 2)
    assert len(high) == 3
    assert high[:2] == low


def test_bar_degrees(identity_complex):
    """Test the chain counts of the normalized bar complex."""
    complex_ = HochschildComplex(identity_complex, 2)
    assert [len(level) for level in complex_.chains] == [2, 2, 2]
    assert complex_.grading(1, 0) == (1, 2)


def test_degree_zero_only(identity_complex):
    """Test k = 0."""
    (HH0,) = hochschild_homology(identity_complex, 0)
    assert HH0.total_rank == 2


def test_non_square_tangle(ladybug_complex):
    """Test that a (0,4)-tangle is rejected."""
    with pytest.raises(DiagramError):
        hochschild_homology(ladybug_complex, 1)


def test_closed_diagram_hochschild(trefoil_complex):
    """Test that HH_i of a closed diagram is Kh in homological degree -N_+ + i."""
    kh = homology(trefoil_complex)
    for i, HH in enumerate(hochschild_homology(trefoil_complex, 3)):
        assert HH.groups == {key: value for key, value in kh.groups.items() if key[0] == i - 3}


@pytest.mark.parametrize("label,first,second", rotation_pairs(), ids=[p[0] for p in rotation_pairs()])
def test_rotation_invariance(label, first, second):
    """Test HH(M ⊗ N) against HH(N ⊗ M) through degree 2."""
    one = hochschild_homology(KhComplex(compose_tangles(first, second)), 2)
    other = hochschild_homology(KhComplex(compose_tangles(second, first)), 2)
    assert one == other
