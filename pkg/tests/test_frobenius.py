"""
Tests for the Frobenius algebra and its action on labelings.
"""
import pytest

from app.core.exceptions import SurgeryError
from app.services.corpus import build
from app.services.frobenius import (
    EMPTY,
    ONE,
    X,
    FrobeniusV,
    GradingContext,
    Labeling,
    all_labelings,
    apply_surgeries,
    apply_surgery,
    birth,
    q_grade,
)
from app.services.matchings import enumerate_matchings
from app.services.resolutions import close_matchings
from app.services.tangle_complex import closed_config

EMPTY_MATCHING = enumerate_matchings(0)[0]


@pytest.fixture
def kink_zero():
    return closed_config(build("unknot_kink_pos"), EMPTY_MATCHING, EMPTY_MATCHING, (0,))


def test_axioms():
    """Test the Frobenius algebra axioms."""
    checks = FrobeniusV.verify_axioms()
    assert all(checks.values()), checks


def test_structure_constants():
    """Test multiplication and comultiplication on the basis."""
    assert FrobeniusV.multiply(ONE, ONE) == [ONE]
    assert FrobeniusV.multiply(ONE, X) == [X]
    assert FrobeniusV.multiply(X, X) == []
    assert sorted(FrobeniusV.comultiply(ONE)) == [(ONE, X), (X, ONE)]
    assert FrobeniusV.comultiply(X) == [(X, X)]


def test_merge(kink_zero):
    """Test the merge at the kink."""
    assert apply_surgery(Labeling(kink_zero, (ONE, ONE)), 0) == {Labeling(kink_zero.flip(0), (ONE,)): 1}
    assert apply_surgery(Labeling(kink_zero, (ONE, X)), 0) == {Labeling(kink_zero.flip(0), (X,)): 1}
    assert apply_surgery(Labeling(kink_zero, (X, X)), 0) == {}


def test_split(kink_zero):
    """Test the split back from the one-circle resolution."""
    one = kink_zero.flip(0)
    result = apply_surgery(Labeling(one, (ONE,)), 0)
    assert sorted(x.values for x in result) == [(ONE, X), (X, ONE)]
    assert [x.values for x in apply_surgery(Labeling(one, (X,)), 0)] == [(X, X)]


def test_surgery_errors(kink_zero):
    """Test surgery at a site that does not exist."""
    with pytest.raises(SurgeryError) as exc_info:
        apply_surgery(Labeling(kink_zero, (ONE, ONE)), 5)
    assert "not part of the configuration" in str(exc_info.value)

    with pytest.raises(SurgeryError):
        Labeling(kink_zero, (ONE,))


def test_apply_surgeries(kink_zero):
    """Test merge followed by split."""
    _, result = apply_surgeries(kink_zero.flip(0).flip(0), (ONE, ONE), [0])
    assert result == {(ONE,): 1}


def test_counit_unused(kink_zero, mocker):
    """Test that no surgery reaches for the counit."""
    spy = mocker.spy(FrobeniusV, "counit")
    for x in all_labelings(2):
        apply_surgery(Labeling(kink_zero, x), 0)
    assert spy.call_count == 0


def test_grading():
    """Test the quantum grading of labelings."""
    assert q_grade((ONE,), GradingContext("algebra", m=1)) == 0
    assert q_grade((X,), GradingContext("algebra", m=1)) == 2
    assert q_grade((ONE, X), GradingContext("tangle", n=2, weight=1)) == 1
    with pytest.raises(ValueError):
        GradingContext("other").shift


def test_birth():
    """Test that birth labels new circles with 1."""
    for a in enumerate_matchings(2):
        born = birth(Labeling(EMPTY, ()), close_matchings(a, a))
        assert born.values == (ONE, ONE)
        assert born.p == 2
        assert born.symbol() == "1⊗1"
