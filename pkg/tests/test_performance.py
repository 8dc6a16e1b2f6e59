"""
Performance tests for the application.
"""
import time

from app.services.arc_algebra import build_arc_algebra, verify_algebra
from app.services.corpus import CLOSED, TANGLES, build, gluing_pairs
from app.services.gluing import gluing_map
from app.services.homology import homology, smith_normal_form
from app.services.tangle_complex import KhComplex, build_complex


def test_arc_algebra_performance():
    """Test building and verifying H^3."""
    start_time = time.time()
    build_arc_algebra.cache_clear()
    algebra = build_arc_algebra(3)
    report = verify_algebra(algebra)
    processing_time = time.time() - start_time

    assert algebra.rank == 104
    assert report.passed
    assert processing_time < 120.0


def test_corpus_complex_performance():
    """Test building and verifying every corpus complex."""
    start_time = time.time()
    for name in CLOSED + TANGLES:
        build_complex(build(name), verify=True)
    processing_time = time.time() - start_time
    assert processing_time < 60.0


def test_homology_performance():
    """Test homology of the largest closed corpus diagrams."""
    start_time = time.time()
    for name in ["figure_eight", "trefoil_stabilized", "r3_left"]:
        homology(KhComplex(build(name)))
    processing_time = time.time() - start_time
    assert processing_time < 30.0


def test_gluing_performance():
    """Test the full gluing corpus."""
    start_time = time.time()
    for _, first, second in gluing_pairs():
        assert gluing_map(first, second).is_isomorphism
    processing_time = time.time() - start_time
    assert processing_time < 120.0


def test_snf_performance():
    """Test a 60x60 integer matrix."""
    matrix = [[(i * j + i + 2 * j) % 7 - 3 for j in range(60)] for i in range(60)]
    start_time = time.time()
    result = smith_normal_form(matrix, certificates=True)
    processing_time = time.time() - start_time
    assert result.rank <= 60
    assert processing_time < 30.0
