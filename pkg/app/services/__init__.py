"""
Services: planar combinatorics, the TQFT and its Burnside lift, arc algebras,
tangle complexes, homological algebra and report export.
"""

from .matchings import CrossinglessMatching, enumerate_matchings
from .diagrams import TangleDiagram, compose_tangles, load_tangle, writhe_counts
from .arc_algebra import build_arc_algebra, verify_algebra
from .tangle_complex import build_complex, verify_complex
from .homology import compare_homology, homology, smith_normal_form
from .export import ReportService
