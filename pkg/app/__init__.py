"""
Khovanov Tangle Invariants
Arc algebras, tangle bimodules, Burnside coherence and integral homology.
"""

__version__ = "1.0.0"

from loguru import logger

from app.core.logging import setup_logging

setup_logging()

__all__ = ["logger", "__version__"]
