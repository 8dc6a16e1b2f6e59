"""
One handler per subcommand. Each takes the validated RunConfig and returns
a CommandResult; none of them write to stdout.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, List

import pandas as pd

from app import logger
from app.config.settings import settings
from app.core.exceptions import ConfigurationError
from app.models.schemas import RunConfig, VerificationReport
from app.services.arc_algebra import build_arc_algebra, verify_algebra
from app.services.corpus import reidemeister_pairs, resolve_input
from app.services.export import ReportService
from app.services.gluing import gluing_map
from app.services.hochschild import hochschild_homology
from app.services.homology import compare_homology, homology, oracle_homology
from app.services.matchings import enumerate_matchings
from app.services.tangle_complex import KhComplex, build_complex, jones_state_sum, verify_complex


@dataclass
class CommandResult:
    report: ReportService = field(default_factory=ReportService)
    ok: bool = True

    def add_report(self, verification: VerificationReport) -> None:
        self.report.add_report(verification)
        self.ok = self.ok and verification.passed


def _integer_argument(config: RunConfig) -> int:
    if len(config.inputs) != 1:
        raise ConfigurationError(f"{config.command} takes exactly one integer argument")
    try:
        value = int(config.inputs[0])
    except ValueError:
        raise ConfigurationError(f"{config.command} expects an integer, got {config.inputs[0]!r}")
    if value < 0:
        raise ConfigurationError(f"{config.command} expects a non-negative integer, got {value}")
    return value


def _diagrams(config: RunConfig, count: int):
    if len(config.inputs) != count:
        raise ConfigurationError(f"{config.command} takes {count} diagram argument{'s' if count > 1 else ''}")
    return [resolve_input(spec, config.fixtures) for spec in config.inputs]


def _pairs(K: KhComplex):
    return K.pairs() if K.m or K.n else [None]


def _block_label(K: KhComplex, pair) -> str:
    if pair is None:
        return "closed"
    a, b = pair
    return f"{K.left_matchings[a]}|{K.right_matchings[b]}"


def run_matchings(config: RunConfig) -> CommandResult:
    n = _integer_argument(config)
    result = CommandResult()
    rows = [{"index": i, "matching": m.label()} for i, m in enumerate(enumerate_matchings(n))]
    result.report.add_table(f"crossingless matchings of {2 * n} points ({len(rows)})",
                            pd.DataFrame(rows, columns=["index", "matching"]))
    return result


def run_arc_algebra(config: RunConfig) -> CommandResult:
    n = _integer_argument(config)
    algebra = build_arc_algebra(n, settings.SURGERY_ORDER)
    result = CommandResult()
    rows = [{"index": i, "element": algebra.label(i), "q": algebra.grading(i)} for i in range(algebra.rank)]
    result.report.add_table(f"H^{n} basis (rank {algebra.rank})", pd.DataFrame(rows, columns=["index", "element", "q"]))
    if config.verify:
        result.add_report(verify_algebra(algebra))
    return result


def run_complex(config: RunConfig) -> CommandResult:
    (diagram,) = _diagrams(config, 1)
    K, data = build_complex(diagram, config.jobs, verify=False)
    result = CommandResult()
    counts: Dict[tuple, int] = {}
    for g, gen in enumerate(K.generators):
        key = (_block_label(K, (gen.a, gen.b) if K.m or K.n else None), K.h[g], K.q[g])
        counts[key] = counts.get(key, 0) + 1
    rows = [{"block": block, "h": h, "q": q, "generators": c} for (block, h, q), c in sorted(counts.items())]
    result.report.add_table(f"C_Kh({K.name}): {K.rank} generators, N+={K.positive}, N-={K.negative}",
                            pd.DataFrame(rows, columns=["block", "h", "q", "generators"]))
    if config.verify:
        result.add_report(verify_complex(K))
        result.add_report(data.check_coherence(config.ladybug_rule))
    return result


def run_homology(config: RunConfig) -> CommandResult:
    (diagram,) = _diagrams(config, 1)
    K, _ = build_complex(diagram, config.jobs, verify=config.verify)
    result = CommandResult()
    title = f"Kh({K.name})"
    oracle = VerificationReport(subject=f"{K.name} against the dense oracle")
    for pair in _pairs(K):
        H = homology(K, pair, config.jobs)
        result.report.add_homology(title, H, _block_label(K, pair))
        if config.verify:
            where = H.first_difference(oracle_homology(K, pair))
            oracle.record("oracle", where is None, f"{_block_label(K, pair)} differs at {where}")
    if config.verify:
        result.add_report(oracle)
        if not (K.m or K.n):
            jones = VerificationReport(subject=f"{K.name} Euler characteristic")
            chi, expected = K.euler_characteristic(), jones_state_sum(diagram)
            jones.record("jones", chi == expected, f"{chi} vs state sum {expected}")
            result.add_report(jones)
    return result


def run_glue(config: RunConfig) -> CommandResult:
    first, second = _diagrams(config, 2)
    glued = gluing_map(first, second, jobs=config.jobs)
    result = CommandResult()
    result.add_report(glued.report)
    verdict = "isomorphism verified" if glued.is_isomorphism else "NOT an isomorphism"
    result.report.add_note(f"gluing {glued.report.subject}", verdict)
    K = glued.composite
    for pair in _pairs(K):
        result.report.add_homology(f"Kh({K.name})", homology(K, pair, config.jobs), _block_label(K, pair))
    return result


def run_coherence(config: RunConfig) -> CommandResult:
    (diagram,) = _diagrams(config, 1)
    _, data = build_complex(diagram, config.jobs, verify=False)
    result = CommandResult()
    coherence = data.check_coherence(config.ladybug_rule)
    result.add_report(coherence)
    stats = pd.DataFrame([{"statistic": k, "count": v} for k, v in coherence.stats.items()],
                         columns=["statistic", "count"])
    result.report.add_table(f"cube statistics of {diagram.name or 'tangle'}", stats)
    return result


def run_hochschild(config: RunConfig) -> CommandResult:
    (diagram,) = _diagrams(config, 1)
    K, _ = build_complex(diagram, config.jobs, verify=config.verify)
    result = CommandResult()
    for i, H in enumerate(hochschild_homology(K, config.degree)):
        result.report.add_homology(f"HH_{i}({K.name})", H)
    return result


def run_reidemeister(config: RunConfig) -> CommandResult:
    if config.inputs:
        first, second = _diagrams(config, 2)
        pairs = [(f"{first.name} vs {second.name}", first, second)]
    else:
        pairs = reidemeister_pairs()
    result = CommandResult()
    for label, first, second in pairs:
        comparison = compare_homology(KhComplex(first, config.jobs), KhComplex(second, config.jobs), label)
        result.add_report(comparison)
    logger.info(f"{len(pairs)} Reidemeister comparisons, {'all equal' if result.ok else 'some differ'}")
    return result


COMMANDS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    "matchings": run_matchings,
    "arc-algebra": run_arc_algebra,
    "complex": run_complex,
    "homology": run_homology,
    "glue": run_glue,
    "coherence": run_coherence,
    "hochschild": run_hochschild,
    "reidemeister": run_reidemeister,
}

COMMAND_HELP: Dict[str, str] = {
    "matchings": "list the crossingless matchings of 2n points",
    "arc-algebra": "print the basis of H^n and, with --verify, check the algebra axioms",
    "complex": "build C_Kh(T) and summarize its generators",
    "homology": "bigraded integral homology of C_Kh(T)",
    "glue": "verify the gluing isomorphism for T1 and T2",
    "coherence": "check ladybug faces and hexagons on every cube",
    "hochschild": "Hochschild homology of a (2n,2n)-tangle bimodule",
    "reidemeister": "compare homology of two diagrams, or of the built-in move pairs",
}

ARGUMENTS: Dict[str, List[str]] = {
    "matchings": ["n"],
    "arc-algebra": ["n"],
    "complex": ["tangle"],
    "homology": ["tangle"],
    "glue": ["first", "second"],
    "coherence": ["tangle"],
    "hochschild": ["tangle"],
    "reidemeister": ["diagrams*"],
}
