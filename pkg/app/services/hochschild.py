"""
Hochschild homology of tangle bimodules.

For a (2n, 2n)-tangle the complex M = C_Kh(T) is an (H^n, H^n)-bimodule.
Chains in bar degree k are m ⊗ h_1 ⊗ ... ⊗ h_k with m in M(a, b), each h_i
a non-idempotent basis element and the sequence b -> ... -> a composable,
so the bar complex is normalized relative to the idempotents. The total
differential is b + (-1)^k d_M, and a chain sits in total degree
t = k + h(m).
"""
from typing import Dict, List, Optional, Tuple

import numpy as np

from app import logger
from app.config.settings import settings
from app.core.exceptions import DiagramError
from app.services.arc_algebra import FormalSum, add_into
from app.services.homology import BigradedHomology, ChainComplex, chain_homology
from app.services.tangle_complex import KhComplex

Chain = Tuple[int, Tuple[int, ...]]


class HochschildComplex:
    """The bar-degree-truncated Hochschild complex of ``M`` up to bar degree ``top``."""

    def __init__(self, M: KhComplex, top: int):
        if M.m != M.n:
            raise DiagramError(f"Hochschild homology needs a square tangle, {M.name} is ({2 * M.m},{2 * M.n})")
        self.M = M
        self.top = top
        self.algebra = M.right_algebra
        idempotents = set(self.algebra.idempotents)
        self.bar_basis = [x for x in range(self.algebra.rank) if x not in idempotents]
        self.chains: List[List[Chain]] = []
        self.index: List[Dict[Chain, int]] = []
        self._enumerate()

    def _enumerate(self) -> None:
        algebra = self.algebra
        starting: Dict[int, List[int]] = {}
        for x in self.bar_basis:
            starting.setdefault(algebra.basis[x][0], []).append(x)
        # sequences keyed by (first left matching, last right matching)
        sequences: Dict[Tuple[int, int], List[Tuple[int, ...]]] = {}
        for k in range(self.top + 1):
            level: List[Chain] = []
            if k == 0:
                level = [(g, ()) for g, gen in enumerate(self.M.generators) if gen.a == gen.b]
            else:
                if k == 1:
                    sequences = {}
                    for x in self.bar_basis:
                        a, b, _ = algebra.basis[x]
                        sequences.setdefault((a, b), []).append((x,))
                else:
                    longer: Dict[Tuple[int, int], List[Tuple[int, ...]]] = {}
                    for (a, b), seqs in sequences.items():
                        for x in starting.get(b, ()):
                            end = algebra.basis[x][1]
                            longer.setdefault((a, end), []).extend(s + (x,) for s in seqs)
                    sequences = longer
                for g, gen in enumerate(self.M.generators):
                    level.extend((g, s) for s in sequences.get((gen.b, gen.a), ()))
            self.chains.append(level)
            self.index.append({c: i for i, c in enumerate(level)})
        logger.debug(f"Hochschild chains of {self.M.name} by bar degree: {[len(c) for c in self.chains]}")

    def grading(self, k: int, i: int) -> Tuple[int, int]:
        g, seq = self.chains[k][i]
        q = self.M.q[g] + sum(self.algebra.grading(x) for x in seq)
        return k + self.M.h[g], q

    def boundary(self, k: int, i: int) -> Dict[Tuple[int, int], int]:
        """D of chain i in bar degree k, as {(bar degree, index): coeff}."""
        M, algebra = self.M, self.algebra
        g, seq = self.chains[k][i]
        result: Dict[Tuple[int, int], int] = {}
        sign = -1 if k % 2 else 1
        for t, c in M.differential.get(g, {}).items():
            add_into(result, (k, self.index[k][(t, seq)]), sign * c)
        if k == 0:
            return result
        lower = self.index[k - 1]
        for t, c in M.act_right(g, seq[0]).items():
            add_into(result, (k - 1, lower[(t, seq[1:])]), c)
        for p in range(k - 1):
            for x, c in algebra.multiply(seq[p], seq[p + 1]).items():
                chain = (g, seq[:p] + (x,) + seq[p + 2:])
                add_into(result, (k - 1, lower[chain]), (-1) ** (p + 1) * c)
        for t, c in M.act_left(seq[-1], g).items():
            add_into(result, (k - 1, lower[(t, seq[:-1])]), sign * c)
        return result

    def to_chain_complex(self, pair=None) -> ChainComplex:
        """Bigraded by (total degree, q)."""
        groups: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
        for k, level in enumerate(self.chains):
            for i in range(len(level)):
                groups.setdefault(self.grading(k, i), []).append((k, i))
        position = {cell: j for cells in groups.values() for j, cell in enumerate(cells)}
        dims = {key: len(cells) for key, cells in groups.items()}
        maps = {}
        for (t, q), cells in groups.items():
            below = groups.get((t - 1, q))
            if not below:
                continue
            matrix = np.zeros((len(below), len(cells)), dtype=object)
            for j, (k, i) in enumerate(cells):
                for cell, c in self.boundary(k, i).items():
                    matrix[position[cell], j] += c
            maps[(t, q)] = matrix
        return ChainComplex(dims, maps)


def hochschild_homology(M: KhComplex, max_degree: Optional[int] = None) -> List[BigradedHomology]:
    """
    HH_0 .. HH_k of a square tangle bimodule.

    HH_i collects total degree t = -N_+ + i and is keyed by (t, q). Bar
    degrees up to k + 1 are enumerated, which makes every reported degree
    exact.
    """
    k = settings.HOCHSCHILD_DEGREE if max_degree is None else max_degree
    complex_ = HochschildComplex(M, k + 1)
    total = chain_homology(complex_.to_chain_complex())
    lowest = -M.positive
    result = []
    for i in range(k + 1):
        t = lowest + i
        result.append(BigradedHomology({key: value for key, value in total.groups.items() if key[0] == t}))
    logger.info(f"HH of {M.name} up to degree {k}: ranks {[h.total_rank for h in result]}")
    return result
