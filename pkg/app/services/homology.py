"""
Exact integral homology of bigraded chain complexes.

Matrices are numpy arrays of Python integers (dtype=object), so entries never
overflow. The Smith normal form follows the extended Euclidean elimination
used by pymatgen, extended to track the inverse of the row transform so that
quotient complexes can be written down from the certificates.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from app import logger
from app.config.settings import settings
from app.core.exceptions import VerificationError
from app.models.schemas import HomologyEntry, VerificationReport

Bigrading = Tuple[int, int]


def as_integer_matrix(rows: Sequence[Sequence[int]], shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """An object-dtype integer matrix; ``shape`` is needed when there are no rows."""
    if shape is not None and (shape[0] == 0 or shape[1] == 0):
        return np.zeros(shape, dtype=object)
    matrix = np.array(rows, dtype=object)
    if matrix.ndim != 2:
        matrix = matrix.reshape(shape if shape is not None else (len(rows), 0))
    return matrix


# ----------------------------------------------------------------------
# Smith normal form


@dataclass
class SNFResult:
    """
    Invariant factors d_1 | d_2 | ... of a matrix A with the certificates
    ``left @ A @ right == diag`` and ``left @ left_inverse == I``.
    """

    shape: Tuple[int, int]
    factors: Tuple[int, ...]
    left: Optional[np.ndarray] = None
    left_inverse: Optional[np.ndarray] = None
    right: Optional[np.ndarray] = None

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.factors if d > 1)

    def diagonal(self) -> np.ndarray:
        diag = np.zeros(self.shape, dtype=object)
        for k, d in enumerate(self.factors):
            diag[k, k] = d
        return diag

    def verify(self, matrix: np.ndarray) -> bool:
        """Check the certificates by exact multiplication."""
        if self.left is None:
            return True
        rows, cols = self.shape
        ok = np.array_equal(self.left.dot(matrix).dot(self.right), self.diagonal()) if rows and cols else True
        ok &= np.array_equal(self.left.dot(self.left_inverse), np.identity(rows, dtype=object))
        return bool(ok)


class SmithNormalForm:
    """
    Smith normal form by extended Euclidean elimination.

    Parameters
    ----------
    A: array, (m, n)
        integer matrix
    certificates: bool
        track the unimodular transforms
    """

    def __init__(self, A: np.ndarray, certificates: bool = True):
        self.A_org = A
        self.A_ = np.array(A, dtype=object).reshape(A.shape)
        self.certificates = certificates
        rows, cols = self.A_.shape
        if certificates:
            self.left = np.identity(rows, dtype=object)
            self.left_inverse = np.identity(rows, dtype=object)
            self.right = np.identity(cols, dtype=object)

    @property
    def num_row(self) -> int:
        return self.A_.shape[0]

    @property
    def num_column(self) -> int:
        return self.A_.shape[1]

    def compute(self) -> SNFResult:
        factors = []
        s = 0
        while s < min(self.A_.shape):
            pivot = self._find_pivot(s)
            if pivot is None:
                break
            row, col = pivot
            self._swap_rows(s, row)
            self._swap_columns(s, col)
            self._eliminate(s)
            if self.A_[s + 1:, s].any() or self.A_[s, s + 1:].any():
                continue
            row_next = self._find_non_divisible_row(s)
            if row_next is not None:
                # pull the offending row into row s and reduce again
                self._add_row(s, row_next, 1)
                continue
            if self.A_[s, s] < 0:
                self._negate_row(s)
            factors.append(int(self.A_[s, s]))
            s += 1
        if not self.certificates:
            return SNFResult(self.A_.shape, tuple(factors))
        return SNFResult(self.A_.shape, tuple(factors), self.left, self.left_inverse, self.right)

    def _find_pivot(self, s: int) -> Optional[Tuple[int, int]]:
        sub = self.A_[s:, s:]
        units = np.argwhere((sub == 1) | (sub == -1))
        if len(units):
            i, j = units[0]
            return s + int(i), s + int(j)
        nonzero = np.argwhere(sub != 0)
        if not len(nonzero):
            return None
        i, j = min(nonzero, key=lambda ij: abs(sub[ij[0], ij[1]]))
        return s + int(i), s + int(j)

    def _eliminate(self, s: int) -> None:
        pivot = self.A_[s, s]
        below = self.A_[s + 1:, s] // pivot
        if below.any():
            self.A_[s + 1:, :] -= np.outer(below, self.A_[s, :])
            if self.certificates:
                self.left[s + 1:, :] -= np.outer(below, self.left[s, :])
                self.left_inverse[:, s] += self.left_inverse[:, s + 1:].dot(below)
        across = self.A_[s, s + 1:] // pivot
        if across.any():
            self.A_[:, s + 1:] -= np.outer(self.A_[:, s], across)
            if self.certificates:
                self.right[:, s + 1:] -= np.outer(self.right[:, s], across)

    def _find_non_divisible_row(self, s: int) -> Optional[int]:
        pivot = self.A_[s, s]
        rest = self.A_[s + 1:, s + 1:]
        if not rest.size:
            return None
        hits = np.argwhere(rest % pivot != 0)
        return s + 1 + int(hits[0][0]) if len(hits) else None

    def _swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.A_[[i, j]] = self.A_[[j, i]]
        if self.certificates:
            self.left[[i, j]] = self.left[[j, i]]
            self.left_inverse[:, [i, j]] = self.left_inverse[:, [j, i]]

    def _swap_columns(self, i: int, j: int) -> None:
        if i == j:
            return
        self.A_[:, [i, j]] = self.A_[:, [j, i]]
        if self.certificates:
            self.right[:, [i, j]] = self.right[:, [j, i]]

    def _add_row(self, target: int, source: int, k: int) -> None:
        """add k times row ``source`` to row ``target``"""
        self.A_[target] += self.A_[source] * k
        if self.certificates:
            self.left[target] += self.left[source] * k
            self.left_inverse[:, source] -= self.left_inverse[:, target] * k

    def _negate_row(self, i: int) -> None:
        self.A_[i] *= -1
        if self.certificates:
            self.left[i] *= -1
            self.left_inverse[:, i] *= -1


def smith_normal_form(matrix, certificates: bool = False) -> SNFResult:
    """
    Invariant factors of an integer matrix.

    With ``certificates`` (or in VERIFY mode) the unimodular transforms are
    returned and checked by multiplication.

    Raises:
        VerificationError: If a certificate does not multiply out
    """
    A = matrix if isinstance(matrix, np.ndarray) else as_integer_matrix(matrix)
    A = A.astype(object)
    check = certificates or settings.VERIFY
    if 0 in A.shape:
        rows = A.shape[0]
        eye = np.identity(rows, dtype=object)
        if check:
            return SNFResult(A.shape, (), eye, eye.copy(), np.identity(A.shape[1], dtype=object))
        return SNFResult(A.shape, ())
    result = SmithNormalForm(A, certificates=check).compute()
    if check and not result.verify(A):
        raise VerificationError(f"Smith normal form certificate failed for a {A.shape} matrix")
    return result


def _factors_job(matrix: np.ndarray) -> Tuple[int, ...]:
    return smith_normal_form(matrix).factors


# ----------------------------------------------------------------------
# chain complexes and homology


@dataclass
class ChainComplex:
    """
    A bigraded complex of free abelian groups.

    ``maps[(h, q)]`` is the differential from (h, q) to (h - 1, q), as a
    matrix of shape (dims[(h-1, q)], dims[(h, q)]).
    """

    dims: Dict[Bigrading, int]
    maps: Dict[Bigrading, np.ndarray] = field(default_factory=dict)

    def d(self, h: int, q: int) -> np.ndarray:
        if (h, q) in self.maps:
            return self.maps[(h, q)]
        return np.zeros((self.dims.get((h - 1, q), 0), self.dims.get((h, q), 0)), dtype=object)

    def bigradings(self) -> List[Bigrading]:
        return sorted(k for k, v in self.dims.items() if v)

    def euler(self) -> Dict[int, int]:
        """Graded Euler characteristic: q -> Σ (-1)^h dim."""
        chi: Dict[int, int] = {}
        for (h, q), dim in self.dims.items():
            chi[q] = chi.get(q, 0) + (-1) ** (h % 2) * dim
        return {q: c for q, c in sorted(chi.items()) if c}

    def squares_to_zero(self) -> bool:
        for (h, q), matrix in self.maps.items():
            below = self.d(h - 1, q)
            if below.size and matrix.size and below.dot(matrix).any():
                return False
        return True


@dataclass
class BigradedHomology:
    """(h, q) -> (free rank, torsion invariant factors); only nonzero groups are stored."""

    groups: Dict[Bigrading, Tuple[int, Tuple[int, ...]]] = field(default_factory=dict)

    def __post_init__(self):
        self.groups = {k: (r, tuple(t)) for k, (r, t) in sorted(self.groups.items()) if r or t}

    def __eq__(self, other) -> bool:
        return isinstance(other, BigradedHomology) and self.groups == other.groups

    def rank(self, h: int, q: int) -> int:
        return self.groups.get((h, q), (0, ()))[0]

    def torsion(self, h: int, q: int) -> Tuple[int, ...]:
        return self.groups.get((h, q), (0, ()))[1]

    @property
    def total_rank(self) -> int:
        return sum(r for r, _ in self.groups.values())

    def torsion_factors(self) -> List[int]:
        return sorted(d for _, t in self.groups.values() for d in t)

    def euler(self) -> Dict[int, int]:
        chi: Dict[int, int] = {}
        for (h, q), (r, _) in self.groups.items():
            chi[q] = chi.get(q, 0) + (-1) ** (h % 2) * r
        return {q: c for q, c in sorted(chi.items()) if c}

    def entries(self) -> List[HomologyEntry]:
        return [HomologyEntry(h=h, q=q, rank=r, torsion=list(t)) for (h, q), (r, t) in self.groups.items()]

    def first_difference(self, other: "BigradedHomology") -> Optional[Bigrading]:
        for key in sorted(set(self.groups) | set(other.groups)):
            if self.groups.get(key) != other.groups.get(key):
                return key
        return None

    def __str__(self) -> str:
        if not self.groups:
            return "0"
        parts = []
        for (h, q), (r, t) in self.groups.items():
            summands = ([f"Z^{r}" if r > 1 else "Z"] if r else []) + [f"Z/{d}" for d in t]
            parts.append(f"({h},{q}): {' + '.join(summands)}")
        return "; ".join(parts)


def chain_homology(chain: ChainComplex, jobs: Optional[int] = None) -> BigradedHomology:
    """
    Homology of ``chain`` in every bigrading via Smith normal forms of the
    adjacent differentials.
    """
    keys = [k for k in chain.maps if chain.maps[k].size]
    jobs = jobs or settings.JOBS
    if jobs > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            factors = dict(zip(keys, pool.map(_factors_job, [chain.maps[k] for k in keys])))
    else:
        factors = {k: _factors_job(chain.maps[k]) for k in keys}

    groups = {}
    for (h, q), dim in chain.dims.items():
        if not dim:
            continue
        out_rank = len(factors.get((h, q), ()))
        incoming = factors.get((h + 1, q), ())
        free = dim - out_rank - len(incoming)
        groups[(h, q)] = (free, tuple(d for d in incoming if d > 1))
    result = BigradedHomology(groups)
    logger.debug(f"homology over {len(chain.dims)} bigradings: total rank {result.total_rank}")
    return result


def homology(complex_like, pair: Optional[Tuple[int, int]] = None, jobs: Optional[int] = None) -> BigradedHomology:
    """
    Bigraded integral homology of a Khovanov complex (or any chain complex).

    Args:
        complex_like: KhComplex or ChainComplex
        pair: Restrict to the summand of one pair of matchings (a, b)
        jobs: Worker processes for the Smith normal forms
    """
    if isinstance(complex_like, ChainComplex):
        return chain_homology(complex_like, jobs)
    return chain_homology(complex_like.to_chain_complex(pair), jobs)


# ----------------------------------------------------------------------
# independent oracle


def _sympy_factors(rows: List[List[int]]) -> Tuple[int, ...]:
    if not rows or not rows[0]:
        return ()
    factors = invariant_factors(Matrix(rows), domain=ZZ)
    return tuple(sorted(abs(int(f)) for f in factors if f != 0))


def oracle_homology(K, pair: Optional[Tuple[int, int]] = None) -> BigradedHomology:
    """
    Homology from one dense matrix of the whole differential.

    The totalized matrix is sliced by bigrading and handed to sympy's
    invariant factors, sharing no code with :func:`chain_homology`.
    """
    chosen = [g for g, gen in enumerate(K.generators) if pair is None or (gen.a, gen.b) == tuple(pair)]
    position = {g: k for k, g in enumerate(chosen)}
    size = len(chosen)
    total = [[0] * size for _ in range(size)]
    for g in chosen:
        for t, c in K.differential.get(g, {}).items():
            total[position[t]][position[g]] += c

    by_grading: Dict[Bigrading, List[int]] = {}
    for g in chosen:
        by_grading.setdefault((K.h[g], K.q[g]), []).append(position[g])

    groups = {}
    for (h, q), cols in by_grading.items():
        below = by_grading.get((h - 1, q), [])
        above = by_grading.get((h + 1, q), [])
        out_rank = len(_sympy_factors([[total[r][c] for c in cols] for r in below]))
        incoming = _sympy_factors([[total[r][c] for c in above] for r in cols])
        groups[(h, q)] = (len(cols) - out_rank - len(incoming), tuple(d for d in incoming if d > 1))
    return BigradedHomology(groups)


def compare_homology(first, second, label: str = "") -> VerificationReport:
    """
    Compare two complexes with the same boundary: the total homology for
    closed diagrams, and every pair of matchings otherwise.
    """
    report = VerificationReport(subject=label or f"{first.name} vs {second.name}")
    if (first.m, first.n) != (second.m, second.n):
        report.record("boundary", False, f"({2 * first.m},{2 * first.n}) vs ({2 * second.m},{2 * second.n})")
        return report
    pairs: Iterable[Optional[Tuple[int, int]]] = first.pairs() if first.m or first.n else [None]
    for pair in pairs:
        ours, theirs = homology(first, pair), homology(second, pair)
        where = ours.first_difference(theirs)
        detail = None if where is None else (
            f"pair {pair} differs first at (h,q)={where}: {ours.groups.get(where)} vs {theirs.groups.get(where)}"
        )
        report.record("homology", where is None, detail)
        report.stats["pairs"] = report.stats.get("pairs", 0) + 1
    logger.info(f"{report.subject}: homology {'agrees' if report.passed else 'differs'}")
    return report
