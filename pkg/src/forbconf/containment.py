"""Configuration containment ``F < A`` and the predicates built on it.

``F`` is a configuration of ``A`` when some submatrix of ``A`` is a row and
column permutation of ``F``. Containment is decided by backtracking over
injective row maps (lexicographic order) with a column-multiset counting
prune at every depth; the first witness found is returned.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .matrix import BinaryMatrix, column_string, popcount

_BINCOUNT_MAX_DEPTH = 16


@dataclass(frozen=True)
class ConfigWitness:
    """Certificate for ``F < A``.

    ``row_map[r]`` is the row of ``A`` playing row ``r`` of ``F`` and
    ``column_assignment[c]`` the column of ``A`` playing column ``c``.
    Indices are 0-based; :meth:`describe` renders them 1-based.
    """

    row_map: tuple[int, ...]
    column_assignment: tuple[int, ...]

    def describe(self) -> str:
        rows = " ".join(str(r + 1) for r in self.row_map)
        cols = " ".join(str(c + 1) for c in self.column_assignment)
        return f"rows: {rows}\ncolumns: {cols}"


def validate_witness(a: BinaryMatrix, f: BinaryMatrix, w: ConfigWitness) -> bool:
    """Check injectivity and the cell equality ``F[r,c] == A[row_map[r], col[c]]``."""
    if len(w.row_map) != f.num_rows or len(w.column_assignment) != f.num_cols:
        return False
    if len(set(w.row_map)) != len(w.row_map) or len(set(w.column_assignment)) != len(w.column_assignment):
        return False
    if any(not 0 <= r < a.num_rows for r in w.row_map):
        return False
    if any(not 0 <= c < a.num_cols for c in w.column_assignment):
        return False
    for c, ac in zip(f.columns, w.column_assignment):
        col = a.columns[ac]
        for r, ar in enumerate(w.row_map):
            if (c >> r & 1) != (col >> ar & 1):
                return False
    return True


def _weight_prefilter(a: BinaryMatrix, f: BinaryMatrix) -> bool:
    """Necessary condition: F's sorted 1-counts and 0-counts are dominated by A's."""
    a_ones = sorted((popcount(c) for c in a.columns), reverse=True)
    f_ones = sorted((popcount(c) for c in f.columns), reverse=True)
    if any(x > y for x, y in zip(f_ones, a_ones)):
        return False
    a_zeros = sorted((a.num_rows - w for w in a_ones), reverse=True)
    f_zeros = sorted((f.num_rows - w for w in f_ones), reverse=True)
    return all(x <= y for x, y in zip(f_zeros, a_zeros))


def _needed_counts(f: BinaryMatrix, depth: int) -> tuple[np.ndarray, np.ndarray]:
    """Distinct patterns of F's first ``depth`` rows and their multiplicities."""
    mask = (1 << depth) - 1
    counts = Counter(c & mask for c in f.columns)
    pats = np.array(sorted(counts), dtype=np.uint64)
    need = np.array([counts[int(p)] for p in pats], dtype=np.int64)
    return pats, need


def _pattern_counts(pattern: np.ndarray, depth: int, wanted: np.ndarray) -> np.ndarray:
    if depth <= _BINCOUNT_MAX_DEPTH:
        bins = np.bincount(pattern.astype(np.int64), minlength=1 << depth)
        return bins[wanted.astype(np.int64)]
    uniq, cnt = np.unique(pattern, return_counts=True)
    idx = np.searchsorted(uniq, wanted)
    idx_clipped = np.minimum(idx, len(uniq) - 1)
    hit = uniq[idx_clipped] == wanted
    return np.where(hit, cnt[idx_clipped], 0)


def contains_configuration(a: BinaryMatrix, f: BinaryMatrix) -> ConfigWitness | None:
    """Return a witness that ``f`` is a configuration of ``a``, or ``None``.

    A taller ``f`` is simply not contained. Repeated columns of ``f`` must
    land on distinct columns of ``a``.
    """
    k, m = f.num_rows, a.num_rows
    ell, n = f.num_cols, a.num_cols
    if k > m or ell > n:
        return None
    if ell == 0:
        return ConfigWitness(tuple(range(k)), ())
    if k == 0:
        return ConfigWitness((), tuple(range(ell)))
    if not _weight_prefilter(a, f):
        return None

    a_rows = [np.array([c >> r & 1 for c in a.columns], dtype=np.uint64) for r in range(m)]
    needed = [None] + [_needed_counts(f, d) for d in range(1, k + 1)]
    row_map: list[int] = []
    used = [False] * m

    def extend(pattern: np.ndarray) -> bool:
        depth = len(row_map)
        if depth == k:
            return True
        shift = np.uint64(depth)
        pats, need = needed[depth + 1]
        for r in range(m):
            if used[r]:
                continue
            nxt = pattern | (a_rows[r] << shift)
            if np.all(_pattern_counts(nxt, depth + 1, pats) >= need):
                used[r] = True
                row_map.append(r)
                if extend(nxt):
                    return True
                row_map.pop()
                used[r] = False
        return False

    if not extend(np.zeros(n, dtype=np.uint64)):
        return None

    projected = restrict_to_map(a, row_map)
    pools: dict[int, list[int]] = {}
    for j, p in enumerate(projected):
        pools.setdefault(p, []).append(j)
    for lst in pools.values():
        lst.reverse()
    assignment = tuple(pools[c].pop() for c in f.columns)
    return ConfigWitness(tuple(row_map), assignment)


def restrict_to_map(a: BinaryMatrix, row_map: Sequence[int]) -> list[int]:
    out = []
    for c in a.columns:
        bits = 0
        for i, r in enumerate(row_map):
            bits |= (c >> r & 1) << i
        out.append(bits)
    return out


def is_configuration(f: BinaryMatrix, a: BinaryMatrix) -> bool:
    """``f < a`` as a boolean (note the argument order follows the relation)."""
    return contains_configuration(a, f) is not None


def avoids_family(a: BinaryMatrix, family: Iterable[BinaryMatrix]) -> bool:
    return all(contains_configuration(a, f) is None for f in family)


# pair-of-rows patterns


@dataclass(frozen=True)
class RowPairReport:
    rows: tuple[int, int]
    lacks_00: bool
    lacks_11: bool
    lacks_identity: bool


def row_pair_patterns(f: BinaryMatrix) -> list[RowPairReport]:
    """For each unordered pair of rows, which of ``K_2^0``, ``K_2^2``, ``I_2`` are absent."""
    if f.num_rows < 2:
        raise ValueError("need at least two rows")
    out = []
    for i, j in combinations(range(f.num_rows), 2):
        seen = {(c >> i & 1, c >> j & 1) for c in f.columns}
        out.append(
            RowPairReport(
                rows=(i, j),
                lacks_00=(0, 0) not in seen,
                lacks_11=(1, 1) not in seen,
                lacks_identity=(1, 0) not in seen or (0, 1) not in seen,
            )
        )
    return out


def hypothesis_check(family: Sequence[BinaryMatrix], k: int) -> bool:
    """True when the family meets the three pair conditions of the ``f(m,k)`` upper bound.

    Some member needs a row pair lacking ``[0;0]``, some member a pair lacking
    ``[1;1]`` and some member a pair lacking ``I_2``.
    """
    for f in family:
        if f.num_rows != k:
            raise ValueError(f"member has {f.num_rows} rows, expected {k}")
        if not f.is_simple():
            raise ValueError("member is not simple")
    if k < 2:
        return False
    reports = [r for f in family for r in row_pair_patterns(f)]
    return (
        any(r.lacks_00 for r in reports)
        and any(r.lacks_11 for r in reports)
        and any(r.lacks_identity for r in reports)
    )


# complementary pairs


@dataclass(frozen=True)
class ComplementaryPairReport:
    """Balanced complementary column pairs on ``k`` rows and F's coverage of them.

    Each pair is ``(column, complement)``; for odd ``k`` the first member has
    weight ``ceil(k/2)``.
    """

    k: int
    pairs: tuple[tuple[int, int], ...]
    covered: tuple[tuple[int, int], ...]
    missing: tuple[tuple[int, int], ...]

    def format_pair(self, pair: tuple[int, int]) -> str:
        return f"{column_string(pair[0], self.k)}|{column_string(pair[1], self.k)}"


def balanced_pairs(k: int) -> list[tuple[int, int]]:
    if k < 1:
        raise ValueError("need k >= 1")
    full = (1 << k) - 1
    hi = (k + 1) // 2
    out = []
    for idx in combinations(range(k), hi):
        c = sum(1 << i for i in idx)
        d = c ^ full
        if k % 2 == 0 and column_string(d, k) < column_string(c, k):
            continue
        out.append((c, d))
    expected = comb(k, k // 2) // 2 if k % 2 == 0 else comb(k, hi)
    assert len(out) == expected
    return out


def missing_complementary_pairs(f: BinaryMatrix) -> ComplementaryPairReport:
    k = f.num_rows
    if k < 2:
        raise ValueError("need at least two rows")
    present = set(f.columns)
    pairs = balanced_pairs(k)
    covered = tuple(p for p in pairs if p[0] in present or p[1] in present)
    missing = tuple(p for p in pairs if p[0] not in present and p[1] not in present)
    return ComplementaryPairReport(k, tuple(pairs), covered, missing)


def covers_all_pairs_certificate(f: BinaryMatrix) -> bool:
    """True when F holds a representative of every balanced complementary pair.

    Such an F cannot be a configuration of ``A_k(m, k)`` for any ``m``.
    """
    return not missing_complementary_pairs(f).missing
