"""Exact ``forb(m, family)`` by branch and bound, and lower/upper bound reports.

The search chooses columns of the ``2**m`` universe in weight-then-lex order,
so every candidate set is visited once as a sorted set. Avoidance is kept
incrementally by :class:`ConflictTracker`: for every family member and every
injective row map it counts how many chosen columns show each needed pattern,
so adding a column only has to look at embeddings that use that column.
"""

from __future__ import annotations

import hashlib
import logging
import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

import numpy as np

from .constructions import (
    A_k,
    f,
    identity_times_ones,
    low_weight_plus_code,
    product_power_identity,
)
from .containment import (
    avoids_family,
    contains_configuration,
    covers_all_pairs_certificate,
    hypothesis_check,
)
from .matrix import BinaryMatrix, canonical_key, serialize

log = logging.getLogger(__name__)

EXACT = "exact"
LOWER_ONLY = "lower-bound-only"


@dataclass(frozen=True)
class Budget:
    nodes: int | None = None
    seconds: float | None = None

    def __post_init__(self) -> None:
        if self.nodes is not None and self.nodes <= 0:
            raise ValueError("node budget must be positive")
        if self.seconds is not None and self.seconds <= 0:
            raise ValueError("time budget must be positive")

    @classmethod
    def parse(cls, text: str) -> Budget:
        """Parse ``"nodes=100000,seconds=30"``; either key may be omitted."""
        kwargs: dict[str, float] = {}
        for item in filter(None, text.split(",")):
            key, eq, val = item.partition("=")
            key = key.strip()
            if not eq or key not in ("nodes", "seconds"):
                raise ValueError(f"bad budget item {item!r}")
            try:
                kwargs[key] = int(val) if key == "nodes" else float(val)
            except ValueError:
                raise ValueError(f"bad budget value {val!r}") from None
        return cls(**kwargs)


@dataclass
class SearchStats:
    nodes: int = 0
    containment_calls: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class SearchResult:
    """Outcome of :func:`max_avoid_exact`.

    ``status`` is ``"exact"`` when the tree was exhausted (or the incumbent met
    a sound cap) and ``"lower-bound-only"`` when the budget ran out.
    """

    value: int
    witness: BinaryMatrix
    status: str
    stats: SearchStats = field(compare=False)
    capped: bool = False

    @property
    def exact(self) -> bool:
        return self.status == EXACT


class ConflictTracker:
    """Incremental test of whether a growing column set contains a family member."""

    def __init__(self, m: int, family: Sequence[BinaryMatrix]):
        self.m = m
        universe = np.arange(1 << m, dtype=np.int64)
        slot_blocks, need_blocks, deficit_blocks = [], [], []
        base = 0
        for member in family:
            k, ell = member.num_rows, member.num_cols
            if ell == 0:
                raise ValueError("a member with no columns is contained in every matrix")
            if k > m or ell > (1 << m):
                continue
            counts = Counter(member.columns)
            need = np.zeros(1 << k, dtype=np.int32)
            for p, cnt in counts.items():
                need[p] = cnt
            maps = list(permutations(range(m), k))
            proj = np.zeros((len(maps), len(universe)), dtype=np.int64)
            for r, row_map in enumerate(maps):
                for i, row in enumerate(row_map):
                    proj[r] |= ((universe >> row) & 1) << i
            offsets = base + (np.arange(len(maps), dtype=np.int64) << k)
            slot_blocks.append(proj + offsets[:, None])
            need_blocks.append(np.tile(need, len(maps)))
            deficit_blocks.append(np.full(len(maps), len(counts), dtype=np.int32))
            base += len(maps) << k
        if slot_blocks:
            self.slot_of = np.vstack(slot_blocks)
            self.need = np.concatenate(need_blocks)
            self.deficit = np.concatenate(deficit_blocks)
        else:
            self.slot_of = np.zeros((0, 1 << m), dtype=np.int64)
            self.need = np.zeros(0, dtype=np.int32)
            self.deficit = np.zeros(0, dtype=np.int32)
        self.counts = np.zeros_like(self.need)

    def add(self, c: int) -> None:
        s = self.slot_of[:, c]
        self.counts[s] += 1
        self.deficit -= (self.counts[s] == self.need[s]).astype(np.int32)

    def remove(self, c: int) -> None:
        s = self.slot_of[:, c]
        self.deficit += (self.counts[s] == self.need[s]).astype(np.int32)
        self.counts[s] -= 1

    def violated(self) -> bool:
        return bool(np.any(self.deficit == 0))

    def admissible(self, cands: np.ndarray) -> np.ndarray:
        """Mask of candidates whose addition would keep the set family-free."""
        if len(self.deficit) == 0:
            return np.ones(len(cands), dtype=bool)
        s = self.slot_of[:, cands]
        completes = (self.counts[s] + 1 == self.need[s]) & (self.deficit[:, None] == 1)
        return ~completes.any(axis=0)


def universe_order(m: int) -> np.ndarray:
    return np.array(sorted(range(1 << m), key=lambda c: canonical_key(c, m)), dtype=np.int64)


class _Search:
    def __init__(self, m, family, cap, budget, deadline, incumbent=0, incumbent_cols=()):
        self.tracker = ConflictTracker(m, family)
        self.cap = cap
        self.node_limit = budget.nodes if budget else None
        self.deadline = deadline
        self.best = incumbent
        self.best_cols = list(incumbent_cols)
        self.chosen: list[int] = []
        self.stats = SearchStats()
        self.aborted = False

    def filter(self, cands: np.ndarray) -> np.ndarray:
        if len(cands) == 0:
            return cands
        self.stats.containment_calls += len(cands)
        return cands[self.tracker.admissible(cands)]

    def greedy(self, cands: np.ndarray) -> None:
        for c in cands:
            if self.tracker.admissible(np.array([c]))[0]:
                self.tracker.add(int(c))
                self.chosen.append(int(c))
        if len(self.chosen) > self.best:
            self.best, self.best_cols = len(self.chosen), list(self.chosen)
        for c in reversed(self.chosen):
            self.tracker.remove(c)
        self.chosen.clear()

    def push(self, c: int) -> None:
        self.tracker.add(c)
        self.chosen.append(c)

    def pop(self) -> None:
        self.tracker.remove(self.chosen.pop())

    def done(self) -> bool:
        return self.aborted or self.best >= self.cap

    def dfs(self, cands: np.ndarray) -> None:
        self.stats.nodes += 1
        if self.node_limit is not None and self.stats.nodes > self.node_limit:
            self.aborted = True
        elif self.deadline is not None and self.stats.nodes % 256 == 0 and time.monotonic() > self.deadline:
            self.aborted = True
        if self.aborted:
            return
        depth = len(self.chosen)
        if depth > self.best:
            self.best, self.best_cols = depth, list(self.chosen)
        n = len(cands)
        for i in range(n):
            if self.done() or depth + n - i <= self.best:
                return
            c = int(cands[i])
            self.push(c)
            self.dfs(self.filter(cands[i + 1 :]))
            self.pop()


def _theorem_cap(m: int, family: Sequence[BinaryMatrix]) -> int | None:
    heights = {F.num_rows for F in family}
    if len(heights) != 1 or not all(F.is_simple() for F in family):
        return None
    (k,) = heights
    if k < 2 or m < 2 or not hypothesis_check(family, k):
        return None
    return f(m, k)


def _run_branch(args) -> tuple[int, list[int], SearchStats, bool]:
    m, fam_cols, index, incumbent, node_share, deadline, cap = args
    family = [BinaryMatrix(k, cols) for k, cols in fam_cols]
    budget = Budget(nodes=node_share) if node_share else None
    s = _Search(m, family, cap, budget, deadline, incumbent)
    root = s.filter(universe_order(m))
    c = int(root[index])
    s.push(c)
    s.dfs(s.filter(root[index + 1 :]))
    return s.best, s.best_cols, s.stats, s.aborted


def max_avoid_exact(
    m: int,
    family: Sequence[BinaryMatrix],
    budget: Budget | None = None,
    threads: int = 1,
    theorem_cap: bool = False,
) -> SearchResult:
    """Largest simple ``m``-rowed matrix avoiding every member of ``family``.

    ``theorem_cap`` stops the search once the incumbent reaches ``f(m,k)``
    when the family satisfies the pair hypothesis of that bound. ``threads``
    above 1 farms the first-level branches out to worker processes; the
    value is the same for any schedule and ties in the witness are broken
    towards the lexicographically smallest column list.
    """
    if m < 0 or m > 64:
        raise ValueError("m must be in 0..64")
    start = time.monotonic()
    deadline = start + budget.seconds if budget and budget.seconds else None
    cap = 1 << m
    capped_by_theorem = False
    if theorem_cap:
        t = _theorem_cap(m, family)
        if t is not None and t < cap:
            cap, capped_by_theorem = t, True

    seq = _Search(m, family, cap, budget, deadline)
    root = seq.filter(universe_order(m))
    seq.greedy(root)

    if threads <= 1 or len(root) < 2 or seq.done():
        seq.dfs(root)
        best, best_cols, stats, aborted = seq.best, seq.best_cols, seq.stats, seq.aborted
    else:
        greedy_best, greedy_cols = seq.best, seq.best_cols
        branches = [i for i in range(len(root)) if len(root) - i > greedy_best]
        share = None
        if budget and budget.nodes:
            share = max(1, math.ceil(budget.nodes / max(1, len(branches))))
        fam_cols = [(F.num_rows, F.columns) for F in family]
        jobs = [(m, fam_cols, i, greedy_best, share, deadline, cap) for i in branches]
        stats = SearchStats(nodes=seq.stats.nodes, containment_calls=seq.stats.containment_calls)
        best, best_cols, aborted = greedy_best, greedy_cols, False
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for b_best, b_cols, b_stats, b_abort in pool.map(_run_branch, jobs):
                stats.nodes += b_stats.nodes
                stats.containment_calls += b_stats.containment_calls
                aborted = aborted or b_abort
                if b_best > best or (b_best == best and b_best > greedy_best and sorted(b_cols) < sorted(best_cols)):
                    best, best_cols = b_best, b_cols
        if best >= cap:
            aborted = False

    stats.wall_time = time.monotonic() - start
    witness = BinaryMatrix(m, tuple(best_cols)).canonical()
    status = LOWER_ONLY if aborted and best < cap else EXACT
    log.debug("forb search m=%d value=%d status=%s nodes=%d", m, best, status, stats.nodes)
    return SearchResult(best, witness, status, stats, capped=capped_by_theorem and best >= cap)


def is_in_avoid(a: BinaryMatrix, family: Sequence[BinaryMatrix]) -> bool:
    return a.is_simple() and avoids_family(a, family)


def verify_maximal(a: BinaryMatrix, family: Sequence[BinaryMatrix]) -> bool:
    """True when no column of the universe can be appended to ``a`` without leaving Avoid."""
    if not is_in_avoid(a, family):
        raise ValueError("matrix is not in Avoid(m, family)")
    present = set(a.columns)
    for c in range(1 << a.num_rows):
        if c in present:
            continue
        grown = a.with_columns((c,))
        if all(contains_configuration(grown, F) is None for F in family):
            return False
    return True


# bound reports


@dataclass(frozen=True)
class Bound:
    value: int
    provenance: str


@dataclass(frozen=True)
class BoundReport:
    m: int
    family_id: str
    lower: Bound
    upper: Bound
    exact: int | None = None

    def __post_init__(self) -> None:
        if self.lower.value > self.upper.value:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")


def family_id(family: Sequence[BinaryMatrix]) -> str:
    digest = hashlib.sha1("".join(sorted(serialize(F.canonical()) for F in family)).encode())
    shapes = "+".join(f"{F.num_rows}x{F.num_cols}" for F in family)
    return f"{shapes}#{digest.hexdigest()[:8]}"


def bounds_report(
    m: int,
    family: Sequence[BinaryMatrix],
    extra: Sequence[tuple[str, BinaryMatrix]] = (),
    search: SearchResult | None = None,
    name: str | None = None,
) -> BoundReport:
    """Sandwich ``forb(m, family)`` between constructions and the ``f(m,k)`` bound.

    Lower-bound candidates: ``A_k`` when every member covers all balanced
    complementary pairs, the low-weight-plus-code matrix when every member
    contains ``I_2 x 1_{k-2}``, the product of identities when the checker
    confirms it avoids the family, and any matrices in ``extra``. An exact
    ``search`` result, if given, closes the interval.
    """
    if not family:
        raise ValueError("empty family")
    heights = {F.num_rows for F in family}
    if len(heights) != 1:
        raise ValueError(f"family members have mixed heights {sorted(heights)}")
    (k,) = heights
    fid = name or family_id(family)
    total = 1 << m

    if k > m:
        b = Bound(total, "K_m:taller-family")
        return BoundReport(m, fid, b, Bound(total, "trivial:2^m"), total)

    lower = Bound(0, "empty")

    def offer(label: str, a: BinaryMatrix) -> None:
        nonlocal lower
        if a.num_cols > lower.value:
            lower = Bound(a.num_cols, label)

    if m >= 2 and k >= 2 and all(covers_all_pairs_certificate(F) for F in family):
        offer(f"A_k(m={m},k={k})", A_k(m, k))
    if m >= k >= 3:
        probe = identity_times_ones(k)
        if all(contains_configuration(F, probe) is not None for F in family):
            offer(f"low_weight_plus_code(m={m},k={k})", low_weight_plus_code(m, k))
    if k >= 3 and m >= k - 2:
        pp = product_power_identity(m, k)
        if pp.num_cols > lower.value and is_in_avoid(pp, family):
            offer(f"product_power(m={m},k={k})", pp)
    for label, a in extra:
        if a.num_rows != m:
            raise ValueError(f"extra construction {label} has {a.num_rows} rows, expected {m}")
        if a.num_cols > lower.value and is_in_avoid(a, family):
            offer(f"user:{label}", a)

    upper = Bound(total, "trivial:2^m")
    if m >= 2 and k >= 2 and all(F.is_simple() for F in family) and hypothesis_check(family, k):
        fk = f(m, k)
        if fk < total:
            upper = Bound(fk, f"pair-hypothesis:f({m},{k})")

    if search is not None and search.exact:
        if not lower.value <= search.value <= upper.value:
            raise ValueError(f"exhaustive value {search.value} outside [{lower.value}, {upper.value}]")
        lower = Bound(search.value, "exhaustive")
        upper = Bound(search.value, "exhaustive")

    exact = lower.value if lower.value == upper.value else None
    return BoundReport(m, fid, lower, upper, exact)


def default_threads() -> int:
    return os.cpu_count() or 1
