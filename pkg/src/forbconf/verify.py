"""Named verification suites replaying the exact claims at desk scale.

Each suite returns a :class:`VerificationReport`; every claim carries the
statement it checks and the values it measured.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .constructions import (
    A_k,
    MIN5_TAGS,
    MIN6_TAGS,
    TWO_ROWED_FAMILY,
    boundary_family,
    boundary_min_k,
    code_lower_bound,
    f,
    f_closed,
    gs_code,
    identity_times_ones,
    low_weight_plus_code,
    named,
    thmF1_extremal,
    triangular_pair,
)
from .containment import (
    balanced_pairs,
    contains_configuration,
    covers_all_pairs_certificate,
    hypothesis_check,
    is_configuration,
    missing_complementary_pairs,
)
from .matrix import BinaryMatrix, complement, complete, popcount, restrict_rows
from .solver import bounds_report, is_in_avoid, max_avoid_exact, verify_maximal


@dataclass
class Claim:
    claim_id: str
    anchor: str
    passed: bool
    measured: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    suite: str
    claims: list[Claim] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def check(self, claim_id: str, anchor: str, passed: bool, **measured) -> None:
        self.claims.append(Claim(claim_id, anchor, bool(passed), measured))

    def render(self) -> str:
        lines = [f"suite {self.suite}"]
        for c in self.claims:
            vals = " ".join(f"{k}={v}" for k, v in c.measured.items())
            lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.claim_id}: {c.anchor}  {vals}".rstrip())
        lines.append(f"overall {'PASS' if self.passed else 'FAIL'} ({sum(c.passed for c in self.claims)}/{len(self.claims)})")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "claims": [
                {"id": c.claim_id, "anchor": c.anchor, "passed": c.passed, "measured": c.measured}
                for c in self.claims
            ],
        }


def missing_balanced_columns(a: BinaryMatrix, rows: tuple[int, ...]) -> set[int]:
    """Balanced ``len(rows)``-bit columns absent from ``a`` restricted to ``rows``."""
    k = len(rows)
    present = set(restrict_rows(a, rows).columns)
    return {c for pair in balanced_pairs(k) for c in pair if c not in present}


def suite_lemma_ak() -> VerificationReport:
    rep = VerificationReport("lemma-ak")
    bad = [(m, k) for k in range(2, 9) for m in range(max(2, k), 31) if len(set(f_closed(m, k)) | {f(m, k)}) != 1]
    rep.check("f-closed-forms", "f(m,k) = 2 sum_{i<=k-2} C(m-1,i) = C(m-1,k-2) + sum_{i<=k-2} C(m,i)", not bad, mismatches=len(bad))
    grid = [(m, k) for k in (3, 4, 5, 6) for m in range(k, 13)]
    wrong = [(m, k) for m, k in grid if A_k(m, k).num_cols != f(m, k)]
    rep.check("ak-count", "|A(k)| = f(m,k)", not wrong, cases=len(grid), mismatches=len(wrong))
    closed = all(A_k(m, k).same_columns(complement(A_k(m, k))) for m, k in grid[:12])
    rep.check("ak-complement-closed", "A(k) is closed under complement", closed)
    fails = 0
    checked = 0
    for k in (3, 4, 5):
        for m in range(k, 8):
            a = A_k(m, k)
            for rows in combinations(range(m), k):
                miss = missing_balanced_columns(a, rows)
                checked += 1
                full = (1 << k) - 1
                one_pair = len(miss) == 2 and len({c ^ full for c in miss} & miss) == 2
                if not one_pair:
                    fails += 1
    rep.check("ak-missing-pair", "each k-set of rows of A(k) misses exactly one complementary pair", fails == 0, subsets=checked, failures=fails)
    return rep


def suite_thm_f1() -> VerificationReport:
    rep = VerificationReport("thm-f1")
    F3, F4, F5 = named("F_3"), named("F_4"), named("F_5_3row")
    F13 = boundary_family(1, 3)
    rep.check("chain-F3", "F_3 < F_4 < F_{1,3}", is_configuration(F3, F4) and is_configuration(F4, F13))
    rep.check("chain-F3c", "F_3^c < F_5 < F_{1,3}", is_configuration(complement(F3), F5) and is_configuration(F5, F13))
    for m in (3, 4, 5):
        r = max_avoid_exact(m, [F3])
        rc = max_avoid_exact(m, [complement(F3)])
        rep.check(f"forb-F3-m{m}", "forb(m,F_3) = forb(m,F_3^c) = 2m", r.exact and rc.exact and r.value == rc.value == 2 * m, value=r.value, complement_value=rc.value)
    r = max_avoid_exact(4, [F13])
    rep.check("forb-F13-m4", "forb(m,F_{1,3}) = 2m", r.exact and r.value == 8, value=r.value)
    ok = all(
        is_in_avoid(thmF1_extremal(m), [F3]) and thmF1_extremal(m).num_cols == 2 * m
        and is_in_avoid(triangular_pair(m), [F13]) and triangular_pair(m).num_cols == 2 * m
        for m in range(2, 9)
    )
    rep.check("constructions-2m", "[0 | I_m | suffixes] avoids F_3 and [T_m T_m^c] avoids F_{1,3}, both with 2m columns", ok)
    ok = all(contains_configuration(A_k(m, 3), F4) is None for m in range(3, 9))
    rep.check("A3-avoids-F4", "F_4 not< A(3)", ok and covers_all_pairs_certificate(F4))
    # F_3 has two columns, so it cannot represent all three balanced pairs; 110 and 011 both lie in A(3)
    w = contains_configuration(A_k(3, 3), F3)
    rep.check("A3-contains-F3", "F_3 < A(3): F_3 represents only 2 of the 3 balanced pairs",
              w is not None and len(missing_complementary_pairs(F3).missing) == 1,
              rows=[r + 1 for r in w.row_map] if w else None)
    rep.check("A3-maximal", "A(3) is column-maximal in Avoid(m,F_{1,3})", all(verify_maximal(A_k(m, 3), [F13]) for m in range(3, 6)))
    return rep


def suite_main_thm() -> VerificationReport:
    rep = VerificationReport("main-thm")
    targets = {"F_{1,4}": (boundary_family(1, 4), 4), "F_{3,4}": (boundary_family(3, 4), 4),
               "F_{3,5}": (boundary_family(3, 5), 5), "F_{3,6}": (boundary_family(3, 6), 6)}
    for label, (F, k) in targets.items():
        rep.check(f"hypothesis-{label}", f"forb(m,{label}) <= f(m,{k})", hypothesis_check([F], k))
    certs = {"F_5": named("F_5_4row"), "F_6": named("F_6_4row"), "F_{3,5}": targets["F_{3,5}"][0], "F_{3,6}": targets["F_{3,6}"][0]}
    for label, F in certs.items():
        k = F.num_rows
        direct = all(contains_configuration(A_k(m, k), F) is None for m in range(k, 9))
        rep.check(f"certificate-{label}", f"{label} covers every balanced pair, so {label} not< A({k})", covers_all_pairs_certificate(F) and direct)
    for small in ("F_5_4row", "F_6_4row"):
        ok = all(is_configuration(named(small), targets[t][0]) for t in ("F_{1,4}", "F_{3,4}"))
        rep.check(f"sub-{small}", f"{small} < F_{{1,4}} and {small} < F_{{3,4}}", ok)
    for label, (F, k) in targets.items():
        ms = range(2, 13)
        ok = all(bounds_report(m, [F]).exact == f(m, k) for m in ms)
        rep.check(f"exact-{label}", f"forb(m,{label}) = f(m,{k}) for m <= 12", ok)
    for label in ("F_{1,4}", "F_{3,4}"):
        r = max_avoid_exact(4, [targets[label][0]])
        rep.check(f"exhaustive-{label}", f"forb(4,{label}) = f(4,4) = 14", r.exact and r.value == 14, value=r.value, nodes=r.stats.nodes)
    return rep


def suite_code_construction() -> VerificationReport:
    rep = VerificationReport("code-construction")
    for m, k in ((8, 4), (10, 4), (9, 5), (12, 5)):
        a = low_weight_plus_code(m, k)
        lb = code_lower_bound(m, k)
        ok = a.is_simple() and contains_configuration(a, identity_times_ones(k)) is None and a.num_cols >= lb
        rep.check(f"code-m{m}-k{k}", "|A| >= C(m,k-1)/m + sum_{i<=k-2} C(m,i) and A avoids I_2 x 1_{k-2}", ok, columns=a.num_cols, bound=round(lb, 3))
        code = gs_code(m, k - 1).columns
        dist = min((popcount(x ^ y) for x, y in combinations(code, 2)), default=None)
        rep.check(f"distance-m{m}-w{k - 1}", "constant weight code has minimum distance >= 4", dist is None or dist >= 4, min_distance=dist, size=len(code))
    return rep


def suite_f38_gap() -> VerificationReport:
    rep = VerificationReport("f38-gap")
    F38 = boundary_family(3, 8)
    r = missing_complementary_pairs(F38)
    rep.check("f38-pairs", "F_{3,8} represents 34 of the 35 balanced pairs", len(r.pairs) == 35 and len(r.covered) == 34,
              covered=len(r.covered), total=len(r.pairs), missing=",".join(r.format_pair(p) for p in r.missing))
    b = bounds_report(8, [F38])
    rep.check("f38-bounds", "no exact value is claimed for F_{3,8}", b.exact is None and b.upper.value == f(8, 8),
              lower=b.lower.value, lower_from=b.lower.provenance, upper=b.upper.value)
    return rep


def suite_hypothesis() -> VerificationReport:
    rep = VerificationReport("hypothesis")
    for i in range(1, 7):
        k0 = boundary_min_k(i)
        for k in (k0, k0 + 1):
            F = boundary_family(i, k)
            ok = F.is_simple() and is_configuration(identity_times_ones(k), F) and hypothesis_check([F], k)
            rep.check(f"F{i}-k{k}", f"I_2 x 1_{{k-2}} < F_{{{i},{k}}} and the pair hypothesis holds", ok, shape=f"{F.num_rows}x{F.num_cols}")
    rep.check("K-fails", "K_k fails the pair hypothesis", not any(hypothesis_check([complete(k)], k) for k in range(2, 7)))
    two = hypothesis_check(list(TWO_ROWED_FAMILY), 2)
    r = max_avoid_exact(4, list(TWO_ROWED_FAMILY))
    rep.check("two-rowed", "the three 2-rowed matrices give forb(m,F) = 2", two and r.exact and r.value == 2, value=r.value)
    return rep


def suite_minimal_matrices() -> VerificationReport:
    rep = VerificationReport("minimal-matrices")
    for tags, host_k in ((MIN5_TAGS, 5), (MIN6_TAGS, 6)):
        host = boundary_family(3, host_k)
        for tag in tags:
            F = named(tag)
            direct = all(contains_configuration(A_k(m, host_k), F) is None for m in range(host_k, 9))
            exact = all(bounds_report(m, [F]).exact == f(m, host_k) for m in range(2, 11))
            ok = is_configuration(F, host) and covers_all_pairs_certificate(F) and direct and exact
            rep.check(tag, f"{tag} < F_{{3,{host_k}}}, covers all 10 pairs, forb = f(m,{host_k})", ok)
    printed = missing_complementary_pairs(named("min6_b_as_printed"))
    rep.check("min6_b-printed", "printed min6_b lacks one pair; the repaired entry (row 2, column 10) restores it",
              len(printed.missing) == 1, missing=",".join(printed.format_pair(p) for p in printed.missing))
    return rep


SUITES: dict[str, Callable[[], VerificationReport]] = {
    "lemma-ak": suite_lemma_ak,
    "thm-f1": suite_thm_f1,
    "main-thm": suite_main_thm,
    "code-construction": suite_code_construction,
    "f38-gap": suite_f38_gap,
    "hypothesis": suite_hypothesis,
    "minimal-matrices": suite_minimal_matrices,
}


def run_suite(name: str) -> VerificationReport:
    try:
        return SUITES[name]()
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
