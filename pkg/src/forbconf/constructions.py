"""Counting functions and matrix families for forbidden-configuration bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable

from .matrix import (
    BinaryMatrix,
    canonical_key,
    complete,
    hstack,
    identity,
    ones,
    product_all,
    standard,
    zeros,
)

# f(m, k)


def _check_fk(m: int, k: int) -> None:
    if m < 2 or k < 2:
        raise ValueError(f"f(m,k) needs m >= 2 and k >= 2, got m={m}, k={k}")


@lru_cache(maxsize=None)
def _f(m: int, k: int) -> int:
    if k == 2:
        return 2
    if m == 2:
        # f(2,k) = 4 for k >= 3 keeps f(m,3) = 2m and agrees with the closed forms.
        return 4
    return _f(m - 1, k) + _f(m - 1, k - 1)


def f(m: int, k: int) -> int:
    """``f(m,k) = f(m-1,k) + f(m-1,k-1)`` with ``f(m,2) = 2``."""
    _check_fk(m, k)
    # fill bottom-up so deep m does not hit the recursion limit
    for mm in range(2, m):
        _f(mm, k)
    return _f(m, k)


def f_closed(m: int, k: int) -> tuple[int, int, int]:
    """Three closed forms of ``f(m,k)``, each of which must equal :func:`f`.

    ``2*sum_{i<=k-2} C(m-1,i)``, ``C(m-1,k-2) + sum_{i<=k-2} C(m,i)`` and the
    alternating ``2C(m,k-2) + 2C(m,k-4) + ...``.
    """
    _check_fk(m, k)
    twice_sum = 2 * sum(comb(m - 1, i) for i in range(k - 1))
    shifted = comb(m - 1, k - 2) + sum(comb(m, i) for i in range(k - 1))
    alternating = 2 * sum(comb(m, j) for j in range(k - 2, -1, -2))
    return twice_sum, shifted, alternating


# A(k): columns with at most k-2 transitions


def A_k(m: int, k: int) -> BinaryMatrix:
    """All ``m``-bit columns with at most ``k-2`` transitions.

    Columns are produced from transition positions rather than by filtering:
    choose ``t <= k-2`` of the ``m-1`` gaps, then one of two starting values.
    """
    _check_fk(m, k)
    cols = []
    full = (1 << m) - 1
    for t in range(min(k - 2, m - 1) + 1):
        for gaps in combinations(range(m - 1), t):
            bits, value, row = 0, 0, 0
            for g in gaps + (m - 1,):
                if value:
                    bits |= ((1 << (g + 1)) - 1) ^ ((1 << row) - 1)
                row, value = g + 1, value ^ 1
            cols.extend((bits, bits ^ full))
    cols.sort(key=lambda c: canonical_key(c, m))
    return BinaryMatrix(m, tuple(cols))


# literal matrices


def _lit(*rows: str) -> BinaryMatrix:
    return BinaryMatrix.from_rows([[int(ch) for ch in r] for r in rows])


_F1_BASE = _lit("1110", "1001", "0100")
_F3_BASE = _lit("00001001", "00010110", "01100111", "10111011")
_F4_BASE = _lit("00110", "00001", "01011")
_F5_BASE = _lit(
    "111000000111111",
    "000111111111111",
    "000000111000111",
    "010010010010010",
    "001001001001001",
)
_I2 = identity(2)
_STAIR = _lit("011", "001")
_PAIR_PLUS = _lit("101", "011")
_SPLIT = _lit("010", "001")

# family i -> (leading factors, height of the leading block)
_BOUNDARY: dict[int, tuple[tuple[BinaryMatrix, ...], int]] = {
    1: ((_F1_BASE,), 3),
    2: ((_I2, _STAIR), 4),
    3: ((_F3_BASE,), 4),
    4: ((_F4_BASE, _PAIR_PLUS), 5),
    5: ((_F5_BASE,), 5),
    6: ((_SPLIT, _PAIR_PLUS, _STAIR), 6),
}


def boundary_min_k(i: int) -> int:
    if i not in _BOUNDARY:
        raise ValueError(f"boundary family index must be 1..6, got {i}")
    return _BOUNDARY[i][1]


def boundary_family(i: int, k: int) -> BinaryMatrix:
    """``F_{i,k}``: the leading block of family ``i`` times ``K_{k-c}``."""
    c = boundary_min_k(i)
    if k < c:
        raise ValueError(f"F_{{{i},k}} needs k >= {c}, got {k}")
    factors, _ = _BOUNDARY[i]
    return product_all(*factors, complete(k - c))


NAMED: dict[str, BinaryMatrix] = {
    "F_1": _F1_BASE,
    "F_3": _lit("11", "10", "01"),
    "F_4": _lit("111", "100", "010"),
    "F_5_3row": _lit("110", "101", "000"),
    "F_5_4row": _lit("110", "101", "011", "000"),
    "F_6_4row": _lit("100", "010", "001", "111"),
    "min5_a": _lit("0000000111", "0000111000", "0111001100", "1011111111", "1101010001"),
    "min5_b": _lit("0000000110", "0000111001", "0111001101", "1011111110", "1101010000"),
    "min5_c": _lit("0000000100", "0000111011", "0111001111", "1011111100", "1101010001"),
    "min5_d": _lit("0000000101", "0000111010", "0111001110", "1011111101", "1101010011"),
    "min6_a": _lit(
        "0000000111", "0000111000", "0111001100", "1011111111", "1110100010", "1101010001"
    ),
    # row 2, column 10 reads 0 in the printed display; with that entry the matrix
    # misses the pair 011010|100101, and setting it to 1 is the only single-entry
    # repair that covers all pairs while staying inside F_{3,6}
    "min6_b": _lit(
        "0000000110", "0000111001", "0111001101", "1011111110", "1110100011", "1101010000"
    ),
    "min6_b_as_printed": _lit(
        "0000000110", "0000111000", "0111001101", "1011111110", "1110100011", "1101010000"
    ),
    "min6_c": _lit(
        "0000000110", "0000111001", "0111001101", "1011111110", "1110100000", "1101010011"
    ),
    "min6_d": _lit(
        "0000000100", "0000111011", "0111001111", "1011111100", "1110100010", "1101010001"
    ),
}

MIN5_TAGS = ("min5_a", "min5_b", "min5_c", "min5_d")
MIN6_TAGS = ("min6_a", "min6_b", "min6_c", "min6_d")

TWO_ROWED_FAMILY: tuple[BinaryMatrix, ...] = (
    _lit("010", "001"),
    _lit("011", "001"),
    _lit("011", "101"),
)


def named(tag: str) -> BinaryMatrix:
    try:
        return NAMED[tag]
    except KeyError:
        raise ValueError(f"unknown named matrix {tag!r}; known: {', '.join(NAMED)}") from None


def identity_times_ones(k: int) -> BinaryMatrix:
    """``I_2 x 1_{k-2}``, the two weight-``k-1`` columns on ``k`` rows."""
    if k < 2:
        raise ValueError("need k >= 2")
    return product_all(_I2, ones(k - 2))


# product and triangular constructions


def block_sizes(m: int, parts: int) -> list[int]:
    """Split ``m`` rows into ``parts`` blocks, the larger blocks first."""
    q, r = divmod(m, parts)
    return [q + 1] * r + [q] * (parts - r)


def product_power_identity(m: int, k: int) -> BinaryMatrix:
    """``I_{b_1} x ... x I_{b_{k-2}}`` with block sizes summing to ``m``."""
    if k < 3 or m < k - 2:
        raise ValueError(f"need m >= k-2 >= 1, got m={m}, k={k}")
    return product_all(*(identity(b) for b in block_sizes(m, k - 2)))


def triangular_pair(m: int) -> BinaryMatrix:
    """``[T_m | T_m^c]``, the ``2m`` columns with at most one transition."""
    if m < 1:
        raise ValueError("need m >= 1")
    t = BinaryMatrix(m, tuple((1 << (j + 1)) - 1 for j in range(m)))
    return hstack(t, t.complement())


def thmF1_extremal(m: int) -> BinaryMatrix:
    """``2m`` columns avoiding ``F_3``: zero, the unit columns, and 1-suffixes of length 2..m.

    The suffixes form a chain and every other column has at most one 1, so no
    two columns share a 1 while being incomparable.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    full = (1 << m) - 1
    suffixes = tuple(full ^ ((1 << j) - 1) for j in range(m - 1))
    return hstack(zeros(m), identity(m), BinaryMatrix(m, suffixes))


# constant weight codes


def gs_code(m: int, w: int) -> BinaryMatrix:
    """Weight-``w`` words with ``sum i*c_i`` in the largest residue class mod ``m``.

    Positions are numbered 1..m. Any two words of the class differ in at
    least 4 places. Ties go to the smallest residue.
    """
    if not 1 <= w <= m:
        raise ValueError(f"need 1 <= w <= m, got m={m}, w={w}")
    classes: list[list[int]] = [[] for _ in range(m)]
    for idx in combinations(range(m), w):
        residue = sum(i + 1 for i in idx) % m
        classes[residue].append(sum(1 << i for i in idx))
    best = max(range(m), key=lambda a: (len(classes[a]), -a))
    cols = sorted(classes[best], key=lambda c: canonical_key(c, m))
    return BinaryMatrix(m, tuple(cols))


def low_weight_columns(m: int, max_weight: int) -> BinaryMatrix:
    cols = [
        sum(1 << i for i in idx)
        for w in range(max_weight + 1)
        for idx in combinations(range(m), w)
    ]
    return BinaryMatrix(m, tuple(cols))


def low_weight_plus_code(m: int, k: int) -> BinaryMatrix:
    """All columns of weight at most ``k-2`` plus ``gs_code(m, k-1)``; avoids ``I_2 x 1_{k-2}``."""
    if not m >= k >= 3:
        raise ValueError(f"need m >= k >= 3, got m={m}, k={k}")
    return hstack(low_weight_columns(m, k - 2), gs_code(m, k - 1))


def code_lower_bound(m: int, k: int) -> float:
    """``C(m,k-1)/m + sum_{i<=k-2} C(m,i)``, the guaranteed size of :func:`low_weight_plus_code`."""
    return comb(m, k - 1) / m + sum(comb(m, i) for i in range(k - 1))


# registry addressable as "name:key=val,..."


@dataclass(frozen=True)
class ConstructionSpec:
    name: str
    params: dict[str, int | str] = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> ConstructionSpec:
        name, _, rest = text.partition(":")
        params: dict[str, int | str] = {}
        for item in filter(None, rest.split(",")):
            key, eq, val = item.partition("=")
            if not eq or not key:
                raise ValueError(f"bad parameter {item!r} in {text!r}")
            params[key.strip()] = int(val) if val.strip().lstrip("-").isdigit() else val.strip()
        if name not in _REGISTRY and name != "f":
            raise ValueError(f"unknown construction {name!r}")
        return cls(name, params)

    def build(self) -> BinaryMatrix:
        if self.name == "f":
            raise ValueError("f is a count, not a matrix; use evaluate()")
        ctor, required, optional = _REGISTRY[self.name]
        missing = [k for k in required if k not in self.params]
        extra = [k for k in self.params if k not in required + optional]
        if missing or extra:
            raise ValueError(f"{self.name} takes parameters {', '.join(required + optional)}")
        return ctor(**self.params)

    def evaluate(self) -> int:
        if self.name == "f":
            return f(int(self.params["m"]), int(self.params["k"]))
        return self.build().num_cols


def _standard(kind: str, k: int, s: int | None = None) -> BinaryMatrix:
    return standard(str(kind), k) if s is None else standard(str(kind), k, s)


_REGISTRY: dict[str, tuple[Callable[..., BinaryMatrix], tuple[str, ...], tuple[str, ...]]] = {
    "A_k": (A_k, ("m", "k"), ()),
    "boundary": (boundary_family, ("i", "k"), ()),
    "named": (named, ("tag",), ()),
    "product_power": (product_power_identity, ("m", "k"), ()),
    "triangular_pair": (triangular_pair, ("m",), ()),
    "thmF1_extremal": (thmF1_extremal, ("m",), ()),
    "gs_code": (gs_code, ("m", "w"), ()),
    "low_weight_plus_code": (low_weight_plus_code, ("m", "k"), ()),
    "standard": (_standard, ("kind", "k"), ("s",)),
}
