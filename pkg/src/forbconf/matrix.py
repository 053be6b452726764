"""Simple (0,1)-matrices stored column-major as integer bitmasks.

Row ``i`` of a column is bit ``i`` of its integer, so row 0 is the top row.
All user-facing text uses 1-based row and column labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

FAST_PATH_ROWS = 64


class MatrixFormatError(ValueError):
    """Raised for malformed ``.bm`` text or inline literals."""


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def column_string(bits: int, num_rows: int) -> str:
    """Render a column top to bottom, e.g. ``column_string(0b001, 3) == "100"``."""
    return "".join("1" if bits >> i & 1 else "0" for i in range(num_rows))


def column_from_string(text: str) -> int:
    bits = 0
    for i, ch in enumerate(text):
        if ch == "1":
            bits |= 1 << i
        elif ch != "0":
            raise MatrixFormatError(f"bad character {ch!r}")
    return bits


def canonical_key(bits: int, num_rows: int) -> tuple[int, str]:
    """Weight-then-lexicographic ordering key used by every generator."""
    return popcount(bits), column_string(bits, num_rows)


@dataclass(frozen=True)
class ColumnVector:
    bits: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits {self.bits} do not fit in {self.length} rows")

    @classmethod
    def from_string(cls, text: str) -> ColumnVector:
        return cls(column_from_string(text), len(text))

    @property
    def weight(self) -> int:
        return popcount(self.bits)

    def __getitem__(self, row: int) -> int:
        if not 0 <= row < self.length:
            raise IndexError(row)
        return self.bits >> row & 1

    def complement(self) -> ColumnVector:
        return ColumnVector(self.bits ^ ((1 << self.length) - 1), self.length)

    def __str__(self) -> str:
        return column_string(self.bits, self.length)


@dataclass(frozen=True)
class BinaryMatrix:
    """An ``num_rows``-rowed (0,1)-matrix; ``columns`` holds one bitmask per column.

    Column order is kept for storage and display but no semantic operation
    depends on it.
    """

    num_rows: int
    columns: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.num_rows < 0:
            raise ValueError("num_rows must be non-negative")
        object.__setattr__(self, "columns", tuple(self.columns))
        limit = 1 << self.num_rows
        for c in self.columns:
            if not 0 <= c < limit:
                raise ValueError(f"column {c} does not fit in {self.num_rows} rows")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], num_cols: int | None = None) -> BinaryMatrix:
        """Build from a list of rows; ``num_cols`` is only needed when there are no rows."""
        if not rows:
            return cls(0, (0,) * (num_cols or 0))
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged rows")
        cols = []
        for j in range(n):
            bits = 0
            for i, row in enumerate(rows):
                if row[j] not in (0, 1):
                    raise ValueError(f"entry {row[j]!r} is not 0 or 1")
                bits |= row[j] << i
            cols.append(bits)
        return cls(len(rows), tuple(cols))

    @classmethod
    def from_column_strings(cls, cols: Iterable[str], num_rows: int) -> BinaryMatrix:
        out = []
        for s in cols:
            if len(s) != num_rows:
                raise ValueError(f"column {s!r} has wrong length")
            out.append(column_from_string(s))
        return cls(num_rows, tuple(out))

    @property
    def num_cols(self) -> int:
        return len(self.columns)

    @property
    def shape(self) -> tuple[int, int]:
        return self.num_rows, len(self.columns)

    def entry(self, row: int, col: int) -> int:
        if not 0 <= row < self.num_rows:
            raise IndexError(row)
        return self.columns[col] >> row & 1

    def column(self, j: int) -> ColumnVector:
        return ColumnVector(self.columns[j], self.num_rows)

    def rows(self) -> list[list[int]]:
        return [[c >> i & 1 for c in self.columns] for i in range(self.num_rows)]

    def column_weights(self) -> list[int]:
        return [popcount(c) for c in self.columns]

    def is_simple(self) -> bool:
        return len(set(self.columns)) == len(self.columns)

    def complement(self) -> BinaryMatrix:
        full = (1 << self.num_rows) - 1
        return BinaryMatrix(self.num_rows, tuple(c ^ full for c in self.columns))

    def restrict_rows(self, rows: Sequence[int]) -> BinaryMatrix:
        return restrict_rows(self, rows)

    def canonical(self) -> BinaryMatrix:
        """Same column multiset, sorted weight-then-lexicographically."""
        m = self.num_rows
        return BinaryMatrix(m, tuple(sorted(self.columns, key=lambda c: canonical_key(c, m))))

    def same_columns(self, other: BinaryMatrix) -> bool:
        return self.num_rows == other.num_rows and sorted(self.columns) == sorted(other.columns)

    def permute_rows(self, perm: Sequence[int]) -> BinaryMatrix:
        """New row ``i`` is old row ``perm[i]``."""
        if sorted(perm) != list(range(self.num_rows)):
            raise ValueError("not a permutation of the rows")
        return restrict_rows(self, perm)

    def permute_columns(self, perm: Sequence[int]) -> BinaryMatrix:
        if sorted(perm) != list(range(self.num_cols)):
            raise ValueError("not a permutation of the columns")
        return BinaryMatrix(self.num_rows, tuple(self.columns[j] for j in perm))

    def with_columns(self, extra: Iterable[int]) -> BinaryMatrix:
        return BinaryMatrix(self.num_rows, self.columns + tuple(extra))

    def __str__(self) -> str:
        return "\n".join("".join(map(str, r)) for r in self.rows())


def is_simple(a: BinaryMatrix) -> bool:
    return a.is_simple()


def complement(a: BinaryMatrix) -> BinaryMatrix:
    return a.complement()


def hstack(*parts: BinaryMatrix) -> BinaryMatrix:
    """Concatenate matrices side by side, ``[A | B | ...]``."""
    if not parts:
        raise ValueError("need at least one matrix")
    m = parts[0].num_rows
    if any(p.num_rows != m for p in parts):
        raise ValueError("row counts differ")
    return BinaryMatrix(m, tuple(c for p in parts for c in p.columns))


def product(a: BinaryMatrix, b: BinaryMatrix) -> BinaryMatrix:
    """Every column of ``a`` stacked on top of every column of ``b``."""
    shift = a.num_rows
    cols = tuple(x | (y << shift) for x in a.columns for y in b.columns)
    return BinaryMatrix(a.num_rows + b.num_rows, cols)


def product_all(*factors: BinaryMatrix) -> BinaryMatrix:
    out = complete(0)
    for f in factors:
        out = product(out, f)
    return out


def restrict_rows(a: BinaryMatrix, rows: Sequence[int]) -> BinaryMatrix:
    """The submatrix on ``rows`` (0-based) in the order given; may repeat columns."""
    rows = list(rows)
    if len(set(rows)) != len(rows):
        raise ValueError("row indices must be distinct")
    for r in rows:
        if not 0 <= r < a.num_rows:
            raise IndexError(f"row {r} out of range for {a.num_rows} rows")
    cols = []
    for c in a.columns:
        bits = 0
        for i, r in enumerate(rows):
            bits |= (c >> r & 1) << i
        cols.append(bits)
    return BinaryMatrix(len(rows), tuple(cols))


def transitions(bits: int, num_rows: int) -> int:
    """Number of adjacent row pairs ``(i, i+1)`` where the column changes value."""
    if num_rows < 1:
        raise ValueError("need at least one row")
    return popcount((bits ^ (bits >> 1)) & ((1 << (num_rows - 1)) - 1))


def count_transitions(c: ColumnVector) -> int:
    return transitions(c.bits, c.length)


# standard matrices


def _canonical_cols(cols: Iterable[int], m: int) -> tuple[int, ...]:
    return tuple(sorted(cols, key=lambda c: canonical_key(c, m)))


def _check_size(k: int) -> None:
    if k < 0:
        raise ValueError(f"size must be non-negative, got {k}")


def identity(k: int) -> BinaryMatrix:
    _check_size(k)
    return BinaryMatrix(k, tuple(1 << i for i in range(k)))


def identity_complement(k: int) -> BinaryMatrix:
    return identity(k).complement()


def triangular(k: int) -> BinaryMatrix:
    """``T_k``: entry ``(i, j)`` is 1 iff ``i <= j``, so column ``j`` is a prefix of length ``j+1``."""
    _check_size(k)
    return BinaryMatrix(k, tuple((1 << (j + 1)) - 1 for j in range(k)))


def complete(k: int) -> BinaryMatrix:
    """``K_k``, all ``2**k`` columns. ``K_0`` has a single empty column."""
    _check_size(k)
    return BinaryMatrix(k, _canonical_cols(range(1 << k), k))


def complete_weight(k: int, s: int) -> BinaryMatrix:
    """``K_k^s``, the columns of column sum ``s``."""
    _check_size(k)
    if not 0 <= s <= k:
        raise ValueError(f"need 0 <= s <= k, got s={s}, k={k}")
    cols = (sum(1 << i for i in idx) for idx in combinations(range(k), s))
    out = BinaryMatrix(k, _canonical_cols(cols, k))
    assert out.num_cols == comb(k, s)
    return out


def ones(k: int) -> BinaryMatrix:
    _check_size(k)
    return BinaryMatrix(k, ((1 << k) - 1,))


def zeros(k: int) -> BinaryMatrix:
    _check_size(k)
    return BinaryMatrix(k, (0,))


def ones_zeros(k: int, ell: int) -> BinaryMatrix:
    """The single column with ``k`` 1s on top of ``ell`` 0s."""
    _check_size(k)
    _check_size(ell)
    return BinaryMatrix(k + ell, ((1 << k) - 1,))


_STANDARD = {
    "I": identity,
    "Ic": identity_complement,
    "T": triangular,
    "Tc": lambda k: triangular(k).complement(),
    "K": complete,
    "Ks": complete_weight,
    "1": ones,
    "0": zeros,
    "10": ones_zeros,
}


def standard(name: str, *params: int) -> BinaryMatrix:
    """Look up a standard matrix by short name: I, Ic, T, Tc, K, Ks, 1, 0, 10."""
    try:
        ctor = _STANDARD[name]
    except KeyError:
        raise ValueError(f"unknown standard matrix {name!r}") from None
    try:
        return ctor(*params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {params}") from exc


# text formats


def serialize(a: BinaryMatrix) -> str:
    lines = [f"{a.num_rows} {a.num_cols}"]
    lines.extend("".join(map(str, r)) for r in a.rows())
    return "\n".join(lines) + "\n"


def parse(text: str) -> BinaryMatrix:
    """Parse the ``.bm`` format: a ``"m n"`` header then ``m`` rows of ``n`` digits."""
    if not text.endswith("\n"):
        raise MatrixFormatError("missing trailing newline")
    lines = text[:-1].split("\n")
    header = lines[0].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise MatrixFormatError(f"malformed header {lines[0]!r}")
    m, n = map(int, header)
    body = lines[1:]
    if len(body) != m:
        raise MatrixFormatError(f"expected {m} rows, found {len(body)}")
    rows = []
    for i, line in enumerate(body, start=1):
        line = line.rstrip("\r")
        if len(line) != n:
            raise MatrixFormatError(f"ragged row {i}: expected {n} entries, found {len(line)}")
        bad = set(line) - {"0", "1"}
        if bad:
            raise MatrixFormatError(f"bad character {sorted(bad)[0]!r} in row {i}")
        rows.append([int(ch) for ch in line])
    return BinaryMatrix.from_rows(rows, num_cols=n)


def parse_literal(text: str) -> BinaryMatrix:
    """Parse an inline literal whose rows are joined by ``/``, e.g. ``"110/101/011"``."""
    rows = text.strip().split("/")
    n = len(rows[0])
    for i, r in enumerate(rows, start=1):
        if len(r) != n:
            raise MatrixFormatError(f"ragged row {i} in literal {text!r}")
        if set(r) - {"0", "1"}:
            raise MatrixFormatError(f"bad character in literal {text!r}")
    return BinaryMatrix.from_rows([[int(ch) for ch in r] for r in rows])


def to_literal(a: BinaryMatrix) -> str:
    return "/".join("".join(map(str, r)) for r in a.rows())
