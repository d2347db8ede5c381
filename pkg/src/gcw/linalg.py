"""Exact sparse rational matrices, fraction-free rank and kernels."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

# Bareiss divisions are checked for exactness when enabled.
DEBUG_BAREISS = bool(os.environ.get("GCW_DEBUG_BAREISS"))


class DimensionError(ValueError):
    pass


@dataclass
class RationalSparseMatrix:
    """``nrows x ncols`` matrix over Q; ``entries`` holds nonzeros only.

    ``row_keys``/``col_keys`` optionally name the target and source bases.
    """

    nrows: int
    ncols: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    row_keys: list[str] | None = None
    col_keys: list[str] | None = None

    def __post_init__(self):
        clean = {}
        for (r, c), x in self.entries.items():
            if not (0 <= r < self.nrows and 0 <= c < self.ncols):
                raise IndexError(f"entry ({r},{c}) outside {self.nrows}x{self.ncols}")
            x = Fraction(x)
            if x:
                clean[(r, c)] = x
        self.entries = clean

    @classmethod
    def zeros(cls, nrows: int, ncols: int, row_keys=None, col_keys=None) -> RationalSparseMatrix:
        return cls(nrows, ncols, {}, row_keys, col_keys)

    @classmethod
    def identity(cls, n: int) -> RationalSparseMatrix:
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> RationalSparseMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        return cls(nrows, ncols, {(i, j): Fraction(x) for i, row in enumerate(rows) for j, x in enumerate(row) if x})

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def add(self, r: int, c: int, x) -> None:
        """Accumulate ``x`` into entry ``(r, c)``, dropping exact zeros."""
        v = self.entries.get((r, c), Fraction(0)) + x
        if v:
            self.entries[(r, c)] = v
        else:
            self.entries.pop((r, c), None)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    def transpose(self) -> RationalSparseMatrix:
        return RationalSparseMatrix(
            self.ncols, self.nrows, {(c, r): x for (r, c), x in self.entries.items()}, self.col_keys, self.row_keys
        )

    def rows(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.nrows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    def __matmul__(self, other: RationalSparseMatrix) -> RationalSparseMatrix:
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other.rows()
        acc: dict[tuple[int, int], Fraction] = {}
        for (r, k), x in self.entries.items():
            for c, y in orows[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + x * y
        return RationalSparseMatrix(self.nrows, other.ncols, acc, self.row_keys, other.col_keys)

    def __sub__(self, other: RationalSparseMatrix) -> RationalSparseMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        acc = dict(self.entries)
        for k, x in other.entries.items():
            acc[k] = acc.get(k, 0) - x
        return RationalSparseMatrix(self.nrows, self.ncols, acc, self.row_keys, self.col_keys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalSparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def is_zero(self) -> bool:
        return not self.entries

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> RationalSparseMatrix:
        """Entry ``(r, c)`` moves to ``(row_perm[r], col_perm[c])``."""
        return RationalSparseMatrix(
            self.nrows, self.ncols, {(row_perm[r], col_perm[c]): x for (r, c), x in self.entries.items()}
        )

    def select_columns(self, cols: Sequence[int]) -> RationalSparseMatrix:
        where = {c: j for j, c in enumerate(cols)}
        return RationalSparseMatrix(
            self.nrows, len(cols), {(r, where[c]): x for (r, c), x in self.entries.items() if c in where}
        )

    def hstack(self, other: RationalSparseMatrix) -> RationalSparseMatrix:
        if self.nrows != other.nrows:
            raise DimensionError("row count mismatch in hstack")
        acc = dict(self.entries)
        acc.update({(r, c + self.ncols): x for (r, c), x in other.entries.items()})
        return RationalSparseMatrix(self.nrows, self.ncols + other.ncols, acc)


# -- MatrixMarket-style text ---------------------------------------------------


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def write_matrix(M: RationalSparseMatrix, fh: TextIO) -> None:
    fh.write(f"%%matrix rational {M.nrows} {M.ncols} {M.nnz}\n")
    for (r, c) in sorted(M.entries):
        fh.write(f"{r + 1} {c + 1} {format_rational(M.entries[(r, c)])}\n")


def read_matrix(fh: Iterable[str]) -> RationalSparseMatrix:
    lines = iter(fh)
    header = next(lines).split()
    if header[:2] != ["%%matrix", "rational"]:
        raise ValueError(f"bad matrix header: {' '.join(header)}")
    nrows, ncols, nnz = (int(t) for t in header[2:5])
    entries = {}
    for line in lines:
        if not line.strip():
            continue
        r, c, x = line.split()
        entries[(int(r) - 1, int(c) - 1)] = Fraction(x)
    if len(entries) != nnz:
        raise ValueError(f"header declares {nnz} entries, found {len(entries)}")
    return RationalSparseMatrix(nrows, ncols, entries)


# -- elimination ---------------------------------------------------------------


@dataclass(frozen=True)
class EliminationResult:
    rank: int
    kernel_dim: int
    pivot_columns: list[int]


def _integer_rows(M: RationalSparseMatrix) -> list[dict[int, int]]:
    """Rows scaled by the lcm of their denominators (rank-preserving)."""
    out = []
    for row in M.rows():
        if not row:
            out.append({})
            continue
        lcm = 1
        for x in row.values():
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        out.append({c: int(x * lcm) for c, x in row.items()})
    return out


def rank_nullity(M: RationalSparseMatrix) -> EliminationResult:
    """Exact rank by fraction-free (Bareiss) elimination with Markowitz pivoting.

    Pivot choice minimizes ``(row_nnz - 1) * (col_nnz - 1)``, ties broken by
    the smallest ``(row, col)``.  After ``k`` steps every live entry is a
    ``(k+1)``-minor of the integer-scaled input, so each division by the
    previous pivot is exact.
    """
    rows = {i: r for i, r in enumerate(_integer_rows(M)) if r}
    col_count: dict[int, int] = {}
    for r in rows.values():
        for c in r:
            col_count[c] = col_count.get(c, 0) + 1
    prev = 1
    pivots = []
    while rows:
        best = None
        for i in sorted(rows):
            r = rows[i]
            rn = len(r) - 1
            for c in r:
                cost = (rn * (col_count[c] - 1), i, c)
                if best is None or cost < best:
                    best = cost
        _, pi, pc = best
        prow = rows.pop(pi)
        pval = prow[pc]
        pivots.append(pc)
        for c in prow:
            col_count[c] -= 1
        new_rows = {}
        for i, r in rows.items():
            a = r.get(pc, 0)
            for c in r:
                col_count[c] -= 1
            nr = {}
            if a:
                keys = set(r) | set(prow)
                for c in keys:
                    v = pval * r.get(c, 0) - a * prow.get(c, 0)
                    if v:
                        nr[c] = _exact_div(v, prev)
            else:
                for c, x in r.items():
                    nr[c] = _exact_div(pval * x, prev)
            nr.pop(pc, None)
            if nr:
                new_rows[i] = nr
                for c in nr:
                    col_count[c] = col_count.get(c, 0) + 1
        rows = new_rows
        prev = pval
    rank = len(pivots)
    return EliminationResult(rank, M.ncols - rank, sorted(pivots))


def _exact_div(v: int, d: int) -> int:
    if DEBUG_BAREISS:
        q, rem = divmod(v, d)
        assert rem == 0, "Bareiss division not exact"
        return q
    return v // d


def rank(M: RationalSparseMatrix) -> int:
    return rank_nullity(M).rank


def image_in_kernel(A_in: RationalSparseMatrix, A_out: RationalSparseMatrix) -> bool:
    """True iff ``A_out @ A_in`` is exactly zero."""
    if A_out.ncols != A_in.nrows:
        raise DimensionError(f"cannot compose {A_out.shape} after {A_in.shape}")
    return (A_out @ A_in).is_zero()


def kernel_basis(M: RationalSparseMatrix) -> RationalSparseMatrix:
    """Columns spanning ker(M), from a reduced row echelon form over Q."""
    rows = [dict(r) for r in M.rows() if r]
    pivot_of_row: list[int] = []
    reduced: list[dict[int, Fraction]] = []
    for r in rows:
        for pr, pc in zip(reduced, pivot_of_row):
            a = r.get(pc)
            if a:
                for c, x in pr.items():
                    v = r.get(c, 0) - a * x
                    if v:
                        r[c] = v
                    else:
                        r.pop(c, None)
        if not r:
            continue
        pc = min(r)
        inv = 1 / r[pc]
        r = {c: x * inv for c, x in r.items()}
        for k, pr in enumerate(reduced):
            a = pr.get(pc)
            if a:
                for c, x in r.items():
                    v = pr.get(c, 0) - a * x
                    if v:
                        pr[c] = v
                    else:
                        pr.pop(c, None)
        reduced.append(r)
        pivot_of_row.append(pc)
    pivset = set(pivot_of_row)
    free = [c for c in range(M.ncols) if c not in pivset]
    entries = {}
    for j, f in enumerate(free):
        entries[(f, j)] = Fraction(1)
        for pr, pc in zip(reduced, pivot_of_row):
            x = pr.get(f)
            if x:
                entries[(pc, j)] = -x
    return RationalSparseMatrix(M.ncols, len(free), entries)
