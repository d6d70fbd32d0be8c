"""Finitely generated (graded) abelian groups over exact integers.

Matrices are sparse ``IntegerMatrix`` objects. ``smith_normal_form`` returns
the full transformation triple; the homology routines only need invariant
factors and use a sparse elimination that clears unit pivots first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping


class ComplexError(ValueError):
    """Two maps that should compose to zero do not."""


class IntegerMatrix:
    """Sparse integer matrix; ``entries`` maps (row, col) to a nonzero int."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], int] | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        self.entries: dict[tuple[int, int], int] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            if v:
                self.entries[(i, j)] = int(v)

    @classmethod
    def from_rows(cls, rows: list[list[int]], cols: int | None = None) -> "IntegerMatrix":
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        return cls(len(rows), ncols,
                   {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v})

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def diagonal(cls, values: list[int], rows: int | None = None, cols: int | None = None):
        r = len(values) if rows is None else rows
        c = len(values) if cols is None else cols
        return cls(r, c, {(i, i): v for i, v in enumerate(values)})

    def to_rows(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.rows}x{self.cols}, {self.to_rows() if self.rows * self.cols <= 64 else '...'})"

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return IntegerMatrix(self.rows, other.cols, {k: v for k, v in out.items() if v})

    def column_block(self, other: "IntegerMatrix") -> "IntegerMatrix":
        """[self | other]"""
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        entries = dict(self.entries)
        entries.update({(i, j + self.cols): v for (i, j), v in other.entries.items()})
        return IntegerMatrix(self.rows, self.cols + other.cols, entries)


def determinant(M: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    a = M.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def smith_normal_form(M: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return (U, D, V) with U*M*V = D, U and V unimodular, D in Smith form.

    Pivots on the smallest nonzero absolute value in the remaining block.
    """
    m, n = M.rows, M.cols
    a = M.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        if c:
            ra, rd = a[src], a[dst]
            for k in range(n):
                rd[k] += c * ra[k]
            us, ud = U[src], U[dst]
            for k in range(m):
                ud[k] += c * us[k]

    def add_col(src, dst, c):  # col dst += c * col src
        if c:
            for row in a:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot exists in row or column t
                cands = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cands)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            U[t] = [-v for v in U[t]]
    return (IntegerMatrix.from_rows(U, m), IntegerMatrix.from_rows(a, n),
            IntegerMatrix.from_rows(V, n))


def is_smith_form(D: IntegerMatrix) -> bool:
    diag = []
    for (i, j), v in D.entries.items():
        if i != j or v < 0:
            return False
    for k in range(min(D.rows, D.cols)):
        diag.append(D[k, k])
    seen_zero = False
    for k, v in enumerate(diag):
        if v == 0:
            seen_zero = True
        elif seen_zero:
            return False
        elif k and v % diag[k - 1]:
            return False
    return True


def _dense_invariants(rows: list[dict[int, int]]) -> list[int]:
    """Nonzero Smith diagonal of a small matrix given as sparse rows."""
    cols = sorted({j for r in rows for j in r})
    if not cols:
        return []
    index = {j: k for k, j in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rows]
    for i, r in enumerate(rows):
        for j, v in r.items():
            dense[i][index[j]] = v
    _, D, _ = smith_normal_form(IntegerMatrix.from_rows(dense, len(cols)))
    return [D[k, k] for k in range(min(D.rows, D.cols)) if D[k, k]]


def invariant_factors(M: IntegerMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form of M, ascending (divisibility chain).

    Unit pivots are eliminated sparsely first; each contributes a factor 1 and
    the Smith form of the reduced matrix supplies the rest.
    """
    rows: dict[int, dict[int, int]] = {}
    for (i, j), v in M.entries.items():
        rows.setdefault(i, {})[j] = v
    col_index: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            col_index.setdefault(j, set()).add(i)
    units = 0
    while True:
        pivot = None
        for i in sorted(rows, key=lambda i: len(rows[i])):
            r = rows[i]
            j = next((j for j, v in r.items() if v in (1, -1)), None)
            if j is not None:
                # prefer the sparsest column among this row's unit entries
                j = min((j for j, v in r.items() if v in (1, -1)), key=lambda j: len(col_index[j]))
                pivot = (i, j)
                break
        if pivot is None:
            break
        i, j = pivot
        prow = rows.pop(i)
        p = prow[j]
        for jj in prow:
            col_index[jj].discard(i)
        for k in list(col_index.get(j, ())):
            r = rows[k]
            c = r[j] * p  # p = +-1, so r[j]/p = r[j]*p
            for jj, v in prow.items():
                nv = r.get(jj, 0) - c * v
                if nv:
                    if jj not in r:
                        col_index.setdefault(jj, set()).add(k)
                    r[jj] = nv
                else:
                    r.pop(jj, None)
                    col_index[jj].discard(k)
            if not r:
                del rows[k]
        col_index.pop(j, None)
        units += 1
    rest = _dense_invariants([r for r in rows.values() if r])
    return [1] * units + sorted(rest)


def rank(M: IntegerMatrix) -> int:
    return len(invariant_factors(M))


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^free_rank (+) Z/d_1 (+) ... with d_1 | d_2 | ... and every d_i >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        object.__setattr__(self, "torsion", canonical_torsion(self.torsion))

    @classmethod
    def zero(cls) -> "FgAbelianGroup":
        return cls()

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def canonical_torsion(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant-factor form of a direct sum of cyclic groups Z/o."""
    vals = [abs(int(o)) for o in orders]
    if any(v == 0 for v in vals):
        raise ValueError("Z/0 is free; count it in the free rank")
    vals = [v for v in vals if v > 1]
    # repeated (gcd, lcm) exchanges converge to the divisibility chain
    changed = True
    while changed:
        changed = False
        vals.sort()
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                a, b = vals[i], vals[j]
                if b % a:
                    g = gcd(a, b)
                    vals[i], vals[j] = g, a * b // g
                    changed = True
    return tuple(sorted(v for v in vals if v > 1))


def cokernel(M: IntegerMatrix) -> FgAbelianGroup:
    """Z^rows / column span of M."""
    inv = invariant_factors(M)
    return FgAbelianGroup(M.rows - len(inv), tuple(d for d in inv if d > 1))


def homology_at(d_in: IntegerMatrix, d_out: IntegerMatrix, check: bool = True) -> FgAbelianGroup:
    """ker(d_out) / im(d_in) for Z^a --d_in--> Z^n --d_out--> Z^b.

    ker(d_out) is a pure sublattice, so the torsion of the quotient equals the
    torsion of Z^n / im(d_in).
    """
    if d_in.rows != d_out.cols:
        raise ValueError(f"incompatible shapes {d_in.shape} then {d_out.shape}")
    if check and not (d_out @ d_in).is_zero():
        raise ComplexError("d_out * d_in is nonzero; the complex is built incorrectly")
    inv_in = invariant_factors(d_in)
    r_out = rank(d_out)
    return FgAbelianGroup(d_in.rows - len(inv_in) - r_out, tuple(d for d in inv_in if d > 1))


@dataclass(frozen=True)
class GradedGroup:
    """Degreewise finitely generated abelian groups; missing degrees are zero."""

    by_degree: Mapping[int, FgAbelianGroup] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(d): g for d, g in sorted(self.by_degree.items()) if not g.is_zero()}
        object.__setattr__(self, "by_degree", clean)

    def __getitem__(self, d: int) -> FgAbelianGroup:
        return self.by_degree.get(d, FgAbelianGroup())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedGroup):
            return NotImplemented
        return dict(self.by_degree) == dict(other.by_degree)

    def __hash__(self):
        return hash(tuple(self.by_degree.items()))

    def degrees(self) -> list[int]:
        return list(self.by_degree)

    def truncate(self, d_max: int) -> "GradedGroup":
        return GradedGroup({d: g for d, g in self.by_degree.items() if d <= d_max})


def tensor_groups(g1: FgAbelianGroup, g2: FgAbelianGroup) -> FgAbelianGroup:
    torsion = [t for t in g2.torsion for _ in range(g1.free_rank)]
    torsion += [t for t in g1.torsion for _ in range(g2.free_rank)]
    torsion += [gcd(a, b) for a in g1.torsion for b in g2.torsion]
    return FgAbelianGroup(g1.free_rank * g2.free_rank, tuple(torsion))


def tensor_graded(G1: GradedGroup, G2: GradedGroup, d_max: int | None = None) -> GradedGroup:
    out: dict[int, FgAbelianGroup] = {}
    for d1, a in G1.by_degree.items():
        for d2, b in G2.by_degree.items():
            if d_max is not None and d1 + d2 > d_max:
                continue
            out[d1 + d2] = out.get(d1 + d2, FgAbelianGroup()) + tensor_groups(a, b)
    return GradedGroup(out)


def torsion_free_quotient(G: GradedGroup) -> GradedGroup:
    return GradedGroup({d: FgAbelianGroup(g.free_rank) for d, g in G.by_degree.items()})
