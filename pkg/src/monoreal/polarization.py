"""Polarization of a monomial ideal and degreewise checks of the resulting
freeness over the difference-variable ring W = Z[w_ij], w_ij -> x'_ij - x'_i1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import IntegerMatrix, rank
from .action import LinearForm, ModuleAction
from .monomial import (
    HilbertFunction,
    Monomial,
    MonomialRing,
    VariableTable,
    check_conforms,
    hilbert_function,
    minimalize,
    standard_monomials,
)

Pair = tuple[int, int]


def polarized_name(i: int, j: int) -> str:
    return f"x'_{i}_{j}"


@dataclass(frozen=True)
class PolarizationData:
    source: MonomialRing
    polarized: MonomialRing
    a: tuple[int, ...]
    omega: tuple[Pair, ...]
    omega_bar: tuple[Pair, ...]

    @property
    def w_vars(self) -> tuple[tuple[Pair, int], ...]:
        degs = self.source.table.even_degrees
        return tuple((p, degs[p[0] - 1]) for p in self.omega_bar)

    def index(self, pair: Pair) -> int:
        """Column of x'_ij in the polarized table."""
        return self.omega.index(pair)

    def block_of(self, col: int) -> int:
        """0-based source variable of polarized column ``col``."""
        return self.omega[col][0] - 1


def polarize(ring: MonomialRing) -> PolarizationData:
    """x_i^a -> x'_i1 x'_i2 ... x'_ia in every minimal generator.

    a_i is the largest exponent of x_i among the generators, raised to 1 when x_i
    appears in none, so x_i survives as x'_i1.
    """
    table = ring.table
    gens = minimalize(ring.ideal.generators).generators
    a = tuple(max([1] + [g.exps[i] for g in gens]) for i in range(table.m))
    omega = tuple((i + 1, j + 1) for i in range(table.m) for j in range(a[i]))
    omega_bar = tuple(p for p in omega if p[1] >= 2)
    even = tuple((polarized_name(i, j), table.even_degrees[i - 1]) for i, j in omega)
    ptable = VariableTable(even, table.odd_vars)
    offsets = [sum(a[:i]) for i in range(table.m)]
    pol_gens = []
    for g in gens:
        exps = [0] * len(omega)
        for i, e in enumerate(g.exps):
            for j in range(e):
                exps[offsets[i] + j] = 1
        pol_gens.append(Monomial(tuple(exps), g.odd))
    return PolarizationData(ring, MonomialRing.build(ptable, pol_gens), a, omega, omega_bar)


def depolarize(data: PolarizationData, mon: Monomial) -> Monomial:
    check_conforms(mon, data.polarized.table)
    exps = [0] * data.source.table.m
    for col, e in enumerate(mon.exps):
        exps[data.block_of(col)] += e
    return Monomial(tuple(exps), mon.odd)


@dataclass(frozen=True)
class IdentifiedRing:
    """A'/(x'_ij - x'_i1 for the identified pairs), as a monomial quotient."""

    ring: MonomialRing
    columns: tuple[Pair, ...]  # the pair each column of ``ring`` stands for

    def column(self, pair: Pair) -> int:
        return self.columns.index(pair)


def identify(data: PolarizationData, identified) -> IdentifiedRing:
    """Substitute x'_ij -> x'_i1 for each pair in ``identified`` and re-minimalize."""
    identified = set(identified)
    for p in identified:
        if p not in data.omega_bar:
            raise ValueError(f"pair {p} is not in the difference-variable set")
    keep = tuple(p for p in data.omega if p not in identified)
    target = {}
    for col, p in enumerate(data.omega):
        q = (p[0], 1) if p in identified else p
        target[col] = keep.index(q)
    ptable = data.polarized.table
    table = VariableTable(tuple(ptable.even_vars[data.index(p)] for p in keep), ptable.odd_vars)
    gens = []
    for g in data.polarized.ideal.generators:
        exps = [0] * len(keep)
        for col, e in enumerate(g.exps):
            exps[target[col]] += e
        gens.append(Monomial(tuple(exps), g.odd))
    return IdentifiedRing(MonomialRing.build(table, gens), keep)


def difference_matrix(ring: MonomialRing, plus: int, minus: int, d: int, step: int):
    """Matrix of multiplication by (v_plus - v_minus): degree d -> degree d + step.

    Returns (matrix, source basis, target basis).
    """
    src = standard_monomials(ring, d)
    tgt = standard_monomials(ring, d + step)
    where = {m: r for r, m in enumerate(tgt)}
    entries: dict[tuple[int, int], int] = {}
    for c, mon in enumerate(src):
        for col, sign in ((plus, 1), (minus, -1)):
            exps = list(mon.exps)
            exps[col] += 1
            r = where.get(Monomial._raw(tuple(exps), mon.odd))
            if r is not None:  # products landing in the ideal vanish
                entries[(r, c)] = entries.get((r, c), 0) + sign
    return IntegerMatrix(len(tgt), len(src), entries), src, tgt


@dataclass
class StepCheck:
    k: int
    pair: Pair
    degrees: list[tuple[int, int, int, int]] = field(default_factory=list)  # (d, src, tgt, kernel)

    @property
    def kernel_degrees(self) -> list[int]:
        return [d for d, _, _, ker in self.degrees if ker]

    @property
    def empty_degrees(self) -> list[int]:
        return [d for d, src, _, _ in self.degrees if src == 0]


@dataclass
class RegularSequenceReport:
    d_max: int
    a: tuple[int, ...]
    steps: list[StepCheck] = field(default_factory=list)

    @property
    def kernels(self) -> list[tuple[int, int]]:
        """(k, d) for every degree where a nonzero kernel was found."""
        return [(s.k, d) for s in self.steps for d in s.kernel_degrees]

    @property
    def untested_steps(self) -> list[int]:
        """Steps where the bound left no nonempty source degree to test."""
        return [s.k for s in self.steps if len(s.empty_degrees) == len(s.degrees)]

    @property
    def passed(self) -> bool:
        return not self.kernels and not self.untested_steps

    @property
    def verdict(self) -> str:
        if self.kernels:
            return "FAIL"
        return "INCONCLUSIVE" if self.untested_steps else "PASS"


def check_regular_sequence(data: PolarizationData, d_max: int,
                           identify_target: bool = False) -> RegularSequenceReport:
    """Multiplication by x'_ij - x'_i1 on A'/(earlier differences) must be injective.

    Step k identifies the first k pairs of omega_bar and tests pair k, degree by
    degree up to ``d_max``. ``identify_target`` also identifies the tested pair
    beforehand, which makes the map zero; it exists to exercise the failure path.
    """
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    report = RegularSequenceReport(d_max, data.a)
    for k, pair in enumerate(data.omega_bar):
        done = data.omega_bar[:k + 1] if identify_target else data.omega_bar[:k]
        ident = identify(data, done)
        i = pair[0]
        step = data.source.table.even_degrees[i - 1]
        base = ident.column((i, 1))
        plus = ident.column(pair) if pair in ident.columns else base
        # the map preserves (block totals, odd support); reduce one weight at a time
        action = ModuleAction(ident.ring, [LinearForm("w", step, ((plus, 1), (base, -1)))], d_max)
        blk = action.form_block[0]
        per_degree = {d: [0, 0, 0] for d in range(d_max + 1)}
        for totals, odd in action.weights(d_max):
            src = action.basis(totals, odd)
            if not src:
                continue
            up = totals[:blk] + (totals[blk] + 1,) + totals[blk + 1:]
            tgt = action.basis(up, odd)
            where = {m: r for r, m in enumerate(tgt)}
            entries = {}
            for c, mon in enumerate(src):
                for img, v in action.apply(0, mon).items():
                    entries[(where[img], c)] = v
            acc = per_degree[action.weight_degree(totals, odd)]
            acc[0] += len(src)
            acc[1] += len(tgt)
            acc[2] += len(src) - rank(IntegerMatrix(len(tgt), len(src), entries))
        check = StepCheck(k, pair, [(d, *per_degree[d]) for d in range(d_max + 1)])
        report.steps.append(check)
    return report


@dataclass
class RankIdentityReport:
    source: HilbertFunction
    identified: HilbertFunction

    @property
    def first_mismatch(self) -> int | None:
        return next((d for d, (x, y) in enumerate(zip(self.source.ranks, self.identified.ranks))
                     if x != y), None)

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None


def check_rank_identity(data: PolarizationData, d_max: int) -> RankIdentityReport:
    """rank_d(A) against rank_d(A' with every x'_ij identified with x'_i1)."""
    gens = [depolarize(data, g) for g in data.polarized.ideal.generators]
    collapsed = MonomialRing.build(data.source.table, gens)
    return RankIdentityReport(hilbert_function(data.source, d_max),
                              hilbert_function(collapsed, d_max))
