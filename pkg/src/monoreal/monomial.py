"""Graded polynomial-exterior rings Z[x_1..x_m] (x) Lambda[y_1..y_n] and their
monomial quotients.

Monomials carry an even exponent vector and a square-free odd support. All
variable degrees are positive, so every graded piece of a quotient ring is a
finitely generated free abelian group spanned by standard monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """A monomial does not fit the variable table it is used with."""


@dataclass(frozen=True)
class VariableTable:
    even_vars: tuple[tuple[str, int], ...] = ()
    odd_vars: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "even_vars", tuple((str(n), int(d)) for n, d in self.even_vars))
        object.__setattr__(self, "odd_vars", tuple((str(n), int(d)) for n, d in self.odd_vars))
        names = [n for n, _ in self.even_vars] + [n for n, _ in self.odd_vars]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate variable names: {', '.join(dup)}")
        for name, deg in self.even_vars:
            if deg < 2 or deg % 2:
                raise ValueError(f"even variable {name} needs a positive even degree, got {deg}")
        for name, deg in self.odd_vars:
            if deg < 1 or deg % 2 == 0:
                raise ValueError(f"odd variable {name} needs a positive odd degree, got {deg}")

    @property
    def m(self) -> int:
        return len(self.even_vars)

    @property
    def n(self) -> int:
        return len(self.odd_vars)

    @property
    def even_degrees(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.even_vars)

    @property
    def odd_degrees(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.odd_vars)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.even_vars) + tuple(n for n, _ in self.odd_vars)

    def unit(self) -> "Monomial":
        return Monomial((0,) * self.m)

    def even_var(self, i: int, power: int = 1) -> "Monomial":
        exps = [0] * self.m
        exps[i] = power
        return Monomial(tuple(exps))

    def odd_var(self, k: int) -> "Monomial":
        return Monomial((0,) * self.m, (k,))


@dataclass(frozen=True, order=False)
class Monomial:
    """x^exps (x) y_odd. ``odd`` holds sorted 0-based indices of odd variables."""

    exps: tuple[int, ...]
    odd: tuple[int, ...] = ()

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exps)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        odd = tuple(sorted(int(k) for k in self.odd))
        if len(set(odd)) != len(odd):
            raise ValueError("odd variables square to zero; repeated index in odd support")
        if odd and odd[0] < 0:
            raise ValueError("odd index must be non-negative")
        object.__setattr__(self, "exps", exps)
        object.__setattr__(self, "odd", odd)

    @property
    def odd_mask(self) -> int:
        mask = 0
        for k in self.odd:
            mask |= 1 << k
        return mask

    @classmethod
    def _raw(cls, exps: tuple, odd: tuple = ()) -> "Monomial":
        # trusted fast path for enumeration: inputs already validated and sorted
        mon = object.__new__(cls)
        object.__setattr__(mon, "exps", exps)
        object.__setattr__(mon, "odd", odd)
        return mon

    def is_unit(self) -> bool:
        return not self.odd and not any(self.exps)

    def sort_key(self):
        # graded-lex: total even exponent, then larger leading exponents first,
        # then odd support as a sorted index list
        return (sum(self.exps), tuple(-e for e in self.exps), len(self.odd), self.odd)

    def format(self, table: VariableTable) -> str:
        check_conforms(self, table)
        parts = []
        for (name, _), e in zip(table.even_vars, self.exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        parts.extend(table.odd_vars[k][0] for k in self.odd)
        return "*".join(parts) if parts else "1"


def check_conforms(mon: Monomial, table: VariableTable) -> None:
    if len(mon.exps) != table.m:
        raise DimensionError(
            f"monomial has {len(mon.exps)} even exponents, table has {table.m} even variables")
    if mon.odd and mon.odd[-1] >= table.n:
        raise DimensionError(f"odd index {mon.odd[-1]} out of range for {table.n} odd variables")


def degree(mon: Monomial, table: VariableTable) -> int:
    check_conforms(mon, table)
    return (sum(e * d for e, d in zip(mon.exps, table.even_degrees))
            + sum(table.odd_degrees[k] for k in mon.odd))


def divides(a: Monomial, b: Monomial) -> bool:
    if len(a.exps) != len(b.exps):
        raise DimensionError("monomials come from different tables")
    if any(x > y for x, y in zip(a.exps, b.exps)):
        return False
    return set(a.odd) <= set(b.odd)


def multiply(a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
    """Graded-commutative product ``a*b`` as ``(sign, monomial)``; None if it vanishes.

    The sign is the parity of moving b's odd variables past a's into sorted order.
    """
    if len(a.exps) != len(b.exps):
        raise DimensionError("monomials come from different tables")
    if set(a.odd) & set(b.odd):
        return None
    inversions = sum(1 for i in a.odd for j in b.odd if i > j)
    prod = Monomial(tuple(x + y for x, y in zip(a.exps, b.exps)), a.odd + b.odd)
    return (-1 if inversions % 2 else 1), prod


@dataclass(frozen=True)
class MonomialIdeal:
    """A minimal, deterministically ordered set of monomial generators.

    Build instances with :func:`minimalize`; the constructor trusts its input.
    """

    generators: tuple[Monomial, ...] = ()

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_zero(self) -> bool:
        return not self.generators


def minimalize(gens: Iterable[Monomial]) -> MonomialIdeal:
    unique = sorted(set(gens), key=Monomial.sort_key)
    # a proper divisor has strictly smaller size (even exponents plus odd count),
    # so each candidate is only compared with kept generators of smaller size
    smaller: list[Monomial] = []
    pending: list[Monomial] = []
    size = None
    for g in sorted(unique, key=lambda g: sum(g.exps) + len(g.odd)):
        s = sum(g.exps) + len(g.odd)
        if s != size:
            smaller.extend(pending)
            pending = []
            size = s
        if not any(divides(h, g) for h in smaller):
            pending.append(g)
    kept = set(smaller) | set(pending)
    return MonomialIdeal(tuple(g for g in unique if g in kept))


def contains(ideal: MonomialIdeal, mon: Monomial) -> bool:
    return any(divides(g, mon) for g in ideal.generators)


@dataclass(frozen=True)
class MonomialRing:
    """A = P / I with P = Z[even vars] (x) Lambda[odd vars] and I monomial."""

    table: VariableTable
    ideal: MonomialIdeal = field(default_factory=MonomialIdeal)

    def __post_init__(self):
        for g in self.ideal.generators:
            check_conforms(g, self.table)
            if g.is_unit():
                raise ValueError("the unit monomial cannot be an ideal generator")

    @classmethod
    def build(cls, table: VariableTable, gens: Iterable[Monomial] = ()) -> "MonomialRing":
        return cls(table, minimalize(gens))

    def degree(self, mon: Monomial) -> int:
        return degree(mon, self.table)

    def contains(self, mon: Monomial) -> bool:
        return contains(self.ideal, mon)

    def format_ideal(self) -> list[str]:
        return [g.format(self.table) for g in self.ideal.generators]


@dataclass(frozen=True)
class HilbertFunction:
    ranks: tuple[int, ...]

    @property
    def d_max(self) -> int:
        return len(self.ranks) - 1

    def __getitem__(self, d: int) -> int:
        return self.ranks[d]

    def as_dict(self) -> dict[int, int]:
        return dict(enumerate(self.ranks))


def _odd_subsets(table: VariableTable, budget: int):
    """(mask, tuple, degree) for every odd support with degree <= budget."""
    degs = table.odd_degrees
    out = []
    for r in range(table.n + 1):
        for combo in combinations(range(table.n), r):
            deg = sum(degs[k] for k in combo)
            if deg <= budget:
                out.append((combo, deg))
    return out


def _even_vectors(degs: Sequence[int], target: int, prefix: tuple = ()):
    if len(prefix) == len(degs):
        if target == 0:
            yield prefix
        return
    d = degs[len(prefix)]
    if len(prefix) == len(degs) - 1:
        if target % d == 0:
            yield prefix + (target // d,)
        return
    for e in range(target // d + 1):
        yield from _even_vectors(degs, target - e * d, prefix + (e,))


def membership_test(ideal: MonomialIdeal):
    """Fast predicate (exps, odd_mask) -> bool for membership in ``ideal``."""
    gens = [(g.exps, g.odd_mask) for g in ideal.generators]

    def member(exps: tuple, mask: int) -> bool:
        for gexps, gmask in gens:
            if gmask & ~mask:
                continue
            for a, b in zip(gexps, exps):
                if a > b:
                    break
            else:
                return True
        return False

    return member


def _standard_raw(ring: MonomialRing, d: int):
    table = ring.table
    member = membership_test(ring.ideal)
    for odd, odd_deg in _odd_subsets(table, d):
        mask = sum(1 << k for k in odd)
        rest = d - odd_deg
        if table.m == 0:
            if rest == 0 and not member((), mask):
                yield (), odd
            continue
        for exps in _even_vectors(table.even_degrees, rest):
            if not member(exps, mask):
                yield exps, odd


def standard_monomials(ring: MonomialRing, d: int) -> list[Monomial]:
    """Basis of the degree-d piece of ``ring``: degree-d monomials outside the ideal."""
    if d < 0:
        return []
    out = [Monomial._raw(exps, odd) for exps, odd in _standard_raw(ring, d)]
    out.sort(key=Monomial.sort_key)
    return out


def hilbert_function(ring: MonomialRing, d_max: int) -> HilbertFunction:
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    return HilbertFunction(tuple(
        sum(1 for _ in _standard_raw(ring, d)) for d in range(d_max + 1)))


def is_square_free(ideal: MonomialIdeal) -> bool:
    return all(e <= 1 for g in ideal.generators for e in g.exps)


def hilbert_convolution(h1: HilbertFunction, h2: HilbertFunction) -> HilbertFunction:
    top = min(h1.d_max, h2.d_max)
    return HilbertFunction(tuple(
        sum(h1[i] * h2[d - i] for i in range(d + 1)) for d in range(top + 1)))


def single_variable_hilbert(deg: int, odd: bool, d_max: int) -> HilbertFunction:
    """Hilbert function of Z[x] (|x| = deg) or of Lambda[y] (|y| = deg)."""
    if odd:
        return HilbertFunction(tuple(1 if d in (0, deg) else 0 for d in range(d_max + 1)))
    return HilbertFunction(tuple(1 if d % deg == 0 else 0 for d in range(d_max + 1)))
