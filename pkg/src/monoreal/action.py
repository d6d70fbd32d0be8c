"""Monomial rings as modules over a polynomial ring acting through linear forms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Mapping, Sequence

from .abelian import IntegerMatrix
from .monomial import Monomial, MonomialRing, membership_test, standard_monomials


def _add(acc: dict, key, coeff: int) -> None:
    v = acc.get(key, 0) + coeff
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


@dataclass(frozen=True)
class LinearForm:
    """sum(coeff * x_col) over even columns of a module ring, all of one degree."""

    name: str
    degree: int
    terms: tuple[tuple[int, int], ...]  # (column, coefficient)


class ModuleAction:
    """A monomial ring R viewed as a module over Z[w_1..w_N], w_s acting as a
    linear form in R's even variables.

    Columns linked by a common form are merged into one block; the action is
    homogeneous for the weight (block totals, odd support).
    """

    def __init__(self, ring: MonomialRing, forms: Sequence[LinearForm], d_max: int):
        self.ring = ring
        self.forms = tuple(forms)
        self.d_max = d_max
        table = ring.table
        for f in self.forms:
            degs = {table.even_degrees[c] for c, _ in f.terms}
            if degs != {f.degree}:
                raise ValueError(f"form {f.name} is not homogeneous of degree {f.degree}")
        parent = list(range(table.m))

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        for f in self.forms:
            cols = [c for c, _ in f.terms]
            for c in cols[1:]:
                parent[find(c)] = find(cols[0])
        roots = sorted({find(c) for c in range(table.m)})
        self.blocks = tuple(tuple(c for c in range(table.m) if find(c) == r) for r in roots)
        self.block_degree = tuple(table.even_degrees[b[0]] for b in self.blocks)
        block_of = {c: k for k, b in enumerate(self.blocks) for c in b}
        self.form_block = tuple(block_of[f.terms[0][0]] for f in self.forms)
        self._member = membership_test(ring.ideal)
        self._basis_cache: dict = {}

    @property
    def n_forms(self) -> int:
        return len(self.forms)

    # weights are (block totals tuple, odd tuple)
    def weight_degree(self, totals: tuple, odd: tuple) -> int:
        return (sum(t * d for t, d in zip(totals, self.block_degree))
                + sum(self.ring.table.odd_degrees[k] for k in odd))

    def weight_of(self, mon: Monomial) -> tuple:
        return (tuple(sum(mon.exps[c] for c in b) for b in self.blocks), mon.odd)

    def weights(self, d_max: int | None = None) -> list[tuple]:
        d_max = self.d_max if d_max is None else d_max
        table = self.ring.table
        out = []
        for r in range(table.n + 1):
            for odd in combinations(range(table.n), r):
                rest = d_max - sum(table.odd_degrees[k] for k in odd)
                if rest < 0:
                    continue
                for totals in _bounded_vectors(self.block_degree, rest):
                    out.append((totals, odd))
        return out

    def basis(self, totals: tuple, odd: tuple) -> tuple[Monomial, ...]:
        key = (totals, odd)
        hit = self._basis_cache.get(key)
        if hit is not None:
            return hit
        if any(t < 0 for t in totals):
            return ()
        m = self.ring.table.m
        mask = sum(1 << k for k in odd)
        parts = [_compositions(t, len(b)) for t, b in zip(totals, self.blocks)]
        out = []
        for choice in product(*parts):
            exps = [0] * m
            for b, comp in zip(self.blocks, choice):
                for c, e in zip(b, comp):
                    exps[c] = e
            exps = tuple(exps)
            if not self._member(exps, mask):
                out.append(Monomial._raw(exps, odd))
        out = tuple(out)
        self._basis_cache[key] = out
        return out

    def apply(self, s: int, mon: Monomial) -> dict[Monomial, int]:
        """delta(w_s) * mon in R; products in the ideal vanish."""
        out: dict[Monomial, int] = {}
        mask = mon.odd_mask
        for c, coeff in self.forms[s].terms:
            exps = list(mon.exps)
            exps[c] += 1
            exps = tuple(exps)
            if not self._member(exps, mask):
                _add(out, Monomial._raw(exps, mon.odd), coeff)
        return out

    def apply_element(self, s: int, elem: Mapping[Monomial, int]) -> dict[Monomial, int]:
        out: dict[Monomial, int] = {}
        for mon, c in elem.items():
            for k, v in self.apply(s, mon).items():
                _add(out, k, c * v)
        return out

    def matrix(self, s: int, d: int) -> tuple[IntegerMatrix, list[Monomial], list[Monomial]]:
        """Multiplication by delta(w_s) from degree d to d + |w_s| on standard monomials."""
        src = standard_monomials(self.ring, d)
        tgt = standard_monomials(self.ring, d + self.forms[s].degree)
        where = {m: r for r, m in enumerate(tgt)}
        entries = {}
        for c, mon in enumerate(src):
            for k, v in self.apply(s, mon).items():
                entries[(where[k], c)] = v
        return IntegerMatrix(len(tgt), len(src), entries), src, tgt

    def check_commutation(self, d_max: int | None = None) -> list[tuple[int, int, Monomial]]:
        """Witnesses (s, t, m) where delta(w_s) delta(w_t) m != delta(w_t) delta(w_s) m."""
        d_max = self.d_max if d_max is None else d_max
        bad = []
        for totals, odd in self.weights(d_max):
            for mon in self.basis(totals, odd):
                for s, t in combinations(range(self.n_forms), 2):
                    st = self.apply_element(s, self.apply(t, mon))
                    ts = self.apply_element(t, self.apply(s, mon))
                    if st != ts:
                        bad.append((s, t, mon))
        return bad


def _bounded_vectors(degs: Sequence[int], budget: int, prefix: tuple = ()):
    if len(prefix) == len(degs):
        yield prefix
        return
    d = degs[len(prefix)]
    for e in range(budget // d + 1):
        yield from _bounded_vectors(degs, budget - e * d, prefix + (e,))


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    if parts == 1:
        return ((total,),)
    return tuple((first,) + rest for first in range(total, -1, -1)
                 for rest in _compositions(total - first, parts - 1))


