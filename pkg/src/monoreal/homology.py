"""Koszul and truncated bar complexes over the integers, and the Tor tables
they compute.

Every complex here preserves a multigrading finer than the internal degree
(block totals of the polarized variables, odd support), so matrices are
assembled and reduced one weight at a time. Tor in internal degree q is the
direct sum of the homology over all weights of degree q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .abelian import FgAbelianGroup, IntegerMatrix, invariant_factors
from .action import LinearForm, ModuleAction, _add
from .monomial import (
    HilbertFunction,
    Monomial,
    MonomialRing,
    VariableTable,
    degree,
    divides,
    hilbert_function,
    minimalize,
    multiply,
    standard_monomials,
)
from .polarization import PolarizationData

Element = dict  # basis key -> integer coefficient


class TruncationError(ValueError):
    """An element or result falls outside the truncation bounds of a complex."""


def _homology_from(dim: int, f_out: list[int], f_in: list[int]) -> FgAbelianGroup:
    """Homology at a term of dimension ``dim`` from the invariant factors of the
    outgoing and incoming differentials (see ``abelian.homology_at``)."""
    return FgAbelianGroup(dim - len(f_out) - len(f_in), tuple(d for d in f_in if d > 1))


def build_action(data: PolarizationData, d_max: int, verify: bool = False) -> ModuleAction:
    """A' as a W-module through w_ij -> x'_ij - x'_i1.

    ``verify`` also checks that the action matrices commute (quadratic in the
    number of forms, so off by default).
    """
    forms = [LinearForm(f"w_{i}_{j}", deg, ((data.index((i, j)), 1), (data.index((i, 1)), -1)))
             for (i, j), deg in data.w_vars]
    action = ModuleAction(data.polarized, forms, d_max)
    if verify:
        bad = action.check_commutation()
        if bad:
            raise ArithmeticError(f"action matrices fail to commute, e.g. {bad[0]}")
    return action


def free_action(names_degrees: Sequence[tuple[str, int]], d_max: int,
                ideal_gens: Iterable[Monomial] = ()) -> ModuleAction:
    """Z[w_1..w_N] / (ideal_gens) over Z[w_1..w_N], each w_s acting as itself."""
    table = VariableTable(tuple(names_degrees), ())
    ring = MonomialRing.build(table, ideal_gens)
    forms = [LinearForm(name, deg, ((s, 1),)) for s, (name, deg) in enumerate(names_degrees)]
    return ModuleAction(ring, forms, d_max)


# --------------------------------------------------------------------------
# Tor tables


@dataclass
class TorTable:
    """Tor^{-p,q}: homological degree p >= 0, internal degree q."""

    p_max: int
    d_max: int
    entries: dict[tuple[int, int], FgAbelianGroup] = field(default_factory=dict)
    valid: dict[tuple[int, int], bool] = field(default_factory=dict)

    def __getitem__(self, pq: tuple[int, int]) -> FgAbelianGroup:
        return self.entries.get(pq, FgAbelianGroup())

    def is_valid(self, p: int, q: int) -> bool:
        return self.valid.get((p, q), True)

    def nonzero_higher(self) -> list[tuple[int, int]]:
        return sorted(pq for pq, g in self.entries.items()
                      if pq[0] >= 1 and not g.is_zero() and self.is_valid(*pq))

    def torsion_at_zero(self) -> list[int]:
        return sorted(q for (p, q), g in self.entries.items() if p == 0 and g.torsion)

    def ranks(self, p: int) -> tuple[int, ...]:
        return tuple(self[(p, q)].free_rank for q in range(self.d_max + 1))

    def agrees_with(self, other: "TorTable") -> list[tuple[int, int]]:
        """Entries valid in both tables where the groups differ."""
        out = []
        for p in range(min(self.p_max, other.p_max) + 1):
            for q in range(min(self.d_max, other.d_max) + 1):
                if self.is_valid(p, q) and other.is_valid(p, q) and self[(p, q)] != other[(p, q)]:
                    out.append((p, q))
        return out

    def format(self) -> str:
        lines = []
        for p in range(self.p_max + 1):
            cells = []
            for q in range(self.d_max + 1):
                g = self[(p, q)]
                mark = "" if self.is_valid(p, q) else "?"
                if not g.is_zero() or mark:
                    cells.append(f"q={q}: {g}{mark}")
            lines.append(f"p={p}: " + (", ".join(cells) if cells else "0"))
        return "\n".join(lines)


@dataclass
class TorVerdict:
    higher: list[tuple[int, int]]
    torsion: list[int]
    rank_mismatch: list[int]

    @property
    def passed(self) -> bool:
        return not (self.higher or self.torsion or self.rank_mismatch)


def check_tor_concentration(tor: TorTable, expected: HilbertFunction) -> TorVerdict:
    """Tor concentrated in p = 0, torsion-free there, with the ranks of ``expected``."""
    top = min(tor.d_max, expected.d_max)
    mismatch = [q for q in range(top + 1) if tor[(0, q)].free_rank != expected[q]]
    return TorVerdict(tor.nonzero_higher(), tor.torsion_at_zero(), mismatch)


# --------------------------------------------------------------------------
# Koszul complex


class KoszulComplex:
    """R (x) Lambda(e_1..e_N), d(e_S (x) m) = sum_s (-1)^pos(s,S) e_{S-s} (x) delta(w_s) m.

    Terms are indexed by homological degree p and weight; e_s carries the
    weight of form s (one unit in its block).
    """

    def __init__(self, action: ModuleAction):
        self.action = action
        self.N = action.n_forms
        self._subsets = [list(combinations(range(self.N), p)) for p in range(self.N + 1)]

    def _shift(self, S: tuple[int, ...]) -> list[int]:
        shift = [0] * len(self.action.blocks)
        for s in S:
            shift[self.action.form_block[s]] += 1
        return shift

    def term_basis(self, p: int, weight: tuple) -> list[tuple[tuple[int, ...], Monomial]]:
        if p < 0 or p > self.N:
            return []
        totals, odd = weight
        out = []
        for S in self._subsets[p]:
            shift = self._shift(S)
            sub = tuple(t - s for t, s in zip(totals, shift))
            if any(x < 0 for x in sub):
                continue
            out.extend((S, m) for m in self.action.basis(sub, odd))
        return out

    def term_rank(self, p: int, q: int) -> int:
        return sum(len(self.term_basis(p, w)) for w in self.action.weights(q)
                   if self.action.weight_degree(*w) == q)

    def differential(self, p: int, weight: tuple) -> IntegerMatrix:
        """d: K_p -> K_{p-1} at ``weight``."""
        src = self.term_basis(p, weight)
        tgt = self.term_basis(p - 1, weight)
        where = {b: r for r, b in enumerate(tgt)}
        entries: dict[tuple[int, int], int] = {}
        for c, (S, mon) in enumerate(src):
            for pos, s in enumerate(S):
                sign = -1 if pos % 2 else 1
                rest = S[:pos] + S[pos + 1:]
                for k, v in self.action.apply(s, mon).items():
                    r = where[(rest, k)]
                    entries[(r, c)] = entries.get((r, c), 0) + sign * v
        return IntegerMatrix(len(tgt), len(src), {k: v for k, v in entries.items() if v})

    def homology(self, weight: tuple, p_max: int | None = None) -> dict[int, FgAbelianGroup]:
        top = self.N if p_max is None else min(p_max, self.N)
        factors = {}
        dims = {}
        for p in range(0, top + 2):
            if p > self.N:
                factors[p] = []
                continue
            D = self.differential(p, weight) if p >= 1 else IntegerMatrix(0, 0)
            dims[p] = D.cols if p >= 1 else len(self.term_basis(0, weight))
            factors[p] = invariant_factors(D) if p >= 1 else []
        return {p: _homology_from(dims[p], factors[p], factors[p + 1]) for p in range(top + 1)}


def koszul_tor(action: ModuleAction, d_max: int | None = None, p_max: int | None = None) -> TorTable:
    d_max = action.d_max if d_max is None else d_max
    complex_ = KoszulComplex(action)
    top = complex_.N if p_max is None else min(p_max, complex_.N)
    table = TorTable(top, d_max)
    for weight in action.weights(d_max):
        q = action.weight_degree(*weight)
        for p, g in complex_.homology(weight, top).items():
            if not g.is_zero():
                table.entries[(p, q)] = table[(p, q)] + g
    return table


# --------------------------------------------------------------------------
# bar construction


class LinearWeight:
    """Additive weight of monomials: sum of per-variable vectors; entry 0 is the degree."""

    def __init__(self, even: Sequence[tuple[int, ...]], odd: Sequence[tuple[int, ...]]):
        self.even = [tuple(v) for v in even]
        self.odd = [tuple(v) for v in odd]
        dims = {len(v) for v in self.even + self.odd}
        if len(dims) > 1:
            raise ValueError("weight vectors must share a length")
        self.dim = dims.pop() if dims else 1

    @classmethod
    def by_degree(cls, table: VariableTable) -> "LinearWeight":
        return cls([(d,) for d in table.even_degrees], [(d,) for d in table.odd_degrees])

    def __call__(self, mon: Monomial) -> tuple[int, ...]:
        w = [0] * self.dim
        for e, v in zip(mon.exps, self.even):
            if e:
                for k, x in enumerate(v):
                    w[k] += e * x
        for j in mon.odd:
            for k, x in enumerate(self.odd[j]):
                w[k] += x
        return tuple(w)


class GradedAlgebra:
    """A monomial ring as a (d)g algebra; ``differential`` maps a monomial to an element."""

    def __init__(self, ring: MonomialRing, weight: LinearWeight | None = None,
                 differential: Callable[[Monomial], dict] | None = None):
        self.ring = ring
        self.weight = weight or LinearWeight.by_degree(ring.table)
        self.differential = differential

    def degree(self, mon: Monomial) -> int:
        return self.ring.degree(mon)

    def augmentation_basis(self, q: int) -> list[Monomial]:
        return standard_monomials(self.ring, q) if q > 0 else []

    def product(self, a: Monomial, b: Monomial) -> dict[Monomial, int]:
        res = multiply(a, b)
        if res is None or self.ring.contains(res[1]):
            return {}
        return {res[1]: res[0]}


class BarModule:
    """Interface for the two end modules of B(M, A, N).

    ``act(key, a)`` is the right action x.a on M or the left action a.y on N.
    """

    weight_dim = 1
    differential: Callable | None = None

    def basis(self, q: int) -> list:
        raise NotImplementedError

    def degree(self, key) -> int:
        raise NotImplementedError

    def weight(self, key) -> tuple:
        raise NotImplementedError

    def act(self, key, a: Monomial) -> dict:
        raise NotImplementedError


class TrivialModule(BarModule):
    """Z in degree 0; positive-degree elements act by zero."""

    def __init__(self, weight_dim: int = 1):
        self.weight_dim = weight_dim

    def basis(self, q):
        return [()] if q == 0 else []

    def degree(self, key):
        return 0

    def weight(self, key):
        return (0,) * self.weight_dim

    def act(self, key, a):
        return {(): 1} if a.is_unit() else {}


class RingModule(BarModule):
    """The algebra acting on itself from the right (``side='right'``) or left."""

    def __init__(self, algebra: GradedAlgebra, side: str = "right"):
        self.algebra = algebra
        self.side = side
        self.weight_dim = algebra.weight.dim
        self.differential = algebra.differential

    def basis(self, q):
        return standard_monomials(self.algebra.ring, q)

    def degree(self, key):
        return self.algebra.degree(key)

    def weight(self, key):
        return self.algebra.weight(key)

    def act(self, key, a):
        return self.algebra.product(key, a) if self.side == "right" else self.algebra.product(a, key)


class RestrictedModule(BarModule):
    """The module ring of a ModuleAction over the polynomial ring on its forms.

    A monomial w^alpha acts by applying delta(w_s) alpha_s times. The weight is
    (degree, block totals..., odd counts...), matching ``weight_algebra``.
    """

    def __init__(self, action: ModuleAction):
        self.action = action
        self.ring = action.ring
        self.weight_dim = 1 + len(action.blocks) + self.ring.table.n

    def basis(self, q):
        return standard_monomials(self.ring, q)

    def degree(self, key):
        return self.ring.degree(key)

    def weight(self, key):
        totals, _ = self.action.weight_of(key)
        odd = [0] * self.ring.table.n
        for k in key.odd:
            odd[k] = 1
        return (self.degree(key),) + totals + tuple(odd)

    def act(self, key, a):
        elem = {key: 1}
        for s, e in enumerate(a.exps):
            for _ in range(e):
                elem = self.action.apply_element(s, elem)
                if not elem:
                    return {}
        return elem

    def weight_algebra(self) -> GradedAlgebra:
        """Z[w_1..w_N] with weights compatible with this module."""
        forms = self.action.forms
        table = VariableTable(tuple((f.name, f.degree) for f in forms), ())
        nb, n = len(self.action.blocks), self.ring.table.n
        even = []
        for s, f in enumerate(forms):
            vec = [0] * (1 + nb + n)
            vec[0] = f.degree
            vec[1 + self.action.form_block[s]] = 1
            even.append(tuple(vec))
        return GradedAlgebra(MonomialRing.build(table), LinearWeight(even, []))


BarKey = tuple  # (x, (a_1, ..., a_p), y)


def _sum_weights(ws: Iterable[tuple]) -> tuple:
    ws = list(ws)
    return tuple(sum(col) for col in zip(*ws))


class BarComplex:
    """Truncated B^{-p,q}(M, A, N) for p <= max_length and q <= d_max.

    The external differential never changes q and shortens words, so every
    (p, q) with p < max_length is exact; p = max_length is exact only when
    no word of length max_length + 1 fits in degree q.

    With eps_k = k + |x| + |a_1| + ... + |a_k|:

      d_E x[a_1|..|a_p]y = (-1)^|x| (x a_1)[a_2|..]y
                           + sum_{j<p} (-1)^eps_j x[..|a_j a_{j+1}|..]y
                           - (-1)^eps_{p-1} x[..|a_{p-1}](a_p y)
      d_I x[a_1|..|a_p]y = (d x)[..]y - sum_j (-1)^eps_{j-1} x[..|d a_j|..]y
                           + (-1)^eps_p x[..](d y)

    These are the signs under which d_E^2 = d_I^2 = d_E d_I + d_I d_E = 0.
    """

    def __init__(self, M: BarModule, A: GradedAlgebra, N: BarModule, max_length: int, d_max: int):
        self.M, self.A, self.N = M, A, N
        self.max_length = max_length
        self.d_max = d_max
        self._abar = {q: A.augmentation_basis(q) for q in range(d_max + 1)}
        self._words_cache: dict = {}
        self._basis_cache: dict = {}
        self._min_abar = min((q for q in range(1, d_max + 1) if self._abar[q]), default=None)
        self._min_m = min((q for q in range(d_max + 1) if M.basis(q)), default=None)
        self._min_n = min((q for q in range(d_max + 1) if N.basis(q)), default=None)

    def valid(self, p: int, q: int) -> bool:
        if p < self.max_length:
            return True
        if self._min_abar is None or self._min_m is None or self._min_n is None:
            return True
        return q < (p + 1) * self._min_abar + self._min_m + self._min_n

    def _words(self, p: int, q: int) -> list[tuple[Monomial, ...]]:
        key = (p, q)
        if key in self._words_cache:
            return self._words_cache[key]
        if p == 0:
            out = [()] if q == 0 else []
        else:
            out = []
            for q1 in range(1, q + 1):
                for a in self._abar.get(q1, ()):
                    out.extend((a,) + rest for rest in self._words(p - 1, q - q1))
        self._words_cache[key] = out
        return out

    def basis(self, p: int, q: int) -> dict[tuple, list[BarKey]]:
        """Basis of B^{-p,q}, bucketed by weight."""
        key = (p, q)
        if key in self._basis_cache:
            return self._basis_cache[key]
        buckets: dict[tuple, list] = {}
        if 0 <= p <= self.max_length and 0 <= q <= self.d_max:
            for qx in range(q + 1):
                xs = self.M.basis(qx)
                if not xs:
                    continue
                for qa in range(q - qx + 1):
                    words = self._words(p, qa)
                    if not words:
                        continue
                    ys = self.N.basis(q - qx - qa)
                    for x in xs:
                        wx = self.M.weight(x)
                        for word in words:
                            ww = _sum_weights([wx] + [self.A.weight(a) for a in word])
                            for y in ys:
                                w = _sum_weights([ww, self.N.weight(y)])
                                buckets.setdefault(w, []).append((x, word, y))
        self._basis_cache[key] = buckets
        return buckets

    def degree(self, key: BarKey) -> int:
        x, word, y = key
        return self.M.degree(x) + sum(self.A.degree(a) for a in word) + self.N.degree(y)

    def _eps(self, x, word, k: int) -> int:
        return k + self.M.degree(x) + sum(self.A.degree(a) for a in word[:k])

    def d_external(self, key: BarKey) -> dict[BarKey, int]:
        x, word, y = key
        p = len(word)
        out: dict[BarKey, int] = {}
        if p == 0:
            return out
        sgn = -1 if self.M.degree(x) % 2 else 1
        for x2, c in self.M.act(x, word[0]).items():
            _add(out, (x2, word[1:], y), sgn * c)
        for j in range(1, p):
            sgn = -1 if self._eps(x, word, j) % 2 else 1
            for ab, c in self.A.product(word[j - 1], word[j]).items():
                _add(out, (x, word[:j - 1] + (ab,) + word[j + 1:], y), sgn * c)
        # minus sign on the last term: without it d_E o d_E != 0 once N acts nontrivially
        sgn = 1 if self._eps(x, word, p - 1) % 2 else -1
        for y2, c in self.N.act(y, word[-1]).items():
            _add(out, (x, word[:-1], y2), sgn * c)
        return out

    def d_internal(self, key: BarKey) -> dict[BarKey, int]:
        x, word, y = key
        p = len(word)
        out: dict[BarKey, int] = {}
        if self.M.differential:
            for x2, c in self.M.differential(x).items():
                _add(out, (x2, word, y), c)
        if self.A.differential:
            for j in range(1, p + 1):
                # d also passes the suspension of a_j, hence eps_{j-1} + 1
                sgn = 1 if self._eps(x, word, j - 1) % 2 else -1
                for da, c in self.A.differential(word[j - 1]).items():
                    if da.is_unit():
                        raise TruncationError("differential leaves the augmentation ideal")
                    _add(out, (x, word[:j - 1] + (da,) + word[j:], y), sgn * c)
        if self.N.differential:
            sgn = -1 if self._eps(x, word, p) % 2 else 1
            for y2, c in self.N.differential(y).items():
                _add(out, (x, word, y2), sgn * c)
        return out

    def check_bounds(self, key: BarKey) -> None:
        if len(key[1]) > self.max_length or self.degree(key) > self.d_max:
            raise TruncationError(f"{key} lies outside p <= {self.max_length}, q <= {self.d_max}")

    def external_matrix(self, p: int, q: int, weight: tuple) -> IntegerMatrix:
        src = self.basis(p, q).get(weight, [])
        tgt = self.basis(p - 1, q).get(weight, [])
        where = {b: r for r, b in enumerate(tgt)}
        entries = {}
        for c, key in enumerate(src):
            for k, v in self.d_external(key).items():
                entries[(where[k], c)] = v
        return IntegerMatrix(len(tgt), len(src), entries)


def bar_differential(element: Mapping[BarKey, int], complex_: BarComplex) -> dict[BarKey, int]:
    """(d_I + d_E) applied to a combination of basis words."""
    out: dict[BarKey, int] = {}
    for key, coeff in element.items():
        complex_.check_bounds(key)
        for part in (complex_.d_external(key), complex_.d_internal(key)):
            for k, v in part.items():
                _add(out, k, coeff * v)
    for key in out:
        if len(key[1]) > complex_.max_length or complex_.degree(key) > complex_.d_max:
            raise TruncationError(f"differential left the truncation: {key}")
    return out


def bar_tor(M: BarModule, A: GradedAlgebra, N: BarModule, p_max: int, d_max: int,
            max_length: int | None = None) -> TorTable:
    """Homology of the external differential of the truncated bar complex.

    Internal differentials are assumed zero. Words up to ``max_length`` (default
    p_max + 1) are built; entries the truncation cannot certify are marked invalid.
    """
    length = p_max + 1 if max_length is None else max_length
    B = BarComplex(M, A, N, length, d_max)
    table = TorTable(p_max, d_max)
    for q in range(d_max + 1):
        weights = set()
        for p in range(p_max + 2):
            weights |= set(B.basis(p, q))
        for w in weights:
            factors = {}
            dims = {}
            for p in range(p_max + 2):
                D = B.external_matrix(p, q, w) if p >= 1 else None
                dims[p] = len(B.basis(p, q).get(w, []))
                factors[p] = invariant_factors(D) if D is not None else []
            for p in range(p_max + 1):
                g = _homology_from(dims[p], factors[p], factors[p + 1])
                if not g.is_zero():
                    table.entries[(p, q)] = table[(p, q)] + g
        for p in range(p_max + 1):
            table.valid[(p, q)] = B.valid(p, q)
    return table


@dataclass
class ZModelReport:
    d_max: int
    substituted: tuple[Monomial, ...]  # L' after z'_ijk -> z_ik, minimalized
    direct: tuple[Monomial, ...]       # L from the generator rule
    substituted_ranks: HilbertFunction
    direct_ranks: HilbertFunction
    # (generator of I', its image in Q', a generator of L' dividing it or None)
    images: list[tuple[Monomial, Monomial, Monomial | None]] = field(default_factory=list)

    @property
    def ideals_match(self) -> bool:
        return self.substituted == self.direct

    @property
    def first_rank_mismatch(self) -> int | None:
        pairs = zip(self.substituted_ranks.ranks, self.direct_ranks.ranks)
        return next((d for d, (x, y) in enumerate(pairs) if x != y), None)

    @property
    def escaped(self) -> list[tuple[Monomial, Monomial]]:
        """I' generators whose image is not in L'."""
        return [(g, img) for g, img, w in self.images if w is None]

    @property
    def passed(self) -> bool:
        return self.ideals_match and self.first_rank_mismatch is None and not self.escaped


def z_model_compare(plan, d_max: int) -> ZModelReport:
    """Identify z'_ijk with z_ik in Q'/L' and compare with the direct Q/L; check that
    the generator map sends I' into L'.

    ``plan`` is a RealizationPlan. Ranks are compared through degree ``d_max``.
    """
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    z = plan.z_model
    omega = plan.polarization.omega
    c = z.c
    offsets = [sum(c[:i]) for i in range(len(c))]
    target = [offsets[i - 1] + k for i, _ in omega for k in range(c[i - 1])]
    q_table = z.q.table

    subst = []
    for g in z.q_prime.ideal.generators:
        exps = [0] * q_table.m
        for col, e in enumerate(g.exps):
            exps[target[col]] += e
        subst.append(Monomial(tuple(exps), g.odd))
    substituted = minimalize(subst)

    def low(gens):
        # generators above d_max do not affect ranks up to d_max
        return MonomialRing.build(q_table, [g for g in gens if degree(g, q_table) <= d_max])

    report = ZModelReport(d_max, substituted.generators, z.q.ideal.generators,
                          hilbert_function(low(substituted.generators), d_max),
                          hilbert_function(low(z.q.ideal.generators), d_max))

    images = dict(z.generator_map)
    ptable = plan.polarization.polarized.table
    qp = z.q_prime
    for g in plan.polarization.polarized.ideal.generators:
        img = qp.table.unit()
        for col, e in enumerate(g.exps):
            for _ in range(e):
                img = multiply(img, images[ptable.even_vars[col][0]])[1]
        for k in g.odd:
            res = multiply(img, images[ptable.odd_vars[k][0]])
            if res is None:
                raise ValueError("generator map repeats an odd variable")
            img = res[1]
        witness = next((h for h in qp.ideal.generators if divides(h, img)), None)
        report.images.append((g, img, witness))
    return report

