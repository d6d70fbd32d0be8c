"""Square-free monomial ideals <-> simplicial complexes given by minimal non-faces."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .monomial import (
    Monomial,
    MonomialIdeal,
    VariableTable,
    is_square_free,
    minimalize,
    multiply,
)

Vertex = tuple[str, int]  # ("even", column) or ("odd", index), 0-based


def _face_key(s: frozenset) -> tuple:
    return (len(s), tuple(sorted(s)))


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex on vertices 1..vertex_count, stored by its minimal non-faces."""

    vertex_count: int
    minimal_non_faces: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        sets = {frozenset(int(v) for v in s) for s in self.minimal_non_faces}
        for s in sets:
            if not s:
                raise ValueError("the empty set cannot be a non-face")
            if min(s) < 1 or max(s) > self.vertex_count:
                raise ValueError(f"non-face {sorted(s)} outside vertices 1..{self.vertex_count}")
        for s in sets:
            for t in sets:
                if s < t:
                    raise ValueError(f"non-faces {sorted(s)} and {sorted(t)} are not an antichain")
        object.__setattr__(self, "minimal_non_faces", tuple(sorted(sets, key=_face_key)))

    @classmethod
    def from_non_faces(cls, vertex_count: int, sets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Keep only the inclusion-minimal sets."""
        sets = sorted({frozenset(s) for s in sets}, key=_face_key)
        minimal: list[frozenset] = []
        for s in sets:
            if not any(t <= s for t in minimal):
                minimal.append(s)
        return cls(vertex_count, tuple(minimal))

    def is_face(self, sigma: Iterable[int]) -> bool:
        sigma = frozenset(sigma)
        if sigma and (min(sigma) < 1 or max(sigma) > self.vertex_count):
            raise ValueError(f"{sorted(sigma)} is not a subset of 1..{self.vertex_count}")
        return not any(s <= sigma for s in self.minimal_non_faces)

    def faces(self) -> list[frozenset[int]]:
        """Every face including the empty one. Exponential; meant for small N."""
        out = []
        for r in range(self.vertex_count + 1):
            for combo in combinations(range(1, self.vertex_count + 1), r):
                if self.is_face(combo):
                    out.append(frozenset(combo))
        return out

    def describe(self) -> str:
        n = self.vertex_count
        if not self.minimal_non_faces:
            return f"full simplex on {n} vertices"
        if self.minimal_non_faces == (frozenset(range(1, n + 1)),):
            return f"boundary of a {n - 1}-simplex"
        k = len(self.minimal_non_faces)
        return f"complex on {n} vertices with {k} minimal non-face{'s' if k != 1 else ''}"

    def as_lists(self) -> list[list[int]]:
        return [sorted(s) for s in self.minimal_non_faces]


@dataclass(frozen=True)
class VertexLabeling:
    """Vertex v (1-based) stands for variables[v - 1] of a table."""

    variables: tuple[Vertex, ...]

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("labeling must be injective")

    @classmethod
    def from_table(cls, table: VariableTable) -> "VertexLabeling":
        """Even variables first, then odd ones: {i..} + {j..} = {i.., j + m..}."""
        return cls(tuple(("even", i) for i in range(table.m))
                   + tuple(("odd", k) for k in range(table.n)))

    @property
    def vertex_count(self) -> int:
        return len(self.variables)

    def vertex_of(self, var: Vertex) -> int:
        return self.variables.index(var) + 1

    def check_table(self, table: VariableTable) -> None:
        expected = {("even", i) for i in range(table.m)} | {("odd", k) for k in range(table.n)}
        if set(self.variables) != expected:
            raise ValueError("labeling does not biject onto the table's variables")

    def support(self, mon: Monomial) -> frozenset[int]:
        verts = [self.vertex_of(("even", i)) for i, e in enumerate(mon.exps) if e]
        verts += [self.vertex_of(("odd", k)) for k in mon.odd]
        return frozenset(verts)

    def monomial(self, sigma: Iterable[int], table: VariableTable) -> Monomial:
        exps = [0] * table.m
        odd = []
        for v in sigma:
            kind, idx = self.variables[v - 1]
            if kind == "even":
                exps[idx] = 1
            else:
                odd.append(idx)
        return Monomial(tuple(exps), tuple(odd))


def complex_from_ideal(ideal: MonomialIdeal, labeling: VertexLabeling) -> SimplicialComplex:
    if not is_square_free(ideal):
        raise ValueError("Stanley-Reisner correspondence needs a square-free ideal")
    gens = minimalize(ideal.generators).generators
    return SimplicialComplex(labeling.vertex_count, tuple(labeling.support(g) for g in gens))


def ideal_from_complex(K: SimplicialComplex, labeling: VertexLabeling,
                       table: VariableTable) -> MonomialIdeal:
    labeling.check_table(table)
    if K.vertex_count != labeling.vertex_count:
        raise ValueError("complex and labeling disagree on the vertex count")
    return minimalize(labeling.monomial(s, table) for s in K.minimal_non_faces)


def generalized_sr_ideal(K: SimplicialComplex,
                         vertex_generators: Sequence[Sequence[Monomial]]) -> MonomialIdeal:
    """Products of one generator per vertex over every minimal non-face of K.

    ``vertex_generators[v - 1]`` lists the ring generators of vertex v's factor,
    all monomials of one table.
    """
    if len(vertex_generators) != K.vertex_count:
        raise ValueError("need one generator list per vertex")
    if any(not gens for gens in vertex_generators):
        raise ValueError("every vertex needs at least one generator")
    out = []
    for sigma in K.minimal_non_faces:
        for choice in product(*(vertex_generators[v - 1] for v in sorted(sigma))):
            acc = choice[0]
            for mon in choice[1:]:
                res = multiply(acc, mon)
                if res is None:
                    raise ValueError("vertex generators overlap in an odd variable")
                acc = res[1]
            out.append(acc)
    return minimalize(out)
