"""Realization plan: the spaces, complex, fibration and Z-model attached to a ring."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from .monomial import Monomial, MonomialRing, VariableTable, multiply
from .parser import format_presentation
from .polarization import Pair, PolarizationData, polarize, polarized_name
from .stanley_reisner import (
    SimplicialComplex,
    VertexLabeling,
    complex_from_ideal,
    generalized_sr_ideal,
)


@dataclass(frozen=True)
class Factor:
    variable: str
    space: str  # "EM(4)", "Sphere(1)", "(CP^inf)^2"
    degree: int


@dataclass(frozen=True)
class Coordinate:
    """Coordinate (i, j) of the fibration base; ``rule`` is written inside block i."""

    pair: Pair
    rule: str


def _coordinates(omega_bar, letter: str) -> tuple[Coordinate, ...]:
    return tuple(Coordinate(p, f"{letter}_{p[1]}*{letter}_1^-1") for p in omega_bar)


def z_prime_name(i: int, j: int, k: int) -> str:
    return f"z'_{i}_{j}_{k}"


def z_name(i: int, k: int) -> str:
    return f"z_{i}_{k}"


@dataclass(frozen=True)
class ZModel:
    """Q'/L' over products of CP^inf, and its quotient Q/L."""

    c: tuple[int, ...]
    factors: tuple[Factor, ...]
    q_prime: MonomialRing
    q: MonomialRing
    generator_map: tuple[tuple[str, Monomial], ...]  # P' generator -> image in Q'
    coordinates: tuple[Coordinate, ...]

    def image(self, name: str) -> Monomial:
        return dict(self.generator_map)[name]


def _product(mons, table: VariableTable) -> Monomial:
    acc = Monomial((0,) * table.m, ())
    for mon in mons:
        res = multiply(acc, mon)
        if res is None:
            raise ValueError("product repeats an odd variable")
        acc = res[1]
    return acc


def direct_l(source: MonomialRing, c: tuple[int, ...], table: VariableTable) -> MonomialRing:
    """Q/L from the generators of A: x_i^a -> every degree-a monomial in z_i1..z_ic_i."""
    offsets = [sum(c[:i]) for i in range(len(c))]
    gens = []
    for g in source.ideal.generators:
        per_block = []
        for i, a in enumerate(g.exps):
            cols = range(offsets[i], offsets[i] + c[i])
            per_block.append(list(combinations_with_replacement(cols, a)))
        for choice in product(*per_block):
            exps = [0] * table.m
            for cols in choice:
                for col in cols:
                    exps[col] += 1
            gens.append(Monomial(tuple(exps), g.odd))
    return MonomialRing.build(table, gens)


def build_z_model(data: PolarizationData, K: SimplicialComplex) -> ZModel:
    source = data.source.table
    c = tuple(d // 2 for d in source.even_degrees)
    odd = source.odd_vars
    qp_even = tuple((z_prime_name(i, j, k + 1), 2) for i, j in data.omega for k in range(c[i - 1]))
    qp_table = VariableTable(qp_even, odd)
    q_table = VariableTable(
        tuple((z_name(i + 1, k + 1), 2) for i in range(source.m) for k in range(c[i])), odd)

    # vertex generators: z'_ij1..z'_ijc for (i, j), then y_k
    vertex_gens, col = [], 0
    unit = (0,) * qp_table.m
    for i, _ in data.omega:
        gens = []
        for _ in range(c[i - 1]):
            exps = list(unit)
            exps[col] = 1
            gens.append(Monomial(tuple(exps), ()))
            col += 1
        vertex_gens.append(gens)
    for k in range(source.n):
        vertex_gens.append([Monomial(unit, (k,))])
    l_prime = generalized_sr_ideal(K, vertex_gens)

    gmap = []
    ptable = data.polarized.table
    for v, gens in enumerate(vertex_gens):
        name = ptable.names[v]
        gmap.append((name, _product(gens, qp_table)))
    factors = tuple(Factor(polarized_name(i, j), f"(CP^inf)^{c[i - 1]}", 2 * c[i - 1])
                    for i, j in data.omega)
    return ZModel(c, factors, MonomialRing(qp_table, l_prime),
                  direct_l(data.source, c, q_table), tuple(gmap),
                  _coordinates(data.omega_bar, "v"))


@dataclass(frozen=True)
class RealizationPlan:
    source: MonomialRing
    polarization: PolarizationData
    complex: SimplicialComplex
    labeling: VertexLabeling
    factors: tuple[Factor, ...]
    coordinates: tuple[Coordinate, ...]
    z_model: ZModel
    exact_cohomology: bool
    free_split: bool = True
    fiber: str = "X_A"

    @property
    def predicted(self) -> MonomialRing:
        """Presentation predicted for the torsion-free cohomology of the fiber."""
        return self.source

    def to_dict(self) -> dict:
        src, pol, z = self.source, self.polarization, self.z_model
        ptable = pol.polarized.table
        degs = src.table.even_degrees
        return {
            "source": {
                "presentation": format_presentation(src),
                "ideal": src.format_ideal(),
            },
            "polarization": {
                "a": list(pol.a),
                "omega": [list(p) for p in pol.omega],
                "omega_bar": [list(p) for p in pol.omega_bar],
                "presentation": format_presentation(pol.polarized),
                "ideal": pol.polarized.format_ideal(),
            },
            "complex": {
                "vertices": list(ptable.names),
                "minimal_non_faces": self.complex.as_lists(),
                "description": self.complex.describe(),
            },
            "factors": [{"variable": f.variable, "space": f.space} for f in self.factors],
            "fibration": {
                "base": [{"pair": list(c.pair), "space": f"EM({degs[c.pair[0] - 1]})"}
                         for c in self.coordinates],
                "coordinates": [{"pair": list(c.pair), "rule": c.rule} for c in self.coordinates],
                "fiber": self.fiber,
            },
            "predicted_cohomology": {
                "space": self.fiber,
                "torsion_free_quotient": format_presentation(self.predicted),
            },
            "z_model": {
                "c": list(z.c),
                "factors": [{"replaces": f.variable, "space": f.space,
                             "variables": [z_prime_name(i, j, k + 1) for k in range(z.c[i - 1])]}
                            for f, (i, j) in zip(z.factors, pol.omega)],
                "q_prime": format_presentation(z.q_prime),
                "L_prime": z.q_prime.format_ideal(),
                "q": format_presentation(z.q),
                "L": z.q.format_ideal(),
                "generator_map": [{"source": name, "image": img.format(z.q_prime.table)}
                                  for name, img in z.generator_map],
                "coordinates": [{"pair": list(c.pair), "rule": c.rule} for c in z.coordinates],
                "fiber": "Z_A",
            },
            "flags": {
                "exact_cohomology": self.exact_cohomology,
                "free_split": self.free_split,
            },
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def emit_plan(ring: MonomialRing) -> RealizationPlan:
    data = polarize(ring)
    ptable = data.polarized.table
    labeling = VertexLabeling.from_table(ptable)
    K = complex_from_ideal(data.polarized.ideal, labeling)
    degs = ring.table.even_degrees
    factors = tuple(Factor(name, f"EM({d})", d) for name, d in ptable.even_vars)
    factors += tuple(Factor(name, f"Sphere({d})", d) for name, d in ptable.odd_vars)
    return RealizationPlan(
        source=ring,
        polarization=data,
        complex=K,
        labeling=labeling,
        factors=factors,
        coordinates=_coordinates(data.omega_bar, "u"),
        z_model=build_z_model(data, K),
        exact_cohomology=all(d == 2 for d in degs),
    )


def collapses_to_main_model(plan: RealizationPlan) -> bool:
    """With every |x_i| = 2: c_i = 1, L' is I' and L is I under z'_ij1 -> x'_ij, z_i1 -> x_i."""
    z = plan.z_model
    if any(ci != 1 for ci in z.c):
        return False
    pol = plan.polarization.polarized

    def same(model: MonomialRing, main: MonomialRing) -> bool:
        # columns line up one to one, so equal generators mean equal ideals after renaming
        return (model.table.even_degrees == main.table.even_degrees
                and model.table.odd_vars == main.table.odd_vars
                and model.ideal.generators == main.ideal.generators)

    return same(z.q_prime, pol) and same(z.q, plan.source)
