"""Seeded random rings and ideals for property checks."""

from __future__ import annotations

import random

from .monomial import Monomial, MonomialIdeal, MonomialRing, VariableTable, minimalize


def random_table(rng: random.Random, max_even: int = 4, max_odd: int = 3,
                 max_even_degree: int = 6, max_odd_degree: int = 5,
                 min_even: int = 0) -> VariableTable:
    m = rng.randint(min_even, max_even)
    n = rng.randint(0, max_odd)
    even = tuple((f"x{i + 1}", rng.choice(range(2, max_even_degree + 1, 2))) for i in range(m))
    odd = tuple((f"y{k + 1}", rng.choice(range(1, max_odd_degree + 1, 2))) for k in range(n))
    return VariableTable(even, odd)


def random_monomial(rng: random.Random, table: VariableTable, max_exp: int = 3) -> Monomial:
    while True:
        exps = tuple(rng.randint(0, max_exp) for _ in range(table.m))
        odd = tuple(k for k in range(table.n) if rng.random() < 0.5)
        mon = Monomial(exps, odd)
        if not mon.is_unit():
            return mon


def random_ring(rng: random.Random, max_even: int = 4, max_odd: int = 3, max_gens: int = 5,
                max_exp: int = 3, max_even_degree: int = 6, max_odd_degree: int = 5,
                min_even: int = 0) -> MonomialRing:
    table = random_table(rng, max_even, max_odd, max_even_degree, max_odd_degree, min_even)
    if table.m == 0 and table.n == 0:
        return MonomialRing.build(table)
    gens = [random_monomial(rng, table, max_exp) for _ in range(rng.randint(0, max_gens))]
    return MonomialRing.build(table, gens)


def random_square_free(rng: random.Random, max_vertices: int = 10, max_gens: int = 6,
                       degree_two: bool = False) -> MonomialRing:
    """Square-free ideal on at most ``max_vertices`` variables."""
    total = rng.randint(1, max_vertices)
    m = rng.randint(0, total)
    n = total - m
    even = tuple((f"x{i + 1}", 2 if degree_two else rng.choice((2, 4, 6))) for i in range(m))
    odd = tuple((f"y{k + 1}", rng.choice((1, 3, 5))) for k in range(n))
    table = VariableTable(even, odd)
    gens = []
    for _ in range(rng.randint(0, max_gens)):
        exps = tuple(int(rng.random() < 0.4) for _ in range(m))
        odd_sup = tuple(k for k in range(n) if rng.random() < 0.4)
        mon = Monomial(exps, odd_sup)
        if not mon.is_unit():
            gens.append(mon)
    return MonomialRing.build(table, gens)


def shuffled(rng: random.Random, ideal: MonomialIdeal) -> MonomialIdeal:
    gens = list(ideal.generators)
    rng.shuffle(gens)
    return minimalize(gens)
