"""Independent reference computations used by the tests.

Nothing here calls into the package's enumeration or elimination code.
"""

from __future__ import annotations

import random
from itertools import combinations, product

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from sympy.polys.domains import ZZ


def brute_hilbert(ring, d_max: int) -> tuple[int, ...]:
    """Count every monomial of degree <= d_max in the box, then drop ideal members."""
    t = ring.table
    even = t.even_degrees
    odd = t.odd_degrees
    gens = [(g.exps, set(g.odd)) for g in ring.ideal.generators]
    counts = [0] * (d_max + 1)
    ranges = [range(d_max // d + 1) for d in even]
    odd_sets = [s for r in range(len(odd) + 1) for s in combinations(range(len(odd)), r)]
    for s in odd_sets:
        base = sum(odd[k] for k in s)
        if base > d_max:
            continue
        sset = set(s)
        for exps in product(*ranges):
            deg = base + sum(e * d for e, d in zip(exps, even))
            if deg > d_max:
                continue
            if any(gs <= sset and all(a <= b for a, b in zip(ge, exps)) for ge, gs in gens):
                continue
            counts[deg] += 1
    return tuple(counts)


def _series_mul(a, b, top):
    out = [0] * (top + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[:top + 1 - i]):
                out[i + j] += x * y
    return out


def inclusion_exclusion_hilbert(ring, d_max: int) -> tuple[int, ...]:
    """sum over subsets S of generators of (-1)^|S| * #(monomials divisible by lcm S)."""
    t = ring.table
    gens = list(ring.ideal.generators)
    total = [0] * (d_max + 1)
    for r in range(len(gens) + 1):
        for S in combinations(gens, r):
            exps = [max([g.exps[i] for g in S], default=0) for i in range(t.m)]
            odd = set().union(*[set(g.odd) for g in S]) if S else set()
            shift = sum(e * d for e, d in zip(exps, t.even_degrees)) + sum(t.odd_degrees[k] for k in odd)
            if shift > d_max:
                continue
            series = [1] + [0] * d_max
            for d in t.even_degrees:
                series = _series_mul(series, [1 if q % d == 0 else 0 for q in range(d_max + 1)], d_max)
            for k, d in enumerate(t.odd_degrees):
                if k not in odd:
                    factor = [0] * (d_max + 1)
                    factor[0] = 1
                    if d <= d_max:
                        factor[d] = 1
                    series = _series_mul(series, factor, d_max)
            sign = -1 if r % 2 else 1
            for q in range(shift, d_max + 1):
                total[q] += sign * series[q - shift]
    return tuple(total)


def sympy_invariants(rows: list[list[int]], ncols: int) -> list[int]:
    """Nonzero invariant factors via sympy's Smith normal form."""
    if not rows or ncols == 0:
        return []
    D = sympy_snf(Matrix(rows), domain=ZZ)
    out = [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]
    return sorted(out)


def random_matrix(rng: random.Random, max_dim: int = 8, bound: int = 20):
    r = rng.randint(1, max_dim)
    c = rng.randint(1, max_dim)
    style = rng.random()
    if style < 0.3:
        # low rank products produce nontrivial torsion more often
        k = rng.randint(1, min(r, c))
        A = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(r)]
        B = [[rng.randint(-3, 3) for _ in range(c)] for _ in range(k)]
        rows = [[max(-bound, min(bound, sum(A[i][t] * B[t][j] for t in range(k))))
                 for j in range(c)] for i in range(r)]
    elif style < 0.5:
        rows = [[rng.choice((0, 0, 0, rng.randint(-bound, bound))) for _ in range(c)] for _ in range(r)]
    else:
        rows = [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)]
    return rows
