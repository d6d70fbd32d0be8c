"""Shared constructions for the test suites that go through the package."""

from __future__ import annotations

import random

from monoreal.abelian import FgAbelianGroup, GradedGroup, IntegerMatrix, cokernel, smith_normal_form
from monoreal.homology import BarComplex
from monoreal.monomial import Monomial, VariableTable


def ses_sides(rng: random.Random) -> tuple[FgAbelianGroup, FgAbelianGroup]:
    """C_f and (B_f / A_f)_f for B = Z^n / (cols of R), A = span of cols of S in B.

    C = Z^n / (R | S) directly. For the other side, the Smith form U R V = D
    splits B into torsion and free coordinates; B_f is the free block, A_f its
    image of S there.
    """
    n = rng.randint(1, 6)
    kr, ks = rng.randint(1, 5), rng.randint(1, 4)
    R = IntegerMatrix.from_rows([[rng.randint(-6, 6) for _ in range(kr)] for _ in range(n)])
    S = IntegerMatrix.from_rows([[rng.randint(-6, 6) for _ in range(ks)] for _ in range(n)])
    C = cokernel(R.column_block(S))
    U, D, _ = smith_normal_form(R)
    r = sum(1 for i in range(min(D.shape)) if D[(i, i)] != 0)
    US = U @ S
    free_rows = [[US[(i, j)] for j in range(S.cols)] for i in range(r, n)]
    quotient = cokernel(IntegerMatrix(len(free_rows), S.cols,
                                      {(i, j): v for i, row in enumerate(free_rows)
                                       for j, v in enumerate(row) if v}))
    return FgAbelianGroup(C.free_rank), FgAbelianGroup(quotient.free_rank)


def split_sides(rng: random.Random) -> tuple[FgAbelianGroup, FgAbelianGroup]:
    """B = A (+) C: compare B_f with A_f (+) C_f."""
    a = FgAbelianGroup(rng.randint(0, 3), tuple(rng.choice((2, 3, 4)) for _ in range(rng.randint(0, 2))))
    c = FgAbelianGroup(rng.randint(0, 3), tuple(rng.choice((2, 5, 9)) for _ in range(rng.randint(0, 2))))
    b = a + c
    return FgAbelianGroup(b.free_rank), FgAbelianGroup(a.free_rank) + FgAbelianGroup(c.free_rank)


def random_group(rng: random.Random) -> FgAbelianGroup:
    return FgAbelianGroup(rng.randint(0, 3), tuple(rng.choice((2, 3, 4, 6, 8, 9)) for _ in range(rng.randint(0, 3))))


def random_graded(rng: random.Random, top: int = 4) -> GradedGroup:
    return GradedGroup({d: random_group(rng) for d in range(top + 1) if rng.random() < 0.7})


SIGN_TABLE = VariableTable((("a", 2), ("b", 4)), (("c", 1), ("e", 3)))


def letters():
    t = SIGN_TABLE
    return [t.even_var(0), t.even_var(1), t.odd_var(0), t.odd_var(1)]


def reference_product(u: Monomial, v: Monomial):
    """Product of two monomials each a unit or a single variable of SIGN_TABLE."""
    if u.is_unit():
        return {v: 1}
    if v.is_unit():
        return {u: 1}
    exps = tuple(x + y for x, y in zip(u.exps, v.exps))
    if set(u.odd) & set(v.odd):
        return {}
    sign = -1 if (u.odd and v.odd and u.odd[0] > v.odd[0]) else 1
    return {Monomial(exps, tuple(sorted(u.odd + v.odd))): sign}


def sign_degree(mon: Monomial) -> int:
    t = SIGN_TABLE
    return (sum(e * d for e, d in zip(mon.exps, t.even_degrees))
            + sum(t.odd_degrees[k] for k in mon.odd))


def reference_d_external(x, word, y, printed_last_sign: bool = False):
    """d_E of x[a_1|...|a_p]y written out term by term.

    Signs: (-1)^|x| on the left action, (-1)^eps_j on the j-th product and
    -(-1)^eps_{p-1} on the right action, eps_k = k + |x| + |a_1| + ... + |a_k|.
    ``printed_last_sign`` drops the minus on the right action term.
    """
    def eps(k):
        return k + sign_degree(x) + sum(sign_degree(a) for a in word[:k])

    out = {}

    def add(key, c):
        out[key] = out.get(key, 0) + c

    p = len(word)
    last = 1 if printed_last_sign else -1
    for xa, c in reference_product(x, word[0]).items():
        add((xa, word[1:], y), (-1) ** sign_degree(x) * c)
    for j in range(1, p):
        for ab, c in reference_product(word[j - 1], word[j]).items():
            add((x, word[:j - 1] + (ab,) + word[j + 1:], y), (-1) ** eps(j) * c)
    for ay, c in reference_product(word[-1], y).items():
        add((x, word[:-1], ay), last * (-1) ** eps(p - 1) * c)
    return {k: v for k, v in out.items() if v}


class PrintedSignBar(BarComplex):
    """Bar complex with a plus sign on the x[..](a_p y) term."""

    def d_external(self, key):
        x, word, y = key
        out = super().d_external(key)
        sgn = 1 if self._eps(x, word, len(word) - 1) % 2 else -1
        for y2, c in self.N.act(y, word[-1]).items():
            k = (x, word[:-1], y2)
            out[k] = out.get(k, 0) - 2 * sgn * c
        return out
