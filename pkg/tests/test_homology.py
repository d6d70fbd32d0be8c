import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monoreal.abelian import FgAbelianGroup
from monoreal.homology import (
    BarComplex,
    GradedAlgebra,
    KoszulComplex,
    RestrictedModule,
    RingModule,
    TrivialModule,
    TruncationError,
    bar_differential,
    bar_tor,
    build_action,
    check_tor_concentration,
    free_action,
    koszul_tor,
    z_model_compare,
)
from monoreal.monomial import Monomial, MonomialRing, VariableTable, hilbert_function
from monoreal.parser import parse_presentation
from monoreal.plan import emit_plan
from monoreal.polarization import polarize
from monoreal.sampling import random_ring
from helpers import SIGN_TABLE, PrintedSignBar, letters, reference_d_external

GOLDEN = "ring { even: x:4; odd: y:1 } ideal { x^2*y }"


def golden_action(d_max):
    return build_action(polarize(parse_presentation(GOLDEN)), d_max, verify=True)


def bar_over_w(action, p_max, d_max):
    M = RestrictedModule(action)
    return bar_tor(M, M.weight_algebra(), TrivialModule(M.weight_dim), p_max, d_max)


# ---------------------------------------------------------------- Koszul


def test_golden_koszul_tor():
    tor = koszul_tor(golden_action(40))
    assert tor.ranks(0)[:10] == (1, 1, 0, 0, 1, 1, 0, 0, 1, 0)
    assert tor.nonzero_higher() == []
    ring = parse_presentation(GOLDEN)
    assert check_tor_concentration(tor, hilbert_function(ring, 40)).passed


def test_tor_of_w_over_itself():
    tor = koszul_tor(free_action([("w", 2), ("v", 4)], 12))
    assert tor[(0, 0)] == FgAbelianGroup(1)
    assert all(g.is_zero() for pq, g in tor.entries.items() if pq != (0, 0))


def test_tor_of_z_over_polynomial_ring():
    # Z = Z[w]/(w): Tor_0 = Z in degree 0, Tor_1 = Z in degree |w|
    w = Monomial((1,), ())
    tor = koszul_tor(free_action([("w", 2)], 8, [w]))
    assert tor[(0, 0)] == FgAbelianGroup(1)
    assert tor[(1, 2)] == FgAbelianGroup(1)
    assert sum(g.free_rank for g in tor.entries.values()) == 2


def test_torsion_is_reported():
    # Z[w] acting on Z[x] through w -> 2x: Tor_0 picks up Z/2 in every positive degree
    from monoreal.action import LinearForm, ModuleAction
    ring = MonomialRing.build(VariableTable((("x", 2),), ()))
    action = ModuleAction(ring, [LinearForm("w", 2, ((0, 2),))], 6)
    tor = koszul_tor(action)
    assert tor[(0, 2)] == FgAbelianGroup(0, (2,))
    assert tor.torsion_at_zero() == [2, 4, 6]


def test_koszul_squares_to_zero_golden():
    action = golden_action(24)
    K = KoszulComplex(action)
    for weight in action.weights(24):
        for p in range(1, K.N):
            assert (K.differential(p, weight) @ K.differential(p + 1, weight)).is_zero()


# ---------------------------------------------------------------- bar


def test_bar_examples():
    # B(Z, Z[w], Z): Tor_1 = Z in degree |w|
    A = GradedAlgebra(MonomialRing.build(VariableTable((("w", 2),), ())))
    tor = bar_tor(TrivialModule(), A, TrivialModule(), 3, 8)
    assert tor[(0, 0)] == FgAbelianGroup(1) and tor[(1, 2)] == FgAbelianGroup(1)
    assert tor.nonzero_higher() == [(1, 2)]
    # the free module A is acyclic in positive p
    tor = bar_tor(RingModule(A), A, TrivialModule(), 3, 8)
    assert tor.nonzero_higher() == [] and tor[(0, 0)] == FgAbelianGroup(1)


def test_bar_matches_koszul_golden():
    action = golden_action(10)
    assert bar_over_w(action, 3, 10).agrees_with(koszul_tor(action)) == []


def test_validity_mask_flags_top_length():
    A = GradedAlgebra(MonomialRing.build(VariableTable((("w", 2),), ())))
    B = BarComplex(TrivialModule(), A, TrivialModule(), 2, 10)
    assert B.valid(1, 10) and B.valid(2, 4) and not B.valid(2, 6)


def test_truncation_is_loud():
    A = GradedAlgebra(MonomialRing.build(VariableTable((("w", 2),), ())))
    B = BarComplex(TrivialModule(), A, TrivialModule(), 1, 4)
    with pytest.raises(TruncationError):
        bar_differential({((), (Monomial((3,), ()),), ()): 1}, B)


def bar_matrices_square_to_zero(B, p_max, d_max):
    for q in range(d_max + 1):
        weights = set()
        for p in range(p_max + 1):
            weights |= set(B.basis(p, q))
        for w in weights:
            for p in range(2, p_max + 1):
                if not (B.external_matrix(p - 1, q, w) @ B.external_matrix(p, q, w)).is_zero():
                    return False
    return True


def test_bar_matrices_square_to_zero_golden():
    action = golden_action(10)
    M = RestrictedModule(action)
    B = BarComplex(M, M.weight_algebra(), TrivialModule(M.weight_dim), 4, 10)
    assert bar_matrices_square_to_zero(B, 4, 10)


# --------------------------------------------------------------- signs


def test_external_signs_on_all_short_words():
    ring = MonomialRing.build(SIGN_TABLE)
    A = GradedAlgebra(ring)
    B = BarComplex(RingModule(A, "right"), A, RingModule(A, "left"), 3, 40)
    ends = [SIGN_TABLE.unit()] + letters()
    count = 0
    for p in range(1, 4):
        for word in product(letters(), repeat=p):
            for x in ends:
                for y in ends:
                    got = {k: v for k, v in B.d_external((x, tuple(word), y)).items() if v}
                    assert got == reference_d_external(x, tuple(word), y)
                    count += 1
    assert count == 25 * (4 + 16 + 64)


def exterior_dga():
    """Lambda[e1, e2] (x) Z[t1, t2] with d e_i = 2 t_i, extended as a derivation."""
    t = VariableTable((("t1", 2), ("t2", 2)), (("e1", 1), ("e2", 1)))
    ring = MonomialRing.build(t)

    def d(mon):
        out = {}
        for pos, k in enumerate(mon.odd):
            exps = list(mon.exps)
            exps[k] += 1
            rest = tuple(j for j in mon.odd if j != k)
            key = Monomial(tuple(exps), rest)
            out[key] = out.get(key, 0) + 2 * (-1) ** pos
        return {k: v for k, v in out.items() if v}

    return GradedAlgebra(ring, differential=d)


@pytest.mark.parametrize("ends", ["ZZ", "AZ", "ZA", "AA"])
def test_total_differential_squares_to_zero(ends):
    A = exterior_dga()
    M = RingModule(A, "right") if ends[0] == "A" else TrivialModule()
    N = RingModule(A, "left") if ends[1] == "A" else TrivialModule()
    B = BarComplex(M, A, N, 3, 8)
    checked = 0
    for p in range(3):
        for q in range(7):
            for keys in B.basis(p, q).values():
                for key in keys:
                    once = bar_differential({key: 1}, B)
                    twice = bar_differential(once, B)
                    assert not any(twice.values()), key
                    checked += 1
    assert checked > 0


def test_printed_last_sign_breaks_d_squared():
    ring = MonomialRing.build(SIGN_TABLE)
    A = GradedAlgebra(ring)
    a, b = SIGN_TABLE.even_var(0), SIGN_TABLE.even_var(1)
    key = ((), (a, b), SIGN_TABLE.unit())
    good = BarComplex(TrivialModule(), A, RingModule(A, "left"), 3, 40)
    assert not any(bar_differential(bar_differential({key: 1}, good), good).values())
    bad = PrintedSignBar(TrivialModule(), A, RingModule(A, "left"), 3, 40)
    twice = bar_differential(bar_differential({key: 1}, bad), bad)
    assert {k: v for k, v in twice.items() if v} == {((), (), Monomial((1, 1), ())): -2}


# ------------------------------------------------------------ properties


@settings(max_examples=12, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_tor_concentration_random(seed):
    ring = random_ring(random.Random(seed), max_even=3, max_odd=2)
    action = build_action(polarize(ring), 14)
    assert check_tor_concentration(koszul_tor(action), hilbert_function(ring, 14)).passed


@settings(max_examples=8, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_bar_equals_koszul_random(seed):
    ring = random_ring(random.Random(seed), max_even=2, max_odd=2, max_even_degree=4)
    action = build_action(polarize(ring), 8)
    assert bar_over_w(action, 3, 8).agrees_with(koszul_tor(action)) == []


@settings(max_examples=12, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_euler_characteristic(seed):
    ring = random_ring(random.Random(seed), max_even=3, max_odd=2)
    action = build_action(polarize(ring), 12)
    K = KoszulComplex(action)
    tor = koszul_tor(action)
    for q in range(13):
        chain = sum((-1) ** p * K.term_rank(p, q) for p in range(K.N + 1))
        homology = sum((-1) ** p * tor[(p, q)].free_rank for p in range(tor.p_max + 1))
        assert chain == homology


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_action_commutes(seed):
    ring = random_ring(random.Random(seed), max_even=3, max_odd=1)
    action = build_action(polarize(ring), 10)
    assert action.check_commutation() == []


# --------------------------------------------------------------- Z-model


def test_z_model_golden():
    plan = emit_plan(parse_presentation(GOLDEN))
    rep = z_model_compare(plan, 40)
    assert rep.passed
    q = plan.z_model.q
    assert [g.format(q.table) for g in rep.substituted] == ["z_1_1^2*y", "z_1_1*z_1_2*y", "z_1_2^2*y"]
    (gen, img, witness), = rep.images
    qp = plan.z_model.q_prime.table
    assert img.format(qp) == "z'_1_1_1*z'_1_1_2*z'_1_2_1*z'_1_2_2*y"
    assert witness.format(qp) == "z'_1_1_1*z'_1_2_1*y"


def test_z_model_degree_two_square_free():
    plan = emit_plan(parse_presentation("ring { even: a:2, b:2; odd: y:1 } ideal { a*b*y }"))
    rep = z_model_compare(plan, 16)
    assert rep.passed
    assert plan.z_model.q.ideal.generators == plan.polarization.polarized.ideal.generators


def test_z_model_detects_escape():
    plan = emit_plan(parse_presentation(GOLDEN))
    z = plan.z_model
    bad = MonomialRing.build(z.q_prime.table, [Monomial((2, 0, 0, 0), (0,))])
    broken = type(z)(z.c, z.factors, bad, z.q, z.generator_map, z.coordinates)
    rep = z_model_compare(type(plan)(**{**plan.__dict__, "z_model": broken}), 12)
    assert not rep.passed and rep.escaped and not rep.ideals_match
