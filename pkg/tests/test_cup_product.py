import random
from fractions import Fraction
from itertools import combinations

import pytest

from etalecup.cohomology import enumerate_torsors, induce_torsor, torsor_for, trivial_torsor
from etalecup.cup import (
    HighClass,
    cup_class,
    cup_exponent,
    cup_h1_h1,
    cup_high,
    cup_unpunctured,
    cup_value,
    h1_basis,
    h2_evaluate,
    pairing_table,
    qualifying_pairs,
    restrict_to_real,
    solve_descent,
    torsor_product,
    verify_reciprocity,
)
from etalecup.errors import InvalidInput, Unsupported
from etalecup.ideles import IdeleRep, cs_torsion_n, torsion_triple
from etalecup.local import Place
from etalecup.quadratic import FieldIdeal

from oracles import small_primes


def test_cup_exponent():
    assert cup_exponent(2, 2) == 3
    assert cup_exponent(2, 1) == 4
    assert cup_exponent(4, 2) == 12
    # even n: congruent to n^2 / 2d modulo n
    for n in (2, 4, 6, 8, 10):
        for d in (1, 2):
            if n % d == 0:
                assert (cup_exponent(n, d) - n * n // (2 * d)) % n == 0
    assert cup_exponent(3, 3) == 6


def test_descent_trivial_alpha():
    S = (5, 13)
    d = solve_descent(torsor_for(5, S), torsion_triple(IdeleRep.trivial(2), S))
    assert d.t == d.field.one
    assert d.I == FieldIdeal.unit(d.field)
    for v, b in d.beta.items():
        alg = d.algebra(v)
        assert alg.is_close_to_one(alg.div(b, alg.conj(b)))


@pytest.mark.parametrize("p", [5, 13, 17, 29])
def test_descent_minus_one_at_p(p):
    S = (p,)
    alpha = torsion_triple(IdeleRep.from_dict(2, {Place(p): -1}), S)
    d = solve_descent(torsor_for(p, S), alpha)
    assert d.t == d.field.one
    alg = d.algebra(Place(p))
    beta = d.beta[Place(p)]
    assert alg.is_close_to_one(alg.div(alg.div(beta, alg.conj(beta)), alg.embed_base(-1)))
    # N(beta) is -p up to squares: the class of sqrt(p)
    assert d.norm_beta(Place(p)) / -p > 0


@pytest.mark.parametrize("q, split", [(29, True), (13, False)])
def test_descent_at_the_other_prime(q, split):
    S = (5, q)
    alpha = torsion_triple(IdeleRep.from_dict(2, {Place(q): -1}), S)
    d = solve_descent(torsor_for(5, S), alpha)
    assert d.t == d.field.one
    assert d.check() == []
    assert d.algebra(Place(q)).kind == ("split" if split else "nonsplit")


def test_cup_examples():
    assert cup_h1_h1(trivial_torsor((5,)), torsor_for(5, (5,)), (5,)) == (0,)
    assert cup_h1_h1(torsor_for(5, (5, 29)), torsor_for(29, (5, 29)), (5, 29)) == (0, 0)
    assert any(cup_h1_h1(torsor_for(5, (5, 13)), torsor_for(13, (5, 13)), (5, 13)))


def test_pairing_table_examples():
    t5 = pairing_table((5,))
    assert len(t5.basis) == 1
    assert t5.entry(0, 0) == (0,)
    t = pairing_table((5, 29))
    assert t.vanishes(0, 1) and t.vanishes(1, 0)
    t = pairing_table((5, 13))
    assert not t.vanishes(0, 1) and t.is_symmetric()
    assert len(t.rows()) == 4
    with pytest.raises(Unsupported):
        pairing_table((5,), 4)


PRIMES_50 = small_primes(50)
PAIRS_50 = list(combinations(PRIMES_50, 2))


def _add(a, b):
    return tuple((x + y) % 2 for x, y in zip(a, b))


@pytest.mark.parametrize("S", PAIRS_50)
def test_bilinearity_and_commutativity(S):
    basis = h1_basis(S)
    for y, yp in combinations(basis, 2):
        yy = torsor_product(y, yp)
        for z in basis:
            assert cup_h1_h1(yy, z, S) == _add(cup_h1_h1(y, z, S), cup_h1_h1(yp, z, S))
            assert cup_h1_h1(z, yy, S) == _add(cup_h1_h1(z, y, S), cup_h1_h1(z, yp, S))
    for y in basis:
        for z in basis:
            assert cup_h1_h1(y, z, S) == cup_h1_h1(z, y, S)


@pytest.mark.parametrize("S", [(5,), (3,), (2,), (2, 3), (3, 7), (2, 5, 13), (7, 11)])
def test_self_products_restrict_like_squares(S):
    # restriction to R is a ring map into F_2[w]
    for y in enumerate_torsors(S):
        r = restrict_to_real(y)[0]
        assert restrict_to_real(cup_class(y, y, S)) == (r * r % 2,)


def test_x_cup_x_equals_x_cup_minus_one():
    # (a, a) = (a, -1) for Hilbert symbols gives y cup y = y cup x_{-4}
    for S in [(2, 3), (2, 5), (2, 7), (2, 13)]:
        minus = torsor_for(-4, S)
        for y in enumerate_torsors(S):
            assert cup_h1_h1(y, y, S) == cup_h1_h1(y, minus, S)


@pytest.mark.parametrize("seed", range(6))
def test_choice_independence(seed):
    rng = random.Random(seed)
    S = tuple(sorted(rng.sample([2, 3, 5, 7, 11, 13, 17], 2)))
    T = cs_torsion_n(S, 2)
    torsors = enumerate_torsors(S)
    for g in T.generators:
        for y in torsors:
            base = [cup_value(y, z, g, S) for z in torsors]
            for k in range(3):
                tw = g.twist(Fraction(rng.choice([1, -1, 3, 7, 10]), rng.choice([1, 11, 19])))
                r = random.Random(rng.getrandbits(32))
                assert [cup_value(y, z, tw, S, rng=r) for z in torsors] == base


@pytest.mark.parametrize("S, n", [((5, 13), 4), ((5, 13), 6), ((13, 17), 6), ((3, 7), 4), ((2, 5), 4)])
def test_induced_classes(S, n):
    ys = [torsor_for(p if p % 4 == 1 else -p, S, n) for p in S if p != 2]
    z = torsor_for(S[-1], S, n) if S[-1] % 4 == 1 else torsor_for(-S[-1], S, n)
    for y in ys:
        vals = cup_h1_h1(y, z, S, n)
        # (n/2 a) cup (n/2 b) = (n/2)^2 (a cup b) and the descent is choice independent
        two = cup_h1_h1(induce_torsor(torsor_for(y.disc, S), 2), induce_torsor(torsor_for(z.disc, S), 2), S, 2)
        if n % 4 == 0:
            assert not any(vals)
        for k in range(2):
            assert cup_h1_h1(y, z, S, n, rng=random.Random(k)) == vals
        assert (not any(vals)) == (not any(two)) or n % 4 == 0


def test_cup_unpunctured():
    assert cup_unpunctured(trivial_torsor(), trivial_torsor(), 2) == 0
    assert cup_unpunctured(trivial_torsor(n=3), trivial_torsor(n=3), 3) == 0
    with pytest.raises(InvalidInput):
        cup_unpunctured(torsor_for(5, (5,)), trivial_torsor(), 2)


def test_restriction_examples():
    assert restrict_to_real(torsor_for(5, (5,)), 1) == (0,)
    assert restrict_to_real(torsor_for(-8, (2,)), 1) == (1,)
    assert restrict_to_real(HighClass(3, (1,))) == (1,)


def test_high_products():
    S = (2,)
    w = torsor_for(-4, S)
    w2 = cup_class(w, w, S)
    assert restrict_to_real(w2) == (1,)
    assert cup_high(w2, w) == HighClass(3, (1,))
    x5 = torsor_for(5, (5,))
    assert cup_high(HighClass(3, (1,)), x5) == HighClass(4, (0,))
    assert cup_high(cup_class(x5, x5, (5,)), x5) == HighClass(3, (0,))
    with pytest.raises(InvalidInput):
        cup_high(w, w)


def test_h2_evaluation_is_linear():
    S, n = (3, 7), 2
    vals = cup_h1_h1(torsor_for(-3, S), torsor_for(-7, S), S)
    T = cs_torsion_n(S, n)
    for g, v in zip(T.generators, vals):
        assert h2_evaluate(vals, g, S, n) == v
    assert h2_evaluate(vals, IdeleRep.trivial(2), S, n) == 0


def test_reciprocity_small_bounds():
    rep = verify_reciprocity(30)
    assert [(r.p, r.q) for r in rep.records] == [(5, 13), (5, 17), (5, 29), (13, 17), (13, 29), (17, 29)]
    assert rep.passed
    assert verify_reciprocity(6).records == ()
    assert verify_reciprocity(6).passed


def test_qualifying_pair_count():
    ps = [p for p in small_primes(200) if p % 4 == 1]
    assert len(qualifying_pairs(200)) == len(ps) * (len(ps) - 1) // 2 == 210


def test_descent_checks_fail_on_tampering():
    S = (5, 13)
    alpha = torsion_triple(IdeleRep.from_dict(2, {Place(13): -1}), S)
    d = solve_descent(torsor_for(5, S), alpha)
    d.t = d.t * 2
    assert d.check()
