from fractions import Fraction
from itertools import combinations

import pytest

from etalecup.arith import crt_combine
from etalecup.errors import NotTorsion, Unsupported
from etalecup.ideles import (
    IdeleRep,
    cs_mod_n,
    cs_torsion_n,
    idele_reduce,
    torsion_coordinates,
    torsion_triple,
)
from etalecup.local import REAL, Place, precision_exponent

from oracles import euler_legendre, kronecker_weber_count

PRIMES = [2, 3, 5, 7, 11, 13]
SETS = [S for r in (1, 2) for S in combinations(PRIMES, r)]


def test_crt_examples():
    assert crt_combine([(1, 3), (2, 5)]) == (7, 15)
    # a direct scan of 0..179 finds 31, the unique solution
    scan = [x for x in range(180) if x % 4 == 3 and x % 9 == 4 and x % 5 == 1]
    assert scan == [31]
    assert crt_combine([(3, 4), (4, 9), (1, 5)]) == (31, 180)


@pytest.mark.parametrize("S", SETS)
@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_cs_mod_n_order_matches_cyclotomic_count(S, n):
    assert cs_mod_n(S, n).order == kronecker_weber_count(S, n, precision_exponent)


def test_cs_mod_n_examples():
    assert cs_mod_n((5,), 2).invariants == (2,)
    assert cs_mod_n((5, 29), 2).invariants == (2, 2)
    # the cubic subfield of Q(zeta_9) is unramified outside 3
    assert cs_mod_n((3,), 3).invariants == (3,)


@pytest.mark.parametrize("S, inv", [((5, 13), (2, 2)), ((5,), (2,)), ((3,), (2,)), ((2,), (2,))])
def test_cs_torsion_examples(S, inv):
    assert cs_torsion_n(S, 2).invariants == inv


def test_cs_torsion_odd():
    assert cs_torsion_n((3,), 3).order == 1
    assert cs_torsion_n((7,), 3).invariants == (3,)
    assert cs_torsion_n((2, 5), 4).invariants == (2, 4)


@pytest.mark.parametrize("S", SETS)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_generators_have_unit_coordinates(S, n):
    for G in (cs_mod_n(S, n), cs_torsion_n(S, n)):
        for i, g in enumerate(G.generators):
            assert G.coordinates(g) == tuple(1 if j == i else 0 for j in range(G.rank))


def test_principal_ideles_vanish():
    G = cs_mod_n((5,), 2)
    assert idele_reduce(IdeleRep.principal(7, (5,), 2), G) == (0,)
    assert idele_reduce(IdeleRep.trivial(2), G) == (0,)
    for q in (Fraction(-3), Fraction(10, 7), Fraction(-45, 11)):
        for S in [(5,), (2, 3), (3, 7)]:
            H = cs_mod_n(S, 2)
            assert not any(idele_reduce(IdeleRep.principal(q, S, 2), H))


@pytest.mark.parametrize("p, q", [(5, 13), (5, 29), (13, 17), (3, 7), (5, 11)])
def test_prime_at_its_own_place_against_legendre(p, q):
    G = cs_mod_n((p, q), 2)
    x = IdeleRep.from_dict(2, {Place(p): p})
    coords = idele_reduce(x, G)
    # p at p equals p^-1 away from p, i.e. at q; it is a square there iff (p/q) = 1
    assert (not any(coords)) == (euler_legendre(p, q) == 1)


def test_reduce_is_a_homomorphism():
    S, n = (2, 3, 7), 4
    G = cs_mod_n(S, n)
    xs = [
        IdeleRep.from_dict(n, {Place(2): 6, Place(7): Fraction(3, 49), REAL: -1}),
        IdeleRep.from_dict(n, {Place(3): 10, Place(11): 11}),
        IdeleRep.from_dict(n, {Place(2): Fraction(1, 5), Place(7): 2}),
    ]
    for a in xs:
        for b in xs:
            assert G.coordinates(a * b) == G.add(G.coordinates(a), G.coordinates(b))


def test_torsion_triple_examples():
    S = (5, 13)
    t = torsion_triple(IdeleRep.from_dict(2, {Place(5): -1}), S)
    assert t.b == 1 and t.frak_b == () and t.alpha_at(Place(5)) == -1
    triv = torsion_triple(IdeleRep.trivial(2), S)
    assert torsion_coordinates(triv, S, 2) == [0, 0]
    glob = torsion_triple(IdeleRep.principal(-1, S, 2), S)
    assert torsion_coordinates(glob, S, 2) == [0, 0]
    with pytest.raises(NotTorsion):
        torsion_triple(IdeleRep.from_dict(2, {Place(5): 2}), S)


def test_twisted_triples_stay_valid_and_in_class():
    S, n = (3, 7), 6
    T = cs_torsion_n(S, n)
    for g in T.generators:
        for k in (Fraction(2), Fraction(-11, 5), Fraction(3, 49)):
            tw = g.twist(k)
            assert tw.check() == []
            assert T.coordinates(torsion_triple(tw.idele(), S)) == T.coordinates(g)


def test_empty_S_is_unsupported():
    with pytest.raises(Unsupported):
        cs_mod_n((), 2)
