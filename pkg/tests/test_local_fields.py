import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from etalecup.errors import InvalidInput, NotInKernel
from etalecup.local import (
    REAL,
    LocalAlgebra,
    Place,
    hilbert_symbol,
    local_class,
    local_hilbert90,
    local_norm_test,
    precision_exponent,
    roots_of_unity_generator,
    trivial_class,
)
from etalecup.quadratic import build_field

from oracles import brute_hilbert, small_primes

PRIMES = small_primes(14)
nonzero = st.integers(min_value=-3000, max_value=3000).filter(bool)


def test_local_class_examples():
    assert local_class(4, Place(5), 2).is_trivial()
    assert not local_class(2, Place(5), 2).is_trivial()
    c = local_class(-3, REAL, 2)
    assert c.unit_coords == (1,)


def test_precision_exponent():
    assert precision_exponent(2, 2) == 5
    assert precision_exponent(3, 9) == 7
    assert precision_exponent(5, 2) == 3


@given(nonzero, nonzero, st.sampled_from(PRIMES), st.sampled_from([2, 3, 4, 6]))
@settings(max_examples=300, deadline=None)
def test_local_class_is_a_homomorphism(a, b, p, n):
    v = Place(p)
    assert local_class(a * b, v, n) == local_class(a, v, n) + local_class(b, v, n)
    assert local_class(Fraction(a) ** n, v, n).is_trivial()


@given(nonzero, st.sampled_from(PRIMES), st.sampled_from([2, 3, 4, 6, 8, 9]))
@settings(max_examples=200, deadline=None)
def test_representative_round_trip(a, p, n):
    c = local_class(a, Place(p), n)
    assert local_class(c.representative(), Place(p), n) == c


def test_local_class_rejects_zero():
    with pytest.raises(InvalidInput):
        local_class(0, Place(3), 2)
    assert trivial_class(Place(7), 3).is_trivial()


def test_roots_of_unity_generator_orders():
    for p in PRIMES:
        for n in (2, 3, 4, 6):
            zeta, order = roots_of_unity_generator(p, n)
            expected = math.gcd(n, p - 1) if p != 2 else math.gcd(n, 2)
            assert order == expected
            k = precision_exponent(p, n) + 2
            mod = p**k
            z = zeta.numerator % mod
            assert pow(z, order, mod) == 1
            assert all(pow(z, order // q, mod) != 1 for q in range(2, order + 1) if order % q == 0 and all(q % r for r in range(2, q)))


@pytest.mark.parametrize(
    "a, b, v, expected",
    [(-1, -1, REAL, -1), (2, 5, Place(5), -1), (3, 7, Place(2), -1), (1, -7, Place(7), 1)],
)
def test_hilbert_symbol_examples(a, b, v, expected):
    assert hilbert_symbol(a, b, v) == expected


@given(nonzero, nonzero, st.sampled_from(PRIMES))
@settings(max_examples=400, deadline=None)
def test_hilbert_symbol_matches_conic_search(a, b, p):
    assert hilbert_symbol(a, b, Place(p)) == brute_hilbert(a, b, p)


@given(nonzero, nonzero, nonzero)
@settings(max_examples=200, deadline=None)
def test_hilbert_symbol_bilinear_and_symmetric(a, b, c):
    for p in (2, 3, 5, 7):
        v = Place(p)
        assert hilbert_symbol(a * b, c, v) == hilbert_symbol(a, c, v) * hilbert_symbol(b, c, v)
        assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
        assert hilbert_symbol(a, -a, v) == 1


def test_local_norm_test_examples():
    assert local_norm_test(5, Place(5), build_field(29))
    # N(i) = 1 and norms from C are positive, so -1 is not a norm at infinity
    assert build_field(-1).sqrt.norm() == 1
    assert not local_norm_test(-1, REAL, build_field(-1))
    assert local_norm_test(-1, REAL, build_field(2))
    # units are norms from unramified extensions
    for u in (2, 3, 6, -1, 11):
        assert local_norm_test(u, Place(7), build_field(5))


@pytest.mark.parametrize("m", [5, 29, -3, 13, -1, 2, -2, 3, 17, 41])
@pytest.mark.parametrize("p", [0, 2, 3, 5, 7, 13, 29])
def test_local_hilbert90_random_norm_one(m, p):
    L = build_field(m)
    v = Place(p)
    alg = LocalAlgebra(L, v, 2)
    rng = random.Random(m * 100 + p)
    for _ in range(5):
        w = L.element(rng.randint(-9, 9) or 1, rng.randint(-9, 9))
        x = alg.embed(w)
        c = alg.div(x, alg.conj(x))
        beta = local_hilbert90(c, L, v, 2)
        assert alg.is_close_to_one(alg.div(alg.div(beta, alg.conj(beta)), c))


def test_local_hilbert90_defining_cases():
    L = build_field(5)
    alg = LocalAlgebra(L, Place(5), 2)
    beta = local_hilbert90(alg.embed_base(-1), L, Place(5), 2)
    assert alg.is_close_to_one(alg.div(alg.div(beta, alg.conj(beta)), alg.embed_base(-1)))
    # sqrt(p) / sigma(sqrt(p)) = -1
    s = alg.embed(L.sqrt)
    assert alg.is_close_to_one(alg.div(alg.div(s, alg.conj(s)), alg.embed_base(-1)))
    split = LocalAlgebra(build_field(29), Place(5), 2)
    u = Fraction(7, 3)
    assert local_hilbert90((u, 1 / u), build_field(29), Place(5)) == (u, 1)
    one = local_hilbert90(split.one(), build_field(29), Place(5))
    assert split.is_close_to_one(one)


def test_local_hilbert90_rejects_nontrivial_norm():
    L = build_field(29)
    with pytest.raises(NotInKernel):
        local_hilbert90((Fraction(2), Fraction(1)), L, Place(5))
    with pytest.raises(NotInKernel):
        local_hilbert90((1, -1), L, REAL)
