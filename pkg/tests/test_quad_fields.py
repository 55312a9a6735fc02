import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from etalecup.errors import InvalidInput, NoSolution, NotInKernel
from etalecup.forms import (
    BinaryQuadraticForm,
    class_group,
    compose_reduced,
    form_class_group,
    fundamental_unit,
    ideal_class_form,
    narrow_class_group,
    principal_generator,
    reduce_form,
)
from etalecup.local import Place, hilbert_symbol
from etalecup.norms import norm_equation_solvable, solve_legendre, solve_norm_equation
from etalecup.quadratic import (
    FieldIdeal,
    build_field,
    divisor_of,
    ideal_factor,
    ideal_hilbert90,
    primes_above,
)

from oracles import reduced_definite_forms


def squarefree(m):
    return m not in (0, 1) and all(m % (q * q) for q in range(2, math.isqrt(abs(m)) + 1))


def test_discriminants():
    assert build_field(-1).disc == -4
    assert build_field(5).disc == 5
    assert build_field(-5).disc == -20
    with pytest.raises(InvalidInput):
        build_field(12)


@pytest.mark.parametrize("m, p, kind", [(29, 5, "split"), (-1, 2, "ramified"), (5, 2, "inert"), (-5, 3, "split"), (13, 3, "split"), (2, 3, "inert")])
def test_splitting(m, p, kind):
    assert ideal_factor(build_field(m), p).kind == kind


@pytest.mark.parametrize("m", [m for m in range(-60, 60) if squarefree(m)])
def test_prime_ideals_multiply_to_p(m):
    K = build_field(m)
    for p in (2, 3, 5, 7, 11):
        st_ = ideal_factor(K, p)
        prod = FieldIdeal.unit(K)
        for P in st_.primes:
            prod = prod * P.ideal ** (2 if st_.kind == "ramified" else 1)
        assert prod == FieldIdeal.principal(Fraction(p), K)
        for P in st_.primes:
            assert P.ideal.norm() == P.norm


def test_divisor_of_round_trip():
    rng = random.Random(3)
    for m in (-5, -23, 10, 13, 79):
        K = build_field(m)
        for _ in range(20):
            t = K.element(Fraction(rng.randint(-40, 40) or 1, rng.randint(1, 9)), rng.randint(-40, 40))
            div = divisor_of(t)
            acc = FieldIdeal.unit(K)
            for P, e in div.items():
                acc = acc * P.ideal**e
            assert acc == FieldIdeal.principal(t)


def fundamental(d):
    if d % 4 == 1:
        return squarefree(d)
    return d % 4 == 0 and (d // 4) % 4 in (2, 3) and squarefree(d // 4)


@pytest.mark.parametrize("disc", [d for d in range(-400, -2) if fundamental(d)])
def test_imaginary_class_numbers_match_form_enumeration(disc):
    m = disc // 4 if disc % 4 == 0 else disc
    assert narrow_class_group(build_field(m)).order == len(reduced_definite_forms(disc))


@pytest.mark.parametrize(
    "m, inv",
    [(-1, ()), (-5, (2,)), (-23, (3,)), (-14, (4,)), (-21, (2, 2)), (-47, (5,))],
)
def test_class_group_examples(m, inv):
    assert class_group(build_field(m)).invariants == inv


@pytest.mark.parametrize("m, wide, narrow", [(2, (), ()), (3, (), (2,)), (5, (), ()), (10, (2,), (2,)), (34, (2,), (4,)), (79, (3,), (6,))])
def test_real_class_groups(m, wide, narrow):
    K = build_field(m)
    assert class_group(K).invariants == wide
    assert narrow_class_group(K).invariants == narrow


def _smallest_unit(m):
    """Smallest unit > 1 by search over the omega coordinates."""
    K = build_field(m)
    for b in range(1, 10**6):
        for a in range(-4 * b * math.isqrt(m) - 4, 4 * b * math.isqrt(m) + 5):
            u = K.from_integral(a, b)
            if abs(u.norm()) == 1 and u.to_complex().real > 1:
                return u
    raise AssertionError


@pytest.mark.parametrize("m", [2, 3, 5, 6, 7, 10, 13, 14, 15, 17, 21, 29, 33, 41])
def test_fundamental_unit_is_smallest(m):
    assert fundamental_unit(build_field(m)) == _smallest_unit(m)


def test_fundamental_unit_examples():
    assert fundamental_unit(build_field(2)) == build_field(2).element(1, 1)
    assert fundamental_unit(build_field(5)) == build_field(5).element(Fraction(1, 2), Fraction(1, 2))
    e3 = fundamental_unit(build_field(3))
    assert e3 == build_field(3).element(2, 1) and e3.norm() == 1


@pytest.mark.parametrize("m", [-5, -14, -23, -47, 10, 15, 34, 79, 82, 145])
def test_ideal_class_map_is_a_homomorphism(m):
    K = build_field(m)
    G = narrow_class_group(K)
    primes = [P for p in (2, 3, 5, 7, 11, 13) for P in primes_above(K, p)]
    coords = {P: G.coordinates(ideal_class_form(P.ideal)) for P in primes}
    for P in primes:
        for Q in primes:
            got = G.coordinates(ideal_class_form(P.ideal * Q.ideal))
            assert got == G.add(coords[P], coords[Q])


def test_principal_generator():
    K = build_field(-5)
    two = primes_above(K, 2)[0].ideal
    assert principal_generator(two) is None
    g = principal_generator(two * two)
    assert FieldIdeal.principal(g) == two * two
    R = build_field(3)
    # (sqrt 3) is principal but has no generator of positive norm
    s = FieldIdeal.principal(R.sqrt)
    assert principal_generator(s) is not None
    assert principal_generator(s, narrow=True) is None


def test_form_composition_associative():
    G = form_class_group(-260)
    assert G.order == 8
    f, g, h = BinaryQuadraticForm(3, 2, 22), BinaryQuadraticForm(2, 2, 33), BinaryQuadraticForm(6, 2, 11)
    left = compose_reduced(compose_reduced(f, g), h)
    right = compose_reduced(f, compose_reduced(g, h))
    assert reduce_form(left)[0] == reduce_form(right)[0]


# ------------------------------------------------------------ norm equations


@given(st.integers(-30, 30).filter(lambda a: a and squarefree(a) and a != 1), st.integers(-60, 60).filter(bool))
@settings(max_examples=300, deadline=None)
def test_legendre_descent(a, b):
    try:
        x, y, z = solve_legendre(a, b)
    except NoSolution:
        assert any(hilbert_symbol(a, b, Place(p)) == -1 for p in (0, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59))
        return
    assert x * x == a * y * y + b * z * z and (x, y, z) != (0, 0, 0)


@given(st.sampled_from([m for m in range(-30, 31) if squarefree(m)]), st.integers(-80, 80).filter(bool), st.integers(1, 12))
@settings(max_examples=300, deadline=None)
def test_norm_equation_agrees_with_hasse(m, num, den):
    K = build_field(m)
    c = Fraction(num, den)
    if norm_equation_solvable(K, c):
        assert solve_norm_equation(K, c).norm() == c
    else:
        with pytest.raises(NoSolution):
            solve_norm_equation(K, c)


def test_norm_equation_examples():
    K5, Ki = build_field(5), build_field(-1)
    assert solve_norm_equation(K5, -1).norm() == -1
    assert solve_norm_equation(Ki, 13).norm() == 13
    assert solve_norm_equation(K5, 1) == K5.one
    t = solve_norm_equation(build_field(3), 1, local_conditions={0: -1, 1: -1})
    assert t.sign_at(0) == t.sign_at(1) == -1


def test_norm_equation_random_perturbation_keeps_norm():
    K = build_field(13)
    for seed in range(10):
        assert solve_norm_equation(K, Fraction(27, 4), rng=random.Random(seed)).norm() == Fraction(27, 4)


# -------------------------------------------------------------- Hilbert 90


def test_ideal_hilbert90_examples():
    K = build_field(-1)
    assert ideal_hilbert90(K, K.one) == FieldIdeal.unit(K)
    w = K.element(3, 2)
    J = ideal_hilbert90(K, w / w.conj())
    assert J == FieldIdeal.principal(w)
    P = primes_above(build_field(29), 5)[0]
    assert ideal_hilbert90(build_field(29), {P: 1, P.conj(): -1}) == P.ideal


def test_ideal_hilbert90_random():
    rng = random.Random(11)
    for m in (-5, 10, 29, -23, 79):
        K = build_field(m)
        for _ in range(15):
            w = K.element(rng.randint(-30, 30) or 1, rng.randint(-30, 30))
            v = w / w.conj()
            J = ideal_hilbert90(K, v)
            assert J / J.conj() == FieldIdeal.principal(v)
            assert J.is_integral()


def test_ideal_hilbert90_rejects_bad_divisors():
    K = build_field(29)
    with pytest.raises(NotInKernel):
        ideal_hilbert90(K, K.element(2))
