"""Invariant suites behind the `verify` subcommand.

Each check returns (name, passed, detail).  They re-derive quantities along
an independent path where one exists inside the package (cyclotomic counts,
product formula, symmetry) and otherwise re-verify exact identities.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterator

from .arith import factor_integer, is_squarefree
from .cohomology import cohomology_punctured, cohomology_unpunctured, enumerate_torsors, torsor_for
from .forms import class_group, fundamental_unit, narrow_class_group
from .ideles import cs_torsion_n, normalize_S
from .local import REAL, Place, hilbert_symbol, precision_exponent
from .quadratic import build_field

Check = tuple[str, bool, str]


def cyclotomic_character_count(S, n: int) -> int:
    """#Hom((Z/M)^x, Z/n) with M = prod p^k_p, from the structure of (Z/p^k)^x."""
    total = 1
    for p in normalize_S(S):
        k = precision_exponent(p, n)
        if p == 2:
            cyc = [2, 2 ** (k - 2)] if k >= 3 else [2 ** (k - 1)]
        else:
            cyc = [p - 1, p ** (k - 1)]
        for c in cyc:
            total *= math.gcd(n, c)
    return total


def product_formula(a: int, b: int) -> bool:
    places = {REAL} | {Place(p) for p in factor_integer(abs(2 * a * b)).primes()}
    return math.prod(hilbert_symbol(a, b, v) for v in places) == 1


def _nonzero(rng: random.Random, lo: int = -500, hi: int = 500) -> int:
    while True:
        x = rng.randint(lo, hi)
        if x:
            return x


def run_checks(S, n: int, bound: int, rng: random.Random) -> Iterator[Check]:
    S = normalize_S(S) if S else (5, 13)
    prof = cohomology_punctured(S, n)
    kw = cyclotomic_character_count(S, n)
    yield "h1_order_vs_cyclotomic_count", prof.group(1).order == kw, f"|H^1| = {prof.group(1).order}, count = {kw}"

    pairs = [(_nonzero(rng), _nonzero(rng)) for _ in range(50)]
    bad = [(a, b) for a, b in pairs if not product_formula(a, b)]
    yield "hilbert_product_formula", not bad, f"{len(pairs)} pairs, failures {bad[:3]}"

    spec_z = cohomology_unpunctured(None, 2)
    expected = [(2,), (), (), (2,), (2,)]
    got = [spec_z.invariants(i) for i in range(5)]
    yield "spec_z_profile", got == expected, f"{got}"

    bad_m = []
    for m in range(2, 40):
        if not is_squarefree(m):
            continue
        K = build_field(m)
        eps = fundamental_unit(K)
        if abs(eps.norm()) != 1:
            bad_m.append(m)
            continue
        factor = 1 if eps.norm() == -1 else 2
        if narrow_class_group(K).order != class_group(K).order * factor:
            bad_m.append(m)
    yield "narrow_class_numbers", not bad_m, f"failures {bad_m}"

    if n == 2:
        torsors = enumerate_torsors(S)
        yield "torsor_census", len(torsors) + 1 == prof.group(1).order, f"{len(torsors)} torsors"
        yield from _descent_checks(S, n, torsors, rng)
        from .cup import pairing_table, verify_reciprocity

        tab = pairing_table(S)
        yield "pairing_symmetric", tab.is_symmetric(), f"basis {[t.disc for t in tab.basis]}"
        rep = verify_reciprocity(bound)
        detail = f"{len(rep.records)} pairs below {bound}"
        if rep.failures():
            f = rep.failures()[0]
            detail += f"; first failure ({f.p}, {f.q})"
        yield "legendre_reciprocity", rep.passed, detail
    elif n % 2 == 0:
        odd = [p for p in S if p != 2]
        torsors = [torsor_for(p if p % 4 == 1 else -p, S, n) for p in odd]
        yield from _descent_checks(S, n, torsors, rng)


def _descent_checks(S, n: int, torsors, rng: random.Random) -> Iterator[Check]:
    from .cup import cup_value

    gens = cs_torsion_n(S, n).generators
    failures = []
    count = 0
    for y in torsors:
        for g in gens:
            base = [cup_value(y, z, g, S, n) for z in torsors]
            for _ in range(3):
                k = Fraction(rng.choice((1, -1, 2, 3, 7, 15)), rng.choice((1, 5, 11)))
                r = random.Random(rng.getrandbits(32))
                vals = [cup_value(y, z, g.twist(k), S, n, rng=r) for z in torsors]
                count += 1
                if vals != base:
                    failures.append((y.disc, str(g), str(k)))
    yield "descent_choice_independence", not failures, f"{count} re-solves, failures {failures[:2]}"

