"""Norm equations N(t) = c in quadratic fields, via Legendre's equation."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .arith import factor_integer, sqrt_mod, squarefree_decomposition
from .errors import InvalidInput, NoSolution
from .forms import fundamental_unit
from .local import Place, hilbert_symbol
from .quadratic import FieldElement, QuadraticField


def _squarefree_with_root(x: int) -> tuple[int, int]:
    """x = core * root^2 with core squarefree (sign kept in core)."""
    core, root = squarefree_decomposition(x)
    return core, root


def _legendre(a: int, b: int) -> tuple[int, int, int] | None:
    # a, b squarefree and nonzero
    if a == 1:
        return 1, 1, 0
    if b == 1:
        return 1, 0, 1
    if a < 0 and b < 0:
        return None
    if abs(a) > abs(b):
        sol = _legendre(b, a)
        return None if sol is None else (sol[0], sol[2], sol[1])
    r = sqrt_mod(a, abs(b))
    if r is None:
        return None
    if r > abs(b) // 2:
        r -= abs(b)
    q = r * r - a
    if q == 0:
        raise AssertionError("a is a square, handled above")
    t, k = _squarefree_with_root(q // b)
    sol = _legendre(a, t)
    if sol is None:
        return None
    X, Y, Z = sol
    return r * X + a * Y, X + r * Y, t * k * Z


def solve_legendre(a: int, b: int) -> tuple[int, int, int]:
    """A primitive nonzero (x, y, z) with x^2 = a*y^2 + b*z^2, or NoSolution."""
    if a == 0 or b == 0:
        raise InvalidInput("Legendre's equation needs nonzero coefficients")
    a0, ra = _squarefree_with_root(a)
    b0, rb = _squarefree_with_root(b)
    sol = _legendre(a0, b0)
    if sol is None:
        raise NoSolution(f"x^2 = {a} y^2 + {b} z^2 has no nontrivial solution")
    x, y, z = sol
    # undo the square factors: a0 (y)^2 = a (y/ra)^2
    x, y, z = x * ra * rb, y * rb, z * ra
    g = math.gcd(x, y, z)
    x, y, z = x // g, y // g, z // g
    if x * x != a * y * y + b * z * z:
        raise AssertionError("Legendre descent produced a wrong solution")
    return x, y, z


def norm_equation_solvable(field: QuadraticField, c: Fraction) -> bool:
    """Hasse criterion: c is a global norm iff it is a local norm everywhere."""
    c = Fraction(c)
    places = [Place(0)]
    bad = abs(c.numerator * c.denominator * field.disc)
    if bad > 1:
        places += [Place(p) for p in factor_integer(bad).primes()]
    if 2 not in [v.p for v in places]:
        places.append(Place(2))
    return all(hilbert_symbol(c, field.m, v) == 1 for v in places)


def _random_norm_one(field: QuadraticField, rng: random.Random) -> FieldElement:
    w = field.element(rng.randint(-3, 3) or 1, rng.randint(-3, 3))
    return w / w.conj()


def solve_norm_equation(
    field: QuadraticField,
    c: Fraction | int,
    local_conditions: dict[int, int] | None = None,
    rng: random.Random | None = None,
) -> FieldElement:
    """t in the field with N(t) = c exactly.

    ``local_conditions`` maps a real embedding index (0: sqrt(m) > 0, 1: the
    conjugate) to a required sign of t.  ``rng`` multiplies the answer by a
    random element of norm one, to exercise choice independence.
    """
    c = Fraction(c)
    if c == 0:
        raise InvalidInput("norm equation with c = 0")
    if c == 1 and rng is None:
        t = field.one
    else:
        num = c.numerator * c.denominator
        x, y, z = solve_legendre(field.m, num)
        if z == 0:
            raise AssertionError("degenerate Legendre solution")
        t = field.element(Fraction(x, z), Fraction(y, z)) / c.denominator
    if rng is not None:
        t = t * _random_norm_one(field, rng)
        if field.is_real and rng.random() < 0.5:
            t = t * fundamental_unit(field) ** (2 * rng.randint(-1, 1))
    if local_conditions:
        if not field.is_real:
            raise InvalidInput("sign conditions need a real field")
        want = {i: s for i, s in local_conditions.items()}
        have = {i: t.sign_at(i) for i in want}
        if all(have[i] == -want[i] for i in want):
            t = -t
        elif any(have[i] != want[i] for i in want):
            raise NoSolution(f"sign conditions {local_conditions} incompatible with norm {c}")
    if t.norm() != c:
        raise AssertionError("norm equation solution failed the exact check")
    return t
