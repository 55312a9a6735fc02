"""Local multiplicative groups Q_v^x / n, Hilbert symbols, local Hilbert 90.

Classes in Q_p^x/(Q_p^x)^n are coordinatized as
``(valuation mod n, unit coordinates)``.  For odd p the unit coordinates
live in Z/gcd(n, p-1) x Z/p^{v_p(n)} (Teichmuller part, then the 1 + pZ_p
part measured in base 1 + p); for p = 2 they live in Z/gcd(n, 2) x
Z/2^{v_2(n)} (the sign of u modulo 4, then log base 5 of +-u).
At the real place only the sign survives, and only when n is even.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Union

from .arith import discrete_log, is_prime, jacobi_symbol, primitive_root, valuation
from .errors import InvalidInput, NotInKernel
from .quadratic import FieldElement, QuadraticField, padic_sqrt, split_kind

Rational = Union[int, Fraction]

# digits carried beyond the class precision when approximating p-adic numbers
GUARD_DIGITS = 24


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: ``p`` is a prime, or 0 for the real place."""

    p: int

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise InvalidInput(f"{self.p} is not prime")

    @classmethod
    def real(cls) -> "Place":
        return cls(0)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @property
    def is_real(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return "inf" if self.p == 0 else str(self.p)


REAL = Place(0)


def precision_exponent(p: int, n: int) -> int:
    """k_p = 2*v_p(n) + 3: classes mod n are determined modulo p^k_p."""
    return 2 * valuation(n, p) + 3


def working_precision(p: int, n: int) -> int:
    return precision_exponent(p, n) + GUARD_DIGITS


def unit_shape(v: Place, n: int) -> tuple[int, ...]:
    if v.is_real:
        return (2,) if n % 2 == 0 else ()
    p = v.p
    if p == 2:
        return (math.gcd(n, 2), 2 ** valuation(n, 2))
    return (math.gcd(n, p - 1), p ** valuation(n, p))


def frac_valuation(x: Rational, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise InvalidInput("valuation of 0")
    return valuation(x.numerator, p) - valuation(x.denominator, p)


def unit_residue(u: Rational, p: int, k: int) -> int:
    """Residue of a p-adic unit rational modulo p^k."""
    u = Fraction(u)
    mod = p**k
    if u.denominator % p == 0 or u.numerator % p == 0:
        raise InvalidInput(f"{u} is not a {p}-adic unit")
    return u.numerator * pow(u.denominator, -1, mod) % mod


def split_valuation(x: Rational, p: int) -> tuple[int, Fraction]:
    """(v_p(x), x / p^v_p(x))."""
    v = frac_valuation(x, p)
    return v, Fraction(x) / Fraction(p) ** v


@lru_cache(maxsize=None)
def teichmuller_generator(p: int, k: int) -> int:
    """Teichmuller lift mod p^k of the smallest primitive root mod p."""
    g = primitive_root(p)
    return pow(g, p ** (k - 1), p**k)


def _log_one_plus(y: int, base: int, p: int, digits: int, shift: int) -> int:
    """e mod p^digits with base^e = y, for y in the pro-p group generated by base.

    ``base`` satisfies base^(p^j) = 1 + p^(j+shift) * unit, so the digits of
    e can be read off one at a time."""
    mod = p ** (digits + shift)
    e = 0
    inv = pow(base, -1, mod)
    for j in range(digits):
        z = y * pow(inv, e, mod) % mod
        digit = ((z - 1) // p ** (j + shift)) % p
        e += digit * p**j
    if y * pow(inv, e, mod) % mod != 1:
        raise AssertionError("p-adic logarithm digit extraction failed")
    return e


def unit_coordinates(u: Rational, p: int, n: int) -> tuple[int, ...]:
    """Coordinates of a p-adic unit in Z_p^x / (Z_p^x)^n."""
    shape = unit_shape(Place(p), n)
    m = valuation(n, p)
    if p == 2:
        r = unit_residue(u, 2, m + 2)
        c1 = 0 if r % 4 == 1 else 1
        if c1:
            r = (-r) % 2 ** (m + 2)
        c2 = _log_one_plus(r, 5, 2, m, 2) if m else 0
        return (c1 % shape[0], c2 % shape[1])
    r = unit_residue(u, p, m + 1)
    g1 = shape[0]
    c1 = discrete_log(r % p, primitive_root(p), p - 1, p) % g1 if g1 > 1 else 0
    c2 = 0
    if m:
        mod = p ** (m + 1)
        y = pow(r, p - 1, mod)
        c2 = _log_one_plus(y, 1 + p, p, m, 1) * pow(p - 1, -1, p**m) % p**m
    return (c1, c2)


@dataclass(frozen=True)
class LocalClass:
    """An element of Q_v^x / (Q_v^x)^n."""

    place: Place
    modulus: int
    valuation: int
    unit_coords: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return unit_shape(self.place, self.modulus)

    def _check(self, other: "LocalClass") -> None:
        if other.place != self.place or other.modulus != self.modulus:
            raise InvalidInput("local classes at different places or moduli")

    def __add__(self, other: "LocalClass") -> "LocalClass":
        self._check(other)
        return self.scale(1, other)

    def scale(self, k: int, plus: "LocalClass | None" = None) -> "LocalClass":
        """k*self (+ plus)."""
        n = self.modulus
        val = k * self.valuation + (plus.valuation if plus else 0)
        coords = tuple(
            (k * c + (plus.unit_coords[i] if plus else 0)) % d
            for i, (c, d) in enumerate(zip(self.unit_coords, self.shape))
        )
        return LocalClass(self.place, n, 0 if self.place.is_real else val % n, coords)

    def __neg__(self) -> "LocalClass":
        return self.scale(-1)

    def __sub__(self, other: "LocalClass") -> "LocalClass":
        return self + (-other)

    def is_trivial(self) -> bool:
        return self.valuation == 0 and not any(self.unit_coords)

    def vector(self) -> tuple[int, ...]:
        if self.place.is_real:
            return self.unit_coords
        return (self.valuation,) + self.unit_coords

    def representative(self) -> Fraction:
        """A rational number in this class."""
        v = self.place
        if v.is_real:
            return Fraction(-1 if self.unit_coords and self.unit_coords[0] else 1)
        p = v.p
        k = precision_exponent(p, self.modulus)
        mod = p**k
        c1, c2 = self.unit_coords
        if p == 2:
            u = pow(5, c2, mod)
            u = (-u if c1 else u) % mod
        else:
            u = pow(teichmuller_generator(p, k), c1, mod) * pow(1 + p, c2, mod) % mod
        if u > mod // 2:
            u -= mod
        return Fraction(p) ** self.valuation * u

    def __str__(self) -> str:
        return f"[{self.place}: {self.vector()} mod {self.modulus}]"


def trivial_class(v: Place, n: int) -> LocalClass:
    return LocalClass(v, n, 0, tuple(0 for _ in unit_shape(v, n)))


def local_class(x: Rational, v: Place, n: int) -> LocalClass:
    """Class of the nonzero rational x in Q_v^x / (Q_v^x)^n."""
    x = Fraction(x)
    if x == 0:
        raise InvalidInput("local_class of 0")
    if n < 1:
        raise InvalidInput("modulus must be positive")
    if v.is_real:
        coords = (1 if x < 0 else 0,) if n % 2 == 0 else ()
        return LocalClass(v, n, 0, coords)
    val, u = split_valuation(x, v.p)
    return LocalClass(v, n, val % n, unit_coordinates(u, v.p, n))


def roots_of_unity_generator(p: int, n: int, k: int | None = None) -> tuple[Fraction, int]:
    """(zeta, order): a generator of mu(Q_p)[n] as an approximant mod p^k."""
    if p == 2:
        return (Fraction(-1), 2) if n % 2 == 0 else (Fraction(1), 1)
    g = math.gcd(n, p - 1)
    k = k or working_precision(p, n)
    zeta = pow(teichmuller_generator(p, k), (p - 1) // g, p**k)
    if zeta > p**k // 2:
        zeta -= p**k
    return Fraction(zeta), g


# ------------------------------------------------------- Hilbert symbols


def _int_pair(a: Rational, b: Rational) -> tuple[int, int]:
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise InvalidInput("Hilbert symbol of 0")
    # multiply by squares of denominators
    return a.numerator * a.denominator, b.numerator * b.denominator


def hilbert_symbol(a: Rational, b: Rational, v: Place) -> int:
    """(a, b)_v in {+1, -1}."""
    a, b = _int_pair(a, b)
    if v.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = v.p
    alpha, u = _strip(a, p)
    beta, w = _strip(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omg = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(w) + alpha * omg(w) + beta * omg(u)
        return -1 if e % 2 else 1
    e = alpha * beta * ((p - 1) // 2)
    s = -1 if e % 2 else 1
    if beta % 2:
        s *= jacobi_symbol(u % p, p)
    if alpha % 2:
        s *= jacobi_symbol(w % p, p)
    return s


def _strip(x: int, p: int) -> tuple[int, int]:
    v = valuation(x, p)
    return v, x // p**v


def local_norm_test(a: Rational, v: Place, field: QuadraticField) -> bool:
    """Is a a norm from field (x) Q_v?"""
    return hilbert_symbol(a, field.m, v) == 1


# ---------------------------------------------------- completed algebras


class LocalAlgebra:
    """L (x) Q_v for a quadratic field L and a place v of Q.

    Element representations by ``kind``:
      split     (finite, v splits)  pair of rationals (iota_0, iota_1), sigma swaps
      realsplit (real place, L real) pair of signs
      nonsplit  (finite, inert or ramified) FieldElement approximants
      complex   (real place, L imaginary) Python complex numbers
    The archimedean kinds are taken modulo positive reals.
    """

    def __init__(self, field: QuadraticField, v: Place, n: int):
        self.field = field
        self.place = v
        self.n = n
        if v.is_real:
            self.kind = "realsplit" if field.is_real else "complex"
            self.prec = 0
            self.root = None
        else:
            self.prec = working_precision(v.p, n)
            sk = split_kind(field, v.p)
            self.kind = "split" if sk == "split" else "nonsplit"
            self.root = padic_sqrt(field, v.p, 2 * self.prec) if sk == "split" else None

    def __repr__(self) -> str:
        return f"LocalAlgebra({self.field}, {self.place}, n={self.n}, {self.kind})"

    # -- construction
    def embed(self, t: FieldElement) -> Any:
        k = self.kind
        if k == "split":
            return (t.x + t.y * self.root, t.x - t.y * self.root)
        if k == "realsplit":
            return (t.sign_at(0), t.sign_at(1))
        if k == "nonsplit":
            return t
        return t.to_complex()

    def embed_base(self, q: Rational) -> Any:
        q = Fraction(q)
        k = self.kind
        if k == "split":
            return (q, q)
        if k == "realsplit":
            s = 1 if q > 0 else -1
            return (s, s)
        if k == "nonsplit":
            return self.field.element(q)
        return complex(float(q))

    def one(self) -> Any:
        return self.embed_base(1)

    # -- arithmetic
    def mul(self, x, y):
        if self.kind in ("split", "realsplit"):
            return (x[0] * y[0], x[1] * y[1])
        return x * y

    def inv(self, x):
        if self.kind == "split":
            return (1 / x[0], 1 / x[1])
        if self.kind == "realsplit":
            return x
        if self.kind == "nonsplit":
            return x.inverse()
        return 1 / x

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def power(self, x, e: int):
        if e < 0:
            return self.power(self.inv(x), -e)
        acc = self.one()
        for _ in range(e):
            acc = self.mul(acc, x)
        return acc

    def conj(self, x):
        if self.kind in ("split", "realsplit"):
            return (x[1], x[0])
        if self.kind == "nonsplit":
            return x.conj()
        return x.conjugate()

    def norm(self, x) -> Rational | float:
        """Norm down to Q_v (a rational approximant, a sign, or a positive float)."""
        if self.kind in ("split", "realsplit"):
            return x[0] * x[1]
        if self.kind == "nonsplit":
            return x.norm()
        return abs(x) ** 2

    def norm_class(self, x) -> LocalClass:
        nm = self.norm(x)
        if self.place.is_real:
            nm = 1 if nm > 0 else -1
        return local_class(nm, self.place, self.n)

    # -- precision
    def _close_base(self, q: Fraction, k: int) -> bool:
        return q == 1 or frac_valuation(q - 1, self.place.p) >= k

    def is_close_to_one(self, x, k: int | None = None) -> bool:
        """x = 1 modulo p^k (finite) or modulo positive reals (archimedean)."""
        if k is None and not self.place.is_real:
            k = precision_exponent(self.place.p, self.n)
        if self.kind == "split":
            return self._close_base(x[0], k) and self._close_base(x[1], k)
        if self.kind == "realsplit":
            return x == (1, 1)
        if self.kind == "nonsplit":
            p = self.place.p
            a, b = (x - 1).integral_coords()
            return all(c == 0 or frac_valuation(c, p) >= k for c in (a, b))
        return abs(x) > 0 and abs(cmath.phase(x)) < 1e-9

    def valuation(self, x) -> Fraction:
        """Normalized valuation: v_p of the norm divided by 2 (split: of the pair product)."""
        return Fraction(frac_valuation(self.norm(x), self.place.p), 2)

    # -- Hilbert 90
    def hilbert90(self, c):
        """beta with beta / sigma(beta) = c; c must have norm 1 to working precision."""
        k = self.kind
        if k == "complex":
            if abs(c) == 0:
                raise NotInKernel("zero element")
            cu = c / abs(c)
            beta = 1 + cu if abs(1 + cu) > 0.5 else 1j * (1 - cu)
            return beta
        if k == "realsplit":
            if c[0] * c[1] != 1:
                raise NotInKernel(f"sign pair {c} has norm -1")
            return (c[0], 1)
        prec = precision_exponent(self.place.p, self.n)
        if not self._close_base(Fraction(self.norm(c)), prec + 2):
            raise NotInKernel(f"{c} does not have norm 1 at {self.place}")
        if k == "split":
            return (c[0], Fraction(1))
        # nonsplit: beta = x + c*sigma(x) for a basis element x avoiding cancellation
        f = self.field
        best = None
        for x in (f.one, f.sqrt, f.omega, f.one + f.sqrt):
            beta = x + c * x.conj()
            if beta.is_zero():
                continue
            val = self.valuation(beta)
            if best is None or val < best[0]:
                best = (val, beta)
        return best[1]


def local_hilbert90(c, field: QuadraticField, v: Place, n: int = 2):
    """Solve c = beta / sigma(beta) in the completion of ``field`` above v."""
    alg = LocalAlgebra(field, v, n)
    beta = alg.hilbert90(c)
    if not alg.is_close_to_one(alg.div(alg.div(beta, alg.conj(beta)), c)):
        raise AssertionError("local Hilbert 90 identity failed")
    return beta
