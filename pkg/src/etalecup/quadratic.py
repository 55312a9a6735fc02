"""Quadratic fields Q(sqrt m): elements, fractional ideals, prime splitting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .arith import factor_integer, is_squarefree, kronecker_symbol, try_sqrt_mod_prime_power, valuation
from .errors import InvalidInput, NotInKernel

Rational = Union[int, Fraction]


def _frac_valuation(x: Fraction, p: int) -> int:
    if x == 0:
        raise InvalidInput("valuation of 0")
    return valuation(x.numerator, p) - valuation(x.denominator, p)


@dataclass(frozen=True)
class QuadraticField:
    """Q(sqrt m) for squarefree m not in {0, 1}."""

    m: int

    def __post_init__(self):
        if self.m in (0, 1) or not is_squarefree(self.m):
            raise InvalidInput(f"m = {self.m} must be squarefree and different from 0, 1")

    @property
    def disc(self) -> int:
        return self.m if self.m % 4 == 1 else 4 * self.m

    @property
    def is_real(self) -> bool:
        return self.m > 0

    @property
    def signature(self) -> str:
        return "real" if self.m > 0 else "imaginary"

    @property
    def omega_trace(self) -> int:
        return 1 if self.m % 4 == 1 else 0

    @property
    def omega_norm(self) -> int:
        return (1 - self.m) // 4 if self.m % 4 == 1 else -self.m

    def element(self, x: Rational = 0, y: Rational = 0) -> "FieldElement":
        """The element x + y*sqrt(m)."""
        return FieldElement(self, Fraction(x), Fraction(y))

    def from_integral(self, a: Rational, b: Rational) -> "FieldElement":
        """The element a + b*omega."""
        if self.m % 4 == 1:
            return self.element(Fraction(a) + Fraction(b, 2), Fraction(b, 2))
        return self.element(a, b)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    @property
    def sqrt(self) -> "FieldElement":
        return self.element(0, 1)

    @property
    def omega(self) -> "FieldElement":
        return self.from_integral(0, 1)

    def __str__(self) -> str:
        return f"Q(sqrt({self.m}))"


@lru_cache(maxsize=None)
def build_field(m: int) -> QuadraticField:
    return QuadraticField(m)


@dataclass(frozen=True)
class FieldElement:
    """x + y*sqrt(m) with exact rational x, y."""

    field: QuadraticField
    x: Fraction
    y: Fraction

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InvalidInput("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, Fraction(other), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.x, -self.y)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        m = self.field.m
        return FieldElement(self.field, self.x * o.x + m * self.y * o.y, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in a quadratic field")
        c = self.conj()
        return FieldElement(self.field, c.x / n, c.y / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc, base = self.field.one, self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def conj(self) -> "FieldElement":
        return FieldElement(self.field, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.field.m * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_rational(self) -> bool:
        return self.y == 0

    def integral_coords(self) -> tuple[Fraction, Fraction]:
        """(a, b) with self = a + b*omega."""
        if self.field.m % 4 == 1:
            return self.x - self.y, 2 * self.y
        return self.x, self.y

    def denominator(self) -> int:
        a, b = self.integral_coords()
        return math.lcm(a.denominator, b.denominator)

    def is_integral(self) -> bool:
        return self.denominator() == 1

    def sign_at(self, i: int) -> int:
        """Sign under the real embedding sqrt(m) -> (+1 if i == 0 else -1)*sqrt(m)."""
        if not self.field.is_real:
            raise InvalidInput("sign_at needs a real quadratic field")
        x, y = self.x, self.y if i == 0 else -self.y
        if y == 0 or x == 0:
            return (x > 0) - (x < 0) if y == 0 else (y > 0) - (y < 0)
        if (x > 0) == (y > 0):
            return 1 if x > 0 else -1
        # opposite signs: the larger of x^2 and m*y^2 wins
        big_x = x * x > self.field.m * y * y
        return (1 if x > 0 else -1) if big_x else (1 if y > 0 else -1)

    def is_totally_positive(self) -> bool:
        if self.is_zero():
            return False
        if not self.field.is_real:
            return True
        return self.sign_at(0) > 0 and self.sign_at(1) > 0

    def to_complex(self) -> complex:
        m = self.field.m
        if m > 0:
            return complex(float(self.x) + float(self.y) * math.sqrt(m))
        return complex(float(self.x), float(self.y) * math.sqrt(-m))

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        rad = f"sqrt({self.field.m})"
        if self.x == 0:
            return f"{self.y}*{rad}"
        sign = "+" if self.y > 0 else "-"
        return f"{self.x} {sign} {abs(self.y)}*{rad}"


# ---------------------------------------------------------------- ideals


def _lattice_hnf(rows: list[tuple[int, int]]) -> tuple[int, int, int]:
    """For a full-rank lattice in Z^2 (coords w.r.t. 1, omega) return
    (A, B, C): the lattice is A*Z + (B + C*omega)*Z with A, C > 0, 0 <= B < A."""
    rows = [list(r) for r in rows if r[0] or r[1]]
    # Euclid on the omega column
    while sum(1 for r in rows if r[1]) > 1:
        live = sorted((r for r in rows if r[1]), key=lambda r: abs(r[1]))
        piv = live[0]
        for r in live[1:]:
            q = r[1] // piv[1]
            r[0] -= q * piv[0]
            r[1] -= q * piv[1]
        rows = [r for r in rows if r[0] or r[1]]
    pivot = next((r for r in rows if r[1]), None)
    if pivot is None:
        raise InvalidInput("generators do not span a lattice of rank 2")
    a = 0
    for r in rows:
        if r is not pivot:
            a = math.gcd(a, r[0])
    if a == 0:
        raise InvalidInput("generators do not span a lattice of rank 2")
    c = abs(pivot[1])
    b = (pivot[0] if pivot[1] > 0 else -pivot[0]) % a
    return a, b, c


@dataclass(frozen=True)
class FieldIdeal:
    """Fractional ideal scale * (a*Z + (b + omega)*Z) with a > 0, 0 <= b < a."""

    field: QuadraticField
    scale: Fraction
    a: int
    b: int

    @classmethod
    def from_generators(cls, field: QuadraticField, gens: Iterable[FieldElement | Rational]) -> "FieldIdeal":
        elems = [g if isinstance(g, FieldElement) else field.element(g) for g in gens]
        elems = [g for g in elems if not g.is_zero()]
        if not elems:
            raise InvalidInput("the zero ideal is not a fractional ideal")
        omega = field.omega
        spanning = [c for g in elems for c in (g, g * omega)]
        coords = [c.integral_coords() for c in spanning]
        den = math.lcm(*(q.denominator for pair in coords for q in pair))
        rows = [(int(u * den), int(v * den)) for u, v in coords]
        big_a, big_b, big_c = _lattice_hnf(rows)
        # ideal property forces C | A and C | B
        if big_a % big_c or big_b % big_c:
            raise InvalidInput("generators do not span an O-module")
        a = big_a // big_c
        return cls(field, Fraction(big_c, den), a, (big_b // big_c) % a)

    @classmethod
    def principal(cls, t: FieldElement | Rational, field: QuadraticField | None = None) -> "FieldIdeal":
        if isinstance(t, FieldElement):
            return cls.from_generators(t.field, [t])
        if field is None:
            raise InvalidInput("a field is needed for a rational generator")
        return cls.from_generators(field, [field.element(t)])

    @classmethod
    def unit(cls, field: QuadraticField) -> "FieldIdeal":
        return cls(field, Fraction(1), 1, 0)

    def basis(self) -> tuple[FieldElement, FieldElement]:
        f = self.field
        return (f.element(self.scale * self.a), f.from_integral(self.b, 1) * self.scale)

    def norm(self) -> Fraction:
        return self.scale * self.scale * self.a

    def __mul__(self, other: "FieldIdeal") -> "FieldIdeal":
        g1, g2 = self.basis()
        h1, h2 = other.basis()
        return FieldIdeal.from_generators(self.field, [g1 * h1, g1 * h2, g2 * h1, g2 * h2])

    def conj(self) -> "FieldIdeal":
        return FieldIdeal.from_generators(self.field, [g.conj() for g in self.basis()])

    def inverse(self) -> "FieldIdeal":
        n = self.norm()
        return FieldIdeal.from_generators(self.field, [g.conj() / n for g in self.basis()])

    def __truediv__(self, other: "FieldIdeal") -> "FieldIdeal":
        return self * other.inverse()

    def __pow__(self, k: int) -> "FieldIdeal":
        if k < 0:
            return self.inverse() ** (-k)
        acc, base = FieldIdeal.unit(self.field), self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def scaled(self, q: Rational) -> "FieldIdeal":
        q = Fraction(q)
        if q == 0:
            raise InvalidInput("cannot scale by 0")
        return FieldIdeal(self.field, self.scale * abs(q), self.a, self.b)

    def contains(self, t: FieldElement) -> bool:
        u, v = (t / self.scale).integral_coords()
        if v.denominator != 1:
            return False
        rest = u - v * self.b
        return rest.denominator == 1 and rest.numerator % self.a == 0

    def is_integral(self) -> bool:
        return all(g.is_integral() for g in self.basis())

    def is_unit(self) -> bool:
        return self.scale == 1 and self.a == 1

    def valuation(self, prime: "PrimeIdeal") -> int:
        return min(prime.valuation(g) for g in self.basis())

    def factorization(self) -> dict["PrimeIdeal", int]:
        ps: set[int] = set()
        for g in self.basis():
            d = g.denominator()
            ps.update(_primes_of_rational((g * d).norm()))
            ps.update(_primes_of_rational(Fraction(d)))
        out: dict[PrimeIdeal, int] = {}
        for p in sorted(ps):
            for P in primes_above(self.field, p):
                e = self.valuation(P)
                if e:
                    out[P] = e
        return out

    def __str__(self) -> str:
        g1, g2 = self.basis()
        return f"({g1}, {g2})"


def _primes_of_rational(q: Fraction) -> list[int]:
    ps: set[int] = set()
    for part in (q.numerator, q.denominator):
        if abs(part) > 1:
            ps.update(factor_integer(part).primes())
    return sorted(ps)


# ------------------------------------------------------------ prime ideals


def padic_sqrt(field: QuadraticField, p: int, k: int) -> int:
    """The canonical square root of m in Z_p, modulo p**k, when p splits.

    Odd p: the root congruent to the smaller of the two residues mod p.
    p = 2: the root congruent to 1 mod 4.
    """
    m = field.m
    mod = p**k
    if p == 2:
        r = try_sqrt_mod_prime_power(m, 2, k + 1)
        if r is None or m % 8 != 1:
            raise InvalidInput(f"2 does not split in {field}")
        if r % 4 == 3:
            r = -r
        return r % mod
    r0 = try_sqrt_mod_prime_power(m, p, 1)
    if r0 is None or m % p == 0:
        raise InvalidInput(f"{p} does not split in {field}")
    r = min(r0, p - r0)
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        q = p**prec
        r = (r - (r * r - m) * pow(2 * r, -1, q)) % q
    return r % mod


def split_kind(field: QuadraticField, p: int) -> str:
    s = kronecker_symbol(field.disc, p)
    return {1: "split", -1: "inert", 0: "ramified"}[s]


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of O_K above p; ``index`` 0/1 orders the two primes of a split p.

    Index 0 is the prime where sqrt(m) is close to ``padic_sqrt`` (the first
    factor of the split completion)."""

    field: QuadraticField
    p: int
    kind: str
    index: int = 0

    @property
    def residue(self) -> int:
        """rho with omega = rho (mod this prime); split and ramified only."""
        p = self.p
        if self.kind == "split":
            return self._omega_image_mod(p, 0)
        if self.kind == "ramified":
            f = self.field
            return next(r for r in range(p) if (r * r - f.omega_trace * r + f.omega_norm) % p == 0)
        raise InvalidInput("inert primes have no degree-one residue")

    @property
    def ideal(self) -> FieldIdeal:
        if self.kind == "inert":
            return FieldIdeal(self.field, Fraction(self.p), 1, 0)
        return FieldIdeal(self.field, Fraction(1), self.p, (-self.residue) % self.p)

    @property
    def norm(self) -> int:
        return self.p * self.p if self.kind == "inert" else self.p

    def conj(self) -> "PrimeIdeal":
        if self.kind == "split":
            return PrimeIdeal(self.field, self.p, self.kind, 1 - self.index)
        return self

    def valuation(self, t: FieldElement) -> int:
        if t.is_zero():
            raise InvalidInput("valuation of 0")
        n = t.norm()
        if self.kind == "inert":
            return _frac_valuation(n, self.p) // 2
        if self.kind == "ramified":
            return _frac_valuation(n, self.p)
        d = t.denominator()
        a, b = (t * d).integral_coords()
        a, b = int(a), int(b)
        n0 = valuation(int(n * d * d), self.p)
        mod = self.p ** (n0 + 1)
        image = (a + b * self._omega_image_mod(mod, n0)) % mod
        if image == 0:
            raise AssertionError("split valuation exceeded the norm bound")
        return valuation(image, self.p) - valuation(d, self.p)

    def _omega_image_mod(self, mod: int, k: int) -> int:
        # image of omega in Z_p modulo p**(k+1)
        p = self.p
        extra = 2 if p == 2 else 1
        r = padic_sqrt(self.field, p, k + extra)
        if self.index:
            r = -r
        if self.field.m % 4 == 1:
            big = p ** (k + extra)
            return ((1 + r) % big // 2 if p == 2 else (1 + r) * pow(2, -1, big)) % mod
        return r % mod

    def sort_key(self) -> tuple[int, int]:
        return (self.p, self.index)

    def __str__(self) -> str:
        if self.kind == "split":
            return f"P{self.p}_{self.index}"
        return f"P{self.p}"


@dataclass(frozen=True)
class SplittingType:
    kind: str
    primes: tuple[PrimeIdeal, ...]


def primes_above(field: QuadraticField, p: int) -> tuple[PrimeIdeal, ...]:
    kind = split_kind(field, p)
    if kind == "split":
        return (PrimeIdeal(field, p, kind, 0), PrimeIdeal(field, p, kind, 1))
    return (PrimeIdeal(field, p, kind),)


def ideal_factor(field: QuadraticField, p: int) -> SplittingType:
    """Splitting of the rational prime p in ``field``."""
    return SplittingType(split_kind(field, p), primes_above(field, p))


# --------------------------------------------------------------- divisors

Divisor = dict  # PrimeIdeal -> int, zero entries omitted


def divisor_of(t: FieldElement) -> Divisor:
    if t.is_zero():
        raise InvalidInput("divisor of 0")
    out = {}
    # norm alone can hide cancelling split exponents; clear denominators first
    d = t.denominator()
    for p in sorted(set(_primes_of_rational((t * d).norm())) | set(_primes_of_rational(Fraction(d)))):
        for P in primes_above(t.field, p):
            e = P.valuation(t)
            if e:
                out[P] = e
    return out


def ideal_from_divisor(field: QuadraticField, div: Divisor) -> FieldIdeal:
    acc = FieldIdeal.unit(field)
    for P, e in sorted(div.items(), key=lambda kv: kv[0].sort_key()):
        acc = acc * P.ideal**e
    return acc


def ideal_hilbert90(field: QuadraticField, v: FieldElement | Divisor) -> FieldIdeal:
    """J with div(v) = J / conj(J); needs the norm of div(v) to be trivial.

    J is the product of the split primes appearing in div(v) with positive
    exponent, so J is integral."""
    div = divisor_of(v) if isinstance(v, FieldElement) else dict(v)
    target = ideal_from_divisor(field, div)
    if target.norm() != 1:
        raise NotInKernel(f"divisor has norm {target.norm()}, not 1")
    j = {P: e for P, e in div.items() if e > 0}
    for P, e in div.items():
        if P.kind != "split" or div.get(P.conj(), 0) != -e:
            raise NotInKernel(f"divisor is not of the form J/conj(J) at {P}")
    J = ideal_from_divisor(field, j)
    if J / J.conj() != target:
        raise AssertionError("ideal Hilbert 90 identity failed")
    return J
