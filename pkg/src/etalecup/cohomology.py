"""Cohomology groups H^i(U, Z/n) of U = Spec O_K minus S, torsors and characters.

Punctured case (S a nonempty set of finite primes, K = Q):
    H^0 = Z/n, H^1 = (C_S/n)~, H^2 = (C_S[n])~, H^i = (Z/gcd(2, n))^r for i >= 3.
Unpunctured case (S = the real places, K = Q or quadratic):
    H^0 = Z/n, H^1 = (Cl^+/n)~, H^2 = (Z^1/B^1)~,
    H^3 = (mu_n(K_+) + (R^x/n)^r)~, H^i = ((R^x/n)^r)~ for i >= 4.
Duals are reported with the same invariant factors; characters take values
in Z/n, embedded in Q/Z by a -> a/n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .abelian import FiniteAbelianGroup, group_from_enumeration, invariant_factors
from .arith import factor_integer, iroot
from .errors import InvalidInput, Unsupported
from .forms import (
    canonical_form,
    class_group,
    compose_reduced,
    form_to_ideal,
    fundamental_unit,
    ideal_class_form,
    narrow_class_group,
    positive_representative,
    principal_form,
    principal_generator,
    wide_class_key,
)
from .ideles import IdeleRep, cs_mod_n, cs_torsion_n, normalize_S
from .local import hilbert_symbol
from .quadratic import FieldElement, FieldIdeal, QuadraticField, build_field

DEFAULT_MAX_DEGREE = 5


def _cyclic_sum(orders: Iterable[int], name: str = "") -> FiniteAbelianGroup:
    return FiniteAbelianGroup(invariant_factors([o for o in orders if o > 1]), name=name)


@dataclass(frozen=True)
class CohomologyProfile:
    """H^0 .. H^max_degree as finite abelian groups, plus the stable tail."""

    base: str
    S: tuple[int, ...]
    n: int
    groups: tuple[FiniteAbelianGroup, ...]
    stable_tail: FiniteAbelianGroup
    punctured: bool

    def group(self, i: int) -> FiniteAbelianGroup:
        if i < 0:
            raise InvalidInput("negative degree")
        if i < len(self.groups):
            return self.groups[i]
        return self.stable_tail

    def invariants(self, i: int) -> tuple[int, ...]:
        return self.group(i).invariants

    def orders(self) -> list[int]:
        return [g.order for g in self.groups]

    def __str__(self) -> str:
        parts = [f"H^{i} = {g}" for i, g in enumerate(self.groups)]
        return f"{self.base}, S={list(self.S)}, n={self.n}: " + "; ".join(parts) + f"; tail {self.stable_tail}"


def real_places(base: QuadraticField | None) -> int:
    if base is None:
        return 1
    return 2 if base.is_real else 0


def _base_name(base: QuadraticField | None) -> str:
    return "Q" if base is None else str(base)


def cohomology_punctured(S: Iterable[int], n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> CohomologyProfile:
    """H^i(Spec Z minus S, Z/n) for a nonempty set S of primes."""
    S = normalize_S(S)
    if not S:
        raise InvalidInput("S must be nonempty; see cohomology_unpunctured")
    tail = _cyclic_sum([math.gcd(2, n)] * real_places(None), name="H^tail")
    groups = [
        FiniteAbelianGroup((n,) if n > 1 else (), name="H^0"),
        cs_mod_n(S, n).dual(name="H^1"),
        cs_torsion_n(S, n).dual(name="H^2"),
    ]
    while len(groups) <= max_degree:
        groups.append(FiniteAbelianGroup(tail.invariants, name=f"H^{len(groups)}"))
    return CohomologyProfile("Q", S, n, tuple(groups[: max_degree + 1]), tail, True)


def roots_of_unity_count(field: QuadraticField | None) -> int:
    """|mu(K)| by enumerating elements of norm 1 with bounded coordinates."""
    if field is None or field.is_real:
        return 2
    count = 0
    # units of an imaginary quadratic order have |x|, |y| <= 1 in the omega basis
    for a, b in product(range(-2, 3), repeat=2):
        if field.from_integral(a, b).norm() == 1:
            count += 1
    return count


def mu_n_totally_positive(field: QuadraticField | None, n: int) -> int:
    """|mu_n(K_+)|: 1 with a real place, else gcd(n, |mu(K)|)."""
    if field is None or field.is_real:
        return 1
    return math.gcd(n, roots_of_unity_count(field))


def cohomology_unpunctured(field: QuadraticField | None, n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> CohomologyProfile:
    """H^i(Spec O_K, Z/n) with K = Q (field None) or a quadratic field."""
    if n < 1:
        raise InvalidInput("modulus must be positive")
    r = real_places(field)
    real_part = [math.gcd(2, n)] * r
    if field is None:
        h1 = FiniteAbelianGroup((), name="H^1")
    else:
        h1 = FiniteAbelianGroup(narrow_class_group(field).torsion_invariants(n), name="H^1")
    z1 = z1_mod_b1(field, n)
    groups = [
        FiniteAbelianGroup((n,) if n > 1 else (), name="H^0"),
        h1,
        FiniteAbelianGroup(z1.invariants, name="H^2"),
        _cyclic_sum([mu_n_totally_positive(field, n)] + real_part, name="H^3"),
    ]
    tail = _cyclic_sum(real_part, name="H^tail")
    while len(groups) <= max_degree:
        groups.append(FiniteAbelianGroup(tail.invariants, name=f"H^{len(groups)}"))
    return CohomologyProfile(_base_name(field), (), n, tuple(groups[: max_degree + 1]), tail, False)


# --------------------------------------------------------------- Z^1 / B^1


@dataclass(frozen=True)
class Z1B1Element:
    """(a, I) with a totally positive and div(a) I^n = 1."""

    field: QuadraticField | None
    n: int
    a: FieldElement | Fraction
    ideal: FieldIdeal | Fraction  # a positive rational stands for the ideal it generates over Q

    def verify(self) -> "Z1B1Element":
        if self.field is None:
            a, i = Fraction(self.a), Fraction(self.ideal)
            if a <= 0 or i <= 0 or a * i**self.n != 1:
                raise AssertionError(f"{self} violates div(a) I^n = 1 or positivity")
            return self
        if not self.a.is_totally_positive():
            raise AssertionError(f"{self.a} is not totally positive")
        if (FieldIdeal.principal(self.a) * self.ideal**self.n) != FieldIdeal.unit(self.field):
            raise AssertionError("div(a) I^n is not trivial")
        return self

    def __mul__(self, other: "Z1B1Element") -> "Z1B1Element":
        return Z1B1Element(self.field, self.n, self.a * other.a, self.ideal * other.ideal)

    def __str__(self) -> str:
        return f"(a={self.a}, I={self.ideal})"


def _z1b1_over_Q(n: int, height: int = 30) -> FiniteAbelianGroup:
    """Brute force: every positive a of bounded height with div(a) in n*Div is
    normalized by B^1 to (1, 1); the quotient is therefore trivial."""
    for num in range(1, height + 1):
        for den in range(1, height + 1):
            if math.gcd(num, den) != 1:
                continue
            a = Fraction(num, den)
            rn, ok_n = iroot(num, n)
            rd, ok_d = iroot(den, n)
            if not (ok_n and ok_d):
                # div(a) would not be divisible by n unless both are n-th powers
                if all(e % n == 0 for _, e in (factor_integer(num).factors + factor_integer(den).factors)):
                    raise AssertionError("n-th power test disagrees with factorization")
                continue
            elem = Z1B1Element(None, n, a, 1 / Fraction(rn, rd)).verify()
            b = Fraction(rn, rd)
            # multiply by the inverse of the boundary (b^-n, div b)
            reduced = Z1B1Element(None, n, elem.a * b**-n, elem.ideal * b).verify()
            if reduced.a != 1 or reduced.ideal != 1:
                raise AssertionError("normalization over Q failed")
    return FiniteAbelianGroup((), name="Z1/B1")


def _unit_generator(field: QuadraticField) -> tuple[FieldElement, int]:
    """(generator, order) of the torsion units, or (fundamental unit, 0)."""
    if field.is_real:
        return fundamental_unit(field), 0
    w = roots_of_unity_count(field)
    for a, b in product(range(-2, 3), repeat=2):
        z = field.from_integral(a, b)
        if z.norm() != 1:
            continue
        if all(z ** (w // q) != field.one for q in factor_integer(w).primes()):
            return z, w
    raise AssertionError("no primitive root of unity found")


def z1_mod_b1(field: QuadraticField | None, n: int) -> FiniteAbelianGroup:
    """Z^1/B^1 with Z1B1Element generators."""
    if n < 1:
        raise InvalidInput("modulus must be positive")
    if field is None:
        return _z1b1_over_Q(n)
    narrow = n % 2 == 1
    cl = narrow_class_group(field) if narrow else class_group(field)
    disc = field.disc
    identity_form = canonical_form(principal_form(disc))

    def class_key(I: FieldIdeal):
        f = ideal_class_form(I)
        return canonical_form(f) if narrow else wide_class_key(f)

    def form_of(coords):
        acc = identity_form
        for g, c in zip(cl.generators, coords):
            for _ in range(c):
                acc = compose_reduced(acc, g)
        return acc

    one = field.one
    eps, w = _unit_generator(field)
    if field.is_real:
        t = 1 if eps.norm() == 1 else 2
        kernel_gen = eps**t
        quotient = n if narrow else n // t
    else:
        kernel_gen, t = eps, 1
        quotient = math.gcd(n, w)

    # candidate elements: one per n-torsion class whose n-th power has a
    # totally positive generator, plus the unit part
    reps: dict = {}
    candidates = []
    for coords in cl.elements():
        if any((n * c) % d for c, d in zip(coords, cl.invariants)):
            continue
        I = form_to_ideal(field, positive_representative(form_of(coords)))
        g = principal_generator(I**n, narrow=narrow)
        if g is None:
            continue
        units = [one, -one]
        if field.is_real:
            units += [eps, -eps]
        a = next((u / g for u in units if (u / g).is_totally_positive()), None)
        if a is None:
            continue
        elem = Z1B1Element(field, n, a, I).verify()
        reps[class_key(I)] = elem
        candidates.append(elem)
    candidates.append(Z1B1Element(field, n, kernel_gen, FieldIdeal.unit(field)).verify())

    def key(x: Z1B1Element):
        ck = class_key(x.ideal)
        base = reps[ck]
        b0 = principal_generator(x.ideal / base.ideal, narrow=narrow)
        if b0 is None:
            raise AssertionError("ideal not equivalent to its class representative")
        if narrow and field.is_real and not b0.is_totally_positive():
            b0 = -b0
        u = x.a * b0**n / base.a
        return ck, _unit_index(u, eps, t, quotient, field)

    identity = Z1B1Element(field, n, one, FieldIdeal.unit(field))
    return group_from_enumeration(candidates, identity, lambda x, y: x * y, key, name="Z1/B1")


def _log_unit(u: FieldElement) -> float:
    """log|u| at the first embedding for a unit u, without float overflow."""
    x, y = abs(u.x), abs(u.y)
    if y == 0:
        return 0.0
    big = math.log(y.numerator) - math.log(y.denominator) + 0.5 * math.log(u.field.m) + math.log1p(float(x / y) / math.sqrt(u.field.m))
    # |x| + |y| sqrt(m) is the larger of |u| and |conj(u)|, and their product is 1
    same_sign = (u.x >= 0) == (u.y >= 0)
    return big if same_sign else -big


def _unit_index(u: FieldElement, gen: FieldElement, step: int, quotient: int, field: QuadraticField) -> int:
    """j mod quotient with u = gen^(step * j) times an allowed n-th power."""
    if field.is_real:
        if not u.is_totally_positive():
            raise AssertionError("unit with the wrong sign")
        j = round(_log_unit(u) / _log_unit(gen))
        if gen**j != u or j % step:
            raise AssertionError("unit is not a power of the chosen generator")
        return (j // step) % quotient
    for j in range(step * quotient * 12):
        if gen**j == u:
            return j % quotient
    raise AssertionError("not a root of unity")


# -------------------------------------------------------------- torsors


def prime_discriminant(p: int) -> int:
    if p == 2:
        raise InvalidInput("2 has three prime discriminants: -4, 8, -8")
    return p if p % 4 == 1 else -p


def _squarefree_kernel(D: int) -> int:
    return D // 4 if D % 4 == 0 else D


@dataclass(frozen=True)
class TorsorClass:
    """A Z/n-torsor induced from a cyclic extension of degree d | n.

    ``disc`` is the fundamental discriminant of the quadratic field, or 1
    for the trivial torsor.  The generator sigma is sqrt(D) -> -sqrt(D).
    """

    disc: int
    n: int = 2
    S: tuple[int, ...] = ()

    @property
    def degree(self) -> int:
        return 1 if self.disc == 1 else 2

    @property
    def field(self) -> QuadraticField | None:
        return None if self.disc == 1 else build_field(_squarefree_kernel(self.disc))

    @property
    def sigma(self) -> str:
        return "sqrt(D) -> -sqrt(D)"

    def is_trivial(self) -> bool:
        return self.disc == 1

    def __str__(self) -> str:
        return "trivial" if self.disc == 1 else f"Q(sqrt({_squarefree_kernel(self.disc)}))"


def trivial_torsor(S: Sequence[int] = (), n: int = 2) -> TorsorClass:
    return TorsorClass(1, n, normalize_S(S))


def torsor_for(D: int, S: Iterable[int], n: int = 2) -> TorsorClass:
    """The torsor of Q(sqrt D) at modulus n; D must be a fundamental discriminant supported on S."""
    S = normalize_S(S)
    if D != 1:
        if n % 2:
            raise InvalidInput("a quadratic torsor needs an even modulus")
        m = _squarefree_kernel(D)
        fd = build_field(m).disc
        if fd != D:
            raise InvalidInput(f"{D} is not a fundamental discriminant")
        bad = [p for p in factor_integer(D).primes() if p not in S]
        if bad:
            raise InvalidInput(f"Q(sqrt {m}) ramifies at {bad}, outside S")
    return TorsorClass(D, n, S)


def discriminant_basis(S: Iterable[int]) -> list[int]:
    """Prime discriminants generating the torsors at n = 2: p* for odd p, and -4, 8 for 2."""
    S = normalize_S(S)
    out = []
    if 2 in S:
        out += [-4, 8]
    out += [prime_discriminant(p) for p in S if p != 2]
    return out


def fundamental_part(D: int) -> int:
    """The fundamental discriminant of Q(sqrt D) (1 when D is a square)."""
    core = 1
    sign = -1 if D < 0 else 1
    for p, e in factor_integer(D).factors:
        if e % 2:
            core *= p
    core *= sign
    if core == 1:
        return 1
    return build_field(core).disc


def enumerate_torsors(S: Iterable[int], n: int = 2) -> list[TorsorClass]:
    """Nontrivial quadratic torsors unramified outside S (ramification at infinity allowed)."""
    if n != 2:
        raise Unsupported("torsor enumeration is only provided for n = 2")
    S = normalize_S(S)
    if not S:
        raise InvalidInput("S must be nonempty")
    odd = [prime_discriminant(p) for p in S if p != 2]
    twos = [1, -4, 8, -8] if 2 in S else [1]
    out = set()
    for mask in product((0, 1), repeat=len(odd)):
        base = math.prod(d for d, bit in zip(odd, mask) if bit)
        for t in twos:
            D = base * t
            if D != 1:
                out.add(D)
    return [TorsorClass(D, 2, S) for D in sorted(out, key=lambda d: (abs(d), d))]


def torsor_character(y: TorsorClass, alpha: IdeleRep) -> int:
    """<y, alpha> in Z/n: (n/2) * #{v : (alpha_v, D)_v = -1}."""
    if alpha.n != y.n:
        raise InvalidInput(f"idele at modulus {alpha.n}, torsor at modulus {y.n}")
    if y.is_trivial():
        return 0
    D = y.disc
    flips = sum(1 for v, x in alpha.components if hilbert_symbol(x, D, v) == -1)
    return (y.n // 2) * flips % y.n


def induce_torsor(z: TorsorClass, n: int) -> TorsorClass:
    """Ind from Z/d to Z/n: same extension, characters scaled by n/d."""
    if n % z.degree or n < 1:
        raise InvalidInput(f"degree {z.degree} does not divide {n}")
    if z.degree == 2 and z.n % 2:
        raise InvalidInput("inconsistent torsor")
    return TorsorClass(z.disc, n, z.S)


# ------------------------------------------------------------ characters


@dataclass(frozen=True)
class Character:
    """A homomorphism C_S/n -> Z/n given by its values on the generators of cs_mod_n."""

    S: tuple[int, ...]
    n: int
    values: tuple[int, ...]

    def __call__(self, alpha: IdeleRep) -> int:
        G = cs_mod_n(self.S, self.n)
        coords = G.coordinates(alpha)
        return sum(c * v for c, v in zip(coords, self.values)) % self.n

    def __add__(self, other: "Character") -> "Character":
        return Character(self.S, self.n, tuple((a + b) % self.n for a, b in zip(self.values, other.values)))

    def coordinates(self) -> tuple[int, ...]:
        """Coordinates in the dual basis of H^1."""
        G = cs_mod_n(self.S, self.n)
        return tuple(v // (self.n // d) % d for v, d in zip(self.values, G.invariants))


def character_of(y: TorsorClass, S: Iterable[int] | None = None) -> Character:
    S = normalize_S(S if S is not None else y.S)
    G = cs_mod_n(S, y.n)
    return Character(S, y.n, tuple(torsor_character(y, g) for g in G.generators))


def h1_dual_basis(S: Iterable[int], n: int) -> list[Character]:
    """The basis of H^1 = (C_S/n)~ dual to the generators of cs_mod_n."""
    S = normalize_S(S)
    G = cs_mod_n(S, n)
    return [
        Character(S, n, tuple((n // d) if i == j else 0 for j in range(G.rank)))
        for i, d in enumerate(G.invariants)
    ]
