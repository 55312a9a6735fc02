"""Cup products H^1 x H^1 -> H^2 over U = Spec Z minus S, by idelic descent.

For a torsor y of degree d with field L, an n-torsion class alpha given by a
triple (b, frak_b, alpha_S), and h = n/d, the descent data are

    t in L        with N(t) = 1/b,
    I an ideal    with frak_b^h O_L = div(t) I / sigma(I) away from S,
    beta_v        with alpha_v^h = t beta_v / sigma(beta_v) at S and infinity,

and <y cup z, alpha> = <z, alpha^e N(beta)^h> with the off-S part of the
idele given by frak_b^e N(I)^h, where e = h * n(d+1)/2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .arith import factor_integer, jacobi_symbol, primes_below
from .cohomology import (
    TorsorClass,
    character_of,
    discriminant_basis,
    fundamental_part,
    torsor_character,
    torsor_for,
)
from .errors import DescentFailure, InvalidInput, NoSolution, NotInKernel, Unsupported
from .ideles import (
    IdeleRep,
    TorsionTriple,
    cs_mod_n,
    cs_torsion_n,
    idele_reduce,
    normalize_S,
    torsion_triple,
)
from .local import REAL, LocalAlgebra, Place, frac_valuation, local_hilbert90
from .norms import solve_norm_equation
from .quadratic import (
    FieldElement,
    FieldIdeal,
    PrimeIdeal,
    QuadraticField,
    divisor_of,
    ideal_hilbert90,
    primes_above,
)


def cup_exponent(n: int, d: int) -> int:
    """e = (n/d) * n(d+1)/2; congruent to n^2/2d mod n for even n."""
    if n % d:
        raise InvalidInput(f"degree {d} does not divide {n}")
    return (n // d) * (n * (d + 1) // 2)


def _places(S: Sequence[int]) -> tuple[Place, ...]:
    return (REAL,) + tuple(Place(p) for p in S)


@dataclass
class DescentData:
    """t, I and beta for one (torsor, torsion class) pair."""

    torsor: TorsorClass
    triple: TorsionTriple
    t: FieldElement
    I: FieldIdeal
    beta: dict[Place, Any] = field(default_factory=dict)

    @property
    def field(self) -> QuadraticField:
        return self.torsor.field

    @property
    def h(self) -> int:
        return self.triple.n // self.torsor.degree

    def algebra(self, v: Place) -> LocalAlgebra:
        return LocalAlgebra(self.field, v, self.triple.n)

    def check(self) -> list[str]:
        bad = []
        L, S, h = self.field, self.triple.S, self.h
        if self.t.norm() != 1 / self.triple.b:
            bad.append(f"N(t) = {self.t.norm()} differs from 1/b = {1 / self.triple.b}")
        lhs = _frak_b_divisor(L, self.triple, h)
        rhs = _divisor_off_S(divisor_of(self.t), S)
        for P, e in _divisor_off_S(self.I.factorization(), S).items():
            rhs[P] = rhs.get(P, 0) + e
            rhs[P.conj()] = rhs.get(P.conj(), 0) - e
        rhs = {P: e for P, e in rhs.items() if e}
        if lhs != rhs:
            bad.append("frak_b^h differs from div(t) I / sigma(I) away from S")
        for v in _places(S):
            alg = self.algebra(v)
            beta = self.beta.get(v, alg.one())
            lhs_v = alg.power(alg.embed_base(self.triple.alpha_at(v)), h)
            rhs_v = alg.mul(alg.embed(self.t), alg.div(beta, alg.conj(beta)))
            if not alg.is_close_to_one(alg.div(lhs_v, rhs_v)):
                bad.append(f"alpha^h = t beta / sigma(beta) fails at {v}")
        return bad

    def verify(self) -> "DescentData":
        bad = self.check()
        if bad:
            raise AssertionError("; ".join(bad))
        return self

    def norm_beta(self, v: Place) -> Fraction:
        """N(beta_v) as a rational representative (archimedean: a sign)."""
        alg = self.algebra(v)
        beta = self.beta.get(v, alg.one())
        nm = alg.norm(beta)
        if v.is_real:
            return Fraction(1 if nm > 0 else -1)
        return Fraction(nm)

    def output_idele(self) -> IdeleRep:
        """alpha^e N(beta)^h on S and infinity, frak_b^e N(I)^h elsewhere."""
        n, h, S = self.triple.n, self.h, self.triple.S
        e = cup_exponent(n, self.torsor.degree)
        comps: dict[Place, Fraction] = {}
        for v in _places(S):
            comps[v] = self.triple.alpha_at(v) ** e * self.norm_beta(v) ** h
        exps = {l: e * k for l, k in self.triple.frak_b}
        nI = self.I.norm()
        for l in _primes_of(nI):
            if l not in S:
                exps[l] = exps.get(l, 0) + h * frac_valuation(nI, l)
        for l, k in exps.items():
            if k:
                comps[Place(l)] = Fraction(l) ** k
        return IdeleRep.from_dict(n, comps)


def _primes_of(q: Fraction) -> list[int]:
    out = set()
    for part in (q.numerator, q.denominator):
        if abs(part) > 1:
            out.update(factor_integer(part).primes())
    return sorted(out)


def _divisor_off_S(div: dict[PrimeIdeal, int], S: Sequence[int]) -> dict[PrimeIdeal, int]:
    return {P: e for P, e in div.items() if P.p not in S and e}


def _frak_b_divisor(L: QuadraticField, triple: TorsionTriple, h: int) -> dict[PrimeIdeal, int]:
    out = {}
    for l, e in triple.frak_b:
        for P in primes_above(L, l):
            out[P] = out.get(P, 0) + e * h * (2 if P.kind == "ramified" else 1)
    return {P: e for P, e in out.items() if e}


def _random_unit_rational(rng: random.Random, avoid: Sequence[int]) -> Fraction:
    choices = [q for q in (3, 5, 7, 11, 13, 17) if q not in avoid]
    num = rng.choice(choices) ** rng.randint(0, 2)
    den = rng.choice(choices) ** rng.randint(0, 2)
    return Fraction(num * rng.choice((1, -1)), den)


def solve_descent(
    y: TorsorClass,
    alpha: TorsionTriple,
    n: int | None = None,
    rng: random.Random | None = None,
) -> DescentData:
    """Descent data for y and alpha, re-verified exactly before returning.

    With ``rng`` every free choice is perturbed: t by elements of norm one
    (and even powers of the fundamental unit), I by a rational ideal, and
    each beta_v by a scalar of Q_v."""
    n = alpha.n if n is None else n
    if n != alpha.n or y.n != n:
        raise InvalidInput("torsor, torsion class and modulus disagree")
    if y.degree == 1:
        raise Unsupported("the trivial torsor needs no descent")
    if y.degree != 2:
        raise Unsupported("solvers are provided for quadratic torsors only")
    L = y.field
    S = alpha.S
    h = n // y.degree
    try:
        t = solve_norm_equation(L, 1 / alpha.b, rng=rng)
    except NoSolution as exc:
        raise DescentFailure(f"norm equation for {alpha}: {exc}") from exc
    target = _frak_b_divisor(L, alpha, h)
    for P, e in _divisor_off_S(divisor_of(t), S).items():
        target[P] = target.get(P, 0) - e
    target = {P: e for P, e in target.items() if e}
    try:
        I = ideal_hilbert90(L, target)
    except NotInKernel as exc:
        raise DescentFailure(f"ideal Hilbert 90: {exc}") from exc
    if rng is not None:
        I = I.scaled(_random_unit_rational(rng, S))
    beta = {}
    for v in _places(S):
        alg = LocalAlgebra(L, v, n)
        c = alg.div(alg.power(alg.embed_base(alpha.alpha_at(v)), h), alg.embed(t))
        try:
            b_v = local_hilbert90(c, L, v, n)
        except NotInKernel as exc:
            raise DescentFailure(f"local Hilbert 90 at {v}: {exc}") from exc
        if rng is not None and not v.is_real:
            b_v = alg.mul(b_v, alg.embed_base(_random_unit_rational(rng, ()) * Fraction(v.p) ** rng.randint(-1, 1)))
        beta[v] = b_v
    return DescentData(y, alpha, t, I, beta).verify()


def _as_triple(alpha: IdeleRep | TorsionTriple, S: tuple[int, ...]) -> TorsionTriple:
    return alpha if isinstance(alpha, TorsionTriple) else torsion_triple(alpha, S)


def cup_value(
    y: TorsorClass,
    z: TorsorClass,
    alpha: IdeleRep | TorsionTriple,
    S: Iterable[int],
    n: int = 2,
    rng: random.Random | None = None,
    cross_check: bool = True,
) -> int:
    """<y cup z, alpha> in Z/n."""
    S = normalize_S(S)
    if y.n != n or z.n != n:
        raise InvalidInput("torsors must be given at modulus n")
    if y.is_trivial() or z.is_trivial():
        return 0
    triple = _as_triple(alpha, S)
    data = solve_descent(y, triple, n, rng=rng)
    idele = data.output_idele()
    value = torsor_character(z, idele)
    if cross_check:
        G = cs_mod_n(S, n)
        coords = idele_reduce(idele, G)
        via_group = sum(c * w for c, w in zip(coords, character_of(z, S).values)) % n
        if via_group != value:
            raise AssertionError("character disagrees with its reduction into C_S/n")
    return value


def cup_h1_h1(
    y: TorsorClass,
    z: TorsorClass,
    S: Iterable[int],
    n: int = 2,
    rng: random.Random | None = None,
) -> tuple[int, ...]:
    """Values of y cup z on the generators of C_S[n] (an element of H^2)."""
    S = normalize_S(S)
    T = cs_torsion_n(S, n)
    return tuple(cup_value(y, z, g, S, n, rng=rng) for g in T.generators)


def h2_evaluate(values: Sequence[int], alpha: IdeleRep | TorsionTriple, S: Iterable[int], n: int) -> int:
    """Evaluate an H^2 class, given by its values on the generators of C_S[n], at alpha."""
    S = normalize_S(S)
    T = cs_torsion_n(S, n)
    coords = T.coordinates(_as_triple(alpha, S))
    return sum(c * v for c, v in zip(coords, values)) % n


# ------------------------------------------------------------ tables


@dataclass(frozen=True)
class PairingTable:
    S: tuple[int, ...]
    n: int
    basis: tuple[TorsorClass, ...]
    entries: tuple[tuple[tuple[int, ...], ...], ...]  # entries[i][j] = vector of y_i cup y_j

    def entry(self, i: int, j: int) -> tuple[int, ...]:
        return self.entries[i][j]

    def vanishes(self, i: int, j: int) -> bool:
        return not any(self.entries[i][j])

    def is_symmetric(self) -> bool:
        k = len(self.basis)
        return all(self.entries[i][j] == self.entries[j][i] for i in range(k) for j in range(k))

    def rows(self) -> list[tuple[int, int, tuple[int, ...]]]:
        """(disc_y, disc_z, vector) in row-major order."""
        return [
            (y.disc, z.disc, self.entries[i][j])
            for i, y in enumerate(self.basis)
            for j, z in enumerate(self.basis)
        ]


def h1_basis(S: Iterable[int], n: int = 2) -> list[TorsorClass]:
    """Torsors of the prime discriminants of S: a basis of H^1 at n = 2."""
    S = normalize_S(S)
    return [torsor_for(D, S, n) for D in discriminant_basis(S)]


def pairing_table(S: Iterable[int], n: int = 2) -> PairingTable:
    if n != 2:
        raise Unsupported("pairing tables are built at n = 2")
    S = normalize_S(S)
    basis = h1_basis(S, n)
    entries = tuple(tuple(cup_h1_h1(y, z, S, n) for z in basis) for y in basis)
    return PairingTable(S, n, tuple(basis), entries)


def torsor_product(y: TorsorClass, z: TorsorClass) -> TorsorClass:
    """The sum in H^1 at n = 2: Q(sqrt D1 D2)."""
    if y.n != 2 or z.n != 2:
        raise Unsupported("torsor products are implemented at n = 2")
    return TorsorClass(fundamental_part(y.disc * z.disc), 2, tuple(sorted(set(y.S) | set(z.S))))


# ------------------------------------------------------- unpunctured case


def cup_unpunctured(y: TorsorClass, z: TorsorClass, n: int = 2) -> int:
    """Cup product over Spec Z: the target H^2 = (Z^1/B^1)~ is trivial, so 0."""
    from .cohomology import z1_mod_b1

    for x in (y, z):
        if not x.is_trivial():
            raise InvalidInput(f"{x} is ramified at a finite prime, so it is not a torsor over Spec Z")
    group = z1_mod_b1(None, n)
    return 0 if group.order == 1 else _unexpected()


def _unexpected() -> int:
    raise AssertionError("Z^1/B^1 over Q should be trivial")


# ------------------------------------------- real places and high degrees


@dataclass(frozen=True)
class HighClass:
    """An element of H^i for i >= 3, stored by its restriction to the real place."""

    degree: int
    values: tuple[int, ...]


@dataclass(frozen=True)
class H2Class:
    S: tuple[int, ...]
    n: int
    values: tuple[int, ...]


def restrict_to_real(x: TorsorClass | H2Class | HighClass, i: int | None = None) -> tuple[int, ...]:
    """Image in H^i(R, Z/2) = Z/2 at the real place of Q.

    Degree 1: the torsor's character at -1 in R.  Degree 2: the class
    evaluated at the image of -1 at the real place in C_S[n].  Degree >= 3:
    the stored presentation."""
    if isinstance(x, TorsorClass):
        if i not in (None, 1):
            raise InvalidInput("torsors live in degree 1")
        if x.n != 2:
            raise Unsupported("restriction is implemented at n = 2")
        return (torsor_character(x, IdeleRep.from_dict(x.n, {REAL: -1})),)
    if isinstance(x, H2Class):
        if i not in (None, 2):
            raise InvalidInput("H2Class lives in degree 2")
        sign = IdeleRep.from_dict(x.n, {REAL: -1})
        return (h2_evaluate(x.values, sign, x.S, x.n),)
    if isinstance(x, HighClass):
        return x.values
    raise InvalidInput(f"cannot restrict {x!r}")


def _degree(x) -> int:
    if isinstance(x, TorsorClass):
        return 1
    if isinstance(x, H2Class):
        return 2
    return x.degree


def cup_high(x, y) -> HighClass:
    """x cup y for total degree >= 3 at n = 2, computed in H*(R, Z/2) = F_2[w]."""
    i, j = _degree(x), _degree(y)
    if i + j < 3:
        raise InvalidInput("cup_high needs total degree at least 3")
    rx, ry = restrict_to_real(x), restrict_to_real(y)
    return HighClass(i + j, tuple((a * b) % 2 for a, b in zip(rx, ry)))


def cup_class(y: TorsorClass, z: TorsorClass, S: Iterable[int], n: int = 2) -> H2Class:
    S = normalize_S(S)
    return H2Class(S, n, cup_h1_h1(y, z, S, n))


# ----------------------------------------------------------- reciprocity


@dataclass(frozen=True)
class ReciprocityRecord:
    p: int
    q: int
    cup_pq_vanishes: bool
    cup_qp_vanishes: bool
    jacobi_pq: int
    jacobi_qp: int

    @property
    def passed(self) -> bool:
        a, b = self.cup_pq_vanishes, self.cup_qp_vanishes
        return a == b == (self.jacobi_pq == 1) == (self.jacobi_qp == 1)


@dataclass(frozen=True)
class ReciprocityReport:
    bound: int
    records: tuple[ReciprocityRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[ReciprocityRecord]:
        return [r for r in self.records if not r.passed]


def qualifying_pairs(bound: int) -> list[tuple[int, int]]:
    ps = [p for p in primes_below(bound) if p % 4 == 1]
    return [(p, q) for i, p in enumerate(ps) for q in ps[i + 1 :]]


def verify_reciprocity(bound: int) -> ReciprocityReport:
    """Compare x_p cup x_q, x_q cup x_p and the Legendre symbols for p < q < bound, p = q = 1 mod 4."""
    records = []
    for p, q in qualifying_pairs(bound):
        S = (p, q)
        xp, xq = torsor_for(p, S), torsor_for(q, S)
        records.append(
            ReciprocityRecord(
                p,
                q,
                not any(cup_h1_h1(xp, xq, S)),
                not any(cup_h1_h1(xq, xp, S)),
                jacobi_symbol(p, q),
                jacobi_symbol(q, p),
            )
        )
    return ReciprocityReport(bound, tuple(records))
