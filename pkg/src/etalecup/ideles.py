"""Finite presentations of C_S(Q)/n and C_S(Q)[n].

C_S(Q) = I_Q / Q^x U_S where U_S is the product of the local units at
primes outside S; the real place always belongs to S.  Every class has a
representative supported on S and the real place, and its image mod n is
read off from local classes there, modulo the diagonal images of -1 and
of the primes in S.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .abelian import FiniteAbelianGroup, Presentation
from .arith import discrete_log, factor_integer, is_prime, primitive_root
from .errors import InvalidInput, NotTorsion, Unsupported
from .local import (
    REAL,
    LocalClass,
    Place,
    frac_valuation,
    local_class,
    precision_exponent,
    roots_of_unity_generator,
    unit_residue,
    unit_shape,
)


def normalize_S(S: Iterable[int]) -> tuple[int, ...]:
    primes = tuple(sorted(set(int(p) for p in S)))
    for p in primes:
        if not is_prime(p):
            raise InvalidInput(f"{p} is not prime")
    return primes


def _rational_primes(q: Fraction) -> list[int]:
    out: set[int] = set()
    for part in (q.numerator, q.denominator):
        if abs(part) > 1:
            out.update(factor_integer(part).primes())
    return sorted(out)


@dataclass(frozen=True)
class IdeleRep:
    """A finitely supported idele of Q at modulus n.

    ``components`` maps places to rational representatives; missing places
    carry the component 1.  Local classes are derived on demand.
    """

    n: int
    components: tuple[tuple[Place, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, n: int, comps: dict[Place, Fraction | int]) -> "IdeleRep":
        items = []
        for v, x in sorted(comps.items()):
            x = Fraction(x)
            if x == 0:
                raise InvalidInput(f"zero component at {v}")
            if x != 1:
                items.append((v, x))
        return cls(n, tuple(items))

    @classmethod
    def trivial(cls, n: int) -> "IdeleRep":
        return cls(n, ())

    @classmethod
    def diagonal(cls, q: Fraction | int, places: Iterable[Place], n: int) -> "IdeleRep":
        """The principal idele q restricted to ``places`` (all places where q matters)."""
        return cls.from_dict(n, {v: q for v in places})

    @classmethod
    def principal(cls, q: Fraction | int, S: Iterable[int], n: int) -> "IdeleRep":
        """The full diagonal image of q: S, the real place and every prime of q."""
        q = Fraction(q)
        places = {REAL} | {Place(p) for p in S} | {Place(p) for p in _rational_primes(q)}
        return cls.diagonal(q, places, n)

    def as_dict(self) -> dict[Place, Fraction]:
        return dict(self.components)

    def component(self, v: Place) -> Fraction:
        return self.as_dict().get(v, Fraction(1))

    @property
    def support(self) -> tuple[Place, ...]:
        return tuple(v for v, _ in self.components)

    def __mul__(self, other: "IdeleRep") -> "IdeleRep":
        if other.n != self.n:
            raise InvalidInput("ideles at different moduli")
        d = self.as_dict()
        for v, x in other.components:
            d[v] = d.get(v, Fraction(1)) * x
        return IdeleRep.from_dict(self.n, d)

    def __pow__(self, k: int) -> "IdeleRep":
        return IdeleRep.from_dict(self.n, {v: x**k for v, x in self.components})

    def local_class(self, v: Place) -> LocalClass:
        return local_class(self.component(v), v, self.n)

    def __str__(self) -> str:
        if not self.components:
            return "(1)"
        return "(" + ", ".join(f"{v}: {x}" for v, x in self.components) + ")"


# ------------------------------------------------------------ C_S / n


@dataclass(frozen=True)
class _Layout:
    """Ambient coordinates: [sign] then per p in S [valuation, unit coords]."""

    S: tuple[int, ...]
    n: int

    @property
    def places(self) -> tuple[Place, ...]:
        return (REAL,) + tuple(Place(p) for p in self.S)

    def blocks(self) -> list[tuple[Place, int, tuple[int, ...]]]:
        out = []
        pos = 0
        for v in self.places:
            mods = unit_shape(v, self.n) if v.is_real else (self.n,) + unit_shape(v, self.n)
            out.append((v, pos, mods))
            pos += len(mods)
        return out

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(m for _, _, mods in self.blocks() for m in mods)

    def class_vector(self, v: Place, x: Fraction) -> list[int]:
        vec = [0] * len(self.moduli)
        for w, pos, mods in self.blocks():
            if w == v:
                for i, c in enumerate(local_class(x, v, self.n).vector()):
                    vec[pos + i] = c
        return vec

    def diagonal_vector(self, q: Fraction | int) -> list[int]:
        """Ambient image of a global element, using only the places S and infinity."""
        q = Fraction(q)
        out = [0] * len(self.moduli)
        for v in self.places:
            out = [a + b for a, b in zip(out, self.class_vector(v, q))]
        return out

    def ambient(self, x: IdeleRep) -> list[int]:
        if x.n != self.n:
            raise InvalidInput(f"idele at modulus {x.n}, group at modulus {self.n}")
        vec = [0] * len(self.moduli)
        inS = set(self.places)
        for v, val in x.components:
            if v in inS:
                part = self.class_vector(v, val)
            else:
                # multiply by the principal idele l^(-e): the l-component
                # becomes a unit (in U_S), the S-components pick up l^(-e)
                e = frac_valuation(val, v.p)
                part = [-e * c for c in self.diagonal_vector(v.p)]
            vec = [a + b for a, b in zip(vec, part)]
        return [c % m for c, m in zip(vec, self.moduli)]

    def relations(self) -> list[list[int]]:
        return [self.diagonal_vector(-1)] + [self.diagonal_vector(p) for p in self.S]

    def idele_from_vector(self, vec: tuple[int, ...]) -> IdeleRep:
        comps: dict[Place, Fraction] = {}
        for v, pos, mods in self.blocks():
            part = vec[pos : pos + len(mods)]
            if v.is_real:
                cls = LocalClass(v, self.n, 0, tuple(part))
            else:
                cls = LocalClass(v, self.n, part[0], tuple(part[1:]))
            comps[v] = cls.representative()
        return IdeleRep.from_dict(self.n, comps)


@dataclass(frozen=True)
class IdeleGroup(FiniteAbelianGroup):
    """A FiniteAbelianGroup that also remembers (S, n) and its flavour."""

    S: tuple[int, ...] = ()
    n: int = 0
    kind: str = ""


def _check_S(S, n) -> tuple[int, ...]:
    S = normalize_S(S)
    if not S:
        raise Unsupported("S must be nonempty; use the unpunctured code path for S = {infinity}")
    if n < 1:
        raise InvalidInput("modulus must be positive")
    return S


@lru_cache(maxsize=512)
def _cs_mod_n(S: tuple[int, ...], n: int) -> IdeleGroup:
    lay = _Layout(S, n)
    pres = Presentation.build(lay.moduli, lay.relations())
    base = pres.group(lay.idele_from_vector, lay.ambient)
    return IdeleGroup(base.invariants, base.generators, base.dlog, f"C_S/{n}", S, n, "mod")


def cs_mod_n(S: Iterable[int], n: int) -> IdeleGroup:
    """C_S(Q) / n C_S(Q) with IdeleRep generators."""
    return _cs_mod_n(_check_S(S, n), n)


def idele_reduce(x: IdeleRep, G: IdeleGroup) -> tuple[int, ...]:
    """Coordinates of the class of x in G = cs_mod_n(S, n)."""
    if G.kind != "mod":
        raise InvalidInput("idele_reduce needs a group built by cs_mod_n")
    if x.n != G.n:
        raise InvalidInput(f"idele at modulus {x.n}, group at modulus {G.n}")
    return G.coordinates(x)


def ambient_layout(S: Iterable[int], n: int) -> _Layout:
    return _Layout(_check_S(S, n), n)


# ------------------------------------------------------------ C_S[n]


def _div_on_U(q: Fraction, S: tuple[int, ...]) -> dict[int, int]:
    return {l: frac_valuation(q, l) for l in _rational_primes(q) if l not in S}


@dataclass(frozen=True)
class TorsionTriple:
    """(b, frak_b, alpha_S) with div(b) frak_b^n = 1 on U and b alpha_S^n = 1 at S and infinity."""

    S: tuple[int, ...]
    n: int
    b: Fraction
    frak_b: tuple[tuple[int, int], ...]
    alpha: tuple[tuple[Place, Fraction], ...]

    @property
    def divisor(self) -> dict[int, int]:
        return dict(self.frak_b)

    def alpha_at(self, v: Place) -> Fraction:
        return dict(self.alpha).get(v, Fraction(1))

    def idele(self) -> IdeleRep:
        """An idele in the class: alpha_S on S and infinity, l^(frak_b_l) elsewhere."""
        comps: dict[Place, Fraction] = dict(self.alpha)
        for l, e in self.frak_b:
            comps[Place(l)] = Fraction(l) ** e
        return IdeleRep.from_dict(self.n, comps)

    def check(self) -> list[str]:
        """Violated invariants (empty when the triple is valid)."""
        bad = []
        div = self.divisor
        primes = set(div) | set(_rational_primes(self.b))
        for l in sorted(primes):
            if l in self.S:
                continue
            if frac_valuation(self.b, l) + self.n * div.get(l, 0):
                bad.append(f"div(b) frak_b^n is nontrivial at {l}")
        for v in (REAL,) + tuple(Place(p) for p in self.S):
            prod = self.b * self.alpha_at(v) ** self.n
            if v.is_real:
                if prod <= 0:
                    bad.append("b alpha^n is negative at the real place")
            elif prod != 1 and frac_valuation(prod - 1, v.p) < precision_exponent(v.p, self.n):
                bad.append(f"b alpha^n is not 1 at {v}")
        return bad

    def verify(self) -> "TorsionTriple":
        bad = self.check()
        if bad:
            raise AssertionError("; ".join(bad))
        return self

    def twist(self, k: Fraction | int) -> "TorsionTriple":
        """Same class, different representative: (b k^-n, frak_b + div_U(k), alpha_S k)."""
        k = Fraction(k)
        div = self.divisor
        for l, e in _div_on_U(k, self.S).items():
            div[l] = div.get(l, 0) + e
        alpha = {v: x * k for v, x in self.alpha}
        for v in (REAL,) + tuple(Place(p) for p in self.S):
            alpha.setdefault(v, k)
        return TorsionTriple(
            self.S,
            self.n,
            self.b / k**self.n,
            tuple(sorted((l, e) for l, e in div.items() if e)),
            tuple(sorted(alpha.items())),
        )

    def __str__(self) -> str:
        al = ", ".join(f"{v}: {x}" for v, x in self.alpha if x != 1) or "1"
        return f"(b={self.b}, frak_b={dict(self.frak_b) or '{}'}, alpha=[{al}])"


def _normalizer(x: IdeleRep) -> Fraction:
    """The global q with x*q a unit at every finite place and positive at infinity."""
    q = Fraction(1)
    for v, val in x.components:
        if not v.is_real:
            q /= Fraction(v.p) ** frac_valuation(val, v.p)
    real = x.component(REAL)
    if real < 0:
        q = -q
    return q


def normalize_idele(x: IdeleRep, S: tuple[int, ...]) -> IdeleRep:
    """Principal translate of x supported on S and infinity, with unit S-components
    and positive real component."""
    q = _normalizer(x)
    comps = {}
    for v in (REAL,) + tuple(Place(p) for p in S):
        comps[v] = x.component(v) * q
    comps[REAL] = Fraction(1)
    return IdeleRep.from_dict(x.n, comps)


def torsion_triple(alpha: IdeleRep, S: Iterable[int]) -> TorsionTriple:
    """Normalized triple of an n-torsion class of C_S(Q)."""
    S = _check_S(S, alpha.n)
    n = alpha.n
    norm = normalize_idele(alpha, S)
    for v, x in norm.components:
        if v.is_real:
            continue
        k = precision_exponent(v.p, n)
        if x**n != 1 and frac_valuation(x**n - 1, v.p) < k:
            raise NotTorsion(f"{alpha} is not {n}-torsion in C_S (component at {v})")
    comps = tuple((v, x) for v, x in sorted(norm.as_dict().items()))
    alpha_full = {REAL: Fraction(1), **dict(comps)}
    return TorsionTriple(S, n, Fraction(1), (), tuple(sorted(alpha_full.items()))).verify()


@lru_cache(maxsize=None)
def _zeta_data(p: int, n: int) -> tuple[Fraction, int, int, int]:
    zeta, order = roots_of_unity_generator(p, n)
    if p == 2:
        return zeta, order, 0, 0
    g = primitive_root(p)
    # zeta = g^(j) mod p with j = (p-1)/order * (something); record its log
    j = discrete_log(unit_residue(zeta, p, 1), g, p - 1, p)
    return zeta, order, g, j


def torsion_coordinates(x: IdeleRep | TorsionTriple, S: tuple[int, ...], n: int) -> list[int]:
    """Per-prime discrete logs of the roots of unity in the normalized class."""
    if isinstance(x, TorsionTriple):
        x = x.idele()
    norm = normalize_idele(x, S)
    out = []
    for p in S:
        zeta, order, g, j = _zeta_data(p, n)
        if order == 1:
            continue
        u = norm.component(Place(p))
        if p == 2:
            out.append(0 if unit_residue(u, 2, 2) == 1 else 1)
            continue
        lg = discrete_log(unit_residue(u, p, 1), g, p - 1, p)
        # u = zeta^c  <=>  lg = c*j (mod p-1)
        step = (p - 1) // order
        if lg % step:
            raise NotTorsion(f"component at {p} is not a root of unity of order dividing {n}")
        c = (lg // step) * pow(j // step, -1, order) % order
        out.append(c)
    return out


@lru_cache(maxsize=512)
def _cs_torsion_n(S: tuple[int, ...], n: int) -> IdeleGroup:
    data = [(p, _zeta_data(p, n)) for p in S]
    data = [(p, d) for p, d in data if d[1] > 1]
    moduli = [d[1] for _, d in data]
    pres = Presentation.build(moduli, [])

    def to_carrier(vec):
        comps = {Place(p): d[0] ** c for (p, d), c in zip(data, vec)}
        return torsion_triple(IdeleRep.from_dict(n, comps), S)

    base = pres.group(to_carrier, lambda t: torsion_coordinates(t, S, n))
    return IdeleGroup(base.invariants, base.generators, base.dlog, f"C_S[{n}]", S, n, "torsion")


def cs_torsion_n(S: Iterable[int], n: int) -> IdeleGroup:
    """C_S(Q)[n] with TorsionTriple generators."""
    return _cs_torsion_n(_check_S(S, n), n)
