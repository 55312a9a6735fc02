"""Finite abelian groups with explicit generators and discrete logarithms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Sequence

from .errors import InvalidInput
from .linalg import smith_normal_form, vecmat


def _normalize_invariants(divisors: Sequence[int]) -> tuple[int, ...]:
    return tuple(d for d in divisors if d != 1)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/d_1 x ... x Z/d_k`` with d_1 | d_2 | ... and d_1 > 1.

    ``generators[i]`` is a carrier object of order ``invariants[i]`` and
    ``dlog`` maps any carrier object to its coordinate vector.  Carriers are
    whatever the caller works with: binary forms, idele representatives,
    torsion triples, field elements.
    """

    invariants: tuple[int, ...]
    generators: tuple[Any, ...] = ()
    dlog: Callable[[Any], tuple[int, ...]] | None = field(default=None, compare=False, repr=False)
    name: str = ""

    def __post_init__(self):
        inv = self.invariants
        if any(d < 2 for d in inv):
            raise InvalidInput(f"invariant factors must exceed 1: {inv}")
        if any(inv[i + 1] % inv[i] for i in range(len(inv) - 1)):
            raise InvalidInput(f"invariant factors must form a divisor chain: {inv}")
        if self.generators and len(self.generators) != len(inv):
            raise InvalidInput("one generator per invariant factor")

    @property
    def order(self) -> int:
        return math.prod(self.invariants)

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    def is_trivial(self) -> bool:
        return not self.invariants

    def coordinates(self, x: Any) -> tuple[int, ...]:
        if self.dlog is None:
            raise InvalidInput(f"group {self} carries no discrete logarithm")
        coords = tuple(self.dlog(x))
        return tuple(c % d for c, d in zip(coords, self.invariants))

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.rank:
            raise InvalidInput(f"expected {self.rank} coordinates, got {len(coords)}")
        return tuple(c % d for c, d in zip(coords, self.invariants))

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(x, y)])

    def elements(self):
        """Iterate over all coordinate vectors (lexicographic)."""
        def rec(i, prefix):
            if i == self.rank:
                yield tuple(prefix)
                return
            for c in range(self.invariants[i]):
                yield from rec(i + 1, prefix + [c])
        yield from rec(0, [])

    def torsion_invariants(self, n: int) -> tuple[int, ...]:
        """Invariant factors of G[n] (equivalently of G/nG)."""
        return _normalize_invariants(math.gcd(d, n) for d in self.invariants)

    def dual(self, name: str = "") -> "FiniteAbelianGroup":
        """Pontryagin dual: same invariants, coordinates are character values."""
        return FiniteAbelianGroup(self.invariants, name=name or f"dual({self.name})")

    def __str__(self) -> str:
        if not self.invariants:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariants)


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of a direct sum of cyclic groups of the given orders."""
    diag, *_ = smith_normal_form([[o if i == j else 0 for j in range(len(orders))] for i, o in enumerate(orders)])
    return _normalize_invariants(sorted(d for d in diag if d != 0))


@dataclass
class Presentation:
    """Quotient of ``Z/m_1 x ... x Z/m_k`` by a list of relation vectors.

    ``to_coords`` maps an ambient vector to invariant-factor coordinates;
    ``generator_vectors`` are ambient lifts of the invariant generators.
    """

    moduli: tuple[int, ...]
    relations: tuple[tuple[int, ...], ...]
    invariants: tuple[int, ...] = ()
    _q: list[list[int]] = field(default_factory=list, repr=False)
    _index: tuple[int, ...] = ()
    generator_vectors: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def build(cls, moduli: Sequence[int], relations: Sequence[Sequence[int]]) -> "Presentation":
        k = len(moduli)
        rel = [list(r) for r in relations] + [[m if i == j else 0 for j in range(k)] for i, m in enumerate(moduli)]
        diag, _, q, qinv = smith_normal_form(rel, ncols=k)
        index = tuple(i for i, d in enumerate(diag) if d != 1)
        if any(diag[i] == 0 for i in index):
            raise InvalidInput("presentation is not finite")
        out = cls(tuple(moduli), tuple(tuple(r) for r in relations))
        out.invariants = tuple(diag[i] for i in index)
        out._q = q
        out._index = index
        out.generator_vectors = tuple(
            tuple(x % m for x, m in zip(qinv[i], moduli)) for i in index
        )
        return out

    def to_coords(self, ambient: Sequence[int]) -> tuple[int, ...]:
        image = vecmat(list(ambient), self._q)
        return tuple(image[i] % d for i, d in zip(self._index, self.invariants))

    def group(self, to_carrier: Callable[[tuple[int, ...]], Any], to_ambient: Callable[[Any], Sequence[int]], name: str = "") -> FiniteAbelianGroup:
        gens = tuple(to_carrier(v) for v in self.generator_vectors)
        return FiniteAbelianGroup(self.invariants, gens, lambda x: self.to_coords(to_ambient(x)), name)


def group_from_enumeration(
    candidates: Sequence[Any],
    identity: Any,
    op: Callable[[Any, Any], Any],
    key: Callable[[Any], Hashable],
    name: str = "",
) -> FiniteAbelianGroup:
    """Structure of the group generated by ``candidates`` by exhaustive closure.

    Each candidate not yet in the span contributes one relation
    ``e * g = (known combination)``; the triangular relation matrix has the
    group order as determinant, so its Smith form gives the invariants.
    """
    gens: list[Any] = []
    table: dict[Hashable, tuple[Any, tuple[int, ...]]] = {key(identity): (identity, ())}
    relations: list[list[int]] = []
    for g in candidates:
        if key(g) in table:
            continue
        k = len(gens)
        gens.append(g)
        table = {kk: (x, vec + (0,)) for kk, (x, vec) in table.items()}
        relations = [r + [0] for r in relations]
        layer = list(table.values())
        pw, e = g, 1
        while key(pw) not in table:
            e += 1
            pw = op(pw, g)
        base = table[key(pw)][1]
        relations.append([-c for c in base[:k]] + [e])
        new_table = dict(table)
        cur_layer = layer
        for i in range(1, e):
            cur_layer = [(op(x, g), vec[:k] + (i,)) for x, vec in cur_layer]
            for x, vec in cur_layer:
                new_table[key(x)] = (x, vec)
        table = new_table
    k = len(gens)
    if k == 0:
        return FiniteAbelianGroup((), (), lambda x: (), name)
    diag, _, q, qinv = smith_normal_form(relations)
    index = [i for i, d in enumerate(diag) if d != 1]
    invariants = tuple(diag[i] for i in index)

    exponent = invariants[-1] if invariants else 1

    def power(g, c):
        c %= exponent
        acc, base = identity, g
        while c:
            if c & 1:
                acc = op(acc, base)
            base = op(base, base)
            c >>= 1
        return acc

    generators = []
    for i in index:
        acc = identity
        for g, c in zip(gens, qinv[i]):
            acc = op(acc, power(g, c))
        generators.append(acc)

    def dlog(x):
        kx = key(x)
        if kx not in table:
            raise InvalidInput(f"{x!r} is not in the enumerated group")
        vec = table[kx][1]
        image = vecmat(list(vec), q)
        return tuple(image[i] % d for i, d in zip(index, invariants))

    return FiniteAbelianGroup(invariants, tuple(generators), dlog, name)

