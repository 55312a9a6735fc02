"""Binary quadratic forms: reduction, composition, class groups, units.

A form (a, b, c) stands for a*x^2 + b*x*y + c*y^2.  Matrices act on the
right, ``(f . M)(v) = f(M v)``, so that an oriented ideal basis
(w1, w2) transforms as (w1, w2) . M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .abelian import FiniteAbelianGroup, Presentation, group_from_enumeration
from .errors import InvalidInput, Unsupported
from .quadratic import FieldElement, FieldIdeal, QuadraticField

MAX_ABS_DISC = 10**7

Mat = tuple[int, int, int, int]  # (alpha, beta, gamma, delta) = [[alpha, beta], [gamma, delta]]
_ID: Mat = (1, 0, 0, 1)


def _mat_mul(m: Mat, n: Mat) -> Mat:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True, order=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b, self.c) == 1

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def act(self, m: Mat) -> "BinaryQuadraticForm":
        al, be, ga, de = m
        a, b, c = self.a, self.b, self.c
        return BinaryQuadraticForm(
            a * al * al + b * al * ga + c * ga * ga,
            2 * a * al * be + b * (al * de + be * ga) + 2 * c * ga * de,
            a * be * be + b * be * de + c * de * de,
        )

    def inverse(self) -> "BinaryQuadraticForm":
        return BinaryQuadraticForm(self.a, -self.b, self.c)

    def negated(self) -> "BinaryQuadraticForm":
        return BinaryQuadraticForm(-self.a, self.b, -self.c)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


def principal_form(disc: int) -> BinaryQuadraticForm:
    b = disc % 2
    return BinaryQuadraticForm(1, b, (b * b - disc) // 4)


# ------------------------------------------------------------- definite


def _reduce_definite(f: BinaryQuadraticForm) -> tuple[BinaryQuadraticForm, Mat]:
    if f.a <= 0:
        raise InvalidInput("definite reduction needs a positive definite form")
    m = _ID
    while True:
        a, b = f.a, f.b
        if not (-a < b <= a):
            k = (a - b) // (2 * a)
            t = (1, k, 0, 1)
            f, m = f.act(t), _mat_mul(m, t)
        if f.a > f.c or (f.a == f.c and f.b < 0):
            s = (0, -1, 1, 0)
            f, m = f.act(s), _mat_mul(m, s)
            continue
        return f, m


# ----------------------------------------------------------- indefinite


def _is_reduced_indefinite(f: BinaryQuadraticForm) -> bool:
    s = math.isqrt(f.disc)
    a = abs(f.a)
    return 0 < f.b <= s and f.b + 2 * a > s and 2 * a - f.b <= s


def _rho(f: BinaryQuadraticForm) -> tuple[BinaryQuadraticForm, Mat]:
    """One step of the reduction operator: (a, b, c) -> (c, r, *)."""
    d = f.disc
    s = math.isqrt(d)
    c = abs(f.c)
    if c > s:
        r = (-f.b) % (2 * c)
        if r > c:
            r -= 2 * c
    else:
        r = s - ((s + f.b) % (2 * c))
    k = (r + f.b) // (2 * f.c)
    m = _mat_mul((0, -1, 1, 0), (1, k, 0, 1))
    g = f.act(m)
    assert g.b == r
    return g, m


def _reduce_indefinite(f: BinaryQuadraticForm) -> tuple[BinaryQuadraticForm, Mat]:
    m = _ID
    for _ in range(10_000):
        if _is_reduced_indefinite(f):
            return f, m
        f, t = _rho(f)
        m = _mat_mul(m, t)
    raise AssertionError("indefinite reduction did not terminate")


def reduce_form(f: BinaryQuadraticForm) -> tuple[BinaryQuadraticForm, Mat]:
    """Reduced form equivalent to f together with the SL2(Z) transform used."""
    if f.disc < 0:
        return _reduce_definite(f)
    if math.isqrt(f.disc) ** 2 == f.disc:
        raise InvalidInput("square discriminants are not supported")
    return _reduce_indefinite(f)


def form_cycle(f: BinaryQuadraticForm) -> list[tuple[BinaryQuadraticForm, Mat]]:
    """The rho-cycle of a reduced indefinite form, each with its transform from f."""
    out = [(f, _ID)]
    g, m = f, _ID
    while True:
        g, t = _rho(g)
        m = _mat_mul(m, t)
        if g == f:
            return out
        out.append((g, m))


def canonical_form(f: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """Canonical representative of the proper equivalence class of f."""
    g, _ = reduce_form(f)
    if g.disc < 0:
        return g
    return min(h for h, _ in form_cycle(g))


def compose(f: BinaryQuadraticForm, g: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """Gauss composition of primitive forms of equal discriminant (unreduced)."""
    d = f.disc
    if g.disc != d:
        raise InvalidInput("composition needs equal discriminants")
    a1, b1, _ = f.a, f.b, f.c
    a2, b2, c2 = g.a, g.b, g.c
    s = (b1 + b2) // 2
    g1, u1, v1 = _ext_gcd(a1, a2)
    dd, x, w = _ext_gcd(g1, s)
    v = x * v1
    a3 = a1 * a2 // (dd * dd)
    b3 = b2 + 2 * (a2 // dd) * (v * (s - b2) - w * c2)
    b3 %= 2 * a3 if a3 > 0 else -2 * a3
    c3 = (b3 * b3 - d) // (4 * a3)
    out = BinaryQuadraticForm(a3, b3, c3)
    if out.disc != d:
        raise AssertionError("composition produced the wrong discriminant")
    return out


def compose_reduced(f: BinaryQuadraticForm, g: BinaryQuadraticForm) -> BinaryQuadraticForm:
    return canonical_form(compose(f, g))


# ---------------------------------------------------------- enumeration


def reduced_forms(disc: int) -> list[BinaryQuadraticForm]:
    """All primitive reduced forms of discriminant disc (positive definite if disc < 0)."""
    out = []
    if disc < 0:
        amax = math.isqrt(-disc // 3)
        for a in range(1, amax + 1):
            for b in range(-a + 1, a + 1):
                if (b * b - disc) % (4 * a):
                    continue
                c = (b * b - disc) // (4 * a)
                if c < a or (c == a and b < 0):
                    continue
                f = BinaryQuadraticForm(a, b, c)
                if f.is_primitive():
                    out.append(f)
        return out
    s = math.isqrt(disc)
    for b in range(1, s + 1):
        if (b - disc) % 2:
            continue
        ac = (b * b - disc) // 4
        for a in range(1, abs(ac) + 1):
            if ac % a:
                continue
            for sa in (a, -a):
                f = BinaryQuadraticForm(sa, b, ac // sa)
                if _is_reduced_indefinite(f) and f.is_primitive():
                    out.append(f)
    return sorted(out)


def form_class_representatives(disc: int) -> list[BinaryQuadraticForm]:
    """One canonical form per proper equivalence class."""
    if disc < 0:
        return sorted(reduced_forms(disc))
    seen: set[BinaryQuadraticForm] = set()
    reps = []
    for f in reduced_forms(disc):
        if f in seen:
            continue
        cyc = [h for h, _ in form_cycle(f)]
        seen.update(cyc)
        reps.append(min(cyc))
    return sorted(reps)


def _check_disc(field: QuadraticField) -> None:
    if abs(field.disc) >= MAX_ABS_DISC:
        raise Unsupported(f"|disc| = {abs(field.disc)} exceeds the supported bound {MAX_ABS_DISC}")


@lru_cache(maxsize=256)
def form_class_group(disc: int) -> FiniteAbelianGroup:
    """Proper equivalence classes of primitive forms (positive definite when disc < 0)."""
    reps = form_class_representatives(disc)
    # small-norm classes first keeps generators readable
    reps.sort(key=lambda f: (abs(f.a), f.b, f.c))
    return group_from_enumeration(
        reps,
        canonical_form(principal_form(disc)),
        compose_reduced,
        canonical_form,
        name=f"Cl+({disc})",
    )


def narrow_class_group(field: QuadraticField) -> FiniteAbelianGroup:
    _check_disc(field)
    return form_class_group(field.disc)


def class_group(field: QuadraticField) -> FiniteAbelianGroup:
    """Wide class group; for real fields the quotient by the class of -(principal form)."""
    _check_disc(field)
    g = form_class_group(field.disc)
    if not field.is_real:
        return g
    h = g.coordinates(principal_form(field.disc).negated())
    if not any(h):
        return FiniteAbelianGroup(g.invariants, g.generators, g.dlog, name=f"Cl({field.disc})")
    pres = Presentation.build(g.invariants, [h])

    def to_carrier(vec):
        acc = canonical_form(principal_form(field.disc))
        for gen, c in zip(g.generators, vec):
            for _ in range(c):
                acc = compose_reduced(acc, gen)
        return acc

    return pres.group(to_carrier, g.coordinates, name=f"Cl({field.disc})")


# -------------------------------------------------------- fundamental unit


def fundamental_unit(field: QuadraticField) -> FieldElement:
    """Smallest unit eps > 1 of O_K, via the continued fraction of omega."""
    if not field.is_real:
        raise InvalidInput("fundamental units exist only for real quadratic fields")
    d = field.m
    s = math.isqrt(d)
    # omega = (P + sqrt(d)) / Q; N(h_j - k_j*omega) = +-Q_{j+1}/Q_0
    p_, q_ = (1, 2) if d % 4 == 1 else (0, 1)
    q0 = q_
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    while True:
        a = (p_ + s) // q_
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        p_ = a * q_ - p_
        q_ = (d - p_ * p_) // q_
        if q_ == q0:
            break
    eps = h - k * field.omega.conj()
    if abs(eps.norm()) != 1 or eps.sign_at(0) <= 0:
        raise AssertionError(f"continued fraction produced a bad unit {eps}")
    return eps


def unit_norm(field: QuadraticField) -> int:
    return int(fundamental_unit(field).norm())


# ----------------------------------------------------- ideals <-> forms


def ideal_to_form(ideal: FieldIdeal) -> tuple[BinaryQuadraticForm, tuple[FieldElement, FieldElement]]:
    """Form N(x*w1 + y*w2)/N(I) for the oriented basis (w1, w2) of the ideal."""
    field = ideal.field
    a = ideal.a
    bp = 2 * ideal.b + field.omega_trace
    c = (bp * bp - field.disc) // (4 * a)
    f = BinaryQuadraticForm(a, bp, c)
    return f, ideal.basis()


def form_to_ideal(field: QuadraticField, f: BinaryQuadraticForm) -> FieldIdeal:
    """Ideal with basis (a, (b + sqrt(disc))/2); needs a > 0."""
    if f.a <= 0 or f.disc != field.disc:
        raise InvalidInput("need a form of positive leading coefficient and matching discriminant")
    half = (f.b - field.omega_trace) // 2
    return FieldIdeal.from_generators(field, [field.element(f.a), field.from_integral(half, 1)])


def ideal_class_form(ideal: FieldIdeal) -> BinaryQuadraticForm:
    return canonical_form(ideal_to_form(ideal)[0])


def principal_generator(ideal: FieldIdeal, narrow: bool = False) -> FieldElement | None:
    """A generator of the ideal, or None if it is not principal.

    With ``narrow`` the generator is required to have positive norm, so None
    is returned for ideals that are principal only in the wide sense."""
    field = ideal.field
    f, (w1, w2) = ideal_to_form(ideal)
    g, m = reduce_form(f)

    def gen(mat):
        al, _, ga, _ = mat
        return w1 * al + w2 * ga

    if field.disc < 0:
        if g == canonical_form(principal_form(field.disc)):
            return gen(m)
        return None
    for h, t in form_cycle(g):
        if abs(h.a) == 1:
            if h.a == -1 and narrow:
                continue
            return gen(_mat_mul(m, t))
    return None


def positive_representative(f: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """A form properly equivalent to f with positive first coefficient."""
    g, _ = reduce_form(f)
    if g.a > 0:
        return g
    for h, _ in form_cycle(g):
        if h.a > 0:
            return h
    raise AssertionError("indefinite cycle without a positive leading coefficient")


def wide_class_key(f: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """Canonical key of the wide ideal class containing the narrow class of f."""
    c = canonical_form(f)
    if c.disc < 0:
        return c
    return min(c, compose_reduced(c, principal_form(c.disc).negated()))
