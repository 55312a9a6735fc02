"""Exact integer arithmetic: factorization, residue symbols, modular roots, CRT."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidInput, NoRoot

DEFAULT_SEED = 20200101

_TRIAL_BOUND = 10**6
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# the bases above are a proof of primality below this bound
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


def _small_primes(bound: int) -> list[int]:
    sieve = bytearray([1]) * bound
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound, i)))
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=1)
def _trial_primes() -> list[int]:
    return _small_primes(_TRIAL_BOUND)


def primes_below(bound: int) -> list[int]:
    """All primes p with p < bound."""
    if bound <= 2:
        return []
    if bound <= _TRIAL_BOUND:
        primes = _trial_primes()
        return primes[: _bisect(primes, bound)]
    return _small_primes(bound)


def _bisect(seq: list[int], x: int) -> int:
    lo, hi = 0, len(seq)
    while lo < hi:
        mid = (lo + hi) // 2
        if seq[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1
    d = 5
    while True:
        j = jacobi_symbol(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
        if d == 17 and math.isqrt(n) ** 2 == n:
            return False
    p, q = 1, (1 - d) // 4
    k, s = n + 1, 0
    while k % 2 == 0:
        k //= 2
        s += 1
    inv2 = (n + 1) // 2
    u, v, qk = 1, p, q % n
    for bit in bin(k)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) * inv2 % n, (d * u + p * v) * inv2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic below 3.3e24 (Miller-Rabin); BPSW above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < _MR_DETERMINISTIC_BOUND:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES)
    return _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class Factorization:
    """|value| = prod p**e over ``factors``; ``sign`` carries the sign of the input."""

    value: int
    factors: tuple[tuple[int, int], ...]
    sign: int = 1

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def expand(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return sorted(divs)


def factor_integer(m: int, seed: int = DEFAULT_SEED) -> Factorization:
    """Factor |m| exactly; deterministic for a fixed ``seed``."""
    if m == 0:
        raise InvalidInput("cannot factor 0")
    sign = -1 if m < 0 else 1
    n = abs(m)
    counts: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            counts[p] = e
    if n > 1:
        rng = random.Random(seed)
        stack = [n]
        while stack:
            x = stack.pop()
            if x == 1:
                continue
            if is_prime(x):
                counts[x] = counts.get(x, 0) + 1
                continue
            d = _pollard_brent(x, rng)
            stack.extend((d, x // d))
    factors = tuple(sorted(counts.items()))
    return Factorization(abs(m), factors, sign)


def valuation(x: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise InvalidInput("valuation of 0 is infinite")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def squarefree_decomposition(m: int) -> tuple[int, int]:
    """Return (s, f) with m = s * f**2 and s squarefree (sign kept on s)."""
    if m == 0:
        raise InvalidInput("0 has no squarefree part")
    fac = factor_integer(m)
    s, f = fac.sign, 1
    for p, e in fac.factors:
        if e % 2:
            s *= p
        f *= p ** (e // 2)
    return s, f


def is_squarefree(m: int) -> bool:
    return m != 0 and all(e == 1 for _, e in factor_integer(m).factors)


def jacobi_symbol(a: int, m: int) -> int:
    """Jacobi symbol (a/m) for odd m >= 1."""
    if m < 1 or m % 2 == 0:
        raise InvalidInput(f"Jacobi symbol needs an odd positive modulus, got {m}")
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker extension of the Jacobi symbol to all integers n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    return result * jacobi_symbol(a, n)


def _sqrt_mod_odd_prime(a: int, p: int) -> int | None:
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _sqrt_unit_mod_prime_power(a: int, p: int, k: int) -> int | None:
    mod = p**k
    a %= mod
    if p == 2:
        if k == 1:
            return 1
        if k == 2:
            return 1 if a % 4 == 1 else None
        if a % 8 != 1:
            return None
        r = 1
        for i in range(3, k):
            if (r * r - a) % (1 << (i + 1)):
                r += 1 << (i - 1)
        return r % mod
    r = _sqrt_mod_odd_prime(a, p)
    if r is None:
        return None
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        m = p**prec
        r = (r - (r * r - a) * pow(2 * r, -1, m)) % m
    return r


def sqrt_mod_prime_power(a: int, p: int, k: int) -> int:
    """Some r with r*r = a (mod p**k); raises NoRoot when none exists."""
    r = try_sqrt_mod_prime_power(a, p, k)
    if r is None:
        raise NoRoot(f"{a} is not a square modulo {p}^{k}")
    return r


def try_sqrt_mod_prime_power(a: int, p: int, k: int) -> int | None:
    """Like sqrt_mod_prime_power but returns None instead of raising."""
    if k < 1:
        raise InvalidInput("exponent must be positive")
    mod = p**k
    a %= mod
    if a == 0:
        return 0
    v = valuation(a, p)
    if v % 2:
        return None
    r = _sqrt_unit_mod_prime_power(a // p**v, p, k - v)
    if r is None:
        return None
    return r * p ** (v // 2) % mod


def sqrt_mod(a: int, m: int) -> int | None:
    """Some r with r*r = a (mod m) for any m >= 1, or None."""
    if m < 1:
        raise InvalidInput("modulus must be positive")
    if m == 1:
        return 0
    parts = []
    for p, e in factor_integer(m).factors:
        r = try_sqrt_mod_prime_power(a, p, e)
        if r is None:
            return None
        parts.append((r, p**e))
    return crt_combine(parts)[0]


def crt_combine(residues: list[tuple[int, int]]) -> tuple[int, int]:
    """Combine (r_i, m_i) with pairwise coprime moduli; returns (r, prod m_i)."""
    r, m = 0, 1
    for ri, mi in residues:
        if mi < 1:
            raise InvalidInput(f"modulus must be positive, got {mi}")
        if math.gcd(m, mi) != 1:
            raise InvalidInput(f"moduli {m} and {mi} are not coprime")
        r = r + m * ((ri - r) * pow(m, -1, mi) % mi)
        m *= mi
    return r % m, m


def iroot(x: int, k: int) -> tuple[int, bool]:
    """Floor of the k-th root of x >= 0, and whether it is exact."""
    if x < 0:
        raise InvalidInput("iroot needs x >= 0")
    if x < 2:
        return x, True
    r = 1 << ((x.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + x // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r, r**k == x


def primitive_root(p: int) -> int:
    """Smallest generator of (Z/p)^x for an odd prime p."""
    if p == 2:
        return 1
    qs = factor_integer(p - 1).primes()
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    return g


def discrete_log(x: int, g: int, order: int, mod: int) -> int:
    """e in [0, order) with g**e = x (mod mod); baby-step giant-step."""
    x %= mod
    step = math.isqrt(order) + 1
    table = {}
    cur = 1
    for j in range(step):
        table.setdefault(cur, j)
        cur = cur * g % mod
    giant = pow(g, -step, mod)
    cur = x
    for i in range(step + 1):
        if cur in table:
            return (i * step + table[cur]) % order
        cur = cur * giant % mod
    raise InvalidInput(f"{x} is not a power of {g} modulo {mod}")


def cornacchia(d: int, m: int) -> list[tuple[int, int]]:
    """All (x, y) with x, y >= 0, gcd(x, y) = 1 and x^2 + d*y^2 = m (d >= 1)."""
    if d < 1 or m < 1:
        raise InvalidInput("cornacchia needs d >= 1 and m >= 1")
    found = set()
    for r0 in range(m):
        if (r0 * r0 + d) % m:
            continue
        a, b = m, r0
        bound = math.isqrt(m)
        while b > bound:
            a, b = b, a % b
        rest = m - b * b
        if rest % d:
            continue
        y2 = rest // d
        y, exact = iroot(y2, 2)
        if exact and math.gcd(b, y) == 1:
            found.add((b, y))
    return sorted(found)
