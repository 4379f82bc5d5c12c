"""Exact integer and modular arithmetic.

Factorization, divisor functions, CRT and the congruence solvers used by the
rest of the package. Everything works on Python ints, so intermediates never
overflow; inputs are nonetheless kept below ``2**63``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product
from typing import Iterable, Iterator, Sequence

MAX_INT = 2**63
TRIAL_LIMIT = 10**6

# Deterministic for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors multiply to {prod}, not {self.n}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.factors]


@dataclass(frozen=True)
class ResidueSet:
    """Sorted, duplicate-free solution set of a congruence modulo ``modulus``."""

    modulus: int
    residues: tuple[int, ...]

    def __post_init__(self):
        rs = self.residues
        if any(b <= a for a, b in zip(rs, rs[1:])):
            raise ValueError("residues must be strictly increasing")
        if rs and (rs[0] < 0 or rs[-1] >= self.modulus):
            raise ValueError("residues out of range")

    def __len__(self) -> int:
        return len(self.residues)

    def __iter__(self) -> Iterator[int]:
        return iter(self.residues)

    def __contains__(self, x: object) -> bool:
        return x in self.residues

    @classmethod
    def of(cls, modulus: int, residues: Iterable[int]) -> "ResidueSet":
        return cls(modulus, tuple(sorted(set(residues))))


def _check_int(n: int, name: str = "n") -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    return n


# -- primality and factoring ---------------------------------------------------

def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the 64-bit range."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    # n is odd, composite and has no factor below TRIAL_LIMIT
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
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
    raise ArithmeticError(f"Pollard rho failed on {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """Factor ``1 <= n <= 2**63``: trial division to 10**6, then Pollard rho."""
    _check_int(n)
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    if n > MAX_INT:
        raise ValueError("factorize requires n <= 2**63")
    out: dict[int, int] = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    p, step = 5, 2
    while p * p <= m and p <= TRIAL_LIMIT:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += step
        step = 6 - step
    if m > 1:
        if p * p > m:
            out[m] = out.get(m, 0) + 1
        else:
            _split(m, out)
    return Factorization(n, tuple(sorted(out.items())))


def divisors(f: Factorization) -> list[int]:
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(f: Factorization) -> int:
    phi = 1
    for p, e in f.factors:
        phi *= (p - 1) * p ** (e - 1)
    return phi


def tau(f: Factorization) -> int:
    return reduce(lambda acc, pe: acc * (pe[1] + 1), f.factors, 1)


# -- congruences ---------------------------------------------------------------

def crt(parts: Sequence[tuple[int, int]]) -> tuple[int, int]:
    """Combine ``[(residue, modulus), ...]`` with pairwise coprime moduli."""
    x, m = 0, 1
    for r, q in parts:
        if q < 1:
            raise ValueError(f"modulus must be positive, got {q}")
        if math.gcd(m, q) != 1:
            raise ValueError(f"moduli not pairwise coprime: {m} and {q}")
        # x + m*t = r (mod q)
        t = (r - x) * pow(m, -1, q) % q
        x += m * t
        m *= q
    return x % m, m


def linear_congruence(a: int, b: int, n: int) -> ResidueSet:
    """All x in [0, n) with a*x = b (mod n)."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    a, b = a % n, b % n
    g = math.gcd(a, n)
    if b % g:
        return ResidueSet(n, ())
    step = n // g
    x0 = (b // g) * pow(a // g, -1, step) % step if step > 1 else 0
    return ResidueSet(n, tuple(x0 + k * step for k in range(g)))


def _tonelli_shanks(a: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        return pow(a, (p + 1) // 4, p)
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


def sqrt_mod_prime(a: int, p: int) -> ResidueSet:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a %= p
    if a == 0:
        return ResidueSet(p, (0,))
    if p == 2:
        return ResidueSet(p, (1,))
    if pow(a, (p - 1) // 2, p) != 1:
        return ResidueSet(p, ())
    x = _tonelli_shanks(a, p)
    return ResidueSet.of(p, (x, p - x))


def _roots_mod_prime(p: int, b: int, c: int) -> list[int]:
    if p == 2:
        return [x for x in (0, 1) if (x * x + b * x + c) % 2 == 0]
    disc = (b * b - 4 * c) % p
    inv2 = (p + 1) // 2
    return sorted({(s - b) * inv2 % p for s in sqrt_mod_prime(disc, p)})


def _roots_mod_prime_power(p: int, e: int, b: int, c: int) -> list[int]:
    roots = _roots_mod_prime(p, b, c)
    pk = p
    for _ in range(e - 1):
        pk1 = pk * p
        lifted = []
        for x in roots:
            deriv = 2 * x + b
            if p != 2 and deriv % p:
                # regular root: unique Newton step
                fx = x * x + b * x + c
                lifted.append((x - fx * pow(deriv, -1, pk1)) % pk1)
            else:
                lifted.extend(
                    y for y in range(x, pk1, pk) if (y * y + b * y + c) % pk1 == 0
                )
        roots = lifted
        pk = pk1
        if not roots:
            break
    return roots


def solve_quadratic(n: int, b: int, c: int) -> ResidueSet:
    """All x in [0, n) with x**2 + b*x + c = 0 (mod n).

    Roots are found modulo each prime power of ``n`` (Tonelli-Shanks, then
    Hensel lifting) and recombined with the CRT.
    """
    if n < 1:
        raise ValueError("modulus must be >= 1")
    b, c = b % n, c % n
    per_pp = []
    for p, e in factorize(n).factors:
        q = p**e
        roots = _roots_mod_prime_power(p, e, b % q, c % q)
        if not roots:
            return ResidueSet(n, ())
        per_pp.append((q, roots))
    if not per_pp:
        return ResidueSet(n, (0,))
    combos = product(*[[(r, q) for r in roots] for q, roots in per_pp])
    return ResidueSet.of(n, (crt(parts)[0] for parts in combos))


def solve_quadratic_bruteforce(n: int, b: int, c: int) -> ResidueSet:
    """Reference scan over every residue; only for small moduli."""
    return ResidueSet(n, tuple(x for x in range(n) if (x * x + b * x + c) % n == 0))
