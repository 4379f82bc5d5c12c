"""The univariate and bivariate Diffie-Hellman mappings.

``d(gamma**a) = gamma**(a*a)`` and ``D(gamma**a, gamma**b) = gamma**(a*b)``,
their exact index, how often low-index mappings can agree with them, and
sweeps that check the corresponding statements over parameter ranges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from . import _kernels
from .cycmap import (
    BiExpMap,
    CyclotomicMap,
    ExpMap,
    compute_index,
    minimal_index_pairs,
    to_expmap,
)
from .modarith import (
    divisors,
    euler_phi,
    factorize,
    is_prime,
    linear_congruence,
    solve_quadratic,
    tau,
)
from .report import ReportRow

T1_MAX = 5000
T2_MAX = 200
T3_MAX = 64
T4_MAX = 60


@dataclass(frozen=True)
class CoincidenceReport:
    n: int
    params: dict
    count: int
    points: tuple
    bound: Optional[int] = None
    ratio: Optional[float] = field(default=None, compare=False)

    def __post_init__(self):
        if self.count != len(self.points):
            raise ValueError("count must equal the number of points")

    @property
    def within_bound(self) -> bool:
        return self.bound is None or self.count <= self.bound

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "params": self.params,
            "count": self.count,
            "points": [list(p) if isinstance(p, tuple) else p for p in self.points],
            "bound": self.bound,
            "ratio": self.ratio,
        }


@dataclass(frozen=True)
class DivisorSumReport:
    n: int
    lhs: int
    rhs: Fraction
    tau_bound: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs and self.lhs <= self.tau_bound


def dh_uni(n: int) -> ExpMap:
    x = np.arange(n, dtype=np.int64)
    return ExpMap(n, x * x % n)


def dh_bi(n: int) -> BiExpMap:
    x = np.arange(n, dtype=np.int64)
    return BiExpMap(n, np.outer(x, x) % n)


def thm1_witness(n: int) -> CyclotomicMap:
    """Index ``n/2`` representation of ``d`` for even ``n``.

    Uses the least positive ``r`` with ``r = n/2 (mod 2)`` and multipliers
    ``gamma**(i*i - i*r)``.
    """
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    ell = n // 2
    r = 1 if ell % 2 else 2
    return CyclotomicMap(n, ell, r, tuple((i * i - i * r) % n for i in range(ell)))


def expected_index(n: int) -> int:
    return n // 2 if n % 2 == 0 and n > 1 else n


# -- univariate coincidences ----------------------------------------------------

def uni_coincidences(n: int, r: int, a: int) -> CoincidenceReport:
    """Points where ``x -> gamma**a * x**r`` agrees with ``d``.

    These are the roots of ``x**2 - r*x - a = 0 (mod n)``.
    """
    r, a = r % n, a % n
    roots = solve_quadratic(n, -r % n, -a % n)
    return CoincidenceReport(
        n,
        {"r": r, "a": a},
        len(roots),
        roots.residues,
        bound=2 if is_prime(n) else None,
        ratio=len(roots) / math.sqrt(n),
    )


def max_coincidences_for_index(n: int, ell: int) -> int:
    """Best possible agreement between ``d`` and a mapping of index ``ell``."""
    if n % ell:
        raise ValueError(f"{ell} does not divide {n}")
    if n > 200:
        raise ValueError("max_coincidences_for_index limited to n <= 200")
    return int(_kernels.quad_best_agreement(n, ell))


def max_quadratic_roots(n: int) -> int:
    """Largest root count of ``x**2 - r*x - a`` mod ``n`` over all ``(r, a)``."""
    return max_coincidences_for_index(n, 1)


# -- bivariate coincidences -----------------------------------------------------

def bi_coincidences(n: int, r1: int, r2: int, a: int) -> CoincidenceReport:
    """Solutions of ``x*y = a + r1*x + r2*y (mod n)``, solved one ``y`` at a time."""
    r1, r2, a = r1 % n, r2 % n, a % n
    points = []
    for y in range(n):
        for x in linear_congruence(y - r1, a + r2 * y, n):
            points.append((x, y))
    points.sort()
    return CoincidenceReport(
        n,
        {"r1": r1, "r2": r2, "a": a},
        len(points),
        tuple(points),
        bound=divisor_sum_identity(n).lhs,
    )


def bi_coincidences_bruteforce(n: int, r1: int, r2: int, a: int) -> int:
    return int(_kernels.bi_scan_count(n, r1 % n, r2 % n, a % n))


def divisor_sum_identity(n: int) -> DivisorSumReport:
    f = factorize(n)
    divs = divisors(f)
    lhs = sum(euler_phi(factorize(n // t)) * t for t in divs)
    rhs = n * sum(Fraction(euler_phi(factorize(d)), d) for d in divs)
    return DivisorSumReport(n, lhs, rhs, tau(f) * n)


def bi_coincidence_bound(n: int, ell1: int, ell2: int) -> int:
    """Agreement bound for a mapping of index pair ``(ell1, ell2)`` with ``D``."""
    return ell1 * ell2 * divisor_sum_identity(n).lhs


def bi_from_uni(n: int, a: int, b: int) -> int:
    """Exponent of ``D(gamma**a, gamma**b)`` using only ``d``.

    ``D**2 = d(a+b) / (d(a) d(b))``, and for odd ``n`` halving an exponent is
    multiplication by the inverse of 2.
    """
    if n % 2 == 0:
        raise ValueError("reduction requires odd n (square roots are ambiguous otherwise)")
    d = dh_uni(n)
    doubled = (d((a + b) % n) - d(a % n) - d(b % n)) % n
    return doubled * pow(2, -1, n) % n if n > 1 else 0


# -- sweeps ---------------------------------------------------------------------

def _check_range(lo: int, hi: int, limit: int, what: str) -> None:
    if not 1 <= lo <= hi <= limit:
        raise ValueError(f"{what} range must satisfy 1 <= lo <= hi <= {limit}, got {lo}..{hi}")


def verify_thm1(n_lo: int, n_hi: int) -> Iterator[ReportRow]:
    """ind(d) equals n for odd n and n/2 for even n."""
    _check_range(n_lo, n_hi, T1_MAX, "n")
    for n in range(n_lo, n_hi + 1):
        expected = expected_index(n)
        found = compute_index(dh_uni(n))
        ok = found.ell == expected
        witness = None
        if n % 2 == 0:
            w = thm1_witness(n)
            reproduces = to_expmap(w) == dh_uni(n)
            ok = ok and reproduces
            witness = {"ell": w.ell, "r": w.r, "reproduces_d": reproduces}
        if not ok:
            witness = {"found": found.to_dict(), "construction": witness}
        yield ReportRow("t1", {"n": n}, found.ell, ok, expected=expected, witness=witness)


def verify_thm2(prime_max: int) -> Iterator[ReportRow]:
    """For prime n every ``x -> gamma**a x**r`` meets d in at most 2 points."""
    _check_range(2, prime_max, T2_MAX, "prime")
    for p in range(2, prime_max + 1):
        if not is_prime(p):
            continue
        worst = max(
            (uni_coincidences(p, r, a) for r in range(p) for a in range(p)),
            key=lambda rep: rep.count,
        )
        ok = worst.count <= 2
        witness = None if ok else worst.to_dict()
        yield ReportRow("t2", {"n": p}, worst.count, ok, expected=2, witness=witness)


def verify_thm3(n_max: int) -> Iterator[ReportRow]:
    """D has (n, n) as its only minimal index pair."""
    _check_range(2, n_max, T3_MAX, "n")
    for n in range(2, n_max + 1):
        pairs = minimal_index_pairs(dh_bi(n))
        expected = [(n, n)]
        ok = pairs == expected
        yield ReportRow(
            "t3",
            {"n": n},
            [list(p) for p in pairs],
            ok,
            expected=[list(p) for p in expected],
            witness=None if ok else {"pairs": [list(p) for p in pairs]},
        )


def verify_thm4(n_max: int, samples: int, seed: int) -> Iterator[ReportRow]:
    """Solution counts of ``x*y = a + r1 x + r2 y`` against a full scan and the divisor-sum bound."""
    _check_range(1, n_max, T4_MAX, "n")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    for n in range(1, n_max + 1):
        bound = divisor_sum_identity(n).lhs
        for r1, r2, a in rng.integers(0, n, size=(samples, 3)).tolist():
            rep = bi_coincidences(n, r1, r2, a)
            brute = bi_coincidences_bruteforce(n, r1, r2, a)
            ok = rep.count == brute and rep.count <= bound
            yield ReportRow(
                "t4",
                {"n": n, "r1": r1, "r2": r2, "a": a},
                rep.count,
                ok,
                expected=brute,
                witness={"bound": bound},
            )
