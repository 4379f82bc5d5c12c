"""Order-``n`` subgroups of prime fields and sparse polynomials over them.

Covers the polynomial form of cyclotomic mappings, subgroup interpolation,
weight/zero counting, and the two lower-bound checks for mappings that
agree with ``d`` on a window (univariate) or with ``D`` on a rectangle
(bivariate).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .cycmap import (
    BiCyclotomicMap,
    BiExpMap,
    CyclotomicMap,
    ExpMap,
    bi_to_expmap,
    compute_index,
    minimal_index_pairs,
    window_agreement,
    rectangle_profile,
)
from .dh import dh_bi, dh_uni
from .modarith import factorize, is_prime

P_MAX = 2**31


@dataclass(frozen=True)
class PrimeFieldCtx:
    p: int
    n: int
    gamma: int
    subgroup: tuple[int, ...] = field(repr=False)

    def power(self, e: int) -> int:
        """``gamma**e``; exponents are taken mod ``n``."""
        return self.subgroup[e % self.n]

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)


def element_order_is(g: int, n: int, p: int) -> bool:
    if pow(g, n, p) != 1:
        return False
    return all(pow(g, n // q, p) != 1 for q in factorize(n).primes)


def make_ctx(p: int, n: int) -> PrimeFieldCtx:
    """Subgroup of order ``n`` in ``F_p^*`` with a deterministic generator."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if p >= P_MAX:
        raise ValueError("p must be below 2**31")
    if n < 1 or (p - 1) % n:
        raise ValueError(f"n={n} does not divide p-1={p - 1}")
    e = (p - 1) // n
    for g in range(2, p):
        gamma = pow(g, e, p)
        if element_order_is(gamma, n, p):
            break
    else:  # pragma: no cover
        raise ArithmeticError("no element of the requested order")
    subgroup, acc = [], 1
    for _ in range(n):
        subgroup.append(acc)
        acc = acc * gamma % p
    return PrimeFieldCtx(p, n, gamma, tuple(subgroup))


@dataclass(frozen=True)
class SparsePoly:
    """Polynomial over ``F_p`` stored as ``(degree, coefficient)`` terms."""

    p: int
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        terms = tuple((int(d), int(c)) for d, c in self.terms)
        object.__setattr__(self, "terms", terms)
        degs = [d for d, _ in terms]
        if any(b <= a for a, b in zip(degs, degs[1:])):
            raise ValueError("degrees must be strictly increasing")
        if any(d < 0 for d in degs):
            raise ValueError("negative degree")
        if any(not 0 < c < self.p for _, c in terms):
            raise ValueError("coefficients must be nonzero residues")

    @classmethod
    def from_dict(cls, p: int, coeffs: dict[int, int]) -> "SparsePoly":
        return cls(p, tuple((d, c % p) for d, c in sorted(coeffs.items()) if c % p))

    @classmethod
    def from_dense(cls, p: int, coeffs: Iterable[int]) -> "SparsePoly":
        return cls(p, tuple((d, int(c) % p) for d, c in enumerate(coeffs) if int(c) % p))

    @property
    def weight(self) -> int:
        return len(self.terms)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.terms[-1][0] if self.terms else -1

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, x: int) -> int:
        return sum(c * pow(x, d, self.p) for d, c in self.terms) % self.p

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        acc = dict(self.terms)
        for d, c in other.terms:
            acc[d] = acc.get(d, 0) - c
        return SparsePoly.from_dict(self.p, acc)

    def to_list(self) -> list[list[int]]:
        return [[d, c] for d, c in self.terms]


def weight(poly: SparsePoly) -> int:
    return poly.weight


def _dense_mod_n(poly: SparsePoly, n: int) -> np.ndarray:
    # fold degrees with X**n = 1, valid on the subgroup only
    dense = np.zeros(n, dtype=np.int64)
    for d, c in poly.terms:
        dense[d % n] = (dense[d % n] + c) % poly.p
    return dense


def eval_on_subgroup(poly: SparsePoly, ctx: PrimeFieldCtx) -> np.ndarray:
    """Values ``poly(gamma**x)`` for ``x = 0..n-1``."""
    if poly.p != ctx.p:
        raise ValueError("polynomial and context use different primes")
    return np.asarray(_kernels.dft_mod(_dense_mod_n(poly, ctx.n), ctx.gamma, ctx.p))


def interpolate_subgroup(ctx: PrimeFieldCtx, values: Sequence[int]) -> SparsePoly:
    """Unique polynomial of degree < n taking ``values[x]`` at ``gamma**x``."""
    p, n = ctx.p, ctx.n
    vals = np.array([int(v) % p for v in values], dtype=np.int64)
    if vals.shape != (n,):
        raise ValueError(f"need {n} values, got {vals.shape[0]}")
    coeffs = _kernels.dft_mod(vals, ctx.inv(ctx.gamma), p)
    n_inv = pow(n, -1, p)
    return SparsePoly.from_dense(p, (int(c) * n_inv % p for c in coeffs))


def cyclotomic_to_poly(m: CyclotomicMap, ctx: PrimeFieldCtx) -> SparsePoly:
    """``X**r * sum_i A_i X**(i n/ell)`` representing ``m`` on the subgroup.

    Degrees are folded into ``[0, n)`` with ``X**n = 1``; the ``ell`` degrees
    stay distinct, so the weight is unchanged.
    """
    if m.n != ctx.n:
        raise ValueError("map and context have different group orders")
    p, n, ell = ctx.p, ctx.n, m.ell
    step = n // ell
    values = np.array([ctx.power(e) for e in m.mult], dtype=np.int64)
    zeta = ctx.power(step)
    coeffs = _kernels.dft_mod(values, ctx.inv(zeta), p)
    ell_inv = pow(ell, -1, p)
    return SparsePoly.from_dict(
        p, {(m.r + j * step) % n: int(c) * ell_inv for j, c in enumerate(coeffs)}
    )


def subgroup_zeros(poly: SparsePoly, ctx: PrimeFieldCtx) -> tuple[int, list[int]]:
    """Count and list the ``x`` in ``[0, n)`` with ``poly(gamma**x) = 0``."""
    if poly.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    if poly.degree >= ctx.p - 1:
        raise ValueError("degree must be below p-1")
    vals = eval_on_subgroup(poly, ctx)
    zeros = np.flatnonzero(vals == 0).tolist()
    return len(zeros), zeros


@dataclass(frozen=True)
class BoundReport:
    """``observed >= bound`` in exact arithmetic."""

    observed: int
    bound: Fraction
    context: dict = field(default_factory=dict)
    extra_ok: bool = True

    @property
    def passed(self) -> bool:
        return self.observed >= self.bound and self.extra_ok

    def to_dict(self) -> dict:
        return {
            "observed": self.observed,
            "bound_num": self.bound.numerator,
            "bound_den": self.bound.denominator,
            "pass": self.passed,
            **self.context,
        }


def weight_zero_bound(poly: SparsePoly, ctx: PrimeFieldCtx) -> BoundReport:
    """Weight of a polynomial of degree < n against its subgroup zeros: w >= n/(n-Z)."""
    if poly.is_zero():
        raise ValueError("bound undefined for the zero polynomial")
    if poly.degree > ctx.n - 1:
        raise ValueError(f"degree {poly.degree} exceeds n-1={ctx.n - 1}")
    z, _ = subgroup_zeros(poly, ctx)
    return BoundReport(poly.weight, Fraction(ctx.n, ctx.n - z), {"zeros": z})


def build_F(h: SparsePoly, r: int, ctx: PrimeFieldCtx) -> SparsePoly:
    """``h(gamma X) - gamma**(1-r) X**2 h(X)``."""
    if h.is_zero():
        return SparsePoly(ctx.p)
    if h.degree > ctx.n - 3:
        raise ValueError(f"deg h = {h.degree} exceeds n-3 = {ctx.n - 3}")
    p = ctx.p
    shift = ctx.power(1 - r)
    acc: dict[int, int] = {}
    for d, c in h.terms:
        acc[d] = acc.get(d, 0) + c * pow(ctx.gamma, d, p)
        acc[d + 2] = acc.get(d + 2, 0) - shift * c
    return SparsePoly.from_dict(p, acc)


def window_bound(n: int, length: int, defect: int) -> Fraction:
    return Fraction(n, 2 * (n - length + 2 * defect + 1))


def thm5_check(f: ExpMap, ctx: PrimeFieldCtx) -> BoundReport:
    """Index lower bound from agreement with ``d`` on windows of consecutive exponents.

    Every window ``(N, H)`` with ``s`` disagreements must satisfy
    ``ind(f) >= n / (2 (n - H + 2s + 1))``. The tightest window is reported.
    When ``ind(f) <= n/3`` the auxiliary polynomial ``F`` built from the
    index witness must have at least ``H - 2s - 1`` subgroup zeros there.
    """
    n = ctx.n
    if f.n != n:
        raise ValueError("map and context have different group orders")
    wit = compute_index(f)
    agree = (f.table == dh_uni(n).table).astype(np.int64)
    # prefix sums over the doubled sequence give every cyclic window
    csum = np.concatenate(([0], np.cumsum(np.concatenate((agree, agree)))))
    best = None
    all_ok = True
    for length in range(n, 0, -1):
        for start in range(n):
            s = length - int(csum[start + length] - csum[start])
            bound = window_bound(n, length, s)
            all_ok &= wit.ell >= bound
            if best is None or bound > best[0]:
                best = (bound, start, length, s)
    bound, start, length, s = best
    context = {"ell": wit.ell, "N": start, "H": length, "s": s, "all_windows_ok": all_ok}
    zeros_ok = True
    if 3 * wit.ell <= n:
        z_f = auxiliary_zero_count(wit.ell, wit.r, wit.mult, ctx)
        zeros_ok = z_f >= length - 2 * s - 1
        context.update(zeros_F=z_f, zeros_needed=length - 2 * s - 1)
    return BoundReport(wit.ell, bound, context, extra_ok=all_ok and zeros_ok)


def auxiliary_zero_count(ell: int, r: int, mult: Sequence[int], ctx: PrimeFieldCtx) -> int:
    """Subgroup zeros of ``F`` for ``h = f(x) x**-r`` of the given index witness."""
    h = cyclotomic_to_poly(CyclotomicMap(ctx.n, ell, 0, tuple(mult)), ctx)
    return subgroup_zeros(build_F(h, r, ctx), ctx)[0]


def thm6_check(f: BiCyclotomicMap | BiExpMap, n: Optional[int] = None) -> BoundReport:
    """``max(ell1, ell2) >= min(|U|, H)`` for agreement rectangles with ``D``."""
    table = bi_to_expmap(f) if isinstance(f, BiCyclotomicMap) else f
    if n is not None and n != table.n:
        raise ValueError("n does not match the map")
    if table.n > 40:
        raise ValueError("thm6_check limited to n <= 40")
    pairs = minimal_index_pairs(table)
    observed = min(max(a, b) for a, b in pairs)
    bound = rectangle_profile(table, dh_bi(table.n))
    return BoundReport(observed, Fraction(bound), {"pairs": [list(p) for p in pairs]})


# -- Vandermonde structure ------------------------------------------------------

def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    mat = [[int(v) % p for v in row] for row in rows]
    rank, ncols = 0, len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [v * inv % p for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                k = mat[i][col]
                mat[i] = [(a - k * b) % p for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class VandermondeReport:
    m: int
    invertible: dict
    distinct_nodes: dict

    @property
    def passed(self) -> bool:
        # distinct nodes must give an invertible matrix
        return all(self.invertible[k] for k, ok in self.distinct_nodes.items() if ok)

    def to_dict(self) -> dict:
        return {"m": self.m, "invertible": self.invertible,
                "distinct_nodes": self.distinct_nodes, "pass": self.passed}


def vandermonde_witness(
    ctx: PrimeFieldCtx,
    u_list: Sequence[int],
    N: int,
    ell1: int,
    ell2: int,
    r1: int,
    r2: int,
) -> VandermondeReport:
    """Build the three matrices relating an index-pair map to ``D`` on ``U x V``.

    ``V1[i][x] = gamma**(i n u_x / ell1)``, ``V2[y][j] = gamma**(j n (N+y) / ell2)``
    and ``G[x][y] = gamma**((u_x - r2)(N+y) - r1 u_x)``; ``G`` is also checked
    after scaling row ``x`` by ``gamma**(r1 u_x)``.
    """
    n, p = ctx.n, ctx.p
    m = len(u_list)
    if not 1 <= m <= min(12, n):
        raise ValueError(f"need 1 <= m <= min(12, n), got m={m}")
    for ell in (ell1, ell2):
        if n % ell:
            raise ValueError(f"{ell} does not divide {n}")
    u = [int(v) for v in u_list]
    s1, s2 = n // ell1, n // ell2
    v1 = [[ctx.power(i * s1 * u[x]) for x in range(m)] for i in range(m)]
    v2 = [[ctx.power(j * s2 * (N + y)) for j in range(m)] for y in range(m)]
    g = [[ctx.power((u[x] - r2) * (N + y) - r1 * u[x]) for y in range(m)] for x in range(m)]
    g_scaled = [[v * ctx.power(r1 * u[x]) % p for v in row] for x, row in enumerate(g)]
    nodes = {
        "V1": [ctx.power(s1 * ux) for ux in u],
        "V2": [ctx.power(s2 * (N + y)) for y in range(m)],
        "G": [ctx.power(ux - r2) for ux in u],
    }
    distinct = {k: len(set(v)) == m for k, v in nodes.items()}
    distinct["G_scaled"] = distinct["G"]
    invertible = {
        name: rank_mod_p(mat, p) == m
        for name, mat in (("V1", v1), ("V2", v2), ("G", g), ("G_scaled", g_scaled))
    }
    return VandermondeReport(m, invertible, distinct)
