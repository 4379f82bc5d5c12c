"""Mappings of a cyclic group in exponent representation.

A group element ``gamma**x`` is represented by its exponent ``x`` modulo the
group order ``n``. A self-mapping ``f`` is then a table ``g`` with
``f(gamma**x) = gamma**g[x]``.

A cyclotomic mapping of index ``ell`` and order ``r`` multiplies ``x**r`` by a
constant that depends only on the coset of ``x`` modulo the subgroup of
``ell``-th powers; in exponents, ``g(x) = mult[x % ell] + r*x (mod n)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .modarith import Factorization, divisors, factorize, linear_congruence


def _as_table(values, n: int, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=np.int64)
    if arr.shape != (n,) * ndim:
        raise ValueError(f"table must have shape {(n,) * ndim}, got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ValueError(f"table entries must lie in [0, {n})")
    arr.setflags(write=False)
    return arr


def _check_divisor(ell: int, n: int) -> None:
    if ell < 1 or n % ell:
        raise ValueError(f"{ell} does not divide {n}")


@dataclass(frozen=True)
class GroupCtx:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("group order must be >= 1")

    @cached_property
    def fact(self) -> Factorization:
        return factorize(self.n)

    @cached_property
    def divs(self) -> list[int]:
        return divisors(self.fact)


@dataclass(frozen=True, eq=False)
class ExpMap:
    n: int
    table: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("group order must be >= 1")
        object.__setattr__(self, "table", _as_table(self.table, self.n, 1))

    def __eq__(self, other):
        if not isinstance(other, ExpMap):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __call__(self, x: int) -> int:
        return int(self.table[x % self.n])


@dataclass(frozen=True, eq=False)
class BiExpMap:
    n: int
    table: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("group order must be >= 1")
        object.__setattr__(self, "table", _as_table(self.table, self.n, 2))

    def __eq__(self, other):
        if not isinstance(other, BiExpMap):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __call__(self, x: int, y: int) -> int:
        return int(self.table[x % self.n, y % self.n])


@dataclass(frozen=True)
class CyclotomicMap:
    n: int
    ell: int
    r: int
    mult: tuple[int, ...]

    def __post_init__(self):
        _check_divisor(self.ell, self.n)
        object.__setattr__(self, "r", self.r % self.n)
        object.__setattr__(self, "mult", tuple(int(e) for e in self.mult))
        if len(self.mult) != self.ell:
            raise ValueError(f"need {self.ell} multipliers, got {len(self.mult)}")
        if any(not 0 <= e < self.n for e in self.mult):
            raise ValueError(f"multiplier exponents must lie in [0, {self.n})")

    @property
    def positive_r(self) -> int:
        """The order as a positive integer (``n`` stands in for 0)."""
        return self.r or self.n


@dataclass(frozen=True)
class BiCyclotomicMap:
    n: int
    ell1: int
    ell2: int
    r1: int
    r2: int
    mult: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_divisor(self.ell1, self.n)
        _check_divisor(self.ell2, self.n)
        object.__setattr__(self, "r1", self.r1 % self.n)
        object.__setattr__(self, "r2", self.r2 % self.n)
        mult = tuple(tuple(int(e) for e in row) for row in self.mult)
        object.__setattr__(self, "mult", mult)
        if len(mult) != self.ell1 or any(len(row) != self.ell2 for row in mult):
            raise ValueError(f"multiplier matrix must be {self.ell1}x{self.ell2}")
        if any(not 0 <= e < self.n for row in mult for e in row):
            raise ValueError(f"multiplier exponents must lie in [0, {self.n})")


@dataclass(frozen=True)
class IndexWitness:
    """A cyclotomic representation found for a univariate mapping."""

    n: int
    ell: int
    r: int
    mult: tuple[int, ...]

    @property
    def positive_r(self) -> int:
        return self.r or self.n

    def as_map(self) -> CyclotomicMap:
        return CyclotomicMap(self.n, self.ell, self.r, self.mult)

    def to_dict(self) -> dict:
        return {"n": self.n, "ell": self.ell, "r": self.positive_r, "mult": list(self.mult)}


@dataclass(frozen=True)
class BiIndexWitness:
    n: int
    ell1: int
    ell2: int
    r1: int
    r2: int
    mult: tuple[tuple[int, ...], ...]

    def as_map(self) -> BiCyclotomicMap:
        return BiCyclotomicMap(self.n, self.ell1, self.ell2, self.r1, self.r2, self.mult)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "ell1": self.ell1,
            "ell2": self.ell2,
            "r1": self.r1 or self.n,
            "r2": self.r2 or self.n,
            "mult": [list(row) for row in self.mult],
        }


# -- evaluation -----------------------------------------------------------------

def coset_of(x: int, ell: int, n: int) -> int:
    """Label ``i`` of the cyclotomic coset containing ``gamma**x``."""
    _check_divisor(ell, n)
    return x % ell


def eval_cyclotomic(m: CyclotomicMap, x: int) -> int:
    return (m.mult[x % m.ell] + m.r * x) % m.n


def eval_bi_cyclotomic(m: BiCyclotomicMap, x: int, y: int) -> int:
    return (m.mult[x % m.ell1][y % m.ell2] + m.r1 * x + m.r2 * y) % m.n


def to_expmap(m: CyclotomicMap | IndexWitness) -> ExpMap:
    x = np.arange(m.n, dtype=np.int64)
    mult = np.array(m.mult, dtype=np.int64)
    return ExpMap(m.n, (mult[x % m.ell] + m.r * x) % m.n)


def bi_to_expmap(m: BiCyclotomicMap | BiIndexWitness) -> BiExpMap:
    x = np.arange(m.n, dtype=np.int64)
    mult = np.array(m.mult, dtype=np.int64).reshape(m.ell1, m.ell2)
    table = mult[np.ix_(x % m.ell1, x % m.ell2)] + (m.r1 * x)[:, None] + (m.r2 * x)[None, :]
    return BiExpMap(m.n, table % m.n)


# -- index computation ----------------------------------------------------------

def _order_class(table_step: int, ell: int, n: int) -> Optional[int]:
    # least r with ell*r = table_step (mod n); the solutions form one class mod n/ell
    sols = linear_congruence(ell, table_step, n)
    return sols.residues[0] if sols else None


def representable_at(f: ExpMap, ell: int) -> Optional[IndexWitness]:
    """Witness that ``f`` is cyclotomic of index ``ell``, or None."""
    n = f.n
    _check_divisor(ell, n)
    g = f.table
    if ell == n:
        r = 0
    else:
        r = _order_class(int(g[ell] - g[0]), ell, n)
        if r is None or not _kernels.cyclotomic_ok(g, ell, r, n):
            return None
    mult = tuple(int((g[i] - r * i) % n) for i in range(ell))
    return IndexWitness(n, ell, r, mult)


def compute_index(f: ExpMap) -> IndexWitness:
    for ell in divisors(factorize(f.n)):
        w = representable_at(f, ell)
        if w is not None:
            return w
    raise AssertionError("unreachable: every map has index n")


def compute_index_oracle(f: ExpMap) -> IndexWitness:
    """Minimal index by trying every divisor and every r in [0, n)."""
    n = f.n
    if n > 100:
        raise ValueError("oracle limited to n <= 100")
    g = f.table
    for ell in range(1, n + 1):
        if n % ell:
            continue
        r = _kernels.cyclotomic_oracle(g, ell, n)
        if r >= 0:
            mult = tuple(int((g[i] - r * i) % n) for i in range(ell))
            return IndexWitness(n, ell, r, mult)
    raise AssertionError("unreachable")


def bi_representable_at(f: BiExpMap, ell1: int, ell2: int) -> Optional[BiIndexWitness]:
    n = f.n
    _check_divisor(ell1, n)
    _check_divisor(ell2, n)
    g = f.table
    r1 = 0 if ell1 == n else _order_class(int(g[ell1, 0] - g[0, 0]), ell1, n)
    r2 = 0 if ell2 == n else _order_class(int(g[0, ell2] - g[0, 0]), ell2, n)
    if r1 is None or r2 is None:
        return None
    if not _kernels.bi_cyclotomic_ok(g, ell1, ell2, r1, r2, n):
        return None
    mult = tuple(
        tuple(int((g[i, j] - r1 * i - r2 * j) % n) for j in range(ell2)) for i in range(ell1)
    )
    return BiIndexWitness(n, ell1, ell2, r1, r2, mult)


def minimal_index_pairs(f: BiExpMap) -> list[tuple[int, int]]:
    """Componentwise-minimal index pairs of ``f``, sorted.

    A representable pair is kept unless another representable pair is no
    larger in both coordinates and smaller in one.
    """
    if f.n > 64:
        raise ValueError("minimal_index_pairs limited to n <= 64")
    divs = divisors(factorize(f.n))
    found = [
        (a, b) for a in divs for b in divs if bi_representable_at(f, a, b) is not None
    ]
    return [
        (a, b)
        for a, b in found
        if not any(c <= a and d <= b and (c, d) != (a, b) for c, d in found)
    ]


# -- agreement counts -----------------------------------------------------------

def agreement_count(f: ExpMap, g: ExpMap) -> int:
    _same_order(f, g)
    return int(np.count_nonzero(f.table == g.table))


def window_agreement(f: ExpMap, g: ExpMap, start: int, length: int) -> int:
    """Agreements on the cyclic window ``start, ..., start+length-1`` (mod n)."""
    _same_order(f, g)
    if not 1 <= length <= f.n:
        raise ValueError(f"window length must lie in [1, {f.n}]")
    xs = (start + np.arange(length)) % f.n
    return int(np.count_nonzero(f.table[xs] == g.table[xs]))


def rectangle_profile(f: BiExpMap, g: BiExpMap) -> int:
    """Max of ``min(|U|, |V|)`` over agreement rectangles with ``V`` a cyclic interval."""
    _same_order(f, g)
    if f.n > 40:
        raise ValueError("rectangle_profile limited to n <= 40")
    return int(_kernels.rectangle_scan(np.ascontiguousarray(f.table == g.table)))


def _same_order(f, g) -> None:
    if f.n != g.n:
        raise ValueError(f"mappings live on groups of different order ({f.n} != {g.n})")


def random_expmap(n: int, rng: np.random.Generator) -> ExpMap:
    return ExpMap(n, rng.integers(0, n, size=n))


def random_cyclotomic(n: int, rng: np.random.Generator, ell: Optional[int] = None) -> CyclotomicMap:
    if ell is None:
        divs = divisors(factorize(n))
        ell = int(divs[rng.integers(len(divs))])
    return CyclotomicMap(n, ell, int(rng.integers(n)), tuple(rng.integers(0, n, size=ell).tolist()))


def random_bi_cyclotomic(n: int, rng: np.random.Generator) -> BiCyclotomicMap:
    divs = divisors(factorize(n))
    ell1 = int(divs[rng.integers(len(divs))])
    ell2 = int(divs[rng.integers(len(divs))])
    r1, r2 = (int(v) for v in rng.integers(0, n, size=2))
    mult = rng.integers(0, n, size=(ell1, ell2)).tolist()
    return BiCyclotomicMap(n, ell1, ell2, r1, r2, tuple(tuple(row) for row in mult))


def load_mapping(data: dict) -> ExpMap | BiExpMap:
    """Parse the JSON mapping format ``{"n": ..., "table": [...]}``."""
    if not isinstance(data, dict) or set(data) != {"n", "table"}:
        raise ValueError('mapping must be an object with exactly the keys "n" and "table"')
    n, table = data["n"], data["table"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    if not isinstance(table, list) or len(table) != n:
        raise ValueError(f"table must be a list of length {n}")
    if all(isinstance(v, list) for v in table):
        rows: Sequence = table
        if any(len(row) != n or not all(_is_int(v) for v in row) for row in rows):
            raise ValueError(f"bivariate table must be {n}x{n} integers")
        return BiExpMap(n, table)
    if not all(_is_int(v) for v in table):
        raise ValueError("table entries must be integers")
    return ExpMap(n, table)


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)
