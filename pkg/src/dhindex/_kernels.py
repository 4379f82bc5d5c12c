"""Hot inner loops, in two interchangeable flavours.

Every kernel exists as a pure-numpy function and as a numba ``@njit`` loop
with identical semantics. The public names at module level point at the
numba versions unless ``DHINDEX_DISABLE_NUMBA`` is set to a non-empty value
other than ``0`` (or numba is missing), in which case the numpy versions are
used. ``NUMPY`` and ``NUMBA`` expose both sets for tests and benchmarks.

All inputs are int64 arrays. Field kernels assume ``p < 2**31`` so that a
product of two residues fits in int64.
"""
from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

_flag = os.environ.get("DHINDEX_DISABLE_NUMBA", "")
USE_NUMBA = numba is not None and _flag in ("", "0")


# -- numpy ----------------------------------------------------------------------

def _cyclotomic_ok_np(table, ell, r, n):
    x = np.arange(n, dtype=np.int64)
    res = (table - r * x) % n
    res = res.reshape(n // ell, ell)
    return bool((res == res[0]).all())


def _bi_cyclotomic_ok_np(table, ell1, ell2, r1, r2, n):
    x = np.arange(n, dtype=np.int64)
    res = (table - (r1 * x)[:, None] - (r2 * x)[None, :]) % n
    blocks = res.reshape(n // ell1, ell1, n // ell2, ell2)
    return bool((blocks == blocks[0:1, :, 0:1, :]).all())


def _cyclotomic_oracle_np(table, ell, n):
    # least r in [0, n) making table[x] - r*x constant on cosets, else -1
    x = np.arange(n, dtype=np.int64)
    rs = np.arange(n, dtype=np.int64)
    res = (table[None, :] - rs[:, None] * x[None, :]) % n
    res = res.reshape(n, n // ell, ell)
    ok = (res == res[:, 0:1, :]).all(axis=(1, 2))
    hits = np.flatnonzero(ok)
    return int(hits[0]) if hits.size else -1


def _rectangle_scan_np(eq):
    # eq[x, y] bool; max over cyclic column intervals V of min(|U|, |V|)
    n = eq.shape[0]
    best = 0
    hs = np.arange(1, n + 1)
    for start in range(n):
        cols = eq[:, (start + np.arange(n)) % n]
        alive = np.logical_and.accumulate(cols, axis=1)
        sizes = alive.sum(axis=0)
        best = max(best, int(np.minimum(sizes, hs).max()))
    return best


def _quad_best_agreement_np(n, ell):
    # max over r of sum over cosets i of max over a of
    # #{x = i mod ell : x^2 - r x = a mod n}
    x = np.arange(n, dtype=np.int64)
    coset = x % ell
    best = 0
    for r in range(n):
        a = (x * x - r * x) % n
        counts = np.zeros((ell, n), dtype=np.int64)
        np.add.at(counts, (coset, a), 1)
        best = max(best, int(counts.max(axis=1).sum()))
    return best


def _bi_scan_count_np(n, r1, r2, a):
    x = np.arange(n, dtype=np.int64)
    lhs = np.outer(x, x) % n
    rhs = (a + r1 * x[:, None] + r2 * x[None, :]) % n
    return int((lhs == rhs).sum())


def _dft_mod_np(vec, w, p):
    n = vec.shape[0]
    pows = np.empty(n, dtype=np.int64)
    acc = 1
    for k in range(n):
        pows[k] = acc
        acc = acc * int(w) % p
    idx = np.outer(np.arange(n), np.arange(n)) % n
    terms = (pows[idx] * vec[:, None]) % p
    return terms.sum(axis=0) % p


NUMPY = SimpleNamespace(
    name="numpy",
    cyclotomic_ok=_cyclotomic_ok_np,
    bi_cyclotomic_ok=_bi_cyclotomic_ok_np,
    cyclotomic_oracle=_cyclotomic_oracle_np,
    rectangle_scan=_rectangle_scan_np,
    quad_best_agreement=_quad_best_agreement_np,
    bi_scan_count=_bi_scan_count_np,
    dft_mod=_dft_mod_np,
)


# -- numba ----------------------------------------------------------------------

def _cyclotomic_ok_loop(table, ell, r, n):
    for i in range(ell):
        base = (table[i] - r * i) % n
        for x in range(i + ell, n, ell):
            if (table[x] - r * x) % n != base:
                return False
    return True


def _bi_cyclotomic_ok_loop(table, ell1, ell2, r1, r2, n):
    for x in range(n):
        i = x % ell1
        for y in range(n):
            j = y % ell2
            if x == i and y == j:
                continue
            v = (table[x, y] - r1 * x - r2 * y) % n
            if v != (table[i, j] - r1 * i - r2 * j) % n:
                return False
    return True


def _cyclotomic_oracle_loop(table, ell, n):
    for r in range(n):
        good = True
        for i in range(ell):
            base = (table[i] - r * i) % n
            for x in range(i + ell, n, ell):
                if (table[x] - r * x) % n != base:
                    good = False
                    break
            if not good:
                break
        if good:
            return r
    return -1


def _rectangle_scan_loop(eq):
    n = eq.shape[0]
    best = 0
    alive = np.empty(n, dtype=np.bool_)
    for start in range(n):
        alive[:] = True
        size = n
        for h in range(1, n + 1):
            col = (start + h - 1) % n
            size = 0
            for x in range(n):
                if alive[x] and not eq[x, col]:
                    alive[x] = False
                if alive[x]:
                    size += 1
            m = size if size < h else h
            if m > best:
                best = m
            if size == 0:
                break
    return best


def _quad_best_agreement_loop(n, ell):
    best = 0
    counts = np.zeros((ell, n), dtype=np.int64)
    for r in range(n):
        counts[:, :] = 0
        for x in range(n):
            a = (x * x - r * x) % n
            counts[x % ell, a] += 1
        total = 0
        for i in range(ell):
            total += counts[i].max()
        if total > best:
            best = total
    return best


def _bi_scan_count_loop(n, r1, r2, a):
    count = 0
    for x in range(n):
        for y in range(n):
            if (x * y - a - r1 * x - r2 * y) % n == 0:
                count += 1
    return count


def _dft_mod_loop(vec, w, p):
    n = vec.shape[0]
    pows = np.empty(n, dtype=np.int64)
    acc = 1
    for k in range(n):
        pows[k] = acc
        acc = acc * w % p
    out = np.zeros(n, dtype=np.int64)
    for j in range(n):
        s = 0
        for x in range(n):
            s = (s + vec[x] * pows[(x * j) % n]) % p
        out[j] = s
    return out


if numba is not None:
    _jit = numba.njit(cache=True)
    NUMBA = SimpleNamespace(
        name="numba",
        cyclotomic_ok=_jit(_cyclotomic_ok_loop),
        bi_cyclotomic_ok=_jit(_bi_cyclotomic_ok_loop),
        cyclotomic_oracle=_jit(_cyclotomic_oracle_loop),
        rectangle_scan=_jit(_rectangle_scan_loop),
        quad_best_agreement=_jit(_quad_best_agreement_loop),
        bi_scan_count=_jit(_bi_scan_count_loop),
        dft_mod=_jit(_dft_mod_loop),
    )
else:  # pragma: no cover
    NUMBA = None

ACTIVE = NUMBA if USE_NUMBA else NUMPY
BACKEND = ACTIVE.name

cyclotomic_ok = ACTIVE.cyclotomic_ok
bi_cyclotomic_ok = ACTIVE.bi_cyclotomic_ok
cyclotomic_oracle = ACTIVE.cyclotomic_oracle
rectangle_scan = ACTIVE.rectangle_scan
quad_best_agreement = ACTIVE.quad_best_agreement
bi_scan_count = ACTIVE.bi_scan_count
dft_mod = ACTIVE.dft_mod
