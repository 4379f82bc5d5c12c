import math

import pytest
from hypothesis import given, settings, strategies as st

from dhindex.modarith import (
    Factorization,
    ResidueSet,
    crt,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    linear_congruence,
    solve_quadratic,
    solve_quadratic_bruteforce,
    sqrt_mod_prime,
    tau,
)


def trial_factor(n):
    out, p = [], 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


@pytest.mark.parametrize("n, expected", [
    (12, [(2, 2), (3, 1)]),
    (1, []),
    (9991, [(97, 1), (103, 1)]),
])
def test_factorize_examples(n, expected):
    assert list(factorize(n).factors) == expected


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(2**63 + 1)


@pytest.mark.parametrize("n", [
    2**61 - 1,
    (2**31 - 1) * (2**31 + 11),
    1000003 * 1000033,
    999983**2,
    2**63,
    600851475143,
    4611686018427387907,
])
def test_factorize_large(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.factors) == n
    assert all(is_prime(p) for p in f.primes)


@given(st.integers(1, 200000))
def test_factorize_matches_trial_division(n):
    assert list(factorize(n).factors) == trial_factor(n)


def test_factorization_invariants_enforced():
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))
    with pytest.raises(ValueError):
        Factorization(12, ((2, 1), (3, 1)))


def test_is_prime_against_sieve():
    limit = 20000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = [False] * len(sieve[i * i::i])
    assert [is_prime(k) for k in range(limit)] == sieve
    # strong pseudoprimes to several small bases
    assert not is_prime(3215031751)
    assert not is_prime(3825123056546413051)


def test_divisors_examples():
    assert divisors(factorize(12)) == [1, 2, 3, 4, 6, 12]
    assert divisors(factorize(1)) == [1]
    assert divisors(factorize(36)) == [d for d in range(1, 37) if 36 % d == 0]
    assert len(divisors(factorize(36))) == 9


def test_phi_tau_examples():
    assert (euler_phi(factorize(12)), tau(factorize(12))) == (4, 6)
    assert (euler_phi(factorize(1)), tau(factorize(1))) == (1, 1)
    assert (euler_phi(factorize(97)), tau(factorize(97))) == (96, 2)


def test_gauss_divisor_sum():
    for n in range(1, 10001):
        f = factorize(n)
        assert sum(euler_phi(factorize(d)) for d in divisors(f)) == n


@pytest.mark.parametrize("n", range(1, 300))
def test_phi_tau_against_counting(n):
    f = factorize(n)
    assert euler_phi(f) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    assert tau(f) == len(divisors(f)) == sum(1 for d in range(1, n + 1) if n % d == 0)


def test_crt_examples():
    assert crt([(1, 2), (2, 3)]) == (5, 6)
    assert crt([(0, 1)]) == (0, 1)
    assert crt([(3, 4), (5, 7)]) == (19, 28)
    assert [x for x in range(28) if x % 4 == 3 and x % 7 == 5] == [19]


def test_crt_rejects_common_factor():
    with pytest.raises(ValueError):
        crt([(1, 4), (1, 6)])


@pytest.mark.parametrize("a, b, n, expected", [
    (2, 4, 6, (2, 5)),
    (3, 1, 5, (2,)),
    (2, 3, 4, ()),
    (0, 0, 3, (0, 1, 2)),
    (0, 1, 3, ()),
    (5, 7, 1, (0,)),
])
def test_linear_congruence_examples(a, b, n, expected):
    assert linear_congruence(a, b, n).residues == expected


@given(st.integers(-500, 500), st.integers(-500, 500), st.integers(1, 300))
def test_linear_congruence_against_scan(a, b, n):
    got = linear_congruence(a, b, n)
    scan = tuple(x for x in range(n) if (a * x - b) % n == 0)
    assert got.residues == scan
    g = math.gcd(a, n)
    assert len(got) == (g if b % g == 0 else 0)


def test_sqrt_mod_prime_examples():
    assert sqrt_mod_prime(2, 7).residues == (3, 4)
    assert sqrt_mod_prime(0, 97).residues == (0,)
    assert sqrt_mod_prime(3, 7).residues == ()
    assert sqrt_mod_prime(1, 2).residues == (1,)
    with pytest.raises(ValueError):
        sqrt_mod_prime(4, 15)


@pytest.mark.parametrize("p", [3, 5, 13, 17, 41, 97, 193, 257, 65537, 7681])
def test_sqrt_mod_prime_against_scan(p):
    # 65537 and 7681 have a large power of two in p-1, exercising Tonelli-Shanks
    squares = {}
    for x in range(min(p, 3000)):
        squares.setdefault(x * x % p, set()).add(x)
    for a in range(min(p, 300)):
        roots = sqrt_mod_prime(a, p)
        assert all(r * r % p == a for r in roots)
        if p <= 3000:
            assert set(roots) == squares.get(a, set())


def test_sqrt_mod_prime_big():
    p = 2**61 - 1
    a = 123456789**2 % p
    assert set(sqrt_mod_prime(a, p)) == {123456789, p - 123456789}


@pytest.mark.parametrize("n, b, c, expected", [
    (6, 5, 0, (0, 1, 3, 4)),
    (4, 0, 0, (0, 2)),
    (3, 0, 1, ()),
    (1, 0, 0, (0,)),
])
def test_solve_quadratic_examples(n, b, c, expected):
    assert solve_quadratic(n, b, c).residues == expected
    assert solve_quadratic_bruteforce(n, b, c).residues == expected


@pytest.mark.parametrize("n", [2**10, 3**6, 5**4, 2**6 * 3**4, 7**3 * 4])
def test_solve_quadratic_prime_powers_exhaustive(n):
    for b in range(0, n, max(1, n // 40)):
        for c in range(0, n, max(1, n // 40)):
            assert solve_quadratic(n, b, c) == solve_quadratic_bruteforce(n, b, c)


@settings(max_examples=300)
@given(st.integers(1, 5000), st.integers(0, 10**6), st.integers(0, 10**6))
def test_solve_quadratic_property(n, b, c):
    b, c = b % n, c % n
    assert solve_quadratic(n, b, c) == solve_quadratic_bruteforce(n, b, c)


def test_prime_root_count_at_most_two():
    for p in [2, 3, 5, 7, 11, 13, 101]:
        for b in range(p):
            for c in range(p):
                assert len(solve_quadratic(p, b, c)) <= 2


def test_solve_quadratic_large_modulus():
    n = (2**31 - 1) * 1000003
    roots = solve_quadratic(n, 0, (-49) % n)
    assert len(roots) == 4
    assert all((x * x - 49) % n == 0 for x in roots)
    assert 7 in roots and n - 7 in roots


def test_crt_split_is_identity():
    for n in [60, 360, 1001, 2**4 * 3**2 * 5]:
        f = factorize(n)
        for b, c in [(1, 2), (0, 0), (7, 11), (n - 1, 3)]:
            parts = []
            for q in f.prime_powers():
                parts.append([r for r in range(q) if (r * r + b * r + c) % q == 0])
            combined = set()
            import itertools
            for combo in itertools.product(*parts):
                combined.add(crt(list(zip(combo, f.prime_powers())))[0])
            assert tuple(sorted(combined)) == solve_quadratic(n, b, c).residues


def test_residue_set_invariants():
    with pytest.raises(ValueError):
        ResidueSet(5, (3, 1))
    with pytest.raises(ValueError):
        ResidueSet(5, (5,))
    assert ResidueSet.of(7, [4, 3, 4]).residues == (3, 4)
