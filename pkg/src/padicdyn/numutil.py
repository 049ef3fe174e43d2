"""Small integer and rational number-theory helpers."""

from __future__ import annotations

import math
from fractions import Fraction

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10^24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("vp(0) is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(q, p: int) -> int:
    q = Fraction(q)
    if q == 0:
        raise ValueError("vp(0) is infinite")
    return vp(q.numerator, p) - vp(q.denominator, p)


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; adequate at desk scale."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius(n: int) -> int:
    if n == 1:
        return 1
    fac = factorize(n)
    if any(k > 1 for k in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def divisors(n: int) -> list[int]:
    """Sorted list of positive divisors."""
    out = [1]
    for q, k in factorize(n).items():
        out = [d * q**j for d in out for j in range(k + 1)]
    return sorted(out)


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    return all(k == 1 for k in factorize(n).values())


def rational_sqrt(q) -> Fraction | None:
    """Exact square root of a rational, or None when it is not a rational square."""
    q = Fraction(q)
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def rational_reconstruct(a: int, m: int, bound: int) -> tuple[int, int] | None:
    """Find n/d with n ≡ a*d (mod m), |n| <= bound, 0 < d <= bound, gcd(d, m) = 1.

    Standard half-extended Euclid on (m, a).  Returns None when no candidate
    within the bound exists.
    """
    if m <= 0 or bound <= 0:
        return None
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    n, d = r1, s1
    if d == 0:
        return None
    if d < 0:
        n, d = -n, -d
    if d > bound or abs(n) > bound:
        return None
    if math.gcd(d, m) != 1:
        return None
    if (n - a * d) % m != 0:
        return None
    return n, d
