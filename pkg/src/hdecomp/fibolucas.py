"""Fibonacci and Lucas numbers at any integer index, identities, primitive factors."""

from __future__ import annotations

from math import gcd
from typing import Optional

from .primes import factorize, is_prime


def _fib_pair(n: int, m: Optional[int] = None) -> tuple[int, int]:
    """(F_n, F_{n+1}) for n >= 0 by fast doubling, optionally mod m."""
    a, b = 0, 1
    for bit in bin(n)[2:]:
        c = a * (2 * b - a)
        d = a * a + b * b
        if m is not None:
            c, d = c % m, d % m
        if bit == "1":
            a, b = d, c + d
        else:
            a, b = c, d
        if m is not None:
            a, b = a % m, b % m
    return a, b


def fib(n: int) -> int:
    if n < 0:
        v = fib(-n)
        return v if n % 2 else -v
    return _fib_pair(n)[0]


def lucas(n: int) -> int:
    if n < 0:
        v = lucas(-n)
        return -v if n % 2 else v
    f, g = _fib_pair(n)
    return 2 * g - f


def fib_mod(n: int, m: int) -> int:
    if m < 1:
        raise ValueError("modulus must be positive")
    f = _fib_pair(abs(n), m)[0]
    if n < 0 and n % 2 == 0:
        f = -f
    return f % m


def lucas_mod(n: int, m: int) -> int:
    if m < 1:
        raise ValueError("modulus must be positive")
    f, g = _fib_pair(abs(n), m)
    v = 2 * g - f
    if n < 0 and n % 2:
        v = -v
    return v % m


def fibonacci_index(p: int) -> Optional[int]:
    """Smallest n >= 1 with F_n = p, or None."""
    if p < 1:
        return None
    a, b, n = 1, 1, 1
    while a < p:
        a, b, n = b, a + b, n + 1
    return n if a == p else None


# Identity suite I1-I9.  Each check returns True when the identity holds.

def _i1(n):  # L_n = F_{n-1} + F_{n+1}
    return lucas(n) == fib(n - 1) + fib(n + 1)


def _i2(n):  # L_{-n} = (-1)^n L_n and F_{-n} = (-1)^{n+1} F_n
    return lucas(-n) == (-1) ** (n % 2) * lucas(n) and fib(-n) == (-1) ** ((n + 1) % 2) * fib(n)


def _i3(m, n):  # L_m L_n = L_{m+n} + (-1)^n L_{m-n}
    return lucas(m) * lucas(n) == lucas(m + n) + (-1) ** (n % 2) * lucas(m - n)


def _i4(m, n):  # 5 F_m F_n = L_{m+n} - (-1)^n L_{m-n}
    return 5 * fib(m) * fib(n) == lucas(m + n) - (-1) ** (n % 2) * lucas(m - n)


def _i5(m, n):  # L_m F_n = F_{m+n} - (-1)^n F_{m-n}
    return lucas(m) * fib(n) == fib(m + n) - (-1) ** (n % 2) * fib(m - n)


def _i6(n):  # L_n^2 = 5 F_n^2 + 4 (-1)^n = L_{2n} + 2 (-1)^n
    sign = (-1) ** (n % 2)
    return lucas(n) ** 2 == 5 * fib(n) ** 2 + 4 * sign == lucas(2 * n) + 2 * sign


def _i7(m, n):  # gcd(F_m, F_n) = F_gcd(m, n)
    return gcd(fib(m), fib(n)) == fib(gcd(m, n))


def _i8(m, n):  # F_{m+n} = F_{m+1} F_n + F_m F_{n-1}
    return fib(m + n) == fib(m + 1) * fib(n) + fib(m) * fib(n - 1)


def _i9(n, r):  # F_n^2 = F_{n+r} F_{n-r} + (-1)^{n-r} F_r^2
    return fib(n) ** 2 == fib(n + r) * fib(n - r) + (-1) ** ((n - r) % 2) * fib(r) ** 2


def _any(*_):
    return True


def _i9_domain(n, r):
    return n >= r > 0


IDENTITIES = {
    "I1": (1, _any, _i1),
    "I2": (1, _any, _i2),
    "I3": (2, _any, _i3),
    "I4": (2, _any, _i4),
    "I5": (2, _any, _i5),
    "I6": (1, _any, _i6),
    "I7": (2, _any, _i7),
    "I8": (2, _any, _i8),
    "I9": (2, _i9_domain, _i9),
}


def identity_check(ident: str, params: tuple[int, ...]) -> bool:
    try:
        arity, domain, check = IDENTITIES[ident]
    except KeyError:
        raise ValueError(f"unknown identity {ident!r}") from None
    if len(params) != arity or not domain(*params):
        raise ValueError(f"{ident} is not stated for parameters {params}")
    return check(*params)


def rank_of_apparition(p: int) -> int:
    """Least k >= 1 with p | F_k, for prime p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 5:
        return 5
    # The rank divides p - (5|p); for p = 2 that is 3.
    legendre = 1 if p % 5 in (1, 4) else -1
    r = p - legendre
    for q in factorize(r):
        while r % q == 0 and fib_mod(r // q, p) == 0:
            r //= q
    return r


def primitive_factor(n: int) -> Optional[int]:
    """Smallest prime p with rank_of_apparition(p) == n, or None."""
    if n < 1:
        raise ValueError("n must be positive")
    f = fib(n)
    if f == 1:
        return None
    maximal_divisors = [n // r for r in factorize(n)] if n > 1 else []
    for p in factorize(f):
        # p | F_n, so its rank divides n; it equals n unless p | F_{n/r} for a prime r | n.
        if all(fib_mod(d, p) != 0 for d in maximal_divisors):
            return p
    return None
