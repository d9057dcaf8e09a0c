"""Integer number-theory helpers shared by the field and counting layers.

Everything here is exact integer arithmetic.  Factorization uses trial
division up to 10**6 and falls back to Pollard's rho (Brent variant) with a
fixed parameter schedule, so results are deterministic run-to-run.
"""

from __future__ import annotations

import math
from functools import lru_cache

_TRIAL_LIMIT = 10**6

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime_trial(n: int) -> bool:
    """Primality by trial division (used for field characteristics)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every size used here."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Brent's cycle-finding rho; n must be odd composite, not a prime power of 2."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed to split {n}")  # pragma: no cover


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as sorted ((prime, exponent), ...)."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    w = 0
    while d * d <= n and d <= _TRIAL_LIMIT:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += wheel[w]
        w = (w + 1) % 8
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _pollard_rho(m)
        stack.append(f)
        stack.append(m // f)
    return tuple(sorted(out.items()))


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of n >= 1, ascending."""
    return tuple(p for p, _ in factorize(n))


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, ascending."""
    divs = [1]
    for p, k in factorize(n):
        divs = [d * p**j for d in divs for j in range(k + 1)]
    return sorted(divs)


def moebius_int(n: int) -> int:
    """Moebius function on positive integers."""
    if n < 1:
        raise ValueError("moebius_int requires n >= 1")
    result = 1
    for _, k in factorize(n):
        if k > 1:
            return 0
        result = -result
    return result


def multiplicative_order_from_factored(
    mod_pow: "callable", exponent: int, identity
) -> int:
    """Order of an element given a multiple `exponent` of its true order.

    `mod_pow(k)` must return the element raised to the k-th power; `identity`
    is the group identity.  Strips primes from `exponent` while the power
    stays trivial.
    """
    order = exponent
    for p, _ in factorize(exponent):
        while order % p == 0 and mod_pow(order // p) == identity:
            order //= p
    return order
