"""Exact integer number theory: factor sieves, Mobius values, residue symbols.

Everything here is pure integer arithmetic.  A built FactorSieve is
immutable and may be shared freely across threads; the symbol functions
are stateless.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels


@dataclass(frozen=True)
class FactorSieve:
    """Least-prime-factor and Mobius tables for 1..limit.

    Arrays are indexed directly by n; index 0 is unused.
    ``smallest_prime_factor[p] == p`` exactly when p is prime, and
    ``mobius[n] == 0`` exactly when n has a square factor.
    """

    limit: int
    smallest_prime_factor: np.ndarray  # int64
    mobius: np.ndarray  # int8

    def factor(self, n: int) -> list[int]:
        """Distinct prime factors of n (1 <= n <= limit), ascending."""
        if not 1 <= n <= self.limit:
            raise ValueError(f"{n} outside sieve range 1..{self.limit}")
        spf = self.smallest_prime_factor
        out = []
        while n > 1:
            p = int(spf[n])
            out.append(p)
            while n % p == 0:
                n //= p
        return out


def build_sieve(limit: int) -> FactorSieve:
    """Sieve least prime factors and Mobius values up to limit (inclusive)."""
    if limit < 1:
        raise ValueError("sieve limit must be >= 1")
    spf = _kernels.build_spf(limit)
    mob = _kernels.build_mobius(spf)
    spf.setflags(write=False)
    mob.setflags(write=False)
    return FactorSieve(limit=limit, smallest_prime_factor=spf, mobius=mob)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd positive n.

    Binary reduction, no factorization.  Negative a is reduced mod n,
    which agrees with the product-of-Legendre-symbols definition.
    Returns 0 iff gcd(a, n) > 1.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi modulus must be odd and positive, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for any nonzero n.

    Extends jacobi by the sign rule (a|-1) = sign(a) and the 2-part rule
    (a|2) = 0 for even a, +1 for a = +-1 mod 8 and -1 for a = +-3 mod 8.
    """
    if n == 0:
        raise ValueError("kronecker modulus must be nonzero")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 == 1 and a % 8 in (3, 5):
            result = -result
    return result * jacobi(a, n)


def reciprocity_exponent(b: int) -> int:
    """0 if b = 1 mod 4 and 1 otherwise, for odd b (negative b reduced mod 4).

    This is the exponent that drives the sign in quadratic reciprocity:
    (m|n)(n|m) = (-1)^(reciprocity_exponent(m) * reciprocity_exponent(n)).
    """
    if b % 2 == 0:
        raise ValueError(f"argument must be odd, got {b}")
    return 0 if b % 4 == 1 else 1


def is_squarefree(n: int) -> bool:
    """Trial-division squarefreeness test; |n| up to ~10^12 is practical."""
    n = abs(n)
    if n == 0:
        return False
    if n % 4 == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        while n % p == 0:
            n //= p
        p += 1 if p == 2 else 2
    return True


def prime_factors(n: int, sieve: FactorSieve | None = None) -> list[int]:
    """Distinct prime factors of |n| (n != 0), ascending."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has no prime factorization")
    if sieve is not None and n <= sieve.limit:
        return sieve.factor(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out
