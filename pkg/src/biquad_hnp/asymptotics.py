"""Euler-product constants, main terms, and exact class-weight identities.

The two counting asymptotics are

    S(X)      ~ (23/960)  * sqrt(X) * (log X)^2 * C_total
    S~(X)     ~ (1/(3*sqrt(2*pi))) * sqrt(X log X) * C_failing

with C_total = prod_p (1-1/p)^3 (1+3/p) and
C_failing = prod_p (1-1/p)^(3/2) (1+3/(2p)).  The integers 23 and 112 are
exact weighted counts over the finite class decomposition of the
enumeration (sign pair, factor-of-2 slot, odd residues); they are
recomputed here by exhaustive rational summation, together with the
signed variant that cancels to zero.  Floating point appears only in the
Euler products and main terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .arith import kronecker, reciprocity_exponent

DEFAULT_PRIME_LIMIT = 10_000_000

# factor-of-2 placements: slot 0 = all components odd, slot i = component i even
EVEN_SLOTS = (0, 1, 2, 3)
SIGN_PAIRS = tuple(product((1, -1), repeat=2))
ODD_RESIDUES = (1, 3, 5, 7)


@dataclass(frozen=True)
class EulerProductValue:
    """Truncated Euler product with a rigorous truncation bound.

    The omitted factors all lie in (0, 1), so the true value sits in
    [value - tail_bound, value].
    """

    value: float
    tail_bound: float
    prime_limit: int


@lru_cache(maxsize=8)
def _primes_up_to(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.nonzero(flags)[0].astype(np.int64)


def euler_product_total(prime_limit: int = DEFAULT_PRIME_LIMIT) -> EulerProductValue:
    """prod_{p <= limit} (1 - 1/p)^3 (1 + 3/p), the all-fields constant.

    Each factor is 1 - 6/p^2 + 8/p^3 - 3/p^4, so |log factor| <= 6/p^2 + 8/p^3
    (checked to hold from p = 3 on); the tail over p > limit is bounded by
    the corresponding integrals, 6/P + 4/P^2.
    """
    if prime_limit < 2:
        raise ValueError("prime_limit must be >= 2")
    x = 1.0 / _primes_up_to(prime_limit)
    log_value = float(np.sum(3.0 * np.log1p(-x) + np.log1p(3.0 * x)))
    value = math.exp(log_value)
    tail_log = 6.0 / prime_limit + 4.0 / prime_limit**2
    return EulerProductValue(value=value, tail_bound=value * tail_log, prime_limit=prime_limit)


def euler_product_failing(prime_limit: int = DEFAULT_PRIME_LIMIT) -> EulerProductValue:
    """prod_{p <= limit} (1 - 1/p)^(3/2) (1 + 3/(2p)), the failing-fields constant.

    |log factor| <= 2/p^2 + 2/p^3 from p = 3 on (leading term is 15/(8p^2)),
    giving the tail bound 2/P + 1/P^2.
    """
    if prime_limit < 2:
        raise ValueError("prime_limit must be >= 2")
    x = 1.0 / _primes_up_to(prime_limit)
    log_value = float(np.sum(1.5 * np.log1p(-x) + np.log1p(1.5 * x)))
    value = math.exp(log_value)
    tail_log = 2.0 / prime_limit + 1.0 / prime_limit**2
    return EulerProductValue(value=value, tail_bound=value * tail_log, prime_limit=prime_limit)


@lru_cache(maxsize=2)
def _default_constant(which: str) -> float:
    if which == "total":
        return euler_product_total().value
    return euler_product_failing().value


def main_term_total(X: float, constant: float | None = None) -> float:
    """(23/960) sqrt(X) (log X)^2 times the all-fields Euler product."""
    if X < 1:
        raise ValueError("X must be >= 1")
    c = _default_constant("total") if constant is None else constant
    return (23.0 / 960.0) * math.sqrt(X) * math.log(X) ** 2 * c


def main_term_failing(X: float, constant: float | None = None) -> float:
    """sqrt(X log X) / (3 sqrt(2 pi)) times the failing-fields Euler product."""
    if X < 1:
        raise ValueError("X must be >= 1")
    c = _default_constant("failing") if constant is None else constant
    return math.sqrt(X * math.log(X)) / (3.0 * math.sqrt(2.0 * math.pi)) * c


def u_factor(
    k1: int, k2: int, k3: int, even_slot: int, sign2: int, sign3: int
) -> int:
    """Reciprocity sign attached to a class: +1 or -1.

    For odd k1, k2, k3 this is
    (-1)^(nu(k1)nu(k2) + nu(k2)nu(k3) + nu(k3)nu(k1)) times the three
    Kronecker symbols (t2 | k2 k3)(t3 | k3 k1)(t4 | k1 k2), where the
    upper entries carry the factor of 2 of the even slot and the signs of
    the last two components.  Depends on the k_i only mod 8.
    """
    for k in (k1, k2, k3):
        if k % 2 == 0:
            raise ValueError(f"u_factor arguments must be odd, got {k}")
    if even_slot not in EVEN_SLOTS:
        raise ValueError("even_slot must be 0..3")
    n1, n2, n3 = (
        reciprocity_exponent(k1),
        reciprocity_exponent(k2),
        reciprocity_exponent(k3),
    )
    sign = -1 if (n1 * n2 + n2 * n3 + n3 * n1) % 2 else 1
    top2 = 2 if even_slot == 1 else 1
    top3 = (2 if even_slot == 2 else 1) * sign2
    top4 = (2 if even_slot == 3 else 1) * sign3
    return (
        sign
        * kronecker(top2, k2 * k3)
        * kronecker(top3, k3 * k1)
        * kronecker(top4, k1 * k2)
    )


def in_failure_class(even_slot: int, eps: tuple[int, int, int]) -> bool:
    """Membership of signed residues (mod 8) in the failure-compatible set.

    eps is the residue triple of the signed components.  With all
    components odd (slot 0): either all residues agree mod 4, or two are
    equal mod 8 and opposite to the third mod 4.  With an even component,
    the two odd residues must be equal mod 8.
    """
    if even_slot not in EVEN_SLOTS:
        raise ValueError("even_slot must be 0..3")
    if any(e not in ODD_RESIDUES for e in eps):
        raise ValueError(f"residues must lie in {ODD_RESIDUES}")
    e1, e2, e3 = eps
    if even_slot == 0:
        if e1 % 4 == e2 % 4 == e3 % 4:
            return True
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            if eps[i] == eps[j] and eps[i] % 4 == (-eps[k]) % 4:
                return True
        return False
    if even_slot == 1:
        return e2 == e3
    if even_slot == 2:
        return e1 == e3
    return e1 == e2


def class_c(
    sign2: int,
    sign3: int,
    eps: tuple[int, int, int],
    even_slot: int,
    context: str = "mod8",
) -> int:
    """The scale factor c of a class.

    context "mod4": eps lies in {+1, -1}^3 (mod-4 sign classes of the odd
    parts) and the full {1, 4, 8} table applies.  context "mod8": eps lies
    in {1,3,5,7}^3 and only failure-compatible classes occur, collapsing
    the table to 1 (slot 0, all signed residues equal mod 4) or 4.
    """
    if context == "mod4":
        if any(e not in (1, -1) for e in eps):
            raise ValueError("mod4 context expects residues in {+1, -1}")
        e1, e2, e3 = eps[0], sign2 * eps[1], sign3 * eps[2]
        if even_slot == 0:
            return 1 if e1 == e2 == e3 else 4
        if even_slot == 1:
            return 4 if e2 == e3 else 8
        if even_slot == 2:
            return 4 if e1 == e3 else 8
        if even_slot == 3:
            return 4 if e1 == e2 else 8
        raise ValueError("even_slot must be 0..3")
    if context == "mod8":
        if any(e not in ODD_RESIDUES for e in eps):
            raise ValueError(f"mod8 context expects residues in {ODD_RESIDUES}")
        e1, e2, e3 = eps[0], (sign2 * eps[1]) % 8, (sign3 * eps[2]) % 8
        if even_slot == 0 and e1 % 4 == e2 % 4 == e3 % 4:
            return 1
        return 4
    raise ValueError(f"unknown context {context!r}")


def _mod4_weight(even_slots: tuple[int, ...] = EVEN_SLOTS) -> Fraction:
    total = Fraction(0)
    for sign2, sign3 in SIGN_PAIRS:
        for slot in even_slots:
            two_power = 1 if slot == 0 else 2
            for eps in product((1, -1), repeat=3):
                c = class_c(sign2, sign3, eps, slot, context="mod4")
                total += Fraction(1, c * two_power)
    return total


def _mod8_weight(
    even_slots: tuple[int, ...] = EVEN_SLOTS,
    sign_pairs: tuple[tuple[int, int], ...] = SIGN_PAIRS,
    signed: bool = False,
) -> Fraction:
    total = Fraction(0)
    for sign2, sign3 in sign_pairs:
        for slot in even_slots:
            two_power = 1 if slot == 0 else 2
            for eps in product(ODD_RESIDUES, repeat=3):
                signed_eps = (eps[0], (sign2 * eps[1]) % 8, (sign3 * eps[2]) % 8)
                if not in_failure_class(slot, signed_eps):
                    continue
                c = class_c(sign2, sign3, eps, slot, context="mod8")
                weight = Fraction(1, c * two_power)
                if signed:
                    weight *= u_factor(eps[0], eps[1], eps[2], slot, sign2, sign3)
                total += weight
    return total


def total_class_weight() -> int:
    """Sum of 1/(c 2^k) over all classes; must equal 23 exactly."""
    value = _mod4_weight()
    if value.denominator != 1:
        raise AssertionError(f"class weight sum is not an integer: {value}")
    return int(value)


def failing_class_weight() -> int:
    """Sum of 1/(c 2^k) over failure-compatible classes; must equal 112."""
    value = _mod8_weight()
    if value.denominator != 1:
        raise AssertionError(f"class weight sum is not an integer: {value}")
    return int(value)


def signed_failing_class_weight(
    sign_pairs: tuple[tuple[int, int], ...] = SIGN_PAIRS,
) -> Fraction:
    """u-weighted version of failing_class_weight; cancels to 0 exactly.

    Restricting sign_pairs to a single pair still gives 0: the
    cancellation happens block by block.
    """
    return _mod8_weight(sign_pairs=sign_pairs, signed=True)


@dataclass(frozen=True)
class ConstantCrossCheck:
    """Agreement test between the two closed forms of the failing main term."""

    agrees: bool
    direct: float
    assembled: float
    residual: float  # |direct - assembled| / assembled
    combined_tail: float
    prime_limit: int


def main_term_constant_crosscheck(prime_limit: int) -> ConstantCrossCheck:
    """Compare the two coefficient-times-product forms of the failing constant.

    Direct form:    (1/(3 sqrt(2 pi)))  prod (1-1/p)^(3/2) (1+3/(2p))
    Assembled form: (1/6) * 112 * (6/pi^2) * (1/(56 sqrt(2 pi)))
                    prod (1-1/p)^(1/2) (1+1/(2p+2))

    They are equal: (1+1/p)(1+1/(2p+2)) = 1+3/(2p) and
    prod (1-1/p^2) = 6/pi^2.  At finite truncation they differ by the tail
    of prod (1-1/p^2); agreement is checked against the combined rigorous
    tail bounds.
    """
    if prime_limit < 2:
        raise ValueError("prime_limit must be >= 2")
    p = _primes_up_to(prime_limit).astype(np.float64)
    x = 1.0 / p
    direct_log = float(np.sum(1.5 * np.log1p(-x) + np.log1p(1.5 * x)))
    direct = math.exp(direct_log) / (3.0 * math.sqrt(2.0 * math.pi))
    assembled_log = float(np.sum(0.5 * np.log1p(-x) + np.log1p(1.0 / (2.0 * p + 2.0))))
    coeff = (1.0 / 6.0) * 112.0 * (6.0 / math.pi**2) / (56.0 * math.sqrt(2.0 * math.pi))
    assembled = coeff * math.exp(assembled_log)
    tail_direct = direct * (2.0 / prime_limit + 1.0 / prime_limit**2)
    tail_assembled = assembled * (1.0 / prime_limit + 1.0 / prime_limit**2)
    combined = tail_direct + tail_assembled
    diff = abs(direct - assembled)
    return ConstantCrossCheck(
        agrees=diff <= combined,
        direct=direct,
        assembled=assembled,
        residual=diff / assembled,
        combined_tail=combined,
        prime_limit=prime_limit,
    )
