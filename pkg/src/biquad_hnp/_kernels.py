"""Hot integer kernels: sieve construction and the ordered-triple enumeration.

The kernels are compiled with numba when it is importable.  Setting the
environment variable ``BIQUAD_HNP_PURE_PYTHON=1`` (before import) forces
the uncompiled path: sieves fall back to vectorized numpy and the
enumeration loop runs as plain Python.  Both paths produce bit-identical
results; ``benchmarks/bench_enumeration.py`` compares their speed.

int64 is used throughout, which caps the discriminant bound at
X < 2^63 (the enumeration squares values up to sqrt(X)).
"""

from __future__ import annotations

import math
import os

import numpy as np

USING_NUMBA = os.environ.get("BIQUAD_HNP_PURE_PYTHON", "").strip().lower() not in (
    "1",
    "true",
    "yes",
)
if USING_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USING_NUMBA = False

if not USING_NUMBA:

    def njit(*args, **kwargs):
        """No-op decorator standing in for numba.njit."""
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


# Ordered-tuple classes: 4 sign pairs x 4 factor-of-2 placements x 4^3 odd
# residues mod 8.  Class ids index the tally arrays returned by
# enumerate_block; see class_index/decode_class_index.
CLASS_SPACE = 4 * 4 * 64

POW3 = np.array([3**k for k in range(17)], dtype=np.int64)


def build_spf(limit: int) -> np.ndarray:
    """Least-prime-factor table for 0..limit (entries 0 and 1 are 0 and 1)."""
    if limit < 1:
        raise ValueError("sieve limit must be >= 1")
    if USING_NUMBA:
        return _spf_loop(limit)
    return _spf_numpy(limit)


def build_mobius(spf: np.ndarray) -> np.ndarray:
    """Mobius values 0..limit from a least-prime-factor table."""
    if USING_NUMBA:
        return _mobius_loop(spf)
    return _mobius_numpy(spf.shape[0] - 1)


@njit(cache=True)
def _spf_loop(limit):
    spf = np.zeros(limit + 1, dtype=np.int64)
    spf[1] = 1
    for i in range(2, limit + 1):
        if spf[i] == 0:
            for j in range(i, limit + 1, i):
                if spf[j] == 0:
                    spf[j] = i
    return spf


def _spf_numpy(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    spf[1] = 1
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            spf[p] = p
            block = spf[p * p :: p]
            block[block == 0] = p
    # remaining zeros past index 1 are primes above sqrt(limit)
    idx = np.nonzero(spf == 0)[0]
    idx = idx[idx >= 2]
    spf[idx] = idx
    return spf


@njit(cache=True)
def _mobius_loop(spf):
    limit = spf.shape[0] - 1
    mob = np.zeros(limit + 1, dtype=np.int8)
    if limit >= 1:
        mob[1] = 1
    for i in range(2, limit + 1):
        t = i
        m = 1
        while t > 1:
            p = spf[t]
            t //= p
            if t % p == 0:
                m = 0
                break
            m = -m
        mob[i] = m
    return mob


def _mobius_numpy(limit: int) -> np.ndarray:
    # multiplicative sieve: flip sign at multiples of each prime, zero at
    # multiples of its square
    mob = np.ones(limit + 1, dtype=np.int8)
    mob[0] = 0
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, limit + 1):
        if is_prime[p]:
            if p * p <= limit:
                is_prime[p * p :: p] = False
            mob[p::p] *= -1
            if p * p <= limit:
                mob[p * p :: p * p] = 0
    if limit >= 1:
        mob[1] = 1
    return mob


@njit(cache=True, nogil=True)
def jacobi_i64(a, n):
    """Jacobi symbol for int64 operands; n odd positive, a already in [0, n)."""
    result = 1
    while a != 0:
        while a & 1 == 0:
            a >>= 1
            r = n & 7
            if r == 3 or r == 5:
                result = -result
        t = a
        a = n
        n = t
        if (a & 3) == 3 and (n & 3) == 3:
            result = -result
        a = a % n
    if n == 1:
        return result
    return 0


@njit(cache=True, nogil=True)
def _fails_norm_principle(v1, v2, v3, fp, digs, w, even_slot):
    """Congruence-and-symbol failure test for one ordered tuple.

    v1, v2, v3 are the signed components (v1 > 0); fp[:w] their odd prime
    factors with digs[:w] giving the component each prime divides.
    """
    r1 = v1 & 3
    r2 = v2 & 3
    r3 = v3 & 3
    if r1 == r2 and r2 == r3:
        pass  # all components in one class mod 4: no extra congruence
    elif r1 == r2:
        if (v1 & 7) != (v2 & 7):
            return False
    elif r1 == r3:
        if (v1 & 7) != (v3 & 7):
            return False
    elif r2 == r3:
        if (v2 & 7) != (v3 & 7):
            return False
    else:
        return False  # pairwise distinct mod 4: the principle holds
    q1 = v2 * v3
    q2 = v1 * v3
    q3 = v1 * v2
    if even_slot == 1:
        x = q1 & 7
        if x != 1 and x != 7:
            return False
    elif even_slot == 2:
        x = q2 & 7
        if x != 1 and x != 7:
            return False
    elif even_slot == 3:
        x = q3 & 7
        if x != 1 and x != 7:
            return False
    for i in range(w):
        p = fp[i]
        d = digs[i]
        if d == 0:
            q = q1
        elif d == 1:
            q = q2
        else:
            q = q3
        if jacobi_i64(q % p, p) != 1:
            return False
    return True


@njit(cache=True, nogil=True)
def enumerate_block(n_lo, n_hi, root, spf, mob, collect):
    """Enumerate ordered tuples whose odd squarefree core lies in [n_lo, n_hi].

    root is floor(sqrt(X)); a tuple with weight factor c and 2-placement
    power pw is admitted when pw * c * core <= root, i.e. disc <= X.

    Returns (class_total, class_fail, records).  records has one int64 row
    (v1, v2, v3, disc, c, fails) per admitted tuple and is empty unless
    collect is true.
    """
    class_total = np.zeros(CLASS_SPACE, dtype=np.int64)
    class_fail = np.zeros(CLASS_SPACE, dtype=np.int64)
    cap = 1024 if collect else 1
    rec = np.empty((cap, 6), dtype=np.int64)
    nrec = 0
    fp = np.empty(16, dtype=np.int64)
    digs = np.empty(16, dtype=np.int64)

    n = n_lo if (n_lo & 1) == 1 else n_lo + 1
    while n <= n_hi:
        if mob[n] != 0:
            w = 0
            t = n
            while t > 1:
                p = spf[t]
                fp[w] = p
                w += 1
                t //= p
            for asg in range(POW3[w]):
                a = asg
                m1 = np.int64(1)
                m2 = np.int64(1)
                m3 = np.int64(1)
                for i in range(w):
                    d = a % 3
                    a //= 3
                    digs[i] = d
                    if d == 0:
                        m1 *= fp[i]
                    elif d == 1:
                        m2 *= fp[i]
                    else:
                        m3 *= fp[i]
                ecode = (((m1 & 7) >> 1) << 4) | (((m2 & 7) >> 1) << 2) | ((m3 & 7) >> 1)
                for pl in range(4):
                    base = n if pl == 0 else 2 * n
                    v1 = 2 * m1 if pl == 1 else m1
                    e2 = 2 * m2 if pl == 2 else m2
                    e3 = 2 * m3 if pl == 3 else m3
                    for s in range(4):
                        v2 = e2 if s < 2 else -e2
                        v3 = e3 if (s & 1) == 0 else -e3
                        r1 = v1 & 3
                        r2 = v2 & 3
                        r3 = v3 & 3
                        eq12 = r1 == r2
                        eq13 = r1 == r3
                        eq23 = r2 == r3
                        if eq12 and eq13:
                            c = np.int64(1)
                        elif eq12 or eq13 or eq23:
                            c = np.int64(4)
                        else:
                            c = np.int64(8)
                        if base * c > root:
                            continue
                        # degenerate tuples name quadratic, not biquadratic,
                        # fields: two subfield kernels collide or equal 1
                        if v2 == v3 and (v2 == 1 or v2 == -1):
                            continue
                        if v1 == 1 and (v2 == 1 or v3 == 1):
                            continue
                        cid = ((s * 4 + pl) << 6) | ecode
                        class_total[cid] += 1
                        fails = _fails_norm_principle(v1, v2, v3, fp, digs, w, pl)
                        if fails:
                            class_fail[cid] += 1
                        if collect:
                            if nrec == cap:
                                cap *= 2
                                grown = np.empty((cap, 6), dtype=np.int64)
                                grown[:nrec] = rec[:nrec]
                                rec = grown
                            d_root = base * c
                            rec[nrec, 0] = v1
                            rec[nrec, 1] = v2
                            rec[nrec, 2] = v3
                            rec[nrec, 3] = d_root * d_root
                            rec[nrec, 4] = c
                            rec[nrec, 5] = 1 if fails else 0
                            nrec += 1
        n += 2
    return class_total, class_fail, rec[:nrec]


def class_index(sign2: int, sign3: int, even_slot: int, residues) -> int:
    """Flat index of a tuple class in the kernel tally arrays."""
    s = (0 if sign2 > 0 else 2) + (0 if sign3 > 0 else 1)
    ecode = ((residues[0] >> 1) << 4) | ((residues[1] >> 1) << 2) | (residues[2] >> 1)
    return ((s * 4 + even_slot) << 6) | ecode


def decode_class_index(cid: int) -> tuple[int, int, int, tuple[int, int, int]]:
    """Inverse of class_index: (sign2, sign3, even_slot, residues)."""
    ecode = cid & 63
    head = cid >> 6
    even_slot = head & 3
    s = head >> 2
    residues = (((ecode >> 4) & 3) * 2 + 1, ((ecode >> 2) & 3) * 2 + 1, (ecode & 3) * 2 + 1)
    return (1 if s < 2 else -1, 1 if (s & 1) == 0 else -1, even_slot, residues)
