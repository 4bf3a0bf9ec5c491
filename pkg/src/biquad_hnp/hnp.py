"""Hasse norm principle classification by two independent routes.

For a biquadratic field the principle fails exactly when every
decomposition group is cyclic, i.e. when every ramified prime splits in
at least one of the three quadratic subfields.  ``classify_by_splitting``
tests that directly and is the ground truth.  ``classify_by_congruences``
is the production classifier: a mod-4/mod-8 case analysis plus residue
symbols over the primes of each component, needing no factorization
beyond the components themselves.  The two must agree everywhere; the
test suite checks this exhaustively for |m*a1*b1| <= 2000.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import FactorSieve, jacobi, kronecker, prime_factors
from .fields import FieldTriple, subfield_data

FAILS = "fails"
HOLDS = "holds"


@dataclass(frozen=True)
class HnpStatus:
    """Verdict plus, when the principle holds, one obstructing prime.

    The witness is a prime dividing the field discriminant whose
    decomposition group is the full Galois group.
    """

    verdict: str
    witness: int | None = None

    @property
    def fails(self) -> bool:
        return self.verdict == FAILS


def classify_by_splitting(t: FieldTriple, sieve: FactorSieve | None = None) -> HnpStatus:
    """Ground-truth classifier: check splitting at every ramified prime.

    Fails iff for every prime p | disc some subfield discriminant d has
    kronecker(d, p) = +1.  The smallest prime with no split subfield is
    returned as the witness.
    """
    data = subfield_data(t)
    primes = set(prime_factors(t.m * t.a1 * t.b1, sieve))
    if data.c > 1:
        primes.add(2)
    for p in sorted(primes):
        if not any(kronecker(d, p) == 1 for d in data.fundamental_discs):
            return HnpStatus(HOLDS, witness=p)
    return HnpStatus(FAILS)


def classify_by_congruences(t: FieldTriple, sieve: FactorSieve | None = None) -> HnpStatus:
    """Congruence/symbol classifier, the fast path used in enumeration.

    Case analysis on the residues of (m, a1, b1) mod 4:

    * all three equal: fails iff every prime of each component sees the
      product of the other two components as a quadratic residue;
    * exactly two equal: additionally the agreeing pair must be congruent
      mod 8 (equivalently, 2 must split in the one unramified subfield);
    * pairwise distinct: 2 is totally ramified and the principle holds.

    Conditions at p = 2 (an even component) use the Kronecker symbol.
    """
    parts = (t.m, t.a1, t.b1)
    r = tuple(v % 4 for v in parts)
    if r[0] == r[1] == r[2]:
        pass
    elif r[0] != r[1] and r[0] != r[2] and r[1] != r[2]:
        return HnpStatus(HOLDS, witness=2)
    else:
        if r[0] == r[1]:
            pair = (parts[0], parts[1])
        elif r[0] == r[2]:
            pair = (parts[0], parts[2])
        else:
            pair = (parts[1], parts[2])
        if pair[0] % 8 != pair[1] % 8:
            return HnpStatus(HOLDS, witness=2)
    others = (t.a1 * t.b1, t.m * t.b1, t.m * t.a1)
    for comp, other in zip(parts, others):
        for p in prime_factors(comp, sieve):
            sym = kronecker(other, 2) if p == 2 else jacobi(other % p, p)
            if sym != 1:
                return HnpStatus(HOLDS, witness=p)
    return HnpStatus(FAILS)
