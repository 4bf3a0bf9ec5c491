"""Biquadratic fields Q(sqrt(a), sqrt(b)) as coprime squarefree triples.

A field is stored as (m, a1, b1) with m = gcd(|a|, |b|) > 0 and
a = m*a1, b = m*b1.  Its three quadratic subfields have squarefree
kernels m*a1, m*b1 and a1*b1, and the field discriminant is the product
of the three fundamental discriminants.  Distinct triples can name the
same field (signs can migrate between components); canonical_key
collapses them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import is_squarefree


class InvalidFieldError(ValueError):
    """Raised for inputs that do not define a genuine biquadratic field."""


@dataclass(frozen=True)
class FieldTriple:
    """Canonical generators (m, a1, b1); see module docstring.

    Construction checks coprimality, signs and nondegeneracy, which are
    cheap.  Squarefreeness of the components is the caller's contract
    (``from_generators`` and ``validate`` enforce it; the enumeration
    produces squarefree components by construction).
    """

    m: int
    a1: int
    b1: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InvalidFieldError(f"m must be positive, got {self.m}")
        if self.a1 == 0 or self.b1 == 0:
            raise InvalidFieldError("a1 and b1 must be nonzero")
        if (
            math.gcd(self.m, self.a1) != 1
            or math.gcd(self.m, self.b1) != 1
            or math.gcd(self.a1, self.b1) != 1
        ):
            raise InvalidFieldError(f"components of {self} are not pairwise coprime")
        # degenerate exactly when two subfield kernels collide or equal 1
        if self.a1 == self.b1 and abs(self.a1) == 1:
            raise InvalidFieldError(f"{self} has a repeated quadratic subfield")
        if self.m == 1 and 1 in (self.a1, self.b1):
            raise InvalidFieldError(f"{self} contains the kernel 1 (quadratic field)")

    @property
    def kernels(self) -> tuple[int, int, int]:
        """Squarefree kernels of the three quadratic subfields."""
        return (self.m * self.a1, self.m * self.b1, self.a1 * self.b1)

    def validate(self) -> None:
        """Full invariant check including squarefreeness of each component."""
        for part in (self.m, self.a1, self.b1):
            if not is_squarefree(part):
                raise InvalidFieldError(f"component {part} of {self} is not squarefree")


@dataclass(frozen=True)
class SubfieldData:
    """The three quadratic subfields and the assembled field discriminant."""

    kernels: tuple[int, int, int]
    fundamental_discs: tuple[int, int, int]
    c: int  # 1, 4 or 8: the power-of-two scale in sqrt(disc)
    field_disc: int


def quadratic_discriminant(d: int) -> int:
    """Fundamental discriminant of Q(sqrt(d)): d if d = 1 mod 4, else 4d."""
    if d in (0, 1):
        raise InvalidFieldError(f"{d} does not define a quadratic field")
    if not is_squarefree(d):
        raise InvalidFieldError(f"{d} is not squarefree")
    return d if d % 4 == 1 else 4 * d


def _fundamental_disc_unchecked(d: int) -> int:
    return d if d % 4 == 1 else 4 * d


def from_generators(a: int, b: int) -> FieldTriple:
    """Triple for Q(sqrt(a), sqrt(b)) from squarefree generators a, b.

    Rejects quadratic degenerations: a or b equal to 1, or a == b (for
    squarefree inputs a*b is a perfect square exactly when a == b).
    """
    for g in (a, b):
        if g == 1:
            raise InvalidFieldError("generator 1 yields a quadratic, not biquadratic, field")
        if not is_squarefree(g):
            raise InvalidFieldError(f"generator {g} is not squarefree")
    if a == b:
        raise InvalidFieldError(f"generators {a}, {b} span a quadratic field")
    m = math.gcd(abs(a), abs(b))
    return FieldTriple(m=m, a1=a // m, b1=b // m)


def subfield_data(t: FieldTriple) -> SubfieldData:
    """Kernels, fundamental discriminants, c and the field discriminant."""
    kernels = t.kernels
    discs = tuple(_fundamental_disc_unchecked(k) for k in kernels)
    ones = sum(1 for k in kernels if k % 4 == 1)
    if ones == 3:
        c = 1
    elif ones == 1:
        c = 4
    elif ones == 0:
        c = 8
    else:
        # two kernels = 1 mod 4 force the third one too
        raise InvalidFieldError(f"kernel parity law violated for {t}")
    field_disc = abs(discs[0] * discs[1] * discs[2])
    expected = (c * t.m * abs(t.a1) * abs(t.b1)) ** 2
    if field_disc != expected:
        raise InvalidFieldError(f"discriminant identity violated for {t}")
    return SubfieldData(kernels=kernels, fundamental_discs=discs, c=c, field_disc=field_disc)


def canonical_key(t: FieldTriple) -> tuple[int, int, int]:
    """Sorted fundamental discriminants; equal keys mean equal fields."""
    data = subfield_data(t)
    d = sorted(data.fundamental_discs)
    return (d[0], d[1], d[2])


def class_label(t: FieldTriple):
    """Sign / factor-of-2 / odd-residue class of a triple.

    At most one component is even (pairwise coprimality), so the factor
    of 2 sits in slot 0 (none), 1, 2 or 3.  Residues are the positive odd
    parts of the components mod 8.
    """
    from .enumeration import ClassLabel

    parts = (t.m, t.a1, t.b1)
    even_slot = 0
    odd = []
    for i, v in enumerate(parts, start=1):
        u = abs(v)
        if u % 2 == 0:
            even_slot = i
            u //= 2
        odd.append(u % 8)
    return ClassLabel(
        sign2=1 if t.a1 > 0 else -1,
        sign3=1 if t.b1 > 0 else -1,
        even_slot=even_slot,
        residues=(odd[0], odd[1], odd[2]),
    )
