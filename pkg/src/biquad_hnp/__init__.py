"""Biquadratic fields of bounded discriminant and the Hasse norm principle.

Library surface:

* :mod:`biquad_hnp.arith` - sieves, Jacobi/Kronecker symbols
* :mod:`biquad_hnp.fields` - field triples, subfield discriminants
* :mod:`biquad_hnp.hnp` - the two norm-principle classifiers
* :mod:`biquad_hnp.enumeration` - bounded-discriminant enumeration
* :mod:`biquad_hnp.asymptotics` - Euler products, main terms, exact identities
* :mod:`biquad_hnp.cli` - the ``biquad-hnp`` command
"""

from .arith import FactorSieve, build_sieve, jacobi, kronecker, reciprocity_exponent
from .enumeration import ClassLabel, CountReport, count_by_class, enumerate_fields
from .fields import (
    FieldTriple,
    InvalidFieldError,
    SubfieldData,
    canonical_key,
    class_label,
    from_generators,
    quadratic_discriminant,
    subfield_data,
)
from .hnp import HnpStatus, classify_by_congruences, classify_by_splitting

__version__ = "0.1.0"

__all__ = [
    "FactorSieve",
    "FieldTriple",
    "InvalidFieldError",
    "SubfieldData",
    "HnpStatus",
    "ClassLabel",
    "CountReport",
    "build_sieve",
    "jacobi",
    "kronecker",
    "reciprocity_exponent",
    "quadratic_discriminant",
    "from_generators",
    "subfield_data",
    "canonical_key",
    "class_label",
    "classify_by_splitting",
    "classify_by_congruences",
    "enumerate_fields",
    "count_by_class",
    "__version__",
]
