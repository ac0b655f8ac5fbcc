"""Decoders and complexity analysis for interleaved linear codes over
prime fields.

Subpackage layout:

- ``gfq``        prime-field arithmetic, Gaussian binomials
- ``matq``       immutable matrices over F_q and exact linear algebra
- ``codes``      linear codes, parity checks, GV asymptotics
- ``interleave`` planted instances, the syndrome-decoding reduction, JSON I/O
- ``decoders``   Prange/Stern/CF/interleaved-Prange and a brute-force oracle
- ``analysis``   closed-form success probabilities, costs, exponent curves
- ``cli``        command-line driver (``ildec``)
"""

from .gfq import PrimeField, gauss_binomial, lin_dep_prob
from .matq import ColumnSet, MatFq
from .codes import LinearCode, parity_check, random_code, syndrome
from .interleave import (
    IdInstance,
    PlantedInstance,
    SyndromeInstance,
    from_sd_instance,
    instance_from_json,
    instance_to_json,
    plant_instance,
    support_to_error,
    verify_solution,
)
from .decoders import (
    DecodeOutput,
    SternParams,
    bruteforce_decoder,
    cf_decode,
    interleaved_prange,
    random_prange,
    random_stern,
)

__all__ = [
    "PrimeField",
    "gauss_binomial",
    "lin_dep_prob",
    "ColumnSet",
    "MatFq",
    "LinearCode",
    "parity_check",
    "random_code",
    "syndrome",
    "IdInstance",
    "PlantedInstance",
    "SyndromeInstance",
    "from_sd_instance",
    "instance_from_json",
    "instance_to_json",
    "plant_instance",
    "support_to_error",
    "verify_solution",
    "DecodeOutput",
    "SternParams",
    "bruteforce_decoder",
    "cf_decode",
    "interleaved_prange",
    "random_prange",
    "random_stern",
]

__version__ = "0.1.0"
