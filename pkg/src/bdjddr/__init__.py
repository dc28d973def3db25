"""Exact verification of a residue pairing between two families of mod-p
Galois cohomology classes attached to a Serre weight (r, J)."""

__version__ = "0.1.0"

from .gf import FFElem, FieldDesc, field_make
from .pairing import PairingReport, pairing_matrix, verify_range
from .weights import WeightError, WeightInstance, enumerate_instances

__all__ = [
    "FFElem",
    "FieldDesc",
    "PairingReport",
    "WeightError",
    "WeightInstance",
    "__version__",
    "enumerate_instances",
    "field_make",
    "pairing_matrix",
    "verify_range",
]
