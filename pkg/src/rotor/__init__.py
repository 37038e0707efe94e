"""Exact groundstates of the rotor loop model on link-pattern spaces."""

from .enumerations import (
    count_asm,
    count_htasm,
    count_nccp,
    count_vsasm,
    count_vsasm3,
    predicted_min,
    predicted_sum,
    theta,
)
from .hamiltonian import BoundaryCondition, build_hamiltonian, check_tl_relations
from .harness import RunReport, emit, run_groundstate, verify_conjecture
from .kernel import groundstate, nullspace
from .sparse import SparseIntMatrix
from .vertexweights import weights

__version__ = "0.1.0"

__all__ = [
    "BoundaryCondition",
    "RunReport",
    "SparseIntMatrix",
    "build_hamiltonian",
    "check_tl_relations",
    "count_asm",
    "count_htasm",
    "count_nccp",
    "count_vsasm",
    "count_vsasm3",
    "emit",
    "groundstate",
    "nullspace",
    "predicted_min",
    "predicted_sum",
    "run_groundstate",
    "theta",
    "verify_conjecture",
    "weights",
]
