"""Stabilizer codes over prime fields: capacity bounds, error exponents,
and concatenated-decoder simulation for Pauli channels."""

__version__ = "0.1.0"

from ._util import ConvergenceError, GuardError, QcapError, ValidationError
from .channels import PauliChannel, depolarizing, product_prob, shannon_entropy
from .codes import (
    ConcatenatedCode,
    StabilizerCode,
    bar_map,
    catalog,
    catalog_names,
    concatenate,
    direct_sum,
    read_code_file,
    write_code_file,
)
from .exponent import exponent, exponent_grid_oracle
from .gf import FieldElement, FieldVector, enumerate_vectors, symplectic_form, vec_add
from .qoracle import coherent_info_direct, oracle_report
from .simconcat import SimConfig, SimReport, fidelity_bound_exact, simulate
from .spectra import BoundReport, ProbabilityArray, bound_sweep, coherent_bound, probability_array
from .symplectic import (
    HyperbolicBasis,
    Subspace,
    chi_coordinates,
    hyperbolic_complete,
    is_self_orthogonal,
    perp,
    sample_self_orthogonal,
)

__all__ = [
    "ConvergenceError",
    "GuardError",
    "QcapError",
    "ValidationError",
    "PauliChannel",
    "depolarizing",
    "product_prob",
    "shannon_entropy",
    "ConcatenatedCode",
    "StabilizerCode",
    "bar_map",
    "catalog",
    "catalog_names",
    "concatenate",
    "direct_sum",
    "read_code_file",
    "write_code_file",
    "FieldElement",
    "FieldVector",
    "enumerate_vectors",
    "symplectic_form",
    "vec_add",
    "exponent",
    "exponent_grid_oracle",
    "coherent_info_direct",
    "oracle_report",
    "SimConfig",
    "SimReport",
    "fidelity_bound_exact",
    "simulate",
    "BoundReport",
    "ProbabilityArray",
    "bound_sweep",
    "coherent_bound",
    "probability_array",
    "HyperbolicBasis",
    "Subspace",
    "chi_coordinates",
    "hyperbolic_complete",
    "is_self_orthogonal",
    "perp",
    "sample_self_orthogonal",
    "__version__",
]
