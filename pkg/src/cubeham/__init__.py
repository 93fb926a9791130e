"""Hamiltonian cycles of hypercubes through prescribed matchings, with faulty edges."""

from .basecases import (
    ExceptionCatalog,
    base_cycle_small,
    build_exception_catalog,
    exception_catalog,
    is_case_a,
    q3_matching_plus_edge,
    q3_path_through_matching,
    q4_base,
    q5_choose_dimension,
)
from .constructor import (
    ConstructionTrace,
    extend_matching,
    extend_matching_faulty,
    merge_cycle_path,
    merge_cycle_two_paths,
    merge_cycles,
)
from .cube import Automorphism, Edge, InstanceClass, SubcubeSplit, canonicalize, split
from .errors import (
    BudgetExceeded,
    CaseAInstance,
    CatalogMismatchError,
    CubehamError,
    ExceptionalCaseError,
    InternalInvariantError,
    MalformedInstanceError,
    PreconditionError,
    UnsupportedError,
)
from .structures import validate_cycle

__version__ = "0.1.0"

__all__ = [
    "Automorphism",
    "BudgetExceeded",
    "CaseAInstance",
    "CatalogMismatchError",
    "ConstructionTrace",
    "CubehamError",
    "Edge",
    "ExceptionCatalog",
    "ExceptionalCaseError",
    "InstanceClass",
    "InternalInvariantError",
    "MalformedInstanceError",
    "PreconditionError",
    "SubcubeSplit",
    "UnsupportedError",
    "base_cycle_small",
    "build_exception_catalog",
    "canonicalize",
    "exception_catalog",
    "extend_matching",
    "extend_matching_faulty",
    "is_case_a",
    "merge_cycle_path",
    "merge_cycle_two_paths",
    "merge_cycles",
    "q3_matching_plus_edge",
    "q3_path_through_matching",
    "q4_base",
    "q5_choose_dimension",
    "split",
    "validate_cycle",
]
