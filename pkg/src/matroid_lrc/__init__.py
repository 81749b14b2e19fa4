"""Matroid and polymatroid tools for locally repairable codes."""

from .codes import GeneralCode, LinearCode, Polymatroid, polymatroid_from_code, polymatroid_params
from .construct import RepairSetSystem, construct_matroid, gammoid_graph, random_lrc, represent, tamo_barg
from .errors import LRCError, ParseError, SearchFailure, ValidationError
from .gf import FieldSpec, field_new, gf
from .linalg import Matrix
from .lrc import (
    analyze_locality,
    bound_prakash,
    check_structure_theorem,
    classify_optimality,
    find_repair_sets,
    verify_hierarchy,
    verify_locality,
)
from .matroid import Matroid, check_axioms, from_gammoid, from_graph, from_matrix
from .zlattice import CyclicFlatLattice, check_z_axioms, cyclic_flats, matroid_from_z, params_via_z

__version__ = "0.1.0"
