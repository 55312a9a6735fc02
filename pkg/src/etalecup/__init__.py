"""Etale cohomology H^i(U, Z/n) for U = Spec Z minus S (and Spec O_K for
quadratic K), with the H^1 x H^1 -> H^2 cup product computed by idelic descent."""

__version__ = "0.1.0"

from .abelian import FiniteAbelianGroup
from .arith import factor_integer, jacobi_symbol, kronecker_symbol
from .cohomology import (
    Character,
    CohomologyProfile,
    TorsorClass,
    Z1B1Element,
    character_of,
    cohomology_punctured,
    cohomology_unpunctured,
    enumerate_torsors,
    induce_torsor,
    mu_n_totally_positive,
    torsor_character,
    torsor_for,
    z1_mod_b1,
)
from .cup import (
    DescentData,
    H2Class,
    HighClass,
    PairingTable,
    cup_class,
    cup_h1_h1,
    cup_high,
    cup_unpunctured,
    cup_value,
    pairing_table,
    restrict_to_real,
    solve_descent,
    verify_reciprocity,
)
from .errors import (
    DescentFailure,
    EtaleCupError,
    InvalidInput,
    NoRoot,
    NoSolution,
    NotInKernel,
    NotTorsion,
    Unsupported,
)
from .forms import class_group, fundamental_unit, narrow_class_group
from .ideles import IdeleRep, TorsionTriple, cs_mod_n, cs_torsion_n, idele_reduce, torsion_triple
from .local import REAL, LocalAlgebra, Place, hilbert_symbol, local_class, local_hilbert90
from .norms import norm_equation_solvable, solve_legendre, solve_norm_equation
from .quadratic import FieldElement, FieldIdeal, QuadraticField, build_field, ideal_hilbert90

__all__ = [
    "__version__",
    "FiniteAbelianGroup",
    "factor_integer",
    "jacobi_symbol",
    "kronecker_symbol",
    "Character",
    "CohomologyProfile",
    "TorsorClass",
    "Z1B1Element",
    "character_of",
    "cohomology_punctured",
    "cohomology_unpunctured",
    "enumerate_torsors",
    "induce_torsor",
    "mu_n_totally_positive",
    "torsor_character",
    "torsor_for",
    "z1_mod_b1",
    "DescentData",
    "H2Class",
    "HighClass",
    "PairingTable",
    "cup_class",
    "cup_h1_h1",
    "cup_high",
    "cup_unpunctured",
    "cup_value",
    "pairing_table",
    "restrict_to_real",
    "solve_descent",
    "verify_reciprocity",
    "DescentFailure",
    "EtaleCupError",
    "InvalidInput",
    "NoRoot",
    "NoSolution",
    "NotInKernel",
    "NotTorsion",
    "Unsupported",
    "class_group",
    "fundamental_unit",
    "narrow_class_group",
    "IdeleRep",
    "TorsionTriple",
    "cs_mod_n",
    "cs_torsion_n",
    "idele_reduce",
    "torsion_triple",
    "REAL",
    "LocalAlgebra",
    "Place",
    "hilbert_symbol",
    "local_class",
    "local_hilbert90",
    "norm_equation_solvable",
    "solve_legendre",
    "solve_norm_equation",
    "FieldElement",
    "FieldIdeal",
    "QuadraticField",
    "build_field",
    "ideal_hilbert90",
]
