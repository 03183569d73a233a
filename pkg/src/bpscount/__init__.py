"""Exact-arithmetic transforms and integrality checks for genus-0 BPS state counts.

The package converts between local and relative BPS state counts of
del Pezzo geometries through their Gromov-Witten generating functions,
realizes the conversion as a divisor-indexed triangular matrix built
two independent ways, verifies entry integrality through binomial
congruences, and reindexes the matrix entries as loop-quiver
Donaldson-Thomas invariants.  All arithmetic is exact; floating point
never appears.
"""

__version__ = "0.1.0"

from .arith import (
    Factorization,
    binomial,
    divisors,
    factorize,
    is_prime,
    mobius,
    omega,
    prime_power_split,
    squarefree_cofactor_divisors,
)
from .congruence import (
    CheckKind,
    CongruenceCase,
    CongruenceReport,
    check_mod_four_descent,
    check_prime_power_descent,
    entry_integrality_via_congruence,
    mod_four_grid,
    pair_sum,
    prime_power_grid,
    regroup_pairs,
    verify_divisibility,
)
from .dtlink import DTTable, DTValue, dt_table, dt_value, table_to_tsv
from .matrices import (
    DimensionError,
    DivisorMatrix,
    MatrixKind,
    SingularMatrixError,
    TransformMethod,
    apply,
    build_matrix,
    build_transform_matrix,
    determinant,
    identity,
    matmul,
    to_tsv,
    transform_entry,
    triangular_inverse,
)
from .series import (
    BridgeDirection,
    InvariantSequence,
    KindMismatchError,
    SequenceKind,
    bridge_gw,
    degree_sign_factor,
    local_bps_to_gw,
    local_gw_to_bps,
    pipeline_local_bps_to_relative_bps,
    pipeline_relative_bps_to_local_bps,
    relative_bps_to_gw,
    relative_gw_to_bps,
    relative_multiple_cover,
)

__all__ = [
    "__version__",
    "Factorization",
    "factorize",
    "is_prime",
    "omega",
    "mobius",
    "divisors",
    "squarefree_cofactor_divisors",
    "binomial",
    "prime_power_split",
    "SequenceKind",
    "BridgeDirection",
    "KindMismatchError",
    "InvariantSequence",
    "local_bps_to_gw",
    "local_gw_to_bps",
    "relative_multiple_cover",
    "relative_bps_to_gw",
    "relative_gw_to_bps",
    "degree_sign_factor",
    "bridge_gw",
    "pipeline_local_bps_to_relative_bps",
    "pipeline_relative_bps_to_local_bps",
    "MatrixKind",
    "TransformMethod",
    "DimensionError",
    "SingularMatrixError",
    "DivisorMatrix",
    "identity",
    "build_matrix",
    "transform_entry",
    "build_transform_matrix",
    "matmul",
    "determinant",
    "triangular_inverse",
    "apply",
    "to_tsv",
    "CheckKind",
    "CongruenceCase",
    "CongruenceReport",
    "check_prime_power_descent",
    "check_mod_four_descent",
    "regroup_pairs",
    "pair_sum",
    "verify_divisibility",
    "entry_integrality_via_congruence",
    "prime_power_grid",
    "mod_four_grid",
    "DTValue",
    "DTTable",
    "dt_value",
    "dt_table",
    "table_to_tsv",
]
