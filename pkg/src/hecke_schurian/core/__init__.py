"""
Combinatorial core: partitions, abacus displays and Scopes classes.
"""

from .abacus import (
    AbacusDisplay,
    BlockId,
    block_partitions,
    core_and_weight,
    from_quotient,
    quotient,
)
from .partitions import (
    EMPTY,
    Node,
    Partition,
    conjugate,
    dominates,
    is_e_regular,
    parse_partition,
    partitions_of,
)
from .scopes import (
    ScopesClass,
    conjugate_class,
    is_rouquier,
    normalize_class,
    normalized_classes,
    phi,
    phi_inverse,
)

__all__ = [
    # Partitions
    "Partition",
    "Node",
    "EMPTY",
    "parse_partition",
    "partitions_of",
    "conjugate",
    "dominates",
    "is_e_regular",
    # Abacus
    "AbacusDisplay",
    "BlockId",
    "block_partitions",
    "core_and_weight",
    "quotient",
    "from_quotient",
    # Scopes
    "ScopesClass",
    "normalize_class",
    "normalized_classes",
    "conjugate_class",
    "is_rouquier",
    "phi",
    "phi_inverse",
]
