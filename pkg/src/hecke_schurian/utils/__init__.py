"""
Utility functions and helpers.

- Error hierarchy and the retry decorator
- Atomic file writes and advisory locking for the column cache
"""

from .error_handling import (
    AbacusError,
    BlockMismatchError,
    CacheError,
    CacheLockedError,
    CertificateError,
    ConventionError,
    DeductionInconsistencyError,
    HeckeError,
    IncomparableSizesError,
    JantzenError,
    NotERegularError,
    NotRouquierError,
    PartitionError,
    QuantumCharacteristicError,
    ReductionError,
    RepresentationFiniteError,
    RestrictionError,
    ScopesConditionError,
    format_error_for_user,
    handle_errors,
    retry_with_backoff,
)
from .file_utils import (
    advisory_lock,
    atomic_write_file,
    file_size,
    quarantine_file,
    remove_file,
)

__all__ = [
    # Base exceptions
    "HeckeError",
    "PartitionError",
    "IncomparableSizesError",
    "NotERegularError",
    "AbacusError",
    "ScopesConditionError",
    "ConventionError",
    "BlockMismatchError",
    "JantzenError",
    "DeductionInconsistencyError",
    "RestrictionError",
    "NotRouquierError",
    "ReductionError",
    "RepresentationFiniteError",
    "QuantumCharacteristicError",
    "CacheError",
    "CacheLockedError",
    "CertificateError",
    # Retry decorators
    "retry_with_backoff",
    # Error handling helpers
    "handle_errors",
    "format_error_for_user",
    # File utilities
    "atomic_write_file",
    "advisory_lock",
    "quarantine_file",
    "file_size",
    "remove_file",
]
