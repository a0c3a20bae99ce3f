"""
Domain errors of the Hecke-algebra toolkit.

Every failure a command can report is a HeckeError carrying a message,
structured details and suggestions; the CLI prints those instead of a
traceback. Cache file writes retry transient OS errors with tenacity.
"""

import functools
from collections.abc import Callable
from typing import Any, TypeVar, cast

import structlog
from tenacity import (
    RetryCallState,
    retry,
    retry_if_exception_type,
    stop_after_attempt,
    wait_exponential,
)

logger = structlog.get_logger(__name__)

F = TypeVar("F", bound=Callable[..., Any])


class HeckeError(Exception):
    """Base of every error a command reports without a traceback."""

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
        user_message: str | None = None,
        suggestions: list[str] | None = None,
    ):
        super().__init__(message)
        self.message = message
        self.details = details or {}
        self.user_message = user_message or message
        self.suggestions = suggestions or []

        # Raised in search loops too, so only debug here; the CLI logs at error.
        logger.debug(
            "Hecke error raised",
            error_type=self.__class__.__name__,
            message=message,
            details=self.details,
        )


def _with_details(kwargs: dict[str, Any], **extra: Any) -> dict[str, Any]:
    details = dict(kwargs.get("details") or {})
    details.update(extra)
    kwargs["details"] = details
    return kwargs


class PartitionError(HeckeError):
    """Malformed partition or partition text."""

    def __init__(self, message: str, position: int | None = None, **kwargs: Any):
        if position is not None:
            message = f"{message} (at position {position})"
            _with_details(kwargs, position=position)
        if "suggestions" not in kwargs:
            kwargs["suggestions"] = [
                "Write parts as comma-separated integers, e.g. 4,2,2",
                "Exponent shorthand is accepted: 4,2^2",
                "Parts must be positive and weakly decreasing",
            ]
        super().__init__(message, **kwargs)


class IncomparableSizesError(PartitionError):
    """Dominance asked of partitions of different sizes."""

    def __init__(self, left: int, right: int, **kwargs: Any):
        _with_details(kwargs, left_size=left, right_size=right)
        kwargs.setdefault("suggestions", ["Compare partitions of the same size"])
        super().__init__(f"incomparable sizes: {left} and {right}", **kwargs)


class NotERegularError(PartitionError):
    """A column label was required but the partition is not e-regular."""

    def __init__(self, partition: Any, e: int, **kwargs: Any):
        _with_details(kwargs, partition=str(partition), e=e)
        kwargs.setdefault(
            "suggestions", [f"Columns need partitions with no part repeated {e} times"]
        )
        super().__init__(f"{partition} is not {e}-regular", **kwargs)


class AbacusError(HeckeError):
    """Invalid bead count, non-core input or an impossible runner move."""

    def __init__(self, message: str, **kwargs: Any):
        kwargs.setdefault(
            "suggestions",
            [
                "Use a bead count at least the number of parts",
                "Pass an e-core where a core is expected",
            ],
        )
        super().__init__(message, **kwargs)


class ScopesConditionError(AbacusError):
    """Runner swap requested with a bead-count gap smaller than the weight."""

    def __init__(self, gap: int, weight: int, **kwargs: Any):
        _with_details(kwargs, gap=gap, weight=weight)
        kwargs.setdefault(
            "suggestions", ["Choose adjacent runners whose bead counts differ by >= w"]
        )
        super().__init__(
            f"Scopes condition violated: gap {gap} < weight {weight}", **kwargs
        )


class ConventionError(HeckeError):
    """The Fock-space action produced data contradicting a structural check."""

    def __init__(self, message: str, **kwargs: Any):
        kwargs.setdefault(
            "suggestions",
            [
                "Run with llt_convention=above",
                "Clear the column cache with `hecke-schurian cache clear`",
            ],
        )
        super().__init__(message, **kwargs)


class BlockMismatchError(HeckeError):
    """Partitions that were required to share a block do not."""

    def __init__(self, message: str, **kwargs: Any):
        kwargs.setdefault("suggestions", ["Check core and weight of every row"])
        super().__init__(message, **kwargs)


class JantzenError(HeckeError):
    """Invalid input to a Jantzen deduction."""

    def __init__(self, message: str, **kwargs: Any):
        kwargs.setdefault("suggestions", ["Pass lambda dominated by mu"])
        super().__init__(message, **kwargs)


class DeductionInconsistencyError(HeckeError):
    """Lower bound exceeded upper bound: an engine rule is unsound."""

    def __init__(self, message: str, **kwargs: Any):
        kwargs.setdefault(
            "suggestions", ["Report the provenance chain attached to this error"]
        )
        super().__init__(f"deduction inconsistency: {message}", **kwargs)


class RestrictionError(HeckeError):
    """Node-count preconditions of an i-restriction bound failed."""

    def __init__(self, message: str, **kwargs: Any):
        kwargs.setdefault("suggestions", ["Try another residue i or node count k"])
        super().__init__(message, **kwargs)


class NotRouquierError(HeckeError):
    """Rouquier-only constraint applied to a non-Rouquier block."""

    def __init__(self, message: str, **kwargs: Any):
        kwargs.setdefault(
            "suggestions", ["Adjacent runner gaps must be at least w - 1"]
        )
        super().__init__(message, **kwargs)


class ReductionError(HeckeError):
    """Row or column removal preconditions failed."""

    def __init__(self, message: str, **kwargs: Any):
        super().__init__(message, **kwargs)


class RepresentationFiniteError(HeckeError):
    """Weight 0 and 1 blocks have finite representation type."""

    def __init__(self, weight: int, **kwargs: Any):
        _with_details(kwargs, weight=weight)
        kwargs.setdefault("suggestions", ["Certificates exist for weight >= 2 only"])
        super().__init__(
            f"representation-finite block: weight {weight} < 2", **kwargs
        )


class QuantumCharacteristicError(HeckeError):
    """The quantum characteristic e is outside the supported range."""

    def __init__(self, e: int, **kwargs: Any):
        _with_details(kwargs, e=e)
        if e == 2:
            message = "quantum characteristic 2 out of scope"
        else:
            message = f"quantum characteristic must be at least 3, got {e}"
        kwargs.setdefault("suggestions", ["Use --e 3 or larger"])
        super().__init__(message, **kwargs)


class CertificateError(HeckeError):
    """A certificate file could not be read or does not describe a block."""

    def __init__(self, message: str, **kwargs: Any):
        kwargs.setdefault(
            "suggestions", ["Regenerate it with `hecke-schurian certify --json`"]
        )
        super().__init__(message, **kwargs)


class CacheError(HeckeError):
    """Column cache could not be read, written or locked."""

    def __init__(self, message: str, **kwargs: Any):
        kwargs.setdefault(
            "suggestions",
            [
                "Check permissions on the cache directory",
                "Run `hecke-schurian cache verify` or `cache clear`",
            ],
        )
        super().__init__(message, **kwargs)


class CacheLockedError(CacheError):
    """Another process holds the advisory cache lock."""


def _log_retry(state: RetryCallState) -> None:
    error = state.outcome.exception() if state.outcome else None
    logger.warning(
        "Retrying cache file operation",
        function=getattr(state.fn, "__name__", None),
        attempt=state.attempt_number,
        error=str(error),
    )


def retry_with_backoff(
    max_attempts: int = 3,
    min_wait: float = 0.1,
    max_wait: float = 2.0,
    retry_exceptions: tuple[type[BaseException], ...] = (OSError,),
) -> Callable[[F], F]:
    """Retry a cache file operation on transient errors, then re-raise the last one."""
    return cast(
        Callable[[F], F],
        retry(
            stop=stop_after_attempt(max_attempts),
            wait=wait_exponential(min=min_wait, max=max_wait),
            retry=retry_if_exception_type(retry_exceptions),
            before_sleep=_log_retry,
            reraise=True,
        ),
    )


def handle_errors(
    error_type: type[HeckeError],
    user_message: str | None = None,
    suggestions: list[str] | None = None,
) -> Callable[[F], F]:
    """
    Re-raise ValueError and OSError from a command helper as ``error_type``.

    HeckeErrors pass through untouched.
    """

    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            try:
                return func(*args, **kwargs)
            except HeckeError:
                raise
            except (ValueError, OSError) as e:
                raise error_type(
                    f"{func.__name__}: {e}",
                    details={
                        "function": func.__name__,
                        "original_error": str(e),
                        "original_error_type": type(e).__name__,
                    },
                    user_message=user_message,
                    suggestions=suggestions,
                ) from e

        return cast(F, wrapper)

    return decorator


def format_error_for_user(error: HeckeError) -> str:
    lines = [f"Error: {error.user_message}"]
    if error.suggestions:
        lines += ["", "Suggestions:"]
        lines += [f"  {i}. {s}" for i, s in enumerate(error.suggestions, 1)]
    return "\n".join(lines) + "\n"
