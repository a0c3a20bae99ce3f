"""
Certify every normalized Scopes class of a given (e, weight).

Classes are certified on a thread pool sharing one column cache; results
come back in class order regardless of scheduling.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from ..algebra.column_cache import ColumnCache, get_column_cache
from ..config import get_logger, get_settings, timed
from ..core.scopes import ScopesClass, normalized_classes
from ..utils.error_handling import QuantumCharacteristicError, RepresentationFiniteError
from .certificate import Certificate, Verdict, certify_block

logger = get_logger(__name__)


@dataclass
class SweepResult:
    e: int
    p: int
    weight: int
    certificates: list[Certificate] = field(default_factory=list)

    @property
    def verdicts(self) -> Counter[str]:
        return Counter(c.verdict.value for c in self.certificates)

    @property
    def routes(self) -> Counter[str]:
        return Counter(c.route for c in self.certificates)

    @property
    def inconclusive(self) -> list[Certificate]:
        return [c for c in self.certificates if c.verdict is Verdict.INCONCLUSIVE]

    def summary(self) -> dict[str, Any]:
        return {
            "e": self.e,
            "p": self.p,
            "weight": self.weight,
            "classes": len(self.certificates),
            "verdicts": dict(sorted(self.verdicts.items())),
            "routes": dict(sorted(self.routes.items())),
            "inconclusive": [c.scopes_class for c in self.inconclusive],
        }


def sweep(
    e: int,
    p: int,
    weight: int,
    max_workers: int | None = None,
    cache: ColumnCache | None = None,
    purist: bool = False,
) -> SweepResult:
    """
    Raises:
        QuantumCharacteristicError: if e < 3
        RepresentationFiniteError: if the weight is below 2
    """
    if e < 3:
        raise QuantumCharacteristicError(e)
    if weight < 2:
        raise RepresentationFiniteError(weight)
    if cache is None:
        cache = get_column_cache()
    if max_workers is None:
        max_workers = get_settings().max_workers

    classes = normalized_classes(e, weight)
    logger.info("Sweep started", e=e, p=p, weight=weight, classes=len(classes), workers=max_workers)

    def certify(cls: ScopesClass) -> Certificate:
        return certify_block(e, p, cls.block(), cache=cache, purist=purist)

    with timed("sweep", e=e, p=p, weight=weight, workers=max_workers):
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            certificates = list(executor.map(certify, classes))
        cache.flush()

    result = SweepResult(e=e, p=p, weight=weight, certificates=certificates)
    logger.info("Sweep finished", **result.summary())
    return result
