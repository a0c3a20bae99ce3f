"""
Jantzen sum formula coefficients.

Σ_{k>0} [S^λ_k] = Σ_σ J_{λσ} [S^σ] in the Grothendieck group, with J computed
combinatorially on a β-set of λ (Mathas, Section 5.2): unwrap a rim hook of
length h divisible by e, wrap a rim hook of the same length back elsewhere,
weight by ν_{e,p}(h) and the parity of the two leg lengths.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from ..config import get_logger
from ..core.abacus import BlockId, beta_numbers, block_partitions, core_and_weight, from_beta
from ..core.partitions import Partition, is_e_regular, strictly_dominates
from ..utils.error_handling import BlockMismatchError, JantzenError, NotERegularError

logger = get_logger(__name__)

UpperBound = Callable[[Partition], int | None]


def nu(h: int, e: int, p: int) -> int:
    """ν_{e,p}(h): 0 unless e | h, else 1 plus the p-adic valuation of h/e."""
    if h < 1:
        raise ValueError(f"hook length must be positive, got {h}")
    if h % e:
        return 0
    if p == 0:
        return 1
    m, valuation = h // e, 0
    while m % p == 0:
        m //= p
        valuation += 1
    return 1 + valuation


@dataclass(frozen=True)
class JantzenRow:
    """The row J_{λσ}, σ ⊳ λ, of the sum formula."""

    partition: Partition
    e: int
    p: int
    coeffs: Mapping[Partition, int] = field(default_factory=dict)

    def coefficient(self, sigma: Partition) -> int:
        return self.coeffs.get(sigma, 0)

    def support(self) -> list[Partition]:
        return sorted(self.coeffs, reverse=True)

    def to_dict(self) -> dict[str, Any]:
        return {
            "partition": str(self.partition),
            "e": self.e,
            "p": self.p,
            "coeffs": {str(s): self.coeffs[s] for s in self.support()},
        }


@lru_cache(maxsize=4096)
def _row_terms(lam: Partition, e: int, p: int) -> tuple[tuple[Partition, int], ...]:
    beads = frozenset(beta_numbers(lam, len(lam)))
    totals: dict[Partition, int] = {}
    for b in beads:
        for g in range(b - e, -1, -e):
            if g in beads:
                continue
            h = b - g
            weight = nu(h, e, p)
            if not weight:
                continue
            leg1 = sum(1 for x in beads if g < x < b)
            unwrapped = (beads - {b}) | {g}
            for c in unwrapped:
                if c + h in unwrapped:
                    continue
                leg2 = sum(1 for x in unwrapped if c < x < c + h)
                sigma = from_beta((unwrapped - {c}) | {c + h})
                if not strictly_dominates(sigma, lam):
                    continue
                sign = -1 if (leg1 + leg2) % 2 == 0 else 1
                totals[sigma] = totals.get(sigma, 0) + sign * weight
    return tuple(sorted(((s, j) for s, j in totals.items() if j), reverse=True))


def jantzen_coeffs(lam: Partition, e: int, p: int) -> JantzenRow:
    """
    Coefficients J_{λσ} of the Jantzen sum formula at quantum characteristic
    ``e`` over a field of characteristic ``p``.

    Only σ strictly dominating λ occur; all of them lie in the block of λ.
    """
    lam = Partition(lam)
    return JantzenRow(partition=lam, e=e, p=p, coeffs=dict(_row_terms(lam, e, p)))


@dataclass(frozen=True)
class JantzenZeroToken:
    """Proof that d^{e,p}_{λμ}(1) = 0 from the sum formula."""

    lam: Partition
    mu: Partition
    e: int
    p: int
    interval: tuple[Partition, ...]
    coeffs: Mapping[Partition, int]

    def to_dict(self) -> dict[str, Any]:
        return {
            "rule": "jantzen_zero",
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "e": self.e,
            "p": self.p,
            "interval": [str(s) for s in self.interval],
            "coeffs": {str(s): j for s, j in self.coeffs.items()},
            "anchor": "Mathas, Section 5.2",
        }


def dominance_interval(lam: Partition, mu: Partition, e: int) -> tuple[Partition, ...]:
    """σ in the block of λ with λ ◁ σ ⊴ μ, in decreasing lexicographic order."""
    core, weight = core_and_weight(lam, e)
    return tuple(
        sigma
        for sigma in block_partitions(BlockId(e=e, core=core, weight=weight))
        if strictly_dominates(sigma, lam) and (sigma == mu or strictly_dominates(mu, sigma))
    )


def jantzen_zero_deduction(
    lam: Partition,
    mu: Partition,
    e: int,
    p: int,
    upper: UpperBound | None = None,
) -> JantzenZeroToken | None:
    """
    Certify d^{e,p}_{λμ}(1) = 0 when Σ_σ |J_{λσ}| · d_{σμ}(1) vanishes over
    λ ◁ σ ⊴ μ.

    ``upper`` gives known upper bounds for d^{e,p}_{σμ}(1) (``None`` for
    unbounded); without it only d_{μμ} = 1 is assumed. Returning ``None``
    makes no claim.

    Raises:
        JantzenError: if λ = μ or λ strictly dominates μ
        BlockMismatchError: if λ and μ lie in different blocks
        NotERegularError: if μ is not e-regular
    """
    lam, mu = Partition(lam), Partition(mu)
    if lam == mu:
        raise JantzenError("lambda and mu must differ")
    if core_and_weight(lam, e) != core_and_weight(mu, e):
        raise BlockMismatchError(f"{lam} and {mu} lie in different blocks")
    if not is_e_regular(mu, e):
        raise NotERegularError(mu, e)
    if strictly_dominates(lam, mu):
        raise JantzenError(
            f"wrong dominance direction: {lam} dominates {mu}",
            details={"lambda": str(lam), "mu": str(mu)},
        )

    row = jantzen_coeffs(lam, e, p)
    interval = dominance_interval(lam, mu, e)
    used: dict[Partition, int] = {}
    for sigma in interval:
        j = row.coefficient(sigma)
        if not j:
            continue
        bound = 1 if sigma == mu else (upper(sigma) if upper else None)
        if bound is None or bound > 0:
            return None
        used[sigma] = j
    logger.debug(
        "Jantzen vanishing certified",
        lam=str(lam),
        mu=str(mu),
        e=e,
        p=p,
        interval=len(interval),
    )
    return JantzenZeroToken(lam=lam, mu=mu, e=e, p=p, interval=interval, coeffs=used)
