"""
Certificates of Schurian-infiniteness.

A certificate records the witness partitions chosen for a block, every
reduction applied to them, the characteristic-0 submatrix they produce and
the characteristic-p evidence pinning that submatrix down. It serializes to
JSON with a stable key order, and ``replay`` recomputes everything from the
recorded partitions with a cold column cache.
"""

from __future__ import annotations

import json
from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..algebra.column_cache import ColumnCache, get_column_cache
from ..algebra.laurent import LaurentPoly
from ..config import get_logger, get_settings, timed
from ..core.abacus import BlockId
from ..core.partitions import Partition
from ..core.scopes import conjugate_class, normalize_class
from ..utils.error_handling import (
    CertificateError,
    DeductionInconsistencyError,
    HeckeError,
    ReductionError,
)
from ..utils.file_utils import atomic_write_file
from .dispatch import dispatch
from .engine import Closure, close
from .reductions import ReducedRows, apply_removals, char0_matrix, normalize_rows
from .targets import TargetMatrix, TargetName, target_by_name

logger = get_logger(__name__)

SCHEMA_VERSION = 1
PURIST_REJECTION = "purist mode rejects assumptions: "

Matrix = list[list[LaurentPoly]]


class Verdict(str, Enum):
    SCHURIAN_INFINITE = "SCHURIAN_INFINITE"
    INCONCLUSIVE = "INCONCLUSIVE"


class BlockRecord(BaseModel):
    core: list[int] = Field(..., description="Parts of the e-core")
    weight: int = Field(..., description="Block weight")

    @classmethod
    def of(cls, block: BlockId) -> BlockRecord:
        return cls(core=list(block.core), weight=block.weight)


class Certificate(BaseModel):
    """Machine-checkable record of one certification attempt."""

    schema_version: int = Field(default=SCHEMA_VERSION, description="Certificate format version")
    e: int = Field(..., description="Quantum characteristic")
    p: int = Field(..., description="Characteristic of the field")
    block: BlockRecord
    scopes_class: str = Field(..., alias="class", description="Normalized Scopes class")
    route: str = Field(..., description="Dispatch route that chose the witness")
    witness: dict[str, Any] = Field(default_factory=dict)
    source_partitions: list[list[int]] = Field(
        default_factory=list, description="Witness partitions before any reduction"
    )
    reductions: list[dict[str, Any]] = Field(default_factory=list)
    partitions: list[list[int]] = Field(
        default_factory=list, description="Rows of the certified submatrix, in target order"
    )
    char0: list[list[dict[str, int]]] = Field(
        default_factory=list, description="Graded characteristic-0 entries"
    )
    target: TargetName | None = None
    evidence: dict[str, Any] = Field(default_factory=dict)
    assumptions: list[str] = Field(default_factory=list)
    verdict: Verdict = Verdict.INCONCLUSIVE
    diagnostic: str | None = None

    model_config = ConfigDict(populate_by_name=True)

    @property
    def block_id(self) -> BlockId:
        return BlockId(e=self.e, core=Partition(self.block.core), weight=self.block.weight)

    @property
    def rows(self) -> list[Partition]:
        return [Partition(lam) for lam in self.partitions]

    def char0_matrix(self) -> Matrix:
        return [[LaurentPoly.from_dict(c) for c in row] for row in self.char0]

    def to_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        """
        Raises:
            CertificateError: if ``text`` is not a certificate
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"certificate is not valid JSON: {exc}") from exc
        try:
            certificate = cls.model_validate(data)
        except ValidationError as exc:
            raise CertificateError(
                "certificate does not match the schema",
                details={"errors": exc.errors(include_url=False)},
            ) from exc
        if certificate.schema_version != SCHEMA_VERSION:
            raise CertificateError(
                f"unsupported schema version {certificate.schema_version}",
                details={"expected": SCHEMA_VERSION},
            )
        return certificate

    def save(self, path: Path) -> None:
        atomic_write_file(path, self.to_json() + "\n")

    @classmethod
    def load(cls, path: Path) -> Certificate:
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise CertificateError(f"cannot read certificate {path}: {exc}") from exc
        return cls.from_json(text)


def _matrix_json(matrix: Matrix) -> list[list[dict[str, int]]]:
    return [[c.to_dict() for c in row] for row in matrix]


def judge(
    closure: Closure, char0: Matrix, purist: bool = False
) -> tuple[Verdict, str | None]:
    """Verdict for a closure over rows whose char-0 submatrix is already a target."""
    if not closure.certified:
        if closure.deduction is None:
            return Verdict.INCONCLUSIVE, closure.diagnostic or "no characteristic-p evidence"
        open_entries = sum(
            not known.certified for row in closure.deduction.matrix() for known in row
        )
        return Verdict.INCONCLUSIVE, f"{open_entries} entries left open in characteristic {closure.deduction.p}"
    if purist and closure.assumptions:
        return Verdict.INCONCLUSIVE, PURIST_REJECTION + "; ".join(closure.assumptions)
    assert closure.deduction is not None
    for i, row in enumerate(closure.deduction.matrix()):
        for j, known in enumerate(row):
            expected = char0[i][j].at_one()
            if known.value != expected:
                return Verdict.INCONCLUSIVE, (
                    f"entry ({i + 1},{j + 1}) is {known.value} in characteristic "
                    f"{closure.deduction.p} but {expected} in characteristic 0"
                )
    return Verdict.SCHURIAN_INFINITE, None


def certify_block(
    e: int,
    p: int,
    block: BlockId,
    cache: ColumnCache | None = None,
    purist: bool = False,
    runner_reduction: bool | None = None,
) -> Certificate:
    """
    Try to certify ``block`` Schurian-infinite over a field of characteristic ``p``.

    Failures to find or close a witness give an INCONCLUSIVE certificate with a
    diagnostic rather than an exception.

    Raises:
        QuantumCharacteristicError: if e < 3
        RepresentationFiniteError: if the weight is below 2
    """
    if cache is None:
        cache = get_column_cache()
    if runner_reduction is None:
        runner_reduction = get_settings().enable_runner_reduction

    with timed("certify_block", block=str(block), p=p):
        return _certify(e, p, block, cache, purist, runner_reduction)


def _certify(
    e: int, p: int, block: BlockId, cache: ColumnCache, purist: bool, runner_reduction: bool
) -> Certificate:
    plan = dispatch(e, p, block, cache=cache)
    base: dict[str, Any] = {
        "e": e,
        "p": p,
        "block": BlockRecord.of(block),
        "scopes_class": str(normalize_class(block)),
        "route": plan.route,
        "witness": plan.witness(),
        "source_partitions": [list(lam) for lam in plan.source],
    }
    target = plan.target
    if target is None:
        logger.info("No witness for block", block=str(block), p=p, reason=plan.diagnostic)
        return Certificate(**base, diagnostic=plan.diagnostic)

    try:
        reduced = normalize_rows(apply_removals(ReducedRows(plan.source, e), plan.removals))
    except ReductionError as exc:
        return Certificate(**base, diagnostic=f"reduction failed: {exc.message}")
    char0, runner_step = char0_matrix(reduced.rows, e, cache, runner_reduction)
    steps = list(reduced.steps) + ([runner_step] if runner_step else [])

    order = target.match(char0)
    if order is None:
        logger.warning("Witness does not give its target", block=str(block), target=target.symbol)
        return Certificate(
            **base,
            reductions=[s.to_dict() for s in steps],
            partitions=[list(lam) for lam in reduced.rows],
            char0=_matrix_json(char0),
            target=target.name,
            diagnostic=f"characteristic-0 submatrix does not match {target.symbol}",
        )
    rows = [reduced.rows[k] for k in order]
    char0 = [[char0[i][j] for j in order] for i in order]

    try:
        closure = close(ReducedRows(rows, e, steps), p, cache, char0)
    except DeductionInconsistencyError as exc:
        logger.error("Bound propagation inconsistent", block=str(block), p=p, error=exc.message)
        closure = Closure(route="none", diagnostic=f"deduction inconsistency: {exc.message}")
    verdict, diagnostic = judge(closure, char0, purist)

    certificate = Certificate(
        **base,
        reductions=[s.to_dict() for s in steps + closure.steps],
        partitions=[list(lam) for lam in rows],
        char0=_matrix_json(char0),
        target=target.name,
        evidence=closure.evidence(),
        assumptions=closure.assumptions,
        verdict=verdict,
        diagnostic=diagnostic,
    )
    logger.info(
        "Certification finished",
        block=str(block),
        p=p,
        route=plan.route,
        closure=closure.route,
        verdict=verdict.value,
    )
    return certificate


def _provenance_problems(certificate: Certificate, block: BlockId) -> list[str]:
    """
    Check that the witness lies in the recorded block and that the recorded
    reductions turn it into the recorded rows.
    """
    problems: list[str] = []
    if str(normalize_class(block)) != certificate.scopes_class:
        problems.append(
            f"class {certificate.scopes_class} recorded, block has {normalize_class(block)}"
        )
    source = [Partition(lam) for lam in certificate.source_partitions]
    if not source:
        return [*problems, "certificate records no witness partitions"]
    home = block
    if certificate.witness.get("redirect") == "conjugate":
        home = conjugate_class(normalize_class(block)).block()
    outside = [str(lam) for lam in source if not home.contains(lam)]
    if outside:
        problems.append(f"witness partitions {outside} are not in {home}")
        return problems

    removals = list(certificate.witness.get("removals", []))
    try:
        rebuilt = normalize_rows(apply_removals(ReducedRows(source, certificate.e), removals))
    except HeckeError as exc:
        return [*problems, f"recorded reductions do not apply to the witness: {exc.message}"]
    recorded_steps = certificate.reductions[: len(rebuilt.steps)]
    if recorded_steps != [s.to_dict() for s in rebuilt.steps]:
        problems.append("recorded reductions differ from the recomputed ones")
    if sorted(rebuilt.rows) != sorted(certificate.rows):
        problems.append("recorded rows are not the reduced witness partitions")
    return problems


def replay(certificate: Certificate, cache: ColumnCache | None = None) -> list[str]:
    """
    Recompute a certificate from its recorded partitions; returns the
    discrepancies found (empty when the certificate checks out).

    Uses a fresh in-memory cache unless one is given.
    """
    cache = cache if cache is not None else ColumnCache(path=None, persist=False)
    problems: list[str] = []
    rows = certificate.rows
    if certificate.verdict is Verdict.INCONCLUSIVE and not rows:
        return problems
    if not rows:
        return ["certificate claims SCHURIAN_INFINITE but records no partitions"]

    try:
        block = certificate.block_id
    except HeckeError as exc:
        return [f"recorded block is not a block: {exc.message}"]
    problems.extend(_provenance_problems(certificate, block))
    if problems:
        return problems

    char0, _ = char0_matrix(rows, certificate.e, cache)
    if _matrix_json(char0) != certificate.char0:
        problems.append("characteristic-0 submatrix differs from the recorded one")
    target: TargetMatrix | None = (
        target_by_name(certificate.target) if certificate.target is not None else None
    )
    if target is not None and char0 != target.entries:
        problems.append(f"characteristic-0 submatrix is not {target.symbol} in recorded order")

    try:
        closure = close(ReducedRows(rows, certificate.e), certificate.p, cache, char0)
    except DeductionInconsistencyError as exc:
        problems.append(f"deduction inconsistency: {exc.message}")
        return problems
    evidence = closure.evidence()
    if evidence["matrix"] != certificate.evidence.get("matrix", []):
        problems.append("characteristic-p evidence differs from the recorded one")
    if closure.assumptions != certificate.assumptions:
        problems.append(
            f"assumptions {closure.assumptions} differ from recorded {certificate.assumptions}"
        )

    if target is None:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict, _ = judge(closure, char0)
        purist_rejected = (certificate.diagnostic or "").startswith(PURIST_REJECTION)
        if purist_rejected and closure.assumptions:
            verdict = Verdict.INCONCLUSIVE
    if verdict is not certificate.verdict:
        problems.append(f"recomputed verdict {verdict.value}, recorded {certificate.verdict.value}")

    logger.info(
        "Replay finished",
        block=str(block),
        p=certificate.p,
        ok=not problems,
        problems=len(problems),
    )
    return problems
