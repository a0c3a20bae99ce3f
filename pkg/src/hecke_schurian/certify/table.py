"""
Witness constructions as data.

Each construction lists quotient templates for the partitions it uses, the
target matrix they are expected to produce and where the construction comes
from. Templates are "|"-separated quotient components with the padding part
written symbolically ("w-2,1|1" is ((w−2,1),(1),∅,…)); trailing empty
components are omitted.

The weight ≥ 4 rows are selected by the differences between the lowest-bead
positions p_{e−1} > p_{e−2} > … of the core:

    α  p_i − p_j < e        β  e < p_i − p_j < 2e
    γ  2e < p_i − p_j       δ  e < p_i − p_j
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from ..core.abacus import Quotient, from_quotient, runner_positions
from ..core.partitions import EMPTY, Partition, parse_partition
from ..utils.error_handling import AbacusError
from .targets import DAGGER, DDAGGER, SPADE, TargetMatrix

_PADDING = re.compile(r"w-(\d+)")


class Band(str, Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    DELTA = "delta"


def band_holds(band: Band, difference: int, e: int) -> bool:
    if band is Band.ALPHA:
        return difference < e
    if band is Band.BETA:
        return e < difference < 2 * e
    if band is Band.GAMMA:
        return difference > 2 * e
    return difference > e


@dataclass(frozen=True)
class DiffProfile:
    """Differences p_{e−1} − p_{e−2}, p_{e−2} − p_{e−3}, p_{e−1} − p_{e−3}, p_{e−1} − p_{e−4}."""

    e: int
    d1: int
    d2: int
    d13: int
    d14: int | None

    @classmethod
    def of_core(cls, core: Partition, e: int) -> DiffProfile:
        p = runner_positions(core, e)
        return cls(
            e=e,
            d1=p[-1] - p[-2],
            d2=p[-2] - p[-3],
            d13=p[-1] - p[-3],
            d14=p[-1] - p[-4] if e >= 4 else None,
        )

    def to_dict(self) -> dict[str, int | None]:
        return {"d1": self.d1, "d2": self.d2, "d13": self.d13, "d14": self.d14}


def instantiate(template: str, weight: int, e: int) -> Quotient:
    """Quotient of a template at the given weight."""

    def pad(match: re.Match[str]) -> str:
        value = weight - int(match.group(1))
        if value <= 0:
            raise AbacusError(f"template {template!r} needs a larger weight than {weight}")
        return str(value)

    chunks = template.split("|")
    if len(chunks) > e:
        raise AbacusError(f"template {template!r} has more than {e} components")
    components = [
        parse_partition(_PADDING.sub(pad, chunk)) if chunk.strip() else EMPTY
        for chunk in chunks
    ]
    components.extend([EMPTY] * (e - len(components)))
    return tuple(components)


@dataclass(frozen=True)
class Construction:
    """Quotient templates that should exhibit ``target``."""

    name: str
    templates: tuple[str, ...]
    target: TargetMatrix
    citation: str
    removals: tuple[str, ...] = ()

    def quotients(self, weight: int, e: int) -> list[Quotient]:
        return [instantiate(t, weight, e) for t in self.templates]

    def partitions(self, core: Partition, weight: int, e: int) -> list[Partition]:
        return [from_quotient(core, q, e) for q in self.quotients(weight, e)]


@dataclass(frozen=True)
class TableRow(Construction):
    """A weight ≥ 4 construction guarded by conditions on the core."""

    number: int = 0
    d1: Band | None = None
    d2: Band | None = None
    d13: Band | None = None
    d14: Band | None = None
    characteristic: str = "any"
    min_e: int = 3

    def applies(self, profile: DiffProfile, p: int) -> bool:
        e = profile.e
        if e < self.min_e:
            return False
        if self.characteristic == "odd" and p == 2:
            return False
        if self.characteristic == "two" and p != 2:
            return False
        checks = ((self.d1, profile.d1), (self.d2, profile.d2), (self.d13, profile.d13))
        if any(band is not None and not band_holds(band, d, e) for band, d in checks):
            return False
        if self.d14 is not None:
            if profile.d14 is None:
                # no fourth runner: only the δ side of the last column survives
                return self.d14 is Band.DELTA
            return band_holds(self.d14, profile.d14, e)
        return True


_ROW_TWO = ("w-2,2", "w-2|2", "w-2,1|1", "w-2,1^2")
_TWO_RUNNER = "two-runner weight 2 construction"

TABLE_ROWS: tuple[TableRow, ...] = (
    TableRow(
        name="table-1", number=1, d1=Band.BETA, d2=Band.ALPHA, d13=Band.BETA,
        templates=("w-2,2", "w-2|2", "w-2||2", "w-2,1||1"),
        target=DAGGER, citation="as22, Section 4.1", removals=("row",),
    ),
    TableRow(
        name="table-2", number=2, d1=Band.BETA, d2=Band.ALPHA, d13=Band.GAMMA,
        templates=_ROW_TWO, target=DAGGER, citation="as22, Section 4.2", removals=("row",),
    ),
    TableRow(
        name="table-3", number=3, d1=Band.GAMMA, d2=Band.ALPHA, characteristic="odd",
        templates=("w-2,2", "w-2,1|1", "w-2|2", "w-2||2"),
        target=DAGGER, citation="as22, Section 4.3", removals=("row",),
    ),
    TableRow(
        name="table-4", number=4, d1=Band.GAMMA, d2=Band.ALPHA, characteristic="two", min_e=4,
        templates=("w-2,1|1", "w-2,1||1", "w-2|2", "w-2||2"),
        target=DDAGGER, citation=_TWO_RUNNER, removals=("row",),
    ),
    TableRow(
        name="table-5", number=5, d1=Band.BETA, d2=Band.DELTA,
        templates=_ROW_TWO, target=DAGGER, citation="as22, Section 4.4", removals=("row",),
    ),
    TableRow(
        name="table-6", number=6, d1=Band.GAMMA, d2=Band.DELTA, characteristic="odd",
        templates=("w-2,2", "w-2,1^2", "w-2,1|1", "w-2|2", "w-2|1^2"),
        target=SPADE, citation="as22, Section 4.5", removals=("row",),
    ),
    TableRow(
        name="table-7", number=7, d1=Band.GAMMA, d2=Band.DELTA, characteristic="two", min_e=4,
        templates=("w-2,1|1", "w-2,1||1", "w-2|1^2", "w-2|1|1"),
        target=DDAGGER, citation=_TWO_RUNNER, removals=("row",),
    ),
    TableRow(
        name="table-8", number=8, d14=Band.ALPHA, min_e=4,
        templates=("w-2|2", "w-2||2", "w-2|||2", "w-2|1||1"),
        target=DAGGER, citation="as22, Section 4.1", removals=("row",),
    ),
    TableRow(
        name="table-9", number=9, d13=Band.ALPHA, d14=Band.DELTA,
        templates=("w-2|2", "w-2||2", "w-2,2", "w-2,1|1"),
        target=DAGGER, citation="as22, Section 4.1", removals=("row",),
    ),
    TableRow(
        name="table-10", number=10, d1=Band.ALPHA, d2=Band.ALPHA, d13=Band.BETA,
        templates=("w-2|2", "w-2,2", "w-2||2", "w-2|1|1"),
        target=DAGGER, citation="as22, Section 4.1", removals=("row",),
    ),
    TableRow(
        name="table-11", number=11, d1=Band.ALPHA, d2=Band.DELTA,
        templates=("w-2|2", "w-2,2", "w-2,1|1", "w-2|1^2"),
        target=DAGGER, citation="as22, Sections 4.2 and 4.4", removals=("row",),
    ),
)


def table_row(number: int) -> TableRow:
    return TABLE_ROWS[number - 1]


def select_row(profile: DiffProfile, p: int) -> TableRow | None:
    """The first row whose conditions hold, or ``None``."""
    for row in TABLE_ROWS:
        if row.applies(profile, p):
            return row
    return None


# Weight 2, e ≥ 4, p_{e−1} − p_{e−2} > e; the last pair depends on p_{e−2} − p_{e−3}
TWO_RUNNER_NARROW = Construction(
    name="two-runner-narrow",
    templates=("1|1", "1||1", "|2", "||2"),
    target=DDAGGER,
    citation=_TWO_RUNNER,
)
TWO_RUNNER_WIDE = Construction(
    name="two-runner-wide",
    templates=("1|1", "1||1", "|1^2", "|1|1"),
    target=DDAGGER,
    citation=_TWO_RUNNER,
)

# Weight 3, e = 3, classes [1,3,4] and [1,2,3]
WEIGHT_THREE = Construction(
    name="weight-three",
    templates=("2|1", "|3", "1|2", "1^2|1"),
    target=DAGGER,
    citation="faytan06",
    removals=("column",),
)

# e = 3, p = 2, weight ≥ 5: pad down to weight 3 or weight 4
PAD_TO_THREE = Construction(
    name="pad-to-three",
    templates=("w-3,2|1", "w-3|3", "w-3,1|2", "w-3,1^2|1"),
    target=DAGGER,
    citation="row removal to weight 3",
    removals=("row",),
)
PAD_TO_FOUR = Construction(
    name="pad-to-four",
    templates=("w-4,1^2|1^2", "w-4,1|2,1", "w-4,1|1^3", "w-4|2,1^2"),
    target=DDAGGER,
    citation="row removal to weight 4",
    removals=("row",),
)

# e = 3, weight 4, class [1,4,7]
ROUQUIER_FOUR = Construction(
    name="rouquier",
    templates=("1^2|1^2", "1|2,1", "1|1^3", "|2,1^2"),
    target=DDAGGER,
    citation="jlm, Proposition 4.4",
)
