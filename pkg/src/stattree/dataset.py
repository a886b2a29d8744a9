"""Data model, CSV ingestion, and the bundled monthly planning dataset."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Mapping

__all__ = [
    "MeasurementScale",
    "Column",
    "Dataset",
    "Sample",
    "GroupedSample",
    "IngestConfig",
    "scale_capabilities",
    "parse_csv",
    "render_csv",
    "builtin_table2",
    "select_response_factor",
    "sample_values",
]

_SCALE_KINDS = ("nominal", "ordinal", "interval", "ratio")

# Capability ladder: each scale supports everything the previous one does.
_CAPABILITIES = {
    "nominal": frozenset({"counting"}),
    "ordinal": frozenset({"counting", "ordination"}),
    "interval": frozenset({"counting", "ordination", "equidistant_ranges"}),
    "ratio": frozenset(
        {"counting", "ordination", "equidistant_ranges", "add_sub", "division"}
    ),
}


@dataclass(frozen=True)
class MeasurementScale:
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in _SCALE_KINDS:
            raise ValueError(
                f"unknown scale kind {self.kind!r}; expected one of {_SCALE_KINDS}"
            )

    @property
    def is_numeric(self) -> bool:
        return self.kind in ("interval", "ratio")


def scale_capabilities(scale: MeasurementScale) -> frozenset[str]:
    """Operations a value on this scale supports."""
    return _CAPABILITIES[scale.kind]


@dataclass(frozen=True)
class Column:
    name: str
    values: tuple
    scale: MeasurementScale

    def __post_init__(self) -> None:
        if self.scale.is_numeric:
            bad = [v for v in self.values if not isinstance(v, (int, float))]
            if bad:
                raise ValueError(
                    f"column {self.name!r} is declared numeric but holds {bad[0]!r}"
                )


@dataclass(frozen=True)
class Dataset:
    columns: tuple[Column, ...]
    row_count: int

    def __post_init__(self) -> None:
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValueError("duplicate column names")
        for c in self.columns:
            if len(c.values) != self.row_count:
                raise ValueError(
                    f"column {c.name!r} has {len(c.values)} values, "
                    f"expected {self.row_count}"
                )

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        available = ", ".join(repr(c.name) for c in self.columns)
        raise ValueError(f"unknown column {name!r}; available: {available}")


@dataclass(frozen=True)
class Sample:
    """An ordered collection of real-valued measurements for one group."""

    values: tuple[float, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if len(self.values) < 1:
            raise ValueError("a sample needs at least one value")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)


def sample_values(s) -> list[float]:
    """Coerce a Sample or any sequence of numbers to a list of floats."""
    if isinstance(s, Sample):
        return list(s.values)
    if isinstance(s, (str, bytes)):
        raise ValueError("expected a sequence of numbers, got a string")
    return [float(v) for v in s]


@dataclass(frozen=True)
class GroupedSample:
    """Response values partitioned by the levels of one factor."""

    response_name: str
    factor_name: str
    groups: Mapping[str, Sample]

    def __post_init__(self) -> None:
        if len(self.groups) < 2:
            raise ValueError("at least 2 treatments required")
        for label, sample in self.groups.items():
            if len(sample) == 0:
                raise ValueError(f"group {label!r} is empty")

    def labels(self) -> list[str]:
        return list(self.groups.keys())

    def sizes(self) -> list[int]:
        return [len(s) for s in self.groups.values()]

    def items(self) -> list[tuple[str, Sample]]:
        return list(self.groups.items())


@dataclass(frozen=True)
class IngestConfig:
    """Per-column scale declarations for CSV ingestion.

    Columns not listed are auto-detected: every cell parseable as a number
    gives ``ratio``, anything else gives ``nominal``.
    """

    scales: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, kind in self.scales.items():
            if kind not in _SCALE_KINDS:
                raise ValueError(
                    f"column {name!r}: unknown scale kind {kind!r}"
                )


def _parse_number(cell: str, row: int, name: str) -> float:
    try:
        return float(cell)
    except ValueError:
        raise ValueError(
            f"row {row}, column {name!r}: {cell!r} is not numeric"
        ) from None


def parse_csv(text: str, config: IngestConfig = IngestConfig()) -> Dataset:
    """Parse RFC 4180 comma-separated text with a mandatory header row.

    Missing cells and ragged rows are hard errors; nothing is dropped
    silently.
    """
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader]
    if not rows:
        raise ValueError("empty input: a header row is required")
    header = rows[0]
    if len(set(header)) != len(header):
        raise ValueError("duplicate column names in header")
    body = rows[1:]
    for i, row in enumerate(body, start=1):
        if len(row) != len(header):
            raise ValueError(
                f"row {i} has {len(row)} cells, expected {len(header)}"
            )
        for name, cell in zip(header, row):
            if cell == "":
                raise ValueError(f"row {i}, column {name!r}: missing cell")

    columns = []
    for j, name in enumerate(header):
        cells = [row[j] for row in body]
        declared = config.scales.get(name)
        if declared is None:
            numeric = all(_is_number(c) for c in cells)
            declared = "ratio" if numeric else "nominal"
        scale = MeasurementScale(declared)
        if scale.is_numeric:
            values = tuple(
                _parse_number(c, i, name) for i, c in enumerate(cells, start=1)
            )
        else:
            values = tuple(cells)
        columns.append(Column(name, values, scale))
    return Dataset(tuple(columns), len(body))


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def render_csv(dataset: Dataset) -> str:
    """Inverse of parse_csv up to scale auto-detection."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([c.name for c in dataset.columns])
    for i in range(dataset.row_count):
        writer.writerow([_render_cell(c.values[i]) for c in dataset.columns])
    return out.getvalue()


def _render_cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


# Bundled dataset: monthly effort-planning records with hours held and
# expected per month, the case-count and its size class, and whether the
# month fell before or after a process change.
_TABLE2_ROWS = (
    ("2013/12", 259.878, 100.000, 36, "M", -159.878, "Before"),
    ("2014/01", 749.272, 580.000, 84, "L", -169.272, "Before"),
    ("2014/02", 570.343, 480.000, 74, "L", -90.343, "Before"),
    ("2014/03", 535.014, 480.000, 74, "L", -55.014, "Before"),
    ("2014/04", 311.262, 90.000, 33, "S", -221.262, "Before"),
    ("2014/05", 285.988, 80.000, 28, "S", -205.988, "Before"),
    ("2014/06", 279.633, 80.000, 28, "S", -199.633, "Before"),
    ("2014/07", 256.495, 480.000, 52, "M", 223.505, "Before"),
    ("2014/08", 437.427, 680.000, 52, "M", 242.573, "After"),
    ("2014/09", 450.845, 395.367, 58, "M", -55.478, "After"),
    ("2014/10", 225.472, 517.222, 75, "L", 291.750, "After"),
    ("2014/11", 602.305, 791.996, 95, "L", 189.691, "After"),
    ("2014/12", 450.147, 452.305, 62, "M", 2.158, "After"),
    ("2015/01", 327.089, 516.024, 70, "L", 188.935, "After"),
    ("2015/02", 258.536, 503.461, 65, "L", 244.925, "After"),
    ("2015/03", 310.315, 620.772, 80, "L", 310.457, "After"),
)

_TABLE2_COLUMNS = (
    ("Year/Month", "ordinal"),
    ("Held Hours", "ratio"),
    ("Expected Hours", "ratio"),
    ("Number of Cases", "ratio"),
    ("Cases Size", "ordinal"),
    ("Difference (Expected - Held)", "interval"),
    ("Moment", "nominal"),
)


def builtin_table2() -> Dataset:
    """The bundled 16-month planning dataset (see module comment above).

    Reachable from the command line with the input keyword
    ``builtin:table2``.
    """
    columns = []
    for j, (name, kind) in enumerate(_TABLE2_COLUMNS):
        raw = tuple(row[j] for row in _TABLE2_ROWS)
        scale = MeasurementScale(kind)
        values = tuple(float(v) for v in raw) if scale.is_numeric else raw
        columns.append(Column(name, values, scale))
    return Dataset(tuple(columns), len(_TABLE2_ROWS))


def select_response_factor(
    dataset: Dataset, response: str, factor: str
) -> GroupedSample:
    """Split a numeric response column by the levels of a categorical factor.

    Group order follows first appearance in the data; row order is kept
    within each group.
    """
    resp = dataset.column(response)
    fact = dataset.column(factor)
    if not resp.scale.is_numeric:
        raise ValueError(f"column {response!r} is not numeric")
    if fact.scale.is_numeric:
        raise ValueError(
            f"factor column {factor!r} is numeric; re-ingest it with a "
            "categorical scale to use it as a factor"
        )
    by_level: dict[str, list[float]] = {}
    for value, level in zip(resp.values, fact.values):
        by_level.setdefault(str(level), []).append(float(value))
    if len(by_level) < 2:
        raise ValueError("at least 2 treatments required")
    groups = {
        label: Sample(tuple(vals), label=label) for label, vals in by_level.items()
    }
    return GroupedSample(response_name=response, factor_name=factor, groups=groups)
