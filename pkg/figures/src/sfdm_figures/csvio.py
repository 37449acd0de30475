"""Loading and validating the sfdm CLI's CSV files."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path


class FigureDataError(Exception):
    """Raised when an input CSV is missing, empty, or lacks a column."""


@dataclass
class Table:
    """One CSV table: column-name -> list of float (or string) values."""

    columns: dict[str, list] = field(default_factory=dict)

    def __len__(self):
        return len(next(iter(self.columns.values()), []))

    def floats(self, name):
        return [float(v) for v in self.columns[name]]


@dataclass
class CsvData:
    """A parsed sfdm CSV: parameter metadata, main table, optional summary."""

    path: Path
    producer: str
    meta: dict[str, str]
    table: Table
    summary: Table | None = None

    def require(self, *names, summary=False):
        """Fail loudly if a required column is absent, naming the producing
        CLI subcommand."""
        target = self.summary if summary else self.table
        where = "summary table" if summary else "table"
        for name in names:
            if target is None or name not in target.columns:
                raise FigureDataError(
                    f"{self.path}: missing column {name!r} in {where}; "
                    f"regenerate this file with `sfdm {self.producer}`")


def _parse_table(lines) -> Table:
    rows = list(csv.reader(lines))
    header, body = rows[0], rows[1:]
    return Table({name: [row[i] for row in body]
                  for i, name in enumerate(header)})


def load_csv(path: Path, producer: str) -> CsvData:
    """Load one sfdm CSV (comment line, table, optional summary table)."""
    path = Path(path)
    if not path.is_file():
        raise FigureDataError(
            f"{path}: not found; generate it with `sfdm {producer}`")
    lines = path.read_text().splitlines()
    meta = {}
    if lines and lines[0].startswith("# sfdm "):
        meta = dict(item.split("=", 1)
                    for item in lines[0][len("# sfdm "):].split())
        lines = lines[1:]
    blocks, current = [], []
    for line in lines:
        if line.strip() == "":
            if current:
                blocks.append(current)
                current = []
        else:
            current.append(line)
    if current:
        blocks.append(current)
    if not blocks or len(blocks[0]) < 2:
        raise FigureDataError(
            f"{path}: no data rows; regenerate with `sfdm {producer}`")
    table = _parse_table(blocks[0])
    summary = _parse_table(blocks[1]) if len(blocks) > 1 else None
    return CsvData(path=path, producer=producer, meta=meta, table=table,
                   summary=summary)
