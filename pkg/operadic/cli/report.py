"""This module contains the Report produced by every command, with its JSON and text
renderings. Both are deterministic: keys are sorted and tables are ordered.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, List, Mapping

import orjson
import pandas as pd

SCHEMA_VERSION = 1

DEGREE_SHIFT = "operadic degree n corresponds to classical degree n + 1"


@dataclass
class Report:
    """Command echo, results, tables and convention notes.

    tables maps a title to {row label: {column label: value}}.
    """

    command: str
    config: Dict[str, Any]
    source: str = ""
    results: Dict[str, Any] = dataclass_field(default_factory=dict)
    tables: Dict[str, Dict[str, Dict[str, Any]]] = dataclass_field(default_factory=dict)
    notes: List[str] = dataclass_field(default_factory=list)
    exit_code: int = 0

    def table(self, title: str, rows: Mapping[Any, Mapping[Any, Any]]) -> None:
        self.tables[title] = {str(r): {str(c): v for c, v in cols.items()} for r, cols in rows.items()}

    def as_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config,
            "input": self.source,
            "results": self.results,
            "tables": self.tables,
            "notes": self.notes,
            "exit_code": self.exit_code,
        }

    def to_json(self) -> bytes:
        return orjson.dumps(self.as_dict(), option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_NON_STR_KEYS)

    def to_text(self) -> str:
        lines = [f"{self.command} {self.source}".rstrip()]
        settings = ", ".join(f"{k}={v}" for k, v in sorted(self.config.items()))
        lines.append(f"  [{settings}]")
        for key, value in sorted(self.results.items()):
            if not isinstance(value, (dict, list)):
                lines.append(f"{key}: {value}")
        for title, rows in self.tables.items():
            lines.append("")
            lines.append(title)
            if not rows:
                lines.append("  (empty)")
                continue
            frame = pd.DataFrame.from_dict(rows, orient="index", dtype=object)
            frame = frame.reindex(sorted(frame.columns, key=_order), axis=1)
            frame = frame.where(frame.notna(), "")
            lines.append(frame.to_string())
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"

    def render(self, output_format: str) -> bytes:
        if output_format == "json":
            return self.to_json() + b"\n"
        return self.to_text().encode("utf-8")


def _order(label: str):
    """Numeric labels in numeric order, then the others."""
    try:
        return 0, int(label), ""
    except ValueError:
        return 1, 0, label
