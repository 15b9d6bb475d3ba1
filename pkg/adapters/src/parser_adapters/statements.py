"""Reader for the core's statements JSON-lines file.

The adapters talk to the core through files only, so this is a deliberately
independent, minimal reader: each record needs ``id`` and ``tokens`` (a list
of objects with ``text``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path


class AdapterError(Exception):
    """Input did not conform to the statements schema."""


@dataclass(frozen=True)
class StatementRow:
    statement_id: str
    words: tuple[str, ...]


def read_statement_rows(path: str | Path) -> list[StatementRow]:
    rows: list[StatementRow] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                words = tuple(t["text"] for t in record["tokens"])
                statement_id = record["id"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise AdapterError(f"{path}:{lineno}: bad statement record: {exc}") from exc
            if not words:
                raise AdapterError(f"{path}:{lineno}: statement {statement_id!r} has no tokens")
            rows.append(StatementRow(statement_id, words))
    return rows
