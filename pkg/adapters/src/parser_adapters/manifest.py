"""Adapter run manifests: model identity, tokenization note, id mapping."""

from __future__ import annotations

import json
from pathlib import Path

from parser_adapters import __version__

TOKENIZATION_NOTE = (
    "tokens taken verbatim from the statements file; no retokenization"
)


def write_manifest(
    path: str | Path,
    adapter: str,
    model_name: str,
    model_version: str,
    statement_ids: list[str],
    tokenization: str = TOKENIZATION_NOTE,
) -> None:
    payload = {
        "adapter": adapter,
        "adapter_version": __version__,
        "model": {"name": model_name, "version": model_version},
        "tokenization": tokenization,
        "statements": [
            {"statement_id": sid, "index": i} for i, sid in enumerate(statement_ids)
        ],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, ensure_ascii=False, sort_keys=True, indent=2)
        handle.write("\n")
