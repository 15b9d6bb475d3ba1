"""Crash-safe output writing: a failed run leaves no partial files behind."""

from __future__ import annotations

import os
from contextlib import contextmanager
from pathlib import Path


@contextmanager
def atomic_output(path: str | Path):
    """Yield a temp-file handle; rename over ``path`` only on success."""
    target = Path(path)
    temporary = target.with_name(target.name + ".part")
    handle = open(temporary, "w", encoding="utf-8", newline="\n")
    try:
        yield handle
    except BaseException:
        handle.close()
        temporary.unlink(missing_ok=True)
        raise
    else:
        handle.close()
        os.replace(temporary, target)
