"""Report files with atomic writes."""

import csv
import io
import json
import os
from pathlib import Path
from typing import Any, Iterable


def atomic_write(path: Path, data: str) -> None:
    """Write data to a file atomically using write-to-temp-then-rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_suffix(path.suffix + ".tmp")
    try:
        tmp_path.write_text(data, encoding="utf-8")
        os.replace(str(tmp_path), str(path))
    except Exception:
        tmp_path.unlink(missing_ok=True)
        raise


def atomic_write_json(path: Path, data: Any) -> None:
    """Serialize data as JSON and write atomically."""
    atomic_write(path, json.dumps(data, indent=2, default=str))


def render_csv(rows: Iterable[dict[str, Any]], fieldnames: list[str]) -> str:
    """Render rows as CSV text with a header line."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: row.get(key, "") for key in fieldnames})
    return buffer.getvalue()


def read_json(path: Path) -> Any:
    """Read and parse a JSON file. Returns {} for missing or unreadable files."""
    if not path.exists():
        return {}
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, OSError):
        return {}
