"""
CSV reading and writing with exact float round-trips.
"""

import csv
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence


def format_cell(value: Any) -> str:
    """repr for floats so parsing gives back the same double; '' for None"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_optional_float(text: str) -> Optional[float]:
    return None if text == "" else float(text)


def write_csv(path: Path, headers: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> Path:
    """Write rows with a header line; '\\n' line endings on every platform"""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=list(headers), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: format_cell(row[key]) for key in headers})
    return path


def read_csv(path: Path) -> List[Dict[str, str]]:
    with path.open("r", encoding="utf-8", newline="") as handle:
        return list(csv.DictReader(handle))
