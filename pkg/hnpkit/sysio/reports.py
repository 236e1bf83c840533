"""JSON and CSV emission for reports built from pydantic models."""

import csv
import io
import json
from collections.abc import Iterable, Mapping, Sequence
from typing import Any

from pydantic import BaseModel


def to_json(report: BaseModel | Mapping[str, Any]) -> str:
    """One report per line, keys sorted so identical runs are byte-identical."""
    data = report.model_dump(mode="json") if isinstance(report, BaseModel) else dict(report)
    return json.dumps(data, sort_keys=True)


def to_csv(rows: Iterable[BaseModel | Mapping[str, Any]], fieldnames: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fieldnames), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        data = row.model_dump(mode="json") if isinstance(row, BaseModel) else dict(row)
        writer.writerow({k: _cell(v) for k, v in data.items()})
    return buffer.getvalue()


def _cell(value: Any) -> Any:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    if value is None:
        return ""
    return value
