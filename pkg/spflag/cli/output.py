"""
Вывод результатов в JSON и CSV

Ключи JSON сортируются, времени выполнения в выводе нет, поэтому
одинаковые запуски дают побайтно одинаковый результат.
"""
import csv
import io
import json
import sys
from typing import Any, Dict, Iterable, List, Optional

import numpy as np

SCHEMA_VERSION = "1"


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return str(value)


def render_json(payload: Dict[str, Any]) -> str:
    document = {"spec_version": SCHEMA_VERSION, **payload}
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False, default=_jsonable) + "\n"


def render_csv(rows: List[Dict[str, Any]], columns: Optional[Iterable[str]] = None) -> str:
    """CSV со строкой заголовка; столбцы в порядке первой строки, если не заданы"""
    columns = list(columns) if columns is not None else (list(rows[0]) if rows else [])
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(row.get(key)) for key in columns})
    return buffer.getvalue()


def _cell(value: Any) -> Any:
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False, default=_jsonable)
    if isinstance(value, float):
        return repr(value)
    return value


def emit(text: str, out: Optional[str] = None) -> None:
    """Пишет в файл out или в stdout"""
    if out:
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
