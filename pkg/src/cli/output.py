"""
Rendering of command results.

JSON is canonical: keys keep the order the reports define, floats are
rounded to 12 significant digits and -0.0 prints as 0.0, so identical runs
produce byte-identical files.
"""
import io
import json
import math
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd

FORMATS = ("json", "csv", "text")


def canonical(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return canonical(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return None
        value = float(format(value, ".12g"))
        return 0.0 if value == 0 else value
    return obj


def dumps(obj: Any, indent: Optional[int] = 2) -> str:
    return json.dumps(canonical(obj), indent=indent, ensure_ascii=False)


def json_lines(records: Iterable[Dict], summary: Dict) -> str:
    lines = [dumps(r, indent=None) for r in records]
    lines.append(dumps({"summary": summary}, indent=None))
    return "\n".join(lines) + "\n"


def to_csv(rows: List[Dict]) -> str:
    frame = pd.DataFrame([canonical(r) for r in rows])
    buf = io.StringIO()
    frame.to_csv(buf, index=False, lineterminator="\n")
    return buf.getvalue()


def to_text(payload: Dict, prefix: str = "") -> str:
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append(f"{prefix}{key}:")
            lines.append(to_text(value, prefix + "  ").rstrip("\n"))
        elif isinstance(value, float):
            lines.append(f"{prefix}{key}: {value:.12g}")
        elif isinstance(value, (list, tuple)) and len(value) > 12:
            head = ", ".join(f"{v:.12g}" if isinstance(v, float) else str(v) for v in value[:12])
            lines.append(f"{prefix}{key}: [{head}, ... ({len(value)} items)]")
        else:
            lines.append(f"{prefix}{key}: {value}")
    return "\n".join(lines) + "\n"


def render(payload: Dict, rows: List[Dict], fmt: str) -> str:
    if fmt == "json":
        return dumps(payload) + "\n"
    if fmt == "csv":
        return to_csv(rows)
    return to_text(canonical(payload))


def write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        print(text, end="")
