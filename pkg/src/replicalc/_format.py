"""Number formatting and tabular output shared by the reports and the CLI."""
from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_HALF_UP, Decimal
from typing import Any, Iterable, Sequence


def round_half_up(x: float, places: int = 3) -> float:
    """Round on the printed decimal value, so 0.0005 -> 0.001."""
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP))


def fmt(x: Any, precision: int | None = None) -> str:
    """Shortest round-trip text for ``x`` after rounding to ``precision`` decimals."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, str):
        return x
    v = float(x)
    if precision is not None:
        v = round_half_up(v, precision)
    if v == 0:
        v = 0.0  # no "-0.0"
    return repr(v)


def rounded(x: Any, precision: int | None):
    if precision is None or isinstance(x, (bool, int, str)) or x is None:
        return x
    return round_half_up(float(x), precision)


def to_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]],
           precision: int | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(v, precision) for v in row])
    return buf.getvalue()


def to_json(obj: Any, precision: int | None = None) -> str:
    def conv(o):
        if isinstance(o, dict):
            return {k: conv(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [conv(v) for v in o]
        if hasattr(o, "item"):  # numpy scalar
            o = o.item()
        return rounded(o, precision)
    return json.dumps(conv(obj), indent=2) + "\n"


def to_plain(columns: Sequence[str], rows: Iterable[Sequence[Any]],
             precision: int | None = None) -> str:
    cells = [list(columns)] + [[fmt(v, precision) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"
