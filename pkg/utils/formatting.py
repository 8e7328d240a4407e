# utils/formatting.py

import json
import math
from typing import Any

import numpy as np


def format_float(x: float) -> str:
    """
    Shortest text that round-trips the double (at most 17 significant
    digits), '.' decimal point. Non-finite values become nan / inf / -inf.
    """
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def to_plain(obj: Any) -> Any:
    """
    Recursively convert numpy scalars/arrays and tuples into JSON-ready
    Python values; non-finite floats become None.
    """
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    return obj


def dump_json(obj: Any) -> str:
    """Deterministic JSON text: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(to_plain(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"
