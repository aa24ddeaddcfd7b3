"""Exact, deterministic encoding of floats for reports."""
from __future__ import annotations

import math

__all__ = ["encode_real", "decode_real", "format_real"]


def format_real(x: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def encode_real(x):
    if x is None:
        return None
    x = float(x)
    return {"decimal": format_real(x), "hex": x.hex()}


def decode_real(obj):
    if obj is None:
        return None
    if isinstance(obj, dict):
        return float.fromhex(obj["hex"])
    return float(obj)
