"""
Helper functions for angle bookkeeping and argument parsing.
"""
import math

import numpy as np


def wrap_phase(angle: float) -> float:
    """
    Fold an angle into (-pi, pi].

    Args:
        angle: Angle in radians

    Returns:
        Equivalent angle in (-pi, pi]
    """
    folded = math.remainder(angle, 2.0 * math.pi)
    if folded <= -math.pi:
        folded += 2.0 * math.pi
    return folded


def max_abs(values) -> float:
    """Largest absolute entry of an array-like (0.0 when empty)."""
    arr = np.asarray(values)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def parse_key_values(text: str) -> dict:
    """
    Parse a `key=value,key=value` list into floats.

    Args:
        text: Comma separated assignments, e.g. "eps=0.6,theta=1.57,phi=0"

    Returns:
        Dictionary mapping keys to float values

    Raises:
        ValueError: If an item has no '=' or a value is not numeric
    """
    values = {}
    for item in text.split(','):
        item = item.strip()
        if not item:
            continue
        if '=' not in item:
            raise ValueError(f"expected key=value, got '{item}'")
        key, raw = item.split('=', 1)
        values[key.strip()] = float(raw)
    return values
