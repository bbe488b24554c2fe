"""Input coercion shared by the estimators and the command line."""
from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Optional

import numpy as np

from .exactcore import to_fraction
from .fan import Fan, load_fan


def check_fan(fan) -> Fan:
    """Accept a :class:`Fan`, a fan JSON mapping, or a path to a fan JSON file."""
    if isinstance(fan, Fan):
        return fan
    if isinstance(fan, dict):
        return Fan.from_json(fan)
    if isinstance(fan, (str, os.PathLike)):
        return load_fan(fan)
    raise TypeError(f"expected a Fan, a fan JSON mapping or a path, got {type(fan).__name__}")


def check_rational_array(X, n_features: Optional[int] = None, name: str = "X") -> list:
    """Coerce a 2-d array-like of exact numbers to a list of Fraction tuples.

    Entries may be integers, Fractions, ``"p/q"`` strings or floats with an
    integral value; anything else is rejected rather than rounded.
    """
    arr = np.asarray(X, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if n_features is not None and arr.shape[1] != n_features:
        raise ValueError(f"{name} has {arr.shape[1]} columns, expected {n_features}")
    return [tuple(to_fraction(x) for x in row) for row in arr]


def parse_vector(text: str) -> list:
    """Parse a vector given as a JSON file path, inline JSON, or a comma list.

    JSON may be a list or an object with a ``"coeffs"`` (or ``"class"``)
    field.  Entries may be integers or ``"p/q"`` strings.
    """
    text = text.strip()
    if os.path.isfile(text):
        with open(text) as fh:
            data = json.load(fh)
    elif text[:1] in "[{":
        data = json.loads(text)
    else:
        data = [x.strip() for x in text.split(",") if x.strip()]
    if isinstance(data, dict):
        for key in ("coeffs", "class"):
            if key in data:
                data = data[key]
                break
        else:
            raise ValueError("vector JSON object needs a 'coeffs' or 'class' field")
    if not isinstance(data, list):
        raise ValueError("vector must be a list")
    return [to_fraction(x) for x in data]


def format_rational(x: Fraction) -> object:
    """Integers as JSON numbers, other rationals as ``"p/q"`` strings."""
    x = to_fraction(x)
    return x.numerator if x.denominator == 1 else str(x)
