"""Tolerance helpers shared by the consistency checks."""
from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .const import MAGNITUDE_FLOOR
from .exceptions import ConsistencyError


def magnitude(*values: object) -> float:
    """Return the largest absolute entry among scalars and arrays."""
    largest = 0.0
    for value in values:
        arr = np.abs(np.asarray(value, dtype=complex))
        if arr.size:
            largest = max(largest, float(np.max(arr)))
    return largest


def relative_deviation(
    computed: object, reference: object, scale: float = 0.0
) -> float:
    """Return max |computed - reference| relative to the comparison scale."""
    a = np.asarray(computed, dtype=complex)
    b = np.asarray(reference, dtype=complex)
    floor = max(magnitude(a, b), scale, MAGNITUDE_FLOOR)
    return float(np.max(np.abs(a - b))) / floor


def check_consistency(
    quantity: str,
    computed: object,
    reference: object,
    rtol: float,
    summands: Iterable[object] = (),
) -> float:
    """Raise ConsistencyError when two routes to a quantity disagree.

    The summands that produced either value widen the scale so cancellation
    near folds does not count as disagreement.
    """
    deviation = relative_deviation(computed, reference, magnitude(*summands))
    if not deviation <= rtol:
        raise ConsistencyError(quantity, computed, reference, deviation)
    return deviation
