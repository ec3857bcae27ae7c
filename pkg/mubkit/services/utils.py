from enum import Enum
from typing import Any, List, Sequence, Tuple

import numpy as np


def to_json_serializable(doc: Any) -> Any:
    """Convert numpy values, complex numbers and enums to JSON-friendly types."""
    if isinstance(doc, np.ndarray):
        return to_json_serializable(doc.tolist())
    if isinstance(doc, (list, tuple)):
        return [to_json_serializable(item) for item in doc]
    if isinstance(doc, dict):
        return {key: to_json_serializable(value) for key, value in doc.items()}
    if isinstance(doc, (complex, np.complexfloating)):
        return [float(doc.real), float(doc.imag)]
    if isinstance(doc, np.integer):
        return int(doc)
    if isinstance(doc, np.floating):
        return float(doc)
    if isinstance(doc, Enum):
        return doc.value
    return doc


def encode_matrix(matrix: np.ndarray) -> List[Tuple[float, float]]:
    """Column-major [re, im] pairs of a complex matrix."""
    flat = np.asarray(matrix, dtype=np.complex128).flatten(order="F")
    return [(float(z.real), float(z.imag)) for z in flat]


def decode_matrix(entries: Sequence[Sequence[float]], dim: int) -> np.ndarray:
    """Inverse of encode_matrix."""
    pairs = np.asarray(entries, dtype=np.float64).reshape(dim * dim, 2)
    flat = pairs[:, 0] + 1j * pairs[:, 1]
    return flat.reshape((dim, dim), order="F")


def format_digits(values: Sequence[int], p: int) -> str:
    """F_p vector as digits: '01' for p <= 10, space separated otherwise."""
    sep = "" if p <= 10 else " "
    return sep.join(str(int(v)) for v in values)
