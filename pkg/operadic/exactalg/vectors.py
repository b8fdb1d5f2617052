"""Sparse vectors are plain dictionaries mapping a key (a basis index, a tree, a
tuple...) to a nonzero scalar. This module holds the few helpers that keep them free
of stored zeros.
"""
from typing import Any, Dict, Hashable, Iterable, Mapping, Tuple, TypeVar

K = TypeVar("K", bound=Hashable)

Vector = Dict[int, Any]
KeyedVector = Dict[Hashable, Any]


def add_to(vector: Dict[K, Any], key: K, value: Any) -> None:
    """Adds value at key in place, deleting the entry if it cancels."""
    if not value:
        return
    current = vector.get(key)
    if current is None:
        vector[key] = value
        return
    total = current + value
    if total:
        vector[key] = total
    else:
        del vector[key]


def add_scaled(vector: Dict[K, Any], other: Mapping[K, Any], coefficient: Any) -> None:
    """vector += coefficient * other, in place."""
    if not coefficient:
        return
    for key, value in other.items():
        add_to(vector, key, coefficient * value)


def scaled(vector: Mapping[K, Any], coefficient: Any) -> Dict[K, Any]:
    if not coefficient:
        return {}
    return {key: coefficient * value for key, value in vector.items()}


def combine(terms: Iterable[Tuple[Mapping[K, Any], Any]]) -> Dict[K, Any]:
    """Linear combination of (vector, coefficient) pairs."""
    result: Dict[K, Any] = {}
    for vector, coefficient in terms:
        add_scaled(result, vector, coefficient)
    return result


def is_zero(vector: Mapping[Any, Any]) -> bool:
    return not any(vector.values())
