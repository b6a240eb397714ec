from typing import Callable, Iterable, TypeVar

T = TypeVar("T")


def foldl(oper: Callable[[T, T], T], default: T, arr: Iterable[T]) -> T:
    val = default
    for x in arr:
        val = oper(val, x)
    return val


def all_matches(cond: Callable[[T], bool], arr: Iterable[T]) -> bool:
    return foldl(lambda x, y: x and y, True, map(cond, arr))


def argmax_lowest(values: Iterable[float], tol: float = 0.0) -> int:
    """
    Index of the maximum, ties (within `tol`) broken by the lowest index.
    Raises ValueError on an empty input.
    """

    best_idx = -1
    best_val = float("-inf")
    for i, v in enumerate(values):
        if best_idx < 0 or v > best_val + tol:
            best_idx = i
            best_val = v
    if best_idx < 0:
        raise ValueError("argmax of an empty sequence")
    return best_idx
