"""Finitely presented integer arrays and the models built from them.

A :class:`FinArray` is constant below its window, explicit inside it, and
constant above it. That is enough to represent every array the
non-closure construction needs, and it keeps reads, writes and ``diff``
exact and finite.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

from .errors import UnassignedSymbolError

__all__ = [
    "FinArray", "DiffCase", "diff_case", "diff_index", "Model", "paper_model",
    "model_to_json", "model_from_json", "dumps_model", "loads_model",
]


@dataclass(frozen=True, eq=False)
class FinArray:
    """Array ``j -> left_tail`` for ``j < lo``, ``window[j - lo]`` on the
    window, ``right_tail`` above it.

    The presentation is kept as given (so interchange round-trips exactly);
    equality and hashing go through :meth:`canonical`, which makes them
    extensional.
    """

    left_tail: int
    lo: int
    window: tuple
    right_tail: int
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.window, tuple):
            object.__setattr__(self, "window", tuple(self.window))
        object.__setattr__(self, "_key", _canonical_key(self))

    @classmethod
    def constant(cls, value: int) -> "FinArray":
        return cls(value, 0, (), value)

    @property
    def hi(self) -> int:
        """Last window index; ``lo - 1`` when the window is empty."""
        return self.lo + len(self.window) - 1

    def indices(self) -> range:
        return range(self.lo, self.lo + len(self.window))

    def breakpoints(self) -> range:
        """Indices where the presentation may change value: the window, or
        the step position of an empty window between distinct tails."""
        if not self.window and self.left_tail != self.right_tail:
            return range(self.lo, self.lo + 1)
        return self.indices()

    def read(self, j: int) -> int:
        k = j - self.lo
        if k < 0:
            return self.left_tail
        if k >= len(self.window):
            return self.right_tail
        return self.window[k]

    __getitem__ = read

    def store(self, j: int, v: int) -> "FinArray":
        """Functional write; the result is canonical."""
        lo = min(self.lo, j)
        hi = max(self.hi, j)
        vals = [self.read(x) for x in range(lo, hi + 1)]
        vals[j - lo] = v
        return FinArray(self.left_tail, lo, tuple(vals), self.right_tail).canonical()

    def canonical(self) -> "FinArray":
        left, lo, window, right = self._key
        if (left, lo, window, right) == (self.left_tail, self.lo, self.window, self.right_tail):
            return self
        return FinArray(left, lo, window, right)

    def is_canonical(self) -> bool:
        return self._key == (self.left_tail, self.lo, self.window, self.right_tail)

    def __eq__(self, other):
        if not isinstance(other, FinArray):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def to_json(self) -> dict:
        return {"leftTail": self.left_tail, "lo": self.lo, "window": list(self.window),
                "rightTail": self.right_tail}

    @classmethod
    def from_json(cls, obj: Mapping) -> "FinArray":
        return cls(int(obj["leftTail"]), int(obj["lo"]), tuple(int(x) for x in obj["window"]),
                   int(obj["rightTail"]))


def _canonical_key(s: FinArray) -> tuple:
    # lo is the first index whose value differs from the left tail and the
    # window ends at the last index differing from the right tail. A pure
    # step between two distinct tails keeps a one-cell window at the step.
    left, right, vals = s.left_tail, s.right_tail, s.window
    start, end = 0, len(vals)
    while start < end and vals[start] == left:
        start += 1
    while end > start and vals[end - 1] == right:
        end -= 1
    if start < end:
        return (left, s.lo + start, vals[start:end], right)
    if left == right:
        return (left, 0, (), right)
    return (left, s.lo + start, (right,), right)


class DiffCase(enum.Enum):
    EQUAL = "equal"
    NEGATIVE = "negative-difference"
    NONNEGATIVE = "nonnegative-difference"


def diff_case(s: FinArray, t: FinArray) -> tuple:
    """``(case, index)`` for the fixed ``diff`` interpretation.

    Equal arrays give 0. Otherwise the largest negative index where the
    arrays differ wins; failing that, the smallest non-negative one.
    """
    if s == t:
        return DiffCase.EQUAL, 0
    low = min(s.lo, t.lo)
    high = max(s.hi, t.hi)
    # below `low` both arrays sit on their left tails, above `high` on the right
    for j in range(-1, low - 1, -1):
        if s.read(j) != t.read(j):
            return DiffCase.NEGATIVE, j
    if s.left_tail != t.left_tail:
        return DiffCase.NEGATIVE, min(low - 1, -1)
    for j in range(0, high + 1):
        if s.read(j) != t.read(j):
            return DiffCase.NONNEGATIVE, j
    # equal tails on the left and no window difference: the right tails differ
    return DiffCase.NONNEGATIVE, max(high + 1, 0)


def diff_index(s: FinArray, t: FinArray) -> int:
    return diff_case(s, t)[1]


class Model:
    """Assignment of integers to integer constants and FinArrays to array
    constants. ``diff`` is not assignable."""

    __slots__ = ("ints", "arrays", "label")

    def __init__(self, ints: Mapping[str, int] = (), arrays: Mapping[str, FinArray] = (), label=None):
        self.ints = MappingProxyType(dict(ints))
        self.arrays = MappingProxyType(dict(arrays))
        self.label = label

    def int_value(self, name: str) -> int:
        try:
            return self.ints[name]
        except KeyError:
            raise UnassignedSymbolError(name) from None

    def array_value(self, name: str) -> FinArray:
        try:
            return self.arrays[name]
        except KeyError:
            raise UnassignedSymbolError(name) from None

    def __eq__(self, other):
        if not isinstance(other, Model):
            return NotImplemented
        return dict(self.ints) == dict(other.ints) and dict(self.arrays) == dict(other.arrays)

    def __repr__(self):
        if self.label is not None:
            return f"Model<{self.label}>"
        return f"Model(ints={dict(self.ints)!r}, arrays={dict(self.arrays)!r})"


@lru_cache(maxsize=1024)
def paper_model(i: int) -> Model:
    """Member ``i`` of the model family separating the two sides of the
    example: ``k = l = i``; ``a`` rises as ceil(j/2) and ``b`` as
    floor(j/2) + 1 on ``1..i``, both flat outside. Even ``i`` satisfies
    the first formula, odd ``i`` the second."""
    if i < 0:
        raise ValueError("model index must be non-negative")
    a = FinArray(0, 1, tuple((j + 1) // 2 for j in range(1, i + 1)), (i + 1) // 2)
    b = FinArray(1, 1, tuple(j // 2 + 1 for j in range(1, i + 1)), i // 2 + 1)
    return Model({"k": i, "l": i}, {"a": a, "b": b}, label=f"paper:{i}")


# -- interchange --------------------------------------------------------------

def model_to_json(m: Model) -> dict:
    return {
        "constants": {name: value for name, value in m.ints.items()},
        "arrays": {name: arr.to_json() for name, arr in m.arrays.items()},
    }


def model_from_json(obj: Mapping) -> Model:
    return Model(
        {name: int(v) for name, v in obj.get("constants", {}).items()},
        {name: FinArray.from_json(a) for name, a in obj.get("arrays", {}).items()},
    )


def dumps_model(m: Model) -> str:
    return json.dumps(model_to_json(m), indent=2) + "\n"


def loads_model(text: str) -> Model:
    return model_from_json(json.loads(text))
