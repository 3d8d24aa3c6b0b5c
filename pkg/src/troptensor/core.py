"""Exact min-plus scalars and tensors symmetric in their trailing indices.

Scalars are :class:`fractions.Fraction`; the tropical zero is ``math.inf``.
Both behave correctly under ``min`` and ``+`` without wrapping, so an
"extended value" is simply ``Fraction | float('inf')``.

Indices are 0-based inside the library.  A tensor entry is addressed by a
canonical key ``(i, tail)`` where ``tail`` is the sorted tuple of the last
``m - 1`` indices.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, HypothesisViolation, ParseError

INF = math.inf

ExtVal = Union[Fraction, float]
Key = tuple  # (int, tuple[int, ...])

__all__ = [
    "INF",
    "Tensor",
    "as_rational",
    "parse_value",
    "format_value",
    "canonical_keys",
    "canonicalize",
    "tropical_apply",
    "tropical_scale",
    "check_support_hypothesis",
    "is_fully_symmetric",
]


def parse_value(text) -> ExtVal:
    """Parse ``"2/3"``, ``"-0.25"``, ``"7"`` or ``"inf"`` exactly."""
    if isinstance(text, (Fraction, int)):
        return Fraction(text)
    if isinstance(text, float):
        if text == INF:
            return INF
        raise ParseError("floats are not accepted; pass a string")
    s = str(text).strip().replace("−", "-")
    if s.lower() in ("inf", "+inf", "infinity", "∞"):
        return INF
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse value {text!r}") from exc


def as_rational(value) -> ExtVal:
    """Coerce ints, Fractions, strings and ``inf`` to an extended rational.

    Finite floats are converted exactly through :class:`Fraction`.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        if value == INF:
            return INF
        if math.isnan(value) or value == -INF:
            raise ValueError(f"{value!r} is not an extended rational")
        return Fraction(float(value))
    return parse_value(value)


def format_value(v: ExtVal) -> str:
    if v == INF:
        return "inf"
    return str(Fraction(v))


def tails(n: int, m: int) -> list[tuple[int, ...]]:
    """All sorted multisets of size ``m - 1`` over ``range(n)``."""
    return list(itertools.combinations_with_replacement(range(n), m - 1))


def canonical_keys(n: int, m: int) -> list[Key]:
    return [(i, t) for i in range(n) for t in tails(n, m)]


def _key(index: Sequence[int]) -> Key:
    return (index[0], tuple(sorted(index[1:])))


class Tensor:
    """Order-``m``, rank-``n`` tensor stored by trailing-index orbit.

    Instances are immutable; every canonical key carries a value.
    """

    __slots__ = ("n", "m", "_entries")

    def __init__(self, n: int, m: int, entries: Mapping[Key, ExtVal]):
        if n < 1:
            raise ValueError("rank n must be at least 1")
        if m < 2:
            raise ValueError("order m must be at least 2")
        keys = canonical_keys(n, m)
        missing = [k for k in keys if k not in entries]
        if missing:
            raise DimensionMismatch(f"missing canonical entries, e.g. {missing[0]}")
        if len(entries) != len(keys):
            raise DimensionMismatch("entries contain non-canonical keys")
        self.n = n
        self.m = m
        self._entries = {k: as_rational(entries[k]) for k in keys}

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_dense(cls, raw) -> "Tensor":
        """Canonicalize a dense ``n**m`` array (nested lists or ndarray)."""
        return canonicalize(raw)

    @classmethod
    def from_function(cls, n: int, m: int, fn: Callable[[int, tuple], ExtVal]) -> "Tensor":
        return cls(n, m, {(i, t): fn(i, t) for i, t in canonical_keys(n, m)})

    @classmethod
    def constant(cls, n: int, m: int, value=0) -> "Tensor":
        v = as_rational(value)
        return cls(n, m, {k: v for k in canonical_keys(n, m)})

    @classmethod
    def from_entries(cls, n: int, m: int, items: Iterable[tuple[Sequence[int], ExtVal]],
                     default=0) -> "Tensor":
        """Build from full index tuples; duplicates within an orbit take the min.

        Orbits not mentioned keep ``default``.  An orbit that is only partly
        mentioned compares against ``default`` for the unmentioned members,
        exactly as a dense array filled with ``default`` would.
        """
        d = as_rational(default)
        seen: dict[Key, list] = {}
        for idx, val in items:
            idx = tuple(int(j) for j in idx)
            if len(idx) != m or any(not 0 <= j < n for j in idx):
                raise DimensionMismatch(f"index {idx} out of range for n={n}, m={m}")
            seen.setdefault(_key(idx), []).append((idx, as_rational(val)))
        entries = {}
        for k in canonical_keys(n, m):
            vals = seen.get(k)
            if not vals:
                entries[k] = d
                continue
            best = min(v for _, v in vals)
            covered = {idx for idx, _ in vals}
            if len(covered) < _orbit_size(k[1]):
                best = min(best, d)
            entries[k] = best
        return cls(n, m, entries)

    # -- access -----------------------------------------------------------
    def __getitem__(self, index) -> ExtVal:
        if len(index) == 2 and isinstance(index[1], tuple):
            return self._entries[(index[0], tuple(sorted(index[1])))]
        return self._entries[_key(tuple(index))]

    def items(self) -> Iterator[tuple[Key, ExtVal]]:
        return iter(self._entries.items())

    def keys(self) -> list[Key]:
        return list(self._entries)

    def row(self, i: int) -> dict[tuple, ExtVal]:
        return {t: v for (r, t), v in self._entries.items() if r == i}

    def finite_items(self) -> list[tuple[Key, Fraction]]:
        return [(k, v) for k, v in self._entries.items() if v != INF]

    def min_entry(self) -> ExtVal:
        return min(self._entries.values())

    def to_dense(self) -> np.ndarray:
        """Dense object array, each orbit member set to the orbit value."""
        out = np.empty((self.n,) * self.m, dtype=object)
        for idx in itertools.product(range(self.n), repeat=self.m):
            out[idx] = self._entries[_key(idx)]
        return out

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.n, self.m, self._entries) == (other.n, other.m, other._entries)

    def __hash__(self):
        return hash((self.n, self.m, tuple(self._entries.values())))

    def __repr__(self):
        return f"Tensor(n={self.n}, m={self.m})"


def _orbit_size(tail: tuple) -> int:
    size = math.factorial(len(tail))
    for _, grp in itertools.groupby(tail):
        size //= math.factorial(len(list(grp)))
    return size


def canonicalize(raw) -> Tensor:
    """Reduce a dense array to its trailing-orbit minima."""
    arr = np.asarray(raw, dtype=object)
    if arr.ndim < 2:
        raise DimensionMismatch("a tensor needs order m >= 2")
    n = arr.shape[0]
    if any(s != n for s in arr.shape):
        raise DimensionMismatch(f"array of shape {arr.shape} is not n^m")
    m = arr.ndim
    entries: dict[Key, ExtVal] = {}
    for idx in itertools.product(range(n), repeat=m):
        k = _key(idx)
        v = as_rational(arr[idx])
        if k not in entries or v < entries[k]:
            entries[k] = v
    return Tensor(n, m, entries)


def tropical_apply(A: Tensor, x: Sequence) -> list[ExtVal]:
    """Min-plus evaluation of ``A x^{m-1}`` row by row."""
    if len(x) != A.n:
        raise DimensionMismatch(f"vector has length {len(x)}, expected {A.n}")
    x = [as_rational(v) for v in x]
    out: list[ExtVal] = [INF] * A.n
    for (i, t), a in A.items():
        if a == INF:
            continue
        v = a + sum(x[j] for j in t)
        if v < out[i]:
            out[i] = v
    return out


def tropical_scale(A: Tensor, c) -> Tensor:
    """Tropical scalar product: add ``c`` to every finite entry."""
    c = as_rational(c)
    return Tensor(A.n, A.m, {k: (v if v == INF else v + c) for k, v in A.items()})


def check_support_hypothesis(A: Tensor) -> frozenset:
    """Return the common finite support S of all rows.

    Raises :class:`HypothesisViolation` for the first row whose support is
    empty or differs from row 0.
    """
    supports = [frozenset(t for t, v in A.row(i).items() if v != INF) for i in range(A.n)]
    for i, s in enumerate(supports):
        if not s:
            raise HypothesisViolation(i, "no finite entries")
        if s != supports[0]:
            raise HypothesisViolation(i, "support differs from row 1")
    return supports[0]


def is_fully_symmetric(A: Tensor) -> bool:
    """True when the value depends only on the multiset of all m indices."""
    seen: dict[tuple, ExtVal] = {}
    for (i, t), v in A.items():
        k = tuple(sorted((i,) + t))
        if seen.setdefault(k, v) != v:
            return False
    return True
