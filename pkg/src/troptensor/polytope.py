"""Vertices of the H-cycle polytope.

The polytope lives in the coordinates of all index tuples (``full`` mode)
or of canonical ``(i, sorted tail)`` keys (``canonical`` mode).  Its
constraint matrix has rank at most ``n``, so every vertex is a basic
feasible solution supported on at most ``n`` linearly independent
columns; enumeration walks all such supports.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .core import INF, Tensor, canonical_keys
from .errors import NoFiniteVertex, SizeCapExceeded, StructureViolation
from .hypergraph import HCycle

DEFAULT_CAP = 64

MODES = ("canonical", "full")


def column_keys(n: int, m: int, mode: str = "canonical") -> list[tuple]:
    if mode == "canonical":
        return canonical_keys(n, m)
    if mode == "full":
        return list(itertools.product(range(n), repeat=m))
    raise ValueError(f"unknown mode {mode!r}")


def _split(key) -> tuple[int, tuple]:
    """Return ``(first index, tail)`` for either key style."""
    if len(key) == 2 and isinstance(key[1], tuple):
        return key[0], key[1]
    return key[0], tuple(key[1:])


def canonical_key(key) -> tuple:
    i, tail = _split(key)
    return (i, tuple(sorted(tail)))


def _column(key, n: int) -> list[int]:
    i, tail = _split(key)
    col = [0] * (n + 1)
    col[i] += len(tail)
    for j in tail:
        col[j] -= 1
    col[n] = 1
    return col


@dataclass(frozen=True)
class PolytopeVertex:
    coords: tuple  # sorted ((key, Fraction), ...) over the support
    mode: str = "canonical"

    @classmethod
    def from_dict(cls, coords: dict, mode: str = "canonical") -> "PolytopeVertex":
        return cls(tuple(sorted((k, Fraction(v)) for k, v in coords.items() if v != 0)), mode)

    def as_dict(self) -> dict:
        return dict(self.coords)

    @property
    def support(self) -> tuple:
        return tuple(k for k, _ in self.coords)

    @property
    def nnz(self) -> int:
        return len(self.coords)

    def denominator_lcm(self) -> int:
        return math.lcm(*(v.denominator for _, v in self.coords))

    def to_h_cycle(self) -> HCycle:
        """Scale by the denominator lcm to get an integral edge multiset."""
        L = self.denominator_lcm()
        cyc = HCycle()
        for k, v in self.coords:
            cyc[canonical_key(k)] += int(v * L)
        return cyc

    def to_canonical(self) -> "PolytopeVertex":
        if self.mode == "canonical":
            return self
        out: dict = {}
        for k, v in self.coords:
            ck = canonical_key(k)
            out[ck] = out.get(ck, Fraction(0)) + v
        return PolytopeVertex.from_dict(out, "canonical")

    def is_feasible(self, n: int) -> bool:
        total = [Fraction(0)] * (n + 1)
        for k, v in self.coords:
            if v < 0:
                return False
            for r, c in enumerate(_column(k, n)):
                total[r] += c * v
        return all(t == 0 for t in total[:n]) and total[n] == 1


def enumerate_vertices(n: int, m: int, mode: str = "canonical",
                       cap: int = DEFAULT_CAP) -> list[PolytopeVertex]:
    """All vertices, sorted by support size then coordinates."""
    keys = column_keys(n, m, mode)
    if len(keys) > cap:
        raise SizeCapExceeded(f"{len(keys)} columns exceed the cap of {cap}")
    cols = [_column(k, n) for k in keys]
    rhs = [0] * n + [1]
    found = []
    for size in range(1, n + 1):
        for support in itertools.combinations(range(len(keys)), size):
            A = [[cols[j][r] for j in support] for r in range(n + 1)]
            res = linalg.solve(A, rhs)
            if not res.unique or any(v <= 0 for v in res.solution):
                continue
            found.append(PolytopeVertex(tuple((keys[j], v) for j, v in zip(support, res.solution)), mode))
    return found


@dataclass
class StructureReport:
    vertices: int
    max_nonzeros: int
    has_n_nonzero_vertex: bool
    n: int

    @property
    def passed(self) -> bool:
        return self.has_n_nonzero_vertex


def check_vertex_structure(vertices: Iterable[PolytopeVertex], n: int) -> StructureReport:
    """Each vertex may use each first index at most once.

    Raises :class:`StructureViolation` on the first vertex that does not.
    """
    vertices = list(vertices)
    for v in vertices:
        firsts = [_split(k)[0] for k in v.support]
        if len(firsts) != len(set(firsts)):
            raise StructureViolation(f"vertex {v.as_dict()} repeats a first index")
    max_nnz = max((v.nnz for v in vertices), default=0)
    return StructureReport(len(vertices), max_nnz, any(v.nnz == n for v in vertices), n)


def cyclic_vertex(n: int, m: int, mode: str = "canonical") -> PolytopeVertex:
    """Uniform weight 1/n on the windows ``(s_j, s_{j+1}, ..., s_{j+m-1})``
    of the periodic sequence ``0, 1, ..., n-1, 0, 1, ...``."""
    if n < 1 or m < 2:
        raise ValueError("need n >= 1 and m >= 2")
    coords = {}
    for j in range(n):
        window = tuple((j + k) % n for k in range(m))
        key = window if mode == "full" else canonical_key(window)
        coords[key] = coords.get(key, Fraction(0)) + Fraction(1, n)
    return PolytopeVertex.from_dict(coords, mode)


def vertex_value(A: Tensor, vertex: PolytopeVertex):
    """Objective ``sum a * y``; ``inf`` when the vertex touches an infinite entry."""
    total = Fraction(0)
    for k, v in vertex.coords:
        a = A[canonical_key(k)]
        if a == INF:
            return INF
        total += a * v
    return total


def best_vertex(A: Tensor, vertices: Sequence[PolytopeVertex]) -> tuple[Fraction, PolytopeVertex]:
    best = None
    for v in vertices:
        val = vertex_value(A, v)
        if val == INF:
            continue
        if best is None or val < best[0]:
            best = (val, v)
    if best is None:
        raise NoFiniteVertex("every vertex touches an infinite entry")
    return best


def eigenvalue_via_vertices(A: Tensor, vertices: Sequence[PolytopeVertex] | None = None) -> Fraction:
    """Minimum of the tensor's linear functional over the polytope vertices."""
    if vertices is None:
        vertices = enumerate_vertices(A.n, A.m)
    return best_vertex(A, vertices)[0]


def default_rmax(n: int, m: int, cap: int = DEFAULT_CAP) -> int:
    """Longest integral H-cycle obtained by scaling a canonical vertex."""
    return max(v.denominator_lcm() for v in enumerate_vertices(n, m, "canonical", cap))
