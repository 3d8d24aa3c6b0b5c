"""Weighted F-hypergraphs of tensors and their balanced (H-)cycles.

An F-hyperedge has one tail vertex and a head multiset of ``m - 1``
vertices.  A multiset of such edges is an H-cycle when its balance vector
``sum mult * ((m-1) e_tail - sum e_head)`` vanishes.  Cycles are kept as
multiplicity maps; the order in which edges are listed never matters.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations_with_replacement
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .core import INF, Tensor, as_rational, canonical_keys
from .errors import NoCycleFound

Edge = tuple  # (tail, sorted head tuple)


@dataclass(frozen=True)
class Hyperedge:
    tail: int
    head: tuple
    weight: object

    @property
    def key(self) -> Edge:
        return (self.tail, self.head)


class FHypergraph:
    def __init__(self, n: int, m: int, edges: Iterable[Hyperedge]):
        self.n = n
        self.m = m
        self.edges = list(edges)
        self._weight = {e.key: e.weight for e in self.edges}

    def weight(self, edge: Edge):
        tail, head = edge
        return self._weight[(tail, tuple(sorted(head)))]

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)


class HCycle(Counter):
    """Multiplicity map from canonical edges ``(tail, head)`` to counts."""

    @property
    def length(self) -> int:
        return sum(self.values())

    def balance(self, n: int) -> list[int]:
        return balance_of(self, n)

    def total_weight(self, H: FHypergraph):
        return sum((H.weight(e) * k for e, k in self.items()), Fraction(0))

    def mean_weight(self, H: FHypergraph):
        return self.total_weight(H) / self.length


def build_hypergraph(A: Tensor) -> FHypergraph:
    return FHypergraph(A.n, A.m, (Hyperedge(i, t, A[(i, t)]) for i, t in canonical_keys(A.n, A.m)))


def _as_counter(edges) -> Counter:
    if isinstance(edges, Mapping):
        items = edges.items()
    else:
        items = ((e, 1) for e in edges)
    out: Counter = Counter()
    for e, k in items:
        if isinstance(e, Hyperedge):
            e = e.key
        out[(e[0], tuple(sorted(e[1])))] += k
    return out


def balance_of(edges, n: int | None = None) -> list[int]:
    c = _as_counter(edges)
    if n is None:
        n = 1 + max(max((t,) + h) for t, h in c)
    v = [0] * n
    for (tail, head), k in c.items():
        v[tail] += k * len(head)
        for j in head:
            v[j] -= k
    return v


def is_h_cycle(edges: Union[Mapping, Iterable], n: int | None = None) -> bool:
    """True iff the (nonempty) edge multiset has zero balance vector."""
    c = _as_counter(edges)
    if not c or any(k <= 0 for k in c.values()):
        return False
    return not any(balance_of(c, n))


def tight_cycle(vertices: Sequence[int], m: int) -> HCycle:
    """Edges ``(v_j, {v_{j+1}, ..., v_{j+m-1}})`` with indices taken mod r."""
    r = len(vertices)
    if r < 1:
        raise ValueError("a tight cycle needs at least one vertex")
    cyc = HCycle()
    for j in range(r):
        head = tuple(sorted(vertices[(j + k) % r] for k in range(1, m)))
        cyc[(vertices[j], head)] += 1
    return cyc


def min_h_cycle(H: FHypergraph, rmax: int) -> tuple[Fraction, HCycle]:
    """Exhaustive minimum mean weight over H-cycles of length at most ``rmax``.

    Dynamic program over (length, partial balance vector) keeping the
    lightest multiset reaching each state; edges of infinite weight are
    skipped.  Returns the minimum mean and one cycle attaining it.
    """
    if rmax < 1:
        raise ValueError("rmax must be at least 1")
    n, step = H.n, H.m - 1
    moves = []
    for e in H.edges:
        if e.weight == INF:
            continue
        delta = [0] * n
        delta[e.tail] += step
        for j in e.head:
            delta[j] -= 1
        moves.append((e.key, tuple(delta), e.weight))
    zero = (0,) * n
    # layer[state] = (weight, parent_state, edge)
    layers = [{zero: (Fraction(0), None, None)}]
    best = None
    for r in range(1, rmax + 1):
        bound = step * (rmax - r)
        nxt: dict = {}
        for state, (w, _, _) in layers[-1].items():
            for key, delta, ew in moves:
                s = tuple(a + b for a, b in zip(state, delta))
                if any(abs(c) > bound for c in s):
                    continue
                nw = w + ew
                cur = nxt.get(s)
                if cur is None or nw < cur[0]:
                    nxt[s] = (nw, state, key)
        layers.append(nxt)
        if zero in nxt:
            mean = nxt[zero][0] / r
            if best is None or mean < best[0]:
                best = (mean, r)
    if best is None:
        raise NoCycleFound(f"no finite-weight H-cycle of length <= {rmax}")
    mean, r = best
    cyc = HCycle()
    state = zero
    for layer in range(r, 0, -1):
        _, parent, key = layers[layer][state]
        cyc[key] += 1
        state = parent
    return mean, cyc


def min_h_cycle_mean(H: FHypergraph, rmax: int) -> Fraction:
    return min_h_cycle(H, rmax)[0]


def all_h_cycles(H: FHypergraph, rmax: int):
    """Yield every finite-weight H-cycle with total multiplicity <= rmax.

    Plain enumeration of multisets; only sensible for tiny hypergraphs.
    """
    edges = [e.key for e in H.edges if e.weight != INF]
    for r in range(1, rmax + 1):
        for combo in combinations_with_replacement(edges, r):
            if not any(balance_of(combo, H.n)):
                yield HCycle(combo)


def karp_min_cycle_mean(M) -> Fraction:
    """Minimum mean weight of a directed cycle of the matrix digraph.

    ``M[i][j]`` is the weight of arc ``i -> j`` (``inf`` for no arc).  Uses
    Karp's recurrence with every vertex as a zero-cost start.
    """
    n = len(M)
    W = [[as_rational(v) for v in row] for row in M]
    D = [[Fraction(0)] * n]
    for _ in range(n):
        prev = D[-1]
        cur = []
        for v in range(n):
            best = INF
            for u in range(n):
                if prev[u] != INF and W[u][v] != INF:
                    c = prev[u] + W[u][v]
                    if c < best:
                        best = c
            cur.append(best)
        D.append(cur)
    result = None
    for v in range(n):
        if D[n][v] == INF:
            continue
        worst = max((D[n][v] - D[k][v]) / (n - k) for k in range(n) if D[k][v] != INF)
        if result is None or worst < result:
            result = worst
    if result is None:
        raise NoCycleFound("digraph has no finite-weight cycle")
    return result


def matrix_of(A: Tensor) -> list[list]:
    """Weight matrix of an order-2 tensor."""
    if A.m != 2:
        raise ValueError("only order-2 tensors are matrices")
    return [[A[(i, (j,))] for j in range(A.n)] for i in range(A.n)]


__all__ = [
    "Hyperedge",
    "FHypergraph",
    "HCycle",
    "build_hypergraph",
    "balance_of",
    "is_h_cycle",
    "tight_cycle",
    "min_h_cycle",
    "min_h_cycle_mean",
    "all_h_cycles",
    "karp_min_cycle_mean",
    "matrix_of",
]
