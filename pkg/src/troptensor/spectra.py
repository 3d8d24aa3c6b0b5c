"""Tropical H- and E-eigenpairs of tensors.

The H-eigenvalue comes from the exact linear program over the H-cycle
polytope; its dual multipliers give a subeigenvector.  Genuine
eigenvectors are found either by iterating the normalised min-plus map or
by enumerating tight patterns (one argmin tail per row) and solving the
resulting linear systems exactly.

Vectors are normalised so that the last coordinate is zero.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import lp
from .linalg import solve
from .core import (INF, Tensor, as_rational, check_support_hypothesis, is_fully_symmetric,
                   tropical_apply)
from .errors import LambdaMismatch, NotConverged, NotSymmetric, PreconditionFailed, TropTensorError

log = logging.getLogger(__name__)


class Kind(str, enum.Enum):
    EIGENVECTOR = "eigenvector"
    SUBEIGENVECTOR = "subeigenvector"


@dataclass(frozen=True)
class Eigenpair:
    x: tuple
    lam: Fraction
    kind: Kind = Kind.EIGENVECTOR


@dataclass(frozen=True)
class EEigenpair:
    x: tuple
    lam: Fraction


@dataclass(frozen=True)
class HEigenvalue:
    lam: Fraction
    witness: Eigenpair
    dual_point: dict  # canonical key -> positive Fraction
    pivots: int = 0


def normalize(x: Sequence) -> tuple:
    x = [as_rational(v) for v in x]
    return tuple(v - x[-1] for v in x)


def h_eigenvalue(A: Tensor) -> HEigenvalue:
    """Exact tropical H-eigenvalue with a subeigenvector and an optimal
    point of the H-cycle polytope."""
    prog = lp.build_dual(A)
    sol = lp.solve(prog)
    if sol.status is not lp.Status.OPTIMAL:
        # feasible and bounded whenever the support hypothesis holds
        raise TropTensorError(f"eigenvalue program ended {sol.status.value}")
    n = A.n
    x = normalize(sol.duals[:n])
    lam = sol.value
    if sol.duals[n] != lam:
        raise TropTensorError("normalisation multiplier disagrees with optimal value")
    dual_point = {prog.var_names[j]: v for j, v in enumerate(sol.x) if v}
    return HEigenvalue(lam, Eigenpair(x, lam, Kind.SUBEIGENVECTOR), dual_point, sol.pivots)


def h_eigenvalue_symmetric(A: Tensor) -> Fraction:
    """For fully symmetric tensors the eigenvalue is the smallest entry."""
    if not is_fully_symmetric(A):
        raise NotSymmetric("tensor is not invariant under all index permutations")
    return A.min_entry()


def row_slacks(A: Tensor, x: Sequence, lam, power: int) -> list:
    """``rowmin_i - (lam + power * x_i)`` for every row."""
    y = tropical_apply(A, x)
    x = [as_rational(v) for v in x]
    lam = as_rational(lam)
    return [yi - (lam + power * xi) for yi, xi in zip(y, x)]


@dataclass
class Verification:
    passed: bool
    failing_rows: list
    slack: list


def verify_h_eigenpair(A: Tensor, x: Sequence, lam) -> Verification:
    """Check every row minimum equals ``lam + (m-1) x_i`` exactly."""
    slack = row_slacks(A, x, lam, A.m - 1)
    bad = [i for i, s in enumerate(slack) if s != 0]
    return Verification(not bad, bad, slack)


def verify_e_eigenpair(A: Tensor, x: Sequence, lam) -> Verification:
    slack = row_slacks(A, x, lam, 1)
    bad = [i for i, s in enumerate(slack) if s != 0]
    return Verification(not bad, bad, slack)


def is_subeigenvector(A: Tensor, x: Sequence, lam) -> bool:
    return all(s >= 0 for s in row_slacks(A, x, lam, A.m - 1))


def f_map(A: Tensor, x: Sequence) -> tuple:
    """One step of ``x -> (A x^{m-1}) / (m-1)``, normalised to ``x_n = 0``."""
    check_support_hypothesis(A)
    y = tropical_apply(A, x)
    return normalize([v / (A.m - 1) for v in y])


def _implied_lambda(A: Tensor, x: Sequence):
    # with x_n = 0 the last row pins lambda
    return tropical_apply(A, x)[-1] - (A.m - 1) * as_rational(x[-1])


def iterate_f(A: Tensor, x0: Sequence, max_iter: int = 1000, lam=None) -> Eigenpair:
    """Iterate the min-plus map until it reaches a fixed point.

    After each step the current argmin pattern is solved exactly; when the
    solution verifies, it is a fixed point and is returned at once.
    Raises :class:`NotConverged` when ``max_iter`` steps do not suffice.
    """
    check_support_hypothesis(A)
    x = normalize(x0)
    for it in range(max_iter + 1):
        if f_map(A, x) == x:
            return _checked(A, Eigenpair(x, _implied_lambda(A, x)), lam)
        if it == max_iter:
            break
        x = f_map(A, x)
        polished = _polish(A, x)
        if polished is not None:
            log.debug("pattern solve verified after %d steps", it + 1)
            return _checked(A, polished, lam)
    raise NotConverged(f"no fixed point within {max_iter} iterations")


def _checked(A, pair, lam):
    if not verify_h_eigenpair(A, pair.x, pair.lam).passed:
        raise TropTensorError("fixed point failed verification")
    if lam is not None and pair.lam != lam:
        raise LambdaMismatch(f"eigenvector implies {pair.lam}, expected {lam}")
    return pair


def _argmin_pattern(A: Tensor, x) -> list:
    pattern = []
    for i in range(A.n):
        best = None
        for t, a in A.row(i).items():
            if a == INF:
                continue
            v = a + sum(x[j] for j in t)
            if best is None or v < best[0]:
                best = (v, t)
        pattern.append(best[1])
    return pattern


def _polish(A: Tensor, x) -> Optional[Eigenpair]:
    n, p = A.n, A.m - 1
    pattern = _argmin_pattern(A, x)
    rows, rhs = [], []
    for i, t in enumerate(pattern):
        rows.append(_equation(n, i, t, p, True))
        rhs.append(-A[(i, t)])
    res = solve(rows, rhs)
    if not res.unique:
        return None
    cand = tuple(res.solution[: n - 1]) + (Fraction(0),)
    lam = res.solution[n - 1]
    if verify_h_eigenpair(A, cand, lam).passed:
        return Eigenpair(cand, lam)
    return None


def _equation(n, i, tail, power, lambda_unknown):
    """Coefficients over ``x_1..x_{n-1}`` (and ``lambda`` if unknown)."""
    row = [Fraction(0)] * (n - 1 + (1 if lambda_unknown else 0))
    for j in tail:
        if j < n - 1:
            row[j] += 1
    if i < n - 1:
        row[i] -= power
    if lambda_unknown:
        row[-1] = Fraction(-1)
    return row


class _Echelon:
    """Incremental reduced echelon form; cheap to copy for backtracking."""

    __slots__ = ("ncols", "pivots")

    def __init__(self, ncols, pivots=None):
        self.ncols = ncols
        self.pivots = dict(pivots or {})  # pivot column -> (row coeffs, rhs)

    def copy(self):
        return _Echelon(self.ncols, self.pivots)

    @property
    def rank(self):
        return len(self.pivots)

    def add(self, row, rhs) -> bool:
        """Add an equation; False when it contradicts the ones already held."""
        row = list(row)
        for c, (prow, prhs) in self.pivots.items():
            f = row[c]
            if f:
                row = [a - f * b for a, b in zip(row, prow)]
                rhs -= f * prhs
        c = next((k for k, v in enumerate(row) if v), None)
        if c is None:
            return rhs == 0
        inv = 1 / row[c]
        row = [v * inv for v in row]
        rhs *= inv
        new = {}
        for pc, (prow, prhs) in self.pivots.items():
            f = prow[c]
            if f:
                prow = [a - f * b for a, b in zip(prow, row)]
                prhs -= f * rhs
            new[pc] = (prow, prhs)
        new[c] = (row, rhs)
        self.pivots = new
        return True

    def particular(self):
        x = [Fraction(0)] * self.ncols
        for c, (_, rhs) in self.pivots.items():
            x[c] = rhs
        return x


@dataclass
class PatternSearch:
    solutions: list = field(default_factory=list)
    degenerate: int = 0
    nodes: int = 0


def _pattern_search(A: Tensor, support, power: int, lam) -> PatternSearch:
    """Depth-first search over tight patterns with incremental elimination.

    ``lam`` known: unknowns ``x_1..x_{n-1}``.  ``lam`` None: ``lambda`` is an
    extra unknown.  Once the unknowns are pinned, the candidate is checked
    directly instead of branching over the remaining rows.
    """
    n = A.n
    lam_unknown = lam is None
    ncols = n - 1 + (1 if lam_unknown else 0)
    tails_ = sorted(support)
    out = PatternSearch()
    seen: dict = {}  # (x, lam) -> index into out.solutions
    rows = [[(t, a) for t, a in A.row(i).items() if a != INF] for i in range(n)]

    def tight(x, l):
        # early exit on the first violated row
        for i, row in enumerate(rows):
            target = l + power * x[i]
            hit = False
            for t, a in row:
                v = a + sum(x[j] for j in t)
                if v < target:
                    return False
                hit = hit or v == target
            if not hit:
                return False
        return True

    def emit(sol, degenerate):
        if lam_unknown:
            x, l = tuple(sol[: n - 1]) + (Fraction(0),), sol[-1]
        else:
            x, l = tuple(sol) + (Fraction(0),), lam
        if degenerate:
            out.degenerate += 1
        k = seen.get((x, l))
        if k is not None:
            if not degenerate:
                out.solutions[k] = (x, l, False)
            return
        if tight(x, l):
            seen[(x, l)] = len(out.solutions)
            out.solutions.append((x, l, degenerate))

    def dfs(i, ech):
        out.nodes += 1
        if ech.rank == ncols:
            emit(ech.particular(), False)
            return
        if i == n:
            emit(ech.particular(), True)
            return
        for t in tails_:
            rhs = -A[(i, t)] + (0 if lam_unknown else lam)
            nxt = ech.copy()
            if nxt.add(_equation(n, i, t, power, lam_unknown), rhs):
                dfs(i + 1, nxt)

    dfs(0, _Echelon(ncols))
    return out


@dataclass
class EigenvectorSearch:
    eigenpairs: list
    degenerate_patterns: int
    nodes: int

    @property
    def degenerate(self) -> bool:
        return self.degenerate_patterns > 0


def h_eigenvectors(A: Tensor, lam=None) -> EigenvectorSearch:
    """All eigenvectors reachable from nonsingular tight patterns.

    Singular consistent patterns are counted in ``degenerate_patterns``;
    their particular solution (free coordinates zero) is kept only if it
    verifies.
    """
    support = check_support_hypothesis(A)
    lp_lam = h_eigenvalue(A).lam
    if lam is None:
        lam = lp_lam
    lam = as_rational(lam)
    res = _pattern_search(A, support, A.m - 1, lam)
    if res.solutions and lam != lp_lam:
        raise LambdaMismatch(f"eigenvectors verify at {lam} but the eigenvalue is {lp_lam}")
    pairs = [Eigenpair(x, lam) for x, _, _ in res.solutions]
    return EigenvectorSearch(pairs, res.degenerate, res.nodes)


def find_h_eigenvector(A: Tensor, max_iter: int = 1000, x0=None) -> Eigenpair:
    """Cheap iteration first, exhaustive pattern search as the fallback."""
    ev = h_eigenvalue(A)
    start = ev.witness.x if x0 is None else x0
    try:
        return iterate_f(A, start, max_iter, lam=ev.lam)
    except NotConverged:
        log.info("map iteration did not converge; enumerating tight patterns")
    found = h_eigenvectors(A, ev.lam)
    if not found.eigenpairs:
        raise NotConverged("no isolated eigenvector; only degenerate patterns")
    return found.eigenpairs[0]


@dataclass
class SymmetricStructure:
    index_set: frozenset
    equal_on_index_set: bool
    below_off_index_set: bool

    @property
    def passed(self) -> bool:
        return self.equal_on_index_set and self.below_off_index_set


def minimal_index_set(A: Tensor) -> frozenset:
    """Index set shared by all minimal entries; PreconditionFailed otherwise."""
    lo = A.min_entry()
    sets = {frozenset((i,) + t) for (i, t), v in A.items() if v == lo}
    if len(sets) != 1:
        raise PreconditionFailed("minimal entries use more than one index set")
    return next(iter(sets))


def symmetric_structure_check(A: Tensor, x: Sequence) -> SymmetricStructure:
    if not is_fully_symmetric(A):
        raise NotSymmetric("tensor is not invariant under all index permutations")
    I = minimal_index_set(A)
    x = [as_rational(v) for v in x]
    on = [x[i] for i in I]
    off = [x[j] for j in range(A.n) if j not in I]
    equal = len(set(on)) == 1
    below = not off or max(on) <= min(off)
    return SymmetricStructure(I, equal, below)


def e_eigenpairs(A: Tensor, return_degenerate: bool = False):
    """Every isolated tropical E-eigenpair ``(x, lam)`` with ``x_n = 0``.

    Each tight pattern gives a square system in ``x_1..x_{n-1}, lam``.
    Singular patterns describe families rather than isolated pairs and are
    only counted.
    """
    support = check_support_hypothesis(A)
    res = _pattern_search(A, support, 1, None)
    pairs = sorted((EEigenpair(x, l) for x, l, deg in res.solutions if not deg),
                   key=lambda p: (p.lam, p.x))
    if return_degenerate:
        return pairs, res.degenerate
    return pairs
