"""Exact two-phase simplex and the two eigenvalue linear programs.

The solver works on equality-form programs::

    min / max  c.x   subject to  A x = b,  x_j >= 0 unless free

Free variables are split into a difference of two nonnegative columns.
Pivoting follows Bland's rule so every run terminates and is reproducible.
Rows are stored sparsely, which keeps the slack-heavy primal program cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .core import Tensor, check_support_hypothesis

ZERO = Fraction(0)
ONE = Fraction(1)


class Status(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class StandardLP:
    objective: list
    rows: list  # sparse rows: dict column -> coefficient
    rhs: list
    free: list
    sense: str = "min"
    var_names: Optional[list] = None
    row_names: Optional[list] = None

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        nvar = len(self.objective)
        if len(self.free) != nvar:
            raise ValueError("one free/nonnegative flag per variable required")
        if len(self.rows) != len(self.rhs):
            raise ValueError("row count and rhs length differ")
        self.objective = [Fraction(v) for v in self.objective]
        self.rhs = [Fraction(v) for v in self.rhs]
        rows = []
        for r in self.rows:
            if not isinstance(r, dict):
                if len(r) != nvar:
                    raise ValueError("dense row length differs from variable count")
                r = {j: v for j, v in enumerate(r) if v != 0}
            if any(not 0 <= j < nvar for j in r):
                raise ValueError("row references unknown variable")
            rows.append({j: Fraction(v) for j, v in r.items() if v != 0})
        self.rows = rows

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def dense(self) -> list:
        return [[r.get(j, ZERO) for j in range(self.num_vars)] for r in self.rows]


@dataclass
class LPSolution:
    status: Status
    value: Optional[Fraction] = None
    x: Optional[list] = None
    duals: Optional[list] = None
    basis: tuple = ()
    pivots: int = 0
    # Farkas vector y (A^T y <= 0 on nonnegative columns, = 0 on free ones,
    # b.y > 0) or an improving ray, depending on status
    certificate: Optional[list] = None
    redundant_rows: tuple = field(default_factory=tuple)


class _Tableau:
    def __init__(self, rows, rhs, ncols):
        self.rows = rows
        self.rhs = rhs
        self.ncols = ncols
        self.basic: list[int] = []
        self.d: dict[int, Fraction] = {}
        self.z = ZERO
        self.pivots = 0

    def set_costs(self, cost):
        d = {j: c for j, c in cost.items() if c != 0}
        z = ZERO
        for r, row in enumerate(self.rows):
            cb = cost.get(self.basic[r], ZERO)
            if cb == 0:
                continue
            for j, v in row.items():
                d[j] = d.get(j, ZERO) - cb * v
            z += cb * self.rhs[r]
        self.d = {j: v for j, v in d.items() if v != 0}
        self.z = z

    def pivot(self, r, q):
        prow = self.rows[r]
        inv = ONE / prow[q]
        if inv != 1:
            for j in prow:
                prow[j] *= inv
            self.rhs[r] *= inv
        prhs = self.rhs[r]
        for k, row in enumerate(self.rows):
            if k == r:
                continue
            f = row.get(q)
            if not f:
                continue
            for j, v in prow.items():
                nv = row.get(j, ZERO) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
            self.rhs[k] -= f * prhs
        f = self.d.get(q)
        if f:
            for j, v in prow.items():
                nv = self.d.get(j, ZERO) - f * v
                if nv:
                    self.d[j] = nv
                else:
                    self.d.pop(j, None)
            self.z += f * prhs
        self.basic[r] = q
        self.pivots += 1

    def run(self, eligible, cap):
        """Bland iterations; returns None at optimum or the unbounded column."""
        while True:
            if self.pivots > cap:
                raise RuntimeError("simplex exceeded its basis-count bound; this is a bug")
            q = min((j for j, v in self.d.items() if v < 0 and eligible(j)), default=None)
            if q is None:
                return None
            best = None
            for r, row in enumerate(self.rows):
                a = row.get(q)
                if a is None or a <= 0:
                    continue
                ratio = self.rhs[r] / a
                if best is None or ratio < best[0] or (ratio == best[0] and self.basic[r] < best[2]):
                    best = (ratio, r, self.basic[r])
            if best is None:
                return q
            self.pivot(best[1], q)


def solve(lp: StandardLP) -> LPSolution:
    """Solve ``lp`` exactly.  Duals satisfy ``value == rhs . duals``."""
    # internal columns: (original var, sign)
    cols: list[tuple[int, int]] = []
    col_of: dict[tuple[int, int], int] = {}
    for j in range(lp.num_vars):
        for s in ((1, -1) if lp.free[j] else (1,)):
            col_of[(j, s)] = len(cols)
            cols.append((j, s))
    nstruct = len(cols)
    flip = -1 if lp.sense == "max" else 1
    cost = {}
    for k, (j, s) in enumerate(cols):
        if lp.objective[j]:
            cost[k] = flip * s * lp.objective[j]

    sigma = [(-1 if b < 0 else 1) for b in lp.rhs]
    rows = []
    for r, row in enumerate(lp.rows):
        t = {}
        for j, v in row.items():
            t[col_of[(j, 1)]] = sigma[r] * v
            if lp.free[j]:
                t[col_of[(j, -1)]] = -sigma[r] * v
        rows.append(t)
    rhs = [sigma[r] * b for r, b in enumerate(lp.rhs)]

    # a structural column that is a +1 unit vector can start in the basis
    occurrences: dict[int, list[int]] = {}
    for r, row in enumerate(rows):
        for k in row:
            occurrences.setdefault(k, []).append(r)
    unit_col = [None] * len(rows)
    for k in range(nstruct):
        occ = occurrences.get(k, [])
        if len(occ) == 1 and rows[occ[0]][k] == 1 and unit_col[occ[0]] is None:
            unit_col[occ[0]] = k
    artificial = set()
    ncols = nstruct
    for r in range(len(rows)):
        if unit_col[r] is None:
            rows[r][ncols] = ONE
            unit_col[r] = ncols
            artificial.add(ncols)
            ncols += 1

    tab = _Tableau(rows, rhs, ncols)
    tab.basic = list(unit_col)
    cap = math.comb(ncols, max(len(rows), 1)) + len(rows)
    phase1_cost = {k: ONE for k in artificial}
    if artificial:
        tab.set_costs(phase1_cost)
        # artificial columns never enter; once they leave they stay out
        tab.run(lambda j: j not in artificial, cap)
        if tab.z > 0:
            w = [phase1_cost.get(unit_col[r], ZERO) - tab.d.get(unit_col[r], ZERO)
                 for r in range(len(rows))]
            farkas = [sigma[r] * w[r] for r in range(len(rows))]
            return LPSolution(Status.INFEASIBLE, pivots=tab.pivots, certificate=farkas)

    # drive zero-level artificials out of the basis, dropping redundant rows
    redundant = []
    for r in range(len(rows)):
        if tab.basic[r] not in artificial:
            continue
        q = min((j for j, v in tab.rows[r].items() if j not in artificial and v != 0), default=None)
        if q is None:
            redundant.append(r)
        else:
            tab.pivot(r, q)
    for r in redundant:
        tab.rows[r] = {}
        tab.rhs[r] = ZERO
        tab.basic[r] = -1

    tab.set_costs(cost)
    q = tab.run(lambda j: j not in artificial, cap)
    basis_struct = tuple(sorted(b for b in tab.basic if 0 <= b < nstruct))
    if q is not None:
        ray_int = [ZERO] * nstruct
        ray_int[q] = ONE
        for r, row in enumerate(tab.rows):
            b = tab.basic[r]
            if 0 <= b < nstruct and q in row:
                ray_int[b] = -row[q]
        ray = [ZERO] * lp.num_vars
        for k, (j, s) in enumerate(cols):
            ray[j] += s * ray_int[k]
        return LPSolution(Status.UNBOUNDED, pivots=tab.pivots, certificate=ray,
                          basis=basis_struct)

    xint = [ZERO] * ncols
    for r, b in enumerate(tab.basic):
        if b >= 0:
            xint[b] = tab.rhs[r]
    x = [ZERO] * lp.num_vars
    for k, (j, s) in enumerate(cols):
        x[j] += s * xint[k]
    duals = []
    for r in range(len(rows)):
        u = unit_col[r]
        yr = cost.get(u, ZERO) - tab.d.get(u, ZERO) if r not in redundant else ZERO
        duals.append(flip * sigma[r] * yr)
    value = flip * tab.z
    return LPSolution(Status.OPTIMAL, value=value, x=x, duals=duals, basis=basis_struct,
                      pivots=tab.pivots, redundant_rows=tuple(redundant))


# -- eigenvalue programs ---------------------------------------------------

def balance_vector(i: int, tail: Sequence[int], n: int) -> list[int]:
    """Coefficients of ``(m-1) e_i - sum_k e_{tail_k}``."""
    v = [0] * n
    v[i] += len(tail)
    for j in tail:
        v[j] -= 1
    return v


def build_primal(A: Tensor) -> StandardLP:
    """Maximise lambda over subeigenvectors.

    Variables are ``x_1..x_n`` and ``lambda`` (all free) followed by one
    nonnegative slack per finite canonical entry.  Row ``t`` reads
    ``lambda + (m-1) x_i - sum x_tail + s_t = a_t``.
    """
    check_support_hypothesis(A)
    n = A.n
    finite = A.finite_items()
    nstruct = n + 1
    rows, rhs, names = [], [], []
    for t, ((i, tail), a) in enumerate(finite):
        row = {nstruct - 1: ONE, nstruct + t: ONE}
        for k, c in enumerate(balance_vector(i, tail, n)):
            if c:
                row[k] = Fraction(c)
        rows.append(row)
        rhs.append(a)
        names.append((i, tail))
    nvar = nstruct + len(finite)
    objective = [ZERO] * nvar
    objective[n] = ONE
    free = [True] * nstruct + [False] * len(finite)
    var_names = [f"x{k + 1}" for k in range(n)] + ["lambda"] + [f"s{t}" for t in range(len(finite))]
    return StandardLP(objective, rows, rhs, free, "max", var_names, names)


def build_dual(A: Tensor) -> StandardLP:
    """Minimise ``sum a.y`` over the finite part of the H-cycle polytope.

    Rows ``0..n-1`` are the balance equalities, row ``n`` the normalisation.
    """
    check_support_hypothesis(A)
    n = A.n
    finite = A.finite_items()
    rows = [dict() for _ in range(n + 1)]
    for t, ((i, tail), _) in enumerate(finite):
        for k, c in enumerate(balance_vector(i, tail, n)):
            if c:
                rows[k][t] = Fraction(c)
        rows[n][t] = ONE
    rhs = [ZERO] * n + [ONE]
    objective = [a for _, a in finite]
    names = [k for k, _ in finite]
    return StandardLP(objective, rows, rhs, [False] * len(finite), "min", names,
                      [f"balance{k + 1}" for k in range(n)] + ["normalize"])
