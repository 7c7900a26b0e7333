"""Exact integer lattice computations for abelianized presentations.

Everything here runs on arbitrary-precision Python integers; diagonal
reduction can blow entries up even on small lattices, so fixed-width
arithmetic is never acceptable.

Two engines share the same pivot discipline (smallest absolute value,
ties broken by lowest (row, column)):

* :func:`smith_normal_form` -- dense, returns the diagonal together with
  unimodular transforms ``U`` and ``V`` with ``U A V = D`` and the exact
  determinants of both transforms.  Used on small matrices and wherever a
  certificate is wanted.
* :class:`LatticeReduction` -- sparse, column transform only.  Row
  operations never change the row space, so tracking ``V`` alone supports
  membership tests ``v in rowspace(A)`` (forced-trivial generators) and
  rank questions on matrices with thousands of rows.  Unit pivots are
  eaten first with a fill-minimizing choice; whatever dense core remains
  is finished by the dense engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tietze import TruncatedPresentation
from .words import Gen, Word


@dataclass
class IntegerMatrix:
    entries: list[list[int]]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @staticmethod
    def identity(n: int) -> "IntegerMatrix":
        return IntegerMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "IntegerMatrix":
        return IntegerMatrix([[0] * cols for _ in range(rows)])

    def copy(self) -> "IntegerMatrix":
        return IntegerMatrix([row[:] for row in self.entries])

    def matmul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        assert self.cols == other.rows
        out = [[0] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.entries):
            acc = out[i]
            for t, val in enumerate(row):
                if val:
                    orow = other.entries[t]
                    for j in range(other.cols):
                        acc[j] += val * orow[j]
        return IntegerMatrix(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerMatrix) and self.entries == other.entries


def determinant(a: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = a.rows
    assert n == a.cols
    m = [row[:] for row in a.entries]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if m[t][t] == 0:
            for i in range(t + 1, n):
                if m[i][t]:
                    m[t], m[i] = m[i], m[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]) // prev
            m[i][t] = 0
        prev = m[t][t]
    return sign * m[n - 1][n - 1]


@dataclass
class SNFResult:
    d: IntegerMatrix
    u: IntegerMatrix
    v: IntegerMatrix
    invariant_factors: list[int]
    free_rank: int


def smith_normal_form(a: IntegerMatrix) -> SNFResult:
    """Diagonalize with unimodular row and column transforms.

    Pivot rule: smallest nonzero absolute value in the live block, ties by
    lowest (row, column).  The output is deterministic and satisfies the
    divisibility chain d1 | d2 | ... with nonnegative diagonal.
    """
    rows, cols = a.rows, a.cols
    d = [row[:] for row in a.entries]
    u = IntegerMatrix.identity(rows).entries
    v = IntegerMatrix.identity(cols).entries

    def swap_rows(i, j):
        if i != j:
            d[i], d[j] = d[j], d[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in d:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def row_op(i, j, q):
        # row_i -= q * row_j
        if q:
            di, dj = d[i], d[j]
            for t in range(cols):
                di[t] -= q * dj[t]
            ui, uj = u[i], u[j]
            for t in range(rows):
                ui[t] -= q * uj[t]

    def col_op(i, j, q):
        # col_i -= q * col_j
        if q:
            for row in d:
                row[i] -= q * row[j]
            for row in v:
                row[i] -= q * row[j]

    def find_pivot(t):
        best = None
        where = None
        for i in range(t, rows):
            row = d[i]
            for j in range(t, cols):
                val = abs(row[j])
                if val and (best is None or val < best):
                    best, where = val, (i, j)
        return where

    t = 0
    while True:
        where = find_pivot(t)
        if where is None:
            break
        swap_rows(t, where[0])
        swap_cols(t, where[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    row_op(i, t, d[i][t] // d[t][t])
                    dirty = dirty or bool(d[i][t])
            for j in range(t + 1, cols):
                if d[t][j]:
                    col_op(j, t, d[t][j] // d[t][t])
                    dirty = dirty or bool(d[t][j])
            if not dirty and all(d[i][t] == 0 for i in range(t + 1, rows)) \
                    and all(d[t][j] == 0 for j in range(t + 1, cols)):
                break
            where = find_pivot(t)
            swap_rows(t, where[0])
            swap_cols(t, where[1])
        # enforce divisibility of the remaining block by the pivot
        fixed = True
        pivot = d[t][t]
        for i in range(t + 1, rows):
            row = d[i]
            for j in range(t + 1, cols):
                if row[j] % pivot:
                    row_op(t, i, -1)  # fold row i into row t and keep reducing
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if d[t][t] < 0:
                for j in range(cols):
                    d[t][j] = -d[t][j]
                for j in range(rows):
                    u[t][j] = -u[t][j]
            t += 1
            if t == min(rows, cols):
                break
    diag = [d[i][i] for i in range(min(rows, cols))]
    factors = [x for x in diag if x]
    return SNFResult(IntegerMatrix(d), IntegerMatrix(u), IntegerMatrix(v),
                     factors, cols - len(factors))


# ---------------------------------------------------------------------------
# sparse engine


class LatticeReduction:
    """Row-space reduction of an integer matrix, column transform tracked.

    After :meth:`run`, ``pivots`` maps a column index to the (positive)
    diagonal entry sitting in it, and ``v`` is a unimodular ncols x ncols
    matrix such that a vector x lies in the row space of the input iff
    ``x @ v`` is divisible entrywise by the pivot diagonal and vanishes on
    non-pivot columns.
    """

    def __init__(self, rows: list[dict[int, int]], ncols: int, track_v: bool = True):
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {
            i: {j: val for j, val in row.items() if val} for i, row in enumerate(rows)
        }
        self.rows = {i: row for i, row in self.rows.items() if row}
        self.col_support: dict[int, set[int]] = {}
        for i, row in self.rows.items():
            for j in row:
                self.col_support.setdefault(j, set()).add(i)
        self.track_v = track_v
        self.v = IntegerMatrix.identity(ncols) if track_v else None
        self.pivots: dict[int, int] = {}
        self.done = False

    def _row_axpy(self, target: int, source: int, q: int) -> None:
        # row_target -= q * row_source
        trow = self.rows[target]
        for j, val in self.rows[source].items():
            new = trow.get(j, 0) - q * val
            if new:
                if j not in trow:
                    self.col_support.setdefault(j, set()).add(target)
                trow[j] = new
            elif j in trow:
                del trow[j]
                self.col_support[j].discard(target)
        if not trow:
            del self.rows[target]

    def _col_axpy(self, target: int, source: int, q: int) -> None:
        # col_target -= q * col_source  (matrix and v)
        for i in set(self.col_support.get(source, ())):
            row = self.rows[i]
            val = row.get(source, 0)
            if not val:
                continue
            new = row.get(target, 0) - q * val
            if new:
                if target not in row:
                    self.col_support.setdefault(target, set()).add(i)
                row[target] = new
            elif target in row:
                del row[target]
                self.col_support[target].discard(i)
        if self.track_v:
            ventries = self.v.entries
            for r in range(self.ncols):
                ventries[r][target] -= q * ventries[r][source]

    def _pick_unit_pivot(self):
        best = None
        where = None
        for i, row in self.rows.items():
            rlen = len(row)
            for j, val in row.items():
                if val in (1, -1):
                    fill = (len(self.col_support[j]) - 1) * (rlen - 1)
                    key = (fill, j, i)
                    if best is None or key < best:
                        best, where = key, (i, j)
        return where

    def run(self) -> "LatticeReduction":
        while True:
            where = self._pick_unit_pivot()
            if where is None:
                break
            i, j = where
            val = self.rows[i][j]
            for other in sorted(self.col_support.get(j, set()) - {i}):
                q = self.rows[other][j] * val  # val in {1,-1}: exact quotient
                self._row_axpy(other, i, q)
            for col in sorted(set(self.rows[i]) - {j}):
                q = self.rows[i][col] * val
                self._col_axpy(col, j, q)
            self.pivots[j] = 1
            del self.rows[i]
            self.col_support.pop(j, None)
        self._finish_core()
        self.done = True
        return self

    def _finish_core(self) -> None:
        if not self.rows:
            return
        live_rows = sorted(self.rows)
        live_cols = sorted({j for row in self.rows.values() for j in row})
        dense = IntegerMatrix(
            [[self.rows[i].get(j, 0) for j in live_cols] for i in live_rows]
        )
        core = smith_normal_form(dense)
        for pos in range(min(core.d.rows, core.d.cols)):
            val = core.d.entries[pos][pos]
            if val:
                self.pivots[live_cols[pos]] = val
        if self.track_v:
            # fold the core column transform into the global one
            old_cols = [[self.v.entries[r][j] for j in live_cols] for r in range(self.ncols)]
            for r in range(self.ncols):
                vrow = self.v.entries[r]
                orow = old_cols[r]
                for t, j in enumerate(live_cols):
                    acc = 0
                    for s in range(len(live_cols)):
                        o = orow[s]
                        if o:
                            acc += o * core.v.entries[s][t]
                    vrow[j] = acc
        self.rows.clear()

    # -- queries ------------------------------------------------------------

    def rank(self) -> int:
        return len(self.pivots)

    def invariant_factors(self) -> list[int]:
        return sorted(self.pivots.values())

    def contains(self, vec: dict[int, int]) -> bool:
        """Is the vector in the integer row space of the input matrix?"""
        assert self.track_v and self.done
        ventries = self.v.entries
        image = [0] * self.ncols
        for r, val in vec.items():
            if val:
                vrow = ventries[r]
                for j in range(self.ncols):
                    image[j] += val * vrow[j]
        for j, y in enumerate(image):
            d = self.pivots.get(j)
            if d is None:
                if y:
                    return False
            elif y % d:
                return False
        return True


# ---------------------------------------------------------------------------
# presentations -> matrices


@dataclass
class RelationMatrix:
    gens: list[Gen]
    index: dict[Gen, int]
    rows: list[dict[int, int]]

    def dense(self) -> IntegerMatrix:
        return IntegerMatrix(
            [[row.get(j, 0) for j in range(len(self.gens))] for row in self.rows]
        )


def format_matrix(mat: "RelationMatrix") -> str:
    """Plain text rows for external cross-checking: a header naming the
    column generators, then one whitespace-separated dense row per relator."""
    from .words import fmt_gen

    lines = ["# columns: " + " ".join(fmt_gen(g) for g in mat.gens)]
    for row in mat.rows:
        lines.append(" ".join(str(row.get(j, 0)) for j in range(len(mat.gens))))
    return "\n".join(lines) + "\n"


def exponent_row(w: Word, index: dict[Gen, int]) -> dict[int, int]:
    row: dict[int, int] = {}
    for g, e in w.letters:
        j = index[g]
        row[j] = row.get(j, 0) + e
    return {j: v for j, v in row.items() if v}


def relation_matrix(p: TruncatedPresentation) -> RelationMatrix:
    """One row per relator, one column per generator, entries are exponent
    sums.  Commutator-shaped relators contribute zero rows by construction."""
    gens = sorted(p.gens)
    index = {g: j for j, g in enumerate(gens)}
    rows = [exponent_row(p.relators[rid], index) for rid in sorted(p.relators)]
    return RelationMatrix(gens, index, rows)


def abelian_invariants_of_matrix(rows: list[dict[int, int]], ncols: int) -> tuple[int, list[int]]:
    red = LatticeReduction(rows, ncols, track_v=False).run()
    torsion = [d for d in red.invariant_factors() if d > 1]
    return ncols - red.rank(), torsion


def abelian_invariants(p: TruncatedPresentation) -> tuple[int, list[int]]:
    """(free rank, torsion coefficients) of the abelianized presentation."""
    mat = relation_matrix(p)
    return abelian_invariants_of_matrix(mat.rows, len(mat.gens))


def matrix_rank(rows: list[dict[int, int]], ncols: int) -> int:
    return LatticeReduction(rows, ncols, track_v=False).run().rank()


def subgroup_rank(rows: list[dict[int, int]], ncols: int, cols: list[int]) -> int:
    """Rank of the subgroup the given generator columns span in the
    quotient Z^ncols / rowspace: rank([E; R]) - rank(R) with E unit rows."""
    base = matrix_rank(rows, ncols)
    stacked = [dict(row) for row in rows] + [{c: 1} for c in cols]
    return matrix_rank(stacked, ncols) - base


@dataclass
class PerfectnessReport:
    group: str
    n: int
    window: int
    perfect_on_interior: bool
    interior_size: int
    forced_trivial: set[Gen]
    not_forced: set[Gen]

    def __str__(self) -> str:
        verdict = "perfect-on-interior" if self.perfect_on_interior else "NOT perfect-on-interior"
        extra = "" if self.perfect_on_interior else \
            f" ({len(self.not_forced)}/{self.interior_size} interior generators not forced trivial)"
        return f"{self.group}' n={self.n} window={self.window}: {verdict}{extra}"


def forced_trivial_report(p: TruncatedPresentation, group: str, n: int,
                          margin: int = 2) -> PerfectnessReport:
    mat = relation_matrix(p)
    red = LatticeReduction(mat.rows, len(mat.gens)).run()
    interior = p.interior(margin)
    forced = {g for g in interior if red.contains({mat.index[g]: 1})}
    not_forced = interior - forced
    return PerfectnessReport(group, n, p.window, not not_forced,
                             len(interior), forced, not_forced)


def perfectness_window_check(group: str, n: int, window: int) -> PerfectnessReport:
    """Abelianize the truncated two-parameter presentation and ask which
    interior generators are forced trivial.  A clean window certifies
    perfectness on the interior; a dirty one is reported as "not forced
    trivial at this window", never as a standalone disproof."""
    from .derived import simplified_derived

    if window < 4:
        raise ValueError("window must be >= 4")
    p = TruncatedPresentation.from_schema(simplified_derived(group, n), window)
    return forced_trivial_report(p, group, n)
