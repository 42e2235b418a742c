"""Sparse exact linear algebra over Q(q, t, u).

Linear maps are given column by column: column ``j`` is the image of the
``j``-th basis vector, stored as a dict from arbitrary hashable row keys to
nonzero RatFunc entries. Reduction is fully reduced row echelon form with
pivot columns chosen in column order, so kernels and solutions are unique and
reproducible. Rows are chosen by a sparsity heuristic; the reduced form does
not depend on that choice.
"""

from __future__ import annotations

from typing import Hashable, Mapping, Sequence

from .errors import InvariantViolation
from .scalars import ONE, ZERO, RatFunc, as_ratfunc

Vector = dict


def _weight(r: RatFunc) -> int:
    return len(r.num) + len(r.den)


class Echelon:
    """Reduced row echelon form of a column-specified matrix.

    Args:
        columns: Images of the unknowns, as sparse vectors.
        rhs: Optional right-hand sides. These take part in row operations
            but never supply pivots.
    """

    def __init__(self, columns: Sequence[Mapping[Hashable, RatFunc]],
                 rhs: Sequence[Mapping[Hashable, RatFunc]] = ()):
        self.ncols = len(columns)
        self.nrhs = len(rhs)
        rows: dict[Hashable, dict[int, RatFunc]] = {}
        for j, col in enumerate(list(columns) + list(rhs)):
            for key, val in col.items():
                if val:
                    rows.setdefault(key, {})[j] = as_ratfunc(val)
        index: dict[int, set] = {}
        for key, row in rows.items():
            for j in row:
                index.setdefault(j, set()).add(key)
        order = {key: i for i, key in enumerate(rows)}
        pivots: dict[int, Hashable] = {}
        used: set = set()
        for c in range(self.ncols):
            cands = [k for k in index.get(c, ()) if k not in used]
            if not cands:
                continue
            prow = min(cands, key=lambda k: (len(rows[k]), _weight(rows[k][c]), order[k]))
            row = rows[prow]
            inv = row[c].inverse()
            if inv != ONE:
                for j in row:
                    row[j] = row[j] * inv
            for k in list(index[c]):
                if k == prow:
                    continue
                other = rows[k]
                factor = other[c]
                for j, v in row.items():
                    new = other.get(j, ZERO) - factor * v
                    if new:
                        if j not in other:
                            index.setdefault(j, set()).add(k)
                        other[j] = new
                    elif j in other:
                        del other[j]
                        index[j].discard(k)
            pivots[c] = prow
            used.add(prow)
        self.rows = rows
        self.pivots = pivots
        self.inconsistent_rhs = set()
        for key, row in rows.items():
            if key in used:
                continue
            for j in row:
                if j >= self.ncols:
                    self.inconsistent_rhs.add(j - self.ncols)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def kernel(self) -> list[Vector]:
        """Basis of the null space, one vector per free column in order."""
        basis = []
        for f in range(self.ncols):
            if f in self.pivots:
                continue
            vec = {f: ONE}
            for c, key in self.pivots.items():
                v = self.rows[key].get(f)
                if v:
                    vec[c] = -v
            basis.append(dict(sorted(vec.items())))
        return basis

    def solution(self, i: int) -> Vector:
        """Coefficients solving the ``i``-th right-hand side.

        Raises:
            InvariantViolation: The system is inconsistent.
        """
        if i in self.inconsistent_rhs:
            raise InvariantViolation(f"right-hand side {i} is not in the column span")
        j = self.ncols + i
        out = {}
        for c, key in sorted(self.pivots.items()):
            v = self.rows[key].get(j)
            if v:
                out[c] = v
        return out


def kernel(columns: Sequence[Mapping]) -> list[Vector]:
    return Echelon(columns).kernel()


def rank(columns: Sequence[Mapping]) -> int:
    return Echelon(columns).rank


def solve(columns: Sequence[Mapping], target: Mapping) -> Vector:
    """Coefficients ``c`` with ``sum(c[j] * columns[j]) == target``.

    When the columns are dependent the solution with zero free variables is
    returned.
    """
    return Echelon(columns, [target]).solution(0)


def combine(columns: Sequence[Mapping], coeffs: Mapping[int, RatFunc]) -> Vector:
    """``sum(coeffs[j] * columns[j])`` as a sparse vector without zeros."""
    out: dict = {}
    for j, c in coeffs.items():
        for key, v in columns[j].items():
            out[key] = out.get(key, ZERO) + c * v
    return {k: v for k, v in out.items() if v}


def same_span(a: Sequence[Mapping], b: Sequence[Mapping]) -> bool:
    """True when two families of sparse vectors span the same space."""
    ra, rb = rank(a), rank(b)
    return ra == rb == rank(list(a) + list(b))


class Matrix:
    """Small dense square-or-rectangular matrix over Q(q, t, u)."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(as_ratfunc(x) for x in r) for r in rows)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __add__(self, other: Matrix) -> Matrix:
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: Matrix) -> Matrix:
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                line = []
                for col in cols:
                    acc = ZERO
                    for a, b in zip(r, col):
                        if a and b:
                            acc = acc + a * b
                    line.append(acc)
                out.append(line)
            return Matrix(out)
        c = as_ratfunc(other)
        return Matrix([[c * a for a in r] for r in self.rows])

    def __rmul__(self, other):
        c = as_ratfunc(other)
        return Matrix([[c * a for a in r] for r in self.rows])

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def columns(self) -> list[dict]:
        n, m = self.shape
        return [{i: self.rows[i][j] for i in range(n) if self.rows[i][j]} for j in range(m)]

    def inverse(self) -> Matrix:
        n, m = self.shape
        if n != m:
            raise ValueError("only square matrices can be inverted")
        ech = Echelon(self.columns(), [{i: ONE} for i in range(n)])
        if ech.rank != n:
            raise ZeroDivisionError("singular matrix")
        cols = [ech.solution(i) for i in range(n)]
        return Matrix([[cols[j].get(i, ZERO) for j in range(n)] for i in range(n)])

    def to_json(self) -> list:
        return [[a.to_json() for a in r] for r in self.rows]

    def __repr__(self) -> str:
        return "Matrix(" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + ")"
