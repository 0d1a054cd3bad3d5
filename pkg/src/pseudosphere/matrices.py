"""Matrices of truncated series: exact determinants and Cramer minors.

Determinants of small matrices (the usual case: side n+1 with n the CR
dimension) go through a memoized Laplace expansion.  Larger matrices try
Bareiss elimination, whose exact divisions require unit pivots here; if
a pivot fails to be a unit the expansion path takes over.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextMismatchError, NonUnitError, SingularJacobianError
from .scalars import GaussianRational, ONE, ZERO
from .series import TruncatedSeries


class SeriesMatrix:
    """A dense rows x cols grid of series sharing one context."""

    __slots__ = ("rows", "cols", "entries", "context", "order")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise ValueError("matrix must have at least one row and column")
        self.rows = len(entries)
        self.cols = len(entries[0])
        if any(len(row) != self.cols for row in entries):
            raise ValueError("ragged rows in matrix")
        ctx = entries[0][0].context
        for row in entries:
            for e in row:
                if e.context != ctx:
                    raise ContextMismatchError("matrix entries share no common context")
        self.entries = entries
        self.context = ctx
        self.order = min(e.order for row in entries for e in row)

    def with_column(self, j: int, column) -> "SeriesMatrix":
        column = tuple(column)
        if len(column) != self.rows:
            raise ValueError(f"column of length {len(column)} for {self.rows} rows")
        return SeriesMatrix(
            tuple(
                row[:j] + (column[i],) + row[j + 1 :]
                for i, row in enumerate(self.entries)
            )
        )

    def determinant(self) -> TruncatedSeries:
        if self.rows != self.cols:
            raise ValueError(f"determinant of a {self.rows}x{self.cols} matrix")
        if self.rows >= 5:
            try:
                return self._det_bareiss()
            except NonUnitError:
                pass
        return self._det_expansion()

    def _det_expansion(self) -> TruncatedSeries:
        order = self.order
        one = TruncatedSeries.constant(self.context, order, ONE)
        memo = {}

        def go(rows, col):
            if not rows:
                return one
            key = (rows, col)
            cached = memo.get(key)
            if cached is not None:
                return cached
            acc = None
            for pos, r in enumerate(rows):
                entry = self.entries[r][col]
                if not entry.terms:
                    continue
                sub = go(rows[:pos] + rows[pos + 1 :], col + 1)
                term = entry * sub
                if pos % 2:
                    term = -term
                acc = term if acc is None else acc + term
            if acc is None:
                acc = TruncatedSeries.zero(self.context, order)
            memo[key] = acc
            return acc

        return go(tuple(range(self.rows)), 0)

    def _det_bareiss(self) -> TruncatedSeries:
        n = self.rows
        m = [[e.truncate(self.order) for e in row] for row in self.entries]
        sign = 1
        prev_inv = TruncatedSeries.constant(self.context, self.order, ONE)
        for k in range(n - 1):
            pivot_row = next(
                (r for r in range(k, n) if m[r][k].constant_term()), None
            )
            if pivot_row is None:
                raise NonUnitError("no unit pivot available for Bareiss elimination")
            if pivot_row != k:
                m[k], m[pivot_row] = m[pivot_row], m[k]
                sign = -sign
            pivot = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) * prev_inv
            prev_inv = pivot.invert_unit()
        det = m[n - 1][n - 1]
        return det if sign > 0 else -det


def plucker_check(ground: SeriesMatrix, d_column, e_column, j1: int, j2: int) -> bool:
    """Exact quadratic identity between determinants under column exchange.

    With G the ground matrix and G[j := C] the matrix whose 0-based j-th
    column is replaced by C, checks

        det(G[j1:=D][j2:=E]) * det(G)
          == det(G[j1:=D]) * det(G[j2:=E]) - det(G[j1:=E]) * det(G[j2:=D]).
    """
    if ground.rows != ground.cols:
        raise ValueError("ground matrix must be square")
    if not 0 <= j1 < j2 < ground.cols:
        raise ValueError(f"need 0 <= j1 < j2 < {ground.cols}, got {(j1, j2)}")
    d_column = tuple(d_column)
    e_column = tuple(e_column)
    if len(d_column) != ground.rows or len(e_column) != ground.rows:
        raise ValueError("replacement columns have the wrong length")
    lhs = ground.with_column(j1, d_column).with_column(j2, e_column).determinant()
    lhs = lhs * ground.determinant()
    rhs = ground.with_column(j1, d_column).determinant() * ground.with_column(
        j2, e_column
    ).determinant() - ground.with_column(j1, e_column).determinant() * ground.with_column(
        j2, d_column
    ).determinant()
    return (lhs - rhs).is_zero()


# ----------------------------------------------------------------------
# exact linear algebra over Q(i)


def invert_scalar_matrix(rows):
    """Exact inverse of a square matrix of GaussianRational entries."""
    n = len(rows)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot_row is None:
            raise SingularJacobianError("matrix is singular over Q(i)")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = ONE / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r == col or not aug[r][col]:
                continue
            factor = aug[r][col]
            aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def scalar_determinant(rows) -> GaussianRational:
    n = len(rows)
    m = [list(r) for r in rows]
    det = ONE
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if m[r][col]), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            det = -det
        det = det * m[col][col]
        inv = ONE / m[col][col]
        for r in range(col + 1, n):
            if not m[r][col]:
                continue
            factor = m[r][col] * inv
            m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


# ----------------------------------------------------------------------
# Cramer minors of the fundamental Jacobian-like determinant


@dataclass(frozen=True)
class MinorFamily:
    """The determinant of the fundamental matrix and its Cramer minors.

    The matrix has first row (dQ/da_1 .. dQ/da_{n+1}) and then one row
    (d^2Q/dx_k da_1 .. d^2Q/dx_k da_{n+1}) per base variable x_k, where
    the a_mu range over the n+1 parameter variables.

    * ``unit_minors[(mu, l)]`` replaces the mu-th column by the unit
      column with 1 in position 1+l (1-based; the x_l derivative row).
    * ``second_minors[(mu, nu, tau)]`` replaces the tau-th column by the
      column of a_mu a_nu second derivatives; stored for mu <= nu.
    """

    delta: TruncatedSeries
    unit_minors: dict
    second_minors: dict
    size: int

    def unit(self, mu: int, l: int) -> TruncatedSeries:
        return self.unit_minors[(mu, l)]

    def second(self, mu: int, nu: int, tau: int) -> TruncatedSeries:
        if mu > nu:
            mu, nu = nu, mu
        return self.second_minors[(mu, nu, tau)]


def jacobian_minor_family(q: TruncatedSeries, x_names, a_names,
                          with_second=True) -> MinorFamily:
    """Build the fundamental determinant and its minors for a series q.

    ``x_names`` are the n base variables, ``a_names`` the n+1 parameters
    (last one playing the role of the transversal constant).
    """
    n = len(x_names)
    size = len(a_names)
    if size != n + 1:
        raise ValueError(f"expected {n + 1} parameter names, got {size}")
    ctx = q.context

    first_a = {a: q.partial(a) for a in a_names}
    rows = [[first_a[a] for a in a_names]]
    for x in x_names:
        qx = q.partial(x)
        rows.append([qx.partial(a) for a in a_names])
    matrix = SeriesMatrix(rows)
    delta = matrix.determinant()

    order = matrix.order
    s_one = TruncatedSeries.constant(ctx, order, ONE)
    s_zero = TruncatedSeries.zero(ctx, order)

    unit_minors = {}
    for mu in range(1, size + 1):
        for l in range(1, n + 1):
            column = [s_one if r == l else s_zero for r in range(size)]
            unit_minors[(mu, l)] = matrix.with_column(mu - 1, column).determinant()

    second_minors = {}
    if with_second:
        for mu in range(1, size + 1):
            for nu in range(mu, size + 1):
                col = [first_a[a_names[mu - 1]].partial(a_names[nu - 1])]
                for x in x_names:
                    col.append(
                        first_a[a_names[mu - 1]].partial(x).partial(a_names[nu - 1])
                    )
                for tau in range(1, size + 1):
                    second_minors[(mu, nu, tau)] = matrix.with_column(
                        tau - 1, col
                    ).determinant()

    return MinorFamily(delta=delta, unit_minors=unit_minors,
                       second_minors=second_minors, size=size)
