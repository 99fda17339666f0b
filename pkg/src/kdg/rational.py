"""Exact rational scalars, vectors and matrices.

Scalars are `fractions.Fraction` (arbitrary precision, always in lowest terms
with positive denominator); vectors and matrices are immutable tuples.
Determinants and linear solves run fraction-free (Bareiss) elimination when
the input is integral and exact rational Gaussian elimination otherwise.
Negative definiteness is decided by the signs of the leading principal
minors.  No floating point enters any computation; decimal strings are
produced for display only.
"""

from __future__ import annotations

import math
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import KdgError

Rat = Fraction
RatLike = Union[int, Fraction]
RatVector = tuple[Fraction, ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]


class SingularMatrixError(KdgError):
    """Raised by `solve` when elimination finds no pivot.

    `stage` is the zero-based elimination column where every candidate
    pivot vanished.
    """

    exit_code = 5

    def __init__(self, stage: int):
        self.stage = stage
        super().__init__(f"singular matrix: no pivot at elimination stage {stage}")


class _Unbounded:
    """Marker for a limit that grows without bound."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "+inf"

    __str__ = __repr__


#: Singleton returned in place of a rational when a limit diverges.
UNBOUNDED = _Unbounded()


def rat(x: RatLike) -> Fraction:
    """Coerce an int or Fraction to Fraction.  Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def vec(entries: Iterable[RatLike]) -> tuple[Fraction, ...]:
    return tuple(rat(x) for x in entries)


def mat(rows: Iterable[Iterable[RatLike]]) -> tuple[tuple[Fraction, ...], ...]:
    m = tuple(vec(row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def dim(m: Sequence[Sequence[Fraction]]) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("square matrix expected")
    return n


def is_symmetric(m: Sequence[Sequence[Fraction]]) -> bool:
    n = dim(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def transpose(m: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(zip(*[vec(row) for row in m])) if m else ()


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[RatLike]) -> tuple[Fraction, ...]:
    if any(len(row) != len(v) for row in m):
        raise ValueError("dimension mismatch")
    return tuple(sum((rat(a) * rat(x) for a, x in zip(row, v)), Fraction(0)) for row in m)


def dot(u: Sequence[RatLike], v: Sequence[RatLike]) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum((rat(a) * rat(b) for a, b in zip(u, v)), Fraction(0))


def _integral(m: Sequence[Sequence[Fraction]]) -> bool:
    return all(rat(x).denominator == 1 for row in m for x in row)


def _bareiss_forward(a: list[list[int]], cols: int) -> int:
    """Fraction-free triangularization in place over the first len(a) columns;
    extra columns (up to `cols`) ride along.  Returns the row-swap sign, or
    raises SingularMatrixError if some pivot column is entirely zero."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                raise SingularMatrixError(k)
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, cols):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign


def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant (Bareiss on integral input, rational GE otherwise)."""
    n = dim(m)
    if n == 0:
        return Fraction(1)
    if _integral(m):
        a = [[int(x) for x in row] for row in m]
        try:
            sign = _bareiss_forward(a, n)
        except SingularMatrixError:
            return Fraction(0)
        return Fraction(sign * a[n - 1][n - 1])
    a = [[rat(x) for x in row] for row in m]
    sign = 1
    result = Fraction(1)
    for k in range(n):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        result *= pivot
        for i in range(k + 1, n):
            factor = a[i][k] / pivot
            if factor:
                for j in range(k, n):
                    a[i][j] -= factor * a[k][j]
    return sign * result


def solve(m: Sequence[Sequence[Fraction]], c: Sequence[RatLike]) -> tuple[Fraction, ...]:
    """Solve m x = c exactly.  Raises SingularMatrixError(stage) when singular."""
    n = dim(m)
    if len(c) != n:
        raise ValueError("dimension mismatch")
    if n == 0:
        return ()
    rhs = vec(c)
    if _integral(m) and all(x.denominator == 1 for x in rhs):
        a = [[int(x) for x in row] + [int(rhs[i])] for i, row in enumerate(m)]
        _bareiss_forward(a, n + 1)
    else:
        a = [[rat(x) for x in row] + [rhs[i]] for i, row in enumerate(m)]
        for k in range(n):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        break
                else:
                    raise SingularMatrixError(k)
            pivot = a[k][k]
            for i in range(k + 1, n):
                factor = a[i][k] / pivot
                if factor:
                    for j in range(k, n + 1):
                        a[i][j] -= factor * a[k][j]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(a[i][n])
        for j in range(i + 1, n):
            s -= a[i][j] * x[j]
        x[i] = s / a[i][i]
    return tuple(x)


def is_negative_definite(m: Sequence[Sequence[Fraction]]) -> bool:
    """True iff the symmetric matrix m is negative definite.

    Decided exactly: the leading principal minors D_k must satisfy
    (-1)^k D_k > 0 for every k, equivalently all elimination pivots are
    negative.  Non-symmetric input is rejected.
    """
    n = dim(m)
    if not is_symmetric(m):
        raise ValueError("symmetric matrix expected")
    if n == 0:
        return True
    if _integral(m):
        # Bareiss without swaps: after k condensation steps a[k][k] equals the
        # (k+1)-st leading principal minor, so only its sign needs checking.
        a = [[int(x) for x in row] for row in m]
        prev = 1
        for k in range(n):
            d = a[k][k]
            if d == 0 or (d > 0) == (k % 2 == 0):
                return False
            for i in range(k + 1, n):
                aik = a[i][k]
                for j in range(k + 1, n):
                    a[i][j] = (d * a[i][j] - aik * a[k][j]) // prev
            prev = d
        return True
    a = [[rat(x) for x in row] for row in m]
    for k in range(n):
        pivot = a[k][k]
        if pivot >= 0:
            return False
        for i in range(k + 1, n):
            factor = a[i][k] / pivot
            if factor:
                for j in range(k, n):
                    a[i][j] -= factor * a[k][j]
    return True


def leading_principal_minors(m: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    n = dim(m)
    return tuple(det([row[: k + 1] for row in m[: k + 1]]) for k in range(n))


def quadratic_form(m: Sequence[Sequence[Fraction]], v: Sequence[RatLike]) -> Fraction:
    """The value t(v) m v, exactly."""
    n = dim(m)
    if len(v) != n:
        raise ValueError("dimension mismatch")
    w = vec(v)
    total = Fraction(0)
    for i in range(n):
        if w[i] == 0:
            continue
        total += w[i] * sum((rat(m[i][j]) * w[j] for j in range(n) if w[j] != 0), Fraction(0))
    return total


def nullspace(m: Sequence[Sequence[Fraction]]) -> list[tuple[Fraction, ...]]:
    """Basis of the kernel of a (possibly rectangular) rational matrix."""
    rows = [list(vec(row)) for row in m]
    if not rows:
        return []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    basis = []
    free_cols = [c for c in range(ncols) if c not in pivots]
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


def lcm_denominators(v: Sequence[RatLike]) -> int:
    """Least positive integer r with r*x integral for every entry x."""
    out = 1
    for x in v:
        out = math.lcm(out, rat(x).denominator)
    return out


def rat_str(q: RatLike) -> str:
    """Canonical "p/q" rendering ("p" when the denominator is 1)."""
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {s!r}") from exc


def rat_decimal(q: RatLike, digits: int = 12) -> str:
    """Display-only decimal string: `digits` significant digits, banker's
    rounding.  The exact value is always the "p/q" string next to it."""
    q = rat(q)
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        return str(Decimal(q.numerator) / Decimal(q.denominator))
