"""
Matrices over a switch's ring: either commutative rational functions or
quaternions.  Matrices are tuples of row tuples and never mutated.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from virtual_knot_lab.core.exceptions import NonInvertibleError, ParamsMismatchError
from virtual_knot_lab.modules.algebra.exactalg import FunctionField, RatFun, function_field
from virtual_knot_lab.modules.algebra.quat import AlgebraParams, Quaternion, conj

RingElem = Union[RatFun, Quaternion]
Matrix = Tuple[Tuple[RingElem, ...], ...]


@dataclass(frozen=True)
class RingDescriptor:
    """Which ring the entries of a switch live in."""

    field: FunctionField
    params: Optional[AlgebraParams] = None

    @property
    def is_quaternionic(self) -> bool:
        return self.params is not None

    def one(self) -> RingElem:
        if self.params is None:
            return self.field.one()
        return Quaternion.scalar(self.params, 1)

    def zero(self) -> RingElem:
        if self.params is None:
            return self.field.zero()
        return Quaternion.scalar(self.params, 0)

    def coerce(self, value) -> RingElem:
        if self.params is None:
            if isinstance(value, Quaternion):
                raise ParamsMismatchError("quaternion entry in a commutative ring")
            return self.field.const(value)
        if isinstance(value, Quaternion):
            if value.params != self.params:
                raise ParamsMismatchError(f"algebra {value.params} vs {self.params}")
            return value
        return Quaternion.scalar(self.params, value)

    def scalar(self, value: RatFun) -> RingElem:
        """Embeds a central scalar of the field."""
        return self.coerce(self.field.const(value))

    def extend(self, *names: str) -> "RingDescriptor":
        """Same kind of ring over a field with extra variables appended."""
        fresh = tuple(n for n in names if n not in self.field.names)
        if not fresh:
            return self
        field = function_field(self.field.names + fresh)
        if self.params is None:
            return RingDescriptor(field)
        return RingDescriptor(field, AlgebraParams(self.params.lam.to_field(field), self.params.mu.to_field(field)))

    def lift(self, value: RingElem) -> RingElem:
        """Moves an element of a smaller ring of the same kind into this one."""
        if isinstance(value, Quaternion):
            if self.params is None:
                raise ParamsMismatchError("quaternion entry in a commutative ring")
            return Quaternion(*(c.to_field(self.field) for c in value.coords()), self.params)
        if isinstance(value, RatFun):
            return self.coerce(value.to_field(self.field))
        return self.coerce(value)

    def describe(self) -> str:
        variables = ", ".join(self.field.names) or "-"
        if self.params is None:
            return f"commutative QQ(i)({variables})"
        return f"quaternions {self.params} over QQ(i)({variables})"


def identity(n: int, ring: RingDescriptor) -> Matrix:
    one, zero = ring.one(), ring.zero()
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int, ring: RingDescriptor) -> Matrix:
    zero = ring.zero()
    return tuple(tuple(zero for _ in range(cols)) for _ in range(rows))


def shape(M: Matrix) -> Tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def mat_mul(M: Matrix, N: Matrix) -> Matrix:
    rows, inner = shape(M)
    inner2, cols = shape(N)
    if inner != inner2:
        raise ParamsMismatchError(f"cannot multiply {rows}x{inner} by {inner2}x{cols}")
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = None
            for k in range(inner):
                a, b = M[i][k], N[k][j]
                if a.is_zero() or b.is_zero():
                    continue
                term = a * b
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else M[i][0].ring_zero())
        out.append(tuple(row))
    return tuple(out)


def mat_add(M: Matrix, N: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(M, N))


def mat_sub(M: Matrix, N: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(M, N))


def mat_neg(M: Matrix) -> Matrix:
    return tuple(tuple(-a for a in r) for r in M)


def mat_equal(M: Matrix, N: Matrix) -> bool:
    return shape(M) == shape(N) and all(a == b for r, s in zip(M, N) for a, b in zip(r, s))


def is_zero_matrix(M: Matrix) -> bool:
    return all(a.is_zero() for r in M for a in r)


def transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M)) if M else M


def hermitian(M: Matrix) -> Matrix:
    """Conjugate transpose; plain transpose for commutative entries."""
    return tuple(tuple(conj(a) if isinstance(a, Quaternion) else a for a in r) for r in transpose(M))


def block(S: Matrix, position: int, n: int, ring: RingDescriptor) -> Matrix:
    """id^(position) x S x id^(n - position - 2), position counted from 0."""
    size = len(S)
    if position < 0 or position + size > n:
        raise ParamsMismatchError(f"block of size {size} at {position} does not fit in {n}")
    one, zero = ring.one(), ring.zero()
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if position <= i < position + size and position <= j < position + size:
                row.append(S[i - position][j - position])
            else:
                row.append(one if i == j else zero)
        rows.append(tuple(row))
    return tuple(rows)


def minor(M: Matrix, row: int, col: int) -> Matrix:
    return tuple(
        tuple(a for j, a in enumerate(r) if j != col)
        for i, r in enumerate(M) if i != row
    )


def mat_inverse(M: Matrix, ring: RingDescriptor) -> Matrix:
    """
    Gauss-Jordan with row operations applied on the left, so the result is
    correct over non-commutative rings.  Pivots must be units.
    """
    n, m = shape(M)
    if n != m:
        raise NonInvertibleError(f"{n}x{m} matrix is not square")
    left: List[List[RingElem]] = [list(r) for r in M]
    right: List[List[RingElem]] = [list(r) for r in identity(n, ring)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if left[r][col].is_unit()), None)
        if pivot_row is None:
            # in a split algebra every entry of a column can be a zero divisor
            # while a sum of two rows still gives a unit pivot
            for r in range(col + 1, n):
                if (left[col][col] + left[r][col]).is_unit():
                    left[col] = [a + b for a, b in zip(left[col], left[r])]
                    right[col] = [a + b for a, b in zip(right[col], right[r])]
                    pivot_row = col
                    break
        if pivot_row is None:
            raise NonInvertibleError(f"no invertible pivot in column {col}")
        left[col], left[pivot_row] = left[pivot_row], left[col]
        right[col], right[pivot_row] = right[pivot_row], right[col]
        inv = left[col][col].inverse()
        left[col] = [inv * a for a in left[col]]
        right[col] = [inv * a for a in right[col]]
        for r in range(n):
            if r == col or left[r][col].is_zero():
                continue
            factor = left[r][col]
            left[r] = [a - factor * b for a, b in zip(left[r], left[col])]
            right[r] = [a - factor * b for a, b in zip(right[r], right[col])]
    return tuple(tuple(r) for r in right)


def vec_mat(v: Sequence[RingElem], M: Matrix) -> Tuple[RingElem, ...]:
    """Row vector times matrix."""
    return mat_mul((tuple(v),), M)[0]


def mat_vec(M: Matrix, v: Sequence[RingElem]) -> Tuple[RingElem, ...]:
    """Matrix times column vector."""
    return tuple(r[0] for r in mat_mul(M, tuple((x,) for x in v)))


def format_matrix(M: Matrix) -> List[List[str]]:
    return [[str(a) for a in r] for r in M]
