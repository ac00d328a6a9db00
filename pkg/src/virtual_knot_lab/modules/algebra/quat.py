"""
Generalized quaternion algebras (lam, mu / F) over a function field F.

Basis 1, i, j, k with i^2 = lam, j^2 = mu, ij = -ji = k, so
ik = lam j, jk = -mu i, k^2 = -lam mu.  M_2(F) is the algebra (-1, 1) with
i, j, k the Pauli matrices; ``mat2_bridge`` converts between the two views.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from virtual_knot_lab.core.exceptions import (
    NonInvertibleError,
    ParamsMismatchError,
    UnsupportedParametersError,
)
from virtual_knot_lab.core.logger import setup_logger
from virtual_knot_lab.modules.algebra.exactalg import FunctionField, RatFun

logger = setup_logger(__name__)

Mat2 = Tuple[Tuple[RatFun, RatFun], Tuple[RatFun, RatFun]]


@dataclass(frozen=True)
class AlgebraParams:
    lam: RatFun
    mu: RatFun

    def __post_init__(self):
        if self.lam.field != self.mu.field:
            raise ParamsMismatchError("lam and mu live in different fields")
        if not (self.lam.is_constant() and self.mu.is_constant()):
            raise UnsupportedParametersError("algebra parameters must be constants")
        if self.lam.is_zero() or self.mu.is_zero():
            raise UnsupportedParametersError("algebra parameters must be nonzero")

    @classmethod
    def of(cls, field: FunctionField, lam=-1, mu=-1) -> "AlgebraParams":
        return cls(field.const(lam), field.const(mu))

    @property
    def field(self) -> FunctionField:
        return self.lam.field

    def signs(self) -> Tuple[int, int]:
        """(lam, mu) as ints when both are +-1, else UnsupportedParametersError."""
        out = []
        for value in (self.lam, self.mu):
            if value == 1:
                out.append(1)
            elif value == -1:
                out.append(-1)
            else:
                raise UnsupportedParametersError(f"parameter {value} is not +-1")
        return out[0], out[1]

    def is_matrix_algebra(self) -> bool:
        return self.lam == -1 and self.mu == 1

    def __str__(self) -> str:
        return f"({self.lam}, {self.mu})"


def classical_params(field: FunctionField) -> AlgebraParams:
    return AlgebraParams.of(field, -1, -1)


def matrix_params(field: FunctionField) -> AlgebraParams:
    return AlgebraParams.of(field, -1, 1)


@dataclass(frozen=True)
class PureQuat:
    a1: RatFun
    a2: RatFun
    a3: RatFun
    params: AlgebraParams

    def coords(self) -> Tuple[RatFun, RatFun, RatFun]:
        return self.a1, self.a2, self.a3

    def to_quaternion(self) -> "Quaternion":
        return Quaternion(self.params.field.zero(), self.a1, self.a2, self.a3, self.params)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords())

    def _check(self, other: "PureQuat"):
        if other.params != self.params:
            raise ParamsMismatchError(f"{self.params} vs {other.params}")

    def __add__(self, other: "PureQuat") -> "PureQuat":
        self._check(other)
        return PureQuat(self.a1 + other.a1, self.a2 + other.a2, self.a3 + other.a3, self.params)

    def __sub__(self, other: "PureQuat") -> "PureQuat":
        self._check(other)
        return PureQuat(self.a1 - other.a1, self.a2 - other.a2, self.a3 - other.a3, self.params)

    def __neg__(self) -> "PureQuat":
        return PureQuat(-self.a1, -self.a2, -self.a3, self.params)

    def scale(self, s) -> "PureQuat":
        return PureQuat(self.a1 * s, self.a2 * s, self.a3 * s, self.params)


@dataclass(frozen=True)
class Quaternion:
    a0: RatFun
    a1: RatFun
    a2: RatFun
    a3: RatFun
    params: AlgebraParams

    # -- construction -----------------------------------------------------
    @classmethod
    def scalar(cls, params: AlgebraParams, value) -> "Quaternion":
        zero = params.field.zero()
        return cls(params.field.const(value), zero, zero, zero, params)

    @classmethod
    def from_coords(cls, params: AlgebraParams, a0=0, a1=0, a2=0, a3=0) -> "Quaternion":
        f = params.field
        return cls(f.const(a0), f.const(a1), f.const(a2), f.const(a3), params)

    @classmethod
    def basis(cls, params: AlgebraParams, name: str) -> "Quaternion":
        index = {"1": 0, "i": 1, "j": 2, "k": 3}[name]
        coords = [0, 0, 0, 0]
        coords[index] = 1
        return cls.from_coords(params, *coords)

    def coords(self) -> Tuple[RatFun, RatFun, RatFun, RatFun]:
        return self.a0, self.a1, self.a2, self.a3

    @property
    def field(self) -> FunctionField:
        return self.params.field

    def scalar_part(self) -> RatFun:
        return self.a0

    def pure_part(self) -> PureQuat:
        return PureQuat(self.a1, self.a2, self.a3, self.params)

    # -- ring-generic hooks -------------------------------------------------
    def ring_one(self) -> "Quaternion":
        return Quaternion.scalar(self.params, 1)

    def ring_zero(self) -> "Quaternion":
        return Quaternion.scalar(self.params, 0)

    def coerce(self, value) -> "Quaternion":
        if isinstance(value, Quaternion):
            _check_params(self, value)
            return value
        return Quaternion.scalar(self.params, value)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords())

    def is_one(self) -> bool:
        return self.a0.is_one() and all(c.is_zero() for c in self.coords()[1:])

    def is_unit(self) -> bool:
        return not norm(self).is_zero()

    def is_scalar(self) -> bool:
        return all(c.is_zero() for c in self.coords()[1:])

    def inverse(self) -> "Quaternion":
        return qinv(self)

    # -- operators ------------------------------------------------------------
    def __add__(self, other) -> "Quaternion":
        other = self.coerce(other)
        return Quaternion(*(x + y for x, y in zip(self.coords(), other.coords())), self.params)

    __radd__ = __add__

    def __sub__(self, other) -> "Quaternion":
        other = self.coerce(other)
        return Quaternion(*(x - y for x, y in zip(self.coords(), other.coords())), self.params)

    def __rsub__(self, other) -> "Quaternion":
        return self.coerce(other) - self

    def __neg__(self) -> "Quaternion":
        return Quaternion(*(-x for x in self.coords()), self.params)

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, Quaternion):
            return qmul(self, other)
        return Quaternion(*(x * other for x in self.coords()), self.params)

    def __rmul__(self, other) -> "Quaternion":
        # scalars are central
        return Quaternion(*(other * x for x in self.coords()), self.params)

    def __truediv__(self, other) -> "Quaternion":
        if isinstance(other, Quaternion):
            return qmul(self, qinv(other))
        return Quaternion(*(x / other for x in self.coords()), self.params)

    def __pow__(self, n: int) -> "Quaternion":
        if n < 0:
            return qinv(self) ** (-n)
        result = self.ring_one()
        base = self
        while n:
            if n & 1:
                result = qmul(result, base)
            base = qmul(base, base)
            n >>= 1
        return result

    def __str__(self) -> str:
        parts = []
        for coeff, unit in zip(self.coords(), ("", "i", "j", "k")):
            if coeff.is_zero():
                continue
            text = str(coeff)
            if not unit:
                parts.append(text)
            elif coeff == 1:
                parts.append(unit)
            elif coeff == -1:
                parts.append("-" + unit)
            else:
                needs_parens = "+" in text or "-" in text[1:] or "/" in text
                parts.append(f"({text})*{unit}" if needs_parens else f"{text}*{unit}")
        if not parts:
            return "0"
        text = parts[0]
        for piece in parts[1:]:
            text += piece if piece.startswith("-") else "+" + piece
        return text


QuatLike = Union[Quaternion, PureQuat]


def _check_params(A: QuatLike, B: QuatLike):
    if A.params != B.params:
        raise ParamsMismatchError(f"algebra {A.params} vs {B.params}")


def qmul(A: Quaternion, B: Quaternion) -> Quaternion:
    """Product by the multiplication table of the algebra."""
    _check_params(A, B)
    lam, mu = A.params.lam, A.params.mu
    a0, a1, a2, a3 = A.coords()
    b0, b1, b2, b3 = B.coords()
    c0 = a0 * b0 + lam * a1 * b1 + mu * a2 * b2 - lam * mu * a3 * b3
    c1 = a0 * b1 + a1 * b0 - mu * a2 * b3 + mu * a3 * b2
    c2 = a0 * b2 + a2 * b0 + lam * a1 * b3 - lam * a3 * b1
    c3 = a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1
    return Quaternion(c0, c1, c2, c3, A.params)


def conj(A: Quaternion) -> Quaternion:
    return Quaternion(A.a0, -A.a1, -A.a2, -A.a3, A.params)


def norm(A: QuatLike) -> RatFun:
    """N(A) = A conj(A); for a pure quaternion the norm of its embedding."""
    lam, mu = A.params.lam, A.params.mu
    value = -lam * A.a1 * A.a1 - mu * A.a2 * A.a2 + lam * mu * A.a3 * A.a3
    if isinstance(A, Quaternion):
        value = value + A.a0 * A.a0
    return value


def trace(A: Quaternion) -> RatFun:
    return A.a0 * 2


def qinv(A: Quaternion) -> Quaternion:
    n = norm(A)
    if n.is_zero():
        raise NonInvertibleError(f"{A} is isotropic or zero (norm 0)")
    return conj(A) * n.inverse()


def dot(A: QuatLike, B: QuatLike) -> RatFun:
    """Bilinear form a0 b0 - lam a1 b1 - mu a2 b2 + lam mu a3 b3 (pure: a0 = b0 = 0)."""
    _check_params(A, B)
    lam, mu = A.params.lam, A.params.mu
    value = -lam * A.a1 * B.a1 - mu * A.a2 * B.a2 + lam * mu * A.a3 * B.a3
    if isinstance(A, Quaternion) and isinstance(B, Quaternion):
        value = value + A.a0 * B.a0
    return value


def cross(a: PureQuat, b: PureQuat) -> PureQuat:
    """Symbolic determinant with first row (-mu i, -lam j, k)."""
    _check_params(a, b)
    lam, mu = a.params.lam, a.params.mu
    return PureQuat(
        -mu * (a.a2 * b.a3 - a.a3 * b.a2),
        lam * (a.a1 * b.a3 - a.a3 * b.a1),
        a.a1 * b.a2 - a.a2 * b.a1,
        a.params,
    )


def scalar_triple(a: PureQuat, b: PureQuat, c: PureQuat) -> RatFun:
    """[a, b, c] = lam mu det(rows a, b, c)."""
    _check_params(a, b)
    _check_params(a, c)
    det = (
        a.a1 * (b.a2 * c.a3 - b.a3 * c.a2)
        - a.a2 * (b.a1 * c.a3 - b.a3 * c.a1)
        + a.a3 * (b.a1 * c.a2 - b.a2 * c.a1)
    )
    return a.params.lam * a.params.mu * det


def triple_products(a: PureQuat, b: PureQuat, c: PureQuat) -> Tuple[PureQuat, RatFun]:
    return cross(a, cross(b, c)), scalar_triple(a, b, c)


def commutes(A: Quaternion, B: Quaternion) -> bool:
    """Quaternions commute exactly when their pure parts are dependent."""
    return cross(A.pure_part(), B.pure_part()).is_zero()


# ---------------------------------------------------------------------------
# balanced and matching pairs
# ---------------------------------------------------------------------------

def is_balanced(A: Quaternion) -> bool:
    n = norm(A)
    return not n.is_zero() and n == trace(A)


def balanced_quadric_residual(A: Quaternion) -> RatFun:
    """N(A - 1) - 1; zero on the quadric carrying the balanced quaternions."""
    return norm(A - 1) - 1


def is_matching(A: Quaternion, B: Quaternion) -> bool:
    _check_params(A, B)
    if not (A.is_unit() and B.is_unit()):
        return False
    if commutes(A, B):
        return False
    return is_balanced(A) and dot(A, B).is_zero()


def solve_matching_partner(A: Quaternion, b1, b2, b3) -> Quaternion:
    """
    Returns B = b0 + b1 i + b2 j + b3 k with b0 chosen so that A.B = 0.
    Needs a0 != 0, which every balanced quaternion has.
    """
    f = A.field
    partial = Quaternion(f.zero(), f.const(b1), f.const(b2), f.const(b3), A.params)
    if A.a0.is_zero():
        raise NonInvertibleError("scalar part of A is zero; A.B = 0 cannot be solved for b0")
    b0 = -dot(A, partial) / A.a0
    return Quaternion(b0, partial.a1, partial.a2, partial.a3, A.params)


def fundamental_sides(A: Quaternion, B: Quaternion) -> Tuple[Quaternion, Quaternion]:
    """Both sides of A^-1 B^-1 A B - B A^-1 B^-1 A = B^-1 A B - A."""
    _check_params(A, B)
    if not (A.is_unit() and B.is_unit() and (A - 1).is_unit()):
        raise NonInvertibleError("fundamental equation needs A, B and A - 1 invertible")
    Ai, Bi = qinv(A), qinv(B)
    lhs = Ai * Bi * A * B - B * Ai * Bi * A
    rhs = Bi * A * B - A
    return lhs, rhs


def fundamental_holds(A: Quaternion, B: Quaternion) -> bool:
    lhs, rhs = fundamental_sides(A, B)
    return lhs == rhs


def c_vector(A: Quaternion, B: Quaternion) -> PureQuat:
    """
    Half the difference N(A) conj(B) A B - N(A) N(B) A - (conj(A) conj(B) A B - B conj(A) conj(B) A);
    it vanishes exactly when the fundamental equation holds.
    """
    a, b = A.pure_part(), B.pure_part()
    tr, n = trace(A), norm(A)
    term_a = a.scale((tr - n) * norm(b))
    term_b = b.scale((n - tr) * dot(a, b))
    term_ab = cross(a, b).scale(B.a0 * (n - tr) + dot(A, B) * 2)
    return term_a + term_b + term_ab


def fundamental_quaternion_sides(A: Quaternion, B: Quaternion) -> Tuple[Quaternion, Quaternion]:
    """The fundamental equation multiplied through by N(A) N(B)."""
    Ac, Bc = conj(A), conj(B)
    nA, nB = norm(A), norm(B)
    lhs = Ac * Bc * A * B - B * Ac * Bc * A
    rhs = Bc * A * B * nA - A * (nA * nB)
    return lhs, rhs


# ---------------------------------------------------------------------------
# conjugation and commutator expansions
# ---------------------------------------------------------------------------

def conjugate_by(A: Quaternion, B: Quaternion) -> Quaternion:
    return qinv(B) * A * B


def conjugation_expansion(A: Quaternion, B: Quaternion) -> Quaternion:
    """conj(B) A B = a0(b0^2 + N(b)) + (b0^2 - N(b)) a + 2(a.b) b + 2 b0 (a x b)."""
    a, b = A.pure_part(), B.pure_part()
    b0 = B.a0
    nb = norm(b)
    pure = a.scale(b0 * b0 - nb) + b.scale(dot(a, b) * 2) + cross(a, b).scale(b0 * 2)
    q = pure.to_quaternion()
    return Quaternion(A.a0 * (b0 * b0 + nb), q.a1, q.a2, q.a3, A.params)


def commutator_expansion(A: Quaternion, B: Quaternion) -> Quaternion:
    """[A, B] = 2 a x b."""
    return cross(A.pure_part(), B.pure_part()).scale(2).to_quaternion()


def group_commutator_expansion(A: Quaternion, B: Quaternion) -> Quaternion:
    """Closed form of conj(A) conj(B) A B."""
    a, b = A.pure_part(), B.pure_part()
    a0, b0 = A.a0, B.a0
    na, nb, ab = norm(a), norm(b), dot(a, b)
    scalar = a0 * a0 * b0 * b0 + b0 * b0 * na + a0 * a0 * nb - na * nb + ab * ab * 2
    pure = (
        a.scale((b0 * ab + a0 * nb) * -2)
        + b.scale((a0 * ab + b0 * na) * 2)
        + cross(a, b).scale((a0 * b0 - ab) * 2)
    )
    q = pure.to_quaternion()
    return Quaternion(scalar, q.a1, q.a2, q.a3, A.params)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def is_hyperbolic(params: AlgebraParams) -> bool:
    """An algebra with parameters in {+1, -1} is anisotropic only for (-1, -1)."""
    lam, mu = params.signs()
    return not (lam == -1 and mu == -1)


def isotropic_witness(params: AlgebraParams) -> Quaternion:
    lam, mu = params.signs()
    if lam == 1:
        return Quaternion.from_coords(params, 1, 1, 0, 0)
    if mu == 1:
        return Quaternion.from_coords(params, 1, 0, 1, 0)
    raise NonInvertibleError(f"algebra {params} is anisotropic; no isotropic element")


# ---------------------------------------------------------------------------
# the 2x2 matrix model
# ---------------------------------------------------------------------------

def mat2_bridge(A: Quaternion) -> Mat2:
    """a0 + a1 i + a2 j + a3 k -> [[a0+a3, a2+a1], [a2-a1, a0-a3]] in M_2(F) = (-1, 1)."""
    if not A.params.is_matrix_algebra():
        raise ParamsMismatchError(f"matrix model needs parameters (-1, 1), got {A.params}")
    a0, a1, a2, a3 = A.coords()
    return ((a0 + a3, a2 + a1), (a2 - a1, a0 - a3))


def mat2_to_quaternion(M: Mat2, params: AlgebraParams) -> Quaternion:
    """[[al, be], [ga, de]] -> ((al+de) + (be-ga) i + (be+ga) j + (al-de) k) / 2."""
    if not params.is_matrix_algebra():
        raise ParamsMismatchError(f"matrix model needs parameters (-1, 1), got {params}")
    f = params.field
    (al, be), (ga, de) = M
    al, be, ga, de = (f.const(x) for x in (al, be, ga, de))
    half = f.const(Fraction(1, 2))
    return Quaternion((al + de) * half, (be - ga) * half, (be + ga) * half, (al - de) * half, params)


def mat2_mul(M: Mat2, N: Mat2) -> Mat2:
    (a, b), (c, d) = M
    (e, f), (g, h) = N
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat2_det(M: Mat2) -> RatFun:
    (a, b), (c, d) = M
    return a * d - b * c


def mat2_adj(M: Mat2) -> Mat2:
    (a, b), (c, d) = M
    return ((d, -b), (-c, a))
