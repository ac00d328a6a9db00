"""
Linear switches S = [[A, B], [C, D]] over a commutative field or a
quaternion algebra, the seven-axiom verifier, sideways matrices,
augmentation and the Burau conjugator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple, Union

from virtual_knot_lab.core.exceptions import NonInvertibleError, SwitchPreconditionError
from virtual_knot_lab.core.logger import setup_logger
from virtual_knot_lab.modules.algebra.exactalg import RatFun
from virtual_knot_lab.modules.algebra.matrices import (
    Matrix,
    RingDescriptor,
    RingElem,
    block,
    mat_equal,
    mat_inverse,
    mat_mul,
)

logger = setup_logger(__name__)


@dataclass(frozen=True)
class Switch:
    """
    A 2x2 block matrix over one ring.  Catalog constructors check their own
    preconditions; building a Switch directly is an unchecked construction.
    """

    A: RingElem
    B: RingElem
    C: RingElem
    D: RingElem
    ring: RingDescriptor
    name: str = "S"
    # commuting variables whose powers are units of the invariant ring
    unit_vars: Tuple[str, ...] = ()

    def matrix(self) -> Matrix:
        return ((self.A, self.B), (self.C, self.D))

    def entries(self) -> Tuple[RingElem, RingElem, RingElem, RingElem]:
        return self.A, self.B, self.C, self.D

    def one(self) -> RingElem:
        return self.ring.one()

    def inverse(self) -> Matrix:
        return mat_inverse(self.matrix(), self.ring)

    def is_commutative(self) -> bool:
        return not self.ring.is_quaternionic

    def __str__(self) -> str:
        return f"{self.name}: A={self.A}; B={self.B}; C={self.C}; D={self.D}"


# ---------------------------------------------------------------------------
# the seven axioms
# ---------------------------------------------------------------------------

AXIOMS: Tuple[str, ...] = (
    "A = A^2 + BAC",
    "[B,A] = BAD",
    "[C,D] = CDA",
    "D = D^2 + CDB",
    "[A,C] = DAC",
    "[D,B] = ADB",
    "[C,B] = ADA - DAD",
)


def axiom_residuals(S: Switch) -> List[RingElem]:
    """Left side minus right side of each axiom, in order."""
    A, B, C, D = S.entries()
    return [
        A * A + B * A * C - A,
        (B * A - A * B) - B * A * D,
        (C * D - D * C) - C * D * A,
        D * D + C * D * B - D,
        (A * C - C * A) - D * A * C,
        (D * B - B * D) - A * D * B,
        (C * B - B * C) - (A * D * A - D * A * D),
    ]


@dataclass
class AxiomResult:
    number: int
    equation: str
    residual: str
    passed: bool


@dataclass
class SwitchReport:
    switch: str
    ring: str
    axioms: List[AxiomResult] = field(default_factory=list)
    invertible: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.invertible and all(a.passed for a in self.axioms)

    def failed_axioms(self) -> List[int]:
        return [a.number for a in self.axioms if not a.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "switch": self.switch,
            "ring": self.ring,
            "invertible": self.invertible,
            "passed": self.passed,
            "axioms": [a.__dict__ for a in self.axioms],
            "notes": list(self.notes),
        }


def verify_switch(S: Switch) -> SwitchReport:
    """Evaluates every axiom residual and the invertibility of S; never raises."""
    report = SwitchReport(switch=S.name, ring=S.ring.describe())
    for number, (equation, residual) in enumerate(zip(AXIOMS, axiom_residuals(S)), start=1):
        report.axioms.append(AxiomResult(number, equation, str(residual), residual.is_zero()))
    try:
        S.inverse()
        report.invertible = True
    except NonInvertibleError as e:
        report.notes.append(f"not invertible: {e}")
    logger.info("verified %s: %s", S.name, "pass" if report.passed else f"fail {report.failed_axioms()}")
    return report


def yang_baxter_sides(S: Switch) -> Tuple[Matrix, Matrix]:
    """(S x id)(id x S)(S x id) and (id x S)(S x id)(id x S) as 3x3 matrices."""
    left = block(S.matrix(), 0, 3, S.ring)
    right = block(S.matrix(), 1, 3, S.ring)
    return (
        mat_mul(mat_mul(left, right), left),
        mat_mul(mat_mul(right, left), right),
    )


def yang_baxter_holds(S: Switch) -> bool:
    lhs, rhs = yang_baxter_sides(S)
    return mat_equal(lhs, rhs)


def elementary_factorization(S: Switch) -> Tuple[Matrix, Matrix, Matrix, Matrix]:
    """
    diag(A, 1), [[1, 0], [C, 1]], diag(1, 1 - A^-1), [[1, A^-1 B], [0, 1]].
    Their product is S exactly when D = 1 - A^-1 + C A^-1 B.
    """
    one, zero = S.ring.one(), S.ring.zero()
    if not S.A.is_unit():
        raise SwitchPreconditionError("A invertible", f"A = {S.A}")
    Ainv = S.A.inverse()
    return (
        ((S.A, zero), (zero, one)),
        ((one, zero), (S.C, one)),
        ((one, zero), (zero, one - Ainv)),
        ((one, Ainv * S.B), (zero, one)),
    )


def factorization_holds(S: Switch) -> bool:
    e1, e2, e3, e4 = elementary_factorization(S)
    return mat_equal(mat_mul(mat_mul(mat_mul(e1, e2), e3), e4), S.matrix())


# ---------------------------------------------------------------------------
# augmentation
# ---------------------------------------------------------------------------

def _mentions(S: Switch, name: str) -> bool:
    for entry in S.entries():
        coords = entry.coords() if hasattr(entry, "coords") else (entry,)
        if any(name in c.variables() for c in coords):
            return True
    return False


def augment(S: Switch, t: Union[str, int, RatFun] = "t") -> Switch:
    """
    S(t) = [[A, tB], [t^-1 C, D]]; ``t`` is a variable name or a value.
    A variable already used by the entries (e.g. a second augmentation)
    is refused.
    """
    if isinstance(t, str):
        if t in S.unit_vars or _mentions(S, t):
            raise SwitchPreconditionError("fresh augmentation variable", f"{S.name} already uses {t!r}")
        ring = S.ring.extend(t)
        tval = ring.field.var(t)
        label = t
    else:
        ring = S.ring
        tval = ring.field.const(t)
        label = str(tval)
    A, B, C, D = (ring.lift(x) for x in S.entries())
    if tval.is_one():
        return Switch(A, B, C, D, ring, S.name, S.unit_vars)
    unit_vars = S.unit_vars + ((t,) if isinstance(t, str) and t not in S.unit_vars else ())
    return Switch(A, B * tval, C * tval.inverse(), D, ring, f"{S.name}({label})", unit_vars)


# ---------------------------------------------------------------------------
# sideways matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SidewaysPair:
    up: Matrix
    down: Matrix
    diag_unit: RingElem


def sideways_of(M: Matrix) -> Tuple[Matrix, Matrix]:
    """S+- and S-+ of an arbitrary 2x2 block matrix with B, C invertible."""
    (A, B), (C, D) = M
    for label, entry in (("B", B), ("C", C)):
        if not entry.is_unit():
            raise SwitchPreconditionError(f"{label} invertible", f"{label} = {entry}")
    Binv, Cinv = B.inverse(), C.inverse()
    up = ((D * Binv, C - D * Binv * A), (Binv, -(Binv * A)))
    down = ((-(Cinv * D), Cinv), (B - A * Cinv * D, A * Cinv))
    return up, down


def sideways(S: Switch) -> SidewaysPair:
    """
    Sideways matrices with lambda = B^-1 (1 - A), checked against (1 - D)^-1 C.
    The identity switch has B = 0 and is reported as degenerate.
    """
    up, down = sideways_of(S.matrix())
    one = S.ring.one()
    lam = S.B.inverse() * (one - S.A)
    if not lam.is_unit():
        raise SwitchPreconditionError("lambda invertible", f"B^-1 (1 - A) = {lam}")
    if not (one - S.D).is_unit() or (one - S.D).inverse() * S.C != lam:
        raise SwitchPreconditionError("lambda consistent", "B^-1 (1 - A) differs from (1 - D)^-1 C")
    return SidewaysPair(up, down, lam)


def preserves_diagonal(pair: SidewaysPair, a: RingElem) -> bool:
    """S+-(a, a) = (lambda a, lambda a) and S-+(a, a) = (lambda^-1 a, lambda^-1 a)."""
    lam = pair.diag_unit
    up = tuple(r[0] * a + r[1] * a for r in pair.up)
    down = tuple(r[0] * a + r[1] * a for r in pair.down)
    return up == (lam * a, lam * a) and down == (lam.inverse() * a, lam.inverse() * a)


# ---------------------------------------------------------------------------
# Burau conjugation
# ---------------------------------------------------------------------------

def burau_parameter(S: Switch) -> RingElem:
    """Q = (1 - A)(1 - D)."""
    one = S.ring.one()
    return (one - S.A) * (one - S.D)


def burau_conjugator(S: Switch, n: int) -> Tuple[Matrix, Switch]:
    """
    M with first row (1, 0, ..., 0) and row r = (A, BA, ..., B^(r-1) A, B^r, 0, ...),
    together with the Burau switch S' for Q = (1 - A)(1 - D), so that
    M rho(S) = rho(S') M.
    """
    if n < 1:
        raise SwitchPreconditionError("at least one strand", f"n = {n}")
    if S.is_commutative() or S.A * S.B == S.B * S.A:
        raise SwitchPreconditionError("non-commuting switch", S.name)
    one, zero = S.ring.one(), S.ring.zero()
    powers = [one]
    for _ in range(1, n):
        powers.append(S.B * powers[-1])
    rows = [tuple(one if j == 0 else zero for j in range(n))]
    for r in range(1, n):
        rows.append(tuple(
            powers[j] * S.A if j < r else (powers[r] if j == r else zero)
            for j in range(n)
        ))
    Q = burau_parameter(S)
    prime = Switch(zero, one, Q, one - Q, S.ring, f"burau[{S.name}]", S.unit_vars)
    return tuple(rows), prime


def conjugation_identity_holds(S: Switch) -> bool:
    """A^2 + BC = Q + (1 - Q) A, the step behind the conjugation."""
    Q = burau_parameter(S)
    one = S.ring.one()
    return S.A * S.A + S.B * S.C == Q + (one - Q) * S.A


