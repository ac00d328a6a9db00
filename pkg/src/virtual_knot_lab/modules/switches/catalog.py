"""
Named switches: identity, Alexander, Burau, Budapest and the two 2x2 matrix
families E1, E2, plus parameter binding for ``--param name=value``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from virtual_knot_lab.core.exceptions import ParseError, SwitchPreconditionError
from virtual_knot_lab.core.logger import setup_logger
from virtual_knot_lab.modules.algebra.exactalg import FunctionField, RatFun, function_field
from virtual_knot_lab.modules.algebra.matrices import RingDescriptor, RingElem
from virtual_knot_lab.modules.algebra.quat import (
    AlgebraParams,
    Quaternion,
    classical_params,
    commutes,
    fundamental_holds,
    mat2_bridge,
    mat2_to_quaternion,
    matrix_params,
)
from virtual_knot_lab.modules.switches.switchlab import Switch, augment

logger = setup_logger(__name__)

# C and D exactly as printed alongside the E1 and E2 constructions
PRINTED_BLOCKS: Dict[str, Dict[str, Tuple[Tuple[str, str], Tuple[str, str]]]] = {
    "e1": {
        "C": (
            ("y+x*z", "z"),
            ("-(x^2*z^2+3*x*y*z+2*y^2+2)/(2*z)", "-x*z/2-y"),
        ),
        "D": (
            ("x*y*z/2", "x*z^2/2"),
            ("-x*(2*y^2+x*y*z-2)/4", "-x*z*(x*z+2*y)/4"),
        ),
    },
    "e2": {
        "C": (
            ("b", "c/(1-a)^2"),
            ("(1-a)*(b^2+a-1)/c", "b/(1-a)"),
        ),
        "D": (
            ("(2-3*a+a*b^2+a^2-2*b^2)/(1-a)^2", "(a-2)*b*c/(1-a)^2"),
            ("(a-2)*b*(b^2+a-1)/(c*(1-a))", "(2-3*a+a*b^2+a^2-2*b^2)/(1-a)"),
        ),
    },
}


def _ring_of(value: RingElem) -> RingDescriptor:
    if isinstance(value, Quaternion):
        return RingDescriptor(value.field, value.params)
    return RingDescriptor(value.field)


def make_identity(ring: Optional[RingDescriptor] = None) -> Switch:
    """The identity matrix.  B = C = 0, so it is built unchecked."""
    ring = ring or RingDescriptor(function_field(("t",)))
    return Switch(ring.one(), ring.zero(), ring.zero(), ring.one(), ring, "identity")


def make_alexander(Bv: RingElem, Cv: RingElem, name: str = "alexander",
                   unit_vars: Tuple[str, ...] = ()) -> Switch:
    """[[0, B], [C, 1 - BC]] for commuting units B, C."""
    ring = _ring_of(Cv)
    Bv, Cv = ring.coerce(Bv), ring.coerce(Cv)
    if not Bv.is_unit():
        raise SwitchPreconditionError("B invertible", f"B = {Bv}")
    if not Cv.is_unit():
        raise SwitchPreconditionError("C invertible", f"C = {Cv}")
    if Bv * Cv != Cv * Bv:
        raise SwitchPreconditionError("B, C commuting", f"B = {Bv}, C = {Cv}")
    return Switch(ring.zero(), Bv, Cv, ring.one() - Bv * Cv, ring, name, unit_vars)


def make_burau(Cv: RingElem, unit_vars: Tuple[str, ...] = ()) -> Switch:
    return make_alexander(1, Cv, "burau", unit_vars)


def make_noncommuting(A: Quaternion, B: Quaternion, name: str = "noncommuting") -> Switch:
    """
    C = A^-1 B^-1 A (1 - A), D = 1 - A^-1 B^-1 A B.  Each precondition is
    checked separately so the error names the one that failed.
    """
    if not isinstance(A, Quaternion) or not isinstance(B, Quaternion):
        raise SwitchPreconditionError("quaternion entries", "A and B must be quaternions")
    if not A.is_unit():
        raise SwitchPreconditionError("A invertible", f"A = {A}")
    if not (A - 1).is_unit():
        raise SwitchPreconditionError("A - 1 invertible", f"A - 1 = {A - 1}")
    if not B.is_unit():
        raise SwitchPreconditionError("B invertible", f"B = {B}")
    if commutes(A, B):
        raise SwitchPreconditionError("A, B non-commuting", f"A = {A}, B = {B}")
    if not fundamental_holds(A, B):
        raise SwitchPreconditionError("fundamental equation", f"A = {A}, B = {B}")
    P = A.inverse() * B.inverse() * A
    C = P * (1 - A)
    D = 1 - P * B
    logger.debug("non-commuting switch %s: C = %s, D = %s", name, C, D)
    return Switch(A, B, C, D, RingDescriptor(A.field, A.params), name)


def make_budapest(field: Optional[FunctionField] = None) -> Switch:
    """[[1+i, j], [-j, 1+i]] over the classical quaternions."""
    params = classical_params(field or function_field(("t",)))
    A = Quaternion.from_coords(params, 1, 1, 0, 0)
    B = Quaternion.basis(params, "j")
    return make_noncommuting(A, B, "budapest")


def _matrix_quaternion(f: FunctionField, params: AlgebraParams, rows) -> Quaternion:
    entries = tuple(tuple(f.parse(x) if isinstance(x, str) else f.const(x) for x in row) for row in rows)
    return mat2_to_quaternion(entries, params)


def make_E1(field: Optional[FunctionField] = None) -> Switch:
    """A = [[2, 0], [x, 2]] with one eigenvalue; B from the general matching solution."""
    f = field or function_field(("x", "y", "z", "t"))
    params = matrix_params(f)
    A = _matrix_quaternion(f, params, ((2, 0), ("x", 2)))
    B = _matrix_quaternion(f, params, (("y", "z"), ("(x*y*z-2*y^2-2)/(2*z)", "(x*z-2*y)/2")))
    return make_noncommuting(A, B, "E1")


def make_E2(field: Optional[FunctionField] = None) -> Switch:
    """A = diag(a, a/(a-1)) with two eigenvalues; B from the general matching solution."""
    f = field or function_field(("a", "b", "c", "t"))
    params = matrix_params(f)
    A = _matrix_quaternion(f, params, (("a", 0), (0, "a/(a-1)")))
    B = _matrix_quaternion(f, params, (("b", "c"), ("(b^2+a-1)/(c*(1-a))", "b/(1-a)")))
    return make_noncommuting(A, B, "E2")


# ---------------------------------------------------------------------------
# derived versus printed blocks
# ---------------------------------------------------------------------------

@dataclass
class EntryCheck:
    block: str
    row: int
    col: int
    derived: str
    printed: str
    difference: str
    agrees: bool


@dataclass
class DiscrepancyReport:
    target: str
    entries: List[EntryCheck] = field(default_factory=list)

    @property
    def mismatches(self) -> List[EntryCheck]:
        return [e for e in self.entries if not e.agrees]

    @property
    def agrees(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target,
            "agrees": self.agrees,
            "entries": [e.__dict__ for e in self.entries],
        }


def printed_discrepancy(name: str) -> DiscrepancyReport:
    """Compares the derived C, D of E1 or E2 with the printed matrices entry by entry."""
    builders = {"e1": make_E1, "e2": make_E2}
    if name not in builders:
        raise SwitchPreconditionError("printed matrices available", f"no printed blocks for {name!r}")
    S = builders[name]()
    f = S.ring.field
    report = DiscrepancyReport(target=name)
    for label, derived in (("C", S.C), ("D", S.D)):
        matrix = mat2_bridge(derived)
        for i in range(2):
            for j in range(2):
                printed = f.parse(PRINTED_BLOCKS[name][label][i][j])
                diff = matrix[i][j] - printed
                report.entries.append(EntryCheck(
                    label, i + 1, j + 1, str(matrix[i][j]), str(printed), str(diff), diff.is_zero(),
                ))
    logger.info("%s printed blocks: %d mismatching entries", name, len(report.mismatches))
    return report


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def _alexander() -> Switch:
    f = function_field(("B", "C"))
    return make_alexander(f.var("B"), f.var("C"), unit_vars=("B", "C"))


def _burau() -> Switch:
    f = function_field(("C",))
    return make_burau(f.var("C"), unit_vars=("C",))


SWITCHES: Dict[str, Callable[[], Switch]] = {
    "identity": make_identity,
    "alexander": _alexander,
    "burau": _burau,
    "budapest": make_budapest,
    "e1": lambda: augment(make_E1(), "t"),
    "e2": lambda: augment(make_E2(), "t"),
}

DESCRIPTIONS: Dict[str, str] = {
    "identity": "identity matrix (degenerate: B = C = 0)",
    "alexander": "[[0, B], [C, 1-BC]] over QQ(i)(B, C)",
    "burau": "Alexander switch with B = 1 over QQ(i)(C)",
    "budapest": "[[1+i, j], [-j, 1+i]] over the quaternions (-1, -1)",
    "e1": "E1 over M_2(QQ(i)(x, y, z, t)), augmented by t",
    "e2": "E2 over M_2(QQ(i)(a, b, c, t)), augmented by t",
}


def switch_names() -> List[str]:
    return list(SWITCHES)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def bind_params(S: Switch, bindings: Mapping[str, str]) -> Switch:
    """
    Substitutes ``name=value`` bindings into every entry.  A value is any
    expression in the text syntax; identifiers it introduces become new
    variables of the result.
    """
    if not bindings:
        return S
    names = S.ring.field.names
    for name in bindings:
        if name not in names:
            raise ParseError(f"switch {S.name} has no variable {name!r}; it has {names}")
    introduced: List[str] = []
    for text in bindings.values():
        for ident in _IDENT.findall(text):
            if ident != "I" and ident not in names and ident not in introduced:
                introduced.append(ident)
    kept = tuple(n for n in names if n not in bindings)
    target = function_field(kept + tuple(introduced))
    source = function_field(names + tuple(introduced))
    mapping = {name: source.parse(text).to_field(target) for name, text in bindings.items()}

    def _bind(x: RatFun) -> RatFun:
        return x.substitute(mapping, target)

    if S.ring.params is None:
        ring = RingDescriptor(target)
        entries = [_bind(x) for x in S.entries()]
    else:
        params = AlgebraParams(target.const(S.ring.params.lam.constant_value()),
                               target.const(S.ring.params.mu.constant_value()))
        ring = RingDescriptor(target, params)
        entries = [Quaternion(*(_bind(c) for c in x.coords()), params) for x in S.entries()]
    unit_vars = tuple(v for v in S.unit_vars if v in target.names)
    bound = Switch(*entries, ring, S.name, unit_vars)
    for label, entry in (("B", bound.B), ("C", bound.C)):
        if not entry.is_unit():
            raise SwitchPreconditionError(f"{label} invertible", f"{label} = {entry} after binding")
    logger.info("bound %s with %s", S.name, dict(bindings))
    return bound


def get_switch(name: str, params: Optional[Mapping[str, str]] = None,
               augment_var: Optional[str] = None) -> Switch:
    """Catalog lookup with optional parameter binding and augmentation."""
    key = name.lower()
    if key not in SWITCHES:
        raise SwitchPreconditionError("known switch", f"{name!r}; choose from {', '.join(SWITCHES)}")
    S = SWITCHES[key]()
    if params:
        S = bind_params(S, params)
    if augment_var:
        S = augment(S, augment_var)
    return S


def parse_param_options(options: List[str]) -> Dict[str, str]:
    """Splits repeated ``name=value`` options."""
    out: Dict[str, str] = {}
    for option in options:
        name, sep, value = option.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise ParseError(f"expected name=value, got {option!r}")
        out[name.strip()] = value.strip()
    return out


