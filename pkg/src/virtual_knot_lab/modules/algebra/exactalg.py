"""
Exact scalar arithmetic.

Scalars are Gaussian rationals (sympy's ``QQ_I``), polynomials are sparse
``PolyElement``s of a graded-lex ``PolyRing`` over ``QQ_I`` and rational
functions are GCD-reduced pairs of such polynomials.  Nothing here ever
touches floating point.

Canonical forms
---------------
* ``RatFun``: numerator and denominator coprime, denominator monic under
  graded-lex with the variable order of its ``FunctionField``.
* ``canonical_poly``: primitive (integer coefficients with content 1) and a
  positive leading real part under graded-lex.  This is the representative of
  "up to a nonzero constant" used by ``poly_gcd`` and ``laurent_normalize_t``.

Text syntax
-----------
Terms are printed in ascending graded-lex order, e.g. ``2+5*t^2+2*t^4`` or
``(-3/2+1/2*I)*a^2*t``; ``I`` is the Gaussian unit.  ``FunctionField.parse``
reads the same syntax back.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from sympy import I, Symbol, fraction, sympify, together
from sympy.core.sympify import SympifyError
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from virtual_knot_lab.core.exceptions import (
    AlgebraError,
    DivisionByZeroError,
    ParamsMismatchError,
    ParseError,
)
from virtual_knot_lab.core.logger import setup_logger

logger = setup_logger(__name__)

GaussRat = GaussianRational
MPoly = PolyElement

Scalar = Union[int, Fraction, GaussianRational, "RatFun"]

__all__ = [
    "GaussRat",
    "MPoly",
    "FunctionField",
    "RatFun",
    "InvariantPoly",
    "function_field",
    "gauss",
    "poly_gcd",
    "canonical_poly",
    "ratfun_arith",
    "laurent_normalize_t",
    "normalize_or_zero",
    "parse_invariant",
    "unit_orbit_of",
    "format_poly",
    "format_ratfun",
    "poly_lcm",
    "gcd_many",
    "real_view",
    "from_real",
]


def gauss(re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0) -> GaussianRational:
    """Builds the Gaussian rational re + im*I from ints, Fractions or 'p/q' strings."""
    def _q(value):
        value = Fraction(value)
        return QQ(value.numerator, value.denominator)
    return QQ_I(_q(re), _q(im))


def _to_fraction(q) -> Fraction:
    return Fraction(int(QQ.numer(q)), int(QQ.denom(q)))


# ---------------------------------------------------------------------------
# polynomial helpers
# ---------------------------------------------------------------------------

def _is_real(p: PolyElement) -> bool:
    return all(not c.y for c in p.itercoeffs())


def _real_ring(ring: PolyRing) -> PolyRing:
    return ring.clone(domain=QQ)


def _to_real(p: PolyElement) -> PolyElement:
    rring = _real_ring(p.ring)
    return rring.from_dict({m: c.x for m, c in p.iterterms()})


def _from_real(p: PolyElement, ring: PolyRing) -> PolyElement:
    return ring.from_dict({m: QQ_I(c, QQ.zero) for m, c in p.iterterms()})


def canonical_poly(p: PolyElement) -> PolyElement:
    """
    Returns the primitive associate of p with a positive leading real part.
    Zero maps to zero.
    """
    if not p:
        return p
    denominators = 1
    numerators = 0
    for c in p.itercoeffs():
        for part in (c.x, c.y):
            if part:
                f = _to_fraction(part)
                denominators = math.lcm(denominators, f.denominator)
    for c in p.itercoeffs():
        for part in (c.x, c.y):
            if part:
                f = _to_fraction(part) * denominators
                numerators = math.gcd(numerators, int(f))
    scale = Fraction(denominators, numerators)
    q = p.mul_ground(gauss(scale))
    lead = q.LC
    if lead.x > 0:
        return q
    if lead.x < 0:
        return -q
    # purely imaginary leading coefficient: rotate by -I or I
    return q.mul_ground(gauss(0, -1) if lead.y > 0 else gauss(0, 1))


def poly_gcd(p: PolyElement, q: PolyElement) -> PolyElement:
    """
    Greatest common divisor of two polynomials of one ring, in canonical form.
    gcd(0, q) is canonical(q); gcd(0, 0) is 0.
    """
    if p.ring != q.ring:
        raise ParamsMismatchError(f"gcd across rings {p.ring} and {q.ring}")
    if not p:
        return canonical_poly(q)
    if not q:
        return canonical_poly(p)
    if _is_real(p) and _is_real(q):
        h = _to_real(p).gcd(_to_real(q))
        return canonical_poly(_from_real(h, p.ring))
    return canonical_poly(p.gcd(q))


def _cancel(num: PolyElement, den: PolyElement) -> Tuple[PolyElement, PolyElement]:
    """Reduces num/den and makes den monic."""
    if not den:
        raise DivisionByZeroError(den)
    ring = num.ring
    if not num:
        return ring.zero, ring.one
    if den.is_ground:
        lead = den.LC
        return num.quo_ground(lead), ring.one
    if _is_real(num) and _is_real(den):
        p, q = _to_real(num).cancel(_to_real(den))
        lead = q.LC
        p, q = p.quo_ground(lead), q.quo_ground(lead)
        return _from_real(p, ring), _from_real(q, ring)
    p, q = num.cancel(den)
    lead = q.LC
    return p.quo_ground(lead), q.quo_ground(lead)


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------

def _format_rational(q) -> str:
    f = _to_fraction(q)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _format_coeff(c: GaussianRational) -> Tuple[str, bool]:
    """Returns (text, is_unit_magnitude) where unit magnitude means +-1 or +-I."""
    if not c.y:
        text = _format_rational(c.x)
        return text, text in ("1", "-1")
    if not c.x:
        im = _format_rational(c.y)
        if im == "1":
            return "I", True
        if im == "-1":
            return "-I", True
        return f"{im}*I", False
    re = _format_rational(c.x)
    im = _format_rational(c.y)
    sign = "" if im.startswith("-") else "+"
    if im in ("1", "-1"):
        im_text = "I" if im == "1" else "-I"
        return f"({re}{sign}{im_text})" if sign else f"({re}{im_text})", False
    return f"({re}{sign}{im}*I)", False


def _format_monom(names: Tuple[str, ...], monom: Tuple[int, ...]) -> str:
    parts = []
    for name, e in zip(names, monom):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: PolyElement) -> str:
    """Canonical text of a polynomial, terms in ascending graded-lex order."""
    if not p:
        return "0"
    names = tuple(str(s) for s in p.ring.symbols)
    pieces = []
    for monom, coeff in reversed(p.terms()):
        mono = _format_monom(names, monom)
        ctext, unit = _format_coeff(coeff)
        if not mono:
            piece = ctext
        elif unit:
            piece = mono if ctext in ("1",) else ("-" + mono if ctext in ("-1",) else f"{ctext}*{mono}")
        else:
            piece = f"{ctext}*{mono}"
        pieces.append(piece)
    text = pieces[0]
    for piece in pieces[1:]:
        text += piece if piece.startswith("-") else "+" + piece
    return text


def format_ratfun(num: PolyElement, den: PolyElement) -> str:
    if den == den.ring.one:
        return format_poly(num)
    ntext = format_poly(num)
    dtext = format_poly(den)
    if len(num) > 1:
        ntext = f"({ntext})"
    if len(den) > 1 or "*" in dtext or "/" in dtext:
        dtext = f"({dtext})"
    return f"{ntext}/{dtext}"


# ---------------------------------------------------------------------------
# function fields
# ---------------------------------------------------------------------------

class FunctionField:
    """
    The field QQ(i)(x1, ..., xn) with a declared variable order.

    Instances are interned per variable tuple, see ``function_field``.
    """

    def __init__(self, names: Tuple[str, ...]):
        if len(set(names)) != len(names):
            raise AlgebraError(f"repeated variable in {names}")
        self.names = tuple(names)
        if self.names:
            self.ring = PolyRing(self.names, QQ_I, grlex)
        else:
            # a ring needs a generator; an unused dummy keeps constants uniform
            self.ring = PolyRing(("_u",), QQ_I, grlex)
        self._symbols = {name: Symbol(name) for name in self.names}

    def __eq__(self, other) -> bool:
        return isinstance(other, FunctionField) and other.names == self.names

    def __hash__(self) -> int:
        return hash(("FunctionField", self.names))

    def __repr__(self) -> str:
        return f"FunctionField({', '.join(self.names) or 'QQ_I'})"

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ParseError(f"unknown variable {name!r}; field has {self.names}") from None

    def zero(self) -> "RatFun":
        return RatFun(self, self.ring.zero, self.ring.one, _reduced=True)

    def one(self) -> "RatFun":
        return RatFun(self, self.ring.one, self.ring.one, _reduced=True)

    def var(self, name: str) -> "RatFun":
        gen = self.ring.gens[self.index(name)]
        return RatFun(self, gen, self.ring.one, _reduced=True)

    def const(self, value) -> "RatFun":
        if isinstance(value, RatFun):
            return value.to_field(self)
        if isinstance(value, GaussianRational):
            c = value
        elif isinstance(value, tuple):
            c = gauss(*value)
        elif isinstance(value, complex):
            raise AlgebraError("floating point scalars are not exact")
        else:
            c = gauss(value)
        return RatFun(self, self.ring.ground_new(c), self.ring.one, _reduced=True)

    def from_polys(self, num: PolyElement, den: Optional[PolyElement] = None) -> "RatFun":
        return RatFun(self, num, self.ring.one if den is None else den)

    def parse(self, text: str) -> "RatFun":
        """Reads the canonical text syntax (``^`` or ``**`` powers, ``I`` unit)."""
        source = text.strip().replace("^", "**")
        if not source:
            raise ParseError("empty expression")
        local: Dict[str, object] = dict(self._symbols)
        local["I"] = I
        try:
            expr = sympify(source, locals=local)
        except (SympifyError, SyntaxError, TypeError, ValueError) as e:
            raise ParseError(f"cannot parse {text!r}: {e}") from e
        unknown = {str(s) for s in expr.free_symbols} - set(self.names)
        if unknown:
            raise ParseError(f"unknown variables {sorted(unknown)} in {text!r}")
        num_expr, den_expr = fraction(together(expr))
        try:
            num = self.ring.from_expr(num_expr)
            den = self.ring.from_expr(den_expr)
        except (ValueError, TypeError) as e:
            raise ParseError(f"{text!r} is not a rational function: {e}") from e
        return RatFun(self, num, den)


@lru_cache(maxsize=None)
def function_field(names: Tuple[str, ...] = ()) -> FunctionField:
    return FunctionField(tuple(names))


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFun:
    """
    Reduced fraction num/den over a FunctionField; immutable.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field: FunctionField, num: PolyElement, den: PolyElement, _reduced: bool = False):
        if not _reduced:
            num, den = _cancel(num, den)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, key, value):
        raise AttributeError("RatFun is immutable")

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            if other.field != self.field:
                raise ParamsMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.field.const(other)
        return NotImplemented  # type: ignore[return-value]

    def to_field(self, field: FunctionField) -> "RatFun":
        """Re-expresses self in a field whose variables include ours."""
        if field == self.field:
            return self
        used = [name for name in self.field.names if self._uses(name)]
        missing = [name for name in used if name not in field.names]
        if missing:
            raise ParamsMismatchError(f"{field} lacks variables {missing}")
        positions = [field.names.index(name) if name in field.names else None for name in self.field.names]

        def _move(p: PolyElement) -> PolyElement:
            terms = {}
            for monom, coeff in p.iterterms():
                target = [0] * field.ring.ngens
                for pos, e in zip(positions, monom):
                    if e:
                        target[pos] = e
                terms[tuple(target)] = coeff
            return field.ring.from_dict(terms)

        return RatFun(field, _move(self.num), _move(self.den))

    def _uses(self, name: str) -> bool:
        i = self.field.index(name)
        return self.num.degree(self.ring.gens[i]) > 0 or self.den.degree(self.ring.gens[i]) > 0

    @property
    def ring(self) -> PolyRing:
        return self.field.ring

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == self.ring.one and self.den == self.ring.one

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def is_polynomial(self) -> bool:
        return self.den == self.ring.one

    def is_real(self) -> bool:
        return _is_real(self.num) and _is_real(self.den)

    def is_unit(self) -> bool:
        return bool(self.num)

    def __bool__(self) -> bool:
        return bool(self.num)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise AlgebraError(f"{self} is not a constant")
        return self.num.LC if self.num else QQ_I.zero

    def variables(self) -> Tuple[str, ...]:
        return tuple(n for n in self.field.names if self._uses(n))

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "RatFun":
        return RatFun(self.field, -self.num, self.den, _reduced=True)

    def __pos__(self) -> "RatFun":
        return self

    def __add__(self, other) -> "RatFun":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        one = self.ring.one
        if self.den == one and other.den == one:
            return RatFun(self.field, self.num + other.num, one, _reduced=True)
        if self.den == other.den:
            return RatFun(self.field, self.num + other.num, self.den)
        return RatFun(self.field, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFun":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFun":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RatFun":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return self.field.zero()
        one = self.ring.one
        if self.den == one and other.den == one:
            return RatFun(self.field, self.num * other.num, one, _reduced=True)
        return RatFun(self.field, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if not self.num:
            raise DivisionByZeroError(self)
        return RatFun(self.field, self.den, self.num)

    def __truediv__(self, other) -> "RatFun":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise DivisionByZeroError(other)
        return RatFun(self.field, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFun":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> "RatFun":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun(self.field, self.num ** n, self.den ** n, _reduced=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.field.const(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        return hash((self.field, self.num, self.den))

    # -- ring-generic hooks used by matrices and switches ------------------
    def ring_one(self) -> "RatFun":
        return self.field.one()

    def ring_zero(self) -> "RatFun":
        return self.field.zero()

    def coerce(self, value) -> "RatFun":
        return self.field.const(value)

    # -- evaluation -------------------------------------------------------
    def substitute(self, mapping: Mapping[str, "RatFun"], target: Optional[FunctionField] = None) -> "RatFun":
        """
        Replaces variables by rational functions of ``target`` (default: own
        field).  Unmapped variables must exist in ``target``.
        """
        target = target or self.field
        images = []
        for name in self.field.names:
            if name in mapping:
                images.append(target.const(mapping[name]) if not isinstance(mapping[name], RatFun) else mapping[name])
            elif name in target.names:
                images.append(target.var(name))
            else:
                images.append(None)

        def _eval(p: PolyElement) -> RatFun:
            total = target.zero()
            for monom, coeff in p.iterterms():
                term = target.const(coeff)
                for image, e in zip(images, monom):
                    if e:
                        if image is None:
                            raise ParamsMismatchError(f"variable missing from {target}")
                        term = term * image ** e
                total = total + term
            return total

        return _eval(self.num) / _eval(self.den)

    def clear_denominator(self) -> Tuple[PolyElement, PolyElement]:
        return self.num, self.den

    # -- text ---------------------------------------------------------------
    def __str__(self) -> str:
        return format_ratfun(self.num, self.den)

    def __repr__(self) -> str:
        return f"RatFun({self})"


def ratfun_arith(a: RatFun, b: Optional[RatFun], op: str) -> RatFun:
    """Dispatches add/sub/mul/div/inv; inv ignores ``b``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "inv":
        return a.inverse()
    raise AlgebraError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# invariant values
# ---------------------------------------------------------------------------

UNIT_ORBIT = ("powers of t", "nonzero constants")


@dataclass(frozen=True)
class InvariantPoly:
    """
    Canonical representative of a unit orbit: num and den are canonical
    polynomials (primitive, positive leading real part), coprime, with no
    factor of the normalizing variable.  Zero is num = 0, den = 1.
    """

    field: FunctionField
    num: PolyElement
    den: PolyElement
    unit_orbit: Tuple[str, ...] = UNIT_ORBIT

    @classmethod
    def zero(cls, field: FunctionField, unit_orbit: Tuple[str, ...] = UNIT_ORBIT) -> "InvariantPoly":
        return cls(field, field.ring.zero, field.ring.one, unit_orbit)

    @classmethod
    def one(cls, field: FunctionField, unit_orbit: Tuple[str, ...] = UNIT_ORBIT) -> "InvariantPoly":
        return cls(field, field.ring.one, field.ring.one, unit_orbit)

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == self.field.ring.one and self.den == self.field.ring.one

    def as_ratfun(self) -> RatFun:
        return RatFun(self.field, self.num, self.den)

    def same_value(self, other: "InvariantPoly") -> bool:
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __eq__(self, other) -> bool:
        if not isinstance(other, InvariantPoly):
            return NotImplemented
        return self.same_value(other)

    def __hash__(self) -> int:
        return hash((self.field, self.num, self.den))

    def __str__(self) -> str:
        return format_ratfun(self.num, self.den)


def _strip_variable(p: PolyElement, index: int) -> PolyElement:
    """Divides p by the largest power of generator ``index`` dividing it."""
    if not p:
        return p
    low = min(m[index] for m in p.itermonoms())
    if not low:
        return p
    shift = tuple(low if i == index else 0 for i in range(p.ring.ngens))
    return p.ring.from_dict({tuple(a - b for a, b in zip(m, shift)): c for m, c in p.iterterms()})


UnitVars = Union[None, str, Sequence[str]]


def _unit_vars(tvar: UnitVars) -> Tuple[str, ...]:
    if tvar is None:
        return ()
    if isinstance(tvar, str):
        return (tvar,)
    return tuple(tvar)


def unit_orbit_of(tvar: UnitVars) -> Tuple[str, ...]:
    """Descriptor of the multipliers quotiented out for the given unit variables."""
    return tuple(f"powers of {v}" for v in _unit_vars(tvar)) + ("nonzero constants",)


def laurent_normalize_t(f: Union[RatFun, PolyElement], tvar: UnitVars = "t",
                        unit_orbit: Optional[Tuple[str, ...]] = None) -> InvariantPoly:
    """
    Canonical representative of f modulo powers of ``tvar`` and nonzero
    constants.  ``tvar`` may name several commuting unit variables; names
    missing from the field are ignored.
    """
    if isinstance(f, PolyElement):
        raise AlgebraError("laurent_normalize_t expects a RatFun")
    if f.is_zero():
        raise AlgebraError("zero has no unit-orbit normal form")
    num, den = f.num, f.den
    for name in _unit_vars(tvar):
        if name in f.field.names:
            index = f.field.index(name)
            num = _strip_variable(num, index)
            den = _strip_variable(den, index)
    num = canonical_poly(num)
    den = canonical_poly(den)
    logger.debug("normalized %s to (%s)/(%s)", f, format_poly(num), format_poly(den))
    return InvariantPoly(f.field, num, den, unit_orbit or unit_orbit_of(tvar))


def normalize_or_zero(f: RatFun, tvar: UnitVars = "t",
                      unit_orbit: Optional[Tuple[str, ...]] = None) -> InvariantPoly:
    if f.is_zero():
        return InvariantPoly.zero(f.field, unit_orbit or unit_orbit_of(tvar))
    return laurent_normalize_t(f, tvar, unit_orbit)


def parse_invariant(field: FunctionField, text: str, tvar: UnitVars = "t") -> InvariantPoly:
    """Parses text and returns its unit-orbit representative."""
    return normalize_or_zero(field.parse(text), tvar)


def gcd_many(polys: Iterable[PolyElement], ring: PolyRing) -> PolyElement:
    h = ring.zero
    for p in polys:
        h = poly_gcd(h, p)
        if h and h.is_ground:
            break
    return h


def poly_lcm(p: PolyElement, q: PolyElement) -> PolyElement:
    """Least common multiple, monic up to the gcd's canonical scaling."""
    if not p or not q:
        return p.ring.zero
    return (p * q).exquo(poly_gcd(p, q))


def real_view(polys: Sequence[PolyElement]) -> Optional[Tuple[PolyRing, Tuple[PolyElement, ...]]]:
    """The same polynomials over QQ when every coefficient is real, else None."""
    if not all(_is_real(p) for p in polys):
        return None
    if not polys:
        return None
    return _real_ring(polys[0].ring), tuple(_to_real(p) for p in polys)


def from_real(p: PolyElement, ring: PolyRing) -> PolyElement:
    return _from_real(p, ring)
