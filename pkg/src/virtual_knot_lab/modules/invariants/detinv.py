"""
The determinant functional d and the module invariants Delta0 and Delta1.

Over a quaternion algebra with lam, mu in {+1, -1}, d expands every entry
through i -> [[0, s], [-s, 0]], j -> [[0, r], [r, 0]] (s^2 = -lam,
r^2 = mu, s, r in {1, I}) and takes the ordinary determinant of the
resulting 2n x 2n matrix.  Over a commutative field d is the ordinary
determinant.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from virtual_knot_lab.config.settings import get_settings
from virtual_knot_lab.core.exceptions import AlgebraError, UnsupportedParametersError
from virtual_knot_lab.core.logger import setup_logger
from virtual_knot_lab.modules.algebra.exactalg import (
    FunctionField,
    InvariantPoly,
    RatFun,
    format_poly,
    from_real,
    function_field,
    gauss,
    normalize_or_zero,
    poly_gcd,
    poly_lcm,
    real_view,
    unit_orbit_of,
)
from virtual_knot_lab.modules.algebra.matrices import Matrix, RingDescriptor, minor, shape
from virtual_knot_lab.modules.algebra.quat import Mat2, Quaternion, norm
from virtual_knot_lab.modules.diagrams.diagmod import PresentationMatrix

logger = setup_logger(__name__)

CONSISTENT_WITH_CLASSICAL = "consistent_with_classical"
NOT_CLASSICAL = "not_classical"


# ---------------------------------------------------------------------------
# commutative determinants
# ---------------------------------------------------------------------------

def _bareiss(rows: List[List[PolyElement]]) -> PolyElement:
    """Fraction-free elimination; every division is exact."""
    n = len(rows)
    ring = rows[0][0].ring
    M = [list(r) for r in rows]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return ring.zero
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            lead = M[i][k]
            for j in range(k + 1, n):
                elt = pivot * M[i][j] - lead * M[k][j]
                M[i][j] = elt.exquo(prev) if k else elt
            M[i][k] = ring.zero
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def det_commutative(M: Sequence[Sequence[RatFun]], f: FunctionField) -> RatFun:
    """Ordinary determinant: clear each row's denominators, then Bareiss."""
    n = len(M)
    if n == 0:
        return f.one()
    if len(M[0]) != n:
        raise AlgebraError(f"determinant of a non-square {n}x{len(M[0])} matrix")
    ring = f.ring
    cleared: List[List[PolyElement]] = []
    denominator = ring.one
    for row in M:
        lcm = reduce(poly_lcm, (a.den for a in row), ring.one)
        cleared.append([a.num * lcm.exquo(a.den) for a in row])
        denominator = denominator * lcm
    flat = [p for row in cleared for p in row]
    view = real_view(flat)
    if view is not None:
        _, real = view
        det = from_real(_bareiss([list(real[i * n:(i + 1) * n]) for i in range(n)]), ring)
    else:
        det = _bareiss(cleared)
    return f.from_polys(det, denominator)


# ---------------------------------------------------------------------------
# the functional d
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DetFunctional:
    ring: RingDescriptor

    def _roots(self) -> Tuple[RatFun, RatFun]:
        lam, mu = self.ring.params.signs()
        f = self.ring.field
        s = f.const(1) if lam == -1 else f.const(gauss(0, 1))
        r = f.const(1) if mu == 1 else f.const(gauss(0, 1))
        return s, r

    def embed_entry(self, q: Quaternion) -> Mat2:
        s, r = self._roots()
        a0, a1, a2, a3 = q.coords()
        sr = s * r
        return (
            (a0 + a3 * sr, a1 * s + a2 * r),
            (a2 * r - a1 * s, a0 - a3 * sr),
        )

    def embed(self, M: Matrix) -> List[List[RatFun]]:
        """The 2n x 2n commutative image of a quaternion matrix."""
        out: List[List[RatFun]] = []
        for row in M:
            blocks = [self.embed_entry(q) for q in row]
            out.append([b[0][c] for b in blocks for c in range(2)])
            out.append([b[1][c] for b in blocks for c in range(2)])
        return out

    def commutative_image(self, M: Matrix) -> List[List[RatFun]]:
        if self.ring.is_quaternionic:
            return self.embed(M)
        return [list(r) for r in M]

    def __call__(self, M: Matrix) -> RatFun:
        return det_commutative(self.commutative_image(M), self.ring.field)


def _check_params(ring: RingDescriptor):
    if ring.is_quaternionic:
        try:
            ring.params.signs()
        except UnsupportedParametersError as e:
            raise UnsupportedParametersError(f"d needs lam, mu in {{+1, -1}}: {e}") from e


def det_d(M: Matrix, ring: RingDescriptor) -> RatFun:
    """d(M): the embedded determinant, or the ordinary one for commutative rings."""
    _check_params(ring)
    rows, cols = shape(M)
    if rows != cols:
        raise AlgebraError(f"d of a non-square {rows}x{cols} matrix")
    return DetFunctional(ring)(M)


def det_cofactor(M: Matrix, ring: RingDescriptor) -> RatFun:
    """Memoized Laplace expansion of the commutative image along its rows."""
    _check_params(ring)
    image = DetFunctional(ring).commutative_image(M)
    n = len(image)
    f = ring.field
    if n == 0:
        return f.one()

    @lru_cache(maxsize=None)
    def expand(row: int, free: int) -> RatFun:
        if row == n:
            return f.one()
        total = f.zero()
        sign = 1
        for col in range(n):
            if not free & (1 << col):
                continue
            entry = image[row][col]
            if not entry.is_zero():
                term = entry * expand(row + 1, free & ~(1 << col))
                total = total + term if sign > 0 else total - term
            sign = -sign
        return total

    return expand(0, (1 << n) - 1)


def det_by_reduction(M: Matrix, ring: RingDescriptor) -> RatFun:
    """
    Triangularizes by left row operations over the ring itself, so d is the
    product of N(pivot) (or of the pivots when commutative).  A column whose
    nonzero entries are all zero divisors falls back to det_d.
    """
    _check_params(ring)
    rows, cols = shape(M)
    if rows != cols:
        raise AlgebraError(f"d of a non-square {rows}x{cols} matrix")
    f = ring.field
    A = [list(r) for r in M]
    result = f.one()
    for col in range(rows):
        pivot_row = next((r for r in range(col, rows) if A[r][col].is_unit()), None)
        if pivot_row is None:
            if all(A[r][col].is_zero() for r in range(col, rows)):
                return f.zero()
            logger.debug("no anisotropic pivot in column %d, using the embedding", col)
            return det_d(M, ring)
        if pivot_row != col:
            A[col], A[pivot_row] = A[pivot_row], A[col]
            if not ring.is_quaternionic:
                result = -result
        pivot = A[col][col]
        result = result * (norm(pivot) if ring.is_quaternionic else pivot)
        inverse = pivot.inverse()
        for r in range(col + 1, rows):
            if A[r][col].is_zero():
                continue
            factor = A[r][col] * inverse
            A[r] = [a - factor * b for a, b in zip(A[r], A[col])]
    return result


# ---------------------------------------------------------------------------
# Delta0 and Delta1
# ---------------------------------------------------------------------------

def _orbit(P: PresentationMatrix) -> Tuple[str, ...]:
    return unit_orbit_of(P.unit_vars)


def delta0(P: PresentationMatrix) -> InvariantPoly:
    if not P.is_square():
        raise AlgebraError(f"Delta0 needs a square presentation, got {P.rows}x{P.cols}")
    value = det_d(P.matrix, P.ring)
    logger.info("Delta0 of %s (%s, %dx%d) computed", P.label, P.provenance, P.rows, P.cols)
    return normalize_or_zero(value, P.unit_vars)


@dataclass
class MinorEntry:
    row: int
    col: int
    value: RatFun
    normalized: InvariantPoly

    def to_dict(self) -> Dict[str, Any]:
        return {"row": self.row, "col": self.col, "value": str(self.normalized)}


def _minor_entry(P: PresentationMatrix, i: int, j: int) -> MinorEntry:
    value = det_d(minor(P.matrix, i, j), P.ring)
    return MinorEntry(i, j, value, normalize_or_zero(value, P.unit_vars))


def _workers(workers: Optional[int]) -> int:
    return max(1, workers if workers is not None else get_settings().MINOR_WORKERS)


def minor_table(P: PresentationMatrix, workers: Optional[int] = None) -> List[MinorEntry]:
    """Every codimension-1 minor, row-major."""
    if not P.is_square():
        raise AlgebraError(f"minors need a square presentation, got {P.rows}x{P.cols}")
    cells = [(i, j) for i in range(P.rows) for j in range(P.cols)]
    count = _workers(workers)
    if count == 1:
        return [_minor_entry(P, i, j) for i, j in cells]
    with ThreadPoolExecutor(max_workers=count) as pool:
        return list(pool.map(lambda c: _minor_entry(P, *c), cells))


def _gcd_of(values: Sequence[RatFun], ring) -> PolyElement:
    h = ring.zero
    for v in values:
        h = poly_gcd(h, v.num)
        if h and h.is_ground:
            break
    return h


def delta1(P: PresentationMatrix, workers: Optional[int] = None) -> InvariantPoly:
    """
    GCD of the numerators of all codimension-1 minors; denominators are
    units of the localized ring.  A 1x1 presentation has the empty minor 1.
    """
    if not P.is_square():
        raise AlgebraError(f"Delta1 needs a square presentation, got {P.rows}x{P.cols}")
    f = P.ring.field
    if P.rows <= 1:
        return InvariantPoly.one(f, _orbit(P))
    if _workers(workers) > 1:
        h = _gcd_of([m.value for m in minor_table(P, workers)], f.ring)
    else:
        h = f.ring.zero
        for i in range(P.rows):
            for j in range(P.cols):
                value = det_d(minor(P.matrix, i, j), P.ring)
                h = poly_gcd(h, value.num)
                if h and h.is_ground:
                    logger.debug("Delta1 gcd reached a constant at minor (%d, %d)", i, j)
                    break
            else:
                continue
            break
    logger.info("Delta1 of %s (%s) computed", P.label, P.provenance)
    return normalize_or_zero(f.from_polys(h), P.unit_vars)


# ---------------------------------------------------------------------------
# classicality checks
# ---------------------------------------------------------------------------

@dataclass
class MinorIndependenceReport:
    label: str
    minors: List[MinorEntry] = field(default_factory=list)

    @property
    def distinct(self) -> List[InvariantPoly]:
        seen: List[InvariantPoly] = []
        for m in self.minors:
            if m.normalized not in seen:
                seen.append(m.normalized)
        return seen

    @property
    def homogeneous(self) -> bool:
        return len(self.distinct) <= 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "homogeneous": self.homogeneous,
            "distinct": [str(v) for v in self.distinct],
            "minors": [m.to_dict() for m in self.minors],
        }


def check_minor_independence(P: PresentationMatrix, workers: Optional[int] = None) -> MinorIndependenceReport:
    """All codimension-1 minors agree up to units for any classical closure."""
    report = MinorIndependenceReport(P.label, minor_table(P, workers))
    logger.info("%s: %d distinct minor values", P.label, len(report.distinct))
    return report


@dataclass
class ClassicalityReport:
    verdict: str
    delta0: InvariantPoly
    reason: str

    def to_dict(self) -> Dict[str, Any]:
        return {"verdict": self.verdict, "delta0": str(self.delta0), "reason": self.reason}


def classicality_obstruction(P: PresentationMatrix, workers: Optional[int] = None) -> ClassicalityReport:
    """Never concludes that a knot is classical, only that nothing rules it out."""
    d0 = delta0(P)
    if not d0.is_zero():
        return ClassicalityReport(NOT_CLASSICAL, d0, "Delta0 is nonzero")
    if P.rows > 1 and not check_minor_independence(P, workers).homogeneous:
        return ClassicalityReport(NOT_CLASSICAL, d0, "codimension-1 minors differ up to units")
    return ClassicalityReport(CONSISTENT_WITH_CLASSICAL, d0, "Delta0 = 0 and minors agree")


# ---------------------------------------------------------------------------
# printed values
# ---------------------------------------------------------------------------

@dataclass
class TermMismatch:
    monomial: str
    computed: str
    printed: str


@dataclass
class ValueDiscrepancy:
    target: str
    computed: str
    printed: str
    agrees: bool
    algorithms_agree: bool
    numerator_terms: List[TermMismatch] = field(default_factory=list)
    denominator_agrees: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target,
            "computed": self.computed,
            "printed": self.printed,
            "agrees": self.agrees,
            "algorithms_agree": self.algorithms_agree,
            "denominator_agrees": self.denominator_agrees,
            "numerator_terms": [t.__dict__ for t in self.numerator_terms],
        }


def _term_mismatches(a: PolyElement, b: PolyElement) -> List[TermMismatch]:
    ring = a.ring
    terms_a, terms_b = dict(a.iterterms()), dict(b.iterterms())
    out = []
    for monom in sorted(set(terms_a) | set(terms_b), reverse=True):
        ca, cb = terms_a.get(monom), terms_b.get(monom)
        if ca != cb:
            mono = format_poly(ring.from_dict({monom: ring.domain.one}))
            out.append(TermMismatch(mono, str(ca or 0), str(cb or 0)))
    return out


def printed_value_report(P: PresentationMatrix, printed_text: str, target: str) -> ValueDiscrepancy:
    """
    Recomputes Delta0 two ways (embedding with Bareiss, cofactor expansion)
    and compares the canonical form with a printed value term by term.
    """
    primary = det_d(P.matrix, P.ring)
    secondary = det_cofactor(P.matrix, P.ring)
    computed = normalize_or_zero(primary, P.unit_vars)
    printed = normalize_or_zero(P.ring.field.parse(printed_text), P.unit_vars)
    report = ValueDiscrepancy(
        target=target,
        computed=str(computed),
        printed=str(printed),
        agrees=computed == printed,
        algorithms_agree=primary == secondary,
    )
    if not report.agrees:
        report.numerator_terms = _term_mismatches(computed.num, printed.num)
        report.denominator_agrees = computed.den == printed.den
    logger.info("%s: printed value %s", target, "agrees" if report.agrees else "differs")
    return report


@dataclass
class MinorMultisetDiscrepancy:
    target: str
    computed: Dict[str, int]
    printed: Dict[str, int]
    missing: Dict[str, int]
    unexpected: Dict[str, int]
    delta1_computed: str
    delta1_printed: str

    @property
    def agrees(self) -> bool:
        return not self.missing and not self.unexpected

    @property
    def delta1_agrees(self) -> bool:
        return self.delta1_computed == self.delta1_printed

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target,
            "agrees": self.agrees,
            "delta1_agrees": self.delta1_agrees,
            "delta1_computed": self.delta1_computed,
            "delta1_printed": self.delta1_printed,
            "computed": self.computed,
            "printed": self.printed,
            "missing": self.missing,
            "unexpected": self.unexpected,
        }


def printed_minor_report(P: PresentationMatrix, printed: Dict[str, int], target: str,
                         workers: Optional[int] = None) -> MinorMultisetDiscrepancy:
    """
    Compares the codimension-1 minors with a printed multiset (text -> count),
    both taken up to units, and the hcf of each side.
    """
    f = P.ring.field
    computed = Counter(m.normalized for m in minor_table(P, workers))
    expected: Counter = Counter()
    for text, count in printed.items():
        expected[normalize_or_zero(f.parse(text), P.unit_vars)] += count

    def hcf(values) -> InvariantPoly:
        h = reduce(poly_gcd, (v.num for v in values), f.ring.zero)
        return normalize_or_zero(f.from_polys(h), P.unit_vars)

    def as_text(counter: Counter) -> Dict[str, int]:
        return {str(k): v for k, v in counter.items()}

    report = MinorMultisetDiscrepancy(
        target=target,
        computed=as_text(computed),
        printed=as_text(expected),
        missing=as_text(expected - computed),
        unexpected=as_text(computed - expected),
        delta1_computed=str(hcf(computed)),
        delta1_printed=str(hcf(expected)),
    )
    logger.info("%s: %d printed minor values missing, %d unexpected",
                target, sum(report.missing.values()), sum(report.unexpected.values()))
    return report


# ---------------------------------------------------------------------------
# the unit locus of the Alexander switch
# ---------------------------------------------------------------------------

ALEXANDER_VARS = ("B", "C")


def alexander_unit_locus(value: RatFun) -> RatFun:
    """
    Restricts an Alexander-switch value to BC = 1.  There D = 0, the
    presentation matrix is I minus a weighted cycle with weight product
    (BC)^writhe, so Delta0 of every diagram restricts to zero.
    """
    return value.substitute({"C": value.field.var("B").inverse()})


@dataclass
class UnitLocusReport:
    target: str
    printed: str
    residual: str

    @property
    def realizable(self) -> bool:
        return self.residual == "0"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target,
            "printed": self.printed,
            "residual": self.residual,
            "realizable": self.realizable,
        }


def printed_alexander_report(printed_text: str, target: str) -> UnitLocusReport:
    """Checks whether a printed Alexander-switch Delta0 can come from any diagram."""
    f = function_field(ALEXANDER_VARS)
    printed = normalize_or_zero(f.parse(printed_text), ALEXANDER_VARS)
    residual = alexander_unit_locus(printed.as_ratfun())
    report = UnitLocusReport(target=target, printed=str(printed), residual=str(residual))
    if not report.realizable:
        logger.warning("%s: printed Delta0 restricts to %s at BC = 1, no diagram gives it", target, residual)
    return report
