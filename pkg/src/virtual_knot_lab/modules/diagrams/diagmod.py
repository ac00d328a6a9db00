"""
Crossing diagrams and presentation matrices of the switch module.

Diagram files hold one crossing per line, ``X <+|-> in1 in2 out1 out2``,
with ``#`` comments.  Semi-arc ids run over 1..2n and each id is the input
of exactly one crossing and the output of exactly one crossing.  The strand
entering as in1 leaves as out2 and the strand entering as in2 leaves as out1;
in2 passes over on a positive crossing, in1 on a negative one.

Relations:
    positive:  out1 = A in1 + B in2,   out2 = C in1 + D in2
    negative:  in1 = A out1 + B out2,   in2 = C out1 + D out2

Virtual crossings are never stored: by the detour move a semi-arc that only
meets virtual crossings is one generator wherever it is routed.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from virtual_knot_lab.core.exceptions import AlgebraError, DiagramParseError
from virtual_knot_lab.core.logger import setup_logger
from virtual_knot_lab.modules.algebra.matrices import (
    Matrix,
    RingDescriptor,
    RingElem,
    identity,
    mat_sub,
    shape,
)
from virtual_knot_lab.modules.braids.braidrep import SIGMA, SIGMA_INV, TAU, VirtualBraidWord, represent
from virtual_knot_lab.modules.switches.switchlab import Switch, sideways

logger = setup_logger(__name__)


@dataclass(frozen=True)
class Crossing:
    sign: int
    in1: int
    in2: int
    out1: int
    out2: int

    def __str__(self) -> str:
        sign = "+" if self.sign > 0 else "-"
        return f"X {sign} {self.in1} {self.in2} {self.out1} {self.out2}"


@dataclass(frozen=True)
class CrossingDiagram:
    crossings: Tuple[Crossing, ...]
    name: str = "diagram"

    def __post_init__(self):
        if not self.crossings:
            raise DiagramParseError("a diagram needs at least one classical crossing")
        expected = set(range(1, 2 * len(self.crossings) + 1))
        for role, ids in (
            ("input", [i for c in self.crossings for i in (c.in1, c.in2)]),
            ("output", [i for c in self.crossings for i in (c.out1, c.out2)]),
        ):
            seen = set()
            for arc in ids:
                if arc in seen:
                    raise DiagramParseError(f"semi-arc {arc} appears twice as an {role}")
                seen.add(arc)
            if seen != expected:
                missing = sorted(expected - seen)
                extra = sorted(seen - expected)
                raise DiagramParseError(
                    f"{role} ids must be exactly 1..{len(expected)}; missing {missing}, unexpected {extra}"
                )

    @property
    def size(self) -> int:
        return 2 * len(self.crossings)

    def mirror(self) -> "CrossingDiagram":
        """Every crossing with its sign reversed and the same semi-arcs."""
        return CrossingDiagram(tuple(replace(c, sign=-c.sign) for c in self.crossings), f"{self.name}*")

    def components(self) -> int:
        successor: Dict[int, int] = {}
        for c in self.crossings:
            successor[c.in1] = c.out2
            successor[c.in2] = c.out1
        unseen = set(successor)
        count = 0
        while unseen:
            count += 1
            arc = unseen.pop()
            nxt = successor[arc]
            while nxt in unseen:
                unseen.remove(nxt)
                nxt = successor[nxt]
        return count

    def to_text(self) -> str:
        return "\n".join(str(c) for c in self.crossings) + "\n"


def parse_diagram(text: str, name: str = "diagram") -> CrossingDiagram:
    crossings: List[Crossing] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] != "X" or len(fields) != 6:
            raise DiagramParseError(f"line {lineno}: expected 'X <+|-> in1 in2 out1 out2', got {raw.strip()!r}")
        if fields[1] not in ("+", "-"):
            raise DiagramParseError(f"line {lineno}: bad sign {fields[1]!r}")
        try:
            ids = [int(f) for f in fields[2:]]
        except ValueError:
            raise DiagramParseError(f"line {lineno}: semi-arc ids must be integers") from None
        crossings.append(Crossing(1 if fields[1] == "+" else -1, *ids))
    return CrossingDiagram(tuple(crossings), name)


def load_diagram(path: Union[str, Path]) -> CrossingDiagram:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DiagramParseError(f"cannot read {path}: {e}") from e
    return parse_diagram(text, path.stem)


def diagram_from_braid(word: VirtualBraidWord) -> CrossingDiagram:
    """
    Crossing diagram of the closure of a virtual braid.  sigma_i becomes a
    positive crossing with inputs from positions i, i + 1, sigma_i^-1 a
    negative one, tau_i only permutes labels.
    """
    n = word.strands
    parent: Dict[int, int] = {}

    def find(x: int) -> int:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    positions = list(range(1, n + 1))
    next_id = n + 1
    raw: List[Tuple[int, int, int, int, int]] = []
    for letter in word.letters:
        i = letter.index - 1
        if letter.kind == TAU:
            positions[i], positions[i + 1] = positions[i + 1], positions[i]
            continue
        out1, out2 = next_id, next_id + 1
        next_id += 2
        sign = 1 if letter.kind == SIGMA else -1
        raw.append((sign, positions[i], positions[i + 1], out1, out2))
        positions[i], positions[i + 1] = out1, out2
    for start, end in zip(range(1, n + 1), positions):
        parent[find(end)] = find(start)
    outputs = {find(c[3]) for c in raw} | {find(c[4]) for c in raw}
    if any(find(k) not in outputs for k in range(1, n + 1)):
        raise DiagramParseError(f"closure of {word} has a component without classical crossings")
    renumber: Dict[int, int] = {}
    for c in raw:
        for arc in (c[3], c[4]):
            renumber.setdefault(find(arc), len(renumber) + 1)
    crossings = tuple(
        Crossing(s, renumber[find(a)], renumber[find(b)], renumber[find(c)], renumber[find(d)])
        for s, a, b, c, d in raw
    )
    return CrossingDiagram(crossings, f"closure({word})")


# ---------------------------------------------------------------------------
# presentation matrices
# ---------------------------------------------------------------------------

DIAGRAM = "diagram"
BRAID = "braid"


@dataclass(frozen=True)
class PresentationMatrix:
    matrix: Matrix
    ring: RingDescriptor
    provenance: str
    label: str = ""
    unit_vars: Tuple[str, ...] = ()

    @property
    def rows(self) -> int:
        return shape(self.matrix)[0]

    @property
    def cols(self) -> int:
        return shape(self.matrix)[1]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def nonzero_pattern(self) -> List[List[int]]:
        return [[j for j, a in enumerate(r) if not a.is_zero()] for r in self.matrix]

    def _moved(self, matrix: Matrix, move: str) -> "PresentationMatrix":
        return PresentationMatrix(matrix, self.ring, f"{self.provenance}+{move}", self.label, self.unit_vars)


def _mutable(rows: int, cols: int, ring: RingDescriptor) -> List[List[RingElem]]:
    zero = ring.zero()
    return [[zero] * cols for _ in range(rows)]


def presentation_from_diagram(diagram: CrossingDiagram, S: Switch) -> PresentationMatrix:
    """Two rows per crossing; column j - 1 is semi-arc j."""
    n = diagram.size
    M = _mutable(n, n, S.ring)
    minus_one = -S.ring.one()
    for k, c in enumerate(diagram.crossings):
        if c.sign > 0:
            sources, targets = (c.in1, c.in2), (c.out1, c.out2)
        else:
            sources, targets = (c.out1, c.out2), (c.in1, c.in2)
        for offset, (first, second) in enumerate(((S.A, S.B), (S.C, S.D))):
            row = M[2 * k + offset]
            row[sources[0] - 1] = row[sources[0] - 1] + first
            row[sources[1] - 1] = row[sources[1] - 1] + second
            row[targets[offset] - 1] = row[targets[offset] - 1] + minus_one
    logger.debug("presentation of %s with %s: %dx%d", diagram.name, S.name, n, n)
    return PresentationMatrix(tuple(tuple(r) for r in M), S.ring, DIAGRAM, diagram.name, S.unit_vars)


def presentation_from_braid(word: VirtualBraidWord, S: Switch) -> PresentationMatrix:
    """rho(S, n)(w) - id."""
    image = represent(word, S)
    matrix = mat_sub(image, identity(word.strands, S.ring))
    return PresentationMatrix(matrix, S.ring, BRAID, str(word) or "1", S.unit_vars)


# ---------------------------------------------------------------------------
# presentation moves
# ---------------------------------------------------------------------------

def _check_index(P: PresentationMatrix, index: int, axis: str):
    limit = P.rows if axis == "row" else P.cols
    if not 0 <= index < limit:
        raise AlgebraError(f"{axis} {index} out of range for a {P.rows}x{P.cols} matrix")


def permute_rows(P: PresentationMatrix, order: Sequence[int]) -> PresentationMatrix:
    if sorted(order) != list(range(P.rows)):
        raise AlgebraError(f"{list(order)} is not a permutation of the rows")
    return P._moved(tuple(P.matrix[i] for i in order), "permute_rows")


def permute_columns(P: PresentationMatrix, order: Sequence[int]) -> PresentationMatrix:
    if sorted(order) != list(range(P.cols)):
        raise AlgebraError(f"{list(order)} is not a permutation of the columns")
    return P._moved(tuple(tuple(r[j] for j in order) for r in P.matrix), "permute_columns")


def scale_row(P: PresentationMatrix, row: int, unit: RingElem) -> PresentationMatrix:
    """Multiplies a row on the left by a unit."""
    _check_index(P, row, "row")
    if not unit.is_unit():
        raise AlgebraError(f"{unit} is not a unit")
    rows = list(P.matrix)
    rows[row] = tuple(unit * a for a in rows[row])
    return P._moved(tuple(rows), "scale_row")


def scale_column(P: PresentationMatrix, col: int, unit: RingElem) -> PresentationMatrix:
    """Multiplies a column on the right by a unit."""
    _check_index(P, col, "column")
    if not unit.is_unit():
        raise AlgebraError(f"{unit} is not a unit")
    return P._moved(tuple(tuple(a * unit if j == col else a for j, a in enumerate(r)) for r in P.matrix),
                    "scale_column")


def add_row_multiple(P: PresentationMatrix, source: int, target: int, factor: RingElem) -> PresentationMatrix:
    """row[target] += factor * row[source]."""
    _check_index(P, source, "row")
    _check_index(P, target, "row")
    if source == target:
        raise AlgebraError("a row cannot be added to itself")
    rows = list(P.matrix)
    rows[target] = tuple(a + factor * b for a, b in zip(rows[target], rows[source]))
    return P._moved(tuple(rows), "add_row")


def add_column_multiple(P: PresentationMatrix, source: int, target: int, factor: RingElem) -> PresentationMatrix:
    """col[target] += col[source] * factor."""
    _check_index(P, source, "column")
    _check_index(P, target, "column")
    if source == target:
        raise AlgebraError("a column cannot be added to itself")
    return P._moved(
        tuple(tuple(a + r[source] * factor if j == target else a for j, a in enumerate(r)) for r in P.matrix),
        "add_column",
    )


def border(P: PresentationMatrix, unit: RingElem, row: Optional[Sequence[RingElem]] = None) -> PresentationMatrix:
    """[[x, u], [0, M]] for a unit x and any row vector u."""
    if not unit.is_unit():
        raise AlgebraError(f"{unit} is not a unit")
    zero = P.ring.zero()
    u = tuple(row) if row is not None else tuple(zero for _ in range(P.cols))
    if len(u) != P.cols:
        raise AlgebraError(f"border row has {len(u)} entries, matrix has {P.cols} columns")
    top = (unit,) + u
    body = tuple((zero,) + r for r in P.matrix)
    return P._moved((top,) + body, "border")


def repeat_row(P: PresentationMatrix, row: int) -> PresentationMatrix:
    """Appends a copy of a row; the result presents the same module but is not square."""
    _check_index(P, row, "row")
    return P._moved(P.matrix + (P.matrix[row],), "repeat_row")


def _extend(P: PresentationMatrix, extra_rows: List[List[RingElem]], extra_cols: int, move: str) -> PresentationMatrix:
    zero = P.ring.zero()
    body = tuple(r + tuple(zero for _ in range(extra_cols)) for r in P.matrix)
    return P._moved(body + tuple(tuple(r) for r in extra_rows), move)


def border_r1(P: PresentationMatrix, S: Switch, column: Optional[int] = None) -> PresentationMatrix:
    """
    First Reidemeister move on the generator in ``column`` (default: last):
    two new generators with rows (0 .. 0, 1, -1) and (0 .. 1 .. 0, -lambda, 0).
    """
    column = P.cols - 1 if column is None else column
    _check_index(P, column, "column")
    lam = sideways(S).diag_unit
    one, zero = S.ring.one(), S.ring.zero()
    width = P.cols + 2
    first = [zero] * width
    first[P.cols], first[P.cols + 1] = one, -one
    second = [zero] * width
    second[column], second[P.cols] = one, -lam
    return _extend(P, [first, second], 2, "r1")


def border_r2(P: PresentationMatrix, S: Switch, columns: Optional[Tuple[int, int]] = None) -> PresentationMatrix:
    """
    Second Reidemeister move on two generators x, y (default: the last two):
    new generators u, v with x = A u + B v and y = C u + D v.
    """
    if columns is None:
        columns = (P.cols - 2, P.cols - 1)
    for col in columns:
        _check_index(P, col, "column")
    minus_one, zero = -S.ring.one(), S.ring.zero()
    width = P.cols + 2
    first = [zero] * width
    first[columns[0]], first[P.cols], first[P.cols + 1] = minus_one, S.A, S.B
    second = [zero] * width
    second[columns[1]], second[P.cols], second[P.cols + 1] = minus_one, S.C, S.D
    return _extend(P, [first, second], 2, "r2")
