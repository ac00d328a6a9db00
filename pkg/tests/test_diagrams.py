import json

import pytest

from virtual_knot_lab.config.settings import get_settings
from virtual_knot_lab.core.exceptions import AlgebraError, ConfigurationError, DiagramParseError, ParseError
from virtual_knot_lab.modules.braids.braidrep import parse_braid
from virtual_knot_lab.modules.diagrams.diagmod import (
    BRAID,
    DIAGRAM,
    add_column_multiple,
    add_row_multiple,
    border,
    load_diagram,
    parse_diagram,
    permute_columns,
    permute_rows,
    presentation_from_braid,
    presentation_from_diagram,
    repeat_row,
    scale_column,
    scale_row,
)
from virtual_knot_lab.modules.diagrams.knots import (
    KnotCatalogEntry,
    load_catalog,
    resolve_knot,
    validate_catalog,
)
from virtual_knot_lab.modules.switches.catalog import get_switch

FIXTURES = get_settings().fixtures_path()


def test_parse_diagram_with_comments():
    D = parse_diagram("# virtual trefoil\nX + 2 1 3 4\n\nX + 3 4 1 2  # second\n", "vt")
    assert len(D.crossings) == 2
    assert D.size == 4
    assert D.components() == 1
    assert parse_diagram(D.to_text(), "vt") == D


@pytest.mark.parametrize("text", [
    "",
    "Y + 1 2 1 2",
    "X * 1 2 1 2",
    "X + 1 2 1",
    "X + a 2 1 2",
    "X + 1 1 2 2",
    "X + 1 3 1 2",
])
def test_parse_diagram_rejects(text):
    with pytest.raises(DiagramParseError):
        parse_diagram(text)


def test_missing_diagram_file(tmp_path):
    with pytest.raises(DiagramParseError):
        load_diagram(tmp_path / "nope.vkd")


def test_mirror_flips_every_sign():
    D = load_diagram(FIXTURES / "virtual_trefoil.vkd")
    assert [c.sign for c in D.mirror().crossings] == [-1, -1]
    assert D.mirror().mirror().crossings == D.crossings
    assert load_diagram(FIXTURES / "virtual_trefoil_mirror.vkd").crossings == D.mirror().crossings


@pytest.mark.parametrize("name", ["kishino1", "kishino2", "kishino3", "classical_trefoil", "r2_virtual_trefoil"])
def test_fixtures_are_knots(name):
    assert load_diagram(FIXTURES / f"{name}.vkd").components() == 1


def test_kink_presentation():
    S = get_switch("alexander")
    P = presentation_from_diagram(load_diagram(FIXTURES / "kink.vkd"), S)
    f = S.ring.field
    assert P.provenance == DIAGRAM
    assert P.matrix == ((f.const(-1), f.var("B")), (f.var("C"), -f.var("B") * f.var("C")))


def test_negative_crossing_swaps_roles():
    S = get_switch("alexander")
    f = S.ring.field
    P = presentation_from_diagram(parse_diagram("X - 1 2 1 2"), S)
    # in1 = A out1 + B out2, in2 = C out1 + D out2 with in = out on a kink
    assert P.matrix == ((f.const(-1), f.var("B")), (f.var("C"), -f.var("B") * f.var("C")))


def test_braid_presentation_is_rho_minus_identity():
    S = get_switch("alexander")
    f = S.ring.field
    P = presentation_from_braid(parse_braid("s1", 2), S)
    assert P.provenance == BRAID
    assert P.matrix == ((f.const(-1), f.var("B")), (f.var("C"), -f.var("B") * f.var("C")))
    assert P.nonzero_pattern() == [[0, 1], [0, 1]]


def test_moves_keep_shape_and_record_provenance():
    S = get_switch("budapest")
    P = presentation_from_diagram(load_diagram(FIXTURES / "virtual_trefoil.vkd"), S)
    i = S.ring.coerce(S.A) - 1
    moved = add_column_multiple(add_row_multiple(scale_column(scale_row(permute_columns(
        permute_rows(P, [1, 0, 3, 2]), [3, 2, 1, 0]), 0, i), 1, i), 0, 2, i), 1, 3, i)
    assert moved.rows == moved.cols == 4
    assert moved.provenance.startswith("diagram+permute_rows+permute_columns+scale_row")
    assert border(P, i).rows == 5
    assert repeat_row(P, 0).rows == 5
    assert not repeat_row(P, 0).is_square()


def test_move_preconditions():
    S = get_switch("budapest")
    P = presentation_from_diagram(load_diagram(FIXTURES / "virtual_trefoil.vkd"), S)
    zero = S.ring.zero()
    with pytest.raises(AlgebraError):
        permute_rows(P, [0, 0, 1, 2])
    with pytest.raises(AlgebraError):
        scale_row(P, 0, zero)
    with pytest.raises(AlgebraError):
        add_row_multiple(P, 1, 1, S.A)
    with pytest.raises(AlgebraError):
        scale_column(P, 7, S.A)
    with pytest.raises(AlgebraError):
        border(P, S.A, [zero])


def test_catalog_loads_and_validates():
    catalog = load_catalog()
    for name in ("unknot", "virtual_trefoil", "classical_trefoil", "figure_eight",
                 "kishino1", "kishino2", "kishino3"):
        assert name in catalog.names()
    sources = validate_catalog(catalog)
    assert len(sources) == len(catalog.knots)
    k3 = resolve_knot("kishino3")
    assert k3.paths() == [BRAID, DIAGRAM]


def test_catalog_entry_needs_a_source():
    with pytest.raises(ValueError):
        KnotCatalogEntry(name="empty")
    with pytest.raises(ValueError):
        KnotCatalogEntry(name="loose", braid="s1")


def test_bad_catalog_file(tmp_path):
    bad = tmp_path / "knots.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigurationError):
        load_catalog(bad)
    bad.write_text(json.dumps({"knots": [{"name": "x"}]}))
    with pytest.raises(ConfigurationError):
        load_catalog(bad)


def test_resolve_knot_from_file(tmp_path):
    path = tmp_path / "loop.vkd"
    path.write_text("X + 1 2 1 2\n")
    source = resolve_knot(str(path))
    assert source.name == "loop"
    assert source.paths() == [DIAGRAM]
    with pytest.raises(ParseError):
        source.presentation(get_switch("alexander"), BRAID)
    with pytest.raises(ParseError):
        resolve_knot("no_such_knot")


def test_resolve_knot_relative_to_fixtures(tmp_path):
    (tmp_path / "loop.vkd").write_text("X - 1 2 1 2\n")
    source = resolve_knot("loop.vkd", fixtures=tmp_path)
    assert source.diagram.crossings[0].sign == -1


def test_presentation_label_is_knot_name():
    source = resolve_knot("classical_trefoil")
    S = get_switch("alexander")
    assert source.presentation(S).provenance == BRAID
    P = source.presentation(S, DIAGRAM)
    assert P.label == "classical_trefoil"
    assert P.rows == 6
    with pytest.raises(ParseError):
        source.presentation(S, "sideways")
