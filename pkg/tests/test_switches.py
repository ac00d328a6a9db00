import pytest

from virtual_knot_lab.core.exceptions import ParseError, SwitchPreconditionError
from virtual_knot_lab.modules.algebra.exactalg import function_field
from virtual_knot_lab.modules.algebra.quat import Quaternion, classical_params
from virtual_knot_lab.modules.switches.catalog import (
    bind_params,
    get_switch,
    make_alexander,
    make_budapest,
    make_burau,
    make_E1,
    make_E2,
    make_noncommuting,
    parse_param_options,
    printed_discrepancy,
    switch_names,
)
from virtual_knot_lab.modules.switches.switchlab import (
    Switch,
    augment,
    burau_conjugator,
    conjugation_identity_holds,
    elementary_factorization,
    factorization_holds,
    preserves_diagonal,
    sideways,
    verify_switch,
    yang_baxter_holds,
)

F = function_field(("t",))
H = classical_params(F)


@pytest.mark.parametrize("name", ["identity", "alexander", "burau", "budapest", "e1", "e2"])
def test_catalog_switches_satisfy_all_axioms(name):
    report = verify_switch(get_switch(name))
    assert report.passed, report.failed_axioms()
    assert len(report.axioms) == 7
    assert all(a.residual == "0" for a in report.axioms)


def test_augmented_budapest_satisfies_all_axioms():
    S = get_switch("budapest", augment_var="t")
    assert S.name == "budapest(t)"
    assert S.unit_vars == ("t",)
    assert verify_switch(S).passed


def test_broken_switch_reports_failing_axioms():
    S = make_budapest()
    broken = Switch(S.A, S.B, S.C, S.D + 1, S.ring, "broken")
    report = verify_switch(broken)
    assert not report.passed
    assert report.failed_axioms()
    assert report.to_dict()["passed"] is False


@pytest.mark.parametrize("name", switch_names())
def test_yang_baxter(name):
    assert yang_baxter_holds(get_switch(name))


def test_elementary_factorization():
    for S in (make_budapest(), make_E2()):
        assert len(elementary_factorization(S)) == 4
        assert factorization_holds(S)
    with pytest.raises(SwitchPreconditionError):
        elementary_factorization(get_switch("alexander"))


def test_alexander_preconditions():
    G = function_field(("B", "C"))
    with pytest.raises(SwitchPreconditionError) as excinfo:
        make_alexander(G.zero(), G.var("C"))
    assert excinfo.value.precondition == "B invertible"


def test_noncommuting_preconditions_are_named():
    one = Quaternion.scalar(H, 1)
    i, j = Quaternion.basis(H, "i"), Quaternion.basis(H, "j")
    cases = [
        (one, j, "A - 1 invertible"),
        (one + i, one + i * 2, "A, B non-commuting"),
        (one + i * 2, j, "fundamental equation"),
    ]
    for A, B, precondition in cases:
        with pytest.raises(SwitchPreconditionError) as excinfo:
            make_noncommuting(A, B)
        assert excinfo.value.precondition == precondition


def test_budapest_entries():
    S = make_budapest()
    assert S.A == Quaternion.from_coords(H, 1, 1, 0, 0)
    assert S.B == Quaternion.basis(H, "j")
    assert S.C == -Quaternion.basis(H, "j")
    assert S.D == Quaternion.from_coords(H, 1, 1, 0, 0)


def test_augmentation_scales_off_diagonal():
    S = get_switch("alexander")
    T = augment(S, "t")
    t = T.ring.field.var("t")
    assert T.B == S.B.to_field(T.ring.field) * t
    assert T.C == S.C.to_field(T.ring.field) / t
    assert augment(S, 1).B == S.B


def test_sideways_matrices_preserve_the_diagonal():
    for S in (get_switch("alexander"), make_budapest()):
        pair = sideways(S)
        assert preserves_diagonal(pair, S.ring.one())
    with pytest.raises(SwitchPreconditionError):
        sideways(get_switch("identity"))


def test_alexander_sideways_unit():
    S = get_switch("alexander")
    B = S.ring.field.var("B")
    assert sideways(S).diag_unit == B.inverse()


@pytest.mark.parametrize("name", ["budapest", "e1"])
def test_conjugation_identity(name):
    assert conjugation_identity_holds(get_switch(name))


@pytest.mark.parametrize("target", ["e1", "e2"])
def test_derived_blocks_agree_with_printed(target):
    report = printed_discrepancy(target)
    assert len(report.entries) == 8
    assert report.agrees, [e.__dict__ for e in report.mismatches]


def test_printed_discrepancy_unknown_target():
    with pytest.raises(SwitchPreconditionError):
        printed_discrepancy("budapest")


def test_e1_and_e2_live_in_the_split_algebra():
    for S in (make_E1(), make_E2()):
        assert S.ring.params.is_matrix_algebra()
        assert not S.is_commutative()


def test_unknown_switch():
    assert "budapest" in switch_names()
    with pytest.raises(SwitchPreconditionError):
        get_switch("nope")


def test_parameter_binding():
    S = get_switch("alexander", {"B": "2"})
    assert S.ring.field.names == ("C",)
    assert S.B == S.ring.field.const(2)
    assert verify_switch(S).passed
    with pytest.raises(SwitchPreconditionError):
        get_switch("alexander", {"B": "0"})
    with pytest.raises(ParseError):
        get_switch("alexander", {"Z": "2"})


def test_binding_can_introduce_variables():
    S = bind_params(get_switch("alexander"), {"B": "s^2"})
    assert S.ring.field.names == ("C", "s")
    assert verify_switch(S).passed


def test_parse_param_options():
    assert parse_param_options(["a=2", " b = 1/3 "]) == {"a": "2", "b": "1/3"}
    with pytest.raises(ParseError):
        parse_param_options(["a"])
    with pytest.raises(ParseError):
        parse_param_options(["=3"])


def test_make_burau():
    G = function_field(("C",))
    S = make_burau(G.var("C"), ("C",))
    assert S.B == G.one()
    assert S.A.is_zero()
    assert verify_switch(S).passed


def test_burau_conjugator_shape():
    S = make_budapest()
    M, prime = burau_conjugator(S, 3)
    one, zero = S.ring.one(), S.ring.zero()
    assert M[0] == (one, zero, zero)
    assert M[1] == (S.A, S.B, zero)
    assert M[2] == (S.A, S.B * S.A, S.B * S.B)
    assert prime.A.is_zero() and prime.B == one
    with pytest.raises(SwitchPreconditionError):
        burau_conjugator(S, 0)
    with pytest.raises(SwitchPreconditionError):
        burau_conjugator(get_switch("alexander"), 2)


def test_augmentation_refuses_a_used_variable():
    with pytest.raises(SwitchPreconditionError) as excinfo:
        get_switch("e1", augment_var="t")
    assert excinfo.value.precondition == "fresh augmentation variable"
    with pytest.raises(SwitchPreconditionError):
        augment(get_switch("budapest", augment_var="t"), "t")
    with pytest.raises(SwitchPreconditionError):
        augment(get_switch("alexander"), "B")
    assert get_switch("e1").B == augment(make_E1(), "t").B
