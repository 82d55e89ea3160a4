"""Registry, classification, selection policy and the verify pipeline."""

import pytest

from agentmc.errors import (
    DuplicateTriple,
    NoCapableChecker,
    RegistryFrozen,
    RegistryNotFrozen,
    UnknownAgent,
    UnknownAtom,
    UnknownModelClass,
)
from agentmc.kernel import (
    CheckerDescriptor,
    Method,
    Registry,
    SelectionPolicy,
    classify_formula,
    default_registry,
    logic_class,
    model_class,
    verify,
)
from agentmc.logics import parse_formula


def chain_cgs_text(n: int) -> str:
    """A one-agent cycle with n states; valid and trivially checkable."""
    states = " ".join("S%d" % i for i in range(n))
    rows = "\n".join(
        "Transition: S%d go -> S%d" % (i, (i + 1) % n) for i in range(n)
    )
    return (
        "ModelType: CGS\nAgents: W\nStates: %s\nInitial: S0\nAtoms: p\n"
        "Label: S0 p\nActions W: go\n%s\n" % (states, rows)
    )


def test_classify_formula_boundaries():
    assert classify_formula(parse_formula("p && q")).id == "CTL"
    assert classify_formula(parse_formula("E F p")).id == "CTL"
    assert classify_formula(parse_formula("A (p U q)")).id == "CTL"
    assert classify_formula(parse_formula("<A0> X p")).id == "ATL"
    assert classify_formula(parse_formula("<> G p")).id == "ATL"  # empty coalition
    assert classify_formula(parse_formula("p && [A1] F q")).id == "ATL"


def test_selection_policy_thresholds():
    policy = SelectionPolicy()
    assert policy.preferred_method(49) == Method.EXPLICIT
    assert policy.preferred_method(50) == Method.IMPLICIT
    assert policy.preferred_method(99) == Method.IMPLICIT
    assert policy.preferred_method(100) == Method.ABSTRACT


def test_selection_policy_validation():
    with pytest.raises(ValueError):
        SelectionPolicy(explicit_max_states=100, implicit_max_states=50)
    with pytest.raises(ValueError):
        SelectionPolicy(explicit_max_states=0)


def test_registry_freeze_contract():
    reg = Registry()
    cgs = model_class("CGS")
    atl = logic_class("ATL")
    reg.register_model_class(cgs)
    reg.register_logic_class(atl)
    desc = CheckerDescriptor(
        id="x", model_class=cgs, logic_class=atl, method=Method.EXPLICIT,
        run=lambda doc, f: None,
    )
    reg.register_checker(desc)
    with pytest.raises(RegistryNotFrozen):
        reg.select_checker(cgs, atl, 4)
    reg.freeze()
    with pytest.raises(RegistryFrozen):
        reg.register_checker(desc)
    got, trace = reg.select_checker(cgs, atl, 4)
    assert got.id == "x"
    assert trace.used_method == Method.EXPLICIT


def test_registry_duplicate_triple():
    reg = Registry()
    cgs = model_class("CGS")
    atl = logic_class("ATL")
    reg.register_model_class(cgs)
    reg.register_logic_class(atl)
    mk = lambda ident: CheckerDescriptor(
        id=ident, model_class=cgs, logic_class=atl, method=Method.EXPLICIT,
        run=lambda doc, f: None,
    )
    reg.register_checker(mk("first"))
    with pytest.raises(DuplicateTriple):
        reg.register_checker(mk("second"))


def test_default_registry_fallback_row():
    reg = default_registry()
    cgs = model_class("CGS")
    atl = logic_class("ATL")
    for n, preferred, fell_back in (
        (49, Method.EXPLICIT, False),
        (50, Method.IMPLICIT, True),
        (99, Method.IMPLICIT, True),
        (100, Method.ABSTRACT, True),
    ):
        desc, trace = reg.select_checker(cgs, atl, n)
        assert desc.method == Method.EXPLICIT  # only explicit registered
        assert trace.preferred_method == preferred
        assert trace.used_method == Method.EXPLICIT
        assert trace.fallback_applied == fell_back
        assert trace.state_count == n


def test_no_capable_checker():
    reg = Registry()
    reg.register_model_class(model_class("CGS"))
    reg.register_logic_class(logic_class("ATL"))
    reg.freeze()
    with pytest.raises(NoCapableChecker):
        reg.select_checker(model_class("CGS"), logic_class("ATL"), 3)


def test_ctl_checker_serves_atl_request():
    # logic subsumption: a CTL formula may run on an ATL-capable checker,
    # and an ATL request is served by the ATL cell, not the CTL one
    reg = default_registry()
    cgs = model_class("CGS")
    desc, _ = reg.select_checker(cgs, logic_class("CTL"), 4)
    assert desc.id == "explicit-fixpoint-atl"


def test_verify_m1_end_to_end(m1_text):
    reg = default_registry()
    result = verify(reg, m1_text, "<A0, A1> F goal")
    assert result.overall is True
    assert result.per_initial == {"S0": True}
    assert result.method == Method.EXPLICIT
    assert result.witness is not None
    assert set(result.satisfying_states) == {"S0", "S1", "S2", "S3"}
    assert result.elapsed_seconds < 1.0

    result = verify(reg, m1_text, "<A0> F goal")
    assert result.overall is False
    assert result.witness is None


def test_verify_kripke_ctl(m1_text, k1):
    from agentmc.kernel import model_class as mc
    from agentmc.models.structures import ModelDocument
    from agentmc.models.textfmt import serialize_model

    text = serialize_model(ModelDocument(model_class=mc("Kripke"), payload=k1))
    reg = default_registry()
    result = verify(reg, text, "E F goal")
    assert result.overall is True
    result = verify(reg, text, "A F goal")
    assert result.overall is False  # S0 self-loop avoids goal forever


def test_verify_rejects_atl_on_kripke(k1):
    from agentmc.kernel import model_class as mc
    from agentmc.models.structures import ModelDocument
    from agentmc.models.textfmt import serialize_model

    text = serialize_model(ModelDocument(model_class=mc("Kripke"), payload=k1))
    with pytest.raises(NoCapableChecker):
        verify(default_registry(), text, "<A0> F goal")


def test_verify_unknown_atom(m1_text):
    with pytest.raises(UnknownAtom) as err:
        verify(default_registry(), m1_text, "<A0, A1> F missing_atom")
    assert "missing_atom" in str(err.value)


def test_verify_unknown_agent(m1_text):
    with pytest.raises(UnknownAgent):
        verify(default_registry(), m1_text, "<A7> F goal")


def test_verify_fallback_trace_on_large_model():
    text = chain_cgs_text(60)
    result = verify(default_registry(), text, "<W> F p")
    assert result.overall is True
    assert result.trace.preferred_method == Method.IMPLICIT
    assert result.trace.fallback_applied is True
    assert result.method == Method.EXPLICIT


def test_verify_method_override(m1_text):
    result = verify(
        default_registry(), m1_text, "<A0, A1> F goal",
        method_override=Method.EXPLICIT,
        policy=SelectionPolicy(explicit_max_states=2, implicit_max_states=3),
    )
    # the policy would prefer abstract for 4 states; the override still records it
    assert result.trace.preferred_method == Method.ABSTRACT
    assert result.method == Method.EXPLICIT
    assert result.trace.fallback_applied is True


def test_verify_policy_is_configurable(m1_text):
    result = verify(
        default_registry(), m1_text, "E F goal",
        policy=SelectionPolicy(explicit_max_states=5, implicit_max_states=6),
    )
    assert result.trace.preferred_method == Method.EXPLICIT
    assert result.trace.fallback_applied is False


def test_result_jsonable_schema(m1_text):
    import json

    result = verify(default_registry(), m1_text, "<A0, A1> F goal")
    payload = result.to_jsonable()
    assert json.loads(json.dumps(payload)) == payload
    assert set(payload) == {
        "overall",
        "per_initial",
        "satisfying_states",
        "method",
        "trace",
        "witness",
        "elapsed_seconds",
    }
    assert isinstance(payload["overall"], bool)
    assert set(payload["trace"]) == {
        "model_class",
        "logic_class",
        "state_count",
        "preferred_method",
        "used_method",
        "fallback_applied",
        "note",
    }
    assert payload["witness"]["coalition"] == ["A0", "A1"]

    false_run = verify(default_registry(), m1_text, "<A0> F goal").to_jsonable()
    assert set(false_run) == set(payload)  # schema-stable across verdicts
    assert false_run["witness"] is None


def test_unknown_model_class_passthrough():
    with pytest.raises(UnknownModelClass):
        verify(default_registry(), "ModelType: Petri\n", "E F p")
