import json
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from omlat import BadSpec, NotAPoset, enumerate_boolean_homs, glue, glue_n, identity, powerset, two
from omlat.adjunction import adjunction_audit
from omlat.cli import law_report
from omlat.contextuality import builtin_scenarios, dictionary_harness
from omlat.gluing import blocked_coproduct, universal_audit_bound
from omlat.io import (
    blocked_from_json, blocked_to_json, boolean_from_json, boolean_to_json, dumps,
    hom_from_json, hom_to_json, lattice_from_json, lattice_to_json, loads,
    model_from_json, model_to_json,
)
from omlat.lattice import benzene, chain, pentagon

SCHEMAS = Path(__file__).parent.parent / "docs" / "schemas"


def validator(name):
    docs = {p.name: json.loads(p.read_text()) for p in SCHEMAS.glob("*.json")}
    registry = Registry().with_resources(
        (name_, Resource.from_contents(doc)) for name_, doc in docs.items()
    )
    return Draft202012Validator(docs[name], registry=registry)


def through_text(data):
    return loads(dumps(data))


@pytest.mark.parametrize("L", [chain(2), pentagon(), benzene(), powerset(3).lattice], ids=repr)
def test_lattice_round_trip(L):
    doc = through_text(lattice_to_json(L))
    validator("lattice.schema.json").validate(doc)
    back = lattice_from_json(doc)
    assert back == L and type(back) is type(L)
    assert back.labels == L.labels


def test_boolean_round_trip():
    for B in (two(), powerset(3)):
        doc = through_text(boolean_to_json(B))
        validator("boolean.schema.json").validate(doc)
        back = boolean_from_json(doc)
        assert back == B and back.atom_labels == B.atom_labels


def test_hom_round_trip():
    P = glue(powerset(2), powerset(2))
    homs = enumerate_boolean_homs(powerset(2), powerset(3)) + [identity(P.carrier), P.injections[1]]
    for h in homs:
        doc = through_text(hom_to_json(h))
        validator("hom.schema.json").validate(doc)
        assert hom_from_json(doc) == h


def test_glued_round_trip():
    for ks in ([2, 2], [3, 2], [1], [2, 2, 2]):
        P = glue_n([powerset(k) for k in ks])
        doc = through_text(blocked_to_json(P))
        validator("lattice.schema.json").validate(doc)
        assert blocked_from_json(doc) == P


def test_blocked_round_trip():
    L = blocked_coproduct(powerset(2), powerset(2))
    assert blocked_from_json(through_text(blocked_to_json(L))) == L


def test_glued_provenance_mismatch():
    doc = blocked_to_json(glue(powerset(2), powerset(2)))
    doc["provenance"][0]["atoms"] = 3
    with pytest.raises(BadSpec):
        blocked_from_json(doc)


def test_model_round_trip():
    for M in builtin_scenarios():
        doc = through_text(model_to_json(M))
        validator("model.schema.json").validate(doc)
        assert model_from_json(doc) == M


def test_reports_validate_and_round_trip():
    adj = adjunction_audit(2)
    validator("adjunction_report.schema.json").validate(through_text(adj))
    assert through_text(adj) == adj
    uni = universal_audit_bound(2)
    validator("universal_report.schema.json").validate(through_text(uni))
    assert through_text(uni) == uni
    rows = {"rows": [dictionary_harness(M).to_dict() for M in builtin_scenarios()]}
    validator("dictionary_report.schema.json").validate(through_text(rows))
    assert through_text(rows) == rows
    checks = law_report(benzene())
    assert through_text(checks) == checks


def test_bad_documents():
    with pytest.raises(BadSpec):
        loads("{not json")
    with pytest.raises(BadSpec):
        lattice_from_json({"n": 2})
    with pytest.raises(NotAPoset):
        lattice_from_json({"n": 2, "bottom": 0, "top": 1, "leq": [[True, True]]})
    with pytest.raises(BadSpec):
        boolean_from_json({"kind": "chain", "atoms": 2})
    with pytest.raises(BadSpec):
        model_from_json({"measurements": ["x"], "outcomes": {}, "cover": [["x"]], "supports": {}})


def test_dumps_is_canonical():
    doc = lattice_to_json(benzene())
    assert dumps(doc) == dumps(json.loads(dumps(doc)))
    assert dumps(doc).endswith("\n")
