from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from helpers import brute_corpus, catalog_algebras
from nlsa import GF, QQ, NLieSuperalgebra, paper_bc, regular_representation, validate_algebra
from nlsa import io as nio
from nlsa.errors import FormatError


def test_document_shape():
    doc = nio.algebra_to_dict(paper_bc(4, GF(3)))
    assert doc["format"] == "nsla-v1"
    assert doc["brackets"] == [{"args": ["b", "b", "b", "b"], "value": {"c": "1"}}]
    assert doc["basis"] == [{"name": "c", "parity": 0}, {"name": "b", "parity": 1}]


LABELLED = catalog_algebras((2, 3)) + brute_corpus()


@settings(max_examples=30)
@given(st.sampled_from(LABELLED))
def test_round_trip(item):
    _, A = item
    text = nio.dumps(nio.algebra_to_dict(A))
    B = nio.loads_algebra(text)
    assert B.same_structure(A)
    assert nio.dumps(nio.algebra_to_dict(B)) == text


def test_rational_coefficients_round_trip():
    A = NLieSuperalgebra.from_brackets(QQ, 3, 0, [("x", 0), ("y", 0), ("z", 0)], {("x", "y", "z"): {"x": "1/2"}})
    B = nio.loads_algebra(nio.dumps(nio.algebra_to_dict(A)))
    assert B.same_structure(A)
    assert nio.algebra_to_dict(B)["brackets"][0]["value"] == {"x": "1/2"}


def test_representation_round_trip(tmp_path):
    A = paper_bc(4, GF(3))
    rho = regular_representation(A)
    path = tmp_path / "rho.nsla"
    nio.save_representation(rho, path)
    doc = nio.load_document(path)
    back = nio.representation_from_dict(doc)
    assert back.canonical_operators() == rho.canonical_operators()


def test_unsorted_arguments_are_kept_for_validation():
    doc = nio.algebra_to_dict(paper_bc(4, GF(3)))
    doc["brackets"].append({"args": ["b", "c", "b", "b"], "value": {"b": "1"}})
    A = nio.algebra_from_dict(doc)
    rep = validate_algebra(A)
    assert not rep.skew_ok
    assert any(w["kind"] == "skew" for w in rep.witnesses)


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(format="nsla-v0"),
    lambda d: d.update(field="F4"),
    lambda d: d.update(arity=1),
    lambda d: d["basis"].append({"name": "c", "parity": 1}),
    lambda d: d["basis"].append({"name": "z", "parity": 2}),
    lambda d: d["brackets"].append({"args": ["b", "q", "b", "b"], "value": {"c": "1"}}),
    lambda d: d["brackets"].append({"args": ["b", "b"], "value": {"c": "1"}}),
    lambda d: d["brackets"][0]["value"].update(c=1),
    lambda d: d["brackets"][0]["value"].update(c="1/3"),
    lambda d: d["brackets"].append(dict(d["brackets"][0])),
])
def test_malformed_documents(mutate):
    doc = json.loads(json.dumps(nio.algebra_to_dict(paper_bc(4, GF(3)))))
    mutate(doc)
    with pytest.raises(FormatError):
        nio.algebra_from_dict(doc)


def test_not_json(tmp_path):
    path = tmp_path / "bad.nsla"
    path.write_text("{not json")
    with pytest.raises(FormatError):
        nio.load_algebra(path)


def test_corpus_round_trip(tmp_path):
    items = [(i, A) for i, (_, A) in enumerate(brute_corpus()[:5])]
    paths = nio.write_corpus(items, tmp_path)
    assert [p.name for p in paths] == [f"alg_{i:08d}.nsla" for i, _ in items]
    back = nio.read_corpus(tmp_path)
    assert all(B.same_structure(A) for (_, B), (_, A) in zip(back, items))
