from __future__ import annotations

import pytest

from helpers import brute_corpus
from nlsa import (
    GF,
    QQ,
    NLieSuperalgebra,
    abelian,
    act3,
    condition_star,
    condition_star_star,
    engel_scan,
    fitting_zero_component,
    full_closure_nilpotent_subalgebra,
    paper_bc,
)
from nlsa.engel import element_points, tuple_count
from nlsa.lattice import is_s_star, maximal_subalgebras
from nlsa.series import is_nilpotent, is_weak_ideal, nilpotency_class


@pytest.mark.parametrize("p", [2, 3])
def test_engel_examples(p):
    F = GF(p)
    rep = engel_scan(paper_bc(4, F))
    assert rep.strategy == "exhaustive" and rep.all_nilpotent
    assert rep.tuple_count == tuple_count(paper_bc(4, F)) == (p + 1) ** 3
    X = act3(F)
    rep = engel_scan(X)
    assert rep.witness == (X.e("x1"), X.e("x2"))
    # the witness operator is the projection onto y
    assert rep.operator == ((0, 0, 0), (0, 0, 0), (0, 0, 1))
    assert engel_scan(abelian(0, 0, 3, 0, F)).all_nilpotent


def test_rational_scans_are_sampled():
    rep = engel_scan(paper_bc(4, QQ), samples=200)
    assert rep.strategy == "sampled" and rep.inconclusive
    X = act3(QQ)
    rep = engel_scan(X, samples=10)
    assert not rep.all_nilpotent and not rep.inconclusive
    assert condition_star_star(paper_bc(4, QQ), samples=50).status == "unknown"
    assert condition_star(paper_bc(4, QQ)).status == "unknown"


def test_sampling_is_seeded():
    A = paper_bc(4, QQ)
    one = engel_scan(A, samples=30, seed=5).tuple_count
    two = engel_scan(A, samples=30, seed=5).tuple_count
    assert one == two


def test_lines_start_with_basis_vectors():
    X = act3(GF(3))
    pts = element_points(X)
    assert pts[:3] == [X.e(0), X.e(1), X.e(2)]
    assert len(pts) == (3**3 - 1) // 2


def test_fitting_examples():
    A = paper_bc(4, GF(3))
    assert fitting_zero_component(A, ["b", "b", "c"]) == A.full_space()
    assert fitting_zero_component(A, ["b", "b", "b"]) == A.full_space()
    X = act3(GF(3))
    assert fitting_zero_component(X, ["x1", "x2"]) == X.span_names("x1", "x2")


def test_condition_examples():
    F = GF(3)
    A, X = paper_bc(4, F), act3(F)
    assert condition_star(A).holds
    res = condition_star(X)
    assert res.status == "fails" and res.witness == X.span_names("x1", "x2")
    assert condition_star(abelian(0, 0, 3, 0, F)).holds
    assert condition_star_star(A).holds
    assert condition_star_star(abelian(2, 1, 3, 0, F)).holds
    # D(x1, x2) kills x1, so ** holds for act3 even though act3 is not nilpotent
    assert condition_star_star(X).holds


def test_full_closure_examples():
    F = GF(3)
    A = paper_bc(4, F)
    assert full_closure_nilpotent_subalgebra(A) == A.full_space()
    X = act3(F)
    assert full_closure_nilpotent_subalgebra(X) == X.span_names("x1", "x2")


def test_engel_equivalence_on_brute_force_corpus():
    for _, A in brute_corpus():
        assert engel_scan(A).all_nilpotent == (nilpotency_class(A) is not None)


def test_char2_star_star_counterexample():
    """In char 2, ** together with weak-ideal maximal subalgebras does not force nilpotency."""
    F = GF(2)
    A = NLieSuperalgebra.from_brackets(F, 4, 0, [("c", 0), ("b", 1)], {("c", "b", "b", "b"): {"b": 1}})
    from nlsa import validate_algebra

    assert validate_algebra(A).ok
    assert not validate_algebra(NLieSuperalgebra.from_brackets(
        GF(3), 4, 0, [("c", 0), ("b", 1)], {("c", "b", "b", "b"): {"b": 1}})).ok
    assert condition_star_star(A).holds
    assert all(is_weak_ideal(A, M) for M in maximal_subalgebras(A))
    assert not is_nilpotent(A)
    assert is_s_star(A).s_star
