"""Mechanical checks of the nilpotency theorems on a concrete algebra.

Each check evaluates a theorem's hypotheses on the given algebra and, where
they are met, its conclusion.  A record is ``pass``, ``fail`` or
``not_applicable``; failures carry witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .algebra import NLieSuperalgebra, derivation_power_membership, derivation_space, canonical_tuples
from .engel import condition_star, condition_star_star, engel_scan, vec_str
from .errors import BudgetExceeded, FiniteFieldRequired
from .lattice import (
    DEFAULT_BUDGET,
    LatticeCatalog,
    enumerate_graded_subspaces,
    frattini_phi,
    invariance_number,
    is_s_star,
    jacobson,
    normal_closure,
)
from .linalg import LinearOperator
from .representations import regular_representation, s_star_rho_check
from .series import (
    class_bound_check,
    derived_square,
    is_ideal,
    is_k_solvable,
    is_nilpotent,
    lemma_containment_check,
    nilpotency_class,
    quotient_is_nilpotent,
)
from .errors import HypothesisNotMet


@dataclass
class ConformanceRecord:
    id: str
    statement: str
    hypothesis: str  # "met" | "not_met" | "unavailable"
    conclusion: str  # "holds" | "fails" | "not_checked"
    status: str  # "pass" | "fail" | "not_applicable"
    witnesses: list = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "statement": self.statement,
            "hypothesis": self.hypothesis,
            "conclusion": self.conclusion,
            "status": self.status,
            "witnesses": self.witnesses,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ConformanceReport:
    records: list[ConformanceRecord]
    summary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.records)

    def by_id(self, ident: str) -> ConformanceRecord:
        return next(r for r in self.records if r.id == ident)

    def failures(self) -> list[ConformanceRecord]:
        return [r for r in self.records if r.status == "fail"]

    def to_dict(self) -> dict:
        counts = {"pass": 0, "fail": 0, "not_applicable": 0}
        for r in self.records:
            counts[r.status] += 1
        return {"ok": self.ok, "counts": counts, "summary": self.summary, "records": [r.to_dict() for r in self.records]}


def _implication(ident, statement, hyp, concl, witnesses=(), note="") -> ConformanceRecord:
    if hyp is None:
        return ConformanceRecord(ident, statement, "unavailable", "not_checked", "not_applicable", [], note)
    if not hyp:
        return ConformanceRecord(ident, statement, "not_met", "not_checked", "not_applicable", [], note)
    return ConformanceRecord(
        ident, statement, "met", "holds" if concl else "fails", "pass" if concl else "fail", list(witnesses), note
    )


def _forall(ident, statement, instances: int, failures: list, note="") -> ConformanceRecord:
    """Universally quantified check: applicable when some instance meets the hypothesis."""
    return _implication(ident, statement, instances > 0, not failures, failures[:5], note)


def theorem_conformance(
    A: NLieSuperalgebra,
    budget: int = DEFAULT_BUDGET,
    tuple_budget: int | None = None,
    seed: int = 0,
    only: set[str] | None = None,
) -> ConformanceReport:
    """Run every check (or the ids in ``only``)."""
    tuple_budget = budget if tuple_budget is None else tuple_budget
    names = A.names
    desc = lambda U: U.describe(names)  # noqa: E731
    records: list[ConformanceRecord] = []

    def want(ident: str) -> bool:
        return only is None or ident in only

    cl = nilpotency_class(A)
    nil = cl is not None
    full = A.full_space()
    A2 = derived_square(A)
    summary = {"nilpotency_class": cl, "nilpotent": nil, "dim": A.dim, "dim_A2": A2.dim}

    # -- items that never need the lattice ------------------------------
    scan = engel_scan(A, tuple_budget, seed=seed)
    summary["engel"] = scan.verdict
    if want("engel"):
        st = "all left multiplications nilpotent <=> A nilpotent"
        wit = [[vec_str(A, v) for v in scan.witness]] if scan.witness else []
        if scan.inconclusive and not nil:
            records.append(ConformanceRecord("engel", st, "unavailable", "not_checked", "not_applicable", [],
                                             "sampled scan found no witness"))
        else:
            agree = scan.all_nilpotent == nil
            records.append(ConformanceRecord("engel", st, "met", "holds" if agree else "fails",
                                             "pass" if agree else "fail", wit))

    ss = condition_star_star(A, tuple_budget, seed=seed)
    summary["condition_star_star"] = ss.status
    ss_holds = ss.holds  # None when unknown

    if want("derivation_powers"):
        fails = []
        instances = 0
        for parity in (0, 1):
            ders = derivation_space(A, parity)
            if len(ders) > 1:
                total = ders[0].matrix
                F = A.field
                for D in ders[1:]:
                    total = tuple(tuple(F.reduce(x + y) for x, y in zip(r, s)) for r, s in zip(total, D.matrix))
                ders = ders + [LinearOperator(F, total, A.parities, parity)]
            for D in ders:
                for k in range(1, 5):
                    for x in canonical_tuples(A.parities, A.arity, A.field.char):
                        instances += 1
                        if not derivation_power_membership(A, D, k, [A.e(i) for i in x]):
                            fails.append({"parity": parity, "k": k, "x": [names[i] for i in x]})
        records.append(_forall("derivation_powers",
                               "D^k[x_1..x_n] lies in the span of [D^{i_1}x_1, ..., D^{i_n}x_n], sum i = k",
                               instances, fails))

    # -- lattice ---------------------------------------------------------
    cat: LatticeCatalog | None
    try:
        cat = enumerate_graded_subspaces(A, budget)
        summary["lattice_size"] = len(cat)
    except (BudgetExceeded, FiniteFieldRequired) as exc:
        cat = None
        summary["lattice"] = str(exc)

    lattice_ids = [
        "star_star_weak_ideals", "nilpotent_maximal_ideals", "frattini_supplement", "frattini_in_square",
        "jacobson_in_square", "solvable_jacobson", "nilpotent_radicals", "conditions_imply_nilpotent",
        "nilpotent_condition_star", "invariance_drop", "invariance_star_star", "nilpotent_invariance",
        "subinvariant_quotient", "s_star_iff_nilpotent", "ideal_quotient", "frattini_ideals_nilpotent",
        "mixed_power_containment", "class_bound", "nilpotent_generator_exists", "nilpotent_generator_is_whole",
    ]
    if cat is None:
        for ident in lattice_ids:
            if want(ident):
                records.append(ConformanceRecord(ident, "", "unavailable", "not_checked", "not_applicable", [],
                                                 "subspace lattice not enumerable"))
        if want("envelope"):
            records.append(_envelope_record(A, [full], desc, "lattice not enumerable: S = A only"))
        return ConformanceReport(records, summary)

    subs = [cat.subspaces[i] for i in cat.subalgebras]
    ideals = [cat.subspaces[i] for i in cat.ideals]
    maxsub_idx = [i for i, f in enumerate(cat.flags) if f["maximal_subalgebra"]]
    maxsubs = [cat.subspaces[i] for i in maxsub_idx]
    F_A, phi = frattini_phi(A, cat)
    J = jacobson(A, cat)
    star = condition_star(A, cat)
    summary.update({"frattini": desc(F_A), "phi": desc(phi), "jacobson": desc(J), "condition_star": star.status})

    if want("star_star_weak_ideals"):
        not_weak = [desc(cat.subspaces[i]) for i in maxsub_idx if not cat.flags[i]["weak_ideal"]]
        hyp = None if ss_holds is None else (ss_holds and not not_weak)
        records.append(_implication("star_star_weak_ideals",
                                    "condition ** and every maximal subalgebra a weak ideal => A nilpotent",
                                    hyp, nil))

    if want("nilpotent_maximal_ideals"):
        bad = [desc(cat.subspaces[i]) for i in maxsub_idx if not cat.flags[i]["ideal"]]
        records.append(_implication("nilpotent_maximal_ideals",
                                    "A nilpotent => every maximal subalgebra is an ideal", nil, not bad, bad))

    if want("frattini_supplement"):
        bad = []
        for B in subs:
            if B != full and (B + F_A == full or B + phi == full):
                bad.append(desc(B))
        records.append(_forall("frattini_supplement", "B + F(A) = A or B + phi(A) = A => B = A",
                               len(subs), bad))

    if want("frattini_in_square"):
        records.append(_implication("frattini_in_square", "F(A) <= A^2", True, F_A <= A2,
                                    [] if F_A <= A2 else [desc(F_A)]))

    if want("jacobson_in_square"):
        records.append(_implication("jacobson_in_square", "J(A) <= A^2", True, J <= A2,
                                    [] if J <= A2 else [desc(J)]))

    if want("solvable_jacobson"):
        ks = [k for k in range(2, A.arity + 1) if is_k_solvable(A, k)]
        records.append(_implication("solvable_jacobson", "A k-solvable => J(A) = A^2", bool(ks), J == A2,
                                    [] if J == A2 else [{"J": desc(J), "A2": desc(A2), "k": ks}]))

    if want("nilpotent_radicals"):
        same = F_A == A2 == phi == J
        records.append(_implication("nilpotent_radicals", "A nilpotent => F(A) = A^2 = phi(A) = J(A)", nil, same,
                                    [] if same else [{"F": desc(F_A), "A2": desc(A2), "phi": desc(phi), "J": desc(J)}]))

    if want("conditions_imply_nilpotent"):
        hyp = None if ss_holds is None else (ss_holds and star.holds)
        records.append(_implication("conditions_imply_nilpotent", "conditions ** and * => A nilpotent", hyp, nil))

    if want("nilpotent_condition_star"):
        records.append(_implication("nilpotent_condition_star", "A nilpotent => condition *", nil, star.holds,
                                    [desc(star.witness)] if star.witness is not None else []))

    need_v = any(want(i) for i in ("invariance_drop", "invariance_star_star", "nilpotent_invariance"))
    if need_v:
        vA = invariance_number(A, catalog=cat)
        summary["invariance_number"] = vA.v
        proper = [U for U in subs if U != full and not U.is_zero]
        v_of = {U: invariance_number(A, U, catalog=cat).v for U in proper}
        if want("invariance_drop"):
            cands = [V for V, i in zip(maxsubs, maxsub_idx) if not cat.flags[i]["ideal"]]
            bad = [{"V": desc(V), "v(V)": v_of.get(V, 0), "v(A)": vA.v} for V in cands if not vA.v > v_of.get(V, 0)]
            records.append(_forall("invariance_drop", "maximal V not an ideal => v(A) > v(V)", len(cands), bad))
        equal = all(v == vA.v for v in v_of.values())
        if want("invariance_star_star"):
            hyp = None if ss_holds is None else (ss_holds and equal)
            records.append(_implication("invariance_star_star",
                                        "condition ** and v(A) = v(U) for all proper U => A nilpotent", hyp, nil))
        if want("nilpotent_invariance"):
            bad = [{"U": desc(U), "v(U)": v} for U, v in v_of.items() if v != vA.v]
            if A.dim and vA.v != 1:
                bad.insert(0, {"v(A)": vA.v})
            records.append(_implication("nilpotent_invariance", "A nilpotent => v(A) = v(U) = 1 for all proper U",
                                        nil and A.dim > 0, not bad, bad[:5]))

    if want("subinvariant_quotient"):
        inst, bad = 0, []
        for ui in cat.subalgebras:
            U = cat.subspaces[ui]
            if not cat.is_subinvariant(ui):
                continue
            for ki in cat.subalgebras:
                K = cat.subspaces[ki]
                if not (K <= U and K <= F_A and is_ideal(A, K, within=U)):
                    continue
                if not quotient_is_nilpotent(A, U, K):
                    continue
                inst += 1
                if not is_nilpotent(A, U):
                    bad.append({"U": desc(U), "K": desc(K)})
        records.append(_forall("subinvariant_quotient",
                               "U subinvariant, K ideal of U inside F(A), U/K nilpotent => U nilpotent", inst, bad))

    if want("s_star_iff_nilpotent"):
        sres = is_s_star(A, cat)
        summary["s_star"] = sres.s_star
        agree = sres.s_star == nil
        wit = []
        if not agree:
            wit = [{"s_star": sres.s_star, "nilpotent": nil,
                    "violating": desc(sres.violating) if sres.violating is not None else None}]
        records.append(_implication("s_star_iff_nilpotent", "A is an S* algebra <=> A nilpotent", True, agree, wit))

    if want("ideal_quotient"):
        inst, bad = 0, []
        for B in ideals:
            BF = B & F_A
            for ki in cat.subalgebras:
                C = cat.subspaces[ki]
                if not (C <= BF and is_ideal(A, C, within=B)):
                    continue
                if not quotient_is_nilpotent(A, B, C):
                    continue
                inst += 1
                if not is_nilpotent(A, B):
                    bad.append({"B": desc(B), "C": desc(C)})
        records.append(_forall("ideal_quotient",
                               "B ideal, C ideal of B inside B and F(A), B/C nilpotent => B nilpotent", inst, bad))

    if want("frattini_ideals_nilpotent"):
        inside = [B for B in ideals if B <= F_A]
        bad = [desc(B) for B in inside if not is_nilpotent(A, B)]
        records.append(_forall("frattini_ideals_nilpotent", "every ideal inside F(A), phi(A) included, is nilpotent",
                               len(inside), bad))

    if want("mixed_power_containment") or want("class_bound"):
        inst_l, bad_l, inst_c, bad_c = 0, [], 0, []
        for N in ideals:
            try:
                rep = lemma_containment_check(A, N)
                inst_l += 1
                if not rep.holds:
                    bad_l.append({"N": desc(N), "rows": [r for r in rep.rows if not r["holds"]]})
            except HypothesisNotMet:
                pass
            cb = class_bound_check(A, N)
            if cb.applicable and not cb.vacuous:
                inst_c += 1
                if not cb.holds:
                    bad_c.append({"N": desc(N), **cb.to_dict()})
        if want("mixed_power_containment"):
            records.append(_forall("mixed_power_containment",
                                   "A/N^2 nilpotent => A^u N^r <= N^{r+1}, u = (r-1)(n-1)(m-1)+m", inst_l, bad_l))
        if want("class_bound"):
            records.append(_forall("class_bound", "cl(A) <= tm + t(t-1)(m-1)(n-1)/2", inst_c, bad_c))

    if want("nilpotent_generator_exists") or want("nilpotent_generator_is_whole"):
        gens = []
        for U in subs:
            if not U.is_zero and is_nilpotent(A, U) and normal_closure(A, U) == full:
                gens.append(U)
        if want("nilpotent_generator_exists"):
            hyp = None if ss_holds is None else (ss_holds and A.dim > 0)
            records.append(_implication("nilpotent_generator_exists",
                                        "condition ** => some nonzero nilpotent N has normal closure A", hyp,
                                        bool(gens)))
        if want("nilpotent_generator_is_whole"):
            bad = [desc(U) for U in gens if U != full]
            records.append(_implication("nilpotent_generator_is_whole",
                                        "A nilpotent => the only nilpotent N with normal closure A is A",
                                        nil and A.dim > 0, not bad, bad[:5]))

    if want("envelope"):
        records.append(_envelope_record(A, subs, desc))

    return ConformanceReport(records, summary)


def _envelope_record(A: NLieSuperalgebra, spaces, desc: Callable, note: str = "") -> ConformanceRecord:
    rho = regular_representation(A)
    inst, bad = 0, []
    for S in spaces:
        rep = s_star_rho_check(rho, S)
        if rep.generators_nilpotent:
            inst += 1
            if not rep.holds:
                bad.append({"S": desc(S), **rep.to_dict()})
    return _forall("envelope", "closed S with nilpotent operators rho(S,...,S) => nilpotent envelope",
                   inst, bad, note)
