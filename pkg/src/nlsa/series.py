"""Products of subspaces, the power and derived series, and quotients."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import NLieSuperalgebra
from .errors import BadArity, HypothesisNotMet, NotAnIdeal
from .linalg import GradedSubspace, reduce_mod_rref


def product_space(A: NLieSuperalgebra, spaces: Sequence[GradedSubspace]) -> GradedSubspace:
    """``[U_1, ..., U_n]``: span of brackets of basis vectors drawn from each factor."""
    if len(spaces) != A.arity:
        raise BadArity(f"need {A.arity} factors, got {len(spaces)}")
    if any(U.is_zero for U in spaces):
        return A.zero_space()
    vecs = set()
    for combo in itertools.product(*(U.basis for U in spaces)):
        v = A.bracket(*combo)
        if any(v):
            vecs.add(v)
    return A.span(sorted(vecs))


def _ad(A: NLieSuperalgebra, X: GradedSubspace, W: GradedSubspace | None = None) -> GradedSubspace:
    """``[W, ..., W, X]`` with ``n - 1`` copies of ``W`` (default ``A``)."""
    W = A.full_space() if W is None else W
    return product_space(A, [W] * (A.arity - 1) + [X])


def brackets_within(A: NLieSuperalgebra, spaces: Sequence[GradedSubspace], target: GradedSubspace) -> bool:
    """``[U_1, ..., U_n] <= target``, stopping at the first bracket outside."""
    if any(U.is_zero for U in spaces):
        return True
    if target.dim == A.dim:
        return True
    for combo in itertools.product(*(U.basis for U in spaces)):
        v = A.bracket(*combo)
        if any(v) and not target.contains_vector(v):
            return False
    return True


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------
def is_subalgebra(A: NLieSuperalgebra, U: GradedSubspace) -> bool:
    return brackets_within(A, [U] * A.arity, U)


def is_ideal(A: NLieSuperalgebra, I: GradedSubspace, within: GradedSubspace | None = None) -> bool:
    """``[W, ..., W, I] <= I`` for ``W = within`` (default the whole algebra)."""
    W = A.full_space() if within is None else within
    return brackets_within(A, [W] * (A.arity - 1) + [I], I)


def is_weak_ideal(A: NLieSuperalgebra, I: GradedSubspace) -> bool:
    return brackets_within(A, [A.full_space()] + [I] * (A.arity - 1), I)


def is_abelian_ideal(A: NLieSuperalgebra, I: GradedSubspace) -> bool:
    if not is_ideal(A, I):
        return False
    W = A.full_space()
    return brackets_within(A, [W] * (A.arity - 2) + [I, I], A.zero_space())


def derived_square(A: NLieSuperalgebra, U: GradedSubspace | None = None) -> GradedSubspace:
    """``U^2 = [U, ..., U]`` (``A^2`` by default)."""
    U = A.full_space() if U is None else U
    return product_space(A, [U] * A.arity)


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------
@dataclass
class SeriesReport:
    kind: str
    terms: list[GradedSubspace]
    verdict: str  # "terminates_at_zero" | "stabilizes_nonzero"
    step: int
    ideal: bool = True
    k: int | None = None

    @property
    def terminates(self) -> bool:
        return self.verdict == "terminates_at_zero"

    def to_dict(self, names=None) -> dict:
        out = {
            "kind": self.kind,
            "verdict": self.verdict,
            "step": self.step,
            "dims": [T.dim for T in self.terms],
            "terms": [T.describe(names) for T in self.terms],
        }
        if not self.ideal:
            out["input_is_ideal"] = False
        if self.k is not None:
            out["k"] = self.k
        return out


def _run_series(first: GradedSubspace, step, start_index: int, kind: str, **extra) -> SeriesReport:
    terms = [first]
    seen = {first: start_index}
    while True:
        if terms[-1].is_zero:
            return SeriesReport(kind, terms, "terminates_at_zero", start_index + len(terms) - 1, **extra)
        nxt = step(terms[-1])
        if nxt in seen:
            return SeriesReport(kind, terms, "stabilizes_nonzero", seen[nxt], **extra)
        seen[nxt] = start_index + len(terms)
        terms.append(nxt)


def ideal_power_series(
    A: NLieSuperalgebra,
    I: GradedSubspace,
    override: bool = False,
    within: GradedSubspace | None = None,
) -> SeriesReport:
    """``I^1 = I``, ``I^{s+1} = [W, ..., W, I, I^s]`` with ``W = within`` (default ``A``).

    ``step`` of a terminating series is the least ``s`` with ``I^s = 0``;
    for a stabilizing one it is the index of the first repeated term.
    """
    W = A.full_space() if within is None else within
    ideal = is_ideal(A, I, W)
    if not ideal and not override:
        raise NotAnIdeal("ideal_power_series needs an ideal (pass override=True for other subspaces)")
    head = [W] * (A.arity - 2) + [I]
    return _run_series(I, lambda S: product_space(A, head + [S]), 1, "ideal_power", ideal=ideal)


def ideal_power(A: NLieSuperalgebra, I: GradedSubspace, s: int, within: GradedSubspace | None = None) -> GradedSubspace:
    """The single term ``I^s`` (``s >= 1``)."""
    W = A.full_space() if within is None else within
    head = [W] * (A.arity - 2) + [I]
    T = I
    for _ in range(s - 1):
        if T.is_zero:
            break
        T = product_space(A, head + [T])
    return T


def nilpotency_class(A: NLieSuperalgebra, within: GradedSubspace | None = None) -> int | None:
    """Least ``t`` with ``W^{t+1} = 0`` for ``W = within`` (default ``A``), else ``None``."""
    W = A.full_space() if within is None else within
    rep = ideal_power_series(A, W, override=True, within=W)
    return rep.step - 1 if rep.terminates else None


def is_nilpotent(A: NLieSuperalgebra, within: GradedSubspace | None = None) -> bool:
    return nilpotency_class(A, within) is not None


def quotient_is_nilpotent(A: NLieSuperalgebra, U: GradedSubspace, K: GradedSubspace) -> bool:
    """Is ``U/K`` nilpotent, for ``K`` an ideal of the subalgebra ``U``?

    The image of ``U^s`` in ``U/K`` is ``(U/K)^s``, so this asks whether the
    power series of ``U`` eventually lands inside ``K``.
    """
    rep = ideal_power_series(A, U, override=True, within=U)
    return any(T <= K for T in rep.terms)


def derived_k_series(A: NLieSuperalgebra, I: GradedSubspace, k: int, override: bool = False) -> SeriesReport:
    """``I^{(0)} = I``, ``I^{(s+1)} = [I^{(s)} (k times), A, ..., A]``."""
    n = A.arity
    if not 2 <= k <= n:
        raise BadArity(f"k must satisfy 2 <= k <= {n}")
    ideal = is_ideal(A, I)
    if not ideal and not override:
        raise NotAnIdeal("derived series needs an ideal")
    W = A.full_space()
    return _run_series(I, lambda S: product_space(A, [S] * k + [W] * (n - k)), 0, "derived_k", ideal=ideal, k=k)


def is_k_solvable(A: NLieSuperalgebra, k: int, I: GradedSubspace | None = None) -> bool:
    I = A.full_space() if I is None else I
    return derived_k_series(A, I, k).terminates


def mixed_power(A: NLieSuperalgebra, N: GradedSubspace, j: int, i: int) -> GradedSubspace:
    """``A^j N^i``: ``j`` applications of ``X -> [A, ..., A, X]`` to ``N^i``.

    ``j <= 0`` returns ``N^i`` itself.
    """
    X = ideal_power(A, N, i)
    for _ in range(max(j, 0)):
        if X.is_zero:
            break
        X = _ad(A, X)
    return X


def _minimal_m(A: NLieSuperalgebra, target: GradedSubspace) -> int | None:
    """Least ``m >= 0`` with ``A^{m+1} <= target``; ``None`` if the powers never get there."""
    rep = ideal_power_series(A, A.full_space(), override=True)
    for s, T in enumerate(rep.terms, start=1):
        if T <= target:
            return s - 1
    if rep.terminates:
        return len(rep.terms)  # A^{step} = 0 is contained in anything
    return None


@dataclass
class LemmaReport:
    m: int
    rows: list[dict] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(r["holds"] for r in self.rows)

    def to_dict(self) -> dict:
        return {"m": self.m, "holds": self.holds, "rows": self.rows}


def lemma_containment_check(A: NLieSuperalgebra, N: GradedSubspace) -> LemmaReport:
    """Check ``A^u N^r <= N^{r+1}`` with ``u = (r-1)(n-1)(m-1) + m``.

    ``m`` is least with ``A^{m+1} <= N^2``.  Rows run over ``r = 1..`` until
    ``N^{r+1}`` is zero or the power series of ``N`` has stabilized.
    """
    if not is_ideal(A, N):
        raise NotAnIdeal("N must be an ideal")
    n = A.arity
    N2 = ideal_power(A, N, 2)
    m = _minimal_m(A, N2)
    if m is None:
        raise HypothesisNotMet("A/N^2 is not nilpotent")
    nser = ideal_power_series(A, N)
    last = nser.step if nser.terminates else nser.step + 1
    rep = LemmaReport(m)
    for r in range(1, max(last, 1)):
        u = (r - 1) * (n - 1) * (m - 1) + m
        lhs = mixed_power(A, N, u, r)
        rhs = ideal_power(A, N, r + 1)
        rep.rows.append({"r": r, "u": u, "holds": lhs <= rhs})
    return rep


@dataclass
class ClassBoundReport:
    applicable: bool
    vacuous: bool = False
    t: int | None = None
    m: int | None = None
    bound: int | None = None
    cl: int | None = None
    holds: bool | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def class_bound_check(A: NLieSuperalgebra, N: GradedSubspace) -> ClassBoundReport:
    """Compare ``cl(A)`` with ``tm + t(t-1)(m-1)(n-1)/2``."""
    if not is_ideal(A, N):
        raise NotAnIdeal("N must be an ideal")
    if N.is_zero:
        return ClassBoundReport(applicable=True, vacuous=True, t=0, bound=0, reason="N = 0")
    nser = ideal_power_series(A, N)
    if not nser.terminates:
        return ClassBoundReport(applicable=False, reason="N is not nilpotent")
    t = nser.step - 1
    m = _minimal_m(A, ideal_power(A, N, 2))
    if m is None:
        return ClassBoundReport(applicable=False, t=t, reason="A/N^2 is not nilpotent")
    n = A.arity
    bound = t * m + t * (t - 1) * (m - 1) * (n - 1) // 2
    cl = nilpotency_class(A)
    return ClassBoundReport(
        applicable=True, t=t, m=m, bound=bound, cl=cl, holds=cl is not None and cl <= bound
    )


# ---------------------------------------------------------------------------
# quotients and induced structures
# ---------------------------------------------------------------------------
def quotient_algebra(A: NLieSuperalgebra, I: GradedSubspace) -> NLieSuperalgebra:
    """``A/I`` on the coset representatives of the non-pivot basis vectors."""
    if not is_ideal(A, I):
        raise NotAnIdeal("can only divide by an ideal")
    F = A.field
    keep = [i for i in range(A.dim) if i not in set(I.pivots)]
    pos = {g: k for k, g in enumerate(keep)}
    basis = [(A.names[i], A.parities[i]) for i in keep]
    table = {}
    red, piv = I.basis, I.pivots
    for key in itertools.combinations_with_replacement(range(len(keep)), A.arity):
        g = tuple(keep[k] for k in key)
        val = A.table.get(g)
        if val is None:
            continue
        v = reduce_mod_rref(F, red, piv, val)
        table[key] = tuple(v[i] for i in keep)
    Q = NLieSuperalgebra(F, A.arity, A.alpha, basis, table)
    return Q


def induced_algebra(A: NLieSuperalgebra, U: GradedSubspace, prefix: str | None = None) -> NLieSuperalgebra:
    """The subalgebra ``U`` as an algebra in its own echelon basis.

    Basis vectors are named after the ambient basis vector at their pivot
    (or ``prefix + index`` when given).
    """
    if not is_subalgebra(A, U):
        raise ValueError("U is not a subalgebra")
    B = U.basis
    names = [A.names[p] if prefix is None else f"{prefix}{k}" for k, p in enumerate(U.pivots)]
    parities = U.basis_parities()
    table = {}
    for key in itertools.combinations_with_replacement(range(len(B)), A.arity):
        v = A.bracket(*(B[k] for k in key))
        if any(v):
            table[key] = U.coordinates(v)
    return NLieSuperalgebra(A.field, A.arity, A.alpha, list(zip(names, parities)), table)
