"""The lattice of graded subspaces over a finite field and constructions on it.

Everything here enumerates: maximal subalgebras, the Frattini subalgebra and
its ideal part, the Jacobson radical, subinvariance, invariance numbers and
the S* condition.  Enumeration is restricted to graded subspaces and is
bounded by a budget on the number of subspaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .algebra import NLieSuperalgebra
from .errors import BudgetExceeded, FiniteFieldRequired
from .linalg import GradedSubspace, echelonize, rank
from .scalars import Field
from .series import (
    brackets_within,
    derived_square,
    is_abelian_ideal,
    is_ideal,
    is_nilpotent,
    is_subalgebra,
    is_weak_ideal,
    product_space,
)

DEFAULT_BUDGET = 10**6


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------
def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of ``F_q^m``."""
    if k < 0 or k > m:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(m: int, q: int) -> int:
    return sum(gaussian_binomial(m, k, q) for k in range(m + 1))


def count_graded_subspaces(d0: int, d1: int, q: int) -> int:
    return count_subspaces(d0, q) * count_subspaces(d1, q)


def rref_matrices(F: Field, m: int) -> Iterator[tuple[tuple, ...]]:
    """Every reduced echelon matrix with ``m`` columns and no zero rows."""
    p = F.p
    for k in range(m + 1):
        for piv in itertools.combinations(range(m), k):
            pset = set(piv)
            free = [(r, j) for r, c in enumerate(piv) for j in range(c + 1, m) if j not in pset]
            for vals in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * m for _ in range(k)]
                for r, c in enumerate(piv):
                    rows[r][c] = 1
                for (r, j), x in zip(free, vals):
                    rows[r][j] = x
                yield tuple(tuple(r) for r in rows)


def enumerate_subspaces(F: Field, parities: Sequence[int], budget: int = DEFAULT_BUDGET) -> list[GradedSubspace]:
    if not F.is_finite:
        raise FiniteFieldRequired("subspace enumeration needs a finite field")
    parities = tuple(parities)
    d0 = parities.count(0)
    d1 = len(parities) - d0
    total = count_graded_subspaces(d0, d1, F.p)
    if total > budget:
        raise BudgetExceeded(f"{total} graded subspaces exceed the budget {budget}")
    evens = list(rref_matrices(F, d0))
    odds = list(rref_matrices(F, d1))
    out = [GradedSubspace(F, parities, e, o) for e in evens for o in odds]
    out.sort(key=GradedSubspace.sort_key)
    return out


# ---------------------------------------------------------------------------
# the catalog
# ---------------------------------------------------------------------------
@dataclass
class LatticeCatalog:
    """All graded subspaces of ``algebra`` with their structural flags.

    Flags for subinvariance are computed lazily by exhaustive chain search.
    """

    algebra: NLieSuperalgebra
    subspaces: list[GradedSubspace]
    flags: list[dict] = field(default_factory=list)
    _subinv: dict = field(default_factory=dict, repr=False)
    _ideal_in: dict = field(default_factory=dict, repr=False)

    @cached_property
    def index(self) -> dict[GradedSubspace, int]:
        return {U: i for i, U in enumerate(self.subspaces)}

    @cached_property
    def subalgebras(self) -> list[int]:
        return [i for i, f in enumerate(self.flags) if f["subalgebra"]]

    @cached_property
    def ideals(self) -> list[int]:
        return [i for i, f in enumerate(self.flags) if f["ideal"]]

    @property
    def top(self) -> int:
        return len(self.subspaces) - 1

    def __len__(self):
        return len(self.subspaces)

    @cached_property
    def _le(self):
        """Inclusion among subalgebras (rows/cols indexed by catalog position)."""
        subs = self.subalgebras
        table = {i: {} for i in range(len(self.subspaces))}
        for i in subs:
            for j in subs:
                table[i][j] = self.subspaces[i].dim <= self.subspaces[j].dim and self.subspaces[i] <= self.subspaces[j]
        return table

    @cached_property
    def maximal_in(self) -> dict[int, list[int]]:
        """For each subalgebra, its maximal proper subalgebras."""
        subs = self.subalgebras
        out = {}
        for x in subs:
            below = [y for y in subs if y != x and self._le[y][x]]
            out[x] = [y for y in below if not any(z != y and self._le[y][z] for z in below)]
        return out

    def ideal_in(self, c: int, b: int) -> bool:
        key = (c, b)
        if key not in self._ideal_in:
            self._ideal_in[key] = is_ideal(self.algebra, self.subspaces[c], self.subspaces[b])
        return self._ideal_in[key]

    def subinvariant_chain(self, t: int, b: int | None = None) -> list[int] | None:
        """Exhaustive search for ``B = T_0 > T_1 > ... > T_k = T`` with each step an ideal."""
        b = self.top if b is None else b
        key = (t, b)
        if key in self._subinv:
            return self._subinv[key]
        result = None
        if t == b:
            result = [b]
        elif self._le[t][b]:
            for c in self.subalgebras:
                if c == b or not self._le[t][c] or not self._le[c][b]:
                    continue
                if not self.ideal_in(c, b):
                    continue
                tail = self.subinvariant_chain(t, c)
                if tail is not None:
                    result = [b] + tail
                    break
        self._subinv[key] = result
        return result

    def is_subinvariant(self, t: int, b: int | None = None) -> bool:
        return self.subinvariant_chain(t, b) is not None

    def flag_table(self, with_subinvariant: bool = True) -> list[dict]:
        rows = []
        for i, U in enumerate(self.subspaces):
            f = dict(self.flags[i])
            if with_subinvariant:
                f["subinvariant"] = f["subalgebra"] and self.is_subinvariant(i)
            rows.append(f)
        return rows


def enumerate_graded_subspaces(A: NLieSuperalgebra, budget: int = DEFAULT_BUDGET) -> LatticeCatalog:
    subs = enumerate_subspaces(A.field, A.parities, budget)
    flags = []
    for U in subs:
        sub = is_subalgebra(A, U)
        ideal = is_ideal(A, U)
        flags.append(
            {
                "subalgebra": sub,
                "ideal": ideal,
                "weak_ideal": is_weak_ideal(A, U),
                "abelian_ideal": ideal and is_abelian_ideal(A, U),
            }
        )
    cat = LatticeCatalog(A, subs, flags)
    top = cat.top
    max_sub = set(cat.maximal_in.get(top, []))
    proper_ideals = [i for i in cat.ideals if i != top]
    max_ideal = {
        i for i in proper_ideals if not any(j != i and cat.subspaces[i] < cat.subspaces[j] for j in proper_ideals)
    }
    for i, f in enumerate(cat.flags):
        f["maximal_subalgebra"] = i in max_sub
        f["maximal_ideal"] = i in max_ideal
    return cat


def _catalog(A: NLieSuperalgebra, catalog: LatticeCatalog | None, budget: int) -> LatticeCatalog:
    if catalog is not None:
        return catalog
    return enumerate_graded_subspaces(A, budget)


def classify_subspace(A: NLieSuperalgebra, U: GradedSubspace) -> dict:
    ideal = is_ideal(A, U)
    return {
        "subalgebra": is_subalgebra(A, U),
        "ideal": ideal,
        "weak_ideal": is_weak_ideal(A, U),
        "abelian_ideal": ideal and is_abelian_ideal(A, U),
    }


# ---------------------------------------------------------------------------
# closures
# ---------------------------------------------------------------------------
def generated_subalgebra(A: NLieSuperalgebra, S: GradedSubspace) -> GradedSubspace:
    """Least subalgebra containing ``S``."""
    T = S
    while True:
        nxt = T + product_space(A, [T] * A.arity)
        if nxt == T:
            return T
        T = nxt


def generated_by_vector(A: NLieSuperalgebra, v: Sequence) -> tuple[tuple, ...]:
    """Echelon basis of the (not necessarily graded) subalgebra generated by ``v``."""
    F = A.field
    basis = echelonize(F, [tuple(v)]) if any(v) else ()
    while True:
        vecs = list(basis)
        for combo in itertools.product(basis, repeat=A.arity):
            w = A.bracket(*combo)
            if any(w):
                vecs.append(w)
        nxt = echelonize(F, vecs)
        if len(nxt) == len(basis):
            return basis
        basis = nxt


def normal_closure(A: NLieSuperalgebra, S: GradedSubspace, within: GradedSubspace | None = None) -> GradedSubspace:
    """Least ideal of ``within`` (default ``A``) containing ``S``."""
    W = A.full_space() if within is None else within
    T = S
    while True:
        nxt = T + product_space(A, [W] * (A.arity - 1) + [T])
        if nxt == T:
            return T
        T = nxt


def normal_closure_oracle(A: NLieSuperalgebra, S: GradedSubspace, catalog: LatticeCatalog | None = None,
                          budget: int = DEFAULT_BUDGET) -> GradedSubspace:
    """Intersection of every ideal containing ``S``, read off the lattice."""
    cat = _catalog(A, catalog, budget)
    out = A.full_space()
    for i in cat.ideals:
        if S <= cat.subspaces[i]:
            out = out & cat.subspaces[i]
    return out


def normalizer(A: NLieSuperalgebra, M: GradedSubspace) -> GradedSubspace:
    """``{x : [x, M, A, ..., A] <= M}``, solved separately on each parity."""
    from .linalg import nullspace, reduce_mod_rref

    F = A.field
    n = A.arity
    red, piv = M.basis, M.pivots
    tails = [(m,) + rest for m in M.basis for rest in itertools.product(A.full_space().basis, repeat=n - 2)]
    parts = []
    for par in (0, 1):
        idx = [i for i, p in enumerate(A.parities) if p == par]
        rows = []
        for tail in tails:
            cols = [reduce_mod_rref(F, red, piv, A.bracket(A.e(j), *tail)) for j in idx]
            for k in range(A.dim):
                row = [c[k] for c in cols]
                if any(row):
                    rows.append(row)
        sol = nullspace(F, rows, len(idx)) if idx else []
        vecs = []
        for s in sol:
            v = [F.zero] * A.dim
            for x, j in zip(s, idx):
                v[j] = x
            vecs.append(tuple(v))
        if not tails:
            vecs = [A.e(j) for j in idx]
        parts.extend(vecs)
    return A.span(parts)


# ---------------------------------------------------------------------------
# radicals
# ---------------------------------------------------------------------------
def maximal_subalgebras(A: NLieSuperalgebra, catalog: LatticeCatalog | None = None,
                        budget: int = DEFAULT_BUDGET) -> list[GradedSubspace]:
    cat = _catalog(A, catalog, budget)
    return [cat.subspaces[i] for i, f in enumerate(cat.flags) if f["maximal_subalgebra"]]


def maximal_ideals(A: NLieSuperalgebra, catalog: LatticeCatalog | None = None,
                   budget: int = DEFAULT_BUDGET) -> list[GradedSubspace]:
    cat = _catalog(A, catalog, budget)
    return [cat.subspaces[i] for i, f in enumerate(cat.flags) if f["maximal_ideal"]]


def _meet(A: NLieSuperalgebra, spaces: list[GradedSubspace]) -> GradedSubspace:
    out = A.full_space()
    for U in spaces:
        out = out & U
    return out


def frattini(A: NLieSuperalgebra, catalog: LatticeCatalog | None = None, budget: int = DEFAULT_BUDGET) -> GradedSubspace:
    """``F(A)``: intersection of the maximal subalgebras (``A`` when there are none)."""
    return _meet(A, maximal_subalgebras(A, catalog, budget))


def frattini_phi(A: NLieSuperalgebra, catalog: LatticeCatalog | None = None,
                 budget: int = DEFAULT_BUDGET) -> tuple[GradedSubspace, GradedSubspace]:
    """``(F(A), phi(A))`` with ``phi(A)`` the sum of all ideals inside ``F(A)``."""
    cat = _catalog(A, catalog, budget)
    F_A = frattini(A, cat)
    phi = A.zero_space()
    for i in cat.ideals:
        if cat.subspaces[i] <= F_A:
            phi = phi + cat.subspaces[i]
    return F_A, phi


def jacobson(A: NLieSuperalgebra, catalog: LatticeCatalog | None = None, budget: int = DEFAULT_BUDGET) -> GradedSubspace:
    """``J(A)``: intersection of the maximal ideals (``A`` when there are none)."""
    return _meet(A, maximal_ideals(A, catalog, budget))


# ---------------------------------------------------------------------------
# subinvariance and invariance numbers
# ---------------------------------------------------------------------------
@dataclass
class SubinvarianceResult:
    subinvariant: bool
    chain: list[GradedSubspace] | None = None

    def __bool__(self):
        return self.subinvariant


def is_subinvariant(A: NLieSuperalgebra, T: GradedSubspace, catalog: LatticeCatalog | None = None,
                    budget: int = DEFAULT_BUDGET, within: GradedSubspace | None = None) -> SubinvarianceResult:
    """Exhaustive chain search; the chain runs from ``within`` (default ``A``) down to ``T``."""
    cat = _catalog(A, catalog, budget)
    t = cat.index[T]
    b = cat.top if within is None else cat.index[within]
    if not cat.flags[t]["subalgebra"]:
        raise ValueError("T must be a subalgebra")
    chain = cat.subinvariant_chain(t, b)
    if chain is None:
        return SubinvarianceResult(False)
    return SubinvarianceResult(True, [cat.subspaces[i] for i in chain])


def subinvariant_fast(A: NLieSuperalgebra, T: GradedSubspace, within: GradedSubspace | None = None) -> SubinvarianceResult:
    """Iterated normal closures: ``B_{i+1}`` is the closure of ``T`` in ``B_i``.

    The descent stops when the closure no longer shrinks; ``T`` is
    subinvariant exactly when it has been reached.
    """
    B = A.full_space() if within is None else within
    chain = [B]
    while B != T:
        C = normal_closure(A, T, within=B)
        if C == B:
            return SubinvarianceResult(False)
        chain.append(C)
        B = C
    return SubinvarianceResult(True, chain)


@dataclass
class InvarianceResult:
    v: int
    chain: list[GradedSubspace]
    s: int

    def to_dict(self, names=None) -> dict:
        return {"v": self.v, "s": self.s, "chain": [U.describe(names) for U in self.chain]}


def invariance_number(
    A: NLieSuperalgebra,
    U: GradedSubspace | None = None,
    catalog: LatticeCatalog | None = None,
    budget: int = DEFAULT_BUDGET,
    count_zero: bool = False,
    method: str = "fast",
) -> InvarianceResult:
    """``v(U)`` (default ``U = A``) over every upper chain ``U = U_0 > U_1 > ... > U_k``.

    ``s`` counts the members ``U_i`` (``i >= 1``) subinvariant in ``U``.  The
    zero subalgebra is left out of that count unless ``count_zero`` is set.
    ``method`` selects the subinvariance test: ``"fast"`` (iterated normal
    closures) or ``"exhaustive"`` (chain search).
    """
    cat = _catalog(A, catalog, budget)
    u = cat.top if U is None else cat.index[U]
    Usp = cat.subspaces[u]
    memo_sub: dict[int, bool] = {}

    def subinv(y: int) -> bool:
        if y not in memo_sub:
            if method == "exhaustive":
                memo_sub[y] = cat.is_subinvariant(y, u)
            else:
                memo_sub[y] = subinvariant_fast(A, cat.subspaces[y], within=Usp).subinvariant
        return memo_sub[y]

    # for each subalgebra x: {(k, s): witness chain below x}
    memo: dict[int, dict[tuple[int, int], tuple[int, ...]]] = {}

    def pairs(x: int) -> dict[tuple[int, int], tuple[int, ...]]:
        if x in memo:
            return memo[x]
        out = {(0, 0): ()}
        for y in cat.maximal_in[x]:
            hit = 1 if (subinv(y) and (count_zero or not cat.subspaces[y].is_zero)) else 0
            for (k, s), tail in pairs(y).items():
                key = (k + 1, s + hit)
                if key not in out:
                    out[key] = (y,) + tail
        memo[x] = out
        return out

    best = None
    for (k, s), tail in sorted(pairs(u).items()):
        v = k - s if s else k
        if best is None or v > best[0]:
            best = (v, s, (u,) + tail)
    v, s, chain = best
    return InvarianceResult(v, [cat.subspaces[i] for i in chain], s)


# ---------------------------------------------------------------------------
# the S* condition
# ---------------------------------------------------------------------------
def _projective_points(F: Field, basis: Sequence[Sequence]) -> Iterator[tuple]:
    """Nonzero vectors of ``span(basis)`` whose first nonzero coefficient is 1."""
    k = len(basis)
    d = len(basis[0]) if basis else 0
    for lead in range(k):
        for rest in itertools.product(range(F.p), repeat=k - lead - 1):
            coeffs = (0,) * lead + (1,) + rest
            v = [0] * d
            for c, b in zip(coeffs, basis):
                if c:
                    for i, x in enumerate(b):
                        v[i] += c * x
            yield tuple(F.reduce(x) for x in v)


def one_generator(A: NLieSuperalgebra, H: GradedSubspace, non_homogeneous: bool = False) -> tuple | None:
    """A homogeneous element generating ``H`` as a subalgebra, if any.

    With ``non_homogeneous`` every element of ``H`` is tried once the
    homogeneous search fails.
    """
    F = A.field
    for par in (0, 1):
        part = [b for b in H.basis if all(A.parities[i] == par for i, x in enumerate(b) if x)]
        for v in _projective_points(F, part):
            if generated_subalgebra(A, A.span([v])) == H:
                return v
    if non_homogeneous and H.dim:
        for v in _projective_points(F, list(H.basis)):
            if len(generated_by_vector(A, v)) == H.dim:
                return v
    return None


@dataclass
class SStarResult:
    s_star: bool
    violating: GradedSubspace | None = None
    reason: str = ""


def is_s_star(A: NLieSuperalgebra, catalog: LatticeCatalog | None = None, budget: int = DEFAULT_BUDGET,
              non_homogeneous: bool = False) -> SStarResult:
    """Every proper non-abelian subalgebra ``H`` has ``dim H/H^2 >= 2`` or is
    nilpotent and generated by one element."""
    cat = _catalog(A, catalog, budget)
    for i in cat.subalgebras:
        if i == cat.top:
            continue
        H = cat.subspaces[i]
        H2 = derived_square(A, H)
        if H2.is_zero:
            continue
        if H.dim - H2.dim >= 2:
            continue
        if not is_nilpotent(A, H):
            return SStarResult(False, H, "not nilpotent and dim H/H^2 < 2")
        if one_generator(A, H, non_homogeneous) is None:
            return SStarResult(False, H, "not generated by one element and dim H/H^2 < 2")
    return SStarResult(True)
