"""Left multiplications: Engel scans, Fitting-0 components, conditions * and **."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .algebra import NLieSuperalgebra, left_mult_operator
from .lattice import (
    DEFAULT_BUDGET,
    LatticeCatalog,
    _catalog,
    _projective_points,
    normal_closure,
)
from .linalg import GradedSubspace, matpow, matvec, nilpotency_index
from .series import derived_square, is_nilpotent

DEFAULT_TUPLE_BUDGET = 10**6
DEFAULT_SAMPLES = 10**4


def _as_vector(A: NLieSuperalgebra, a) -> tuple:
    if isinstance(a, str):
        return A.e(a)
    return tuple(a)


def element_points(A: NLieSuperalgebra) -> list[tuple]:
    """One representative of every line of ``A``, in enumeration order.

    Each line is represented by its vector with leading coordinate 1.  Lines
    are ordered by support size, then by the position of the leading
    coordinate, then lexicographically, so basis vectors come first.
    """
    pts = _projective_points(A.field, A.full_space().basis)
    return sorted(pts, key=_line_key)


def _line_key(v: Sequence) -> tuple:
    nz = [i for i, x in enumerate(v) if x != 0]
    return (len(nz), nz[0], tuple(v))


def tuple_count(A: NLieSuperalgebra) -> int | None:
    if not A.field.is_finite:
        return None
    p = A.field.p
    lines = (p**A.dim - 1) // (p - 1)
    return lines ** (A.arity - 1)


def iter_tuples(A: NLieSuperalgebra) -> Iterator[tuple[tuple, ...]]:
    """All ``(n-1)``-tuples of lines.  Tuples with a zero slot are omitted:
    their left multiplication vanishes."""
    pts = element_points(A)
    return itertools.product(pts, repeat=A.arity - 1)


def _sample_tuples(A: NLieSuperalgebra, samples: int, seed: int) -> Iterator[tuple[tuple, ...]]:
    """Every basis tuple, then ``samples`` random tuples drawn from a seeded generator."""
    F = A.field
    basis = A.full_space().basis
    yield from itertools.product(basis, repeat=A.arity - 1)
    rng = random.Random(seed)
    for _ in range(samples):
        if F.is_finite:
            yield tuple(tuple(rng.randrange(F.p) for _ in range(A.dim)) for _ in range(A.arity - 1))
        else:
            yield tuple(tuple(F.reduce(rng.randint(-3, 3)) for _ in range(A.dim)) for _ in range(A.arity - 1))


@dataclass
class EngelReport:
    strategy: str  # "exhaustive" | "sampled"
    all_nilpotent: bool
    tuple_count: int
    witness: tuple | None = None
    operator: tuple | None = None

    @property
    def inconclusive(self) -> bool:
        """A sampled scan that found no witness proves nothing."""
        return self.strategy == "sampled" and self.all_nilpotent

    @property
    def verdict(self) -> str:
        return "all_nilpotent" if self.all_nilpotent else "witness"

    def to_dict(self, A: NLieSuperalgebra | None = None) -> dict:
        F = A.field if A is not None else None
        fmt = (lambda x: F.format(x)) if F else str
        out = {
            "strategy": self.strategy,
            "verdict": self.verdict,
            "tuple_count": self.tuple_count,
            "inconclusive": self.inconclusive,
        }
        if self.witness is not None:
            out["witness"] = [vec_str(A, v) if A else [fmt(x) for x in v] for v in self.witness]
            out["operator"] = [[fmt(x) for x in row] for row in self.operator]
        return out


def vec_str(A: NLieSuperalgebra, v: Sequence) -> str:
    F = A.field
    terms = []
    for x, nm in zip(v, A.names):
        if x == 0:
            continue
        terms.append(nm if x == 1 else f"{F.format(x)}*{nm}")
    return "+".join(terms) or "0"


def engel_scan(
    A: NLieSuperalgebra,
    budget: int = DEFAULT_TUPLE_BUDGET,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> EngelReport:
    """Is every left multiplication ``D(a_1, ..., a_{n-1})`` nilpotent?

    Over a finite field within budget every tuple of lines is tested and the
    witness is the first failure in enumeration order.  Otherwise basis
    tuples plus seeded random tuples are tested.
    """
    F = A.field
    total = tuple_count(A)
    if total is not None and total <= budget:
        strategy, tuples = "exhaustive", iter_tuples(A)
    else:
        strategy, tuples = "sampled", _sample_tuples(A, samples, seed)
    count = 0
    for tup in tuples:
        count += 1
        m = A.left_mult_matrix(tup)
        if nilpotency_index(F, m) is None:
            return EngelReport(strategy, False, count, tup, m)
    return EngelReport(strategy, True, count)


def fitting_zero_component(A: NLieSuperalgebra, args: Sequence) -> GradedSubspace:
    """``A_0(D(a))``: vectors killed by some power of ``D(a)`` (homogeneous ``a``)."""
    D = left_mult_operator(A, [_as_vector(A, a) for a in args])
    return D.power(max(A.dim, 1)).kernel()


# ---------------------------------------------------------------------------
# conditions
# ---------------------------------------------------------------------------
@dataclass
class ConditionResult:
    status: str  # "holds" | "fails" | "unknown"
    witness: object = None
    checked: int = 0
    note: str = ""

    @property
    def holds(self) -> bool | None:
        return {"holds": True, "fails": False}.get(self.status)


def condition_star(A: NLieSuperalgebra, catalog: LatticeCatalog | None = None,
                   budget: int = DEFAULT_BUDGET) -> ConditionResult:
    """The only subalgebra ``K`` with ``K + A^2 = A`` is ``A`` itself."""
    if not A.field.is_finite:
        return ConditionResult("unknown", note="subalgebra lattice over the rationals is infinite")
    cat = _catalog(A, catalog, budget)
    A2 = derived_square(A)
    full = A.full_space()
    for i in cat.subalgebras:
        if i == cat.top:
            continue
        K = cat.subspaces[i]
        if K + A2 == full:
            return ConditionResult("fails", K, len(cat.subalgebras))
    return ConditionResult("holds", checked=len(cat.subalgebras))


def condition_star_star(
    A: NLieSuperalgebra,
    budget: int = DEFAULT_TUPLE_BUDGET,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> ConditionResult:
    """For every tuple ``a``, some ``a_i`` lies in the Fitting-0 part of ``D(a)``.

    Slots may be scaled freely, and a zero slot satisfies the condition
    trivially, so enumerating tuples of lines is exhaustive.
    """
    F = A.field
    total = tuple_count(A)
    exhaustive = total is not None and total <= budget
    tuples = iter_tuples(A) if exhaustive else _sample_tuples(A, samples, seed)
    d = max(A.dim, 1)
    count = 0
    for tup in tuples:
        count += 1
        P = matpow(F, A.left_mult_matrix(tup), d)
        if not any(not any(matvec(F, P, a)) for a in tup):
            return ConditionResult("fails", tup, count)
    if exhaustive:
        return ConditionResult("holds", checked=count)
    return ConditionResult("unknown", checked=count, note="sampled scan found no failure")


def full_closure_nilpotent_subalgebra(A: NLieSuperalgebra, catalog: LatticeCatalog | None = None,
                                      budget: int = DEFAULT_BUDGET, find_all: bool = False):
    """Nonzero nilpotent subalgebras ``N`` whose normal closure is ``A``.

    Returns the first one in ascending catalog order (or ``None``), or the
    full list when ``find_all`` is set.
    """
    cat = _catalog(A, catalog, budget)
    full = A.full_space()
    found = []
    for i in cat.subalgebras:
        N = cat.subspaces[i]
        if N.is_zero or not is_nilpotent(A, N):
            continue
        if normal_closure(A, N) == full:
            if not find_all:
                return N
            found.append(N)
    return found if find_all else None
