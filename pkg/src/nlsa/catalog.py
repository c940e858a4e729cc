"""Known algebra families and a brute-force generator of small algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .algebra import NLieSuperalgebra, canonical_tuples, is_valid, validate_algebra
from .errors import BudgetExceeded, IncompatibleAlgebras, NLSAError, ParityObstruction
from .scalars import Field, GF


def paper_bc(n: int = 4, F: Field = GF(3)) -> NLieSuperalgebra:
    """``c`` even, ``b`` odd, ``alpha = 0``, ``[b,...,b] = c`` and nothing else.

    ``[b^n]`` has parity ``n``, which must equal ``p(c) = 0``, so ``n`` is even.
    """
    if n % 2:
        raise ParityObstruction(f"[b,...,b] with n={n} odd arguments cannot equal the even c")
    return NLieSuperalgebra.from_brackets(
        F, n, 0, [("c", 0), ("b", 1)], {("b",) * n: {"c": 1}}
    )


def abelian(d0: int, d1: int, n: int = 3, alpha: int = 0, F: Field = GF(3)) -> NLieSuperalgebra:
    basis = [(f"x{i + 1}", 0) for i in range(d0)] + [(f"y{i + 1}", 1) for i in range(d1)]
    return NLieSuperalgebra(F, n, alpha, basis, {})


def act3(F: Field = GF(3)) -> NLieSuperalgebra:
    """3-ary, dims (2|1): ``[x1, x2, y] = y``; ``D(x1, x2)`` is the projection onto ``y``."""
    return NLieSuperalgebra.from_brackets(
        F, 3, 0, [("x1", 0), ("x2", 0), ("y", 1)], {("x1", "x2", "y"): {"y": 1}}
    )


def vector_product(n: int = 3, F: Field = GF(3)) -> NLieSuperalgebra:
    """The simple (n+1)-dimensional n-Lie algebra, all basis vectors even."""
    names = [f"e{i}" for i in range(1, n + 2)]
    brackets = {}
    for i in range(1, n + 2):
        args = tuple(nm for k, nm in enumerate(names, start=1) if k != i)
        brackets[args] = {names[i - 1]: (-1) ** i}
    return NLieSuperalgebra.from_brackets(F, n, 0, [(nm, 0) for nm in names], brackets)


def direct_sum(A: NLieSuperalgebra, B: NLieSuperalgebra) -> NLieSuperalgebra:
    """Brackets vanish across summands; B's basis follows A's."""
    if A.field != B.field or A.arity != B.arity or A.alpha != B.alpha:
        raise IncompatibleAlgebras("direct sum needs the same field, arity and alpha")
    names_a = list(A.names)
    names_b = [nm if nm not in names_a else f"{nm}'" for nm in B.names]
    basis = list(zip(names_a, A.parities)) + list(zip(names_b, B.parities))
    da, db = A.dim, B.dim
    z = A.field.zero
    table = {}
    for key, val in A.table.items():
        table[key] = tuple(val) + (z,) * db
    for key, val in B.table.items():
        table[tuple(i + da for i in key)] = (z,) * da + tuple(val)
    return NLieSuperalgebra(A.field, A.arity, A.alpha, basis, table)


# ---------------------------------------------------------------------------
# catalog registry
# ---------------------------------------------------------------------------
@dataclass
class CatalogEntry:
    name: str
    params: dict
    algebra: NLieSuperalgebra
    expected: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)


def _entry_expectations(name: str, params: dict) -> tuple[dict, dict]:
    if name == "paper_bc":
        return (
            {"nilpotency_class": 2, "dim_quotient_A2": 1},
            {"nilpotency_class": "derived", "dim_quotient_A2": "source"},
        )
    if name == "abelian":
        nonzero = params.get("d0", 0) + params.get("d1", 0) > 0
        return ({"nilpotency_class": 1 if nonzero else 0}, {"nilpotency_class": "trivial"})
    if name == "act3":
        return ({"nilpotency_class": None, "dim_A2": 1}, {"nilpotency_class": "derived", "dim_A2": "derived"})
    if name == "vector_product":
        n = params.get("n", 3)
        return ({"nilpotency_class": None, "dim_A2": n + 1}, {"nilpotency_class": "derived", "dim_A2": "derived"})
    return {}, {}


def build_catalog(name: str, F: Field = GF(3), check: bool = True, **params) -> NLieSuperalgebra:
    """Build a named family member; ``check`` validates it and its recorded invariants."""
    if name == "paper_bc":
        A = paper_bc(params.get("n", 4), F)
    elif name == "abelian":
        A = abelian(params.get("d0", 1), params.get("d1", 1), params.get("n", 3), params.get("alpha", 0), F)
    elif name == "act3":
        A = act3(F)
    elif name == "vector_product":
        A = vector_product(params.get("n", 3), F)
    else:
        raise KeyError(f"unknown catalog entry {name!r}")
    if check:
        rep = validate_algebra(A)
        if not rep.ok:
            raise NLSAError(f"catalog entry {name} failed validation: {rep.witnesses[:3]}")
        expected, _ = _entry_expectations(name, params)
        if expected:
            from .series import nilpotency_class, product_space

            got = {}
            if "nilpotency_class" in expected:
                got["nilpotency_class"] = nilpotency_class(A)
            A2 = product_space(A, [A.full_space()] * A.arity)
            if "dim_A2" in expected:
                got["dim_A2"] = A2.dim
            if "dim_quotient_A2" in expected:
                got["dim_quotient_A2"] = A.dim - A2.dim
            for k, v in expected.items():
                if got[k] != v:
                    raise NLSAError(f"catalog entry {name}: {k} = {got[k]}, recorded {v}")
    return A


def catalog_entry(name: str, F: Field = GF(3), **params) -> CatalogEntry:
    expected, provenance = _entry_expectations(name, params)
    return CatalogEntry(name, dict(params, field=str(F)), build_catalog(name, F, **params), expected, provenance)


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------
def free_slots(parities, n: int, alpha: int, char: int) -> list[tuple[tuple[int, ...], int]]:
    """Parity-admissible ``(canonical tuple, target index)`` pairs."""
    out = []
    for t in canonical_tuples(parities, n, char):
        want = (alpha + sum(parities[i] for i in t)) % 2
        out.extend((t, j) for j, p in enumerate(parities) if p == want)
    return out


def brute_force_enumerate(
    d0: int, d1: int, n: int, p: int, alpha: int = 0, budget: int = 10**7, indexed: bool = False
) -> Iterator[NLieSuperalgebra]:
    """Every valid algebra with the given shape over F_p, in lexicographic assignment order.

    No isomorphism reduction is performed.  With ``indexed`` the stream holds
    ``(assignment index, algebra)`` pairs.
    """
    F = GF(p)
    parities = (0,) * d0 + (1,) * d1
    basis = [(f"e{i}", 0) for i in range(d0)] + [(f"o{i}", 1) for i in range(d1)]
    slots = free_slots(parities, n, alpha, F.char)
    total = p ** len(slots)
    if total > budget:
        raise BudgetExceeded(f"{total} assignments exceed the budget {budget}")
    d = d0 + d1
    for index, values in enumerate(itertools.product(range(p), repeat=len(slots))):
        table: dict[tuple[int, ...], list] = {}
        for (t, j), v in zip(slots, values):
            if v:
                table.setdefault(t, [0] * d)[j] = v
        A = NLieSuperalgebra(F, n, alpha, basis, table)
        if is_valid(A):
            yield (index, A) if indexed else A
