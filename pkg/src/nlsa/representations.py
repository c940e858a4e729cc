"""Representations on graded modules and the semidirect sum ``V (+) A``.

A representation assigns to each ``(n-1)``-tuple of basis vectors of ``A``
a matrix on the module ``V``.  As for brackets only non-decreasing tuples
are stored; other orderings are recovered with Koszul signs.

Sign conventions (checked against the regular representation):

* the commutator relation uses ``rho(b) rho(a) = (-1)^{p(b)(p(a)+alpha)}
  rho(a) rho(b) + sum_i (-1)^{p(b)(p(a_1)+...+p(a_{i-1})+alpha)}
  rho(a_1, ..., D(b) a_i, ..., a_{n-1})``;
* ``rho(a)`` shifts module parity by ``p(a) + alpha``, matching the parity
  of the left multiplications and of the semidirect sum bracket.

Both can be switched to the alternative reading with ``literal=True``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import NLieSuperalgebra, canonicalize_tuple, canonical_tuples, vector_parity
from .errors import BadDecomposition, InvalidRepresentation, NotHMC
from .linalg import (
    GradedSubspace,
    Matrix,
    envelope_nilpotency,
    is_zero_matrix,
    matmul,
    nilpotency_index,
    nullspace,
    zeros,
)
from .series import induced_algebra, is_abelian_ideal, is_ideal, is_nilpotent, is_subalgebra


@dataclass
class Representation:
    algebra: NLieSuperalgebra
    module_basis: list[tuple[str, int]]
    table: dict[tuple[int, ...], Matrix] = field(default_factory=dict)

    def __post_init__(self):
        F = self.algebra.field
        m = len(self.module_basis)
        clean = {}
        for key, mat in self.table.items():
            mat = tuple(tuple(F.reduce(x) for x in row) for row in mat)
            if len(mat) != m or any(len(r) != m for r in mat):
                raise InvalidRepresentation(f"operator for {key} is not {m}x{m}")
            if not is_zero_matrix(mat):
                clean[tuple(key)] = mat
        self.table = dict(sorted(clean.items()))

    @property
    def field(self):
        return self.algebra.field

    @property
    def module_dim(self) -> int:
        return len(self.module_basis)

    @property
    def module_parities(self) -> tuple[int, ...]:
        return tuple(p for _, p in self.module_basis)

    @property
    def module_names(self) -> tuple[str, ...]:
        return tuple(nm for nm, _ in self.module_basis)

    @property
    def module_dims(self) -> tuple[int, int]:
        ps = self.module_parities
        return ps.count(0), ps.count(1)

    def zero_operator(self) -> Matrix:
        return zeros(self.field, self.module_dim, self.module_dim)

    def basis_operator(self, idx: Sequence[int]) -> Matrix:
        """``rho(e_{i_1}, ..., e_{i_{n-1}})`` from the canonical entry and its sign."""
        A = self.algebra
        key, sign = canonicalize_tuple(idx, A.parities, A.field.char)
        if sign == 0:
            return self.zero_operator()
        mat = self.table.get(key)
        if mat is None:
            return self.zero_operator()
        if sign == 1:
            return mat
        F = self.field
        return tuple(tuple(F.reduce(-x) for x in row) for row in mat)

    def operator(self, args: Sequence[Sequence]) -> Matrix:
        """``rho(a_1, ..., a_{n-1})`` for arbitrary vectors, by multilinearity."""
        F = self.field
        m = self.module_dim
        acc = [[0] * m for _ in range(m)]
        supports = [[(i, c) for i, c in enumerate(a) if c != 0] for a in args]
        for combo in itertools.product(*supports):
            coef = 1
            for _, c in combo:
                coef *= c
            mat = self.basis_operator(tuple(i for i, _ in combo))
            for r in range(m):
                for s in range(m):
                    if mat[r][s]:
                        acc[r][s] += coef * mat[r][s]
        return tuple(tuple(F.reduce(x) for x in row) for row in acc)

    def canonical_operators(self) -> list[tuple[tuple[int, ...], Matrix]]:
        A = self.algebra
        out = []
        for key in canonical_tuples(A.parities, A.arity - 1, A.field.char):
            out.append((key, self.basis_operator(key)))
        return out


def _add(F, a: Matrix, b: Matrix, c=1) -> Matrix:
    return tuple(tuple(F.reduce(x + c * y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _scale(F, c, a: Matrix) -> Matrix:
    return tuple(tuple(F.reduce(c * x) for x in r) for r in a)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------
def regular_representation(A: NLieSuperalgebra) -> Representation:
    """``a -> D(a)`` on ``A`` itself."""
    table = {}
    for key in canonical_tuples(A.parities, A.arity - 1, A.field.char):
        table[key] = A.left_mult_matrix([A.e(i) for i in key])
    return Representation(A, list(A.basis), table)


def zero_representation(A: NLieSuperalgebra, module_basis: Sequence[tuple[str, int]]) -> Representation:
    return Representation(A, list(module_basis), {})


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------
@dataclass
class RepresentationReport:
    relation_1: list[dict] = field(default_factory=list)
    relation_2: list[dict] = field(default_factory=list)
    relation_3: list[dict] = field(default_factory=list)
    relation_4: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.relation_1 or self.relation_2 or self.relation_3 or self.relation_4)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "relation_1": self.relation_1,
            "relation_2": self.relation_2,
            "relation_3": self.relation_3,
            "relation_4": self.relation_4,
        }


def _fmt(F, m: Matrix):
    return [[F.format(x) for x in r] for r in m]


def validate_representation(rho: Representation, max_witnesses: int | None = 20,
                            literal: bool = False) -> RepresentationReport:
    """Check the four defining relations on all basis tuples."""
    A = rho.algebra
    F = A.field
    n = A.arity
    d = A.dim
    par = A.parities
    alpha = A.alpha
    rep = RepresentationReport()

    def full(lst):
        return max_witnesses is not None and len(lst) >= max_witnesses

    # (1) stored entries must be canonical (other orderings are derived)
    for key, mat in rho.table.items():
        canon, sign = canonicalize_tuple(key, par, F.char)
        if canon != key or sign == 0:
            rep.relation_1.append({"tuple": [A.names[i] for i in key], "reason": "non-canonical stored entry"})

    # (4) parity shift
    mpar = rho.module_parities
    for key, mat in rho.table.items():
        beta = (sum(par[i] for i in key) + (0 if literal else alpha)) % 2
        for r in range(rho.module_dim):
            for c in range(rho.module_dim):
                if mat[r][c] and (mpar[r] - mpar[c] - beta) % 2:
                    if not full(rep.relation_4):
                        rep.relation_4.append({"tuple": [A.names[i] for i in key], "row": rho.module_names[r],
                                               "col": rho.module_names[c]})

    tuples = canonical_tuples(par, n - 1, F.char)
    ops = {t: rho.basis_operator(t) for t in tuples}

    # (2) commutator relation
    for b in tuples:
        pb = sum(par[i] for i in b)
        Db = A.left_mult_matrix([A.e(i) for i in b])
        for a in tuples:
            pa = sum(par[i] for i in a)
            lhs = matmul(F, ops[b], ops[a])
            e = pa * (pb + alpha) if literal else pb * (pa + alpha)
            rhs = _scale(F, -1 if e % 2 else 1, matmul(F, ops[a], ops[b]))
            before = 0
            for i, ai in enumerate(a):
                s = -1 if (pb * (before + alpha)) % 2 else 1
                col = tuple(Db[r][ai] for r in range(d))
                if any(col):
                    args = [A.e(j) for j in a]
                    args[i] = col
                    rhs = _add(F, rhs, rho.operator(args), s)
                before += par[ai]
            if lhs != rhs:
                if not full(rep.relation_2):
                    rep.relation_2.append({"a": [A.names[i] for i in a], "b": [A.names[i] for i in b],
                                           "lhs": _fmt(F, lhs), "rhs": _fmt(F, rhs)})

    # (3) the lambda_i relation, transcribed as stated
    for a in itertools.product(range(d), repeat=n - 2):
        pa = sum(par[i] for i in a)
        for b in itertools.product(range(d), repeat=n):
            inner = A.bracket(*(A.e(i) for i in b))
            lhs = rho.operator([A.e(i) for i in a] + [inner]) if any(inner) else rho.zero_operator()
            rhs = rho.zero_operator()
            pbs = [par[i] for i in b]
            for i in range(n):
                others = sum(pbs) - pbs[i]
                after = sum(pbs[i + 1:])
                e = (n - 1 - i) + pa * others + (pbs[i] + alpha) * after + alpha * pa
                rest = b[:i] + b[i + 1:]
                term = matmul(F, rho.basis_operator(rest), rho.basis_operator(a + (b[i],)))
                rhs = _add(F, rhs, term, -1 if e % 2 else 1)
            if lhs != rhs:
                if not full(rep.relation_3):
                    rep.relation_3.append({"a": [A.names[i] for i in a], "b": [A.names[i] for i in b],
                                           "lhs": _fmt(F, lhs), "rhs": _fmt(F, rhs)})
    return rep


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------
def semidirect_sum(rho: Representation, check: bool = True) -> NLieSuperalgebra:
    """``V (+) A`` with ``[x_1..x_{n-1}, v] = rho(x)(v)`` and ``[.., v, w] = 0``.

    The basis lists ``V`` first, then ``A``.
    """
    if check:
        rep = validate_representation(rho)
        if not rep.ok:
            raise InvalidRepresentation(f"representation fails validation: {rep.to_dict()}")
    A = rho.algebra
    F = A.field
    m = rho.module_dim
    names_a = list(A.names)
    names_v = [nm if nm not in names_a else f"{nm}'" for nm in rho.module_names]
    basis = list(zip(names_v, rho.module_parities)) + list(A.basis)
    parities = tuple(p for _, p in basis)
    z = F.zero
    table = {}
    for key, val in A.table.items():
        table[tuple(i + m for i in key)] = (z,) * m + tuple(val)
    for key, mat in rho.table.items():
        shifted = tuple(i + m for i in key)
        for v in range(m):
            col = tuple(mat[r][v] for r in range(m))
            if not any(col):
                continue
            canon, sign = canonicalize_tuple(shifted + (v,), parities, F.char)
            if sign == 0:
                continue
            table[canon] = tuple(F.reduce(sign * x) for x in col) + (z,) * A.dim
    return NLieSuperalgebra(F, A.arity, A.alpha, basis, table)


def representation_from_module(B: NLieSuperalgebra, A_sub: GradedSubspace, V: GradedSubspace) -> Representation:
    """``rho(a)(v) = [a, v]`` for ``B = A_sub (+) V`` with ``V`` an abelian ideal."""
    if not is_subalgebra(B, A_sub):
        raise BadDecomposition("the acting part is not a subalgebra")
    if not is_abelian_ideal(B, V):
        raise BadDecomposition("the module part is not an abelian ideal")
    if not (A_sub & V).is_zero or A_sub.dim + V.dim != B.dim:
        raise BadDecomposition("B is not the direct sum of the two parts")
    A = induced_algebra(B, A_sub)
    F = B.field
    vb = V.basis
    module_basis = [(B.names[p], B.parities[p]) for p in V.pivots]
    table = {}
    for key in canonical_tuples(A.parities, A.arity - 1, F.char):
        args = [A_sub.basis[i] for i in key]
        cols = [V.coordinates(B.bracket(*args, v)) for v in vb]
        mat = tuple(tuple(cols[c][r] for c in range(len(vb))) for r in range(len(vb)))
        table[key] = mat
    return Representation(A, module_basis, table)


def kernel_and_faithful(rho: Representation) -> tuple[GradedSubspace, bool]:
    """``ker rho = {x : rho(A, ..., A, x) = 0}``, solved on each parity."""
    A = rho.algebra
    F = A.field
    m = rho.module_dim
    vecs = []
    for par in (0, 1):
        idx = [i for i, p in enumerate(A.parities) if p == par]
        if not idx:
            continue
        rows = []
        for t in itertools.product(range(A.dim), repeat=A.arity - 2):
            mats = [rho.basis_operator(t + (k,)) for k in idx]
            for r in range(m):
                for c in range(m):
                    row = [M[r][c] for M in mats]
                    if any(row):
                        rows.append(row)
        for s in nullspace(F, rows, len(idx)):
            v = [F.zero] * A.dim
            for x, j in zip(s, idx):
                v[j] = x
            vecs.append(tuple(v))
    ker = A.span(vecs)
    return ker, ker.is_zero


# ---------------------------------------------------------------------------
# nilpotent operator sets
# ---------------------------------------------------------------------------
def _homogeneous_lines(A: NLieSuperalgebra, S: GradedSubspace) -> list[tuple]:
    from .lattice import _projective_points

    out = []
    for par in (0, 1):
        part = [b for b in S.basis if vector_parity(A.parities, b) == par]
        if part:
            out.extend(_projective_points(A.field, part))
    return out


@dataclass
class EnvelopeReport:
    generators_nilpotent: bool
    envelope_index: int | None
    tuples_checked: int
    faithful: bool
    subalgebra_nilpotent: bool | None = None
    exhaustive: bool = True
    witness: tuple | None = None

    @property
    def hypothesis(self) -> bool:
        return self.generators_nilpotent

    @property
    def holds(self) -> bool:
        """Conclusion wherever the hypothesis is met."""
        if not self.generators_nilpotent:
            return True
        if self.envelope_index is None:
            return False
        return self.subalgebra_nilpotent is not False

    def to_dict(self) -> dict:
        return {
            "generators_nilpotent": self.generators_nilpotent,
            "envelope_index": self.envelope_index,
            "tuples_checked": self.tuples_checked,
            "faithful": self.faithful,
            "subalgebra_nilpotent": self.subalgebra_nilpotent,
            "exhaustive": self.exhaustive,
            "holds": self.holds,
        }


def s_star_rho_check(rho: Representation, S: GradedSubspace) -> EnvelopeReport:
    """Nilpotency of the associative algebra generated by ``rho(S, ..., S)``.

    ``S`` must be closed under the bracket.  Over a finite field every tuple
    of homogeneous elements of ``S`` is tested for nilpotency (up to
    scaling); over the rationals only basis tuples are.
    """
    A = rho.algebra
    F = A.field
    if not is_subalgebra(A, S):
        raise NotHMC("S is not closed under the bracket")
    gens = [rho.operator(t) for t in itertools.product(S.basis, repeat=A.arity - 1)]
    exhaustive = F.is_finite
    pool = _homogeneous_lines(A, S) if exhaustive else list(S.basis)
    count = 0
    nil = True
    witness = None
    for t in itertools.product(pool, repeat=A.arity - 1):
        count += 1
        if nilpotency_index(F, rho.operator(t)) is None:
            nil, witness = False, t
            break
    _, faithful = kernel_and_faithful(rho)
    index = envelope_nilpotency(gens, F) if gens else 1
    sub_nil = None
    if nil and faithful:
        sub_nil = is_nilpotent(A, S)
    return EnvelopeReport(nil, index, count, faithful, sub_nil, exhaustive, witness)
