"""n-Lie superalgebras stored by sign-canonical structure constants.

Only non-decreasing index tuples are stored.  Any other ordering of the
arguments is reduced to its canonical tuple by adjacent transpositions,
each contributing ``-(-1)^{p p'}``; super skew-symmetry therefore holds by
construction and :func:`validate_algebra` only has to check the grading and
the Filippov-Jacobi identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ArityMismatch, ParityError
from .linalg import GradedSubspace, LinearOperator, Matrix, Vector, matvec, nullspace, solve_in_span
from .scalars import Field


def canonicalize_tuple(indices: Sequence[int], parities: Sequence[int], char: int = 0) -> tuple[tuple[int, ...], int]:
    """Sort ``indices`` stably and return ``(sorted, sign)``.

    ``parities[i]`` is the parity of basis index ``i``.  The sign is the
    product of ``-(-1)^{p p'}`` over the adjacent swaps performed, or ``0``
    when an even index repeats and the characteristic is not 2.
    """
    seq = list(indices)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            if not (parities[seq[j - 1]] & parities[seq[j]]):
                sign = -sign
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            j -= 1
    if char != 2:
        for a, b in zip(seq, seq[1:]):
            if a == b and parities[a] == 0:
                return tuple(seq), 0
    return tuple(seq), sign


def canonical_tuples(parities: Sequence[int], n: int, char: int = 0) -> list[tuple[int, ...]]:
    """All non-decreasing ``n``-tuples, minus the repeated-even ones outside char 2."""
    d = len(parities)
    out = []
    for t in itertools.combinations_with_replacement(range(d), n):
        if char != 2 and any(a == b and parities[a] == 0 for a, b in zip(t, t[1:])):
            continue
        out.append(t)
    return out


def homogeneity(parities: Sequence[int], v: Sequence) -> str:
    ps = {parities[i] for i, x in enumerate(v) if x != 0}
    if not ps:
        return "zero"
    if len(ps) == 2:
        return "mixed"
    return "even" if 0 in ps else "odd"


def vector_parity(parities: Sequence[int], v: Sequence) -> int:
    """Parity of a homogeneous vector (0 for the zero vector)."""
    h = homogeneity(parities, v)
    if h == "mixed":
        raise ParityError("vector is not homogeneous")
    return 1 if h == "odd" else 0


class NLieSuperalgebra:
    """Finite-dimensional n-Lie superalgebra over an exact field.

    ``table`` maps canonical index tuples to dense coefficient vectors.
    Zero values may be omitted.  Entries on non-canonical keys are kept (so
    a corrupted input can be reported) but never used by the bracket.
    """

    def __init__(
        self,
        field: Field,
        arity: int,
        alpha: int,
        basis: Sequence[tuple[str, int]],
        table: Mapping[tuple[int, ...], Sequence],
    ):
        if arity < 2:
            raise ValueError("arity must be at least 2")
        self.field = field
        self.arity = arity
        self.alpha = alpha % 2
        self.names = tuple(nm for nm, _ in basis)
        self.parities = tuple(int(p) % 2 for _, p in basis)
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be unique")
        d = len(self.names)
        clean = {}
        for key, val in table.items():
            key = tuple(key)
            val = tuple(field.reduce(x) for x in val)
            if len(val) != d:
                raise ValueError(f"value for {key} has length {len(val)}, expected {d}")
            if any(x != 0 for x in val):
                clean[key] = val
        self.table: dict[tuple[int, ...], Vector] = dict(sorted(clean.items()))
        self.validated = False
        self._basis_cache: dict[tuple[int, ...], tuple] = {}

    # -- construction helpers ---------------------------------------------
    @classmethod
    def from_brackets(
        cls,
        field: Field,
        arity: int,
        alpha: int,
        basis: Sequence[tuple[str, int]],
        brackets: Mapping[Sequence[str], Mapping[str, object]],
    ) -> "NLieSuperalgebra":
        """Build from ``{(name, ...): {name: coeff}}`` in any argument order."""
        names = [nm for nm, _ in basis]
        parities = [p % 2 for _, p in basis]
        pos = {nm: i for i, nm in enumerate(names)}
        table: dict[tuple[int, ...], list] = {}
        for args, value in brackets.items():
            if len(args) != arity:
                raise ArityMismatch(f"{args} has {len(args)} arguments, arity is {arity}")
            idx = [pos[a] for a in args]
            key, sign = canonicalize_tuple(idx, parities, field.char)
            vec = [field.zero] * len(names)
            for nm, c in value.items():
                c = field.parse(c) if isinstance(c, str) else field.reduce(c)
                vec[pos[nm]] = field.reduce(vec[pos[nm]] + c)
            if sign == 0:
                if any(x != 0 for x in vec):
                    raise ValueError(f"{args} repeats an even argument and must be zero")
                continue
            if key in table:
                raise ValueError(f"bracket {args} given twice")
            table[key] = [field.reduce(sign * x) for x in vec]
        return cls(field, arity, alpha, basis, table)

    # -- shape ---------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def dims(self) -> tuple[int, int]:
        return self.parities.count(0), self.parities.count(1)

    @property
    def basis(self) -> list[tuple[str, int]]:
        return list(zip(self.names, self.parities))

    def e(self, i: int | str) -> Vector:
        if isinstance(i, str):
            i = self.names.index(i)
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return tuple(v)

    def vec(self, coeffs: Mapping[str, object]) -> Vector:
        v = [self.field.zero] * self.dim
        for nm, c in coeffs.items():
            v[self.names.index(nm)] = self.field.reduce(c)
        return tuple(v)

    def zero_vector(self) -> Vector:
        return (self.field.zero,) * self.dim

    def full_space(self) -> GradedSubspace:
        return GradedSubspace.full(self.field, self.parities)

    def zero_space(self) -> GradedSubspace:
        return GradedSubspace.zero(self.field, self.parities)

    def span(self, vectors: Iterable[Sequence]) -> GradedSubspace:
        return GradedSubspace.span(self.field, self.parities, vectors)

    def span_names(self, *names: str) -> GradedSubspace:
        return self.span(self.e(nm) for nm in names)

    @property
    def char2(self) -> bool:
        return self.field.char == 2

    def same_structure(self, other: "NLieSuperalgebra") -> bool:
        """Equal field, arity, parity, basis parities and table (names ignored)."""
        return (
            self.field == other.field
            and self.arity == other.arity
            and self.alpha == other.alpha
            and self.parities == other.parities
            and self.table == other.table
        )

    def __eq__(self, other):
        if not isinstance(other, NLieSuperalgebra):
            return NotImplemented
        return self.same_structure(other) and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.arity, self.alpha, self.names, tuple(self.table.items())))

    def __repr__(self):
        d0, d1 = self.dims
        return f"<NLieSuperalgebra n={self.arity} alpha={self.alpha} dim=({d0}|{d1}) over {self.field}, {len(self.table)} brackets>"

    # -- bracket -------------------------------------------------------------
    def basis_bracket(self, idx: tuple[int, ...]) -> tuple:
        """Sparse value ``((j, c), ...)`` of the bracket of basis vectors ``idx``."""
        hit = self._basis_cache.get(idx)
        if hit is not None:
            return hit
        key, sign = canonicalize_tuple(idx, self.parities, self.field.char)
        val = self.table.get(key) if sign else None
        if val is None:
            out = ()
        else:
            F = self.field
            out = tuple((j, F.reduce(sign * c)) for j, c in enumerate(val) if c != 0)
        self._basis_cache[idx] = out
        return out

    def bracket(self, *args: Sequence) -> Vector:
        if len(args) != self.arity:
            raise ArityMismatch(f"got {len(args)} arguments, arity is {self.arity}")
        F = self.field
        supports = [[(i, x) for i, x in enumerate(v) if x != 0] for v in args]
        acc = [0] * self.dim
        for combo in itertools.product(*supports):
            val = self.basis_bracket(tuple(i for i, _ in combo))
            if not val:
                continue
            c = 1
            for _, x in combo:
                c *= x
            for j, y in val:
                acc[j] += c * y
        return tuple(F.reduce(x) for x in acc)

    def left_mult_matrix(self, args: Sequence[Sequence]) -> Matrix:
        """Matrix of ``x -> [args..., x]`` for arbitrary (possibly mixed) arguments."""
        cols = [self.bracket(*args, self.e(j)) for j in range(self.dim)]
        return tuple(zip(*cols)) if cols else ()

    def __str__(self):
        F = self.field
        lines = [repr(self)]
        for key, val in self.table.items():
            args = ",".join(self.names[i] for i in key)
            rhs = " + ".join(
                (nm if c == 1 else f"{F.format(c)}*{nm}") for nm, c in zip(self.names, val) if c != 0
            )
            lines.append(f"  [{args}] = {rhs}")
        return "\n".join(lines)


def bracket_eval(A: NLieSuperalgebra, args: Sequence[Sequence]) -> Vector:
    return A.bracket(*args)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------
@dataclass
class ValidationReport:
    grading_ok: bool
    skew_ok: bool
    fj_ok: bool
    witnesses: list = field(default_factory=list)
    char2_caveat: bool = False

    @property
    def ok(self) -> bool:
        return self.grading_ok and self.skew_ok and self.fj_ok

    def to_dict(self) -> dict:
        return {
            "grading_ok": self.grading_ok,
            "skew_ok": self.skew_ok,
            "fj_ok": self.fj_ok,
            "ok": self.ok,
            "char2_caveat": self.char2_caveat,
            "witnesses": self.witnesses,
        }


def _fmt_vec(A: NLieSuperalgebra, v: Sequence) -> dict:
    return {A.names[j]: A.field.format(x) for j, x in enumerate(v) if x != 0}


def check_grading(A: NLieSuperalgebra) -> list[dict]:
    out = []
    for key, val in A.table.items():
        if any(not (0 <= i < A.dim) for i in key):
            continue
        want = (A.alpha + sum(A.parities[i] for i in key)) % 2
        for j, c in enumerate(val):
            if c != 0 and A.parities[j] != want:
                out.append({
                    "kind": "grading",
                    "args": [A.names[i] for i in key],
                    "target": A.names[j],
                    "reason": f"value parity must be {want}",
                })
    return out


def check_skew(A: NLieSuperalgebra) -> list[dict]:
    out = []
    for key in A.table:
        if len(key) != A.arity or any(not (0 <= i < A.dim) for i in key):
            out.append({"kind": "skew", "args": list(key), "reason": "bad index tuple"})
            continue
        args = [A.names[i] for i in key]
        if list(key) != sorted(key):
            out.append({"kind": "skew", "args": args, "reason": "tuple not in canonical order"})
        elif not A.char2 and any(a == b and A.parities[a] == 0 for a, b in zip(key, key[1:])):
            out.append({"kind": "skew", "args": args, "reason": "repeated even argument must give zero"})
    return out


def fj_instance(A: NLieSuperalgebra, Da: Matrix, pa: int, b: Sequence[int]) -> tuple[Vector, Vector]:
    """Both sides of the Filippov-Jacobi identity for ``D(a)`` and basis tuple ``b``."""
    F = A.field
    d = A.dim
    inner = [0] * d
    for j, c in A.basis_bracket(tuple(b)):
        inner[j] = c
    lhs = matvec(F, Da, inner)
    acc = [0] * d
    s_before = 0
    for i, bi in enumerate(b):
        sign = -1 if (pa * s_before) % 2 else 1
        col = [Da[r][bi] for r in range(d)]
        for j, x in enumerate(col):
            if x == 0:
                continue
            t = tuple(b[:i]) + (j,) + tuple(b[i + 1:])
            for k, y in A.basis_bracket(t):
                acc[k] += sign * x * y
        s_before += A.parities[bi]
    if (A.alpha * pa) % 2:
        acc = [-x for x in acc]
    return lhs, tuple(F.reduce(x) for x in acc)


def _all_left_mults(A: NLieSuperalgebra):
    # D(a) for a permuted tuple is +-D(canonical a), and a repeated even
    # argument gives D = 0 outside char 2, so canonical tuples suffice.
    for a in canonical_tuples(A.parities, A.arity - 1, A.field.char):
        cols = []
        for j in range(A.dim):
            col = [A.field.zero] * A.dim
            for k, c in A.basis_bracket(a + (j,)):
                col[k] = c
            cols.append(col)
        yield a, tuple(zip(*cols))


def check_fj(A: NLieSuperalgebra, max_witnesses: int | None = 20, stop_at_first: bool = False) -> list[dict]:
    """Exhaustive Filippov-Jacobi check: canonical ``a`` against every ordered ``b``."""
    out = []
    d, n = A.dim, A.arity
    if d == 0:
        return out
    for a, Da in _all_left_mults(A):
        pa = sum(A.parities[i] for i in a) % 2
        for b in itertools.product(range(d), repeat=n):
            lhs, rhs = fj_instance(A, Da, pa, b)
            if lhs != rhs:
                out.append({
                    "kind": "fj",
                    "a": [A.names[i] for i in a],
                    "b": [A.names[i] for i in b],
                    "lhs": _fmt_vec(A, lhs),
                    "rhs": _fmt_vec(A, rhs),
                })
                if stop_at_first or (max_witnesses is not None and len(out) >= max_witnesses):
                    return out
    return out


def validate_algebra(A: NLieSuperalgebra, max_witnesses: int | None = 20) -> ValidationReport:
    grading = check_grading(A)
    skew = check_skew(A)
    fj = check_fj(A, max_witnesses)
    rep = ValidationReport(
        grading_ok=not grading,
        skew_ok=not skew,
        fj_ok=not fj,
        witnesses=grading + skew + fj,
        char2_caveat=A.char2,
    )
    A.validated = rep.ok
    return rep


def is_valid(A: NLieSuperalgebra) -> bool:
    """Fast yes/no validation that stops at the first failure."""
    ok = not check_grading(A) and not check_skew(A) and not check_fj(A, stop_at_first=True)
    A.validated = ok
    return ok


# ---------------------------------------------------------------------------
# left multiplications and derivations
# ---------------------------------------------------------------------------
def left_mult_operator(A: NLieSuperalgebra, args: Sequence[Sequence]) -> LinearOperator:
    """``D(a_1, ..., a_{n-1})`` as an operator of parity ``alpha + sum p(a_i)``."""
    if len(args) != A.arity - 1:
        raise ArityMismatch(f"D takes {A.arity - 1} arguments")
    parity = A.alpha
    for v in args:
        parity += vector_parity(A.parities, v)
    return LinearOperator(A.field, A.left_mult_matrix(args), A.parities, parity % 2)


def derivation_degree(A: NLieSuperalgebra, f: LinearOperator) -> int:
    """Degree entering the Leibniz signs: operator parity shifted by ``alpha``.

    With this convention ``D(a)`` has degree ``p(a)`` and the super Leibniz
    rule coincides term by term with the Filippov-Jacobi identity.
    """
    return (f.parity + A.alpha) % 2


def leibniz_sides(A: NLieSuperalgebra, m: Matrix, degree: int, x: Sequence[int]) -> tuple[Vector, Vector]:
    F = A.field
    d = A.dim
    inner = [F.zero] * d
    for j, c in A.basis_bracket(tuple(x)):
        inner[j] = c
    lhs = matvec(F, m, inner)
    acc = [0] * d
    s_before = 0
    for i, xi in enumerate(x):
        sign = -1 if (degree * (s_before + A.alpha)) % 2 else 1
        for j in range(d):
            c = m[j][xi]
            if c == 0:
                continue
            t = tuple(x[:i]) + (j,) + tuple(x[i + 1:])
            for k, y in A.basis_bracket(t):
                acc[k] += sign * c * y
        s_before += A.parities[xi]
    return lhs, tuple(F.reduce(v) for v in acc)


def check_derivation(A: NLieSuperalgebra, f: LinearOperator) -> bool:
    if f.parities != A.parities:
        raise ValueError("operator does not act on A")
    deg = derivation_degree(A, f)
    for x in itertools.product(range(A.dim), repeat=A.arity):
        lhs, rhs = leibniz_sides(A, f.matrix, deg, x)
        if lhs != rhs:
            return False
    return True


def derivation_space(A: NLieSuperalgebra, parity: int) -> list[LinearOperator]:
    """Basis of all derivations of the given operator parity (linear solve)."""
    F = A.field
    d = A.dim
    slots = [(r, c) for r in range(d) for c in range(d) if (A.parities[r] - A.parities[c] - parity) % 2 == 0]
    if not slots:
        return []
    deg = (parity + A.alpha) % 2
    rows = []
    for x in itertools.product(range(d), repeat=A.arity):
        # each unknown matrix entry contributes linearly to lhs - rhs
        contrib = {}
        for u, (r, c) in enumerate(slots):
            m = [[F.zero] * d for _ in range(d)]
            m[r][c] = F.one
            lhs, rhs = leibniz_sides(A, tuple(map(tuple, m)), deg, x)
            contrib[u] = [F.reduce(p - q) for p, q in zip(lhs, rhs)]
        for k in range(d):
            row = [contrib[u][k] for u in range(len(slots))]
            if any(row):
                rows.append(row)
    sols = nullspace(F, rows, len(slots))
    out = []
    for s in sols:
        m = [[F.zero] * d for _ in range(d)]
        for u, (r, c) in enumerate(slots):
            m[r][c] = s[u]
        out.append(LinearOperator(F, tuple(map(tuple, m)), A.parities, parity))
    return out


def derivation_power_membership(A: NLieSuperalgebra, f: LinearOperator, k: int, xs: Sequence[Sequence]) -> bool:
    """``f^k [x_1..x_n]`` lies in ``span{[f^{i_1} x_1, ..., f^{i_n} x_n] : sum i = k}``."""
    F = A.field
    n = A.arity
    if len(xs) != n:
        raise ArityMismatch(f"need {n} arguments")
    powers = [[tuple(x)] for x in xs]
    for i in range(n):
        for _ in range(k):
            powers[i].append(matvec(F, f.matrix, powers[i][-1]))
    lhs = A.bracket(*xs)
    for _ in range(k):
        lhs = matvec(F, f.matrix, lhs)
    span = []
    for comp in _compositions(k, n):
        span.append(A.bracket(*(powers[i][c] for i, c in enumerate(comp))))
    return solve_in_span(F, [v for v in span if any(v)], lhs)


def _compositions(k: int, n: int):
    if n == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, n - 1):
            yield (first,) + rest
