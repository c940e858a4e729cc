"""Exact linear algebra over a :class:`~nlsa.scalars.Field`.

Matrices are tuples of row tuples of raw field elements.  Operators act on
column vectors: ``M[i][j]`` is the coefficient of ``e_i`` in ``f(e_j)``.

Graded subspaces keep one reduced row-echelon basis per parity, written in
the local coordinates of that parity, so two subspaces are equal exactly
when their stored forms are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AmbientMismatch, ParityError
from .scalars import Field

Vector = tuple
Matrix = tuple


# ---------------------------------------------------------------------------
# dense helpers
# ---------------------------------------------------------------------------
def zeros(F: Field, rows: int, cols: int) -> Matrix:
    z = F.zero
    return tuple((z,) * cols for _ in range(rows))


def identity(F: Field, d: int) -> Matrix:
    return tuple(tuple(F.one if i == j else F.zero for j in range(d)) for i in range(d))


def is_zero_matrix(m: Matrix) -> bool:
    return all(x == 0 for row in m for x in row)


def matmul(F: Field, a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return ()
    bt = list(zip(*b)) if b else []
    if not bt:
        return tuple(() for _ in a)
    return tuple(
        tuple(F.reduce(sum(x * y for x, y in zip(row, col) if x and y)) for col in bt)
        for row in a
    )


def matvec(F: Field, m: Matrix, v: Sequence) -> Vector:
    return tuple(F.reduce(sum(x * y for x, y in zip(row, v) if x and y)) for row in m)


def matpow(F: Field, m: Matrix, k: int) -> Matrix:
    out = identity(F, len(m))
    for _ in range(k):
        out = matmul(F, out, m)
    return out


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def vec_add(F: Field, u: Sequence, v: Sequence) -> Vector:
    return tuple(F.reduce(x + y) for x, y in zip(u, v))


def vec_scale(F: Field, c, v: Sequence) -> Vector:
    return tuple(F.reduce(c * x) for x in v)


def rref(F: Field, rows: Iterable[Sequence], ncols: int | None = None) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form with zero rows dropped, plus the pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        if inv != 1:
            m[r] = [F.reduce(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [F.reduce(x - f * y) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def echelonize(F: Field, m: Iterable[Sequence]) -> Matrix:
    """Unique reduced row-echelon basis of the row space of ``m``."""
    return rref(F, m)[0]


def rank(F: Field, m: Iterable[Sequence]) -> int:
    return len(rref(F, m)[1])


def nullspace(F: Field, m: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of ``{x : m x = 0}``, returned in reduced echelon form."""
    red, piv = rref(F, m, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [F.zero] * ncols
        x[f] = F.one
        for row, pc in zip(red, piv):
            x[pc] = F.reduce(-row[f])
        basis.append(x)
    return echelonize(F, basis)


def solve_in_span(F: Field, basis: Sequence[Sequence], v: Sequence) -> bool:
    """Whether ``v`` lies in the row span of ``basis``."""
    if all(x == 0 for x in v):
        return True
    return rank(F, list(basis) + [v]) == rank(F, basis)


def reduce_mod_rref(F: Field, red: Sequence[Sequence], pivots: Sequence[int], v: Sequence) -> Vector:
    """Subtract the rref rows so ``v`` vanishes on every pivot column."""
    v = list(v)
    for row, pc in zip(red, pivots):
        c = v[pc]
        if c != 0:
            v = [F.reduce(x - c * y) for x, y in zip(v, row)]
    return tuple(v)


def determinant(F: Field, m: Matrix):
    a = [list(r) for r in m]
    n = len(a)
    det = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return F.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = F.reduce(-det)
        det = F.reduce(det * a[c][c])
        inv = F.inv(a[c][c])
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = F.reduce(a[i][c] * inv)
                a[i] = [F.reduce(x - f * y) for x, y in zip(a[i], a[c])]
    return det


# ---------------------------------------------------------------------------
# graded subspaces
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class GradedSubspace:
    """``U = U_0 (+) U_1`` inside a graded space with the given basis parities.

    ``even`` and ``odd`` are reduced echelon bases in the local coordinates
    of the even and odd basis vectors respectively.
    """

    field: Field
    parities: tuple[int, ...]
    even: Matrix = ()
    odd: Matrix = ()

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, field: Field, parities: Sequence[int]) -> "GradedSubspace":
        return cls(field, tuple(parities))

    @classmethod
    def full(cls, field: Field, parities: Sequence[int]) -> "GradedSubspace":
        parities = tuple(parities)
        d0 = parities.count(0)
        return cls(field, parities, identity(field, d0), identity(field, len(parities) - d0))

    @classmethod
    def span(cls, field: Field, parities: Sequence[int], vectors: Iterable[Sequence]) -> "GradedSubspace":
        """Smallest graded subspace containing ``vectors``.

        Each vector is split into its homogeneous components, so for a
        subspace that is already graded this is just its span.
        """
        parities = tuple(parities)
        ev = [i for i, p in enumerate(parities) if p == 0]
        od = [i for i, p in enumerate(parities) if p == 1]
        e_rows, o_rows = [], []
        for v in vectors:
            e = tuple(v[i] for i in ev)
            o = tuple(v[i] for i in od)
            if any(e):
                e_rows.append(e)
            if any(o):
                o_rows.append(o)
        return cls(field, parities, echelonize(field, e_rows), echelonize(field, o_rows))

    @classmethod
    def from_parts(cls, field: Field, parities: Sequence[int], even_rows, odd_rows) -> "GradedSubspace":
        return cls(field, tuple(parities), echelonize(field, even_rows), echelonize(field, odd_rows))

    # -- shape ---------------------------------------------------------------
    @cached_property
    def even_index(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parities) if p == 0)

    @cached_property
    def odd_index(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parities) if p == 1)

    @property
    def ambient(self) -> tuple[int, int]:
        return len(self.even_index), len(self.odd_index)

    @property
    def dims(self) -> tuple[int, int]:
        return len(self.even), len(self.odd)

    @property
    def dim(self) -> int:
        return len(self.even) + len(self.odd)

    @property
    def is_zero(self) -> bool:
        return not self.even and not self.odd

    def _lift(self, local, index) -> Vector:
        v = [self.field.zero] * len(self.parities)
        for x, i in zip(local, index):
            v[i] = x
        return tuple(v)

    @cached_property
    def basis(self) -> tuple[Vector, ...]:
        """Full-length homogeneous basis vectors, ordered by global pivot position."""
        vecs = [(self.even_index[_lead(r)], self._lift(r, self.even_index)) for r in self.even]
        vecs += [(self.odd_index[_lead(r)], self._lift(r, self.odd_index)) for r in self.odd]
        vecs.sort(key=lambda t: t[0])
        return tuple(v for _, v in vecs)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        """Global coordinate of each basis vector's pivot, aligned with :attr:`basis`."""
        piv = [self.even_index[_lead(r)] for r in self.even]
        piv += [self.odd_index[_lead(r)] for r in self.odd]
        return tuple(sorted(piv))

    def basis_parities(self) -> tuple[int, ...]:
        return tuple(self.parities[p] for p in self.pivots)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` (assumed to lie in the subspace) in :attr:`basis`."""
        return tuple(v[p] for p in self.pivots)

    # -- predicates and lattice operations ----------------------------------
    def _compatible(self, other: "GradedSubspace"):
        if self.field != other.field or self.parities != other.parities:
            raise AmbientMismatch(f"{self.field}{self.ambient} vs {other.field}{other.ambient}")

    def contains_vector(self, v: Sequence) -> bool:
        e = [v[i] for i in self.even_index]
        o = [v[i] for i in self.odd_index]
        return solve_in_span(self.field, self.even, e) and solve_in_span(self.field, self.odd, o)

    def __add__(self, other: "GradedSubspace") -> "GradedSubspace":
        self._compatible(other)
        return GradedSubspace(
            self.field,
            self.parities,
            echelonize(self.field, self.even + other.even),
            echelonize(self.field, self.odd + other.odd),
        )

    def __and__(self, other: "GradedSubspace") -> "GradedSubspace":
        self._compatible(other)
        F = self.field
        return GradedSubspace(
            F,
            self.parities,
            _intersect(F, self.even, other.even, len(self.even_index)),
            _intersect(F, self.odd, other.odd, len(self.odd_index)),
        )

    def __le__(self, other: "GradedSubspace") -> bool:
        self._compatible(other)
        return (
            rank(self.field, other.even + self.even) == len(other.even)
            and rank(self.field, other.odd + self.odd) == len(other.odd)
        )

    def __lt__(self, other: "GradedSubspace") -> bool:
        return self <= other and self.dim < other.dim

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def sort_key(self):
        return (self.dim, self.even, self.odd)

    def describe(self, names: Sequence[str] | None = None) -> str:
        if self.is_zero:
            return "0"
        F = self.field
        names = names or [f"e{i}" for i in range(len(self.parities))]
        parts = []
        for v in self.basis:
            terms = []
            for x, nm in zip(v, names):
                if x == 0:
                    continue
                terms.append(nm if x == 1 else f"{F.format(x)}*{nm}")
            parts.append("+".join(terms))
        return "span{" + ", ".join(parts) + "}"

    def to_dict(self) -> dict:
        F = self.field
        return {
            "even": [[F.format(x) for x in r] for r in self.even],
            "odd": [[F.format(x) for x in r] for r in self.odd],
        }


def _lead(row) -> int:
    return next(i for i, x in enumerate(row) if x != 0)


def _intersect(F: Field, u: Matrix, w: Matrix, d: int) -> Matrix:
    if not u or not w:
        return ()
    # left kernel of [u; w]: x.u = -y.w
    stacked = list(u) + list(w)
    combos = nullspace(F, transpose(stacked), len(stacked))
    vecs = []
    for c in combos:
        x = c[: len(u)]
        vecs.append(tuple(F.reduce(sum(a * row[j] for a, row in zip(x, u))) for j in range(d)))
    return echelonize(F, vecs)


def subspace_algebra(mode: str, U: GradedSubspace, W: GradedSubspace):
    """``sum`` / ``intersect`` return a subspace, ``contains`` / ``equals`` a bool."""
    U._compatible(W)
    if mode == "sum":
        return U + W
    if mode == "intersect":
        return U & W
    if mode == "contains":
        return W <= U
    if mode == "equals":
        return U == W
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class LinearOperator:
    field: Field
    matrix: Matrix
    parities: tuple[int, ...]
    parity: int

    def __post_init__(self):
        d = len(self.parities)
        if len(self.matrix) != d or any(len(r) != d for r in self.matrix):
            raise AmbientMismatch("operator matrix does not match the graded space")
        for i in range(d):
            for j in range(d):
                if self.matrix[i][j] != 0 and (self.parities[i] - self.parities[j] - self.parity) % 2:
                    raise ParityError(
                        f"entry ({i},{j}) violates declared parity {self.parity}"
                    )

    @property
    def dim(self) -> int:
        return len(self.parities)

    def __call__(self, v: Sequence) -> Vector:
        return matvec(self.field, self.matrix, v)

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        if other.parities != self.parities:
            raise AmbientMismatch("operators act on different spaces")
        return LinearOperator(
            self.field,
            matmul(self.field, self.matrix, other.matrix),
            self.parities,
            (self.parity + other.parity) % 2,
        )

    def power(self, k: int) -> "LinearOperator":
        return LinearOperator(
            self.field, matpow(self.field, self.matrix, k), self.parities, (k * self.parity) % 2
        )

    @property
    def is_zero(self) -> bool:
        return is_zero_matrix(self.matrix)

    def image(self) -> GradedSubspace:
        return GradedSubspace.span(self.field, self.parities, transpose(self.matrix))

    def kernel(self) -> GradedSubspace:
        # homogeneous operators have graded kernels
        return GradedSubspace.span(
            self.field, self.parities, nullspace(self.field, self.matrix, self.dim)
        )


def nilpotency_index(F: Field, m: Matrix) -> int | None:
    """Least ``k`` with ``m^k = 0``, or ``None`` if ``m`` is not nilpotent."""
    d = len(m)
    if d == 0 or is_zero_matrix(m):
        return 0 if d == 0 else 1
    p = m
    for k in range(2, d + 1):
        p = matmul(F, p, m)
        if is_zero_matrix(p):
            return k
    return None


def operator_nilpotency(f: LinearOperator | Matrix, field: Field | None = None) -> int | None:
    """Nilpotency index of ``f`` (``None`` when ``f^d != 0``)."""
    if isinstance(f, LinearOperator):
        return nilpotency_index(f.field, f.matrix)
    return nilpotency_index(field, f)


def fitting_decomposition(f: LinearOperator, allow_odd: bool = False) -> tuple[GradedSubspace, GradedSubspace]:
    """``(V0, V1)`` with ``f`` nilpotent on ``V0 = ker f^d`` and invertible on ``V1 = im f^d``.

    Odd operators are refused unless ``allow_odd`` is set; their powers are
    still homogeneous so the components returned are graded all the same.
    """
    if f.parity and not allow_odd:
        raise ParityError("Fitting components of an odd operator need allow_odd=True")
    g = f.power(f.dim)
    return g.kernel(), g.image()


def restrict(F: Field, m: Matrix, U: GradedSubspace) -> Matrix:
    """Matrix of ``m`` restricted to an invariant subspace, in ``U.basis``."""
    cols = [U.coordinates(matvec(F, m, b)) for b in U.basis]
    return transpose(cols) if cols else ()


def envelope_nilpotency(ops: Sequence[LinearOperator | Matrix], field: Field | None = None) -> int | None:
    """Nilpotency index of the associative algebra generated by ``ops``.

    ``W_1 = span(ops)`` and ``W_{k+1} = W_1 W_k``; the result is the least
    ``k`` with ``W_k = 0``.  A nilpotent subalgebra of ``End(V)`` has index
    at most ``dim V``, so ``None`` is returned once ``W_{d+1} != 0``.
    """
    mats = []
    d = None
    for op in ops:
        if isinstance(op, LinearOperator):
            field = op.field
            m = op.matrix
        else:
            m = op
        if d is None:
            d = len(m)
        elif len(m) != d:
            raise AmbientMismatch("operators act on spaces of different dimension")
        mats.append(m)
    if not mats or d == 0:
        return 1
    F = field

    def flat(m):
        return tuple(x for row in m for x in row)

    def unflat(v):
        return tuple(tuple(v[i * d:(i + 1) * d]) for i in range(d))

    w1 = [unflat(r) for r in echelonize(F, [flat(m) for m in mats])]
    if not w1:
        return 1
    wk = w1
    for k in range(2, d + 2):
        prods = [flat(matmul(F, a, b)) for a in w1 for b in wk]
        wk = [unflat(r) for r in echelonize(F, prods)]
        if not wk:
            return k
    return None
