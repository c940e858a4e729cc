"""Independent oracles and the shared algebra corpus for the test suites.

The oracles here deliberately avoid the package's own sign, bracket and
validation code: they recompute everything from the definitions on dense
tensors so the tests compare two independent implementations.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from nlsa import GF, abelian, act3, brute_force_enumerate, direct_sum, enumerate_graded_subspaces, paper_bc, vector_product


# ---------------------------------------------------------------------------
# sign and bracket oracles
# ---------------------------------------------------------------------------
def oracle_sign(indices, parities, char: int) -> int:
    """Koszul sign of sorting ``indices``, by counting inversions.

    Every inverted pair is crossed exactly once by any sorting network, and
    each crossing contributes ``-(-1)^{p p'}``.
    """
    if char != 2:
        seen = set()
        for i in indices:
            if parities[i] == 0 and i in seen:
                return 0
            seen.add(i)
    sign = 1
    for a, b in itertools.combinations(range(len(indices)), 2):
        i, j = indices[a], indices[b]
        if i > j:
            sign *= -1 if (parities[i] * parities[j]) % 2 == 0 else 1
    return sign


class DenseOracle:
    """Bracket of a raw table rebuilt from canonical entries only."""

    def __init__(self, F, n, alpha, parities, table):
        self.F, self.n, self.alpha = F, n, alpha
        self.parities = tuple(parities)
        self.d = len(parities)
        self.table = {tuple(k): tuple(v) for k, v in table.items()}
        # dense tensor over every ordered basis tuple
        self.tensor = {}
        for idx in itertools.product(range(self.d), repeat=n):
            s = oracle_sign(idx, self.parities, F.char)
            val = self.table.get(tuple(sorted(idx))) if s else None
            if val is not None and any(val):
                self.tensor[idx] = tuple(s * x for x in val)

    def basis_bracket(self, idx):
        return tuple(self.F.reduce(x) for x in self.tensor.get(tuple(idx), (0,) * self.d))

    def bracket(self, *vecs):
        out = [0] * self.d
        for idx in itertools.product(*[[i for i, x in enumerate(v) if x] for v in vecs]):
            val = self.tensor.get(idx)
            if val is None:
                continue
            c = 1
            for v, i in zip(vecs, idx):
                c *= v[i]
            for j, y in enumerate(val):
                if y:
                    out[j] += c * y
        return tuple(self.F.reduce(x) for x in out)

    def unit(self, i):
        return tuple(1 if k == i else 0 for k in range(self.d))

    def fj_sides(self, a, b):
        """Both sides of the Filippov-Jacobi identity, read off the definition."""
        p, d, T = self.parities, self.d, self.tensor
        a, b = tuple(a), tuple(b)
        pa = sum(p[i] for i in a)
        zero = (0,) * d
        lhs = [0] * d
        for j, x in enumerate(T.get(b, zero)):
            if x:
                for k, y in enumerate(T.get(a + (j,), zero)):
                    lhs[k] += x * y
        acc = [0] * d
        for i in range(self.n):
            s = (-1) ** ((sum(p[k] for k in b[:i]) * pa) % 2)
            for j, x in enumerate(T.get(a + (b[i],), zero)):
                if x:
                    for k, y in enumerate(T.get(b[:i] + (j,) + b[i + 1:], zero)):
                        acc[k] += s * x * y
        g = (-1) ** ((self.alpha * pa) % 2)
        return (tuple(self.F.reduce(x) for x in lhs),
                tuple(self.F.reduce(g * x) for x in acc))


def oracle_problems(F, n, alpha, parities, table) -> list[str]:
    """Every way a raw table fails to define an n-Lie superalgebra."""
    probs = []
    d = len(parities)
    for key, val in table.items():
        if not any(F.reduce(x) != 0 for x in val):
            continue
        if list(key) != sorted(key):
            probs.append(f"unsorted {key}")
        elif F.char != 2 and any(a == b and parities[a] == 0 for a, b in zip(key, key[1:])):
            probs.append(f"repeated even {key}")
        want = (alpha + sum(parities[i] for i in key)) % 2
        for j, x in enumerate(val):
            if F.reduce(x) != 0 and parities[j] != want:
                probs.append(f"grading {key}->{j}")
    O = DenseOracle(F, n, alpha, parities, {k: v for k, v in table.items() if list(k) == sorted(k)})
    for a in itertools.product(range(d), repeat=n - 1):
        for b in itertools.product(range(d), repeat=n):
            lhs, rhs = O.fj_sides(a, b)
            if lhs != rhs:
                probs.append(f"fj {a} {b}")
                return probs
    return probs


def oracle_from_algebra(A) -> DenseOracle:
    return DenseOracle(A.field, A.arity, A.alpha, A.parities, A.table)


# ---------------------------------------------------------------------------
# associative envelope oracle
# ---------------------------------------------------------------------------
def _mul(F, a, b):
    n = len(a)
    return tuple(tuple(F.reduce(sum(a[i][k] * b[k][j] for k in range(n))) for j in range(n)) for i in range(n))


def word_envelope_index(F, mats, d: int):
    """Least ``k`` with every length-``k`` word in ``mats`` equal to zero.

    Brute force over words; ``None`` when words of length ``d + 1`` survive.
    """
    gens = sorted({m for m in mats if any(any(r) for r in m)})
    if not gens or d == 0:
        return 1
    words = set(gens)
    for k in range(2, d + 2):
        words = {_mul(F, g, w) for g in gens for w in words}
        words = {w for w in words if any(any(r) for r in w)}
        if not words:
            return k
    return None


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------
def catalog_algebras(fields=(2, 3)):
    out = []
    for p in fields:
        F = GF(p)
        out += [
            (f"paper_bc(4)/F{p}", paper_bc(4, F)),
            (f"abelian(1|1,n=3)/F{p}", abelian(1, 1, 3, 0, F)),
            (f"act3/F{p}", act3(F)),
            (f"vector_product(3)/F{p}", vector_product(3, F)),
            (f"paper_bc(4)+abelian(1|0)/F{p}", direct_sum(paper_bc(4, F), abelian(1, 0, 4, 0, F))),
        ]
    return out


def brute_corpus():
    out = []
    for shape in ((1, 1, 4, 2, 0), (1, 1, 3, 3, 0), (1, 1, 3, 3, 1)):
        d0, d1, n, p, alpha = shape
        for idx, A in brute_force_enumerate(d0, d1, n, p, alpha, indexed=True):
            out.append((f"brute{shape}#{idx}", A))
    return out


@lru_cache(maxsize=None)
def corpus():
    """``(label, algebra)`` pairs used by the lattice-level criteria."""
    return tuple(brute_corpus() + catalog_algebras())


@lru_cache(maxsize=None)
def lattice_of(label: str):
    A = dict(corpus())[label]
    return enumerate_graded_subspaces(A)
