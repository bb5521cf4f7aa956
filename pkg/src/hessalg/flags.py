"""Exact enumeration of GL_n(F_p)/B via canonical Bruhat-cell representatives.

Each coset gB has a unique representative whose column k has its lowest
nonzero entry (the pivot, value 1) in row w(k), with zeros to the right of
every pivot in its row. The free entries of a cell are the positions
(i, k) with i < w(k) and i not a pivot row of an earlier column; there are
l(w) of them, so the total flag count is the q-factorial [n]_p!.

Enumeration order: permutations in lexicographic order on the image
tuple, then lexicographic on the free-parameter vector (first free
position most significant). This order is the index space of FlagSet
bitmaps and is stable across runs and worker counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .field import (Matrix, Subspace, canonicalize_span, conjugate, inv_mod,
                    span_of, zero_subspace)
from .shapes import HessShape

GUARD_MAX_N = 6
GUARD_PRIMES = (2, 3, 5, 7)


def check_guards(n: int, p: int, override: bool = False) -> None:
    if override:
        return
    if n > GUARD_MAX_N or p not in GUARD_PRIMES:
        raise ValueError(
            "size guard: need n <= %d and p in %r (got n=%d, p=%d); "
            "pass override to force" % (GUARD_MAX_N, GUARD_PRIMES, n, p))


def q_factorial(n: int, q: int) -> int:
    total = 1
    for k in range(1, n + 1):
        total *= sum(q ** i for i in range(k))
    return total


def inversions(w) -> int:
    return sum(1 for a, b in itertools.combinations(w, 2) if a > b)


def free_positions(w):
    """Free entry positions (row, col), 1-based, in scan order: columns left
    to right, rows top to bottom."""
    seen = set()
    out = []
    for k, wk in enumerate(w, start=1):
        for i in range(1, wk):
            if i not in seen:
                out.append((i, k))
        seen.add(wk)
    return out


@dataclass(frozen=True)
class Flag:
    n: int
    p: int
    rep: Matrix
    cell: tuple  # pivot permutation w, 1-based images
    index: int   # position in the global enumeration order


@dataclass(frozen=True)
class FlagSet:
    n: int
    p: int
    size: int  # total number of flags = [n]_p!
    bits: int  # membership bitmap over the enumeration order

    @property
    def count(self) -> int:
        return self.bits.bit_count()

    def contains(self, index: int) -> bool:
        return bool(self.bits >> index & 1)

    def indices(self):
        return [i for i in range(self.size) if self.bits >> i & 1]

    @staticmethod
    def from_indices(indices, n: int, p: int) -> "FlagSet":
        size = q_factorial(n, p)
        bits = 0
        for i in indices:
            bits |= 1 << i
        return FlagSet(n, p, size, bits)


@lru_cache(maxsize=None)
def _cell_offsets(n: int, p: int):
    """Start index of each Bruhat cell in the enumeration order."""
    offsets = {}
    pos = 0
    for w in itertools.permutations(range(1, n + 1)):
        offsets[w] = pos
        pos += p ** inversions(w)
    return offsets


def _build_rep(w, values, p: int) -> Matrix:
    n = len(w)
    rows = [[0] * n for _ in range(n)]
    for k, wk in enumerate(w, start=1):
        rows[wk - 1][k - 1] = 1
    for (i, k), v in zip(free_positions(w), values):
        rows[i - 1][k - 1] = v
    return Matrix.from_rows(rows, p)


def iter_flags(n: int, p: int, override: bool = False):
    """Yield all flags in enumeration order without storing them."""
    check_guards(n, p, override)
    idx = 0
    for w in itertools.permutations(range(1, n + 1)):
        fp = free_positions(w)
        for values in itertools.product(range(p), repeat=len(fp)):
            yield Flag(n, p, _build_rep(w, values, p), w, idx)
            idx += 1


def enumerate_flags(n: int, p: int, override: bool = False):
    return list(iter_flags(n, p, override))


def canonical_form(g: Matrix) -> Flag:
    """Unique canonical representative of the coset gB; preserves every
    prefix column span."""
    if g.nrows != g.ncols:
        raise ValueError("not square")
    n = g.nrows
    p = g.p
    cols = [list(c) for c in g.columns()]
    pivots = []  # (0-based pivot row, column index)
    values = []
    w = [0] * n
    for k in range(n):
        v = cols[k]
        for r, m in pivots:
            c = v[r]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, cols[m])]
        piv = max((i for i, x in enumerate(v) if x), default=None)
        if piv is None:
            raise ValueError("matrix is singular")
        inv = inv_mod(v[piv], p)
        v = [x * inv % p for x in v]
        cols[k] = v
        pivots.append((piv, k))
        w[k] = piv + 1
    w = tuple(w)
    for (i, k) in free_positions(w):
        values.append(cols[k - 1][i - 1])
    rep = _build_rep(w, values, p)
    return Flag(n, p, rep, w, _flag_index(w, values, n, p))


def _flag_index(w, values, n: int, p: int) -> int:
    rank = 0
    for v in values:
        rank = rank * p + v
    return _cell_offsets(n, p)[tuple(w)] + rank


def permutation_flag(w, p: int) -> Flag:
    return canonical_form(Matrix.permutation(w, p))


def identity_flag(n: int, p: int) -> Flag:
    return canonical_form(Matrix.identity(n, p))


def chain(f: Flag, k: int) -> Subspace:
    """The subspace F_k spanned by the first k columns (F_0 = 0)."""
    if not 0 <= k <= f.n:
        raise ValueError("k out of range")
    if k == 0:
        return zero_subspace(f.n, f.p)
    return span_of([f.rep.column(j) for j in range(1, k + 1)], f.n, f.p)


def member(x: Matrix, s: HessShape, f: Flag) -> bool:
    """Flag-chain membership test: X F_j contained in F_{t_j} for all j."""
    from .field import image_subspace, subspace_le
    if x.p != f.p or x.nrows != f.n:
        raise ValueError("size or modulus mismatch")
    for j in range(1, f.n + 1):
        img = image_subspace(x, chain(f, j))
        if not subspace_le(img, chain(f, s.t[j - 1])):
            return False
    return True


def member_adjoint(x: Matrix, s: HessShape, f: Flag) -> bool:
    """Adjoint membership test: g^{-1} X g vanishes at every forbidden mask
    entry. Equivalent to member()."""
    if x.p != f.p or x.nrows != f.n:
        raise ValueError("size or modulus mismatch")
    y = conjugate(x, f.rep)
    return all(y.entry(i, j) == 0
               for j in range(1, f.n + 1)
               for i in range(s.t[j - 1] + 1, f.n + 1))


def flag_text(f: Flag) -> str:
    """Column list like '[e4,e2,e5]' plus nonzero free-parameter
    assignments, e.g. '[e2,e1] {r1c1=1}'."""
    base = "[" + ",".join("e%d" % wk for wk in f.cell) + "]"
    parts = []
    for (i, k) in free_positions(f.cell):
        v = f.rep.entry(i, k)
        if v:
            parts.append("r%dc%d=%d" % (i, k, v))
    if parts:
        return base + " {" + ",".join(parts) + "}"
    return base
