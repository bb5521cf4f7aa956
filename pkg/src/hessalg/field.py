"""Exact linear algebra over prime fields.

Scalars are plain Python ints in ``range(p)``; the modulus travels with
every Matrix and Subspace value. Matrices are immutable (tuples of row
tuples) and all operations return new values, so everything here is safe
to share between workers.

Public matrix indices are 1-based (``entry(i, j)`` with i the row),
matching the usual matrix-display convention. Internal storage is
0-based.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def inv_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a nonzero residue mod p."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod %d" % p)
    return pow(a, -1, p)


@dataclass(frozen=True)
class Matrix:
    p: int
    rows: tuple

    @staticmethod
    def from_rows(rows, p: int) -> "Matrix":
        if not is_prime(p):
            raise ValueError("modulus %r is not prime" % (p,))
        data = tuple(tuple(int(x) % p for x in row) for row in rows)
        if not data:
            raise ValueError("matrix needs at least one row")
        widths = {len(row) for row in data}
        if len(widths) != 1 or 0 in widths:
            raise ValueError("ragged or empty rows")
        return Matrix(p, data)

    @staticmethod
    def from_columns(cols, p: int) -> "Matrix":
        cols = [tuple(c) for c in cols]
        return Matrix.from_rows(list(zip(*cols)), p)

    @staticmethod
    def identity(n: int, p: int) -> "Matrix":
        return Matrix.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], p)

    @staticmethod
    def zero(nrows: int, ncols: int, p: int) -> "Matrix":
        return Matrix.from_rows([[0] * ncols for _ in range(nrows)], p)

    @staticmethod
    def diagonal(values, p: int) -> "Matrix":
        values = list(values)
        n = len(values)
        return Matrix.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)], p)

    @staticmethod
    def permutation(w, p: int) -> "Matrix":
        """Permutation matrix sending e_k to e_{w(k)}; w is 1-based images."""
        w = tuple(w)
        n = len(w)
        if sorted(w) != list(range(1, n + 1)):
            raise ValueError("not a permutation of [n]: %r" % (w,))
        rows = [[0] * n for _ in range(n)]
        for k in range(n):
            rows[w[k] - 1][k] = 1
        return Matrix.from_rows(rows, p)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def entry(self, i: int, j: int) -> int:
        """1-based access, i = row, j = column."""
        return self.rows[i - 1][j - 1]

    def column(self, j: int) -> tuple:
        """1-based column as a vector."""
        return tuple(row[j - 1] for row in self.rows)

    def columns(self):
        return [self.column(j) for j in range(1, self.ncols + 1)]

    def apply(self, vec) -> tuple:
        """Matrix times column vector."""
        vec = tuple(vec)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        p = self.p
        return tuple(sum(r[k] * vec[k] for k in range(len(vec))) % p
                     for r in self.rows)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.p != other.p:
            raise ValueError("modulus mismatch")
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        p = self.p
        cols = list(zip(*other.rows))
        rows = tuple(
            tuple(sum(a * b for a, b in zip(r, c)) % p for c in cols)
            for r in self.rows)
        return Matrix(p, rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.p != other.p or self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape or modulus mismatch")
        p = self.p
        return Matrix(p, tuple(tuple((a + b) % p for a, b in zip(r, s))
                               for r, s in zip(self.rows, other.rows)))

    def scale(self, c: int) -> "Matrix":
        p = self.p
        c %= p
        return Matrix(p, tuple(tuple(a * c % p for a in r) for r in self.rows))

    def transpose(self) -> "Matrix":
        return Matrix(self.p, tuple(zip(*self.rows)))

    def is_invertible(self) -> bool:
        try:
            self.inverse()
            return True
        except ValueError:
            return False

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("not square")
        n = self.nrows
        p = self.p
        aug = [list(r) + [1 if i == j else 0 for j in range(n)]
               for i, r in enumerate(self.rows)]
        row = 0
        for col in range(n):
            piv = next((i for i in range(row, n) if aug[i][col]), None)
            if piv is None:
                raise ValueError("matrix is singular")
            aug[row], aug[piv] = aug[piv], aug[row]
            inv = inv_mod(aug[row][col], p)
            aug[row] = [x * inv % p for x in aug[row]]
            for i in range(n):
                if i != row and aug[i][col]:
                    c = aug[i][col]
                    aug[i] = [(x - c * y) % p for x, y in zip(aug[i], aug[row])]
            row += 1
        return Matrix(p, tuple(tuple(r[n:]) for r in aug))


def antitranspose(m: Matrix) -> Matrix:
    """Flip a square matrix across its antidiagonal (equals w0 * M^T * w0)."""
    if m.nrows != m.ncols:
        raise ValueError("not square")
    n = m.nrows
    return Matrix(m.p, tuple(
        tuple(m.rows[n - 1 - j][n - 1 - i] for j in range(n))
        for i in range(n)))


def w0_matrix(n: int, p: int) -> Matrix:
    """The antidiagonal permutation matrix (longest Weyl element)."""
    return Matrix.permutation(tuple(range(n, 0, -1)), p)


# ---------------------------------------------------------------------------
# Subspaces in canonical reduced column-echelon form.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Canonical basis: pivot rows strictly increasing, pivots 1, pivot rows
    otherwise zero. Two subspaces are equal as sets iff they compare equal."""

    p: int
    ambient: int
    basis: tuple  # tuple of column vectors, each of length `ambient`

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivot_rows(self) -> tuple:
        """0-based row index of the leading 1 in each basis column."""
        return tuple(next(i for i, x in enumerate(col) if x) for col in self.basis)

    def reduce(self, vec) -> tuple:
        """Residual of vec after reduction against the basis."""
        v = [int(x) % self.p for x in vec]
        if len(v) != self.ambient:
            raise ValueError("ambient mismatch")
        p = self.p
        for col, r in zip(self.basis, self.pivot_rows()):
            c = v[r]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, col)]
        return tuple(v)

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))


def span_of(vectors, ambient: int, p: int) -> Subspace:
    """Canonical subspace spanned by the given vectors (possibly none)."""
    if not is_prime(p):
        raise ValueError("modulus %r is not prime" % (p,))
    rows = [[int(x) % p for x in v] for v in vectors]
    for v in rows:
        if len(v) != ambient:
            raise ValueError("vector length != ambient dimension")
    # Reduced row echelon on the spanning vectors, then read rows as columns.
    pivots = []
    row = 0
    for col in range(ambient):
        piv = next((i for i in range(row, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        inv = inv_mod(rows[row][col], p)
        rows[row] = [x * inv % p for x in rows[row]]
        for i in range(len(rows)):
            if i != row and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[row])]
        pivots.append(col)
        row += 1
    return Subspace(p, ambient, tuple(tuple(r) for r in rows[:row]))


def canonicalize_span(cols: Matrix) -> Subspace:
    """Canonical basis of the column span of a matrix."""
    return span_of(cols.columns(), cols.nrows, cols.p)


def zero_subspace(ambient: int, p: int) -> Subspace:
    return span_of([], ambient, p)


def full_subspace(ambient: int, p: int) -> Subspace:
    return canonicalize_span(Matrix.identity(ambient, p))


def subspace_le(a: Subspace, b: Subspace) -> bool:
    """True iff a is contained in b."""
    if a.p != b.p or a.ambient != b.ambient:
        raise ValueError("ambient or modulus mismatch")
    return all(b.contains(col) for col in a.basis)


def image_subspace(x: Matrix, v: Subspace) -> Subspace:
    """The canonical subspace X*V."""
    if x.p != v.p or x.ncols != v.ambient:
        raise ValueError("dimension mismatch")
    return span_of([x.apply(col) for col in v.basis], x.nrows, x.p)


def conjugate(x: Matrix, g: Matrix) -> Matrix:
    """g^{-1} X g."""
    return g.inverse() * x * g


# ---------------------------------------------------------------------------
# Jordan data.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JordanSpec:
    """Jordan block data (eigenvalue residue, block size), canonically
    ordered by descending eigenvalue then descending block size so equal
    specs compare equal."""

    p: int
    blocks: tuple  # tuple of (eigenvalue, size)

    @property
    def n(self) -> int:
        return sum(size for _, size in self.blocks)

    def is_scalar(self) -> bool:
        return (all(size == 1 for _, size in self.blocks)
                and len({ev for ev, _ in self.blocks}) == 1)


def jordan_spec(blocks, p: int) -> JordanSpec:
    if not is_prime(p):
        raise ValueError("modulus %r is not prime" % (p,))
    blocks = [(int(ev), int(size)) for ev, size in blocks]
    if not blocks:
        raise ValueError("need at least one block")
    for ev, size in blocks:
        if not 0 <= ev < p:
            raise ValueError("eigenvalue %d not in F_%d" % (ev, p))
        if size < 1:
            raise ValueError("block size must be positive")
    blocks.sort(key=lambda b: (-b[0], -b[1]))
    return JordanSpec(p, tuple(blocks))


def jordan_matrix(spec: JordanSpec) -> Matrix:
    """Block-diagonal Jordan matrix in the spec's canonical block order."""
    n = spec.n
    rows = [[0] * n for _ in range(n)]
    pos = 0
    for ev, size in spec.blocks:
        for k in range(size):
            rows[pos + k][pos + k] = ev
            if k + 1 < size:
                rows[pos + k][pos + k + 1] = 1
        pos += size
    return Matrix.from_rows(rows, spec.p)


def regular_nilpotent(n: int, p: int) -> Matrix:
    """The one-block nilpotent (ones on the superdiagonal)."""
    return jordan_matrix(jordan_spec([(0, n)], p))


# ---------------------------------------------------------------------------
# Similarity over F_p.
#
# Two square matrices over a field are similar iff xI - A and xI - B have
# the same Smith invariant factors (the rational-canonical-form data). The
# explicit transform is then found inside the solution space of PA = BP,
# which always contains an invertible element when the matrices are
# similar.
# ---------------------------------------------------------------------------

def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _padd(a, b, p):
    m = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                   for i in range(m)])


def _psub(a, b, p):
    m = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                   for i in range(m)])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = inv_mod(b[-1], p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = (a[d + i] - c * y) % p
        a = _ptrim(a)
    return _ptrim(q), a


def _pmonic(a, p):
    if not a:
        return a
    inv = inv_mod(a[-1], p)
    return [x * inv % p for x in a]


def invariant_factors(a: Matrix) -> tuple:
    """Nonconstant Smith invariant factors of xI - A over F_p[x], as monic
    coefficient tuples (ascending), in divisibility order."""
    if a.nrows != a.ncols:
        raise ValueError("not square")
    n = a.nrows
    p = a.p
    m = [[_ptrim([(-a.rows[i][j]) % p] + ([1] if i == j else []))
          for j in range(n)] for i in range(n)]
    t = 0
    diag = []
    while t < n:
        # Smallest-degree nonzero entry in the trailing submatrix.
        best = None
        for i in range(t, n):
            for j in range(t, n):
                if m[i][j] and (best is None or len(m[i][j]) < best[0]):
                    best = (len(m[i][j]), i, j)
        if best is None:
            break
        _, bi, bj = best
        m[t], m[bi] = m[bi], m[t]
        for row in m:
            row[t], row[bj] = row[bj], row[t]
        dirty = False
        for i in range(t + 1, n):
            if m[i][t]:
                q, _ = _pdivmod(m[i][t], m[t][t], p)
                for j in range(t, n):
                    m[i][j] = _psub(m[i][j], _pmul(q, m[t][j], p), p)
                if m[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if m[t][j]:
                q, _ = _pdivmod(m[t][j], m[t][t], p)
                for i in range(t, n):
                    m[i][j] = _psub(m[i][j], _pmul(q, m[i][t], p), p)
                if m[t][j]:
                    dirty = True
        if dirty:
            continue
        # Pivot must divide every remaining entry.
        fix = None
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                if m[i][j]:
                    _, r = _pdivmod(m[i][j], m[t][t], p)
                    if r:
                        fix = i
                        break
            if fix is not None:
                break
        if fix is not None:
            for j in range(t, n):
                m[t][j] = _padd(m[t][j], m[fix][j], p)
            continue
        diag.append(tuple(_pmonic(m[t][t], p)))
        t += 1
    return tuple(f for f in diag if len(f) > 1)


def _intertwiner_basis(a: Matrix, b: Matrix):
    """Basis of {P : P A = B P} as matrices."""
    n = a.nrows
    p = a.p
    size = n * n
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * size
            for k in range(n):
                row[i * n + k] = (row[i * n + k] + a.rows[k][j]) % p
                row[k * n + j] = (row[k * n + j] - b.rows[i][k]) % p
            rows.append(row)
    # Nullspace by Gauss-Jordan.
    pivots = []
    r = 0
    for c in range(size):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = inv_mod(rows[r][c], p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(size) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * size
        vec[fc] = 1
        for ri, pc in enumerate(pivots):
            vec[pc] = (-rows[ri][fc]) % p
        basis.append(Matrix.from_rows(
            [vec[i * n:(i + 1) * n] for i in range(n)], p))
    return basis


def similarity_transform(a: Matrix, b: Matrix):
    """An invertible P with P A P^{-1} = B, or None if A and B are not
    similar over F_p."""
    if a.p != b.p:
        raise ValueError("modulus mismatch")
    if a.nrows != a.ncols or a.nrows != b.nrows or b.nrows != b.ncols:
        raise ValueError("need square matrices of equal size")
    if invariant_factors(a) != invariant_factors(b):
        return None
    basis = _intertwiner_basis(a, b)
    for cand in basis:
        if cand.is_invertible():
            return cand
    rng = random.Random(0x5E55)
    p = a.p
    n = a.nrows
    for _ in range(20000):
        cand = Matrix.zero(n, n, p)
        for mat in basis:
            cand = cand + mat.scale(rng.randrange(p))
        if cand.is_invertible():
            return cand
    raise RuntimeError("similar matrices but no invertible intertwiner found")
