"""Constructive certificates: witness flags separating strict shapes, the
antidiagonal involution, and the regular-nilpotent product decomposition.

The witness construction builds, for a non-scalar Jordan operator and a
pair i < j, an explicit flag that lies in Hess(X, H) exactly when the
shape allows entry (i, j) below the diagonal (t_i >= j). The three
defining conditions are re-verified at runtime on every construction, so
a returned witness is always a checked certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .field import (JordanSpec, Matrix, antitranspose, image_subspace,
                    jordan_matrix, regular_nilpotent, similarity_transform,
                    subspace_le, span_of, w0_matrix)
from .flags import (Flag, FlagSet, canonical_form, chain, iter_flags, member,
                    q_factorial)
from .shapes import (HessShape, enumerate_shapes, full_shape, is_strict,
                     peterson_shape, shape_le, shape_text, split_points,
                     split_shape, transpose_shape)
from .varieties import OperatorSpec, variety_bitmaps


@lru_cache(maxsize=8)
def _flags(n: int, p: int):
    return tuple(iter_flags(n, p))


# ---------------------------------------------------------------------------
# Witness flags (separating strict Hessenberg varieties).
# ---------------------------------------------------------------------------

def check_lemma(x: Matrix, flag, i: int, j: int):
    """Evaluate the three witness conditions for (X, i, j):
    (1) X F_k inside F_k for k < i and k > j;
    (2) X F_i inside F_j;
    (3) X F_i not inside F_{j-1}.
    Returns ((c1, c2, c3), verdict)."""
    f = flag if isinstance(flag, Flag) else canonical_form(flag)
    n = f.n
    if not 1 <= i < j <= n:
        raise ValueError("need 1 <= i < j <= n")
    spans = [chain(f, k) for k in range(n + 1)]
    c1 = all(subspace_le(image_subspace(x, spans[k]), spans[k])
             for k in list(range(1, i)) + list(range(j + 1, n + 1)))
    img_i = image_subspace(x, spans[i])
    c2 = subspace_le(img_i, spans[j])
    c3 = not subspace_le(img_i, spans[j - 1])
    return (c1, c2, c3), (c1 and c2 and c3)


def _construction_order(spec: JordanSpec):
    """Block-instance order used by the witness construction: sizes
    descending, and in the all-singleton case the first two blocks carry
    different eigenvalues."""
    blocks = list(spec.blocks)
    order = sorted(range(len(blocks)), key=lambda b: (-blocks[b][1], b))
    if blocks[order[0]][1] == 1:
        first_ev = blocks[order[0]][0]
        other = next((k for k in range(1, len(order))
                      if blocks[order[k]][0] != first_ev), None)
        if other is None:
            raise ValueError("witness construction needs a non-scalar operator")
        order.insert(1, order.pop(other))
    return order


def witness_flag(spec: JordanSpec, i: int, j: int) -> Matrix:
    """Invertible flag matrix satisfying check_lemma for (X, i, j), where
    X = jordan_matrix(spec). Entries are 0/1 (one column may be a sum of
    two basis vectors in the diagonalizable case), so the same matrix
    certifies over any field containing the eigenvalues."""
    n = spec.n
    if spec.is_scalar():
        raise ValueError("no witness exists for a scalar operator")
    if not 1 <= i < j <= n:
        raise ValueError("need 1 <= i < j <= n")
    blocks = list(spec.blocks)
    order = _construction_order(spec)
    starts = []
    pos = 0
    for _, size in blocks:
        starts.append(pos)
        pos += size
    # pos_of[t] = 0-based original index of construction basis vector c_{t+1}.
    pos_of = []
    for b in order:
        pos_of.extend(range(starts[b], starts[b] + blocks[b][1]))
    mu1 = blocks[order[0]][1]

    def basis_vec(t):  # construction index t (1-based) -> original e-vector
        v = [0] * n
        v[pos_of[t - 1]] = 1
        return v

    cols = []
    if mu1 > 1:
        if i <= n - mu1:
            tail = list(range(mu1 + 1, n + 1))        # c_{mu1+1} .. c_n
            middle = list(range(3, mu1 + 1))          # c_3 .. c_mu1
            vseq = tail + middle + [2, 1]             # v_1 .. v_n
            for k in range(1, n + 1):
                if k < i:
                    cols.append(basis_vec(vseq[k - 1]))
                elif k == i:
                    cols.append(basis_vec(2))
                elif k < j:
                    cols.append(basis_vec(vseq[k - 2]))
                elif k == j:
                    cols.append(basis_vec(1))
                else:
                    cols.append(basis_vec(vseq[k - 3]))
        else:
            for k in range(1, n + 1):
                if k <= n - mu1:
                    cols.append(basis_vec(k + mu1))
                elif k < i:
                    cols.append(basis_vec(k - n + mu1))
                elif k < j:
                    cols.append(basis_vec(k - n + mu1 + 1))
                elif k == j:
                    cols.append(basis_vec(i - n + mu1))
                else:
                    cols.append(basis_vec(k - n + mu1))
    else:
        for k in range(1, n + 1):
            if k < i:
                cols.append(basis_vec(k + 2))
            elif k == i:
                v = [(a + b) % spec.p for a, b in zip(basis_vec(1), basis_vec(2))]
                cols.append(v)
            elif k < j:
                cols.append(basis_vec(k + 1))
            elif k == j:
                cols.append(basis_vec(1))
            else:
                cols.append(basis_vec(k))
    a = Matrix.from_columns(cols, spec.p)
    _, verdict = check_lemma(jordan_matrix(spec), a, i, j)
    if not verdict:
        raise RuntimeError("witness construction failed its own checks")
    return a


@dataclass(frozen=True)
class WitnessCertificate:
    operator: JordanSpec
    pair: tuple
    flag: Flag
    checks: tuple        # the three lemma condition results
    memberships: dict    # shape_text -> bool, over all strict shapes
    in_first: bool
    in_second: bool


def certify_distinct(spec: JordanSpec, s1: HessShape,
                     s2: HessShape) -> WitnessCertificate:
    """Witness that Hess(X, s1) != Hess(X, s2) for distinct strict shapes
    and non-scalar X: a flag lying in exactly one of the two varieties."""
    n = spec.n
    if s1.n != n or s2.n != n:
        raise ValueError("shape rank != operator rank")
    if not (is_strict(s1) and is_strict(s2)):
        raise ValueError("both shapes must be strict")
    if s1.t == s2.t:
        raise ValueError("shapes are equal; nothing to separate")
    if spec.is_scalar():
        raise ValueError("scalar operators do not separate strict shapes")
    pair = next((i, j)
                for i in range(1, n + 1) for j in range(i + 1, n + 1)
                if (s1.t[i - 1] >= j) != (s2.t[i - 1] >= j))
    i, j = pair
    a = witness_flag(spec, i, j)
    x = jordan_matrix(spec)
    checks, verdict = check_lemma(x, a, i, j)
    f = canonical_form(a)
    memberships = {shape_text(s): member(x, s, f)
                   for s in enumerate_shapes(n, strict_only=True)}
    in1 = memberships[shape_text(s1)]
    in2 = memberships[shape_text(s2)]
    if not verdict or in1 == in2:
        raise RuntimeError("witness does not separate the varieties")
    return WitnessCertificate(spec, pair, f, checks, memberships, in1, in2)


# ---------------------------------------------------------------------------
# The antidiagonal involution.
# ---------------------------------------------------------------------------

def involution_image(f: Flag) -> Flag:
    """gB -> w0 (g^T)^{-1} w0 B; an involution on the flag set."""
    w0 = w0_matrix(f.n, f.p)
    return canonical_form(w0 * f.rep.transpose().inverse() * w0)


@dataclass(frozen=True)
class InvolutionReport:
    shape: HessShape
    partner: HessShape
    p: int
    count: int
    partner_count: int
    intermediate_bijection: bool  # onto Hess(w0 X^T w0, transposed shape)
    composed_bijection: bool      # onto Hess(X, transposed shape)
    ok: bool


def verify_involution(x: OperatorSpec, s: HessShape, p: int) -> InvolutionReport:
    n = s.n
    xm = x.matrix(p)
    ym = antitranspose(xm)  # equals w0 * X^T * w0
    s_t = transpose_shape(s)
    v1, v3 = variety_bitmaps(xm, [s, s_t], n, p)
    v2 = variety_bitmaps(ym, [s_t], n, p)[0]
    flags = _flags(n, p)
    members = [flags[idx] for idx in v1.indices()]
    images = [involution_image(f) for f in members]
    inter_ok = {g.index for g in images} == set(v2.indices())
    pmat = similarity_transform(ym, xm)
    if pmat is None:
        raise RuntimeError("X and w0 X^T w0 must be similar")
    composed = {canonical_form(pmat * g.rep).index for g in images}
    comp_ok = composed == set(v3.indices())
    counts_ok = v1.count == v3.count
    return InvolutionReport(s, s_t, p, v1.count, v3.count, inter_ok, comp_ok,
                            inter_ok and comp_ok and counts_ok)


# ---------------------------------------------------------------------------
# Product decomposition of regular nilpotent varieties.
# ---------------------------------------------------------------------------

def product_flag(f1: Flag, f2: Flag) -> Flag:
    """Block-diagonal combination of a flag on [j] and a flag on [n-j]."""
    if f1.p != f2.p:
        raise ValueError("modulus mismatch")
    n = f1.n + f2.n
    rows = []
    for r in f1.rep.rows:
        rows.append(list(r) + [0] * f2.n)
    for r in f2.rep.rows:
        rows.append([0] * f1.n + list(r))
    return canonical_form(Matrix.from_rows(rows, f1.p))


def split_flag(f: Flag, j: int):
    """Inverse of product_flag: the second factor is the quotient by
    span{e_1..e_j}. Requires chain(f, j) = span{e_1..e_j}."""
    n, p = f.n, f.p
    if not 1 <= j < n:
        raise ValueError("split index out of range")
    coord = span_of([[1 if r == k else 0 for r in range(n)] for k in range(j)],
                    n, p)
    if chain(f, j) != coord:
        raise ValueError("F_j is not the span of the first j basis vectors")
    top = Matrix.from_rows([r[:j] for r in f.rep.rows[:j]], p)
    bottom = Matrix.from_rows([r[j:] for r in f.rep.rows[j:]], p)
    return canonical_form(top), canonical_form(bottom)


@dataclass(frozen=True)
class DecompositionReport:
    shape: HessShape
    split_index: int
    sub_shapes: tuple
    p: int
    count: int
    count1: int
    count2: int
    pairs_checked: int
    ok: bool


def verify_decomposition(s: HessShape, p: int,
                         j: int | None = None) -> DecompositionReport:
    """Check that Hess(N, s) over F_p is exactly the product of the two
    split varieties: counts multiply and split/product are inverse
    bijections on every point."""
    n = s.n
    if j is None:
        points = split_points(s)
        if not points:
            raise ValueError("shape has no split index t_j = j with j < n")
        j = points[0]
    h1, h2 = split_shape(s, j)
    v = variety_bitmaps(regular_nilpotent(n, p), [s], n, p)[0]
    v1 = variety_bitmaps(regular_nilpotent(j, p), [h1], j, p)[0]
    v2 = variety_bitmaps(regular_nilpotent(n - j, p), [h2], n - j, p)[0]
    flags1 = _flags(j, p)
    flags2 = _flags(n - j, p)
    target = set(v.indices())
    seen = set()
    pairs = 0
    ok = True
    for i1 in v1.indices():
        for i2 in v2.indices():
            f1, f2 = flags1[i1], flags2[i2]
            prod = product_flag(f1, f2)
            pairs += 1
            if prod.index not in target or prod.index in seen:
                ok = False
            seen.add(prod.index)
            back = split_flag(prod, j)
            if back != (f1, f2):
                ok = False
    ok = ok and seen == target and v.count == v1.count * v2.count
    return DecompositionReport(s, j, (h1, h2), p, v.count, v1.count, v2.count,
                               pairs, ok)


@dataclass(frozen=True)
class IntervalReport:
    n: int
    decomposable: tuple
    indecomposable: tuple
    bottom: HessShape  # Peterson shape
    top: HessShape     # full gl_n
    ok: bool


def indecomposable_interval(n: int) -> IntervalReport:
    """Partition strict shapes by decomposability and verify that the
    indecomposable ones form the interval [Peterson shape, full space]."""
    if n < 2:
        raise ValueError("need n >= 2")
    strict = enumerate_shapes(n, strict_only=True)
    dec = tuple(s for s in strict if split_points(s))
    indec = tuple(s for s in strict if not split_points(s))
    bottom = peterson_shape(n)
    top = full_shape(n)
    interval = tuple(s for s in strict
                     if shape_le(bottom, s) and shape_le(s, top))
    return IntervalReport(n, dec, indec, bottom, top, indec == interval)
