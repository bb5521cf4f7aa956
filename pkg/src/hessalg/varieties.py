"""Hessenberg varieties over F_p as explicit point sets, and the poset P_X.

A Variety is a membership bitmap over the fixed flag enumeration order.
Equality and containment over F_p are reported as per-prime evidence; the
multi-prime poset mode intersects the equivalence classes computed at
each prime to reduce accidental coincidences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .field import JordanSpec, Matrix, jordan_matrix, jordan_spec
from .flags import FlagSet, check_guards, iter_flags, q_factorial
from .shapes import (HessShape, diagram_text, enumerate_shapes, shape_text)

EQUAL = "equal"
PROPERLY_CONTAINED = "properly-contained"
PROPERLY_CONTAINS = "properly-contains"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class OperatorSpec:
    """An operator given as Jordan data (eigenvalues may be integers or
    symbols resolved per prime) or as a raw integer matrix reduced mod p."""

    name: str
    n: int
    blocks: tuple | None = None   # tuple of (eigenvalue int|symbol str, size)
    entries: tuple | None = None  # raw matrix rows

    def __post_init__(self):
        if (self.blocks is None) == (self.entries is None):
            raise ValueError("need exactly one of Jordan blocks / raw matrix")
        if self.blocks is not None and sum(s for _, s in self.blocks) != self.n:
            raise ValueError("block sizes must sum to n")
        if self.entries is not None and (
                len(self.entries) != self.n
                or any(len(r) != self.n for r in self.entries)):
            raise ValueError("raw matrix must be n x n")

    def _symbols(self):
        return sorted({ev for ev, _ in (self.blocks or ()) if isinstance(ev, str)})

    def jordan(self, p: int) -> JordanSpec | None:
        if self.blocks is None:
            return None
        syms = self._symbols()
        if len(syms) > p:
            raise ValueError(
                "p=%d too small for %d distinct symbolic eigenvalues"
                % (p, len(syms)))
        values = {s: p - 1 - i for i, s in enumerate(syms)}
        resolved = [(values[ev] if isinstance(ev, str) else int(ev) % p, size)
                    for ev, size in self.blocks]
        return jordan_spec(resolved, p)

    def matrix(self, p: int) -> Matrix:
        if self.blocks is not None:
            return jordan_matrix(self.jordan(p))
        return Matrix.from_rows(self.entries, p)

    def is_scalar(self, p: int) -> bool:
        m = self.matrix(p)
        n = self.n
        diag = {m.entry(i, i) for i in range(1, n + 1)}
        if len(diag) != 1:
            return False
        return all(m.entry(i, j) == 0
                   for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


def jordan_operator(blocks, n: int | None = None, name: str | None = None) -> OperatorSpec:
    blocks = tuple((ev, int(size)) for ev, size in blocks)
    total = sum(size for _, size in blocks)
    if n is None:
        n = total
    if name is None:
        name = "jordan:" + ",".join("%s^%d" % (ev, size) for ev, size in blocks)
    return OperatorSpec(name=name, n=n, blocks=blocks)


def matrix_operator(rows, name: str | None = None) -> OperatorSpec:
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    if name is None:
        name = "matrix:" + ";".join(",".join(str(x) for x in r) for r in rows)
    return OperatorSpec(name=name, n=len(rows), entries=rows)


@dataclass(frozen=True)
class Variety:
    operator: OperatorSpec
    shape: HessShape
    p: int
    points: FlagSet


@lru_cache(maxsize=8)
def _flag_table(n: int, p: int, override: bool = False):
    """Per-flag (rep, inverse) matrices, cached per field context."""
    return tuple((f.rep, f.rep.inverse()) for f in iter_flags(n, p, override))


def _forbidden(s: HessShape):
    """0-based forbidden (row, col) positions of a shape's mask."""
    return [(i, j) for j in range(s.n) for i in range(s.t[j], s.n)]


def variety_bitmaps(x: Matrix, shapes, n: int, p: int, workers: int = 1,
                    override: bool = False):
    """Membership bitmaps for several shapes sharing one operator; the
    adjoint image g^{-1} X g is computed once per flag. Work is split into
    `workers` contiguous flag ranges and merged in range order, so the
    result is independent of the worker count."""
    check_guards(n, p, override)
    if x.p != p or x.nrows != n:
        raise ValueError("operator size or modulus mismatch")
    table = _flag_table(n, p, override)
    masks = [_forbidden(s) for s in shapes]
    total = len(table)
    workers = max(1, min(int(workers), total))
    bits = [0] * len(shapes)
    bounds = [total * w // workers for w in range(workers + 1)]
    for lo, hi in zip(bounds, bounds[1:]):
        for idx in range(lo, hi):
            rep, inv = table[idx]
            y = (inv * x * rep).rows
            bit = 1 << idx
            for si, mask in enumerate(masks):
                if all(y[i][j] == 0 for i, j in mask):
                    bits[si] |= bit
    size = q_factorial(n, p)
    return [FlagSet(n, p, size, b) for b in bits]


def compute_variety(x: OperatorSpec, s: HessShape, p: int, workers: int = 1,
                    override: bool = False) -> Variety:
    if x.n != s.n:
        raise ValueError("operator rank != shape rank")
    points = variety_bitmaps(x.matrix(p), [s], s.n, p, workers, override)[0]
    return Variety(x, s, p, points)


def compare(v1: Variety, v2: Variety) -> str:
    if (v1.p, v1.shape.n, v1.operator) != (v2.p, v2.shape.n, v2.operator):
        raise ValueError("varieties live in different contexts")
    a, b = v1.points.bits, v2.points.bits
    if a == b:
        return EQUAL
    if a & b == a:
        return PROPERLY_CONTAINED
    if a & b == b:
        return PROPERLY_CONTAINS
    return INCOMPARABLE


@dataclass(frozen=True)
class EqClass:
    name: str          # diagram text of the lex-least member shape
    shapes: tuple      # member HessShapes, lex order on thresholds
    bitmaps: tuple     # one FlagSet per prime, in the primes order

    @property
    def representative(self) -> HessShape:
        return self.shapes[0]


@dataclass(frozen=True)
class PosetPX:
    operator: OperatorSpec
    primes: tuple
    strict_only: bool
    classes: tuple  # EqClass, sorted by representative thresholds
    hasse: tuple    # (sub_name, super_name) covering edges


def build_poset(x: OperatorSpec, primes, strict_only: bool = False,
                workers: int = 1) -> PosetPX:
    if isinstance(primes, int):
        primes = (primes,)
    primes = tuple(primes)
    if not primes:
        raise ValueError("need at least one prime")
    shapes = enumerate_shapes(x.n, strict_only)
    per_prime = [variety_bitmaps(x.matrix(p), shapes, x.n, p, workers)
                 for p in primes]
    keys = {}
    for si, s in enumerate(shapes):
        key = tuple(per_prime[pi][si].bits for pi in range(len(primes)))
        keys.setdefault(key, []).append(si)
    classes = []
    for key, members in keys.items():
        member_shapes = tuple(shapes[si] for si in members)
        classes.append(EqClass(
            name=diagram_text(member_shapes[0]),
            shapes=member_shapes,
            bitmaps=tuple(per_prime[pi][members[0]] for pi in range(len(primes)))))
    classes.sort(key=lambda c: c.representative.t)
    less = {}
    for a in classes:
        for b in classes:
            if a is b:
                continue
            less[(a.name, b.name)] = all(
                fa.bits & fb.bits == fa.bits and fa.bits != fb.bits
                for fa, fb in zip(a.bitmaps, b.bitmaps))
    hasse = []
    for a in classes:
        for b in classes:
            if a is b or not less[(a.name, b.name)]:
                continue
            if any(less[(a.name, c.name)] and less[(c.name, b.name)]
                   for c in classes if c is not a and c is not b):
                continue
            hasse.append((a.name, b.name))
    return PosetPX(x, primes, strict_only, tuple(classes), tuple(hasse))


def x_equivalence_classes(x: OperatorSpec, primes, strict_only: bool = False):
    """Partition of shapes into X-equivalence classes (bitmaps identical at
    every given prime)."""
    poset = build_poset(x, primes, strict_only)
    return [list(c.shapes) for c in poset.classes]


# ---------------------------------------------------------------------------
# Point counts across primes and integer polynomial fits.
# ---------------------------------------------------------------------------

def point_counts(x: OperatorSpec, s: HessShape, primes):
    return [compute_variety(x, s, p).points.count for p in primes]


def interpolate(primes, counts, max_degree: int | None = None):
    """The minimal-degree polynomial through (p, count) pairs, returned as
    integer coefficients (ascending), or None when the interpolant has
    non-integer coefficients or exceeds the degree bound."""
    if len(primes) != len(counts) or not primes:
        raise ValueError("need matching non-empty primes and counts")
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    newton = []
    for k, (pk, ck) in enumerate(zip(primes, counts)):
        # Newton divided differences.
        val = Fraction(ck)
        for m, dm in enumerate(newton):
            prod = Fraction(1)
            for q in primes[:m]:
                prod *= pk - q
            val -= dm * prod
        denom = Fraction(1)
        for q in primes[:k]:
            denom *= pk - q
        newton.append(val / denom)
    # Expand the Newton form into monomial coefficients.
    coeffs = [Fraction(0)] * len(primes)
    basis = [Fraction(1)] + [Fraction(0)] * (len(primes) - 1)
    for k, dk in enumerate(newton):
        for i in range(len(primes)):
            coeffs[i] += dk * basis[i]
        # basis *= (q - primes[k])
        nxt = [Fraction(0)] * len(primes)
        for i in range(len(primes) - 1):
            nxt[i + 1] += basis[i]
        for i in range(len(primes)):
            nxt[i] -= basis[i] * primes[k]
        basis = nxt
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if any(c.denominator != 1 for c in coeffs):
        return None
    out = [int(c) for c in coeffs]
    if max_degree is not None and len(out) - 1 > max_degree:
        return None
    return out


def poly_text(coeffs) -> str:
    """Render ascending integer coefficients as e.g. 'q^2+2q+1'."""
    if not coeffs or all(c == 0 for c in coeffs):
        return "0"
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        if d == 0:
            body = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            body = mag + ("q" if d == 1 else "q^%d" % d)
        sign = "-" if c < 0 else ("+" if terms else "")
        terms.append(sign + body)
    return "".join(terms)
