"""Exact linear algebra over the two-element field.

Rows are packed into Python ints: bit ``c`` of a row word is the entry in
column ``c``.  Vectors are plain ints with the same convention.  This is the
only module that knows about the packing; everything above it goes through
:class:`BitMatrix`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class NoSolution(ValueError):
    """A linear system over GF(2) has no solution."""


def _mask(n: int) -> int:
    return (1 << n) - 1


def parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class BitMatrix:
    """An ``nrows x ncols`` matrix over GF(2).

    A matrix doubles as a linear map from ``F_2^ncols`` to ``F_2^nrows``.
    Zero rows or zero columns are legal.
    """

    nrows: int
    ncols: int
    words: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("negative shape")
        if len(self.words) != self.nrows:
            raise ValueError(f"expected {self.nrows} row words, got {len(self.words)}")
        m = _mask(self.ncols)
        for w in self.words:
            if w < 0 or w & ~m:
                raise ValueError("row word has bits outside the column range")

    # construction

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        words = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            w = 0
            for c, bit in enumerate(row):
                if bit & 1:
                    w |= 1 << c
            words.append(w)
        return cls(len(rows), ncols, tuple(words))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]) -> BitMatrix:
        """Build a matrix whose column ``j`` is the vector ``columns[j]``."""
        words = [0] * nrows
        for j, col in enumerate(columns):
            i = 0
            while col:
                if col & 1:
                    words[i] |= 1 << j
                col >>= 1
                i += 1
        return cls(nrows, len(columns), tuple(words))

    @classmethod
    def from_flat(cls, nrows: int, ncols: int, flat: int) -> BitMatrix:
        m = _mask(ncols)
        return cls(nrows, ncols, tuple((flat >> (i * ncols)) & m for i in range(nrows)))

    @staticmethod
    def hstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
        if not blocks:
            raise ValueError("hstack of nothing")
        nrows = blocks[0].nrows
        words = [0] * nrows
        shift = 0
        for b in blocks:
            if b.nrows != nrows:
                raise ValueError("hstack row mismatch")
            for i, w in enumerate(b.words):
                words[i] |= w << shift
            shift += b.ncols
        return BitMatrix(nrows, shift, tuple(words))

    @staticmethod
    def vstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
        if not blocks:
            raise ValueError("vstack of nothing")
        ncols = blocks[0].ncols
        words: list[int] = []
        for b in blocks:
            if b.ncols != ncols:
                raise ValueError("vstack column mismatch")
            words.extend(b.words)
        return BitMatrix(len(words), ncols, tuple(words))

    @staticmethod
    def block_diag(blocks: Sequence[BitMatrix]) -> BitMatrix:
        ncols = sum(b.ncols for b in blocks)
        words: list[int] = []
        shift = 0
        for b in blocks:
            words.extend(w << shift for w in b.words)
            shift += b.ncols
        return BitMatrix(len(words), ncols, tuple(words))

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.words[i] >> j) & 1

    def to_rows(self) -> list[list[int]]:
        return [[(w >> c) & 1 for c in range(self.ncols)] for w in self.words]

    def column(self, j: int) -> int:
        v = 0
        for i, w in enumerate(self.words):
            if (w >> j) & 1:
                v |= 1 << i
        return v

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def flatten(self) -> int:
        out = 0
        for i, w in enumerate(self.words):
            out |= w << (i * self.ncols)
        return out

    def submatrix(self, rows: range, cols: range) -> BitMatrix:
        m = _mask(len(cols))
        return BitMatrix(len(rows), len(cols),
                         tuple((self.words[i] >> cols.start) & m for i in rows))

    # arithmetic

    @property
    def T(self) -> BitMatrix:
        return BitMatrix(self.ncols, self.nrows, tuple(self.columns()))

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return BitMatrix(self.nrows, self.ncols,
                         tuple(a ^ b for a, b in zip(self.words, other.words)))

    __sub__ = __add__

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} @ {other.shape}")
        ow = other.words
        out = []
        for w in self.words:
            acc = 0
            j = 0
            while w:
                if w & 1:
                    acc ^= ow[j]
                w >>= 1
                j += 1
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(out))

    def apply(self, v: int) -> int:
        out = 0
        for i, w in enumerate(self.words):
            if parity(w & v):
                out |= 1 << i
        return out

    def is_zero(self) -> bool:
        return not any(self.words)

    def rank(self) -> int:
        return len(_echelon(list(self.words)))

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> BitMatrix:
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        return solve(self, BitMatrix.identity(self.nrows))

    # serialization

    def to_json(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "data": ["".join(str((w >> c) & 1) for c in range(self.ncols)) for w in self.words],
        }

    @classmethod
    def from_json(cls, obj: dict) -> BitMatrix:
        nrows, ncols = int(obj["rows"]), int(obj["cols"])
        data = obj.get("data", [])
        if len(data) != nrows or any(len(s) != ncols for s in data):
            raise ValueError("BitMatrix JSON data does not match declared shape")
        return cls.from_rows([[int(ch) for ch in s] for s in data], ncols)

    def __repr__(self) -> str:
        body = ";".join("".join(str((w >> c) & 1) for c in range(self.ncols)) for w in self.words)
        return f"BitMatrix({self.nrows}x{self.ncols}: {body})"


LinearMap = BitMatrix


def _echelon(words: list[int]) -> list[int]:
    """Reduce ``words`` to a list of independent vectors with distinct lowest bits."""
    basis: dict[int, int] = {}
    for w in words:
        while w:
            low = w & -w
            if low in basis:
                w ^= basis[low]
            else:
                basis[low] = w
                break
    return list(basis.values())


def rref(m: BitMatrix) -> tuple[BitMatrix, list[int], BitMatrix]:
    """Reduced row-echelon form.

    Returns ``(reduced, pivots, transform)`` with ``transform @ m == reduced``
    and ``transform`` invertible.  Pivot columns are scanned left to right.
    """
    rows = list(m.words)
    tr = [1 << i for i in range(m.nrows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        bit = 1 << c
        p = next((i for i in range(r, m.nrows) if rows[i] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        tr[r], tr[p] = tr[p], tr[r]
        for i in range(m.nrows):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
                tr[i] ^= tr[r]
        pivots.append(c)
        r += 1
        if r == m.nrows:
            break
    return (BitMatrix(m.nrows, m.ncols, tuple(rows)), pivots,
            BitMatrix(m.nrows, m.nrows, tuple(tr)))


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``F_2^ambient_dim`` held by its canonical RREF basis.

    Two subspaces are equal exactly when their bases are bit-equal.
    """

    ambient_dim: int
    basis: BitMatrix

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[int]) -> Subspace:
        vecs = [v for v in vectors if v]
        red, pivots, _ = rref(BitMatrix(len(vecs), ambient_dim, tuple(vecs)))
        return cls(ambient_dim, BitMatrix(len(pivots), ambient_dim, red.words[:len(pivots)]))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, BitMatrix.zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, BitMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def vectors(self) -> tuple[int, ...]:
        return self.basis.words

    @property
    def pivots(self) -> list[int]:
        return [(w & -w).bit_length() - 1 for w in self.basis.words]

    def inclusion(self) -> BitMatrix:
        """Matrix ``ambient_dim x dim`` whose columns are the basis vectors."""
        return BitMatrix.from_columns(self.ambient_dim, self.basis.words)

    def reduce(self, v: int) -> int:
        """Reduce ``v`` modulo the subspace against the pivot columns."""
        for w in self.basis.words:
            if v & (w & -w):
                v ^= w
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __le__(self, other: Subspace) -> bool:
        return all(other.contains(v) for v in self.vectors)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace.span(self.ambient_dim, self.vectors + other.vectors)


def kernel_basis(f: BitMatrix) -> Subspace:
    """The subspace ``{v : f v = 0}`` of the domain of ``f``."""
    red, pivots, _ = rref(f)
    pivot_set = set(pivots)
    vecs = []
    for free in range(f.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for i, p in enumerate(pivots):
            if (red.words[i] >> free) & 1:
                v |= 1 << p
        vecs.append(v)
    return Subspace.span(f.ncols, vecs)


def image(f: BitMatrix) -> Subspace:
    return Subspace.span(f.nrows, f.columns())


def image_and_cokernel(f: BitMatrix) -> tuple[Subspace, int, BitMatrix]:
    """Image of ``f``, cokernel dimension, and the canonical projection.

    The cokernel coordinates are the codomain coordinates that are not pivot
    columns of the image basis; a vector is first reduced modulo the image and
    then read off on those coordinates.
    """
    im = image(f)
    pivots = set(im.pivots)
    keep = [c for c in range(f.nrows) if c not in pivots]
    cols = []
    for j in range(f.nrows):
        r = im.reduce(1 << j)
        v = 0
        for k, c in enumerate(keep):
            if (r >> c) & 1:
                v |= 1 << k
        cols.append(v)
    proj = BitMatrix.from_columns(len(keep), cols)
    return im, len(keep), proj


def cokernel_section(proj: BitMatrix, im: Subspace) -> BitMatrix:
    """Right inverse of a canonical cokernel projection (coordinate inclusion)."""
    pivots = set(im.pivots)
    keep = [c for c in range(im.ambient_dim) if c not in pivots]
    return BitMatrix.from_columns(im.ambient_dim, [1 << c for c in keep])


def solve(f: BitMatrix, target: BitMatrix) -> BitMatrix:
    """Return ``g`` with ``f @ g == target``.

    Each column of ``g`` is the solution with all free variables zero, which is
    the minimal solution when vectors are read as integers with coordinate 0
    least significant.  Raises :class:`NoSolution` if some column of
    ``target`` is outside the image of ``f``.
    """
    if f.nrows != target.nrows:
        raise ValueError(f"solve: codomain mismatch {f.shape} vs {target.shape}")
    red, pivots, tr = rref(f)
    rank = len(pivots)
    cols = []
    for t in target.columns():
        t2 = tr.apply(t)
        if t2 >> rank:
            raise NoSolution("target column not in the image")
        x = 0
        for i, p in enumerate(pivots):
            if (t2 >> i) & 1:
                x |= 1 << p
        cols.append(x)
    return BitMatrix.from_columns(f.ncols, cols)


def solve_right(e: BitMatrix, target: BitMatrix) -> BitMatrix:
    """Return ``x`` with ``x @ e == target``."""
    return solve(e.T, target.T).T


def pullback(f: BitMatrix, g: BitMatrix) -> tuple[int, BitMatrix, BitMatrix]:
    """Pullback of ``f: A -> C`` and ``g: B -> C``: ``(dim P, p1, p2)``."""
    if f.nrows != g.nrows:
        raise ValueError("pullback needs a common codomain")
    k = kernel_basis(BitMatrix.hstack([f, g])).inclusion()
    a = f.ncols
    p1 = k.submatrix(range(0, a), range(0, k.ncols))
    p2 = k.submatrix(range(a, k.nrows), range(0, k.ncols))
    return k.ncols, p1, p2


def pushout(f: BitMatrix, g: BitMatrix) -> tuple[int, BitMatrix, BitMatrix]:
    """Pushout of ``f: C -> A`` and ``g: C -> B``: ``(dim Q, q1, q2)``."""
    if f.ncols != g.ncols:
        raise ValueError("pushout needs a common domain")
    _, qdim, q = image_and_cokernel(BitMatrix.vstack([f, g]))
    a = f.nrows
    q1 = q.submatrix(range(0, qdim), range(0, a))
    q2 = q.submatrix(range(0, qdim), range(a, q.ncols))
    return qdim, q1, q2


class LinearSpan:
    """Coordinates and linear relations for a fixed list of vectors.

    ``relations`` is a basis of ``{c : sum of vectors[i] for bits i of c == 0}``;
    ``coordinates(v)`` returns some ``c`` with that sum equal to ``v``.
    """

    def __init__(self, vectors: Sequence[int]):
        self.vectors = list(vectors)
        self._basis: dict[int, tuple[int, int]] = {}
        self.relations: list[int] = []
        for i, v in enumerate(self.vectors):
            tag = 1 << i
            while v:
                low = v & -v
                if low in self._basis:
                    bv, bt = self._basis[low]
                    v ^= bv
                    tag ^= bt
                else:
                    self._basis[low] = (v, tag)
                    break
            if not v:
                self.relations.append(tag)

    @property
    def rank(self) -> int:
        return len(self._basis)

    def coordinates(self, v: int) -> int:
        tag = 0
        while v:
            low = v & -v
            if low not in self._basis:
                raise NoSolution("vector not in span")
            bv, bt = self._basis[low]
            v ^= bv
            tag ^= bt
        return tag

    def contains(self, v: int) -> bool:
        try:
            self.coordinates(v)
        except NoSolution:
            return False
        return True


def all_matrices(nrows: int, ncols: int) -> Iterable[BitMatrix]:
    """Every ``nrows x ncols`` matrix, in increasing order of the flattened word."""
    n = nrows * ncols
    for flat in range(1 << n):
        yield BitMatrix.from_flat(nrows, ncols, flat)


def general_linear_group(n: int) -> list[BitMatrix]:
    return [m for m in all_matrices(n, n) if m.is_invertible()]
