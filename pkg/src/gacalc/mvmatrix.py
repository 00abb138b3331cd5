"""Matrices whose entries are multivectors of a single algebra.

Inversion and solves go through the block scalar matrix: every entry is
replaced by its left-multiplication matrix, giving a ``(rows*2^n) x
(cols*2^n)`` matrix over the coefficient field.  ``block`` is an algebra
homomorphism, so the inverse of the block matrix is again a block matrix
and its entries are read back from the first column of each block.
"""

from __future__ import annotations

import numpy as np

from .analytic import exact_solve, float_solve, to_matrix
from .errors import GAError, NotInvertibleError, SignatureMismatchError
from .multivector import Multivector, _zero_like, objarray


class MvMatrix:
    """Row-major ``rows x cols`` matrix of :class:`Multivector` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise GAError("a multivector matrix needs at least one entry")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise GAError("ragged multivector matrix")
        first = next((e for r in rows for e in r if isinstance(e, Multivector)), None)
        if first is None:
            raise GAError("a multivector matrix needs at least one multivector entry")
        alg = first.algebra
        out = []
        for r in rows:
            row = []
            for e in r:
                if isinstance(e, Multivector):
                    if e.algebra is not alg:
                        raise SignatureMismatchError(
                            f"signature mismatch: {first.signature} vs {e.signature}")
                    row.append(e)
                else:
                    row.append(Multivector.scalar(alg, e, first.model))
            out.append(row)
        self.rows, self.cols = len(out), ncols
        self.entries = out

    @property
    def algebra(self):
        return self.entries[0][0].algebra

    @property
    def shape(self):
        return self.rows, self.cols

    @classmethod
    def identity(cls, algebra, n: int, model=None):
        return cls([[Multivector.scalar(algebra, 1 if i == j else 0, model) for j in range(n)]
                    for i in range(n)])

    @classmethod
    def column(cls, values):
        return cls([[v] for v in values])

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def _check(self, other: "MvMatrix"):
        if other.algebra is not self.algebra:
            raise SignatureMismatchError(
                f"signature mismatch: {self.algebra.signature} vs {other.algebra.signature}")

    def __add__(self, other):
        return mm_add(self, other)

    def __sub__(self, other):
        return mm_add(self, -other)

    def __neg__(self):
        return MvMatrix([[-e for e in r] for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, MvMatrix):
            return mm_mul(self, other)
        return MvMatrix([[e * other for e in r] for r in self.entries])

    def __rmul__(self, other):
        return MvMatrix([[other * e for e in r] for r in self.entries])

    def __pow__(self, k):
        if k == -1:
            return mm_inverse(self)
        if not isinstance(k, int) or k < 0:
            raise GAError("matrix powers must be -1 or a non-negative integer")
        out = MvMatrix.identity(self.algebra, self.rows, self.entries[0][0].model)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, MvMatrix) or other.shape != self.shape:
            return False
        return all(a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    __hash__ = None

    def equals(self, other: "MvMatrix", tol: float = 0.0) -> bool:
        return other.shape == self.shape and all(
            a.equals(b, tol) for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    def map(self, f) -> "MvMatrix":
        return MvMatrix([[f(e) for e in r] for r in self.entries])

    def clean(self, tol: float = 1e-12):
        return self.map(lambda e: e.clean(tol))

    def transpose(self) -> "MvMatrix":
        return mm_transpose(self)

    T = property(transpose)

    def adjoint(self) -> "MvMatrix":
        return mm_adjoint(self)

    def block(self) -> np.ndarray:
        return block(self)

    def inverse(self) -> "MvMatrix":
        return mm_inverse(self)

    def solve(self, b) -> "MvMatrix":
        return mm_solve(self, b)

    def to_text(self) -> str:
        cells = [[e.to_text() for e in r] for r in self.entries]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("    ".join(c.ljust(width) for c in r).rstrip() for r in cells)

    __str__ = to_text

    def __repr__(self):
        return f"MvMatrix({self.rows}x{self.cols}, {self.algebra.signature})"

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [e.to_json() for r in self.entries for e in r]}

    @classmethod
    def from_json(cls, obj) -> "MvMatrix":
        flat = [Multivector.from_json(e) for e in obj["entries"]]
        r, c = obj["rows"], obj["cols"]
        if len(flat) != r * c:
            raise GAError("entry count does not match rows*cols")
        return cls([flat[i * c:(i + 1) * c] for i in range(r)])


def mm_add(M: MvMatrix, N: MvMatrix) -> MvMatrix:
    M._check(N)
    if M.shape != N.shape:
        raise GAError(f"dimension mismatch: {M.shape} vs {N.shape}")
    return MvMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(M.entries, N.entries)])


def mm_mul(M: MvMatrix, N: MvMatrix) -> MvMatrix:
    """Row-by-column product; entry products keep their left/right order."""
    M._check(N)
    if M.cols != N.rows:
        raise GAError(f"dimension mismatch: {M.shape} x {N.shape}")
    out = []
    for i in range(M.rows):
        row = []
        for j in range(N.cols):
            acc = M.entries[i][0] * N.entries[0][j]
            for k in range(1, M.cols):
                acc = acc + M.entries[i][k] * N.entries[k][j]
            row.append(acc)
        out.append(row)
    return MvMatrix(out)


def mm_transpose(M: MvMatrix) -> MvMatrix:
    return MvMatrix([[M.entries[i][j] for i in range(M.rows)] for j in range(M.cols)])


def mm_adjoint(M: MvMatrix) -> MvMatrix:
    """Transpose with every entry reversed."""
    return MvMatrix([[M.entries[i][j].reverse() for i in range(M.rows)] for j in range(M.cols)])


def _exact(M: MvMatrix) -> bool:
    return all(e.exact for r in M.entries for e in r)


def block(M: MvMatrix) -> np.ndarray:
    """Scalar matrix with the left-multiplication matrix of each entry in place."""
    d = M.algebra.dim
    exact = _exact(M)
    blocks = [[to_matrix(e if exact else e.to_float()) for e in r] for r in M.entries]
    out = np.empty((M.rows * d, M.cols * d), dtype=object if exact else float)
    for i, r in enumerate(blocks):
        for j, b in enumerate(r):
            out[i * d:(i + 1) * d, j * d:(j + 1) * d] = b
    return out


def _stack(b: MvMatrix, exact: bool) -> np.ndarray:
    """Coefficients of a multivector matrix stacked column block by column block."""
    d = b.algebra.dim
    out = np.empty((b.rows * d, b.cols), dtype=object if exact else float)
    for i in range(b.rows):
        for j in range(b.cols):
            e = b.entries[i][j]
            out[i * d:(i + 1) * d, j] = e.coeffs if exact else e.to_float().coeffs
    return out


def _unstack(x: np.ndarray, rows: int, cols: int, like: Multivector) -> MvMatrix:
    d = like.algebra.dim
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            col = x[i * d:(i + 1) * d, j]
            coeffs = objarray(list(col)) if col.dtype == object else np.asarray(col, dtype=float).copy()
            row.append(like._new(coeffs))
        out.append(row)
    return MvMatrix(out)


def _solve_block(M: MvMatrix, rhs: np.ndarray, exact: bool) -> np.ndarray:
    A = block(M)
    try:
        return exact_solve(A, rhs) if exact else float_solve(A, rhs)
    except NotInvertibleError:
        raise NotInvertibleError("matrix of multivectors not invertible") from None


def mm_solve(M: MvMatrix, b) -> MvMatrix:
    """``X`` with ``M X = b`` (``b`` a multivector matrix or a list of entries)."""
    if not isinstance(b, MvMatrix):
        b = MvMatrix.column(b)
    M._check(b)
    if M.rows != M.cols:
        raise GAError("solve needs a square matrix")
    if b.rows != M.rows:
        raise GAError(f"dimension mismatch: {M.shape} vs {b.shape}")
    exact = _exact(M) and _exact(b)
    x = _solve_block(M, _stack(b, exact), exact)
    return _unstack(x, M.cols, b.cols, M.entries[0][0] if exact else M.entries[0][0].to_float())


def mm_inverse(M: MvMatrix) -> MvMatrix:
    """Inverse through the block matrix, solving only against the ``e0`` columns."""
    if M.rows != M.cols:
        raise GAError("only square multivector matrices can be inverted")
    exact = _exact(M)
    d = M.algebra.dim
    n = M.rows * d
    like = M.entries[0][0] if exact else M.entries[0][0].to_float()
    if exact:
        rhs = np.empty((n, M.rows), dtype=object)
        rhs[:] = _zero_like(like.coeffs)
        one = _zero_like(like.coeffs) + 1
    else:
        rhs = np.zeros((n, M.rows))
        one = 1.0
    for j in range(M.rows):
        rhs[j * d, j] = one
    x = _solve_block(M, rhs, exact)
    return _unstack(x, M.rows, M.rows, like)
