"""Signatures, basis-blade indexing and the blade-level geometric product.

Basis blades are identified two ways:

* ``bits``: an n-bit mask, bit ``i`` set when generator ``e_{i+1}`` is present;
* ``position``: the 0-based rank in graded-lexicographic order
  (grade ascending, then ascending index tuples), e.g. for ``G(3,0,0)``
  ``e0, e1, e2, e3, e12, e13, e23, e123``.

Coefficient arrays of multivectors are always stored in position order.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .errors import GAError

#: dense product tables are memoized only up to this many generators (4**n entries)
TABLE_MAX_N = 8


@dataclass(frozen=True)
class Signature:
    """Metric descriptor ``(p, q, r)`` of a Clifford algebra."""

    p: int
    q: int = 0
    r: int = 0

    def __post_init__(self):
        if min(self.p, self.q, self.r) < 0:
            raise GAError(f"signature counts must be non-negative, got {tuple(self)}")
        if self.n < 1:
            raise GAError("signature must have at least one generator")

    def __iter__(self):
        return iter((self.p, self.q, self.r))

    @property
    def n(self) -> int:
        return self.p + self.q + self.r

    @property
    def dim(self) -> int:
        return 1 << self.n

    def metric(self, i: int) -> int:
        """Square of generator ``e_i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise GAError(f"generator index {i} out of range 1..{self.n}")
        if i <= self.p:
            return 1
        if i <= self.p + self.q:
            return -1
        return 0

    @classmethod
    def parse(cls, text: str) -> "Signature":
        parts = [int(x) for x in text.replace(" ", "").split(",") if x]
        if not 1 <= len(parts) <= 3:
            raise GAError(f"cannot parse signature {text!r}")
        return cls(*parts)

    def __str__(self):
        return f"[{self.p},{self.q},{self.r}]"


class BladeProduct(NamedTuple):
    bits: int
    coefficient: int


def grade_of(bits: int) -> int:
    return bin(bits).count("1")


def reorder_sign(a: int, b: int) -> int:
    """Sign of the permutation bringing ``e_a e_b`` into ascending order."""
    a >>= 1
    swaps = 0
    while a:
        swaps += grade_of(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_product(a: int, b: int, sig: Signature) -> BladeProduct:
    """Geometric product of the basis blades with bitmasks ``a`` and ``b``."""
    coef = reorder_sign(a, b)
    common = a & b
    i = 0
    while common:
        if common & 1:
            coef *= sig.metric(i + 1)
        common >>= 1
        i += 1
    return BladeProduct(a ^ b, coef)


def _parity(x):
    return np.bitwise_count(x) & 1


def _signs(a, b, neg_mask: int, null_mask: int):
    """Vectorized blade-product coefficients for broadcastable bitmask arrays."""
    swaps = np.zeros(np.broadcast_shapes(np.shape(a), np.shape(b)), dtype=np.int64)
    shifted = np.asarray(a, dtype=np.int64) >> 1
    while np.any(shifted):
        swaps += np.bitwise_count(shifted & b)
        shifted = shifted >> 1
    common = a & b
    swaps += _parity(common & neg_mask)
    sign = 1 - 2 * (swaps & 1)
    return np.where((common & null_mask) != 0, 0, sign).astype(np.int64)


def graded_lex_bits(n: int) -> list[int]:
    order = [0]
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            order.append(sum(1 << i for i in combo))
    return order


class Algebra:
    """Index tables and product rules for one signature.

    Use :func:`get_algebra` rather than instantiating directly so that tables
    are shared.
    """

    def __init__(self, sig: Signature):
        self.signature = sig
        self.n = sig.n
        self.dim = sig.dim
        self.bits = np.array(graded_lex_bits(self.n), dtype=np.int64)
        self.position = np.empty(self.dim, dtype=np.int64)
        self.position[self.bits] = np.arange(self.dim)
        self.grades = np.bitwise_count(self.bits).astype(np.int64)
        self.neg_mask = sum(1 << i for i in range(sig.p, sig.p + sig.q))
        self.null_mask = sum(1 << i for i in range(sig.p + sig.q, self.n))
        self._table = None
        self._masked = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Algebra{self.signature}"

    # -- indexing -------------------------------------------------------
    def position_of(self, bits: int) -> int:
        if not 0 <= bits < self.dim:
            raise GAError(f"blade bits {bits} out of range for {self.signature}")
        return int(self.position[bits])

    def bits_of(self, position: int) -> int:
        if not 0 <= position < self.dim:
            raise GAError(f"position {position} out of range 0..{self.dim - 1}")
        return int(self.bits[position])

    def grade_positions(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.grades == k)

    def basis_name(self, position: int, conformal: bool = False) -> str:
        """Display name of a basis blade: ``e0``, ``e1``, ``e13``, ...

        With ``conformal=True`` the first and last generators are read as the
        null vectors ``n0`` and ``ni`` (``n0e1ni`` and so on).
        """
        bits = self.bits_of(position)
        idx = [i + 1 for i in range(self.n) if bits >> i & 1]
        if not idx:
            return "e0"
        if conformal:
            head = "n0" if idx[0] == 1 else ""
            tail = "ni" if idx[-1] == self.n else ""
            mid = [i - 1 for i in idx if 1 < i < self.n]
            return head + (_join_indices(mid) if mid else "") + tail
        return _join_indices(idx)

    @property
    def basis_names(self) -> list[str]:
        return [self.basis_name(i) for i in range(self.dim)]

    # -- products ---------------------------------------------------------
    def blade_product(self, i: int, j: int) -> tuple[int, int]:
        """Product of the blades at positions ``i`` and ``j``: (position, coefficient)."""
        bp = blade_product(self.bits_of(i), self.bits_of(j), self.signature)
        return int(self.position[bp.bits]), bp.coefficient

    def _row(self, i: int):
        a = int(self.bits[i])
        res = self.position[a ^ self.bits]
        return res, _signs(a, self.bits, self.neg_mask, self.null_mask)

    def table(self, kind: str = "gp"):
        """Dense ``(positions, signs)`` tables of shape ``(dim, dim)``, or None if too large."""
        if self.n > TABLE_MAX_N:
            return None
        if self._table is None:
            with self._lock:
                if self._table is None:
                    a = self.bits[:, None]
                    b = self.bits[None, :]
                    res = self.position[a ^ b]
                    self._table = (res, _signs(a, b, self.neg_mask, self.null_mask))
        res, signs = self._table
        if kind == "gp":
            return res, signs
        masked = self._masked.get(kind)
        if masked is None:
            gi = self.grades[:, None]
            gj = self.grades[None, :]
            masked = signs * _grade_mask(kind, gi, gj, self.grades[res])
            self._masked[kind] = masked
        return res, masked

    def row(self, i: int, kind: str = "gp"):
        """Result positions and signed coefficients of ``E_i * E_j`` for all j.

        ``kind`` restricts the product by grades: ``gp`` (geometric), ``outer``,
        ``inner`` (grade |r-s|), ``lc``/``rc`` (left/right contraction),
        ``scalar`` (grade 0 only).
        """
        tab = self.table(kind)
        if tab is not None:
            return tab[0][i], tab[1][i]
        res, sgn = self._row(i)
        if kind != "gp":
            sgn = sgn * _grade_mask(kind, self.grades[i], self.grades, self.grades[res])
        return res, sgn


def _grade_mask(kind, gi, gj, gr):
    if kind == "outer":
        return gr == gi + gj
    if kind == "inner":
        return gr == np.abs(gi - gj)
    if kind == "lc":
        return gr == gj - gi
    if kind == "rc":
        return gr == gi - gj
    if kind == "scalar":
        return gr == 0
    raise GAError(f"unknown product kind {kind!r}")


def _join_indices(idx) -> str:
    if all(i < 10 for i in idx):
        return "e" + "".join(str(i) for i in idx)
    return "e" + "_".join(str(i) for i in idx)


@lru_cache(maxsize=None)
def _algebra(sig: Signature) -> Algebra:
    return Algebra(sig)


def get_algebra(p, q: int = 0, r: int = 0) -> Algebra:
    """Shared :class:`Algebra` for ``(p, q, r)``, a :class:`Signature` or text like ``"2,0,0"``."""
    if isinstance(p, Algebra):
        return p
    if isinstance(p, Signature):
        return _algebra(p)
    if isinstance(p, str):
        return _algebra(Signature.parse(p))
    if isinstance(p, (tuple, list)):
        return _algebra(Signature(*p))
    return _algebra(Signature(p, q, r))
