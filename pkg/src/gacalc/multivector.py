"""Dense multivector values and their ring, grade and involution operations."""

from __future__ import annotations

import math
import numbers
from fractions import Fraction

import numpy as np

from .algebra import Algebra, get_algebra, reorder_sign
from .errors import (DegenerateMetricError, GAError, IndefiniteNormError,
                     SignatureMismatchError)
from .scalars import RationalFunction, scalar_from_json, scalar_json, scalar_text

_SCALAR_TYPES = (numbers.Number, RationalFunction)


def _is_scalar(x) -> bool:
    return isinstance(x, _SCALAR_TYPES) and not isinstance(x, Multivector)


def _exact(x) -> bool:
    return isinstance(x, (numbers.Rational, RationalFunction))


def as_coeff_array(values, dim: int | None = None) -> np.ndarray:
    """Coefficient array: float64 if any entry is inexact, else an object array of exact scalars."""
    if isinstance(values, np.ndarray) and values.dtype != object:
        arr = values.astype(float)
    else:
        vals = list(values)
        if all(_exact(v) for v in vals):
            arr = objarray([v if isinstance(v, RationalFunction) else Fraction(v) for v in vals])
        else:
            arr = np.array([float(v) for v in vals], dtype=float)
    if dim is not None and arr.shape != (dim,):
        raise GAError(f"expected {dim} coefficients, got {arr.shape[0] if arr.ndim else 0}")
    return arr


def objarray(values) -> np.ndarray:
    arr = np.empty(len(values), dtype=object)
    arr[:] = values
    return arr


def _to_float(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        try:
            return arr.astype(float)
        except TypeError as exc:
            raise GAError("cannot mix rational-function and float coefficients") from exc
    return arr


def _unify(a: np.ndarray, b: np.ndarray):
    if a.dtype == object and b.dtype == object:
        return a, b
    return _to_float(a), _to_float(b)


class Multivector:
    """A multivector of an algebra ``G(p,q,r)``.

    ``coeffs`` holds the ``2**n`` coefficients in graded-lex order; it is a
    float64 array, or an object array of Fractions / rational functions for
    exact work.  Operators:

    ``+ -`` sums, ``*`` geometric product, ``^`` outer product, ``|`` inner
    ("fat dot") product, ``~`` reverse, ``**`` integer power, ``&``
    commutator product.
    """

    __slots__ = ("algebra", "coeffs", "model")
    __array_priority__ = 1000

    def __init__(self, algebra, coeffs, model=None):
        self.algebra: Algebra = get_algebra(algebra)
        self.coeffs = as_coeff_array(coeffs, self.algebra.dim)
        self.model = model

    # -- construction helpers ---------------------------------------------
    @classmethod
    def _raw(cls, algebra, coeffs, model=None):
        mv = object.__new__(cls)
        mv.algebra, mv.coeffs, mv.model = algebra, coeffs, model
        return mv

    def _new(self, coeffs):
        return Multivector._raw(self.algebra, coeffs, self.model)

    @classmethod
    def scalar(cls, algebra, value, model=None):
        alg = get_algebra(algebra)
        vals = [0] * alg.dim
        vals[0] = value
        if isinstance(value, RationalFunction):
            vals = [RationalFunction()] * alg.dim
            vals[0] = value
        return cls(alg, vals, model)

    @classmethod
    def zero(cls, algebra, model=None):
        return cls.scalar(algebra, 0, model)

    @classmethod
    def blade(cls, algebra, position: int, value=1, model=None):
        alg = get_algebra(algebra)
        vals = [0] * alg.dim
        vals[position] = value
        return cls(alg, vals, model)

    @classmethod
    def from_vector(cls, algebra, values, model=None):
        """Grade-1 multivector with coefficients ``values`` on ``e1..en``."""
        alg = get_algebra(algebra)
        vals = [0] * alg.dim
        for k, v in enumerate(values):
            vals[1 + k] = v
        return cls(alg, vals, model)

    @classmethod
    def rand(cls, algebra, rng=None, model=None):
        alg = get_algebra(algebra)
        rng = np.random.default_rng(rng)
        return cls._raw(alg, rng.random(alg.dim), model)

    # -- basic protocol ------------------------------------------------------
    @property
    def signature(self):
        return self.algebra.signature

    @property
    def exact(self) -> bool:
        return self.coeffs.dtype == object

    def __len__(self):
        return self.algebra.dim

    def _check(self, other: "Multivector"):
        if other.algebra is not self.algebra:
            raise SignatureMismatchError(
                f"signature mismatch: {self.signature} vs {other.signature}")

    def _lift(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return other
        if _is_scalar(other):
            return Multivector.scalar(self.algebra, other, self.model)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = _unify(self.coeffs, o.coeffs)
        return self._new(a + b)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.coeffs)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = _unify(self.coeffs, o.coeffs)
        return self._new(a - b)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def scale(self, c):
        if isinstance(c, float) or not _exact(c):
            return self._new(_to_float(self.coeffs) * float(c))
        if self.exact:
            return self._new(objarray([c * x for x in self.coeffs]))
        return self._new(self.coeffs * float(c))

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.gp(other)

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            if other == 0:
                raise ZeroDivisionError("multivector divided by zero scalar")
            if _exact(other):
                return self.scale(1 / Fraction(other) if not isinstance(other, RationalFunction) else 1 / other)
            return self.scale(1.0 / other)
        raise TypeError("division of multivectors is ambiguous; multiply by inverse() instead")

    def __xor__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.product(o, "outer")

    def __rxor__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o.product(self, "outer")

    def __or__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.product(o, "inner")

    def __ror__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o.product(self, "inner")

    def __and__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.commutator(o)

    def __invert__(self):
        return self.reverse()

    def __pow__(self, k):
        from .analytic import int_power
        return int_power(self, k)

    def __eq__(self, other):
        if isinstance(other, Multivector):
            if other.algebra is not self.algebra:
                return False
            a, b = _unify(self.coeffs, other.coeffs)
            return bool(np.all(a == b))
        if _is_scalar(other):
            return self == Multivector.scalar(self.algebra, other)
        return NotImplemented

    __hash__ = None

    def equals(self, other, tol: float = 0.0) -> bool:
        """Coefficient-wise comparison within ``tol`` (exact when ``tol == 0`` on exact data)."""
        o = self._lift(other)
        a, b = _unify(self.coeffs, o.coeffs)
        if a.dtype == object:
            return bool(np.all(a == b))
        return bool(np.all(np.abs(a - b) <= tol))

    # -- products --------------------------------------------------------------
    def product(self, other: "Multivector", kind: str = "gp") -> "Multivector":
        """Bilinear product of the given ``kind`` (see :meth:`Algebra.row`)."""
        self._check(other)
        alg = self.algebra
        a, b = _unify(self.coeffs, other.coeffs)
        if a.dtype != object:
            tab = alg.table(kind)
            if tab is not None:
                res, signs = tab
                w = signs * np.outer(a, b)
                return self._new(np.bincount(res.ravel(), weights=w.ravel(), minlength=alg.dim))
            out = np.zeros(alg.dim)
            for i in np.flatnonzero(a):
                res, sgn = alg.row(i, kind)
                out[res] += a[i] * sgn * b
            return self._new(out)
        zero = _zero_like(a)
        out = objarray([zero] * alg.dim)
        nz_b = [j for j in range(alg.dim) if b[j] != 0]
        for i in range(alg.dim):
            ai = a[i]
            if ai == 0:
                continue
            res, sgn = alg.row(i, kind)
            for j in nz_b:
                s = sgn[j]
                if s:
                    t = ai * b[j]
                    out[res[j]] = out[res[j]] + t if s > 0 else out[res[j]] - t
        return self._new(out)

    def gp(self, other):
        return self.product(other, "gp")

    def outer(self, other):
        return self.product(self._lift(other), "outer")

    def inner(self, other):
        return self.product(self._lift(other), "inner")

    def lc(self, other):
        """Left contraction."""
        return self.product(self._lift(other), "lc")

    def rc(self, other):
        """Right contraction."""
        return self.product(self._lift(other), "rc")

    def scalar_product(self, other):
        return self.product(self._lift(other), "scalar").coeffs[0]

    def commutator(self, other):
        o = self._lift(other)
        return (self.gp(o) - o.gp(self)) / 2

    def regressive(self, other):
        """Regressive (vee) product through the metric-free complement."""
        o = self._lift(other)
        return (self.complement() ^ o.complement()).uncomplement()

    def sandwich(self, x):
        return self.gp(x).gp(self.reverse())

    # -- grades and involutions --------------------------------------------------
    def grade(self, k: int) -> "Multivector":
        if not 0 <= k <= self.algebra.n:
            raise GAError(f"grade {k} out of range 0..{self.algebra.n}")
        keep = self.algebra.grades == k
        out = self.coeffs.copy()
        out[~keep] = _zero_like(out)
        return self._new(out)

    def grades(self) -> list[int]:
        """Grades with a nonzero coefficient."""
        nz = np.array([c != 0 for c in self.coeffs], dtype=bool)
        return sorted(set(self.algebra.grades[nz].tolist()))

    def _grade_signs(self, fn):
        signs = np.array([fn(int(k)) for k in self.algebra.grades])
        if self.exact:
            return self._new(objarray([c if s > 0 else -c for c, s in zip(self.coeffs, signs)]))
        return self._new(self.coeffs * signs)

    def reverse(self):
        return self._grade_signs(lambda k: -1 if (k * (k - 1) // 2) % 2 else 1)

    def involute(self):
        """Main (grade) involution."""
        return self._grade_signs(lambda k: -1 if k % 2 else 1)

    def conjugate(self):
        return self._grade_signs(lambda k: -1 if (k * (k + 1) // 2) % 2 else 1)

    # -- duals ----------------------------------------------------------------------
    def pseudoscalar(self):
        return Multivector.blade(self.algebra, self.algebra.dim - 1, 1, self.model)

    def dual(self):
        """``A * I``; requires a non-degenerate metric."""
        if self.signature.r:
            raise DegenerateMetricError("pseudoscalar is not invertible (I^2 = 0); use the Hodge dual")
        return self.gp(self.pseudoscalar())

    def undual(self):
        if self.signature.r:
            raise DegenerateMetricError("pseudoscalar is not invertible (I^2 = 0); use the Hodge dual")
        I = self.pseudoscalar()
        return self.gp(I.reverse()).scale(_pseudo_inv_factor(self.algebra))

    def _permute(self, left: bool, inverse: bool = False):
        alg = self.algebra
        full = alg.dim - 1
        out = [None] * alg.dim
        for pos in range(alg.dim):
            s_bits = int(alg.bits[pos])
            c_bits = full ^ s_bits
            sign = reorder_sign(c_bits, s_bits) if left else reorder_sign(s_bits, c_bits)
            target = int(alg.position[c_bits])
            if inverse:
                out[pos] = self.coeffs[target] if sign > 0 else -self.coeffs[target]
            else:
                out[target] = self.coeffs[pos] if sign > 0 else -self.coeffs[pos]
        return self._new(objarray(out) if self.exact else np.array(out, dtype=float))

    def complement(self):
        """Left complement: ``e_S -> s e_{S^c}`` with ``(s e_{S^c}) e_S = I`` in a unit metric."""
        return self._permute(left=True)

    def uncomplement(self):
        return self._permute(left=True, inverse=True)

    def right_complement(self):
        """``e_S -> s e_{S^c}`` with ``e_S ^ (s e_{S^c}) = I``."""
        return self._permute(left=False)

    def right_uncomplement(self):
        return self._permute(left=False, inverse=True)

    # -- norms ------------------------------------------------------------------
    def norm_squared(self):
        return self.scalar_product(self.reverse())

    def norm(self):
        sq = self.norm_squared()
        if isinstance(sq, RationalFunction):
            raise GAError("norm is not defined over rational-function coefficients")
        if sq < 0:
            raise IndefiniteNormError(f"indefinite norm: <A ~A>_0 = {sq}")
        if isinstance(sq, Fraction):
            num, den = math.isqrt(sq.numerator), math.isqrt(sq.denominator)
            if num * num == sq.numerator and den * den == sq.denominator:
                return Fraction(num, den)
        return math.sqrt(sq)

    def normalize(self):
        nrm = self.norm()
        if nrm == 0:
            raise GAError("cannot normalize a multivector of zero norm")
        return self / nrm

    # -- numerics and views ---------------------------------------------------------
    def clean(self, tol: float = 1e-12):
        if self.exact:
            return self
        out = self.coeffs.copy()
        out[np.abs(out) < tol] = 0.0
        return self._new(out)

    def __abs__(self):
        if self.exact:
            return self._new(objarray([abs(c) for c in self.coeffs]))
        return self._new(np.abs(self.coeffs))

    def view_coeffs(self) -> np.ndarray:
        """Coefficients in the displayed basis (the null basis for CGA values)."""
        if self.model is not None and hasattr(self.model, "to_display"):
            return self.model.to_display(self.coeffs)
        return self.coeffs

    def vector(self) -> list:
        """Displayed coefficients in graded-lex order."""
        return list(self.view_coeffs())

    def coeff_array(self) -> np.ndarray:
        """Coefficients in the orthonormal basis used for computation."""
        return self.coeffs

    def scalar_part(self):
        return self.coeffs[0]

    def to_float(self):
        return self._new(_to_float(self.coeffs))

    def _positions(self, key) -> list[int]:
        alg = self.algebra
        names = self.basis_names()
        if isinstance(key, str):
            if key.startswith("G") and key[1:].isdigit():
                return alg.grade_positions(int(key[1:])).tolist()
            if key in names:
                return [names.index(key)]
            raise GAError(f"unknown basis element {key!r}")
        if isinstance(key, Multivector):
            nz = [i for i, c in enumerate(key.coeffs) if c != 0]
            if len(nz) == 1 and key.coeffs[nz[0]] == 1:
                return nz
            raise GAError("slicing by multivector requires a single unit basis blade")
        if isinstance(key, range):
            key = list(key)
        if isinstance(key, (list, tuple)):
            out = []
            for k in key:
                out.extend(self._positions(k))
            return out
        k = int(key)
        if not 1 <= k <= alg.dim:
            raise IndexError(f"position {k} out of range 1..{alg.dim}")
        return [k - 1]

    def slice(self, key):
        """Coefficients selected by 1-based position(s), basis name or grade tag ``"Gk"``.

        A single integer or name returns one coefficient, anything else a list.
        """
        pos = self._positions(key)
        view = self.view_coeffs()
        if isinstance(key, (int, np.integer)) or (isinstance(key, str) and not key.startswith("G")):
            return view[pos[0]]
        if isinstance(key, Multivector):
            return view[pos[0]]
        return [view[p] for p in pos]

    def sub(self, key):
        """Sub-multivector keeping only the selected positions."""
        keep = np.zeros(self.algebra.dim, dtype=bool)
        keep[self._positions(key)] = True
        out = self.view_coeffs().copy()
        out[~keep] = _zero_like(out)
        if self.model is not None and hasattr(self.model, "from_display"):
            out = self.model.from_display(out)
        return self._new(out)

    def __getitem__(self, key):
        return self.slice(key)

    def basis_names(self) -> list[str]:
        if self.model is not None:
            return self.model.basis_names()
        return self.algebra.basis_names

    def to_text(self) -> str:
        if self.model is not None:
            return self.model.to_text(self)
        return format_terms(self.coeffs, self.algebra.basis_names)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Multivector({self.signature}, {self.to_text()})"

    def to_json(self) -> dict:
        return {"signature": list(self.signature), "coeffs": [scalar_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Multivector":
        return cls(get_algebra(tuple(obj["signature"])), [scalar_from_json(c) for c in obj["coeffs"]])

    # -- analytic helpers (matrix representation) ------------------------------------
    def matrix(self):
        from .analytic import to_matrix
        return to_matrix(self)

    def inverse(self):
        from .analytic import inverse
        return inverse(self)

    def apply(self, f):
        from .analytic import analytic_function
        return analytic_function(self, f)

    def exp(self):
        from .analytic import analytic_function
        return analytic_function(self, "exp")

    def log(self):
        from .analytic import analytic_function
        return analytic_function(self, "log")

    def sqrt(self):
        from .analytic import analytic_function
        return analytic_function(self, "sqrt")


def _zero_like(arr: np.ndarray):
    if arr.dtype != object:
        return 0.0
    for c in arr:
        if isinstance(c, RationalFunction):
            return RationalFunction()
    return Fraction(0)


def _pseudo_inv_factor(alg: Algebra):
    """1 / (I ~I), which is +-1 in a non-degenerate metric."""
    return Fraction(1) if alg.signature.q % 2 == 0 else Fraction(-1)


def format_terms(coeffs, names) -> str:
    terms = [f"( {scalar_text(c)} )*{name}" for c, name in zip(coeffs, names) if c != 0]
    return "+".join(terms) if terms else "0"
