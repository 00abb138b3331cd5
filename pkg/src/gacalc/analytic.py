"""Left-multiplication matrix representation and the functions built on it.

Column ``j`` of ``to_matrix(A)`` holds the coefficients of ``A * E_j``, so the
map is an algebra homomorphism into ``2**n x 2**n`` matrices.  Inverses are
linear solves against ``e0``; analytic functions are matrix functions whose
first column is read back as a multivector.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction

import numpy as np
import scipy.linalg

from .errors import (BranchViolationError, DefectiveRepresentationError, GAError,
                     NonRealResultError, NotInvertibleError)
from .multivector import Multivector, _zero_like, objarray

#: eigenvector matrices with a larger condition number count as defective
DEFECTIVE_COND = 1e10
#: largest imaginary residue discarded from a real result
IMAG_TOL = 1e-8
#: reciprocal condition numbers below this make a float matrix singular
RCOND_MIN = 1e-14


def to_matrix(A: Multivector) -> np.ndarray:
    """``M_A`` with ``M_A @ B.coeffs == (A * B).coeffs``."""
    alg = A.algebra
    dim = alg.dim
    a = A.coeffs
    cols = np.arange(dim)
    if not A.exact:
        M = np.zeros((dim, dim))
        tab = alg.table()
        if tab is not None:
            res, signs = tab
            M[res, cols[None, :]] = a[:, None] * signs
            return M
        for i in np.flatnonzero(a):
            res, sgn = alg.row(i)
            M[res, cols] = a[i] * sgn
        return M
    zero = _zero_like(a)
    M = np.empty((dim, dim), dtype=object)
    M[:] = zero
    for i in range(dim):
        ai = a[i]
        if ai == 0:
            continue
        res, sgn = alg.row(i)
        for j in range(dim):
            s = sgn[j]
            if s:
                M[res[j], j] = ai if s > 0 else -ai
    return M


def from_first_column(M, like: Multivector) -> Multivector:
    col = M[:, 0]
    if col.dtype == object:
        return like._new(objarray(list(col)))
    return like._new(np.asarray(col, dtype=float).copy())


def exact_solve(M: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Gaussian elimination over an exact field (Fractions or rational functions).

    ``rhs`` may be a vector or a matrix of right-hand sides.
    """
    n = M.shape[0]
    A = M.copy()
    B = rhs.reshape(n, -1).copy()
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r, col] != 0), None)
        if piv is None:
            raise NotInvertibleError("singular matrix over an exact field")
        if piv != col:
            A[[col, piv]] = A[[piv, col]]
            B[[col, piv]] = B[[piv, col]]
        p = A[col, col]
        inv_p = 1 / p
        A[col, col:] = [x * inv_p if x != 0 else x for x in A[col, col:]]
        B[col] = [x * inv_p if x != 0 else x for x in B[col]]
        for r in range(n):
            if r == col:
                continue
            f = A[r, col]
            if f == 0:
                continue
            for c in range(col, n):
                if A[col, c] != 0:
                    A[r, c] = A[r, c] - f * A[col, c]
            for c in range(B.shape[1]):
                if B[col, c] != 0:
                    B[r, c] = B[r, c] - f * B[col, c]
    return B.reshape(rhs.shape)


def float_solve(M: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """LU with partial pivoting; singular or badly conditioned systems raise."""
    try:
        with warnings.catch_warnings():
            # singularity is reported through the condition estimate below
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(M, check_finite=True)
    except (ValueError, np.linalg.LinAlgError) as exc:
        raise NotInvertibleError(str(exc)) from exc
    anorm = np.linalg.norm(M, 1)
    rcond = scipy.linalg.lapack.dgecon(lu, anorm, norm="1")[0] if anorm else 0.0
    if not rcond > RCOND_MIN:
        cond = math.inf if rcond == 0 else 1 / rcond
        raise NotInvertibleError(f"matrix is singular to working precision (condition ~ {cond:.3g})")
    return scipy.linalg.lu_solve((lu, piv), rhs)


def inverse(A: Multivector) -> Multivector:
    """``X`` with ``A X = X A = 1``."""
    M = to_matrix(A)
    if A.exact:
        rhs = objarray([A.coeffs[0] * 0 + 1] + [_zero_like(A.coeffs)] * (A.algebra.dim - 1))
        try:
            x = exact_solve(M, rhs)
        except NotInvertibleError:
            raise NotInvertibleError("multivector not invertible") from None
        return A._new(objarray(list(x)))
    rhs = np.zeros(A.algebra.dim)
    rhs[0] = 1.0
    try:
        x = float_solve(M, rhs)
    except NotInvertibleError as exc:
        raise NotInvertibleError(f"multivector not invertible: {exc}") from None
    return A._new(x)


def int_power(A: Multivector, k) -> Multivector:
    if isinstance(k, float) and k.is_integer():
        k = int(k)
    if not isinstance(k, (int, np.integer)):
        raise GAError("multivector powers must have an integer exponent")
    k = int(k)
    if k < 0:
        A, k = inverse(A), -k
    result = Multivector.scalar(A.algebra, 1, A.model)
    base = A
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def _recip(f):
    return lambda z: 1 / f(z)


def _of_recip(f):
    return lambda z: f(1 / z)


FUNCTIONS = {
    "exp": np.exp, "log": np.log, "sqrt": np.sqrt,
    "sin": np.sin, "cos": np.cos, "tan": np.tan,
    "cot": _recip(np.tan), "sec": _recip(np.cos), "csc": _recip(np.sin),
    "sinh": np.sinh, "cosh": np.cosh, "tanh": np.tanh,
    "coth": _recip(np.tanh), "sech": _recip(np.cosh), "csch": _recip(np.sinh),
    "asin": np.arcsin, "acos": np.arccos, "atan": np.arctan,
    "acot": _of_recip(np.arctan), "asec": _of_recip(np.arccos), "acsc": _of_recip(np.arcsin),
    "asinh": np.arcsinh, "acosh": np.arccosh, "atanh": np.arctanh,
    "acoth": _of_recip(np.arctanh), "asech": _of_recip(np.arccosh), "acsch": _of_recip(np.arcsinh),
}


def _on_real_axis(w, tol):
    return np.abs(w.imag) <= tol * np.maximum(1.0, np.abs(w.real))


def _branch_cut(name: str, w: np.ndarray, tol: float = 1e-12) -> bool:
    """True when an eigenvalue lies on the function's principal branch cut."""
    real = _on_real_axis(w, tol)
    x = w.real
    imag_axis = np.abs(w.real) <= tol * np.maximum(1.0, np.abs(w.imag))
    y = w.imag
    cuts = {
        "log": real & (x <= 0),
        "sqrt": real & (x < 0),
        "asin": real & (np.abs(x) > 1),
        "acos": real & (np.abs(x) > 1),
        "atanh": real & (np.abs(x) >= 1),
        "acoth": real & (np.abs(x) <= 1),
        "acosh": real & (x < 1),
        "asech": real & ((x <= 0) | (x > 1)),
        "asec": real & (np.abs(x) < 1),
        "acsc": real & (np.abs(x) < 1),
        "atan": imag_axis & (np.abs(y) >= 1),
        "acot": imag_axis & (np.abs(y) <= 1),
        "asinh": imag_axis & (np.abs(y) > 1),
        "acsch": imag_axis & (np.abs(y) < 1),
    }
    mask = cuts.get(name)
    return bool(mask is not None and np.any(mask))


def _apply_hook(f, w):
    try:
        out = f(w)
        out = np.asarray(out, dtype=complex)
        if out.shape == w.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([complex(f(z)) for z in w])


def analytic_function(A: Multivector, f) -> Multivector:
    """Apply ``f`` (a name from :data:`FUNCTIONS` or a scalar callable) to ``A``."""
    A = A.to_float()
    M = to_matrix(A)
    if f == "exp":
        return from_first_column(scipy.linalg.expm(M), A)
    name = f if isinstance(f, str) else None
    if name is not None:
        if name not in FUNCTIONS:
            raise GAError(f"unknown function {name!r}")
        func = FUNCTIONS[name]
    else:
        func = f
    w, V = np.linalg.eig(M)
    cond = np.linalg.cond(V)
    if not cond < DEFECTIVE_COND:
        raise DefectiveRepresentationError(
            f"defective representation (eigenvector condition {cond:.3g})")
    if name is not None and _branch_cut(name, w):
        raise BranchViolationError(f"{name}: eigenvalue on the branch cut")
    with np.errstate(all="ignore"):
        fw = _apply_hook(func, w)
    if not np.all(np.isfinite(fw)):
        raise BranchViolationError("function is singular at an eigenvalue")
    # only the first column is needed: V diag(f(w)) V^-1 e0
    y = np.linalg.solve(V, np.eye(len(w))[:, 0])
    col = V @ (fw * y)
    scale = max(1.0, float(np.max(np.abs(col))))
    if np.max(np.abs(col.imag)) > IMAG_TOL * scale:
        raise NonRealResultError(
            f"non-real result (imaginary residue {np.max(np.abs(col.imag)):.3g})")
    return A._new(col.real.copy())


def _scalar_square(B: Multivector):
    sq = B * B
    rest = sq.coeffs[1:]
    if B.exact:
        return sq.coeffs[0] if all(c == 0 for c in rest) else None
    tol = 1e-12 * max(1.0, float(np.max(np.abs(sq.coeffs))))
    return float(sq.coeffs[0]) if np.all(np.abs(rest) <= tol) else None


def rotor_exp_bivector(theta, B: Multivector) -> Multivector:
    """``exp(-theta/2 * B)``, closed form whenever ``B**2`` is a scalar."""
    b2 = _scalar_square(B)
    if b2 is None:
        return analytic_function(B * (-theta / 2), "exp")
    if b2 == 0:
        half = Fraction(theta) / 2 if B.exact and isinstance(theta, (int, Fraction)) else theta / 2
        return 1 - B * half
    b2 = float(b2)
    theta = float(theta)
    if b2 < 0:
        w = math.sqrt(-b2)
        return math.cos(theta * w / 2) - B * (math.sin(theta * w / 2) / w)
    w = math.sqrt(b2)
    return math.cosh(theta * w / 2) - B * (math.sinh(theta * w / 2) / w)


def sandwich(R: Multivector, X: Multivector) -> Multivector:
    return R * X * ~R
