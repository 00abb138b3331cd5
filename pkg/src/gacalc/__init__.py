"""Geometric algebra of arbitrary signature ``G(p,q,r)``.

Dense multivectors over floats, exact rationals or rational functions of
``s``; matrix-representation inverses and analytic functions; projective
and conformal models; matrices of multivectors; and the ``gacalc`` CLI.
"""

from .algebra import Algebra, Signature, get_algebra
from .analytic import analytic_function, int_power, inverse, rotor_exp_bivector, to_matrix
from .errors import (BranchViolationError, DefectiveRepresentationError, DegenerateMetricError,
                     GAError, ImaginaryPointPairError, IndefiniteNormError, ModelError,
                     NonRealResultError, NotInvertibleError, SignatureMismatchError)
from .models import (CgaModel, GeometricEntity, PgaModel, angle_between, classify,
                     emit_geometry, hodge_dual)
from .multivector import Multivector
from .mvmatrix import MvMatrix, block, mm_add, mm_adjoint, mm_inverse, mm_mul, mm_solve, mm_transpose
from .parser import Session, evaluate_text, parse, render, tokenize
from .scalars import FLOAT, RATFUN, RATIONAL, RationalFunction


def GA(p, q: int = 0, r: int = 0) -> Algebra:
    """Algebra for signature ``(p, q, r)``; ``algebra.basis_names`` lists the blades."""
    return get_algebra(p, q, r)


def CGA(n: int) -> CgaModel:
    """Conformal model of ``R^n`` in ``G(n+1, 1, 0)``."""
    return CgaModel(n)


__all__ = [
    "Algebra", "Signature", "get_algebra", "GA", "CGA", "Multivector", "MvMatrix",
    "CgaModel", "PgaModel", "GeometricEntity", "RationalFunction",
    "to_matrix", "inverse", "int_power", "analytic_function", "rotor_exp_bivector",
    "angle_between", "classify", "emit_geometry", "hodge_dual",
    "block", "mm_add", "mm_mul", "mm_inverse", "mm_solve", "mm_transpose", "mm_adjoint",
    "Session", "evaluate_text", "parse", "render", "tokenize",
    "FLOAT", "RATIONAL", "RATFUN",
    "GAError", "SignatureMismatchError", "NotInvertibleError", "IndefiniteNormError",
    "DegenerateMetricError", "DefectiveRepresentationError", "BranchViolationError",
    "NonRealResultError", "ImaginaryPointPairError", "ModelError",
]
