"""Projective (PGA) and conformal (CGA) models on top of the dense kernel.

CGA is built on the diagonal metric ``[p+1, q+1, 0]``: ``e+`` is the last
positive generator and ``e-`` the last negative one.  The null vectors

    n0 = (e- + e+) / 2,    ni = e- - e+

are only a *view*: :class:`CgaModel` converts coefficient arrays between
the orthonormal basis used for computation and the null basis
``n0, e1, ..., ni`` used for display, parsing and slicing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import get_algebra, reorder_sign
from .errors import GAError, ImaginaryPointPairError, ModelError
from .multivector import Multivector, format_terms, objarray


class PgaModel:
    """Plane-based model ``G(n,0,1)``; the null generator ``e`` is the last one."""

    def __init__(self, n: int):
        if n < 1:
            raise GAError("PGA needs at least one Euclidean dimension")
        self.n = n
        self.algebra = get_algebra(n, 0, 1)
        self.e = self.blade(n + 1)
        self.I = Multivector.blade(self.algebra, self.algebra.dim - 1, 1, self)
        self.I_euclid = self._wedge(range(1, n + 1))

    def __repr__(self):
        return f"PgaModel({self.n})"

    def blade(self, i: int) -> Multivector:
        return Multivector.blade(self.algebra, i, 1, self)

    def _wedge(self, indices) -> Multivector:
        out = Multivector.scalar(self.algebra, 1, self)
        for i in indices:
            out = out ^ self.blade(i)
        return out

    def vector(self, values) -> Multivector:
        return Multivector.from_vector(self.algebra, list(values), self)

    def basis_names(self):
        return self.algebra.basis_names

    def to_text(self, mv):
        return format_terms(mv.coeffs, self.algebra.basis_names)

    def translator(self, b) -> Multivector:
        """Rotor translating encoded points by the Euclidean vector ``b``.

        Written ``1 + (b ^ e)/2``: with points encoded as ``(1 - e x) I_E`` this
        is the orientation that moves ``x`` to ``x + b``.
        """
        return 1 + (self.vector(b) ^ self.e) / 2

    def plane(self, normal, distance=0) -> Multivector:
        """``n - delta e``; a non-unit normal is normalized (flagged via ``plane.normalized``)."""
        n = np.asarray(normal, dtype=float) if not _all_exact(normal) else list(normal)
        norm2 = sum(c * c for c in n)
        if norm2 == 0:
            raise GAError("plane normal must be nonzero")
        if norm2 != 1:
            nrm = math.sqrt(float(norm2))
            n = [float(c) / nrm for c in n]
            distance = float(distance)
        return self.vector(n) - self.e * distance

    def point(self, *coords) -> Multivector:
        """``(1 - e x) I_E``; for the plane this equals ``complement(x e1 + y e2 + e3)``."""
        if len(coords) == 1 and not np.isscalar(coords[0]):
            coords = tuple(coords[0])
        if len(coords) != self.n:
            raise GAError(f"expected {self.n} coordinates")
        x = self.vector(coords)
        return (1 - self.e * x) * self.I_euclid

    def point_coords(self, P: Multivector) -> list:
        """Euclidean coordinates of a point trivector (``[P(e23), -P(e13)]`` in the plane)."""
        alg = self.algebra
        ibits = (1 << self.n) - 1
        ebit = 1 << self.n
        w = P.coeffs[alg.position_of(ibits)]
        if w == 0:
            raise GAError("ideal point (zero weight)")
        out = []
        for k in range(self.n):
            # -e e_k I_E lands on the blade e ^ e_{I_E without k}
            bits = ebit | (ibits ^ (1 << k))
            sign = -reorder_sign(1 << k, ibits) * reorder_sign(ebit, ibits ^ (1 << k))
            out.append(P.coeffs[alg.position_of(bits)] / w * sign)
        return out

    def line(self, point, direction) -> Multivector:
        """Line through ``point`` along ``direction``.

        In 3D this is ``v I_E - e (p ^ v) I_E``; in the plane the line is the
        vector ``n - delta e`` with ``n`` the unit normal.
        """
        if self.n == 2:
            vx, vy = (float(c) for c in direction)
            nrm = math.hypot(vx, vy)
            normal = (-vy / nrm, vx / nrm)
            delta = normal[0] * float(point[0]) + normal[1] * float(point[1])
            return self.vector(normal) - self.e * delta
        if self.n != 3:
            raise ModelError("lines are provided for the 2D and 3D models")
        v = self.vector(direction)
        p = self.vector(point)
        return v * self.I_euclid - self.e * (p ^ v) * self.I_euclid

    def hodge(self, A: Multivector) -> Multivector:
        return hodge_dual(A)


def hodge_dual(A: Multivector) -> Multivector:
    """Hodge star in ``G(n,0,1)``: ``e_S ^ *e_S = I`` for every basis blade.

    The Euclidean factor of each blade has unit norm, so the relation fixes
    only the sign of the complement.
    """
    sig = A.signature
    if sig.q != 0 or sig.r != 1:
        raise ModelError(f"Hodge dual needs a PGA signature [n,0,1], got {sig}")
    return A.right_complement()


class CgaModel:
    """Conformal model of ``R^{p,q}`` in ``G(p+1, q+1, 0)``."""

    def __init__(self, p: int, q: int = 0):
        if p + q < 1:
            raise GAError("CGA needs at least one base dimension")
        self.p, self.q = p, q
        self.base_dim = p + q
        self.algebra = alg = get_algebra(p + 1, q + 1, 0)
        n = alg.n
        self._eplus_index = p + 1
        self._eminus_index = n
        self._base_index = [k if k <= p else k + 1 for k in range(1, p + q + 1)]
        self.eplus = self._raw_blade(self._eplus_index)
        self.eminus = self._raw_blade(self._eminus_index)
        half = Fraction(1, 2)
        self.n0 = (self.eminus + self.eplus) * half
        self.ni = self.eminus - self.eplus
        # null-basis generators in display order
        gens = [self.n0] + [self._raw_blade(k) for k in self._base_index] + [self.ni]
        inv_gens = {1: self.eplus_in_display(), n: self.eminus_in_display()}
        self._T = self._outermorphism(gens)
        dgens = []
        for d in range(1, n + 1):
            if d == self._eplus_index:
                dgens.append(inv_gens[1])
            elif d == self._eminus_index:
                dgens.append(inv_gens[n])
            else:
                dgens.append(self._display_vector_of_base(d))
        self._Tinv = self._outermorphism(dgens)
        self._Tf = self._T.astype(float)
        self._Tinvf = self._Tinv.astype(float)
        self._names = [alg.basis_name(i, conformal=True) for i in range(alg.dim)]
        self.I = Multivector.blade(alg, alg.dim - 1, 1, self)

    def __repr__(self):
        return f"CgaModel({self.p},{self.q})"

    # -- basis bookkeeping ------------------------------------------------------
    def _raw_blade(self, i: int) -> Multivector:
        return Multivector.blade(self.algebra, i, 1, self)

    def eplus_in_display(self):
        # e+ = n0 - ni/2, written on display generators
        return self._raw_blade(1) - self._raw_blade(self.algebra.n) * Fraction(1, 2)

    def eminus_in_display(self):
        return self._raw_blade(1) + self._raw_blade(self.algebra.n) * Fraction(1, 2)

    def _display_vector_of_base(self, internal_index: int):
        k = self._base_index.index(internal_index)
        return self._raw_blade(k + 2)

    def _outermorphism(self, images) -> np.ndarray:
        """Matrix whose column for blade ``S`` holds the wedge of ``images[i]`` for ``i`` in ``S``.

        The outer product does not depend on the metric, so the same algebra
        serves both directions of the change of basis.
        """
        alg = self.algebra
        cols = []
        for pos in range(alg.dim):
            bits = alg.bits_of(pos)
            out = Multivector.scalar(alg, 1)
            for i in range(alg.n):
                if bits >> i & 1:
                    out = out ^ images[i]
            cols.append(list(out.coeffs))
        M = np.empty((alg.dim, alg.dim), dtype=object)
        for j, col in enumerate(cols):
            for i, c in enumerate(col):
                M[i, j] = c
        return M

    def to_display(self, coeffs) -> np.ndarray:
        if coeffs.dtype == object:
            return objarray(list(self._Tinv.dot(coeffs)))
        return self._Tinvf @ coeffs

    def from_display(self, coeffs) -> np.ndarray:
        if coeffs.dtype == object:
            return objarray(list(self._T.dot(coeffs)))
        return self._Tf @ coeffs

    def mv(self, display_coeffs) -> Multivector:
        """Multivector from coefficients given in the null basis."""
        arr = Multivector(self.algebra, display_coeffs).coeffs
        return Multivector._raw(self.algebra, self.from_display(arr), self)

    def basis_names(self):
        return self._names

    def basis_blade(self, name: str) -> Multivector:
        """Null-basis blade by display name (``n0``, ``e2``, ``n0e1ni``, ...)."""
        if name not in self._names:
            raise GAError(f"unknown CGA basis element {name!r}")
        vals = [0] * self.algebra.dim
        vals[self._names.index(name)] = 1
        return self.mv(vals)

    def to_text(self, mv: Multivector) -> str:
        return format_terms(self.to_display(mv.coeffs), self._names)

    def display_coeffs(self, mv: Multivector):
        return self.to_display(mv.coeffs)

    # -- embedding ------------------------------------------------------------------
    def euclidean(self, x) -> Multivector:
        """Base-space vector from coordinates or a multivector of the base (or this) algebra."""
        if isinstance(x, Multivector):
            if x.algebra is self.algebra:
                d = self.to_display(x.coeffs)
                comps = [d[k + 2] for k in range(self.base_dim)]
            elif x.algebra.n == self.base_dim:
                comps = [x.coeffs[1 + k] for k in range(self.base_dim)]
            else:
                raise GAError(f"cannot embed a multivector of {x.signature}")
        else:
            comps = list(x)
            if len(comps) != self.base_dim:
                raise GAError(f"expected {self.base_dim} coordinates")
        out = Multivector.zero(self.algebra, self)
        for k, c in enumerate(comps):
            if c != 0:
                out = out + self._raw_blade(self._base_index[k]) * c
        return out

    def push(self, x) -> Multivector:
        """Hestenes embedding ``x^2/2 ni + n0 + x``."""
        xv = self.euclidean(x)
        x2 = xv.scalar_product(xv)
        half = Fraction(1, 2) if xv.exact else 0.5
        return self.ni * (x2 * half) + self.n0 + xv

    def weight(self, X: Multivector):
        """Coefficient of ``n0`` in the null basis (``-X . ni``)."""
        return -(X.grade(1).scalar_product(self.ni))

    def pull(self, X: Multivector) -> Multivector:
        """Inverse of :meth:`push`: Euclidean part after scaling the ``n0`` weight to 1."""
        w = self.weight(X)
        if w == 0 or (not X.exact and abs(w) < 1e-300):
            raise GAError("ideal point: the n0 coefficient is zero")
        d = self.to_display(X.coeffs)
        out = Multivector.zero(self.algebra, self)
        for k in range(self.base_dim):
            c = d[k + 2]
            if c != 0:
                out = out + self._raw_blade(self._base_index[k]) * (c / w)
        return out

    def coords(self, X: Multivector) -> list[float]:
        """Euclidean coordinates of a conformal point."""
        pulled = self.to_display(self.pull(X).coeffs)
        return [float(pulled[k + 2]) for k in range(self.base_dim)]

    def translator(self, v) -> Multivector:
        """``1 - (v ^ ni)/2``."""
        half = Fraction(1, 2)
        return 1 - (self.euclidean(v) ^ self.ni) * half

    # -- duality, constructors, meet ---------------------------------------------------
    def dual(self, A: Multivector) -> Multivector:
        return A.dual()

    def undual(self, A: Multivector) -> Multivector:
        return A.undual()

    def point_pair(self, p1, p2):
        return self.push(p1) ^ self.push(p2)

    def line(self, p1, p2):
        return self.push(p1) ^ self.push(p2) ^ self.ni

    def circle(self, p1, p2, p3):
        return self.push(p1) ^ self.push(p2) ^ self.push(p3)

    def plane3(self, p1, p2, p3):
        return self.push(p1) ^ self.push(p2) ^ self.push(p3) ^ self.ni

    def sphere(self, p1, p2, p3, p4):
        return self.push(p1) ^ self.push(p2) ^ self.push(p3) ^ self.push(p4)

    def sphere_inner(self, center, radius) -> Multivector:
        """``push(c) - r^2/2 ni``."""
        r2 = radius * radius
        half = Fraction(1, 2) if isinstance(r2, (int, Fraction)) else 0.5
        return self.push(center) - self.ni * (r2 * half)

    def plane_inner(self, normal, distance) -> Multivector:
        """``n + delta ni``."""
        return self.euclidean(normal) + self.ni * distance

    def intersect(self, *objs, inner=False) -> Multivector:
        """Meet ``(o1* ^ o2* [^ o3*])*``.

        ``inner`` says whether the arguments are already inner (dual)
        representations: one bool for all of them or one per argument.
        """
        if len(objs) < 2:
            raise GAError("intersect needs at least two entities")
        flags = list(inner) if isinstance(inner, (list, tuple)) else [inner] * len(objs)
        acc = None
        for o, is_inner in zip(objs, flags):
            d = o if is_inner else o.dual()
            acc = d if acc is None else acc ^ d
        return acc.dual()

    # -- entity analysis -----------------------------------------------------------------
    def extract_point_pair(self, B: Multivector, tol: float = 1e-9):
        """Split a point-pair bivector into its two conformal points.

        Uses the projector ``P = (1 + B/sqrt(B^2))/2`` and returns
        ``-~P (B.ni) P`` and ``P (B.ni) ~P``, each scaled to unit ``n0`` weight.
        """
        B = B.to_float().grade(2)
        sq = float(B.scalar_product(B))
        scale = float(np.max(np.abs(B.coeffs))) ** 2 or 1.0
        if abs(sq) <= tol * scale:
            c = B * self.ni * B
            c = c.grade(1)
            return (self._unit(c),) * 2
        if sq < 0:
            raise ImaginaryPointPairError(f"imaginary point pair (B^2 = {sq:.6g} < 0)", sq)
        P = (1 + B / math.sqrt(sq)) * 0.5
        Bn = B | self.ni.to_float()
        b1 = -(~P) * Bn * P
        b2 = P * Bn * ~P
        return self._unit(b1.grade(1)), self._unit(b2.grade(1))

    def _unit(self, X: Multivector) -> Multivector:
        w = self.weight(X)
        if abs(w) < 1e-300:
            raise GAError("ideal point: the n0 coefficient is zero")
        return X / w

    def angle(self, o1: Multivector, o2: Multivector) -> float:
        return angle_between(o1, o2)

    def classify(self, X: Multivector, tol: float = 1e-9) -> "GeometricEntity":
        return classify(self, X, tol)


def angle_between(o1: Multivector, o2: Multivector) -> float:
    """``acos(<o1 . o2> / (sqrt|<o1 ~o1>| sqrt|<o2 ~o2>|))``, clamped to [-1, 1]."""
    n1 = abs(float(o1.norm_squared()))
    n2 = abs(float(o2.norm_squared()))
    if n1 == 0 or n2 == 0:
        raise GAError("angle of a zero-norm entity")
    c = float((o1 | o2).scalar_part()) / (math.sqrt(n1) * math.sqrt(n2))
    return math.acos(max(-1.0, min(1.0, c)))


@dataclass
class GeometricEntity:
    kind: str
    params: dict = field(default_factory=dict)
    imaginary: bool = False

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        out.update(self.params)
        if self.imaginary:
            out["imaginary"] = True
        return out


def _all_exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def _unitize(v):
    v = np.asarray(v, dtype=float)
    nrm = np.linalg.norm(v)
    return v / nrm if nrm else v


def _as3(v):
    out = np.zeros(3)
    out[: len(v)] = v
    return out


def classify(model: CgaModel, X: Multivector, tol: float = 1e-9) -> GeometricEntity:
    """Recover the kind and parameters of a conformal entity (Euclidean bases only).

    Grade 1 is read as an inner representation (point, sphere or plane; circle
    or line in 2D), higher grades as outer representations.
    """
    if model.q != 0 or model.base_dim not in (2, 3):
        raise ModelError("classification covers the conformal models of R^2 and R^3")
    X = X.to_float()
    scale = float(np.max(np.abs(X.coeffs))) if X.coeffs.size else 0.0
    if scale == 0:
        raise GAError("not a conformal entity: zero multivector")
    X = X / scale
    X = X.clean(tol)
    grades = X.grades()
    if len(grades) != 1:
        raise GAError(f"not a conformal entity: mixed grades {grades}")
    k = grades[0]
    n = model.algebra.n
    if k == 1:
        return _classify_vector(model, X, tol)
    if k == n - 1:
        return _classify_vector(model, X.dual().clean(tol), tol)
    if k == 2:
        return _classify_pair(model, X, tol)
    if k == 3 and model.base_dim == 3:
        return _classify_circle_line(model, X, tol)
    raise GAError(f"not a conformal entity: grade {k}")


def _round_or_flat_3d(model):
    return ("sphere", "plane") if model.base_dim == 3 else ("circle", "line")


def _classify_vector(model, X, tol):
    d = model.to_display(X.coeffs)
    dim = model.base_dim
    euc = np.array([d[k + 2] for k in range(dim)], dtype=float)
    w = float(d[1])
    inf = float(d[model.algebra.n])
    round_kind, flat_kind = _round_or_flat_3d(model)
    size = max(abs(w), np.max(np.abs(euc)), abs(inf), 1e-300)
    if abs(w) <= tol * size:
        nrm = float(np.linalg.norm(euc))
        if nrm <= tol * size:
            raise GAError("not a conformal entity: vector at infinity")
        normal = euc / nrm
        delta = inf / nrm
        if flat_kind == "line":
            direction = np.array([-normal[1], normal[0]])
            return GeometricEntity("line", {"direction": direction.tolist(),
                                            "support": (normal * delta).tolist(),
                                            "normal": normal.tolist(), "distance": delta})
        return GeometricEntity("plane", {"normal": normal.tolist(), "distance": delta})
    Y = X / w
    r2 = float(Y.scalar_product(Y))
    center = (euc / w).tolist()
    if abs(r2) <= tol * max(1.0, float(np.dot(center, center))):
        return GeometricEntity("point", {"coords": center})
    return GeometricEntity(round_kind, {"center": center, "radius": math.sqrt(abs(r2))},
                           imaginary=r2 < 0)


def _flat_part(model, X, tol):
    return (X ^ model.ni.to_float()).clean(tol)


def _classify_pair(model, X, tol):
    if not np.any(_flat_part(model, X, tol).coeffs):
        # flat point p ^ ni
        c = -(X | model.n0.to_float())
        c = c.grade(1)
        d = model.to_display(c.coeffs)
        w = float(d[1])
        coords = [float(d[k + 2]) / w for k in range(model.base_dim)]
        return GeometricEntity("point", {"coords": coords, "flat": True})
    try:
        b1, b2 = model.extract_point_pair(X, tol)
    except ImaginaryPointPairError:
        center, r2 = _round_center_radius(model, X)
        return GeometricEntity("point-pair", {"center": center, "radius": math.sqrt(abs(r2))},
                               imaginary=True)
    p1, p2 = model.coords(b1), model.coords(b2)
    center = ((np.array(p1) + np.array(p2)) / 2).tolist()
    radius = float(np.linalg.norm(np.array(p1) - np.array(p2)) / 2)
    return GeometricEntity("point-pair", {"p1": p1, "p2": p2, "center": center, "radius": radius})


def _round_center_radius(model, X):
    """Center and signed squared radius of a round (outer representation)."""
    ni = model.ni.to_float()
    c = (X * ni * X).grade(1)
    center = model.coords(c)
    nix = ni.lc(X)
    denom = float(nix.scalar_product(nix.involute()))
    r2 = float(X.scalar_product(X.involute())) / denom
    return center, r2


def _classify_circle_line(model, X, tol):
    flat = _flat_part(model, X, tol)
    if not np.any(flat.coeffs):
        d = model.to_display(X.coeffs)
        alg = model.algebra
        names = model.basis_names()
        dim = model.base_dim
        v = np.zeros(dim)
        for k in range(dim):
            v[k] = float(d[names.index(f"n0e{k + 1}ni")])
        m = np.zeros((3, 3))
        for i in range(dim):
            for j in range(i + 1, dim):
                m[i, j] = float(d[names.index(f"e{i + 1}{j + 1}ni")])
        w = np.array([m[1, 2], -m[0, 2], m[0, 1]])
        v3 = _as3(v)
        vv = float(v3 @ v3)
        if vv == 0:
            raise GAError("not a conformal entity: degenerate line")
        support = np.cross(v3, w) / vv
        return GeometricEntity("line", {"direction": _unitize(v).tolist(),
                                        "support": support[:dim].tolist()})
    carrier = _classify_vector(model, flat.dual(), tol)
    center, r2 = _round_center_radius(model, X)
    return GeometricEntity("circle", {"center": center, "radius": math.sqrt(abs(r2)),
                                      "normal": carrier.params["normal"]},
                           imaginary=r2 < 0)


def emit_geometry(items, model: CgaModel | None = None, sink=None) -> list:
    """JSON records ``{kind, ...}`` for entities (or multivectors classified on the fly)."""
    records = []
    for item in items:
        if isinstance(item, GeometricEntity):
            records.append(item.to_json())
            continue
        m = model or item.model
        try:
            records.append(classify(m, item).to_json())
        except (GAError, AttributeError, ValueError):
            records.append({"kind": "unknown", "coeffs": [float(c) for c in item.to_float().coeffs]})
    if sink is not None:
        json.dump(records, sink, indent=2)
    return records


# -- free-function forms ----------------------------------------------------------------


def push(model: CgaModel, x) -> Multivector:
    return model.push(x)


def pull(model: CgaModel, X: Multivector) -> Multivector:
    return model.pull(X)


def cga_translator(model: CgaModel, v) -> Multivector:
    return model.translator(v)


def pga_translator(model: PgaModel, b) -> Multivector:
    return model.translator(b)


def pga_point(model: PgaModel, *coords) -> Multivector:
    return model.point(*coords)


def pga_plane(model: PgaModel, normal, distance=0) -> Multivector:
    return model.plane(normal, distance)


def pga_line(model: PgaModel, point, direction) -> Multivector:
    return model.line(point, direction)


def intersect(model: CgaModel, *objs, inner=False) -> Multivector:
    return model.intersect(*objs, inner=inner)


def extract_point_pair(model: CgaModel, B: Multivector, tol: float = 1e-9):
    return model.extract_point_pair(B, tol)
