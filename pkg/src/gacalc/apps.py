"""Worked applications: planar 3R forward kinematics (PGA), 6R position IK
(CGA), nodal analysis of an unbalanced three-phase network (multivector
matrices over rational functions), and an inverse-timing benchmark."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd

import numpy as np

from .algebra import Algebra, Signature, get_algebra
from .analytic import inverse, rotor_exp_bivector
from .errors import GAError, ImaginaryPointPairError
from .models import CgaModel, PgaModel, angle_between, classify
from .multivector import Multivector
from .mvmatrix import MvMatrix, mm_solve
from .scalars import (RationalFunction, clear_denominators, parse_exact, poly_mul,
                      poly_to_text)

# -- planar 3R forward kinematics ----------------------------------------------------


@dataclass(frozen=True)
class RobotParams3R:
    lengths: tuple
    angles: tuple

    def __post_init__(self):
        if len(self.lengths) != 3 or len(self.angles) != 3:
            raise GAError("a 3R arm has three lengths and three angles")
        if any(l <= 0 for l in self.lengths):
            raise GAError("link lengths must be positive")


_PGA2 = None


def _pga2() -> PgaModel:
    global _PGA2
    if _PGA2 is None:
        _PGA2 = PgaModel(2)
    return _PGA2


def fk3r(lengths, angles) -> tuple[float, float, float]:
    """End-effector ``(x, y, phi)`` of a planar 3R arm from a PGA rotor chain.

    Joints are ``exp(-theta/2 e12)``, links ``exp(l/2 e13)``; the origin
    point ``e12`` is carried through ``R1 D1 R2 D2 R3 D3``.
    """
    params = RobotParams3R(tuple(lengths), tuple(angles))
    pga = _pga2()
    e12 = pga.blade(1) ^ pga.blade(2)
    e13 = pga.blade(1) ^ pga.blade(3)
    R = Multivector.scalar(pga.algebra, 1.0, pga)
    for length, theta in zip(params.lengths, params.angles):
        R = R * rotor_exp_bivector(float(theta), e12) * rotor_exp_bivector(-float(length), e13)
    P0 = pga.point(0, 0)
    x, y = pga.point_coords(R * P0 * ~R)
    return float(x), float(y), float(sum(params.angles))


def fk3r_closed_form(lengths, angles) -> tuple[float, float, float]:
    l1, l2, l3 = lengths
    t1, t2, t3 = angles
    x = l1 * math.cos(t1) + l2 * math.cos(t1 + t2) + l3 * math.cos(t1 + t2 + t3)
    y = l1 * math.sin(t1) + l2 * math.sin(t1 + t2) + l3 * math.sin(t1 + t2 + t3)
    return x, y, t1 + t2 + t3


# -- 6R position inverse kinematics -------------------------------------------------------


@dataclass(frozen=True)
class RobotParams6R:
    d1: float
    a3: float
    d4: float
    target: tuple

    def __post_init__(self):
        if min(self.d1, self.a3, self.d4) <= 0:
            raise GAError("d1, a3 and d4 must be positive")
        if len(self.target) != 3:
            raise GAError("target must have three coordinates")


@dataclass
class IkResult:
    solutions: list
    elbows: list
    scene: list = field(default_factory=list)


_CGA3 = None


def _cga3() -> CgaModel:
    global _CGA3
    if _CGA3 is None:
        _CGA3 = CgaModel(3)
    return _CGA3


def _signed(angle: float, u, v, axis) -> float:
    return -angle if float(np.dot(np.cross(u, v), axis)) < 0 else angle


def ik6r(d1, a3, d4, target) -> IkResult:
    """Joint triples ``(theta1, theta2, theta3)`` placing the wrist centre at ``target``.

    Sphere/plane construction: the elbow lies on the sphere of radius ``a3``
    about the shoulder ``p1``, on the sphere of radius ``d4`` about the
    target and in the vertical plane through ``p0, p1, p``.  Both points of
    the resulting pair are returned.  ``theta1`` is the azimuth of that plane
    read from its oriented normal ``n`` (``acos(n . x) - pi/2`` on the half
    plane ``n . y >= 0``); ``theta2`` and ``theta3``
    are angles between consecutive links, signed about the joint axis so
    that each triple maps back through :func:`fk6r_position`.
    """
    params = RobotParams6R(float(d1), float(a3), float(d4), tuple(float(t) for t in target))
    c = _cga3()
    ni = c.ni.to_float()
    P0 = c.n0.to_float()
    P = c.push(list(params.target)).to_float()
    T1 = c.translator([0.0, 0.0, params.d1])
    P1 = T1 * P0 * ~T1
    plane = P0 ^ P1 ^ P ^ ni
    S1 = P1 - ni * (0.5 * params.a3 ** 2)
    S2 = P - ni * (0.5 * params.d4 ** 2)
    B = c.intersect(S1, S2, plane, inner=[True, True, False])
    try:
        b1, b2 = c.extract_point_pair(B)
    except ImaginaryPointPairError as exc:
        raise ImaginaryPointPairError(f"target unreachable: {exc}", exc.square) from None

    # A I^-1 orients the normal as (p1 - p0) x (p - p0)
    normal = np.array(c.to_display(plane.undual().coeffs)[2:5], dtype=float)
    if not np.linalg.norm(normal) > 0:
        raise GAError("target on the base axis: the arm plane is undetermined")
    # equals acos(n.x/|n|) - pi/2 whenever n.y >= 0; atan2 keeps the quadrant elsewhere
    theta1 = math.atan2(-normal[0], normal[1])
    axis = np.array([-math.sin(theta1), math.cos(theta1), 0.0])

    p0 = np.zeros(3)
    p1 = np.array(c.coords(P1))
    p = np.array(params.target)
    l1 = P0 ^ P1 ^ ni
    solutions, elbows = [], []
    for b in (b1, b2):
        p2 = np.array(c.coords(b))
        l2 = P1 ^ b ^ ni
        l3 = b ^ P ^ ni
        theta2 = _signed(angle_between(l1, l2), p1 - p0, p2 - p1, axis)
        theta3 = _signed(angle_between(l2, l3), p2 - p1, p - p2, axis)
        solutions.append((theta1, theta2, theta3))
        elbows.append(p2.tolist())
    # the two spheres meet in a circle; its dual is the outer representation
    circle = (S1 ^ S2).dual()
    return IkResult(solutions, elbows, [S1, S2, plane, circle, B])


def fk6r_position(d1, a3, d4, thetas) -> list[float]:
    """Wrist-centre position from a CGA rotor chain (the oracle for :func:`ik6r`).

    ``R_z(t1) T(d1 e3) R_y(t2) T(a3 e3) R_y(t3) T(d4 e3)`` applied to ``n0``.
    """
    c = _cga3()
    e1, e2, e3 = (c.euclidean(v) for v in ([1, 0, 0], [0, 1, 0], [0, 0, 1]))
    e12, e31 = e1 ^ e2, e3 ^ e1
    t1, t2, t3 = (float(t) for t in thetas)
    M = (rotor_exp_bivector(t1, e12) * c.translator([0, 0, float(d1)])
         * rotor_exp_bivector(t2, e31) * c.translator([0, 0, float(a3)])
         * rotor_exp_bivector(t3, e31) * c.translator([0, 0, float(d4)]))
    X = M.to_float() * c.n0.to_float() * ~M.to_float()
    return c.coords(X)


# -- three-phase network nodal analysis ----------------------------------------------------

#: line and load impedances of the worked example, as decimal text so they parse exactly
DEFAULT_NETWORK = {
    "z12": {"av": {"num": ["0.01", "0.02"], "den": ["1"]}},
    "z13": {"av": {"num": ["0.02", "0.04"], "den": ["1"]}},
    "z23": {"av": {"num": ["0.01", "0.02"], "den": ["1"]}},
    "zL2": {"av": "0.5", "unI": "-0.0289", "unR": "0.05"},
    "zL3": {"av": "0.4", "unI": "-0.1155", "unR": "-0.1"},
    "source": {"va": ["e0", "e2"], "vb": ["e1", "e12"]},
}

#: the same network with each load unbalance term rounded to one significant digit;
#: these are the values whose transfer functions match the reference integer polynomials
ONE_DIGIT_UNBALANCE_NETWORK = dict(
    DEFAULT_NETWORK,
    zL2={"av": "0.5", "unI": "-0.03", "unR": "0.05"},
    zL3={"av": "0.4", "unI": "-0.1", "unR": "-0.1"},
)

_IMPEDANCE_KEYS = ("z12", "z13", "z23", "zL2", "zL3")
_COMPONENTS = {"av": 0, "unI": 1, "unR": 2}


def _ratfun(obj) -> RationalFunction:
    if isinstance(obj, dict):
        return RationalFunction([parse_exact(c) for c in obj["num"]],
                                [parse_exact(c) for c in obj.get("den", [1])])
    return RationalFunction.const(parse_exact(obj))


def impedance(alg: Algebra, components) -> Multivector:
    """``z_av e0 + z_unI e1 + z_unR e2`` with rational-function coefficients."""
    unknown = set(components) - set(_COMPONENTS)
    if unknown:
        raise GAError(f"unknown impedance components {sorted(unknown)}")
    coeffs = [RationalFunction()] * alg.dim
    for key, pos in _COMPONENTS.items():
        if key in components:
            coeffs[pos] = _ratfun(components[key])
    return Multivector(alg, coeffs)


@dataclass
class PowerNetwork:
    z12: Multivector
    z13: Multivector
    z23: Multivector
    zL2: Multivector
    zL3: Multivector
    source: dict

    @classmethod
    def from_config(cls, cfg: dict | None = None) -> "PowerNetwork":
        cfg = dict(DEFAULT_NETWORK if cfg is None else cfg)
        alg = get_algebra(2, 0, 0)
        missing = [k for k in _IMPEDANCE_KEYS if k not in cfg]
        if missing:
            raise GAError(f"network config is missing {missing}")
        source = cfg.get("source", DEFAULT_NETWORK["source"])
        return cls(*(impedance(alg, cfg[k]) for k in _IMPEDANCE_KEYS), source=source)

    @property
    def algebra(self):
        return self.z12.algebra

    def admittance_matrix(self) -> MvMatrix:
        y12, y13, y23, yL2, yL3 = (inverse(z) for z in
                                   (self.z12, self.z13, self.z23, self.zL2, self.zL3))
        one = Multivector.scalar(self.algebra, RationalFunction.const(1))
        zero = Multivector.scalar(self.algebra, RationalFunction())
        return MvMatrix([
            [y12 + y13, -y12, -y13, one],
            [-y12, y12 + y23 + yL2, -y23, zero],
            [-y13, -y23, y13 + y23 + yL3, zero],
            [one, zero, zero, zero],
        ])

    def unit_source(self, name: str) -> Multivector:
        names = self.algebra.basis_names
        coeffs = [RationalFunction()] * self.algebra.dim
        for blade in self.source.get(name, []):
            if blade not in names:
                raise GAError(f"unknown source blade {blade!r}")
            coeffs[names.index(blade)] = RationalFunction.const(1)
        return Multivector(self.algebra, coeffs)


@dataclass
class TransferFunction:
    """One coefficient of a node voltage: ``(num_va*va + num_vb*vb) / den``, integer-cleared."""

    num_va: list
    num_vb: list
    den: list

    def to_text(self) -> str:
        to_poly = lambda c: tuple(Fraction(x) for x in c)
        parts = []
        for label, num in (("va", self.num_va), ("vb", self.num_vb)):
            if any(num):
                parts.append(f"({poly_to_text(to_poly(num))})*{label}")
        return f"N = {' + '.join(parts) or '0'}\nD = {poly_to_text(to_poly(self.den))}"

    def to_json(self) -> dict:
        return {"num_va": self.num_va, "num_vb": self.num_vb, "den": self.den}


def _integer_transfer(f: RationalFunction, g: RationalFunction) -> TransferFunction:
    """Common denominator of ``f`` and ``g``, scaled to primitive integer polynomials."""
    den = _poly_lcm(f.den, g.den)
    num_f = poly_mul(f.num, _exact_div(den, f.den))
    num_g = poly_mul(g.num, _exact_div(den, g.den))
    nf, ng, d = clear_denominators(num_f, num_g, den)
    content = reduce(gcd, [abs(x) for x in nf + ng + d if x], 0) or 1
    return TransferFunction([x // content for x in nf], [x // content for x in ng],
                            [x // content for x in d])


def _exact_div(a, b):
    from .scalars import poly_divmod
    q, r = poly_divmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def _poly_lcm(a, b):
    from .scalars import poly_gcd
    return _exact_div(poly_mul(a, b), poly_gcd(a, b))


@dataclass
class PowerResult:
    voltages: dict  # node name -> list of (blade name, TransferFunction)
    raw: dict       # node name -> (response to va, response to vb) multivectors

    def to_text(self) -> str:
        lines = []
        for node, comps in self.voltages.items():
            for blade, tf in comps:
                body = tf.to_text().replace("N =", f"N{node}{blade} =").replace("D =", f"D{node}{blade} =")
                lines.append(body)
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {node: {blade: tf.to_json() for blade, tf in comps}
                for node, comps in self.voltages.items()}


def power_network(net: PowerNetwork | dict | None = None) -> PowerResult:
    """Solve ``Y [v1 v2 v3 is]^T = [0 0 0 vs]^T`` by superposition of two unit sources."""
    if not isinstance(net, PowerNetwork):
        net = PowerNetwork.from_config(net)
    Y = net.admittance_matrix()
    zero = Multivector.scalar(net.algebra, RationalFunction())
    responses = []
    for name in ("va", "vb"):
        x = mm_solve(Y, [zero, zero, zero, net.unit_source(name)])
        responses.append([x[i, 0] for i in range(4)])
    names = net.algebra.basis_names
    voltages, raw = {}, {}
    for i, node in enumerate(("v1", "v2", "v3", "is")):
        ra, rb = responses[0][i], responses[1][i]
        raw[node] = (ra, rb)
        voltages[node] = [(names[k], _integer_transfer(ra.coeffs[k], rb.coeffs[k]))
                          for k in range(net.algebra.dim)]
    return PowerResult(voltages, raw)


# -- benchmark --------------------------------------------------------------------------------


def bench_signatures(max_sig: Signature, start: int = 6) -> list[Signature]:
    sigs = [Signature(p) for p in range(min(start, max_sig.p), max_sig.p + 1)]
    if max_sig not in sigs:
        sigs.append(max_sig)
    return sigs


def bench(max_sig="9,1,0", start: int = 6, seed: int = 0, tol: float = 1e-9) -> list[dict]:
    """Time algebra construction and a random inverse for each signature up to ``max_sig``."""
    if isinstance(max_sig, str):
        max_sig = Signature.parse(max_sig)
    rng = np.random.default_rng(seed)
    report = []
    for sig in bench_signatures(max_sig, start):
        t0 = time.perf_counter()
        alg = Algebra(sig)
        alg.table()
        t1 = time.perf_counter()
        A = Multivector.rand(alg, rng)
        Ainv = inverse(A)
        t2 = time.perf_counter()
        err = float(np.max(np.abs((A * Ainv - 1).coeffs)))
        report.append({"signature": list(sig), "construct_s": t1 - t0, "inverse_s": t2 - t1,
                       "residual": err, "ok": err < tol})
    return report


def scene_json(result: IkResult) -> list:
    from .models import emit_geometry
    return emit_geometry(result.scene, _cga3())


def load_network(path: str) -> PowerNetwork:
    with open(path) as fh:
        return PowerNetwork.from_config(json.load(fh))
