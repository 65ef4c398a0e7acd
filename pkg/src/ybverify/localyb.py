"""Coordinate geometry of the local Yang-Baxter relation: the (a,b,t) chart,
its invariants and Jacobian, the induced involution on (x,y,z), and the
pointwise symmetry of the three-fold integrand.

Maps are evaluated exactly on Fractions where possible and in floats
otherwise; the primed point generically involves a square root, so the
transformed-point checks are float checks with configurable tolerances.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .clifford import GradedRep, as_exp_components
from .relations import CheckReport, Status, _Timer

DEFAULT_MATRIX_TOL = 1e-9
DEFAULT_SCALAR_TOL = 1e-10
DEFAULT_SEED = 20240901


class TripleXYZ(NamedTuple):
    x: object
    y: object
    z: object


class CurveCoords(NamedTuple):
    a: object
    b: object
    t: object


class RegionTag(NamedTuple):
    """One of the four (x,y)-subregions cut out by x = y and xy = 1,
    plus the sign of z."""
    x_gt_y: bool
    xy_gt_1: bool
    z_positive: bool


def forward_map(p: TripleXYZ) -> CurveCoords:
    """(x,y,z) -> (a,b,t): a = ((1+xy)/(1-xy))((x+y)/(x-y)), b = z(x-y)/(1-xy),
    t = (x-y)/(1+xy)."""
    x, y, z = p
    s = x * y
    if s == 1:
        raise ZeroDivisionError("xy = 1 is singular for the chart")
    if x == y:
        raise ZeroDivisionError("x = y is singular for a")
    if 1 + s == 0:
        raise ZeroDivisionError("1 + xy = 0 is singular for t")
    a = (1 + s) / (1 - s) * (x + y) / (x - y)
    b = z * (x - y) / (1 - s)
    t = (x - y) / (1 + s)
    return CurveCoords(a, b, t)


def invariants(p: TripleXYZ):
    """(lambda1, lambda2) = (z(x-y)/(1-xy), z(x+y)(1+xy)/(1-xy)^2); these
    equal (b, a*b) of the forward chart and are preserved by the primed map."""
    x, y, z = p
    s = x * y
    if s == 1:
        raise ZeroDivisionError("xy = 1 is singular")
    lam1 = z * (x - y) / (1 - s)
    lam2 = z * (x + y) * (1 + s) / (1 - s) ** 2
    return lam1, lam2


def companion_point(c: CurveCoords) -> CurveCoords:
    """(a, b, t) -> (a, b, b/(a t)); an involution on the curve."""
    a, b, t = c
    if a == 0 or t == 0:
        raise ZeroDivisionError("companion point needs a != 0 and t != 0")
    return CurveCoords(a, b, b / (a * t))


def classify_region(p: TripleXYZ) -> RegionTag:
    """Region of a point with nonzero coordinates; boundary points
    (x = y, xy = 1, z = 0) are measure-zero and rejected."""
    x, y, z = p
    if x == y or x * y == 1 or z == 0:
        raise ValueError(f"boundary point {tuple(p)} has no region")
    return RegionTag(x > y, x * y > 1, z > 0)


def _exact_sqrt(value: Fraction):
    """Rational square root if it exists, else None."""
    if value < 0:
        return None
    n, d = value.numerator, value.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def inverse_map(c: CurveCoords, region: RegionTag) -> TripleXYZ:
    """Invert the chart on the region: solve the quadratic
    (a^2-1)t^2 s^2 - (2(a^2+1)t^2 + 4)s + (a^2-1)t^2 = 0 in s = xy (the two
    roots are reciprocal; the region tag picks xy vs 1), then
    x + y = a t (1 - s) and x - y = t (1 + s).

    Exact (Fraction) output when the inputs are rational and the discriminant
    is a perfect square; float otherwise.
    """
    a, b, t = c
    if abs(a) < 1:
        raise ValueError(f"|a| = {abs(a)} < 1: point outside the chart image")
    qa = (a * a - 1) * t * t
    qb = -(2 * (a * a + 1) * t * t + 4)
    qc = qa
    if qa == 0:
        raise ValueError("a = +-1 is a boundary of the chart image")
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        raise ValueError("no real solution: negative discriminant")
    exact = (isinstance(disc, (int, Fraction))
             and (root := _exact_sqrt(Fraction(disc))) is not None)
    if not exact:
        root = math.sqrt(disc)
        qa, qb = float(qa), float(qb)
    s_lo = (-qb - root) / (2 * qa)
    s_hi = (-qb + root) / (2 * qa)
    if s_lo > s_hi:
        s_lo, s_hi = s_hi, s_lo
    s = s_hi if region.xy_gt_1 else s_lo
    x = (a * t * (1 - s) + t * (1 + s)) / 2
    y = (a * t * (1 - s) - t * (1 + s)) / 2
    if (x > y) != region.x_gt_y:
        raise ValueError(f"region {region} inconsistent with t = {t}")
    z = b * (1 - s) / (t * (1 + s))
    if (z > 0) != region.z_positive:
        raise ValueError(f"region {region} inconsistent with sign of b = {b}")
    return TripleXYZ(x, y, z)


def solve_primed(p: TripleXYZ) -> TripleXYZ:
    """The partner point (x',y',z') of the local Yang-Baxter transformation:
    same (a,b), curve coordinate t' = b/(a t), same octant.

    Both quadratic roots reproduce (a, b, t'), so the octant of p selects the
    branch; exactly one root lands there for points off the boundaries.
    """
    a, b, t = forward_map(p)
    tp = b / (a * t)
    candidates = []
    for xy_gt_1 in (False, True):
        for x_gt_y in (False, True):
            region = RegionTag(x_gt_y, xy_gt_1, p.z > 0)
            try:
                q = inverse_map(CurveCoords(a, b, tp), region)
            except ValueError:
                continue
            if (q.x > 0, q.y > 0) == (p.x > 0, p.y > 0) and (q.z > 0) == (p.z > 0):
                candidates.append(q)
    if not candidates:
        raise ValueError(f"no primed partner in the octant of {tuple(p)}")
    if len(candidates) > 1:
        # the same point can reappear through two region tags when t' = t
        first = candidates[0]
        if not all(_close(first, other) for other in candidates[1:]):
            raise ValueError(f"ambiguous primed partner for {tuple(p)}")
    return candidates[0]


def _close(p, q, tol=1e-9):
    return all(abs(float(pa) - float(qa)) <= tol * max(1.0, abs(float(pa)))
               for pa, qa in zip(p, q))


def jacobian(p: TripleXYZ):
    """Closed-form Jacobian determinant of the chart:
    2 (1+x^2)(1+y^2) / ((1+xy)(1-xy)^3), signed."""
    x, y, z = p
    s = x * y
    if s == 1 or 1 + s == 0:
        raise ZeroDivisionError("singular point for the Jacobian")
    return 2 * (1 + x * x) * (1 + y * y) / ((1 + s) * (1 - s) ** 3)


def jacobian_fd(p: TripleXYZ, h: float = 1e-6) -> float:
    """Central finite-difference determinant of the forward chart (oracle)."""
    x, y, z = (float(v) for v in p)
    cols = []
    for dx, dy, dz in ((h, 0, 0), (0, h, 0), (0, 0, h)):
        hi = forward_map(TripleXYZ(x + dx, y + dy, z + dz))
        lo = forward_map(TripleXYZ(x - dx, y - dy, z - dz))
        cols.append([(float(hi[i]) - float(lo[i])) / (2 * h) for i in range(3)])
    m = np.array(cols).T
    return float(np.linalg.det(m))


# ---------------------------------------------------------------------------
# float evaluation of As-exponentials
# ---------------------------------------------------------------------------

def _float_components(rep: GradedRep, i: int, j: int) -> np.ndarray:
    cache = getattr(rep, "_float_cache", None)
    if cache is None:
        cache = {}
        rep._float_cache = cache
    cached = cache.get((i, j))
    if cached is None:
        comps = as_exp_components(rep, i, j)
        cached = np.stack([c.to_complex_array() for c in comps])
        cache[(i, j)] = cached
    return cached


def as_exponential_float(rep: GradedRep, i: int, j: int, t: float) -> np.ndarray:
    comps = _float_components(rep, i, j)
    acc = comps[0].copy()
    power = 1.0
    for k in range(1, comps.shape[0]):
        power *= t
        acc += power * comps[k]
    return acc


def check_local_ybe(rep: GradedRep, p: TripleXYZ,
                    tol: float = DEFAULT_MATRIX_TOL) -> CheckReport:
    """(1-xy)^-d E12(y) E23(z) E12(x) = (1-x'y')^-d E23(x') E12(z') E23(y')
    entrywise at the point p and its primed partner.

    The residual is measured relative to the matrices' own scale (the
    relation is covariant under rescaling, so an absolute entry tolerance
    would be ill-posed for generically sized sample points).
    """
    if rep.n != 3:
        raise ValueError("the local Yang-Baxter check needs the 3-copy representation")
    d = rep.basis.d
    params = {"d": d, "x": str(p.x), "y": str(p.y), "z": str(p.z), "tol": tol}
    with _Timer() as t_:
        x, y, z = (float(v) for v in p)
        q = solve_primed(p)
        xp, yp, zp = (float(v) for v in q)
        lhs = (as_exponential_float(rep, 1, 2, y)
               @ as_exponential_float(rep, 2, 3, z)
               @ as_exponential_float(rep, 1, 2, x)) * (1 - x * y) ** (-d)
        rhs = (as_exponential_float(rep, 2, 3, xp)
               @ as_exponential_float(rep, 1, 2, zp)
               @ as_exponential_float(rep, 2, 3, yp)) * (1 - xp * yp) ** (-d)
        scale = max(1.0, float(np.max(np.abs(lhs))))
        residual = float(np.max(np.abs(lhs - rhs))) / scale
    status = Status.PASS if residual < tol else Status.FAIL
    return CheckReport("local_ybe", params, status, exact=False,
                       max_residual=residual, elapsed_ms=t_.elapsed_ms,
                       detail=(f"primed point ({xp:.12g},{yp:.12g},{zp:.12g}); "
                               f"matrix scale {scale:.3g}"))


def _integrand_parts(d, u, v, p):
    x, y, z = (float(coord) for coord in p)
    s = x * y
    measure = (abs(x) ** (u - 1) * abs(y) ** (v - 1) * abs(z) ** (u + v - 1)
               * (1 - s) ** d
               / ((1 + x * x) ** (u + d / 2) * (1 + y * y) ** (v + d / 2)
                  * (1 + z * z) ** (u + v + d / 2)))
    forms = ((x + y) / (1 - s), z * (y - x) / (1 - s), z * (1 + s) / (1 - s))
    return measure, forms


def integrand_symmetry_check(d, u, v, A, B, C, p: TripleXYZ,
                             tol: float = 1e-8) -> CheckReport:
    """Pointwise change-of-variables identity for the three-fold integrand:
    F(p; A,B,C) = F(p'; C,B,A) |dp'/dp|, with the primed Jacobian computed as
    the ratio of the two chart Jacobians times |dt'/dt| = |t'/t|.  Also checks
    the exponent swap: the linear (A,B,C) form at p equals the (C,B,A) form
    at p'."""
    u, v = float(u), float(v)
    params = {"d": d, "u": u, "v": v, "A": A, "B": B, "C": C,
              "x": str(p.x), "y": str(p.y), "z": str(p.z)}
    with _Timer() as t_:
        q = solve_primed(p)
        a, b, t = (float(w) for w in forward_map(p))
        tp = b / (a * t)
        jac_ratio = abs(float(jacobian(p))) * abs(tp / t) / abs(float(jacobian(q)))
        meas_p, forms_p = _integrand_parts(d, u, v, p)
        meas_q, forms_q = _integrand_parts(d, u, v, q)
        f_p = meas_p * math.exp(A * forms_p[0] + B * forms_p[1] + C * forms_p[2])
        f_q = meas_q * math.exp(C * forms_q[0] + B * forms_q[1] + A * forms_q[2])
        residual = abs(f_p - f_q * jac_ratio) / max(abs(f_p), 1e-300)
        swap_residual = abs((A * forms_p[0] + B * forms_p[1] + C * forms_p[2])
                            - (C * forms_q[0] + B * forms_q[1] + A * forms_q[2]))
        residual = max(residual, swap_residual)
    status = Status.PASS if residual < tol else Status.FAIL
    return CheckReport("integrand_symmetry", params, status, exact=False,
                       max_residual=residual, elapsed_ms=t_.elapsed_ms)


def sample_triple(rng: random.Random, region: RegionTag) -> TripleXYZ:
    """Random interior point of the region (positive-coordinate quadrant in
    x, y; z-sign from the tag), away from the boundary curves."""
    while True:
        x = rng.uniform(0.05, 4.0)
        y = rng.uniform(0.05, 4.0)
        if abs(x - y) < 0.05 or abs(x * y - 1) < 0.05:
            continue
        if (x > y) != region.x_gt_y or (x * y > 1) != region.xy_gt_1:
            continue
        z = rng.uniform(0.05, 4.0)
        if not region.z_positive:
            z = -z
        return TripleXYZ(x, y, z)


def all_regions(z_positive: bool = True):
    return [RegionTag(xg, sg, z_positive) for xg in (False, True) for sg in (False, True)]
