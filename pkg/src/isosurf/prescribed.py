"""Generating curves with prescribed Gaussian or mean curvature.

Each solver returns an arc-length parameterized curve plus the subgroup
that sweeps it into the surface with the requested curvature. Inner
integrals start at the profile's domain start s0; the outer integral of a
square-root or reconstruction step starts where the curve first becomes
legal, so the constant k0 is the curve's value there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import Signature
from .curves import GeneratingCurve, Plane
from .errors import ConfigError, DegenerateParameters, DomainError, EmptyValidity
from .motion import MotionSubgroup
from .quadrature import DEFAULT_TOL, CumulativeIntegral, vectorize_unique

VALIDITY_SAMPLES = 257
BISECT_STEPS = 60


@dataclass(frozen=True)
class CurvatureProfile:
    f: Callable[[float], float]
    domain: tuple[float, float]
    kind: str = "custom"
    params: tuple = ()

    def __post_init__(self):
        lo, hi = map(float, self.domain)
        if not hi > lo:
            raise ConfigError(f"profile domain must satisfy lo < hi, got {self.domain}")
        object.__setattr__(self, "domain", (lo, hi))

    def __call__(self, s):
        return self.f(s)

    @property
    def constant(self) -> Optional[float]:
        return float(self.params[0]) if self.kind == "constant" else None

    @classmethod
    def const(cls, value: float, domain) -> "CurvatureProfile":
        v = float(value)
        return cls(lambda s: v + 0.0 * np.asarray(s, float), domain, "constant", (v,))

    @classmethod
    def from_spec(cls, spec: dict, domain=None) -> "CurvatureProfile":
        if not isinstance(spec, dict) or "kind" not in spec:
            raise ConfigError("profile spec must be an object with 'kind' and 'params'")
        domain = spec.get("domain", domain)
        if domain is None:
            raise ConfigError("profile needs a domain [s_min, s_max]")
        kind, params = spec["kind"], list(spec.get("params", []))
        if kind == "constant":
            if len(params) != 1:
                raise ConfigError("constant profile takes one parameter")
            return cls.const(params[0], domain)
        if kind == "poly":
            p = np.polynomial.Polynomial(np.asarray(params or [0.0], float))
            return cls(p, domain, "poly", tuple(params))
        if kind == "sin":
            amp, freq, phase = (params + [1.0, 1.0, 0.0][len(params):])[:3]
            return cls(lambda s: amp * np.sin(freq * np.asarray(s, float) + phase),
                       domain, "sin", (amp, freq, phase))
        raise ConfigError(f"unknown profile kind {kind!r} (constant, poly, sin)")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": list(self.params), "domain": list(self.domain)}


@dataclass(frozen=True, eq=False)
class SolverOutput:
    curve: GeneratingCurve
    constants: dict
    validity: tuple[float, float]
    group: MotionSubgroup
    quantity: str  # "K" or "H"
    profile: CurvatureProfile
    eps: int = 1
    extras: dict = field(default_factory=dict)

    def samples(self, n: int = 50, margin: float = 0.02) -> np.ndarray:
        """Interior sample points of the validity interval."""
        lo, hi = self.validity
        pad = margin * (hi - lo)
        return np.linspace(lo + pad, hi - pad, n)

    def report(self) -> dict:
        return {
            "quantity": self.quantity,
            "profile": self.profile.to_dict(),
            "constants": dict(self.constants),
            "validity": list(self.validity),
            "eps": self.eps,
            "plane": self.curve.plane.value,
            "subgroup": self.group.to_dict(),
        }


# --- helpers ----------------------------------------------------------------

def _inner(profile: CurvatureProfile, weight: str, tol: float):
    """s -> int_{s0}^s w^k f(w) dw, k = 0 or 1; analytic for constant profiles."""
    s0, s1 = profile.domain
    k0 = profile.constant
    if k0 is not None:
        if weight == "w":
            return lambda s: 0.5 * k0 * (s * s - s0 * s0)
        return lambda s: k0 * (s - s0)
    if weight == "w":
        return CumulativeIntegral(lambda w: w * float(profile(w)), s0, s1, tol=tol)
    return CumulativeIntegral(lambda w: float(profile(w)), s0, s1, tol=tol)


def _validity(legal: Callable[[float], bool], lo: float, hi: float, what: str):
    """Longest run of legal grid samples, with ends refined by bisection."""
    grid = np.linspace(lo, hi, VALIDITY_SAMPLES)
    ok = np.array([legal(float(s)) for s in grid])
    if not ok.any():
        raise EmptyValidity(f"{what} is illegal on the whole interval [{lo}, {hi}]")
    best, start = (0, -1, -1), None
    for i, flag in enumerate(np.append(ok, False)):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            if i - start > best[0]:
                best = (i - start, start, i - 1)
            start = None
    _, i0, i1 = best
    if i1 == i0:
        raise EmptyValidity(f"{what} is legal only at the isolated point s={grid[i0]}")

    def refine(good, bad):
        for _ in range(BISECT_STEPS):
            mid = 0.5 * (good + bad)
            if legal(mid):
                good = mid
            else:
                bad = mid
        return good

    a = grid[i0] if i0 == 0 else refine(grid[i0], grid[i0 - 1])
    b = grid[i1] if i1 == len(grid) - 1 else refine(grid[i1], grid[i1 + 1])
    return float(a), float(b)


def _graph_curve(plane: Plane, z, dz, d2z, kind: str) -> GeneratingCurve:
    return GeneratingCurve(
        plane,
        lambda s: np.asarray(s, float) + 0.0, vectorize_unique(z),
        lambda s: np.ones_like(np.asarray(s, float)), vectorize_unique(dz),
        lambda s: np.zeros_like(np.asarray(s, float)), vectorize_unique(d2z),
        kind=kind,
    )


def _i_plane(sig: Signature, plane) -> Plane:
    plane = Plane.parse(plane)
    if plane is Plane.XY:
        raise ConfigError("i-type solvers need an isotropic plane (xz or yz)")
    if plane is Plane.YZ and sig is Signature.SimplyIsotropic:
        raise ConfigError("yz generating curves are only used in pseudo-isotropic space")
    return plane


def _eps_of(sig: Signature, plane: Plane) -> int:
    return -1 if (sig is Signature.PseudoIsotropic and plane is Plane.YZ) else 1


# --- helicoidal surfaces of i-type -----------------------------------------

def solve_K_helicoidal_i(K: CurvatureProfile, c: float, phi: float, k0: float, k1: float,
                         sig: Signature, plane=Plane.XZ, tol: float = DEFAULT_TOL) -> SolverOutput:
    """Curve (s, 0, z(s)) (or (0, s, z(s))) with z'^2 = k1 -+ A/s^2 + 2 int w K, A = (c/phi)^2."""
    sig = Signature.parse(sig)
    plane = _i_plane(sig, plane)
    if phi == 0.0:
        raise DegenerateParameters("helicoidal solver needs phi != 0")
    s0, s1 = K.domain
    if s0 <= 0:
        raise DomainError("helicoidal i-type solver needs s_min > 0")
    A = (c / phi) ** 2
    sgn = -1.0 if sig is Signature.SimplyIsotropic else 1.0
    M = _inner(K, "w", tol)

    def rad(s):
        return k1 + sgn * A / (s * s) + 2.0 * M(s)

    def drad(s):
        return -2.0 * sgn * A / s**3 + 2.0 * s * float(K(s))

    try:
        lo, hi = _validity(lambda s: rad(s) >= 0.0, s0, s1, "radicand")
    except EmptyValidity as exc:
        raise DomainError(f"radicand is negative on all of [{s0}, {s1}]") from exc

    def dz(s):
        return math.sqrt(max(rad(s), 0.0))

    Z = CumulativeIntegral(dz, lo, hi, base=lo, tol=tol)

    def z(s):
        return k0 + Z(s)

    def d2z(s):
        return drad(s) / (2.0 * dz(s))

    curve = _graph_curve(plane, z, dz, d2z, "prescribed-K-helicoidal")
    group = MotionSubgroup(sig, phi=phi, c=c)
    return SolverOutput(curve, {"k0": k0, "k1": k1, "s0": s0, "outer_base": lo},
                        (lo, hi), group, "K", K, _eps_of(sig, plane))


def solve_H_helicoidal_i(H: CurvatureProfile, h0: float, h1: float, sig: Signature,
                         eps: int = 1, phi: float = 1.0, c: float = 0.0,
                         tol: float = DEFAULT_TOL) -> SolverOutput:
    """z = h0 + h1 ln s + eps int (2/v) int w H; eps = -1 selects the yz (timelike) curve."""
    sig = Signature.parse(sig)
    if eps not in (1, -1):
        raise ConfigError("eps must be +1 or -1")
    if sig is Signature.SimplyIsotropic and eps != 1:
        raise ConfigError("eps = -1 only exists in pseudo-isotropic space")
    plane = Plane.XZ if eps == 1 else Plane.YZ
    if phi == 0.0:
        raise DegenerateParameters("helicoidal solver needs phi != 0")
    s0, s1 = H.domain
    if s0 <= 0:
        raise DomainError("helicoidal i-type solver needs s_min > 0")
    M = _inner(H, "w", tol)
    k = H.constant
    if k is not None:
        def outer(s):
            return k * (0.5 * (s * s - s0 * s0) - s0 * s0 * math.log(s / s0))
    else:
        outer = CumulativeIntegral(lambda v: 2.0 * M(v) / v, s0, s1, tol=tol)

    def z(s):
        return h0 + h1 * math.log(s) + eps * outer(s)

    def dz(s):
        return h1 / s + eps * 2.0 * M(s) / s

    def d2z(s):
        return -h1 / s**2 + eps * (2.0 * float(H(s)) - 2.0 * M(s) / s**2)

    curve = _graph_curve(plane, z, dz, d2z, "prescribed-H-helicoidal")
    group = MotionSubgroup(sig, phi=phi, c=c)
    return SolverOutput(curve, {"h0": h0, "h1": h1, "s0": s0}, (s0, s1), group, "H", H, eps)


# --- parabolic revolution surfaces of i-type -------------------------------

def _double_integral(profile: CurvatureProfile, tol: float):
    s0, s1 = profile.domain
    k = profile.constant
    I1 = _inner(profile, "1", tol)
    if k is not None:
        return I1, (lambda s: 0.5 * k * (s - s0) ** 2)
    return I1, CumulativeIntegral(I1, s0, s1, tol=tol)


def _quadratic_solution(profile, plane, h0, h1, quad_coef, int_coef, tol, kind):
    I1, I2 = _double_integral(profile, tol)

    def z(s):
        return h0 + h1 * s + 0.5 * quad_coef * s * s + int_coef * I2(s)

    def dz(s):
        return h1 + quad_coef * s + int_coef * I1(s)

    def d2z(s):
        return quad_coef + int_coef * float(profile(s))

    return _graph_curve(plane, z, dz, d2z, kind)


def _parabolic_B(sig, plane, a, b):
    B = a if plane is Plane.YZ else b
    if B == 0.0:
        raise DegenerateParameters(
            f"{'a' if plane is Plane.YZ else 'b'} = 0 makes the parabolic surface non-admissible")
    return B


def solve_K_parabolic_i(K: CurvatureProfile, a: float, b: float, c1: float, c2: float,
                        k0: float, k1: float, sig: Signature, plane=Plane.XZ,
                        tol: float = DEFAULT_TOL) -> SolverOutput:
    """z'' = (C^2 -+ ... ) / D1 with D1 = a c1 + b c2.

    Simply: z'' = (c1^2 + b^2 K) / D1. Pseudo: z'' = (C^2 - B^2 K) / D1 with
    (B, C) = (b, c1) on xz and (a, c2) on yz.
    """
    sig = Signature.parse(sig)
    plane = _i_plane(sig, plane)
    D1 = a * c1 + b * c2
    if D1 == 0.0:
        raise DegenerateParameters("a c1 + b c2 = 0: warped translation surfaces have constant K")
    B = _parabolic_B(sig, plane, a, b)
    C = c2 if plane is Plane.YZ else c1
    sign = 1.0 if sig is Signature.SimplyIsotropic else -1.0
    curve = _quadratic_solution(K, plane, k0, k1, C * C / D1, sign * B * B / D1, tol,
                                "prescribed-K-parabolic")
    group = MotionSubgroup(sig, a=a, b=b, c1=c1, c2=c2)
    return SolverOutput(curve, {"k0": k0, "k1": k1, "s0": K.domain[0]}, K.domain, group, "K", K,
                        _eps_of(sig, plane))


def solve_H_parabolic_i(H: CurvatureProfile, a: float, b: float, c1: float, c2: float,
                        h0: float, h1: float, sig: Signature, plane=Plane.XZ,
                        tol: float = DEFAULT_TOL) -> SolverOutput:
    """z'' = (a c1 - b c2 +- 2 B^2 H) / (a^2 +- b^2)."""
    sig = Signature.parse(sig)
    plane = _i_plane(sig, plane)
    sgm = sig.sigma
    den = a * a + sgm * b * b
    if den == 0.0:
        raise DegenerateParameters("a^2 - b^2 = 0: translation direction is lightlike" if sgm < 0
                                   else "a = b = 0: no top-view translation")
    B = _parabolic_B(sig, plane, a, b)
    curve = _quadratic_solution(H, plane, h0, h1, (a * c1 - b * c2) / den, 2.0 * sgm * B * B / den,
                                tol, "prescribed-H-parabolic")
    group = MotionSubgroup(sig, a=a, b=b, c1=c1, c2=c2)
    return SolverOutput(curve, {"h0": h0, "h1": h1, "s0": H.domain[0]}, H.domain, group, "H", H,
                        _eps_of(sig, plane))


# --- helicoidal surfaces of ni-type ----------------------------------------

def solve_K_helicoidal_ni(K: CurvatureProfile, c: float, phi: float, k0: float, k1: float,
                          sig: Signature, eps: int = 1, tol: float = DEFAULT_TOL) -> SolverOutput:
    """Curve in the xy-plane with x^2 + s y^2 = r2(s) prescribed, s = +1 or -1.

    r2 = k0 + 2 int P, P = (k1 + m 3 phi^2/c^2 int K)^(-1/3), m = +1 (simply)
    or -eps (pseudo). The curve is rebuilt in polar (simply) or hyperbolic
    polar (pseudo) form with theta = 0 at the start of validity.
    """
    sig = Signature.parse(sig)
    if c == 0.0 or phi == 0.0:
        raise DegenerateParameters("ni-type helicoidal solver needs c != 0 and phi != 0")
    if eps not in (1, -1):
        raise ConfigError("eps must be +1 or -1")
    if sig is Signature.SimplyIsotropic:
        eps = 1
    s0, s1 = K.domain
    m = 1.0 if sig is Signature.SimplyIsotropic else -float(eps)
    lam = 3.0 * m * phi**2 / c**2
    I1 = _inner(K, "1", tol)

    def base(s):
        return k1 + lam * I1(s)

    grid = np.linspace(s0, s1, VALIDITY_SAMPLES)
    bvals = np.array([base(s) for s in grid])
    if np.any(bvals == 0.0) or (bvals.min() < 0.0 < bvals.max()):
        raise DomainError("cube-root base k1 + (3 phi^2/c^2) int K crosses zero")

    def P(s):
        return float(np.cbrt(1.0 / base(s)))

    def dP(s):
        return -(lam / 3.0) * float(K(s)) * float(np.cbrt(base(s))) ** -4

    R2 = CumulativeIntegral(P, s0, s1, tol=tol)

    def r2(s):
        return k0 + 2.0 * R2(s)

    pseudo = sig is Signature.PseudoIsotropic
    branch = 1.0
    if pseudo:
        # side of the light cone is fixed by the first sample with r2 != 0
        nz = [r2(s) for s in grid if r2(s) != 0.0]
        branch = 1.0 if (nz and nz[0] > 0) else -1.0

    def legal(s):
        q, p = r2(s), P(s)
        if not pseudo:
            return q > 0.0 and q - p * p >= 0.0
        return branch * q > 0.0 and p * p - eps * q >= 0.0

    lo, hi = _validity(legal, s0, s1, "arc-length reconstruction")

    # rho > 0 with rho^2 = |r2|; rho' = branch * P / rho
    def rho(s):
        return math.sqrt(abs(r2(s)))

    def drho(s):
        return branch * P(s) / rho(s)

    def d2rho(s):
        rr = rho(s)
        return branch * (dP(s) * rr - P(s) * drho(s)) / (rr * rr)

    def wsq(s):
        rp, rr = drho(s), rho(s)
        if not pseudo:
            return (1.0 - rp * rp) / (rr * rr)
        if branch > 0:
            return (rp * rp - eps) / (rr * rr)
        return (eps + rp * rp) / (rr * rr)

    def dth(s):
        return math.sqrt(max(wsq(s), 0.0))

    def d2th(s):
        # theta'' = W' / (2 sqrt W) with W = num / rho^2
        rr, rp, rpp = rho(s), drho(s), d2rho(s)
        w = dth(s)
        if not pseudo:
            num, dnum = 1.0 - rp * rp, -2.0 * rp * rpp
        elif branch > 0:
            num, dnum = rp * rp - eps, 2.0 * rp * rpp
        else:
            num, dnum = eps + rp * rp, 2.0 * rp * rpp
        dW = (dnum * rr * rr - num * 2.0 * rr * rp) / rr**4
        return dW / (2.0 * w)

    Theta = CumulativeIntegral(dth, lo, hi, base=lo, tol=tol)

    if not pseudo:
        c_, s_ = math.cos, math.sin

        def trig(th):
            return c_(th), s_(th), -s_(th), c_(th), -c_(th), -s_(th)
    elif branch > 0:
        def trig(th):
            ch, sh = math.cosh(th), math.sinh(th)
            return ch, sh, sh, ch, ch, sh
    else:
        def trig(th):
            ch, sh = math.cosh(th), math.sinh(th)
            return sh, ch, ch, sh, sh, ch

    def comps(s, order):
        th = Theta(s)
        fx, fy, dfx, dfy, d2fx, d2fy = trig(th)
        rr = rho(s)
        if order == 0:
            return rr * fx, rr * fy
        rp, w = drho(s), dth(s)
        if order == 1:
            return rp * fx + rr * w * dfx, rp * fy + rr * w * dfy
        rpp, wp = d2rho(s), d2th(s)
        return (rpp * fx + (2 * rp * w + rr * wp) * dfx + rr * w * w * d2fx,
                rpp * fy + (2 * rp * w + rr * wp) * dfy + rr * w * w * d2fy)

    curve = GeneratingCurve(
        Plane.XY,
        vectorize_unique(lambda s: comps(s, 0)[0]), vectorize_unique(lambda s: comps(s, 0)[1]),
        vectorize_unique(lambda s: comps(s, 1)[0]), vectorize_unique(lambda s: comps(s, 1)[1]),
        vectorize_unique(lambda s: comps(s, 2)[0]), vectorize_unique(lambda s: comps(s, 2)[1]),
        kind="prescribed-K-helicoidal-ni",
    )
    group = MotionSubgroup(sig, phi=phi, c=c)
    extras = {"r2": r2, "P": P}
    return SolverOutput(curve, {"k0": k0, "k1": k1, "s0": s0, "theta_base": lo},
                        (lo, hi), group, "K", K, eps, extras)
