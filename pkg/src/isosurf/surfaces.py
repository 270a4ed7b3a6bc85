"""Invariant surfaces x(u, t) = psi_t(alpha(u)) and normal-form graphs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import Signature
from .curves import GeneratingCurve, Plane
from .errors import ChartUnavailable, Unclassifiable
from .motion import MotionSubgroup, MotionType, classify, evaluate_arrays

GRID = 64
ADMISSIBLE_REL_TOL = 1e-10
RULED_TOL = 1e-10

_PREFIX = {
    (Signature.SimplyIsotropic, Plane.XY): "Y",
    (Signature.SimplyIsotropic, Plane.XZ): "Z",
    (Signature.PseudoIsotropic, Plane.XY): "Yh",
    (Signature.PseudoIsotropic, Plane.XZ): "Zh",
    (Signature.PseudoIsotropic, Plane.YZ): "Wh",
}


@dataclass(frozen=True)
class Partials:
    """Surface point and its partials up to second order; arrays end in axis 3."""

    x: np.ndarray
    xu: np.ndarray
    xt: np.ndarray
    xuu: np.ndarray
    xut: np.ndarray
    xtt: np.ndarray


@dataclass(frozen=True)
class Family:
    sig: Signature
    plane: Plane
    mtype: Optional[MotionType]  # None for a general (type 8) subgroup

    @property
    def number(self) -> int:
        return self.mtype.value if self.mtype else 8

    @property
    def name(self) -> str:
        return f"{_PREFIX[(self.sig, self.plane)]}{self.number}"

    @property
    def helicoidal(self) -> bool:
        return self.number in (1, 2)

    @property
    def parabolic(self) -> bool:
        return self.number in (3, 4, 6)

    def __str__(self) -> str:
        return self.name


def _matvec(A, v):
    return np.einsum("...ij,...j->...i", A, v)


class InvariantSurface:
    """Orbit surface of a generating curve under a 1-parameter subgroup."""

    def __init__(self, curve: GeneratingCurve, group: MotionSubgroup):
        curve.check_signature(group.sig)
        try:
            mtype = classify(group)
        except Unclassifiable as exc:
            if exc.nearest is None:
                raise
            mtype = None
        self.curve = curve
        self.group = group
        self.family = Family(group.sig, curve.plane, mtype)

    @property
    def sig(self) -> Signature:
        return self.group.sig

    def __repr__(self) -> str:
        return f"InvariantSurface({self.family.name}, {self.curve.kind}, {self.group})"

    def __call__(self, u, t) -> np.ndarray:
        return self.point(u, t)

    def point(self, u, t) -> np.ndarray:
        u, t = np.broadcast_arrays(np.asarray(u, float), np.asarray(t, float))
        A, a = evaluate_arrays(self.group, t)
        return _matvec(A, self.curve.point(u)) + a

    def partials(self, u, t) -> Partials:
        u, t = np.broadcast_arrays(np.asarray(u, float), np.asarray(t, float))
        A0, a0 = evaluate_arrays(self.group, t, 0)
        A1, a1 = evaluate_arrays(self.group, t, 1)
        A2, a2 = evaluate_arrays(self.group, t, 2)
        p0 = self.curve.point(u, 0)
        p1 = self.curve.point(u, 1)
        p2 = self.curve.point(u, 2)
        return Partials(
            x=_matvec(A0, p0) + a0,
            xu=_matvec(A0, p1),
            xt=_matvec(A1, p0) + a1,
            xuu=_matvec(A0, p2),
            xut=_matvec(A1, p1),
            xtt=_matvec(A2, p0) + a2,
        )

    def orbit_acceleration(self, u, t) -> np.ndarray:
        """Second t-derivative of t -> psi_t(alpha(u))."""
        return self.partials(u, t).xtt


def invariant_surface(curve: GeneratingCurve, group: MotionSubgroup) -> InvariantSurface:
    return InvariantSurface(curve, group)


def evaluate_surface(S, u, t) -> np.ndarray:
    return S.point(u, t)


class GraphSurface:
    """Normal-form graph (u, v, Z(u, v)); partials by central differences."""

    def __init__(self, Z: Callable, sig: Signature, h: float = 1e-3):
        self.Z = Z
        self._sig = Signature.parse(sig)
        self.h = h

    @property
    def sig(self) -> Signature:
        return self._sig

    def point(self, u, v):
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        return np.stack([u, v, self.Z(u, v)], axis=-1)

    __call__ = point

    def partials(self, u, v) -> Partials:
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        h, Z = self.h, self.Z
        z0 = Z(u, v)
        Zu = (Z(u + h, v) - Z(u - h, v)) / (2 * h)
        Zv = (Z(u, v + h) - Z(u, v - h)) / (2 * h)
        Zuu = (Z(u + h, v) - 2 * z0 + Z(u - h, v)) / h**2
        Zvv = (Z(u, v + h) - 2 * z0 + Z(u, v - h)) / h**2
        Zuv = (Z(u + h, v + h) - Z(u + h, v - h) - Z(u - h, v + h) + Z(u - h, v - h)) / (4 * h * h)
        one, zero = np.ones_like(u), np.zeros_like(u)
        return Partials(
            x=np.stack([u, v, z0], -1),
            xu=np.stack([one, zero, Zu], -1),
            xt=np.stack([zero, one, Zv], -1),
            xuu=np.stack([zero, zero, Zuu], -1),
            xut=np.stack([zero, zero, Zuv], -1),
            xtt=np.stack([zero, zero, Zvv], -1),
        )


# --- admissibility ----------------------------------------------------------

@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    det_g_min: float
    witness: tuple[float, float]
    obstruction: Optional[str] = None
    tolerance: float = 0.0


def metric(S, u, t):
    """First fundamental form (g11, g12, g22) from the isotropic inner product."""
    P = S.partials(u, t)
    sgm = S.sig.sigma

    def ip(p, q):
        return p[..., 0] * q[..., 0] + sgm * p[..., 1] * q[..., 1]

    return ip(P.xu, P.xu), ip(P.xu, P.xt), ip(P.xt, P.xt)


def _all_zero(values, scale) -> bool:
    return bool(np.max(np.abs(values)) <= 1e-10 * max(1.0, scale))


def _obstruction(S: InvariantSurface, u) -> Optional[str]:
    fam, g = S.family, S.group
    num = fam.number
    if num in (5, 7):
        return "a=b=0"
    f, gg = S.curve.coords(u)
    f1, g1 = S.curve.coords(u, 1)
    scale = float(np.max(np.abs(np.concatenate([f, gg, f1, g1])))) ** 2
    if fam.helicoidal:
        if fam.plane is Plane.XY:
            factor = f * f1 + S.sig.sigma * gg * g1
            name = "circle centered at origin" if S.sig is Signature.SimplyIsotropic \
                else "hyperbola centered at origin"
            return name if _all_zero(factor, scale) else None
        return "isotropic line" if _all_zero(f * f1, scale) else None
    if fam.parabolic:
        if fam.plane is Plane.XY:
            return "line with slope b/a" if _all_zero(g.b * f1 - g.a * g1, scale) else None
        coef = g.b if fam.plane is Plane.XZ else g.a
        if coef == 0.0:
            return "b=0" if fam.plane is Plane.XZ else "a=0"
        return "isotropic line" if _all_zero(f1, np.sqrt(scale)) else None
    return None


def admissibility(S, domain, grid=(GRID, GRID)) -> AdmissibilityReport:
    """Sample |det g| over ``domain = ((u0, u1), (t0, t1))``."""
    (u0, u1), (t0, t1) = domain
    if not (u1 >= u0 and t1 >= t0):
        raise ValueError("admissibility domain must be a nonempty rectangle")
    nu, nt = grid
    uu, tt = np.meshgrid(np.linspace(u0, u1, nu), np.linspace(t0, t1, nt), indexing="ij")
    g11, g12, g22 = metric(S, uu, tt)
    det = np.abs(g11 * g22 - g12 * g12)
    scale2 = float(np.max(np.abs(g11) + np.abs(g22)))
    tol = ADMISSIBLE_REL_TOL * max(scale2, np.finfo(float).tiny) ** 2
    k = np.unravel_index(np.argmin(det), det.shape)
    dmin = float(det[k])
    ok = dmin > tol
    obstruction = None
    if not ok and isinstance(S, InvariantSurface):
        obstruction = _obstruction(S, np.linspace(u0, u1, nu))
    return AdmissibilityReport(ok, dmin, (float(uu[k]), float(tt[k])), obstruction, tol)


def is_ruled(S: InvariantSurface, u_range=(-1.0, 1.0), t_range=(-1.0, 1.0), n: int = 9) -> bool:
    """Orbits are straight lines iff their second t-derivative vanishes identically."""
    uu, tt = np.meshgrid(np.linspace(*u_range, n), np.linspace(*t_range, n), indexing="ij")
    acc = S.orbit_acceleration(uu, tt)
    return bool(np.max(np.abs(acc)) <= RULED_TOL)


# --- normal-form charts -----------------------------------------------------

@dataclass(frozen=True)
class NormalFormChart:
    """Coordinate change (u, t) -> (U, T) flattening the first fundamental form.

    ``form`` is "dU^2+dT^2", "dU^2-dT^2" or "dU dT". ``printed`` is the
    first-order closed form of the same chart; it coincides with the exact
    chart for limit motions and agrees to first order in t for rotations.
    """

    surface: InvariantSurface
    form: str

    def __call__(self, u, t):
        x = self.surface.point(u, t)
        X, Y = x[..., 0], x[..., 1]
        if self.form == "dU dT":
            return X + Y, X - Y
        return X, Y

    def jacobian(self, u, t):
        """Matrix d(U, T)/d(u, t), shape ``(..., 2, 2)``."""
        P = self.surface.partials(u, t)
        J = np.stack([P.xu[..., :2], P.xt[..., :2]], axis=-1)
        if self.form == "dU dT":
            J = np.stack([J[..., 0, :] + J[..., 1, :], J[..., 0, :] - J[..., 1, :]], axis=-2)
        return J

    def pullback(self, u, t):
        """(g11, g12, g22) obtained by pulling the flat form back through the chart."""
        J = self.jacobian(u, t)
        Uu, Ut, Tu, Tt = J[..., 0, 0], J[..., 0, 1], J[..., 1, 0], J[..., 1, 1]
        if self.form == "dU dT":
            return Uu * Tu, 0.5 * (Uu * Tt + Ut * Tu), Ut * Tt
        s = 1.0 if self.form == "dU^2+dT^2" else -1.0
        return Uu * Uu + s * Tu * Tu, Uu * Ut + s * Tu * Tt, Ut * Ut + s * Tt * Tt

    def printed(self, u, t):
        S, g = self.surface, self.surface.group
        f, gg = S.curve.coords(u)
        t = np.asarray(t, float)
        tp = t * g.phi
        fam = S.family
        pseudo = S.sig is Signature.PseudoIsotropic
        if fam.helicoidal and fam.plane is Plane.XY:
            return (f + tp * gg, gg + tp * f) if pseudo else (f - tp * gg, gg + tp * f)
        if fam.helicoidal:
            return (f + tp * f, f - tp * f) if pseudo else (f + 0 * t, tp * f)
        if fam.plane is Plane.XY:
            return f + g.a * t, gg + g.b * t
        if fam.plane is Plane.XZ:
            return f + g.a * t, g.b * t + 0 * f
        return g.a * t + 0 * f, f + g.b * t

    def printed_jacobian_det(self, u):
        """The closed-form Jacobian determinant of the printed chart."""
        S, g = self.surface, self.surface.group
        f, gg = S.curve.coords(u)
        f1, g1 = S.curve.coords(u, 1)
        fam = S.family
        if fam.helicoidal and fam.plane is Plane.XY:
            return g.phi * (f * f1 + S.sig.sigma * gg * g1)
        if fam.helicoidal:
            return g.phi * f * f1
        if fam.plane is Plane.XY:
            return g.b * f1 - g.a * g1
        if fam.plane is Plane.XZ:
            return g.b * f1
        return -g.a * f1


def normal_form_chart(S: InvariantSurface) -> NormalFormChart:
    fam = S.family
    if not (fam.helicoidal or fam.parabolic):
        raise ChartUnavailable(f"no flattening chart is given for family {fam.name}")
    if S.sig is Signature.SimplyIsotropic:
        return NormalFormChart(S, "dU^2+dT^2")
    if fam.helicoidal and fam.plane.isotropic:
        return NormalFormChart(S, "dU dT")
    return NormalFormChart(S, "dU^2-dT^2")
