"""Fundamental forms and isotropic curvatures of parameterized surfaces.

Two independent routes are provided: the general one, built from the
Jacobian minors and the relative normal, and per-family closed forms that
depend only on the generating curve and the subgroup parameters.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Signature
from .curves import Plane
from .errors import NoClosedForm, NotAdmissible

X12_REL_TOL = 1e-10


@dataclass(frozen=True)
class FundamentalForms:
    g11: np.ndarray
    g12: np.ndarray
    g22: np.ndarray
    h11: np.ndarray
    h12: np.ndarray
    h22: np.ndarray
    X12: np.ndarray
    X13: np.ndarray
    X23: np.ndarray
    X31: np.ndarray

    @property
    def det_g(self):
        return self.g11 * self.g22 - self.g12**2

    @property
    def det_h(self):
        return self.h11 * self.h22 - self.h12**2


@dataclass(frozen=True)
class CurvaturePair:
    K: np.ndarray
    H: np.ndarray

    def __iter__(self):
        return iter((self.K, self.H))


def _minors(xu, xt):
    def minor(i, j):
        return xu[..., i] * xt[..., j] - xt[..., i] * xu[..., j]

    return minor(0, 1), minor(0, 2), minor(1, 2), minor(2, 0)


def _check_admissible(X12, xu, xt):
    scale = np.hypot(xu[..., 0], xu[..., 1]) * np.hypot(xt[..., 0], xt[..., 1])
    bad = np.abs(X12) <= X12_REL_TOL * np.maximum(1.0, scale)
    if np.any(bad):
        raise NotAdmissible("top views of the tangent vectors are parallel (X12 = 0)")


def _relative_normal_top(X12, X13, X23, X31, sig):
    second = X31 if sig is Signature.SimplyIsotropic else X13
    return X23 / X12, second / X12


def fundamental_forms(S, u, t) -> FundamentalForms:
    P = S.partials(u, t)
    sig = S.sig
    sgm = sig.sigma
    X12, X13, X23, X31 = _minors(P.xu, P.xt)
    _check_admissible(X12, P.xu, P.xt)
    n1, n2 = _relative_normal_top(X12, X13, X23, X31, sig)

    def ip(p, q):
        return p[..., 0] * q[..., 0] + sgm * p[..., 1] * q[..., 1]

    # Euclidean product with N_h in I^3, Lorentzian (+,-,+) in I^3_p
    def nh(q):
        return n1 * q[..., 0] + sgm * n2 * q[..., 1] + q[..., 2]

    return FundamentalForms(
        g11=ip(P.xu, P.xu), g12=ip(P.xu, P.xt), g22=ip(P.xt, P.xt),
        h11=nh(P.xuu), h12=nh(P.xut), h22=nh(P.xtt),
        X12=X12, X13=X13, X23=X23, X31=X31,
    )


def relative_normal(S, u, t) -> np.ndarray:
    P = S.partials(u, t)
    X12, X13, X23, X31 = _minors(P.xu, P.xt)
    _check_admissible(X12, P.xu, P.xt)
    n1, n2 = _relative_normal_top(X12, X13, X23, X31, S.sig)
    return np.stack([n1, n2, np.ones_like(n1)], axis=-1)


def gauss_map(S, u, t) -> np.ndarray:
    """Relative normal's top view lifted onto the unit sphere z = (1 - (x^2 + s y^2)) / 2."""
    N = relative_normal(S, u, t)
    p, q = N[..., 0], N[..., 1]
    return np.stack([p, q, 0.5 * (1.0 - (p * p + S.sig.sigma * q * q))], axis=-1)


def on_unit_sphere_residual(xi, sig: Signature):
    xi = np.asarray(xi, float)
    return xi[..., 2] - 0.5 * (1.0 - (xi[..., 0] ** 2 + sig.sigma * xi[..., 1] ** 2))


def second_form_from_gauss_map(S, u, t, h: float = 1e-5):
    """h_ij = -<d_i xi, x_j> with d_i xi from central differences."""
    sgm = S.sig.sigma
    P = S.partials(u, t)
    xi_u = (gauss_map(S, u + h, t) - gauss_map(S, u - h, t)) / (2 * h)
    xi_t = (gauss_map(S, u, t + h) - gauss_map(S, u, t - h)) / (2 * h)

    def ip(p, q):
        return p[..., 0] * q[..., 0] + sgm * p[..., 1] * q[..., 1]

    return -ip(xi_u, P.xu), -ip(xi_u, P.xt), -ip(xi_t, P.xt), -ip(xi_t, P.xu)


def curvatures_numeric(S, u, t) -> CurvaturePair:
    F = fundamental_forms(S, u, t)
    dg = F.det_g
    K = F.det_h / dg
    H = (F.g11 * F.h22 - 2 * F.g12 * F.h12 + F.g22 * F.h11) / (2 * dg)
    return CurvaturePair(K, H)


# --- closed forms -----------------------------------------------------------

def _helicoidal_ni(sig, g, x, y, x1, y1, x2, y2):
    ratio = g.c / g.phi
    Q = x2 * y1 - x1 * y2
    W = x * y1 - x1 * y
    if sig is Signature.SimplyIsotropic:
        den = x * x1 + y * y1
        K = ratio**2 * (-W * Q - (x1**2 + y1**2) ** 2) / den**4
        H = ratio * ((x**2 + y**2) * Q + (x1**2 + y1**2) * W) / (2 * den**3)
    else:
        den = x * x1 - y * y1
        K = ratio**2 * ((x1**2 - y1**2) ** 2 - W * Q) / den**4
        H = ratio * ((x**2 - y**2) * Q + (x1**2 - y1**2) * W) / (2 * den**3)
    return K, H


def _helicoidal_i(sig, plane, g, r, z, r1, z1, r2, z2):
    R = r2 * z1 - r1 * z2
    rot = (g.c / g.phi) ** 2 / r**4
    H = (r1**2 * z1 - r * R) / (2 * r * r1**3)
    if sig is Signature.SimplyIsotropic:
        return -z1 * R / (r * r1**4) - rot, H
    K = rot - z1 * R / (r * r1**4)
    return K, (H if plane is Plane.XZ else -H)


def _parabolic_ni(sig, g, x, y, x1, y1, x2, y2):
    a, b, c, c1, c2, D1 = g.a, g.b, g.c, g.c1, g.c2, g.D1
    Q = x2 * y1 - x1 * y2
    den = b * x1 - a * y1
    lift = c + c1 * x + c2 * y
    shear = (c1 * x1 + c2 * y1) / den
    if sig is Signature.SimplyIsotropic:
        K = D1 * lift * Q / den**3 - shear**2
        H = ((a**2 + b**2) * lift * Q / (2 * den**3) - (a * x1 + b * y1) * shear / den
             + (x1**2 + y1**2) * D1 / (2 * den**2))
    else:
        K = shear**2 - D1 * lift * Q / den**3
        H = (-(a**2 - b**2) * lift * Q / (2 * den**3) + (a * x1 - b * y1) * shear / den
             - (x1**2 - y1**2) * D1 / (2 * den**2))
    return K, H


def _parabolic_i(sig, plane, g, r, z, r1, z1, r2, z2):
    a, b, c1, c2, D1 = g.a, g.b, g.c1, g.c2, g.D1
    R = (r2 * z1 - r1 * z2) / r1**3
    if sig is Signature.SimplyIsotropic:
        K = -D1 * R / b**2 - c1**2 / b**2
        H = (b * c2 - a * c1) / (2 * b**2) - (a**2 + b**2) / (2 * b**2) * R
        return K, H
    B, C = (b, c1) if plane is Plane.XZ else (a, c2)
    K = D1 * R / B**2 + C**2 / B**2
    H = (a**2 - b**2) / (2 * B**2) * R - (b * c2 - a * c1) / (2 * B**2)
    return K, H


def has_closed_form(S) -> bool:
    return S.family.number in (1, 2, 3, 4, 6)


def curvatures_closed_form(S, u) -> CurvaturePair:
    """Family-specific K and H; they depend on u only."""
    fam = S.family
    if not has_closed_form(S):
        raise NoClosedForm(f"family {fam.name} has no curvature closed form")
    u = np.asarray(u, float)
    f, g0 = S.curve.coords(u)
    f1, g1 = S.curve.coords(u, 1)
    f2, g2 = S.curve.coords(u, 2)
    grp = S.group
    with np.errstate(divide="ignore", invalid="ignore"):
        if fam.helicoidal and fam.plane is Plane.XY:
            K, H = _helicoidal_ni(S.sig, grp, f, g0, f1, g1, f2, g2)
        elif fam.helicoidal:
            K, H = _helicoidal_i(S.sig, fam.plane, grp, f, g0, f1, g1, f2, g2)
        elif fam.plane is Plane.XY:
            K, H = _parabolic_ni(S.sig, grp, f, g0, f1, g1, f2, g2)
        else:
            K, H = _parabolic_i(S.sig, fam.plane, grp, f, g0, f1, g1, f2, g2)
    K = np.broadcast_to(K, u.shape).astype(float)
    H = np.broadcast_to(H, u.shape).astype(float)
    if not (np.all(np.isfinite(K)) and np.all(np.isfinite(H))):
        raise NotAdmissible(f"closed form of {fam.name} is singular at the requested samples")
    return CurvaturePair(K, H)


# --- intrinsic curvature ----------------------------------------------------

_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_OFF = np.arange(-2, 3)


def brioschi_curvature(S, u, t, h: float = 1e-4) -> np.ndarray:
    """Intrinsic curvature of the induced metric via the Brioschi formula.

    Metric derivatives use five-point central differences with step h. The
    formula is purely algebraic in (E, F, G) and their derivatives, so it
    applies to the indefinite pseudo-isotropic metric as well.
    """
    from .surfaces import metric

    u = np.asarray(u, float)[..., None, None]
    t = np.asarray(t, float)[..., None, None]
    uu = u + h * _OFF[:, None]
    tt = t + h * _OFF[None, :]
    E, F, G = metric(S, uu, tt)

    def du(M):
        return np.einsum("k,...k->...", _D1, M[..., :, 2]) / h

    def dt(M):
        return np.einsum("k,...k->...", _D1, M[..., 2, :]) / h

    def duu(M):
        return np.einsum("k,...k->...", _D2, M[..., :, 2]) / h**2

    def dtt(M):
        return np.einsum("k,...k->...", _D2, M[..., 2, :]) / h**2

    def dut(M):
        return np.einsum("i,j,...ij->...", _D1, _D1, M) / h**2

    E0, F0, G0 = E[..., 2, 2], F[..., 2, 2], G[..., 2, 2]
    Eu, Et, Fu, Ft, Gu, Gt = du(E), dt(E), du(F), dt(F), du(G), dt(G)
    m1 = np.empty(E0.shape + (3, 3))
    m1[..., 0, :] = np.stack([-0.5 * dtt(E) + dut(F) - 0.5 * duu(G), 0.5 * Eu, Fu - 0.5 * Et], -1)
    m1[..., 1, :] = np.stack([Ft - 0.5 * Gu, E0, F0], -1)
    m1[..., 2, :] = np.stack([0.5 * Gt, F0, G0], -1)
    m2 = np.empty_like(m1)
    m2[..., 0, :] = np.stack([np.zeros_like(E0), 0.5 * Et, 0.5 * Gu], -1)
    m2[..., 1, :] = np.stack([0.5 * Et, E0, F0], -1)
    m2[..., 2, :] = np.stack([0.5 * Gu, F0, G0], -1)
    return (np.linalg.det(m1) - np.linalg.det(m2)) / (E0 * G0 - F0**2) ** 2
