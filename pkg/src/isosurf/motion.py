"""4x4 linear representation of isotropic rigid motions and their 1-parameter subgroups.

A motion x -> A x + a acts on R^3 through the affine embedding (x, y, z, 1).
Every 1-parameter subgroup is evaluated from closed forms in t; the four
auxiliary phase sums (C, S, C~, S~) are the continuous extensions of the
geometric sums sum cos(k phi), sum sin(k phi), sum (n-1-k) cos(k phi) and
sum (n-1-k) sin(k phi) (hyperbolic functions for the pseudo-isotropic case).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, asdict

import numpy as np
from numpy.polynomial import Polynomial

from .core import Signature
from .errors import NotOrthogonal, Unclassifiable

ORTHO_TOL = 1e-12
SERIES_THRESHOLD = 1e-4


@dataclass(frozen=True, eq=False)
class Motion4:
    m: np.ndarray
    sig: Signature | None = None

    def __post_init__(self):
        m = np.array(self.m, dtype=float).reshape(4, 4)
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @property
    def linear(self) -> np.ndarray:
        return self.m[:3, :3]

    @property
    def translation(self) -> np.ndarray:
        return self.m[:3, 3]

    def __matmul__(self, other: "Motion4") -> "Motion4":
        return compose(self, other)

    def __call__(self, p) -> np.ndarray:
        return apply(self, p)

    @classmethod
    def identity(cls, sig: Signature | None = None) -> "Motion4":
        return cls(np.eye(4), sig)


def is_orthogonal_iso(A, sig: Signature, tol: float = ORTHO_TOL) -> bool:
    """Membership test for the isotropic (or pseudo-isotropic) orthogonal group.

    The bottom row (3,1), (3,2) is unconstrained; (3,3) must be +-1 and the
    third column otherwise zero. The upper 2x2 block must be a rotation or
    reflection (simply) or one of the two printed boost shapes (pseudo).
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (3, 3) or not np.all(np.isfinite(A)):
        return False

    def close(x, y):
        return abs(x - y) <= tol * max(1.0, abs(y))

    if not (close(A[0, 2], 0.0) and close(A[1, 2], 0.0)):
        return False
    if not (close(A[2, 2], 1.0) or close(A[2, 2], -1.0)):
        return False

    if sig is Signature.SimplyIsotropic:
        phi = math.atan2(A[1, 0], A[0, 0])
        c, s = math.cos(phi), math.sin(phi)
        if not (close(A[0, 0], c) and close(A[1, 0], s)):
            return False
        return any(close(A[0, 1], -sgn * s) and close(A[1, 1], sgn * c) for sgn in (1, -1))

    phi = math.asinh(A[1, 0])
    ch, sh = math.cosh(phi), math.sinh(phi)
    sgn = 1.0 if A[0, 0] >= 0 else -1.0
    if not close(A[0, 0], sgn * ch):
        return False
    first = close(A[0, 1], sh) and close(A[1, 1], sgn * ch)
    second = close(A[0, 1], -sh) and close(A[1, 1], -sgn * ch)
    return first or second


def make_motion(A, a, sig: Signature) -> Motion4:
    if not is_orthogonal_iso(A, sig):
        raise NotOrthogonal(f"matrix is not {sig.value}-isotropic orthogonal:\n{np.asarray(A)}")
    m = np.eye(4)
    m[:3, :3] = A
    m[:3, 3] = np.asarray(a, dtype=float).reshape(3)
    return Motion4(m, sig)


def compose(M1: Motion4, M2: Motion4) -> Motion4:
    return Motion4(M1.m @ M2.m, M1.sig or M2.sig)


def apply(M: Motion4, p) -> np.ndarray:
    p = np.asarray(p, dtype=float).reshape(3)
    return M.m[:3, :3] @ p + M.m[:3, 3]


# --- phase sums -------------------------------------------------------------

_T = Polynomial([0.0, 1.0])


def _series_terms(kind: int):
    """Taylor coefficients (in phi) of (C, S, C~, S~) as polynomials in t.

    kind = +1 for the trigonometric sums, -1 for the hyperbolic ones; the
    hyperbolic series is the trigonometric one with phi^2 -> -phi^2.
    """
    t = _T
    k = float(kind)
    C = [t, 0 * t, -k * t * (t - 1) * (2 * t - 1) / 12, 0 * t,
         t * (t - 1) * (2 * t - 1) * (3 * t**2 - 3 * t - 1) / 720]
    S = [0 * t, t * (t - 1) / 2, 0 * t, -k * t**2 * (t - 1) ** 2 / 24, 0 * t]
    Ct = [t * (t - 1) / 2, 0 * t, -k * t * (t - 2) * (t - 1) ** 2 / 24, 0 * t,
          t * (t - 2) * (t - 1) ** 2 * (2 * t**2 - 4 * t - 1) / 1440]
    St = [0 * t, t * (t - 2) * (t - 1) / 6, 0 * t,
          -k * t * (t - 2) * (t - 1) * (3 * t**2 - 6 * t + 1) / 360, 0 * t]
    return C, S, Ct, St


_SERIES = {1: _series_terms(1), -1: _series_terms(-1)}


def _series(phi, t, kind, deriv):
    out = []
    for terms in _SERIES[kind]:
        val = 0.0
        for power, poly in enumerate(terms):
            if deriv:
                poly = poly.deriv(deriv)
            val = val + poly(t) * phi**power
        out.append(val)
    return tuple(out)


def _closed_trig(phi, t, deriv):
    h = 0.5 * phi
    sh = math.sin(h)
    q = 4.0 * sh * sh
    if deriv == 0:
        C = 0.5 + np.sin(t * phi - h) / (2 * sh)
        S = np.sin(0.5 * t * phi) * np.sin(0.5 * (t - 1) * phi) / sh
        Ct = 0.5 * t + 2 * np.sin(0.5 * t * phi) * np.sin(0.5 * (t - 2) * phi) / q
        St = ((t - 1) * math.sin(phi) - np.sin((t - 1) * phi)) / q
    elif deriv == 1:
        C = phi * np.cos(t * phi - h) / (2 * sh)
        S = phi * np.sin(t * phi - h) / (2 * sh)
        Ct = 0.5 + phi * np.sin((t - 1) * phi) / q
        St = (math.sin(phi) - phi * np.cos((t - 1) * phi)) / q
    else:
        C = -phi**2 * np.sin(t * phi - h) / (2 * sh)
        S = phi**2 * np.cos(t * phi - h) / (2 * sh)
        Ct = phi**2 * np.cos((t - 1) * phi) / q
        St = phi**2 * np.sin((t - 1) * phi) / q
    return C, S, Ct, St


def _closed_hyp(phi, t, deriv):
    h = 0.5 * phi
    sh = math.sinh(h)
    q = 4.0 * sh * sh
    if deriv == 0:
        C = 0.5 + np.sinh(t * phi - h) / (2 * sh)
        S = np.sinh(0.5 * t * phi) * np.sinh(0.5 * (t - 1) * phi) / sh
        Ct = 0.5 * t + 2 * np.sinh(0.5 * t * phi) * np.sinh(0.5 * (t - 2) * phi) / q
        St = (np.sinh((t - 1) * phi) - (t - 1) * math.sinh(phi)) / q
    elif deriv == 1:
        C = phi * np.cosh(t * phi - h) / (2 * sh)
        S = phi * np.sinh(t * phi - h) / (2 * sh)
        Ct = 0.5 + phi * np.sinh((t - 1) * phi) / q
        St = (phi * np.cosh((t - 1) * phi) - math.sinh(phi)) / q
    else:
        C = phi**2 * np.sinh(t * phi - h) / (2 * sh)
        S = phi**2 * np.cosh(t * phi - h) / (2 * sh)
        Ct = phi**2 * np.cosh((t - 1) * phi) / q
        St = phi**2 * np.sinh((t - 1) * phi) / q
    return C, S, Ct, St


def phase_sums(phi: float, t, sig: Signature, deriv: int = 0):
    """Return (C_t, S_t, C~_t, S~_t), or their ``deriv``-th t-derivative.

    ``t`` may be a scalar or an array. Hyperbolic versions are used for the
    pseudo-isotropic signature. Below ``SERIES_THRESHOLD`` in |phi| a 4th-order
    Taylor expansion replaces the closed forms; at phi = 0 this gives the
    limits (t, 0, t(t-1)/2, 0).
    """
    if deriv not in (0, 1, 2):
        raise ValueError("deriv must be 0, 1 or 2")
    phi = float(phi)
    t = np.asarray(t, dtype=float) if np.ndim(t) else float(t)
    kind = 1 if sig is Signature.SimplyIsotropic else -1
    if abs(phi) < SERIES_THRESHOLD:
        vals = _series(phi, t, kind, deriv)
    elif kind == 1:
        vals = _closed_trig(phi, t, deriv)
    else:
        vals = _closed_hyp(phi, t, deriv)
    if np.ndim(t) == 0:
        return tuple(float(v) for v in vals)
    return tuple(np.broadcast_to(v, np.shape(t)).astype(float) for v in vals)


# --- subgroups --------------------------------------------------------------

class MotionType(enum.Enum):
    I_Rotation = 1
    II_Helicoidal = 2
    III_ParabolicRotation = 3
    IV_WarpedTranslation = 4
    V_Shear = 5
    VI_TranslationNonIsotropic = 6
    VII_TranslationIsotropic = 7

    @property
    def roman(self) -> str:
        return self.name.split("_", 1)[0]

    @property
    def label(self) -> str:
        return {
            1: "rotation",
            2: "helicoidal",
            3: "parabolic rotation",
            4: "warped translation",
            5: "shear",
            6: "translation",
            7: "isotropic translation",
        }[self.value]

    @property
    def ruled(self) -> bool:
        return self.value >= 4


@dataclass(frozen=True)
class MotionSubgroup:
    sig: Signature
    phi: float = 0.0
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    c1: float = 0.0
    c2: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "sig", Signature.parse(self.sig))
        for name in ("phi", "a", "b", "c", "c1", "c2"):
            val = float(getattr(self, name))
            if not math.isfinite(val):
                raise ValueError(f"subgroup parameter {name} is not finite")
            object.__setattr__(self, name, val)

    @property
    def D1(self) -> float:
        return self.a * self.c1 + self.b * self.c2

    @property
    def D2(self) -> float:
        # pseudo sums pick up sinh(k phi) with coefficient a c2 + b c1
        if self.sig is Signature.SimplyIsotropic:
            return self.a * self.c2 - self.b * self.c1
        return self.a * self.c2 + self.b * self.c1

    def __call__(self, t) -> Motion4:
        return evaluate(self, t)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("sig")
        return {"signature": self.sig.value, **d}

    @classmethod
    def from_dict(cls, d: dict) -> "MotionSubgroup":
        known = {"signature", "phi", "a", "b", "c", "c1", "c2"}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown subgroup keys: {sorted(extra)}")
        if "signature" not in d:
            raise ValueError("subgroup needs a 'signature'")
        return cls(Signature.parse(d["signature"]),
                   **{k: float(d.get(k, 0.0)) for k in known - {"signature"}})


def evaluate_arrays(g: MotionSubgroup, t, deriv: int = 0):
    """Linear part and translation of the ``deriv``-th t-derivative of psi_t.

    Returns ``(A, a)`` with shapes ``t.shape + (3, 3)`` and ``t.shape + (3,)``.
    For deriv > 0 the result is the derivative of the affine map, so the
    linear part is the derivative of the matrix block.
    """
    t = np.asarray(t, dtype=float)
    C, S, Ct, St = phase_sums(g.phi, t, g.sig, deriv)
    phi = g.phi
    tp = t * phi
    A = np.zeros(t.shape + (3, 3))
    if g.sig is Signature.SimplyIsotropic:
        if deriv == 0:
            cs, sn = np.cos(tp), np.sin(tp)
        elif deriv == 1:
            cs, sn = -phi * np.sin(tp), phi * np.cos(tp)
        else:
            cs, sn = -phi**2 * np.cos(tp), -phi**2 * np.sin(tp)
        A[..., 0, 0], A[..., 0, 1] = cs, -sn
        A[..., 1, 0], A[..., 1, 1] = sn, cs
        A[..., 2, 0] = g.c1 * C + g.c2 * S
        A[..., 2, 1] = g.c2 * C - g.c1 * S
        tx = g.a * C - g.b * S
        ty = g.b * C + g.a * S
    else:
        if deriv == 0:
            ch, sh = np.cosh(tp), np.sinh(tp)
        elif deriv == 1:
            ch, sh = phi * np.sinh(tp), phi * np.cosh(tp)
        else:
            ch, sh = phi**2 * np.cosh(tp), phi**2 * np.sinh(tp)
        A[..., 0, 0], A[..., 0, 1] = ch, sh
        A[..., 1, 0], A[..., 1, 1] = sh, ch
        A[..., 2, 0] = g.c1 * C + g.c2 * S
        A[..., 2, 1] = g.c1 * S + g.c2 * C
        tx = g.a * C + g.b * S
        ty = g.b * C + g.a * S
    if deriv == 0:
        A[..., 2, 2] = 1.0
        lin, half = g.c * t, 0.5 * t
    elif deriv == 1:
        lin, half = g.c + 0 * t, 0.5 + 0 * t
    else:
        lin, half = 0 * t, 0 * t
    # the half-t term makes phi = 0 reproduce the limit motion c t + D1 t^2 / 2
    tz = lin + g.D1 * (Ct + half) + g.D2 * St
    a = np.stack([tx + 0 * t, ty + 0 * t, tz + 0 * t], axis=-1)
    return A, a


def evaluate(g: MotionSubgroup, t: float) -> Motion4:
    A, a = evaluate_arrays(g, float(t))
    m = np.eye(4)
    m[:3, :3] = A
    m[:3, 3] = a
    return Motion4(m, g.sig)


def generator_matrix(g: MotionSubgroup) -> np.ndarray:
    """psi_1 as a 4x4 array; this is the group element h the subgroup passes through."""
    return evaluate(g, 1.0).m.copy()


def _nz(x: float) -> bool:
    return x != 0.0


def classify(g: MotionSubgroup) -> MotionType:
    """Assign one of the seven printed types; zero tests are exact."""
    top = _nz(g.a) or _nz(g.b)
    shear = _nz(g.c1) or _nz(g.c2)
    iso = _nz(g.c)
    if _nz(g.phi):
        if top or shear:
            nearest = MotionType.II_Helicoidal if iso else MotionType.I_Rotation
            raise Unclassifiable(
                "rotation combined with translation/shear parts is a general "
                f"subgroup; nearest cell: {nearest.roman}", nearest)
        return MotionType.II_Helicoidal if iso else MotionType.I_Rotation
    if _nz(g.D1):
        return MotionType.III_ParabolicRotation
    if not iso and top and shear:
        return MotionType.IV_WarpedTranslation
    if not iso and not top and shear:
        return MotionType.V_Shear
    if not iso and top and not shear:
        return MotionType.VI_TranslationNonIsotropic
    if iso and not top and not shear:
        return MotionType.VII_TranslationIsotropic
    if not (iso or top or shear):
        raise Unclassifiable("all parameters vanish: the identity is not a 1-parameter subgroup type")
    if top and shear:
        nearest = MotionType.IV_WarpedTranslation
    elif shear:
        nearest = MotionType.V_Shear
    else:
        nearest = MotionType.VI_TranslationNonIsotropic
    raise Unclassifiable(
        f"isotropic rate c={g.c} combined with other parts; nearest cell: {nearest.roman}", nearest)


def orbit_shape(mtype: MotionType, sig: Signature) -> str:
    if mtype is MotionType.I_Rotation:
        return "circle" if sig is Signature.SimplyIsotropic else "hyperbola"
    if mtype is MotionType.II_Helicoidal:
        return "helix"
    if mtype is MotionType.III_ParabolicRotation:
        return "parabola"
    return "line"
