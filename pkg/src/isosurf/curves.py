"""Planar generating curves with value and derivative access."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import Signature
from .errors import ConfigError

_FD_STEP = np.finfo(float).eps ** (1.0 / 3.0)


class Plane(enum.Enum):
    XY = "xy"
    XZ = "xz"
    YZ = "yz"

    @property
    def axes(self) -> tuple[int, int]:
        return {"xy": (0, 1), "xz": (0, 2), "yz": (1, 2)}[self.value]

    @property
    def isotropic(self) -> bool:
        """True for the planes that contain the z-direction."""
        return self is not Plane.XY

    @classmethod
    def parse(cls, value) -> "Plane":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ConfigError(f"unknown plane {value!r} (expected xy, xz or yz)") from None


def _fd1(fn, u):
    h = _FD_STEP * np.maximum(1.0, np.abs(u))
    return (fn(u + h) - fn(u - h)) / (2 * h)


def _fd2(fn, u):
    h = np.finfo(float).eps ** 0.25 * np.maximum(1.0, np.abs(u))
    return (fn(u + h) - 2 * fn(u) + fn(u - h)) / (h * h)


@dataclass(frozen=True, eq=False)
class GeneratingCurve:
    """Curve u -> (f(u), g(u)) placed in ``plane``.

    Missing derivative callables fall back to central differences.
    """

    plane: Plane
    f: Callable
    g: Callable
    df: Optional[Callable] = None
    dg: Optional[Callable] = None
    d2f: Optional[Callable] = None
    d2g: Optional[Callable] = None
    kind: str = "custom"
    params: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "plane", Plane.parse(self.plane))

    def coords(self, u, order: int = 0):
        """The two in-plane coordinates (or their ``order``-th derivatives) at u."""
        u = np.asarray(u, dtype=float)
        if order == 0:
            fv, gv = self.f(u), self.g(u)
        elif order == 1:
            fv = self.df(u) if self.df else _fd1(self.f, u)
            gv = self.dg(u) if self.dg else _fd1(self.g, u)
        elif order == 2:
            fv = self.d2f(u) if self.d2f else _fd2(self.f, u)
            gv = self.d2g(u) if self.d2g else _fd2(self.g, u)
        else:
            raise ValueError("order must be 0, 1 or 2")
        fv = np.broadcast_to(np.asarray(fv, dtype=float), u.shape)
        gv = np.broadcast_to(np.asarray(gv, dtype=float), u.shape)
        return fv, gv

    def point(self, u, order: int = 0) -> np.ndarray:
        """Embedded curve point (shape ``u.shape + (3,)``) or its derivative."""
        fv, gv = self.coords(u, order)
        out = np.zeros(np.shape(fv) + (3,))
        i, j = self.plane.axes
        out[..., i] = fv
        out[..., j] = gv
        return out

    def check_signature(self, sig: Signature) -> None:
        from .errors import IncompatiblePlane

        if self.plane is Plane.YZ and sig is Signature.SimplyIsotropic:
            raise IncompatiblePlane("yz generating curves are only used in pseudo-isotropic space")

    def to_dict(self) -> dict:
        return {"plane": self.plane.value, "kind": self.kind, "params": list(self.params)}


def _poly(coeffs):
    p = np.polynomial.Polynomial(np.asarray(coeffs, dtype=float))
    return p, p.deriv(1), p.deriv(2)


def line(plane, p0=(0.0, 0.0), d=(1.0, 0.0)) -> GeneratingCurve:
    (x0, y0), (dx, dy) = map(float, p0), map(float, d)
    return GeneratingCurve(
        plane,
        lambda u: x0 + dx * u, lambda u: y0 + dy * u,
        lambda u: dx + 0 * u, lambda u: dy + 0 * u,
        lambda u: 0 * u, lambda u: 0 * u,
        kind="line", params=(x0, y0, dx, dy))


def circle(plane, R=1.0, center=(0.0, 0.0)) -> GeneratingCurve:
    R = float(R)
    cx, cy = map(float, center)
    return GeneratingCurve(
        plane,
        lambda u: cx + R * np.cos(u), lambda u: cy + R * np.sin(u),
        lambda u: -R * np.sin(u), lambda u: R * np.cos(u),
        lambda u: -R * np.cos(u), lambda u: -R * np.sin(u),
        kind="circle", params=(R, cx, cy))


def hyperbola(plane, R=1.0, center=(0.0, 0.0)) -> GeneratingCurve:
    """(R cosh u, R sinh u): the pseudo-isotropic circle of radius R."""
    R = float(R)
    cx, cy = map(float, center)
    return GeneratingCurve(
        plane,
        lambda u: cx + R * np.cosh(u), lambda u: cy + R * np.sinh(u),
        lambda u: R * np.sinh(u), lambda u: R * np.cosh(u),
        lambda u: R * np.cosh(u), lambda u: R * np.sinh(u),
        kind="hyperbola", params=(R, cx, cy))


def parabola(plane, p=1.0) -> GeneratingCurve:
    """(p u, p u^2 / 2); in an isotropic plane this is a parabolic circle of parameter p."""
    p = float(p)
    return GeneratingCurve(
        plane,
        lambda u: p * u, lambda u: 0.5 * p * u * u,
        lambda u: p + 0 * u, lambda u: p * u,
        lambda u: 0 * u, lambda u: p + 0 * u,
        kind="parabola", params=(p,))


def poly(plane, g_coeffs, f_coeffs=(0.0, 1.0)) -> GeneratingCurve:
    """Polynomial curve; by default the graph u -> (u, sum g_k u^k)."""
    f, f1, f2 = _poly(f_coeffs)
    g, g1, g2 = _poly(g_coeffs)
    params = tuple(float(c) for c in g_coeffs)
    if tuple(f_coeffs) != (0.0, 1.0):
        params = {"f": [float(c) for c in f_coeffs], "g": list(params)}
    curve = GeneratingCurve(plane, f, g, f1, g1, f2, g2, kind="poly", params=())
    object.__setattr__(curve, "params", params)
    return curve


def from_spec(spec: dict) -> GeneratingCurve:
    """Build a curve from ``{"plane", "kind", "params"}``."""
    if not isinstance(spec, dict):
        raise ConfigError("curve spec must be an object with plane/kind/params")
    try:
        plane = Plane.parse(spec.get("plane", "xy"))
        kind = spec["kind"]
    except KeyError:
        raise ConfigError("curve spec is missing 'kind'") from None
    params = spec.get("params", [])
    try:
        if kind == "line":
            x0, y0, dx, dy = params
            return line(plane, (x0, y0), (dx, dy))
        if kind in ("circle", "hyperbola"):
            R, cx, cy = (list(params) + [0.0, 0.0])[:3] if params else (1.0, 0.0, 0.0)
            return (circle if kind == "circle" else hyperbola)(plane, R, (cx, cy))
        if kind == "parabola":
            return parabola(plane, *(params or [1.0]))
        if kind == "poly":
            if isinstance(params, dict):
                return poly(plane, params["g"], params.get("f", (0.0, 1.0)))
            return poly(plane, params)
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigError(f"bad params for curve kind {kind!r}: {params!r} ({exc})") from None
    raise ConfigError(f"unknown curve kind {kind!r} (line, circle, parabola, hyperbola, poly)")
