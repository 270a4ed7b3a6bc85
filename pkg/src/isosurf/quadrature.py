"""Adaptive Simpson quadrature and anchored cumulative integrals."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import NoConvergence

DEFAULT_TOL = 1e-10
MAX_DEPTH = 40


def quad(f: Callable[[float], float], lo: float, hi: float,
         tol: float = DEFAULT_TOL, max_depth: int = MAX_DEPTH) -> float:
    """Integral of f over [lo, hi] by adaptive Simpson with Richardson correction.

    Panels are split until |S_left + S_right - S_whole| <= 15 tol_panel. The
    tolerance is halved per level but never drops below a few ulps of the
    magnitude of the whole integral, so endpoint square-root zeros and smooth
    integrands alike stop short of chasing round-off.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    lo, hi = float(lo), float(hi)
    if lo == hi:
        return 0.0
    sign = 1.0
    if hi < lo:
        lo, hi, sign = hi, lo, -1.0

    fa, fm, fb = f(lo), f(0.5 * (lo + hi)), f(hi)
    whole = (hi - lo) * (fa + 4 * fm + fb) / 6.0
    if not all(map(math.isfinite, (fa, fm, fb))):
        raise NoConvergence(f"integrand is not finite on [{lo}, {hi}]")

    scale = abs(whole) + (hi - lo) * (abs(fa) + abs(fm) + abs(fb)) / 3.0
    floor = 64 * np.finfo(float).eps * scale
    total = 0.0
    stack = [(lo, hi, fa, fm, fb, whole, tol, 0)]
    while stack:
        a, b, fa, fm, fb, whole, eps, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        if not (math.isfinite(flm) and math.isfinite(frm)):
            raise NoConvergence(f"integrand is not finite near s={m}")
        left = (m - a) * (fa + 4 * flm + fm) / 6.0
        right = (b - m) * (fm + 4 * frm + fb) / 6.0
        delta = left + right - whole
        if abs(delta) <= 15 * max(eps, floor) or b - a <= 4 * np.finfo(float).eps * max(1.0, abs(m)):
            total += left + right + delta / 15.0
            continue
        if depth >= max_depth:
            raise NoConvergence(
                f"adaptive Simpson hit depth {max_depth} on [{a}, {b}] (error estimate {abs(delta) / 15:.3g})")
        stack.append((a, m, fa, flm, fm, left, 0.5 * eps, depth + 1))
        stack.append((m, b, fm, frm, fb, right, 0.5 * eps, depth + 1))
    return sign * total


class CumulativeIntegral:
    """F(s) = int_base^s f on [lo, hi], cached at evenly spaced knots.

    Evaluating F costs one short quadrature from the nearest knot, which keeps
    iterated (nested) integrals cheap.
    """

    def __init__(self, f: Callable[[float], float], lo: float, hi: float,
                 base: float | None = None, panels: int = 64, tol: float = DEFAULT_TOL):
        if not hi > lo:
            raise ValueError("CumulativeIntegral needs lo < hi")
        self.f = f
        self.tol = tol
        self.knots = np.linspace(lo, hi, panels + 1)
        pieces = [quad(f, a, b, tol) for a, b in zip(self.knots[:-1], self.knots[1:])]
        cum = np.concatenate([[0.0], np.cumsum(pieces)])
        self._cum = cum
        self.base = lo if base is None else float(base)
        self._offset = 0.0
        self._offset = self._raw(self.base)

    def _raw(self, s: float) -> float:
        k = int(np.clip(np.searchsorted(self.knots, s) - 1, 0, len(self.knots) - 2))
        # step to the closer knot of the panel so the correction stays short
        if s - self.knots[k] > self.knots[k + 1] - s:
            k += 1
        return self._cum[k] + quad(self.f, self.knots[k], s, self.tol)

    def __call__(self, s: float) -> float:
        return self._raw(float(s)) - self._offset


def vectorize_unique(fn: Callable[[float], float]) -> Callable:
    """Lift a scalar function to arrays, evaluating each distinct input once."""

    def lifted(s):
        s = np.asarray(s, dtype=float)
        if s.ndim == 0:
            return float(fn(float(s)))
        uniq, inv = np.unique(s.ravel(), return_inverse=True)
        vals = np.array([fn(float(v)) for v in uniq])
        return vals[inv].reshape(s.shape)

    return lifted
