"""Invariant suites run by ``isosurf verify`` and reused by the test-suite.

Every suite returns a :class:`SuiteResult` with its worst observed error and
the tolerance it was judged against.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .core import Signature
from .curvature import brioschi_curvature, curvatures_closed_form, curvatures_numeric
from .curves import GeneratingCurve, Plane, parabola, poly
from .errors import ChartUnavailable, ConfigError
from .motion import MotionSubgroup, MotionType, compose, evaluate, phase_sums, SERIES_THRESHOLD
from .prescribed import (CurvatureProfile, solve_H_helicoidal_i, solve_H_parabolic_i,
                         solve_K_helicoidal_i, solve_K_helicoidal_ni, solve_K_parabolic_i)
from .surfaces import GraphSurface, InvariantSurface, is_ruled, metric, normal_form_chart

SIGS = (Signature.SimplyIsotropic, Signature.PseudoIsotropic)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_error: float
    tolerance: float
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0
    # max_error is the worst error/tolerance ratio over several checks
    normalized: bool = False

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        if self.normalized:
            return f"{flag} {self.name}: worst error/tol ratio {self.max_error:.3e} (limit 1)"
        return f"{flag} {self.name}: max error {self.max_error:.3e} (tol {self.tolerance:.1e})"

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "max_error": self.max_error,
                "tolerance": self.tolerance, "normalized": self.normalized, "seconds": self.seconds, "detail": self.detail}


def _timed(fn):
    def run(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# --- sample sets ------------------------------------------------------------

def sample_curves() -> dict[Plane, GeneratingCurve]:
    """Smooth, non-degenerate curves used across the differential tests."""
    xy = poly(Plane.XY, [0.5, -0.5, 0.0, 0.2], [1.3, 1.0, 1.0 / 3.0])

    def iso(plane):
        return GeneratingCurve(
            plane,
            lambda u: 1.3 + u + u * u / 3.0, lambda u: np.sin(u) + u * u,
            lambda u: 1.0 + 2.0 * u / 3.0, lambda u: np.cos(u) + 2.0 * u,
            lambda u: 2.0 / 3.0 + 0.0 * u, lambda u: 2.0 - np.sin(u),
            kind="sample")

    return {Plane.XY: xy, Plane.XZ: iso(Plane.XZ), Plane.YZ: iso(Plane.YZ)}


CELL_PARAMS = {
    MotionType.I_Rotation: dict(phi=1.2),
    MotionType.II_Helicoidal: dict(phi=1.2, c=0.8),
    MotionType.III_ParabolicRotation: dict(a=0.7, b=-1.5, c=0.8, c1=1.0 / 3.0, c2=-2.0 / 3.0),
    MotionType.IV_WarpedTranslation: dict(a=2.0, b=-1.0, c1=0.5, c2=1.0),
    MotionType.VI_TranslationNonIsotropic: dict(a=0.7, b=-1.5),
}
U_RANGE = (0.2, 1.0)


def closed_form_cells() -> list[InvariantSurface]:
    """One surface for every family that has a closed-form curvature (25 cells)."""
    curves = sample_curves()
    cells = []
    for sig in SIGS:
        planes = [Plane.XY, Plane.XZ] + ([Plane.YZ] if sig is Signature.PseudoIsotropic else [])
        for plane in planes:
            for params in CELL_PARAMS.values():
                cells.append(InvariantSurface(curves[plane], MotionSubgroup(sig, **params)))
    return cells


def random_subgroup(rng: np.random.Generator, sig: Signature, scale: float = 2.0) -> MotionSubgroup:
    return MotionSubgroup(sig, *rng.uniform(-scale, scale, 6))


def random_typed_subgroup(rng: np.random.Generator, sig: Signature, mtype: MotionType) -> MotionSubgroup:
    """Parameters drawn on a quarter grid so the exact zero tests of classify hold."""

    def q(lo=1, hi=8):
        return float(rng.choice([-1, 1]) * rng.integers(lo, hi + 1)) / 4.0

    n = mtype.value
    if n == 1:
        return MotionSubgroup(sig, phi=q())
    if n == 2:
        return MotionSubgroup(sig, phi=q(), c=q())
    if n == 3:
        while True:
            g = MotionSubgroup(sig, a=q(), b=q(), c=q(0), c1=q(), c2=q())
            if g.D1 != 0.0:
                return g
    if n == 4:
        a, b, k = q(), q(), q()
        return MotionSubgroup(sig, a=a, b=b, c1=-k * b, c2=k * a)
    if n == 5:
        return MotionSubgroup(sig, c1=q(), c2=q(0))
    if n == 6:
        return MotionSubgroup(sig, a=q(), b=q(0))
    return MotionSubgroup(sig, c=q())


def sphere_cases(p: float = 2.0, phi: float = 0.9, c1: float = 0.6, c2: float = -0.4):
    """(surface, quadric residual) pairs reproducing the parabolic-sphere constructions."""
    S, P = Signature.SimplyIsotropic, Signature.PseudoIsotropic
    xz = parabola(Plane.XZ, p)
    yz = parabola(Plane.YZ, p)

    def elliptic(x):
        return x[..., 2] - (x[..., 0] ** 2 + x[..., 1] ** 2) / (2 * p)

    def hyperbolic(x):
        return x[..., 2] - (x[..., 0] ** 2 - x[..., 1] ** 2) / (2 * p)

    def hyperbolic_swapped(x):
        return x[..., 2] - (x[..., 1] ** 2 - x[..., 0] ** 2) / (2 * p)

    return [
        ("simply rotation", InvariantSurface(xz, MotionSubgroup(S, phi=phi)), elliptic),
        ("simply parabolic", InvariantSurface(xz, MotionSubgroup(S, a=p * c1, b=p * c2, c1=c1, c2=c2)),
         elliptic),
        ("pseudo rotation", InvariantSurface(xz, MotionSubgroup(P, phi=phi)), hyperbolic),
        ("pseudo parabolic", InvariantSurface(xz, MotionSubgroup(P, a=p * c1, b=-p * c2, c1=c1, c2=c2)),
         hyperbolic),
        ("pseudo rotation yz", InvariantSurface(yz, MotionSubgroup(P, phi=phi)), hyperbolic_swapped),
        ("pseudo parabolic yz",
         InvariantSurface(yz, MotionSubgroup(P, a=-p * c1, b=p * c2, c1=c1, c2=c2)), hyperbolic_swapped),
    ]


PROFILE_DOMAIN = (0.5, 2.0)


def solver_cells(value, domain=PROFILE_DOMAIN) -> list[tuple[str, Callable]]:
    """Every solvable (solver, signature, plane/causal sign) cell for a constant profile.

    ``value`` may be a number (constant profile) or a CurvatureProfile.
    """
    prof = value if isinstance(value, CurvatureProfile) else CurvatureProfile.const(value, domain)
    S, P = Signature.SimplyIsotropic, Signature.PseudoIsotropic
    cells = []
    for sig in SIGS:
        planes = [Plane.XZ] if sig is S else [Plane.XZ, Plane.YZ]
        for pl in planes:
            cells.append((f"K helicoidal i {sig.value} {pl.value}",
                          lambda sig=sig, pl=pl: solve_K_helicoidal_i(prof, 0.5, 1.0, 0.0, 1.5, sig, pl)))
            cells.append((f"K parabolic i {sig.value} {pl.value}",
                          lambda sig=sig, pl=pl: solve_K_parabolic_i(prof, 1.0, 0.7, 0.3, 0.4, 0.0, 0.2,
                                                                     sig, pl)))
            cells.append((f"H parabolic i {sig.value} {pl.value}",
                          lambda sig=sig, pl=pl: solve_H_parabolic_i(prof, 1.0, 0.7, 0.3, 0.4, 0.0, 0.2,
                                                                     sig, pl)))
        for eps in ([1] if sig is S else [1, -1]):
            cells.append((f"H helicoidal i {sig.value} eps={eps}",
                          lambda sig=sig, eps=eps: solve_H_helicoidal_i(prof, 0.0, 0.3, sig, eps, c=0.7)))
            k0 = -3.0 if (sig is P and eps == 1) else 1.0
            cells.append((f"K helicoidal ni {sig.value} eps={eps}",
                          lambda sig=sig, eps=eps, k0=k0: solve_K_helicoidal_ni(prof, 1.0, 1.0, k0, 8.0,
                                                                                sig, eps)))
    return cells


def roundtrip_error(out, n: int = 50, t_values=(-0.5, -0.25, 0.0, 0.25, 0.5)) -> float:
    s = out.samples(n)[:, None]
    t = np.asarray(t_values)[None, :]
    surf = InvariantSurface(out.curve, out.group)
    K, H = curvatures_numeric(surf, s, t)
    val = K if out.quantity == "K" else H
    return float(np.max(np.abs(val - out.profile(s))))


# --- closed-form Example solutions -----------------------------------------

def example_closed_forms() -> list[tuple[str, Callable[[], float]]]:
    """(name, max deviation) checks of solver output against explicit solutions."""
    lo_d, hi_d = PROFILE_DOMAIN
    checks = []

    def flat(sig):
        c, phi, k0, k1 = 0.5, 1.0, 0.0, 1.5
        out = solve_K_helicoidal_i(CurvatureProfile.const(0.0, PROFILE_DOMAIN), c, phi, k0, k1, sig)
        A = (c / phi) ** 2
        if sig is Signature.SimplyIsotropic:
            def closed(s):
                q = s * np.sqrt(k1 - A / s**2)
                return q + (c / phi) * np.arctan(c / (phi * q))
        else:
            def closed(s):
                root = np.sqrt(k1 + A / s**2)
                ra = abs(c / phi)
                return s * root - ra * np.log(ra / s + root)
        s = np.linspace(*out.validity, 41)
        z = out.curve.coords(s)[1]
        zc = closed(s)
        zc = zc - zc[0] + z[0]
        return float(np.max(np.abs(z - zc)))

    checks.append(("flat helicoidal arctan form (simply)", lambda: flat(Signature.SimplyIsotropic)))
    checks.append(("flat helicoidal log form (pseudo)", lambda: flat(Signature.PseudoIsotropic)))

    def revolution(sig, K0):
        # c = 0: z' = sqrt(z1 + K0 s^2) with z1 = k1 - K0 s0^2
        k1 = 1.5
        out = solve_K_helicoidal_i(CurvatureProfile.const(K0, PROFILE_DOMAIN), 0.0, 1.0, 0.0, k1, sig)
        z1 = k1 - K0 * lo_d**2
        r = np.sqrt(abs(K0))

        def F(s):
            root = np.sqrt(np.maximum(z1 + K0 * s * s, 0.0))
            # arctan2 form of arcsin stays accurate where the root vanishes
            tail = np.arcsinh(r * s / np.sqrt(z1)) if K0 > 0 else np.arctan2(r * s, root)
            return 0.5 * s * root + z1 / (2 * r) * tail

        s = np.linspace(*out.validity, 41)
        z = out.curve.coords(s)[1]
        return float(np.max(np.abs((z - z[0]) - (F(s) - F(s[0])))))

    for sig in SIGS:
        for K0 in (-0.5, 0.5):
            checks.append((f"constant-K revolution ({sig.value}, {K0:+})",
                           lambda sig=sig, K0=K0: revolution(sig, K0)))

    def logarithmoid(sig, eps):
        h0, h1 = 0.25, 0.3
        out = solve_H_helicoidal_i(CurvatureProfile.const(0.0, PROFILE_DOMAIN), h0, h1, sig, eps)
        s = np.linspace(lo_d, hi_d, 41)
        return float(np.max(np.abs(out.curve.coords(s)[1] - (h0 + h1 * np.log(s)))))

    checks.append(("minimal logarithmoid (simply)", lambda: logarithmoid(Signature.SimplyIsotropic, 1)))
    checks.append(("minimal logarithmoid (pseudo, eps=+1)", lambda: logarithmoid(Signature.PseudoIsotropic, 1)))
    checks.append(("minimal logarithmoid (pseudo, eps=-1)", lambda: logarithmoid(Signature.PseudoIsotropic, -1)))

    def cmc(sig, eps, H0):
        # z - eps H0 s^2 / 2 must lie in span{1, ln s}
        out = solve_H_helicoidal_i(CurvatureProfile.const(H0, PROFILE_DOMAIN), 0.25, 0.3, sig, eps)
        s = np.linspace(lo_d, hi_d, 41)
        rest = out.curve.coords(s)[1] - eps * H0 * s * s / 2
        basis = np.stack([np.ones_like(s), np.log(s)], axis=1)
        coef = np.linalg.lstsq(basis, rest, rcond=None)[0]
        return float(np.max(np.abs(rest - basis @ coef)))

    for sig, eps in ((Signature.SimplyIsotropic, 1), (Signature.PseudoIsotropic, 1),
                     (Signature.PseudoIsotropic, -1)):
        for H0 in (-0.5, 0.5):
            checks.append((f"CMC logarithmoid ({sig.value}, eps={eps:+d}, H={H0:+})",
                           lambda sig=sig, eps=eps, H0=H0: cmc(sig, eps, H0)))

    def quadratic(solver, sig, plane, K0, coef_fn):
        a, b, c1, c2 = 1.0, 0.7, 0.3, 0.4
        out = solver(CurvatureProfile.const(K0, PROFILE_DOMAIN), a, b, c1, c2, 0.1, 0.2, sig, plane)
        s = np.linspace(lo_d, hi_d, 41)
        z = out.curve.coords(s)[1]
        coef = coef_fn(a, b, c1, c2, K0)
        # fix z0, z1 from the value and slope at the first sample
        dz0 = float(out.curve.coords(s[:1], 1)[1][0])
        z1 = dz0 - 2 * coef * s[0]
        z0 = z[0] - z1 * s[0] - coef * s[0] ** 2
        return float(np.max(np.abs(z - (z0 + z1 * s + coef * s * s))))

    S, P = Signature.SimplyIsotropic, Signature.PseudoIsotropic
    cases = [
        ("K", S, Plane.XZ, lambda a, b, c1, c2, k: (c1**2 + b**2 * k) / (2 * (a * c1 + b * c2))),
        ("H", S, Plane.XZ, lambda a, b, c1, c2, k: (a * c1 - b * c2 + 2 * b**2 * k) / (2 * (a**2 + b**2))),
        ("K", P, Plane.XZ, lambda a, b, c1, c2, k: (c1**2 - b**2 * k) / (2 * (a * c1 + b * c2))),
        ("H", P, Plane.XZ, lambda a, b, c1, c2, k: (a * c1 - b * c2 - 2 * b**2 * k) / (2 * (a**2 - b**2))),
        # on the yz-plane the shear entering the quadratic term is c2
        ("K", P, Plane.YZ, lambda a, b, c1, c2, k: (c2**2 - a**2 * k) / (2 * (a * c1 + b * c2))),
        ("H", P, Plane.YZ, lambda a, b, c1, c2, k: (a * c1 - b * c2 - 2 * a**2 * k) / (2 * (a**2 - b**2))),
    ]
    for q, sig, plane, coef in cases:
        solver = solve_K_parabolic_i if q == "K" else solve_H_parabolic_i
        for K0 in (-0.5, 0.5):
            checks.append((f"constant-{q} parabolic quadratic ({sig.value}, {plane.value}, {K0:+})",
                           lambda solver=solver, sig=sig, plane=plane, K0=K0, coef=coef:
                           quadratic(solver, sig, plane, K0, coef)))
    return checks


# --- suites -----------------------------------------------------------------

@_timed
def suite_group_law(n: int = 100, seed: int = 0, tol: float = 1e-9) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for sig in SIGS:
        for _ in range(n):
            g = random_subgroup(rng, sig)
            s, t = rng.uniform(-3, 3, 2)
            lhs = evaluate(g, s + t).m
            rhs = compose(evaluate(g, s), evaluate(g, t)).m
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return SuiteResult("group law", worst <= tol, worst, tol, {"samples": 2 * n})


@_timed
def suite_determinant(n: int = 100, seed: int = 0, tol: float = 1e-10) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for sig in SIGS:
        for _ in range(n):
            g = random_subgroup(rng, sig)
            for t in rng.uniform(-3, 3, 2):
                worst = max(worst, abs(float(np.linalg.det(evaluate(g, t).m)) - 1.0))
    return SuiteResult("det = 1", worst <= tol, worst, tol)


@_timed
def suite_continuity(tol_limit: float = 1e-4, tol_switch: float = 1e-9, seed: int = 0) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst_limit = worst_switch = 0.0
    ts = np.linspace(-2, 2, 41)
    for sig in SIGS:
        for _ in range(20):
            a, b, c, c1, c2 = rng.uniform(-2, 2, 5)
            g0 = MotionSubgroup(sig, 0.0, a, b, c, c1, c2)
            g1 = MotionSubgroup(sig, 1e-6, a, b, c, c1, c2)
            for t in ts:
                worst_limit = max(worst_limit, float(np.max(np.abs(evaluate(g1, t).m - evaluate(g0, t).m))))
        for t in ts:
            for d in range(3):
                below = np.array(phase_sums(SERIES_THRESHOLD * (1 - 1e-12), t, sig, d))
                above = np.array(phase_sums(SERIES_THRESHOLD * (1 + 1e-12), t, sig, d))
                worst_switch = max(worst_switch, float(np.max(np.abs(below - above))))
    ok = worst_limit <= tol_limit and worst_switch <= tol_switch
    return SuiteResult("phi -> 0 continuity", ok, max(worst_limit / tol_limit, worst_switch / tol_switch),
                       1.0, {"limit_motion_error": worst_limit, "switchover_error": worst_switch,
                             "limit_tol": tol_limit, "switch_tol": tol_switch}, normalized=True)


@_timed
def suite_differential(closed_form: Callable = curvatures_closed_form, rel_tol: float = 1e-6,
                       t_tol: float = 1e-8) -> SuiteResult:
    """|closed - numeric| <= rel_tol |closed| + 1e-12 and t-independence of the numeric values."""
    u = np.linspace(*U_RANGE, 50)[:, None]
    t = np.linspace(-0.5, 0.5, 5)[None, :]
    worst, worst_t, failing = 0.0, 0.0, []
    cells = closed_form_cells()
    for S in cells:
        numeric = curvatures_numeric(S, u, t)
        closed = closed_form(S, u)
        bad = False
        for n, c in zip(numeric, closed):
            c = np.broadcast_to(np.asarray(c, float), n.shape)
            dev = np.abs(n - c)
            drift = np.abs(n - n[:, :1])
            bad |= bool(np.any(dev > rel_tol * np.abs(c) + 1e-12))
            bad |= bool(np.any(drift > t_tol * np.abs(n[:, :1]) + 1e-12))
            worst = max(worst, float(np.max(dev / np.maximum(np.abs(c), 1.0))))
            worst_t = max(worst_t, float(np.max(drift / np.maximum(np.abs(n[:, :1]), 1.0))))
        if bad:
            failing.append(S.family.name)
    return SuiteResult("closed-form vs numeric curvature", not failing, worst, rel_tol,
                       {"cells": len(cells), "failing": failing, "t_dependence": worst_t})


@_timed
def suite_flatness(tol_brioschi: float = 1e-5, tol_chart: float = 1e-8) -> SuiteResult:
    u = np.linspace(*U_RANGE, 7)[:, None]
    t = np.linspace(-0.5, 0.5, 3)[None, :]
    worst_b = worst_c = 0.0
    families = closed_form_cells()
    curves = sample_curves()
    # general and non-closed-form families still have to be flat when admissible
    for sig in SIGS:
        families.append(InvariantSurface(curves[Plane.XZ], MotionSubgroup(sig, 0.8, 0.5, -0.3, 0.4, 0.2, 0.1)))
        families.append(InvariantSurface(curves[Plane.XY], MotionSubgroup(sig, 0.8, 0.5, -0.3, 0.4, 0.2, 0.1)))
    for S in families:
        worst_b = max(worst_b, float(np.max(np.abs(brioschi_curvature(S, u, t)))))
        try:
            chart = normal_form_chart(S)
        except ChartUnavailable:
            continue
        g = metric(S, u, t)
        pb = chart.pullback(u, t)
        scale = np.maximum(1.0, np.abs(g[0]) + np.abs(g[2]))
        worst_c = max(worst_c, max(float(np.max(np.abs(a - b) / scale)) for a, b in zip(g, pb)))
    ok = worst_b <= tol_brioschi and worst_c <= tol_chart
    return SuiteResult("flatness", ok, max(worst_b / tol_brioschi, worst_c / tol_chart), 1.0,
                       {"brioschi": worst_b, "chart_pullback": worst_c,
                        "brioschi_tol": tol_brioschi, "chart_tol": tol_chart}, normalized=True)


@_timed
def suite_sphere(tol_quadric: float = 1e-10, tol_K: float = 1e-8) -> SuiteResult:
    uu, tt = np.meshgrid(np.linspace(-2, 2, 21), np.linspace(-2, 2, 21), indexing="ij")
    worst_q = 0.0
    for _, S, residual in sphere_cases():
        worst_q = max(worst_q, float(np.max(np.abs(residual(S.point(uu, tt))))))
    p = 2.0
    graph = GraphSurface(lambda x, y: (x * x + y * y) / (2 * p), Signature.SimplyIsotropic)
    K, _ = curvatures_numeric(graph, np.linspace(-1, 1, 5)[:, None], np.linspace(-1, 1, 5)[None, :])
    worst_K = float(np.max(np.abs(K - 1 / p**2)))
    ok = worst_q <= tol_quadric and worst_K <= tol_K
    return SuiteResult("sphere invariance", ok, max(worst_q / tol_quadric, worst_K / tol_K), 1.0,
                       {"quadric": worst_q, "graph_K": worst_K}, normalized=True)


@_timed
def suite_roundtrip(values=(-0.5, 0.0, 0.5), tol: float = 1e-5, tol_closed: float = 1e-8) -> SuiteResult:
    worst, failing, count = 0.0, [], 0
    for v in values:
        for name, run in solver_cells(v):
            err = roundtrip_error(run())
            count += 1
            worst = max(worst, err)
            if not err <= tol:
                failing.append(f"{name} (profile {v})")
    worst_closed = 0.0
    for name, check in example_closed_forms():
        dev = check()
        worst_closed = max(worst_closed, dev) if np.isfinite(dev) else np.inf
        if not dev <= tol_closed:
            failing.append(name)
    return SuiteResult("prescribed-curvature round trip", not failing, worst, tol,
                       {"runs": count, "failing": failing, "closed_form_deviation": worst_closed})


@_timed
def suite_ruled(draws: int = 50, seed: int = 0) -> SuiteResult:
    rng = np.random.default_rng(seed)
    curve = sample_curves()[Plane.XZ]
    wrong = []
    for sig in SIGS:
        for mtype in MotionType:
            for _ in range(draws):
                g = random_typed_subgroup(rng, sig, mtype)
                S = InvariantSurface(curve, g)
                if is_ruled(S) != mtype.ruled:
                    wrong.append(f"{sig.value} {mtype.roman} {g}")
    return SuiteResult("ruledness", not wrong, float(len(wrong)), 0.0,
                       {"draws": draws * 14, "wrong": wrong[:5]})


@_timed
def suite_h_independence(tol: float = 1e-9) -> SuiteResult:
    curves = sample_curves()
    u = np.linspace(*U_RANGE, 50)[:, None]
    t = np.linspace(-0.5, 0.5, 5)[None, :]
    worst = 0.0
    for sig in SIGS:
        planes = [Plane.XZ] + ([Plane.YZ] if sig is Signature.PseudoIsotropic else [])
        for pl in planes:
            H0 = curvatures_numeric(InvariantSurface(curves[pl], MotionSubgroup(sig, phi=1.2)), u, t).H
            H2 = curvatures_numeric(InvariantSurface(curves[pl], MotionSubgroup(sig, phi=1.2, c=2.0)), u, t).H
            worst = max(worst, float(np.max(np.abs(H0 - H2))))
    return SuiteResult("H independent of c", worst <= tol, worst, tol)


def run_all(closed_form: Callable = curvatures_closed_form, only: Iterable[str] | None = None) -> list[SuiteResult]:
    suites = {
        "group_law": suite_group_law,
        "determinant": suite_determinant,
        "continuity": suite_continuity,
        "differential": lambda: suite_differential(closed_form),
        "flatness": suite_flatness,
        "sphere": suite_sphere,
        "roundtrip": suite_roundtrip,
        "ruled": suite_ruled,
        "h_independence": suite_h_independence,
    }
    names = list(suites) if only is None else list(only)
    unknown = [n for n in names if n not in suites]
    if unknown:
        raise ConfigError(f"unknown suites {unknown}; choose from {list(suites)}")
    return [suites[n]() for n in names]


def flip_sign(closed_form: Callable = curvatures_closed_form) -> Callable:
    """Closed form with the sign of K flipped; used as a mutation smoke test."""

    def mutated(S, u):
        K, H = closed_form(S, u)
        return -np.asarray(K), H

    return mutated
