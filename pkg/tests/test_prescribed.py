import json

import numpy as np
import pytest

from isosurf.core import PSEUDO, SIMPLY
from isosurf.curvature import curvatures_numeric
from isosurf.curves import GeneratingCurve, Plane
from isosurf.errors import ConfigError, DegenerateParameters, DomainError
from isosurf.io import write_json
from isosurf.motion import MotionSubgroup
from isosurf.prescribed import (CurvatureProfile, solve_H_helicoidal_i, solve_H_parabolic_i,
                                solve_K_helicoidal_i, solve_K_helicoidal_ni, solve_K_parabolic_i)
from isosurf.surfaces import InvariantSurface
from isosurf.verify import PROFILE_DOMAIN, example_closed_forms, roundtrip_error, solver_cells

DOMAIN = PROFILE_DOMAIN
S_GRID = np.linspace(0.6, 1.9, 30)[:, None]
T_GRID = np.array([[-0.4, 0.0, 0.3]])


def graph_curve(plane, z, dz, d2z):
    return GeneratingCurve(plane, lambda s: s, z, lambda s: 1.0 + 0 * s, dz, lambda s: 0 * s, d2z)


def test_profile_from_spec():
    assert CurvatureProfile.from_spec({"kind": "constant", "params": [0.5]}, DOMAIN).constant == 0.5
    p = CurvatureProfile.from_spec({"kind": "poly", "params": [1, 2]}, DOMAIN)
    assert p(2.0) == 5.0 and p.constant is None
    s = CurvatureProfile.from_spec({"kind": "sin", "params": [2.0], "domain": [0, 1]})
    assert s(np.pi / 2) == pytest.approx(2.0) and s.domain == (0.0, 1.0)
    for bad in ({"params": [1]}, {"kind": "exp", "params": []}, {"kind": "constant", "params": [1, 2]}):
        with pytest.raises(ConfigError):
            CurvatureProfile.from_spec(bad, DOMAIN)
    with pytest.raises(ConfigError):
        CurvatureProfile.const(1.0, (2.0, 1.0))


@pytest.mark.parametrize("value", [-0.5, 0.0, 0.5])
def test_constant_profile_round_trip(value):
    for name, run in solver_cells(value):
        assert roundtrip_error(run()) <= 1e-5, name


@pytest.mark.parametrize("spec", [{"kind": "poly", "params": [0.2, -0.3, 0.1]},
                                  {"kind": "sin", "params": [0.4, 2.0, 0.5]}])
def test_variable_profile_round_trip(spec):
    prof = CurvatureProfile.from_spec(spec, DOMAIN)
    for name, run in solver_cells(prof):
        out = run()
        assert out.validity[1] > out.validity[0]
        assert roundtrip_error(out) <= 1e-5, name


@pytest.mark.parametrize("name, check", example_closed_forms(), ids=[n for n, _ in example_closed_forms()])
def test_closed_form_examples(name, check):
    assert check() <= 1e-8


def test_flat_ni_radius_is_linear(sig):
    # a spacelike pseudo curve needs x^2 - y^2 < 0 here, hence the negative start
    k0, k1 = (1.0 if sig is SIMPLY else -3.0), 8.0
    out = solve_K_helicoidal_ni(CurvatureProfile.const(0.0, DOMAIN), 1.0, 1.0, k0, k1, sig)
    s = np.linspace(*DOMAIN, 9)
    r2 = np.array([out.extras["r2"](v) for v in s])
    np.testing.assert_allclose(r2, k0 + 2 * k1 ** (-1 / 3) * (s - DOMAIN[0]), atol=1e-12)
    assert roundtrip_error(out) <= 1e-5


def test_ni_reconstruction_has_prescribed_top_view_radius():
    out = solve_K_helicoidal_ni(CurvatureProfile.const(0.5, DOMAIN), 1.0, 1.0, -3.0, 8.0, PSEUDO, 1)
    s = out.samples(12)
    x, y = out.curve.coords(s)
    r2 = np.array([out.extras["r2"](v) for v in s])
    np.testing.assert_allclose(x * x - y * y, r2, atol=1e-10)


def test_cmc_logarithmoid_needs_half_factor(sig):
    # z = z0 + z1 ln s + H0 s^2 / 2 has H = H0; with the s^2 coefficient H0 it is 2 H0
    H0, z0, z1 = 0.3, 0.1, 0.2
    group = MotionSubgroup(sig, phi=1.0, c=0.4)
    for k, expected in ((0.5, H0), (1.0, 2 * H0)):
        curve = graph_curve(Plane.XZ, lambda s: z0 + z1 * np.log(s) + k * H0 * s * s,
                            lambda s: z1 / s + 2 * k * H0 * s, lambda s: -z1 / s**2 + 2 * k * H0)
        H = curvatures_numeric(InvariantSurface(curve, group), S_GRID, T_GRID).H
        np.testing.assert_allclose(H, expected, atol=1e-12)


def test_pseudo_yz_parabolic_constant_k_uses_c2():
    a, b, c1, c2, K0 = 1.0, 0.7, 0.3, 0.4, 0.5
    group = MotionSubgroup(PSEUDO, a=a, b=b, c1=c1, c2=c2)

    def K_of(C):
        coef = (C**2 - a**2 * K0) / (2 * (a * c1 + b * c2))
        curve = graph_curve(Plane.YZ, lambda s: coef * s * s, lambda s: 2 * coef * s, lambda s: 2 * coef + 0 * s)
        return curvatures_numeric(InvariantSurface(curve, group), S_GRID, T_GRID).K

    np.testing.assert_allclose(K_of(c2), K0, atol=1e-12)
    # the xz-style shear c1 misses the prescribed value on this plane
    assert np.min(np.abs(K_of(c1) - K0)) > 0.05


def test_validity_is_trimmed_to_nonnegative_radicand():
    out = solve_K_helicoidal_i(CurvatureProfile.const(-0.5, DOMAIN), 0.0, 1.0, 0.0, 1.5, SIMPLY)
    lo, hi = out.validity
    assert lo == DOMAIN[0]
    assert hi == pytest.approx(np.sqrt(1.625 / 0.5), abs=1e-12)
    assert roundtrip_error(out) <= 1e-5


def test_helicoidal_i_empty_validity():
    with pytest.raises(DomainError):
        solve_K_helicoidal_i(CurvatureProfile.const(-5.0, DOMAIN), 2.0, 1.0, 0.0, 0.1, SIMPLY)


def test_ni_cube_root_base_crossing_raises():
    with pytest.raises(DomainError):
        solve_K_helicoidal_ni(CurvatureProfile.const(-0.5, DOMAIN), 1.0, 1.0, 1.0, 1.0, SIMPLY)


@pytest.mark.parametrize("call", [
    lambda p: solve_K_helicoidal_i(p, 1.0, 0.0, 0, 1, SIMPLY),
    lambda p: solve_H_helicoidal_i(p, 0, 1, SIMPLY, phi=0.0),
    lambda p: solve_K_parabolic_i(p, 1.0, 1.0, 1.0, -1.0, 0, 0, SIMPLY),
    lambda p: solve_K_parabolic_i(p, 1.0, 0.0, 1.0, 1.0, 0, 0, SIMPLY),
    lambda p: solve_H_parabolic_i(p, 1.0, 1.0, 1.0, 0.5, 0, 0, PSEUDO),
    lambda p: solve_K_helicoidal_ni(p, 0.0, 1.0, 1, 8, SIMPLY),
])
def test_degenerate_parameters(call):
    with pytest.raises(DegenerateParameters):
        call(CurvatureProfile.const(0.5, DOMAIN))


def test_eps_validation():
    prof = CurvatureProfile.const(0.5, DOMAIN)
    with pytest.raises(ConfigError):
        solve_H_helicoidal_i(prof, 0, 1, SIMPLY, eps=-1)
    with pytest.raises(ConfigError):
        solve_H_helicoidal_i(prof, 0, 1, PSEUDO, eps=2)


def test_helicoidal_solvers_need_positive_domain():
    with pytest.raises(DomainError):
        solve_H_helicoidal_i(CurvatureProfile.const(0.5, (-1.0, 1.0)), 0, 1, SIMPLY)


def test_report_is_json_serializable(tmp_path):
    out = solve_K_parabolic_i(CurvatureProfile.const(0.5, DOMAIN), 1.0, 0.7, 0.3, 0.4, 0, 0, PSEUDO, "yz")
    rep = out.report()
    assert rep["plane"] == "yz" and rep["quantity"] == "K"
    write_json(tmp_path / "r.json", rep)
    assert json.loads((tmp_path / "r.json").read_text())["validity"] == list(DOMAIN)
