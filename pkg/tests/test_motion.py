import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isosurf.core import PSEUDO, SIMPLY
from isosurf.errors import NotOrthogonal, Unclassifiable
from isosurf.motion import (SERIES_THRESHOLD, Motion4, MotionSubgroup, MotionType, apply, classify, compose,
                            evaluate, evaluate_arrays, generator_matrix, is_orthogonal_iso, make_motion,
                            orbit_shape, phase_sums)

params = st.floats(-2, 2, allow_nan=False)
times = st.floats(-3, 3, allow_nan=False)
sigs = st.sampled_from([SIMPLY, PSEUDO])


def rot(phi):
    return np.array([[math.cos(phi), -math.sin(phi), 0], [math.sin(phi), math.cos(phi), 0], [0, 0, 1.0]])


def boost(phi):
    return np.array([[math.cosh(phi), math.sinh(phi), 0], [math.sinh(phi), math.cosh(phi), 0], [0, 0, 1.0]])


def test_make_motion_identity():
    M = make_motion(np.eye(3), [0, 0, 0], SIMPLY)
    np.testing.assert_array_equal(M.m, np.eye(4))


def test_make_motion_block_assembly():
    M = make_motion(rot(math.pi / 2), [1, 2, 3], SIMPLY)
    np.testing.assert_allclose(M.linear, rot(math.pi / 2))
    np.testing.assert_array_equal(M.translation, [1, 2, 3])
    np.testing.assert_array_equal(M.m[3], [0, 0, 0, 1])


def test_make_motion_rejects_isotropic_mixing():
    A = np.eye(3)
    A[0, 2] = 0.5
    with pytest.raises(NotOrthogonal):
        make_motion(A, [0, 0, 0], SIMPLY)


def test_is_orthogonal_iso_examples():
    assert is_orthogonal_iso(np.eye(3), SIMPLY)
    A = rot(1.0)
    A[2] = [5, -2, 1]
    assert is_orthogonal_iso(A, SIMPLY)
    swap = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0.0]])
    assert not is_orthogonal_iso(swap, SIMPLY)
    assert is_orthogonal_iso(boost(0.7), PSEUDO)
    assert not is_orthogonal_iso(boost(0.7), SIMPLY)
    assert not is_orthogonal_iso(rot(0.7), PSEUDO)


def test_compose_examples():
    M = make_motion(rot(0.3), [1, 2, 3], SIMPLY)
    np.testing.assert_array_equal(compose(Motion4.identity(), M).m, M.m)
    T1 = make_motion(np.eye(3), [1, 2, 3], SIMPLY)
    T2 = make_motion(np.eye(3), [-4, 0.5, 2], SIMPLY)
    np.testing.assert_array_equal((T1 @ T2).translation, [-3, 2.5, 5])
    shear = np.eye(3)
    shear[2, 0] = 1.0
    Sh = make_motion(shear, [0, 0, 0], SIMPLY)
    Tr = make_motion(np.eye(3), [1, 0, 0], SIMPLY)
    assert (Sh @ Tr).m[2, 3] - (Tr @ Sh).m[2, 3] == 1.0


def test_apply_examples():
    np.testing.assert_array_equal(apply(Motion4.identity(), [1, 2, 3]), [1, 2, 3])
    q = evaluate(MotionSubgroup(SIMPLY, phi=math.pi / 2), 1.0)([1, 0, 0])
    np.testing.assert_allclose(q, [0, 1, 0], atol=1e-15)
    p = evaluate(MotionSubgroup(SIMPLY, a=1, c1=1), 1.0)([0, 0, 0])
    np.testing.assert_allclose(p, [1, 0, 0.5], atol=1e-15)


def test_phase_sums_examples(sig):
    np.testing.assert_allclose(phase_sums(math.pi, 1.0, SIMPLY), (1, 0, 0, 0), atol=1e-15)
    for t in (-1.5, 0.5, 2.0):
        np.testing.assert_allclose(phase_sums(0.0, t, sig), (t, 0, t * (t - 1) / 2, 0), atol=1e-15)
    np.testing.assert_allclose(phase_sums(0.8, 0.0, sig), (0, 0, 0, 0), atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_phase_sums_are_discrete_sums_at_integers(sig, n):
    # C_n, S_n sum over the angles k phi, k < n; the tilde sums accumulate C_j, S_j over j < n
    phi = 0.7
    k = np.arange(n)
    c, s = (np.cos, np.sin) if sig is SIMPLY else (np.cosh, np.sinh)
    C, S, Ct, St = phase_sums(phi, float(n), sig)
    np.testing.assert_allclose([C, S], [c(k * phi).sum(), s(k * phi).sum()], rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose([Ct, St], [((n - 1 - k) * c(k * phi)).sum(), ((n - 1 - k) * s(k * phi)).sum()], rtol=1e-12, atol=1e-12)


def test_phase_sum_derivatives_match_finite_differences(sig):
    h = 1e-6
    for phi in (0.9, 3e-5):
        for t in (-1.3, 0.4, 2.2):
            d = np.array(phase_sums(phi, t, sig, 1))
            fd = (np.array(phase_sums(phi, t + h, sig)) - np.array(phase_sums(phi, t - h, sig))) / (2 * h)
            np.testing.assert_allclose(d, fd, atol=1e-8)


def test_evaluate_examples():
    np.testing.assert_allclose(evaluate(MotionSubgroup(SIMPLY, phi=0.4, a=1, c=2), 0.0).m, np.eye(4), atol=1e-15)
    M = evaluate(MotionSubgroup(SIMPLY, phi=math.pi / 2, c=2), 1.0)
    np.testing.assert_allclose(M.linear, rot(math.pi / 2), atol=1e-15)
    assert M.m[2, 3] == pytest.approx(2.0)
    L = evaluate(MotionSubgroup(SIMPLY, a=1, b=2, c1=3, c2=4), 2.0)
    assert L.m[2, 3] == pytest.approx(22.0)


def test_evaluated_motions_are_isometries(sig, rng):
    for _ in range(30):
        g = MotionSubgroup(sig, *rng.uniform(-2, 2, 6))
        assert is_orthogonal_iso(evaluate(g, rng.uniform(-3, 3)).linear, sig, tol=1e-9)


def test_generator_is_psi_one(sig):
    g = MotionSubgroup(sig, 0.5, 1, -1, 0.3, 0.2, 0.7)
    np.testing.assert_array_equal(generator_matrix(g), evaluate(g, 1.0).m)


@settings(max_examples=60, deadline=None)
@given(sigs, params, params, params, params, params, params, times, times)
def test_group_law_property(sig, phi, a, b, c, c1, c2, s, t):
    g = MotionSubgroup(sig, phi, a, b, c, c1, c2)
    lhs = evaluate(g, s + t).m
    rhs = (evaluate(g, s) @ evaluate(g, t)).m
    np.testing.assert_allclose(lhs, rhs, atol=1e-9 * max(1.0, np.abs(lhs).max()))


def test_derivative_blocks_match_finite_differences(sig):
    g = MotionSubgroup(sig, 0.9, 0.4, -0.7, 0.3, 1.1, -0.5)
    t, h = np.array([-0.8, 0.2, 1.7]), 1e-5
    A1, a1 = evaluate_arrays(g, t, 1)
    Ap, ap = evaluate_arrays(g, t + h)
    Am, am = evaluate_arrays(g, t - h)
    np.testing.assert_allclose(A1, (Ap - Am) / (2 * h), atol=1e-8)
    np.testing.assert_allclose(a1, (ap - am) / (2 * h), atol=1e-8)


def test_series_switchover_is_continuous(sig):
    for t in np.linspace(-2, 2, 9):
        below = np.array(phase_sums(SERIES_THRESHOLD * (1 - 1e-12), t, sig))
        above = np.array(phase_sums(SERIES_THRESHOLD * (1 + 1e-12), t, sig))
        assert np.max(np.abs(below - above)) <= 1e-9


@pytest.mark.parametrize("kwargs, roman", [
    (dict(phi=1), "I"),
    (dict(phi=1, c=1), "II"),
    (dict(a=1, c1=1), "III"),
    (dict(a=1, b=1, c1=-1, c2=1), "IV"),
    (dict(c1=1), "V"),
    (dict(a=1), "VI"),
    (dict(c=1), "VII"),
])
def test_classify_examples(sig, kwargs, roman):
    assert classify(MotionSubgroup(sig, **kwargs)).roman == roman


def test_classify_reports_nearest_cell():
    with pytest.raises(Unclassifiable) as info:
        classify(MotionSubgroup(SIMPLY, phi=1, a=1))
    assert info.value.nearest is MotionType.I_Rotation
    with pytest.raises(Unclassifiable) as info:
        classify(MotionSubgroup(SIMPLY))
    assert info.value.nearest is None


def test_orbit_shapes():
    assert orbit_shape(MotionType.I_Rotation, SIMPLY) == "circle"
    assert orbit_shape(MotionType.I_Rotation, PSEUDO) == "hyperbola"
    assert orbit_shape(MotionType.II_Helicoidal, PSEUDO) == "helix"
    assert orbit_shape(MotionType.III_ParabolicRotation, SIMPLY) == "parabola"
    assert all(orbit_shape(m, SIMPLY) == "line" for m in MotionType if m.ruled)


def test_subgroup_dict_round_trip():
    g = MotionSubgroup(PSEUDO, 0.5, 1, 2, 3, 4, 5)
    assert MotionSubgroup.from_dict(g.to_dict()) == g
    with pytest.raises(ValueError):
        MotionSubgroup.from_dict({"signature": "simply", "omega": 1})


def expm(X):
    # scaling and squaring with a Taylor core
    k = max(0, int(np.ceil(np.log2(max(np.abs(X).sum(axis=1).max(), 1e-300)))) + 2)
    Y = X / 2**k
    E, term = np.eye(4), np.eye(4)
    for n in range(1, 25):
        term = term @ Y / n
        E = E + term
    for _ in range(k):
        E = E @ E
    return E


def test_subgroup_is_exponential_of_its_generator(sig, rng):
    for _ in range(20):
        g = MotionSubgroup(sig, *rng.uniform(-2, 2, 6))
        A1, a1 = evaluate_arrays(g, 0.0, 1)
        X = np.zeros((4, 4))
        X[:3, :3], X[:3, 3] = A1, a1
        for t in (-1.7, 0.3, 2.5):
            M = evaluate(g, t).m
            np.testing.assert_allclose(M, expm(t * X), atol=1e-9 * max(1.0, np.abs(M).max()))
