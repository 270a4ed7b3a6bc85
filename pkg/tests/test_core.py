import numpy as np
import pytest
from hypothesis import given, strategies as st

from isosurf.core import (PSEUDO, SIMPLY, CausalCharacter, Signature, ambient_dot, causal_character,
                          codistance, cross, dot, norm, top_view)

finite = st.floats(-1e3, 1e3, allow_nan=False)
vectors = st.tuples(finite, finite, finite).map(np.array)


@pytest.mark.parametrize("sig, expected", [(SIMPLY, 14.0), (PSEUDO, -6.0)])
def test_dot_examples(sig, expected):
    assert dot([1, 2, 3], [4, 5, 6], sig) == expected


def test_isotropic_vectors_are_null(sig):
    assert dot([0, 0, 7], [0, 0, 9], sig) == 0.0
    assert norm([0, 0, 7], sig) == 0.0


@pytest.mark.parametrize("u, v, d", [((0, 0, 1), (0, 0, 4), 3), ((0, 0, 5), (0, 0, 5), 0), ((1, 0, 2), (1, 0, 7), 5)])
def test_codistance(u, v, d):
    assert codistance(u, v) == d


@pytest.mark.parametrize("u, tv", [((3, 4, 5), (3, 4, 0)), ((0, 0, 1), (0, 0, 0)), ((-1, 2, 0), (-1, 2, 0))])
def test_top_view(u, tv):
    np.testing.assert_array_equal(top_view(u), tv)


def test_cross_products():
    np.testing.assert_array_equal(cross([1, 0, 0], [0, 1, 0], SIMPLY), [0, 0, 1])
    np.testing.assert_array_equal(cross([1, 0, 0], [0, 1, 0], PSEUDO), [0, 0, 1])
    np.testing.assert_array_equal(cross([0, 1, 0], [0, 0, 1], PSEUDO), [1, 0, 0])


@pytest.mark.parametrize("u, kind", [((1, 2, 0), CausalCharacter.Timelike),
                                     ((2, 1, 5), CausalCharacter.Spacelike),
                                     ((1, 1, 3), CausalCharacter.Lightlike)])
def test_causal_character(u, kind):
    assert causal_character(u) is kind


@given(vectors, vectors)
def test_dot_sees_only_top_view(u, v):
    for s in (SIMPLY, PSEUDO):
        assert dot(u, v, s) == dot(top_view(u), top_view(v), s)


@given(vectors, vectors)
def test_cross_is_orthogonal_in_ambient_product(u, v):
    for s in (SIMPLY, PSEUDO):
        w = cross(u, v, s)
        scale = 1.0 + np.abs(u).max() * np.abs(v).max() * max(np.abs(u).max(), np.abs(v).max())
        assert abs(ambient_dot(w, u, s)) <= 1e-9 * scale
        assert abs(ambient_dot(w, v, s)) <= 1e-9 * scale


def test_signature_parse():
    assert Signature.parse("simply") is SIMPLY
    assert Signature.parse("pseudo") is PSEUDO
    assert SIMPLY.sigma == 1 and PSEUDO.sigma == -1
    with pytest.raises(ValueError):
        Signature.parse("euclidean")
