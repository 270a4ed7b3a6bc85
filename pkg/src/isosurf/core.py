"""Degenerate metric algebra of simply isotropic and pseudo-isotropic space.

Vectors are plain length-3 numpy arrays. Only the top view (x, y) enters the
isotropic inner products; the z-direction is the null direction.
"""
from __future__ import annotations

import enum

import numpy as np


class Signature(enum.Enum):
    SimplyIsotropic = "simply"
    PseudoIsotropic = "pseudo"

    @property
    def sigma(self) -> int:
        """Sign of the y*y term in every inner product."""
        return 1 if self is Signature.SimplyIsotropic else -1

    @classmethod
    def parse(cls, value) -> "Signature":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {
            "simply": cls.SimplyIsotropic,
            "simplyisotropic": cls.SimplyIsotropic,
            "i3": cls.SimplyIsotropic,
            "pseudo": cls.PseudoIsotropic,
            "pseudoisotropic": cls.PseudoIsotropic,
            "i3p": cls.PseudoIsotropic,
        }
        try:
            return aliases[key.replace("-", "").replace("_", "")]
        except KeyError:
            raise ValueError(f"unknown signature {value!r}") from None


SIMPLY = Signature.SimplyIsotropic
PSEUDO = Signature.PseudoIsotropic


class CausalCharacter(enum.Enum):
    Spacelike = "spacelike"
    Timelike = "timelike"
    Lightlike = "lightlike"


def vec(x, y=None, z=None) -> np.ndarray:
    """Build an IsoVector from three scalars or one 3-sequence."""
    if y is None and z is None:
        v = np.asarray(x, dtype=float).reshape(3)
    else:
        v = np.array([x, y, z], dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"non-finite vector components: {v}")
    return v


def dot(u, v, sig: Signature) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return float(u[0] * v[0] + sig.sigma * u[1] * v[1])


def norm(u, sig: Signature) -> float:
    """Isotropic semi-norm sqrt|<u,u>|."""
    return float(np.sqrt(abs(dot(u, u, sig))))


def co_dot(u, v) -> float:
    """Co-metric: product of the isotropic components."""
    return float(u[2] * v[2])


def codistance(u, v) -> float:
    return float(abs(v[2] - u[2]))


def top_view(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    return np.array([u[0], u[1], 0.0])


def ambient_dot(u, v, sig: Signature) -> float:
    """Euclidean product (simply) or the Lorentzian product +,-,+ (pseudo)."""
    return float(u[0] * v[0] + sig.sigma * u[1] * v[1] + u[2] * v[2])


def cross(u, v, sig: Signature) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if sig is Signature.SimplyIsotropic:
        return np.cross(u, v)
    return np.array([
        u[1] * v[2] - u[2] * v[1],
        u[0] * v[2] - u[2] * v[0],
        u[0] * v[1] - u[1] * v[0],
    ])


def causal_character(u, sig: Signature = Signature.PseudoIsotropic) -> CausalCharacter:
    """Sign of <u,u>; exact comparison with zero, no tolerance."""
    q = dot(u, u, sig)
    if q > 0:
        return CausalCharacter.Spacelike
    if q < 0:
        return CausalCharacter.Timelike
    return CausalCharacter.Lightlike
