"""Invariant surfaces in simply and pseudo isotropic 3-space."""
from .core import PSEUDO, SIMPLY, Signature, codistance, cross, dot, norm, top_view
from .curvature import (CurvaturePair, FundamentalForms, brioschi_curvature, curvatures_closed_form,
                        curvatures_numeric, fundamental_forms, gauss_map, relative_normal)
from .curves import GeneratingCurve, Plane
from .errors import (ChartUnavailable, ConfigError, DegenerateParameters, DomainError, EmptyValidity,
                     IncompatiblePlane, IsosurfError, NoClosedForm, NoConvergence, NotAdmissible,
                     NotOrthogonal, Unclassifiable, VerificationFailure)
from .motion import Motion4, MotionSubgroup, MotionType, classify, compose, evaluate, make_motion
from .prescribed import (CurvatureProfile, SolverOutput, solve_H_helicoidal_i, solve_H_parabolic_i,
                         solve_K_helicoidal_i, solve_K_helicoidal_ni, solve_K_parabolic_i)
from .surfaces import InvariantSurface, admissibility, invariant_surface, is_ruled, normal_form_chart

__version__ = "0.1.0"
