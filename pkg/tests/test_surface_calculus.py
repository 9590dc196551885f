import math

import numpy as np
import pytest

from solgeo.sol_space import canonical_leaf
from solgeo.surface_calculus import (CmcDegenerateError, ScalarField,
                                     adapted_frame, biconservative_residual,
                                     biharmonic_normal_residual,
                                     codazzi_residual, fundamental_forms,
                                     laplace_beltrami, shape_data)
from solgeo.verification import graph_patch_fixture

# Reference values from a 40-digit evaluation of the closed forms
# (quadratures by adaptive Gauss-Legendre).
THETA_M1 = 2.347062254032765164
F_M1 = 0.309858529205785760
LAP_M1 = -0.1363699811985456585
RHS_M1 = 1.02406860770367406747


def test_z_leaf_shape():
    leaf = canonical_leaf("z_const", 0.15)
    forms = fundamental_forms(leaf, 0.3, -0.4)
    assert np.allclose(forms.first, np.eye(2), atol=1e-12)
    sd = shape_data(leaf, 0.3, -0.4)
    assert abs(sd.h) < 1e-10
    assert abs(sd.K) < 1e-8
    assert np.allclose(np.sort(sd.principal_curvatures), [-1.0, 1.0],
                       atol=1e-9)


@pytest.mark.parametrize("kind,level", [("x_const", 0.3), ("y_const", -0.2)])
def test_vertical_leaves_totally_geodesic(kind, level):
    leaf = canonical_leaf(kind, level)
    for u, v in ((0.2, 0.5), (-0.7, -0.1)):
        forms = fundamental_forms(leaf, u, v)
        assert np.max(np.abs(forms.second)) < 1e-9


def test_family_shape_data(patch_x1):
    sd = shape_data(patch_x1, -1.0, 0.3)
    assert abs(sd.h - F_M1) < 1e-12
    expected_K = -math.cos(THETA_M1) ** 2 - 2.0 * F_M1 * math.sin(THETA_M1)
    assert abs(sd.K - expected_K) < 1e-10
    assert sd.principal_curvatures[0] < 0 < sd.principal_curvatures[1]


def test_adapted_frame_x1(patch_x1):
    s = adapted_frame(patch_x1, -1.0, 0.3)
    assert abs(s.theta - THETA_M1) < 1e-12
    assert abs(s.beta) < 1e-12
    assert abs(s.e3_defect) < 1e-12
    assert abs(s.h - F_M1) < 1e-12
    assert abs(s.lambda2 + math.sin(THETA_M1)) < 1e-12
    assert abs(s.lambda1 - (2.0 * F_M1 + math.sin(THETA_M1))) < 1e-12
    assert abs(float(np.dot(s.x1.components, s.x2.components))) < 1e-12
    assert abs(float(np.linalg.norm(s.x1.components)) - 1.0) < 1e-12
    assert abs(float(np.linalg.norm(s.xi.components)) - 1.0) < 1e-12


def test_adapted_frame_x2(patch_x2):
    s = adapted_frame(patch_x2, -1.0, 0.3)
    # the mirrored variant measures its angle below the horizontal
    assert abs(s.theta - (THETA_M1 - math.pi)) < 1e-12
    assert abs(s.beta - math.pi / 2.0) < 1e-12
    assert abs(s.lambda2 - math.sin(s.theta)) < 1e-12
    assert abs(s.h - F_M1) < 1e-12


def test_adapted_frame_needs_gradient_or_override():
    leaf = canonical_leaf("z_const", 0.15)
    with pytest.raises(CmcDegenerateError):
        adapted_frame(leaf, 0.1, 0.1)
    s = adapted_frame(leaf, 0.1, 0.1, x1_coefficients=np.array([1.0, 0.0]))
    assert abs(s.theta - math.pi / 2.0) < 1e-12


def test_biconservative_residual_vanishes_on_family(patch_x1, patch_x2):
    for patch in (patch_x1, patch_x2):
        r = biconservative_residual(patch, -2.0, 0.4)
        assert float(np.linalg.norm(r)) < 1e-9


def test_biconservative_residual_nonzero_on_graph():
    graph = graph_patch_fixture()
    r = biconservative_residual(graph, 0.5, 0.5)
    assert float(np.linalg.norm(r)) > 1e-3


def _profile_field(profile):
    return ScalarField(
        value=lambda u, v: profile.f_at(u),
        du=lambda u, v: profile.f_prime_at(u),
        dv=lambda u, v: 0.0,
        duu=lambda u, v: profile.f_second_at(u),
        duv=lambda u, v: 0.0,
        dvv=lambda u, v: 0.0)


def test_laplace_beltrami_of_mean_curvature(patch_x1, explicit_profile):
    field = _profile_field(explicit_profile)
    lap = laplace_beltrami(patch_x1, field, -1.0, 0.2)
    assert abs(lap - LAP_M1) < 1e-9


def test_biharmonic_normal_residual_frozen_value(patch_x1, explicit_profile):
    field = _profile_field(explicit_profile)
    res = biharmonic_normal_residual(patch_x1, -1.0, 0.2, field)
    assert abs(res - (LAP_M1 - RHS_M1)) < 1e-9


def test_codazzi_residual_small_on_family(patch_x1):
    for z_coeffs in ((1.0, 0.0), (0.0, 1.0), (0.3, -0.8)):
        assert abs(codazzi_residual(patch_x1, -1.5, 0.1, z_coeffs)) < 1e-6
