import math

import numpy as np
import pytest

from affine_hypersurfaces import (
    Ambient,
    AmbientMismatch,
    CoordinateCircle,
    DimensionMismatch,
    ExpPair,
    HypersurfaceSpec,
    Line,
    Linear,
    Quadratic,
    Quantity,
    curve_curvatures,
    identity_map,
    isotropic_mean,
    isotropic_norm,
    make_affine_map,
    principal_spectrum,
    relative_curvature,
)
from affine_hypersurfaces.isotropic import (
    check_constant,
    curvature_functions,
    isotropic_distance,
    relative_curvature_generic,
)

ISO = Ambient.ISOTROPIC


def spec_of(amap, profiles):
    return HypersurfaceSpec(amap, profiles, ISO)


def test_isotropic_norm():
    assert isotropic_norm([0.0, 0.0, 7.0]) == 0.0
    assert isotropic_norm([3.0, 4.0, -2.0]) == 5.0
    assert isotropic_norm(np.zeros(4)) == 0.0
    assert isotropic_distance([1, 1, 5], [4, 5, -9]) == 5.0


def test_relative_curvature_examples(shear):
    squares = spec_of(identity_map(2), [Quadratic(1.0), Quadratic(1.0)])
    assert relative_curvature(squares, (0.3, 0.9)) == 4.0
    assert relative_curvature(spec_of(shear, [Quadratic(1.0), Quadratic(1.0)]), (0.3, 0.9)) == pytest.approx(4.0)
    assert relative_curvature_generic(spec_of(shear, [Quadratic(1.0), Quadratic(1.0)]), (0.3, 0.9)) == pytest.approx(4.0)
    assert relative_curvature(spec_of(shear, [Quadratic(1.0), Linear(2.0)]), (0.3, 0.9)) == 0.0


def test_isotropic_mean_examples(shear):
    assert isotropic_mean(spec_of(identity_map(2), [Quadratic(1.0), Quadratic(1.0)]), (0.1, 0.2)) == 2.0
    assert isotropic_mean(spec_of(shear, [Linear(1.0), Linear(-3.0)]), (0.1, 0.2)) == 0.0
    assert isotropic_mean(spec_of(shear, [Quadratic(1.0), Linear(0.0)]), (0.1, 0.2)) == 1.0


def test_requires_isotropic_ambient(paraboloid):
    with pytest.raises(AmbientMismatch):
        relative_curvature(paraboloid, (0.0, 0.0))
    with pytest.raises(AmbientMismatch):
        isotropic_mean(paraboloid, (0.0, 0.0))


def test_curvature_function_examples():
    np.testing.assert_allclose(curvature_functions([2.0, 2.0]), [2.0, 4.0])
    np.testing.assert_array_equal(curvature_functions([0.0, 0.0, 0.0]), [0.0, 0.0, 0.0])
    np.testing.assert_allclose(curvature_functions([3.0, 2.0, 1.0]), [2.0, 11.0 / 3.0, 6.0])


def test_principal_spectrum_diag_and_generic():
    spec = spec_of(identity_map(3), [Quadratic(1.5), Quadratic(1.0), Quadratic(0.5)])
    sp = principal_spectrum(spec, (0.2, 0.1, 0.0))
    np.testing.assert_allclose(sp.kappas, [3.0, 2.0, 1.0])
    np.testing.assert_allclose(sp.k_funcs, [2.0, 11.0 / 3.0, 6.0])
    amap = make_affine_map([[1, 2, 0], [0, 1, 1], [1, 0, 3]])
    spec = spec_of(amap, [Quadratic(1.0), ExpPair(1, 1, 0.5), Quadratic(-0.5)])
    sp = principal_spectrum(spec, (0.2, -0.3, 0.4))
    x = (0.2, -0.3, 0.4)
    assert sp.mean == pytest.approx(isotropic_mean(spec, x), rel=1e-12)
    assert sp.relative == pytest.approx(relative_curvature(spec, x), rel=1e-10)


def test_curve_examples():
    flat = spec_of(identity_map(2), [Linear(1.0, 0.0), Linear(2.0, 1.0)])
    straight = curve_curvatures(flat, Line((0.5, 0.5), (1.0, -1.0)), 0.3)
    assert straight.kappa_n == 0.0 and straight.kappa_g == 1.0 and straight.kappa_g_by_convention

    bowl = spec_of(identity_map(2), [Quadratic(1.0), Linear(0.0)])
    assert curve_curvatures(bowl, Line((0.0, 0.0), (1.0, 0.0)), 0.0).kappa_n == 2.0

    circle = curve_curvatures(flat, CoordinateCircle((0.0, 0.0), 1.0), 0.7)
    assert circle.kappa_g == pytest.approx(1.0, abs=1e-15)
    assert circle.kappa_n == 0.0 and not circle.kappa_g_by_convention


def test_curve_tangential_part_includes_height_term():
    spec = spec_of(identity_map(2), [Linear(3.0), Linear(-1.0)])
    circle = CoordinateCircle((0.0, 0.0), 2.0)
    s = 0.4
    out = curve_curvatures(spec, circle, s)
    ddx = circle.acceleration(s)
    assert out.tan_part[-1] == pytest.approx(3.0 * ddx[0] - ddx[1])
    assert out.kappa_g == pytest.approx(2.0)


def test_curve_dimension_and_circle_checks():
    with pytest.raises(DimensionMismatch):
        curve_curvatures(spec_of(identity_map(2), [Linear(1.0)] * 2), Line((0, 0, 0), (1, 0, 0)), 0.0)
    with pytest.raises(ValueError):
        CoordinateCircle((0.0, 0.0), 1.0, (0, 0))
    with pytest.raises(ValueError):
        CoordinateCircle((0.0, 0.0), 0.0)


def test_check_constant_examples(shear):
    quads = spec_of(shear, [Quadratic(1.0), Quadratic(-2.0)])
    assert check_constant(quads, Quantity.RELATIVE_CURVATURE).is_constant
    assert check_constant(quads, Quantity.ISOTROPIC_MEAN).is_constant
    exp = spec_of(shear, [ExpPair(1.0, 0.5, 1.0), Quadratic(1.0)])
    assert not check_constant(exp, Quantity.RELATIVE_CURVATURE).is_constant
    cyl = check_constant(spec_of(shear, [Linear(1.0), ExpPair(1.0, 0.5, 1.0)]), Quantity.RELATIVE_CURVATURE)
    assert cyl.is_constant and cyl.constant_value == 0.0
    with pytest.raises(ValueError):
        check_constant(quads, Quantity.GAUSS_KRONECKER)
