import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from parasasaki import jets
from parasasaki.errors import BackendError, ShapeError, SingularMetricError
from parasasaki.geometry import (
    ChartModel,
    LieFrameModel,
    christoffel,
    covariant_derivative,
    field_jet,
    lie_model_from_json,
    lie_model_to_json,
    orthonormal_frame,
    ricci,
    riemann,
    scalar,
)
from parasasaki.tensor_core import curvature_symmetry_residuals, kn_product


def sphere(rho=1.5):
    def g(X):
        th = X[0]
        return np.array([[rho * rho, 0.0], [0.0, rho * rho * jets.sin(th) ** 2]], dtype=object)

    return ChartModel(2, g, ((0.3, 2.8), (-1.0, 1.0)), name="sphere")


def round_s3(rho=0.8):
    # hyperspherical coordinates
    def g(X):
        a, b = X[0], X[1]
        sa = jets.sin(a)
        out = np.zeros((3, 3), dtype=object)
        out[0, 0] = rho * rho
        out[1, 1] = rho * rho * sa * sa
        out[2, 2] = rho * rho * sa * sa * jets.sin(b) ** 2
        return out

    return ChartModel(3, g, ((0.4, 2.7), (0.4, 2.7), (-1, 1)), name="s3")


def half_plane():
    return ChartModel(2, lambda X: np.eye(2, dtype=object) / (X[1] * X[1]), ((-1, 1), (0.5, 2.0)))


@pytest.mark.parametrize("p", [[0.7, 0.1], [1.9, -0.4]])
def test_round_sphere_constant_curvature(p):
    rho = 1.5
    m = sphere(rho)
    loc = m.local(np.array(p))
    np.testing.assert_allclose(loc.riemann, kn_product(loc.g, loc.g) / (2 * rho * rho), atol=1e-12)
    np.testing.assert_allclose(loc.ricci, loc.g / rho**2, atol=1e-12)
    assert scalar(m, p) == pytest.approx(2 / rho**2)


def test_three_sphere_ricci():
    rho = 0.8
    loc = round_s3(rho).local(np.array([1.1, 0.9, 0.2]))
    np.testing.assert_allclose(loc.ricci, 2 * loc.g / rho**2, atol=1e-11)
    assert loc.scalar == pytest.approx(6 / rho**2)


def test_hyperbolic_half_plane():
    loc = half_plane().local(np.array([0.2, 1.3]))
    np.testing.assert_allclose(loc.riemann, -0.5 * kn_product(loc.g, loc.g), atol=1e-12)
    assert loc.scalar == pytest.approx(-2.0)


def heisenberg():
    c = np.zeros((3, 3, 3))
    c[2, 0, 1], c[2, 1, 0] = 1.0, -1.0
    return LieFrameModel(c, np.eye(3), name="heis")


def test_heisenberg_ricci_known_values():
    # orthonormal frame with [e1, e2] = e3
    loc = heisenberg().local()
    np.testing.assert_allclose(loc.ricci, np.diag([-0.5, -0.5, 0.5]), atol=1e-14)
    assert loc.scalar == pytest.approx(-0.5)


def test_christoffel_against_finite_differences():
    m = sphere()
    p = np.array([0.9, 0.3])
    h = 1e-6
    dg = []
    for i in range(2):
        e = np.zeros(2)
        e[i] = h
        dg.append((m.metric(p + e) - m.metric(p - e)) / (2 * h))
    dg = np.array(dg)
    gi = np.linalg.inv(m.metric(p))
    gam = 0.5 * np.einsum("kl,ijl->kij", gi, dg.transpose(0, 1, 2) + dg.transpose(1, 0, 2) - dg.transpose(1, 2, 0))
    np.testing.assert_allclose(christoffel(m, p).components, gam, atol=1e-8)


def random_metric_field(coeffs):
    A = np.array(coeffs[:9]).reshape(3, 3)
    B = np.array(coeffs[9:18]).reshape(3, 3)

    def g(X):
        out = np.empty((3, 3), dtype=object)
        for i in range(3):
            for j in range(i, 3):
                v = (2.0 if i == j else 0.0) + 0.2 * (A[i, j] + A[j, i]) * jets.sin(X[0] + X[j]) + 0.1 * (B[i, j] + B[j, i]) * X[1] * X[2]
                out[i, j] = out[j, i] = v
        return out

    return ChartModel(3, g, ((-0.5, 0.5),) * 3)


@given(st.lists(st.floats(-1, 1), min_size=18, max_size=18), st.lists(st.floats(-0.5, 0.5), min_size=3, max_size=3))
def test_curvature_symmetries_random_metric(coeffs, p):
    m = random_metric_field(coeffs)
    Rl = riemann(m, p).components
    scale = max(1.0, np.abs(Rl).max())
    for name, value in curvature_symmetry_residuals(Rl).items():
        assert value < 1e-8 * scale, name
    ric = ricci(m, p).components
    np.testing.assert_allclose(ric, ric.T, atol=1e-8 * scale)


def test_covariant_derivative_of_metric_vanishes():
    m = sphere()
    p = [0.8, 0.2]
    nab = covariant_derivative(m, p, m.metric_field, ("lower", "lower"))
    assert np.abs(nab.components).max() < 1e-12


def test_lie_bracket_and_json_round_trip():
    m = heisenberg()
    assert m.bracket(np.array([1.0, 0, 0]), np.array([0, 1.0, 0])) == pytest.approx([0, 0, 1.0])
    back, extras = lie_model_from_json(lie_model_to_json(m, xi=[0, 0, 1.0]))
    np.testing.assert_array_equal(back.structure_constants, m.structure_constants)
    assert extras["xi"].tolist() == [0, 0, 1.0]


def test_lie_model_rejections():
    c = np.zeros((3, 3, 3))
    c[2, 0, 1] = 1.0  # not antisymmetric
    with pytest.raises(ShapeError):
        LieFrameModel(c, np.eye(3))
    with pytest.raises(SingularMetricError):
        LieFrameModel(np.zeros((2, 2, 2)), np.diag([1.0, -1.0]))
    with pytest.raises(BackendError):
        field_jet(heisenberg(), lambda X: X[0], [0, 0, 0])


def test_orthonormal_frame():
    g = np.array([[2.0, 0.3], [0.3, 1.0]])
    E = orthonormal_frame(g)
    np.testing.assert_allclose(E.T @ g @ E, np.eye(2), atol=1e-14)
