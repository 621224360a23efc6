import numpy as np
import pytest

from parasasaki.constructions import example1, example2, example3, example4, hyperbolic_extension, parallel_product
from parasasaki.curvature import (
    FrameData,
    check_curf,
    check_extension_einstein,
    check_horizontal_decomposition,
    check_horizontal_family,
    check_invariant_sphere,
    check_xi_curvature,
    einstein_fit,
    eta_einstein_curve,
    eta_einstein_fit,
    example4_ricci_coefficients,
    slice_data,
)
from parasasaki.errors import BackendError, PreconditionError

FIXTURES = {
    "ex1_lie": lambda: example1(2).lie,
    "ex1_chart": lambda: example1(1).chart,
    "ex2_lie": lambda: example2(2, 3).lie,
    "ex3_ext": lambda: hyperbolic_extension(example3(2)),
}


@pytest.mark.parametrize("key", sorted(FIXTURES))
def test_curvature_identities(key):
    s = FIXTURES[key]()
    rep = check_curf(s, points=4, quadruples=32)
    assert rep.passed, rep.first_failure()
    rep = check_xi_curvature(s, points=4)
    assert rep.passed, rep.first_failure()
    vals = next(d for d in rep.detail if d["name"] == "ric_xi_xi")["values"]
    assert np.allclose(vals, -2 * s.n, atol=1e-9)


def test_identities_need_para_sasaki_like():
    with pytest.raises(PreconditionError):
        check_curf(parallel_product(2))
    rep = check_xi_curvature(parallel_product(2), points=2, require=False)
    assert rep.verdict == "fail"


def test_frame_data_curvature_symmetries():
    fd = FrameData(hyperbolic_extension(example4(2, 2.0, 1.0)).at([0.2, 1.0, 1.2, 0.7, 2.0]))
    R = fd.R
    np.testing.assert_allclose(R, -np.swapaxes(R, 0, 1), atol=1e-12)
    np.testing.assert_allclose(R, np.einsum("zwxy->xyzw", R), atol=1e-12)
    np.testing.assert_allclose(fd.g, np.eye(5), atol=1e-12)


def sphere_product_ricci_coeffs(n, a, b):
    # round n-spheres of radii^2 (a+b)/2 and (a-b)/2: Ric = (n-1)/rho^2 on each factor,
    # written as A h + B h~ with h~ = +h on the first factor and -h on the second
    kp, km = 2 * (n - 1) / (a + b), 2 * (n - 1) / (a - b)
    return 0.5 * (kp + km), 0.5 * (kp - km)


@pytest.mark.parametrize("n,a,b", [(2, 2.0, 1.0), (3, 3.0, -1.0)])
def test_invariant_sphere_against_round_spheres(n, a, b):
    base = example4(n, a, b)
    rep = check_invariant_sphere(base, n, a, b, points=4)
    assert rep.passed, rep.first_failure()
    A, B = sphere_product_ricci_coeffs(n, a, b)
    x = np.full(2 * n, 1.1)
    loc = base.model.local(x)
    np.testing.assert_allclose(loc.ricci, A * loc.g + B * loc.g @ base.P, atol=1e-10)


@pytest.mark.parametrize("t", [-1.0, 0.0, 1.0])
def test_example4_eta_einstein_closed_forms(t):
    n, a, b = 2, 2.0, 1.0
    s = hyperbolic_extension(example4(n, a, b))
    fit = eta_einstein_fit(s, [t, 1.0, 1.3, 0.8, 2.1])
    A, B = sphere_product_ricci_coeffs(n, a, b)
    c, sh = np.cosh(2 * t), np.sinh(2 * t)
    # Ric^h is t-independent; re-expand A h + B h~ over g = c h + sh h~, g(.,phi.) = c h~ + sh h
    alpha, beta = A * c - B * sh, B * c - A * sh
    assert fit.alpha == pytest.approx(alpha, abs=1e-9)
    assert fit.beta == pytest.approx(beta, abs=1e-9)
    assert fit.gamma == pytest.approx(-alpha - 2 * n, abs=1e-9)
    assert fit.residual < 1e-9
    assert example4_ricci_coefficients(n, a, b, t) == pytest.approx((alpha, beta, -alpha - 2 * n), abs=1e-12)


def test_decomposition_and_family():
    s = hyperbolic_extension(example4(2, 2.0, 1.0))
    assert check_horizontal_decomposition(s, points=3, quadruples=24, tol=1e-7).passed
    assert check_horizontal_family(s, points=3).passed
    sd = slice_data(s, [0.5, 1.0, 1.3, 0.8, 2.1])
    # trace of the fixed Ric^h against h(t)^{-1} = (cosh 2t - sinh 2t P) h^{-1}
    assert sd.scal == pytest.approx(np.cosh(1.0) * 16 / 3 + np.sinh(1.0) * 8 / 3, abs=1e-9)
    assert slice_data(s, [0.0, 1.0, 1.3, 0.8, 2.1]).scal == pytest.approx(16 / 3, abs=1e-9)
    with pytest.raises(BackendError):
        check_horizontal_decomposition(example1(2).lie)


def test_extension_of_einstein_base_is_einstein_only_on_t0():
    s = hyperbolic_extension(example3(2))
    x = [0.1, -0.2, 0.15, 0.05]
    lam, res = einstein_fit(s, [0.0, *x])
    assert lam == pytest.approx(-4.0, abs=1e-9) and res < 1e-9
    assert s.at([0.0, *x]).loc.scalar == pytest.approx(-20.0, abs=1e-8)
    # Ric^h(t) = Ric^h(0) = -4 h^N, so Scal = -16 cosh 2t - 4
    for t in (-1.0, 0.5):
        assert s.at([t, *x]).loc.scalar == pytest.approx(-16 * np.cosh(2 * t) - 4, abs=1e-8)
    assert check_extension_einstein(s, [0.0], points=2).passed
    assert not check_extension_einstein(s, [0.5], points=2).passed


def test_eta_einstein_curve_shape():
    s = hyperbolic_extension(example4(2, 2.0, 1.0))
    rows = eta_einstein_curve(s, [-0.5, 0.0, 0.5])
    assert [t for t, _ in rows] == [-0.5, 0.0, 0.5]
    assert rows[1][1].alpha == pytest.approx(4 / 3, abs=1e-9)
