import numpy as np
import pytest

from parasasaki import jets
from parasasaki.apcpc import check_para_sasaki_like, validate_structure
from parasasaki.constructions import (
    PhpcrModel,
    check_example4_embedding,
    check_twin_alignment,
    example1,
    example2,
    example3,
    example4,
    flat_base,
    hyperbolic_extension,
    parallel_product,
    slice_structure,
    swap_P,
)
from parasasaki.curvature import check_slice_einstein
from parasasaki.errors import BackendError, ParameterError, PhpcrValidationError
from parasasaki.geometry import ChartModel


@pytest.mark.parametrize("n", [1, 2])
def test_example1_twins_align(n):
    ex = example1(n)
    assert ex.lie.dim == ex.chart.dim == 2 * n + 1
    assert check_twin_alignment(ex, points=4).passed


@pytest.mark.parametrize("lam", [0.0, 1.0, 2.5])
def test_example2_twins_align(lam):
    assert check_twin_alignment(example2(lam, 0.0), points=4).passed


def test_example1_chart_metric_closed_form():
    # g = dt^2 + cosh 2t Σ (dx^i)^2 + sinh 2t Σ dx^i dx^{n+i} (symmetric off-diagonal)
    s = example1(2).chart
    t = 0.4
    g = s.model.metric([t, 0.1, 0.2, 0.3, 0.4])
    c, sh = np.cosh(2 * t), np.sinh(2 * t)
    expected = np.array(
        [
            [1, 0, 0, 0, 0],
            [0, c, 0, sh, 0],
            [0, 0, c, 0, sh],
            [0, sh, 0, c, 0],
            [0, 0, sh, 0, c],
        ]
    )
    np.testing.assert_allclose(g, expected, atol=1e-14)


def test_example1_ricci_frame_values():
    # orthonormal left-invariant frame: Ric = diag(-2n, 0, ..., 0)
    loc = example1(2).lie.model.local()
    np.testing.assert_allclose(loc.ricci, np.diag([-4.0, 0, 0, 0, 0]), atol=1e-13)


def test_parameter_errors():
    with pytest.raises(ParameterError):
        example1(0)
    with pytest.raises(ParameterError):
        example2(1.0, 2.0, chart=True)
    with pytest.raises(ParameterError):
        example3(1)
    with pytest.raises(ParameterError):
        example4(2, 1.0, 1.0)
    assert example2(1.0, 2.0).chart is None


def test_bad_base_rejected():
    bad = PhpcrModel(ChartModel(2, lambda x: np.eye(2), ((-1, 1),) * 2), np.array([[0.0, 2.0], [0.5, 0.0]]))
    with pytest.raises(PhpcrValidationError):
        hyperbolic_extension(bad)

    # a reflection turning with x^1: involutive and h-invariant but not parallel
    def P(x):
        c, s = jets.cos(x[0]), jets.sin(x[0])
        return np.array([[c, s], [s, -c]], dtype=object)

    base = PhpcrModel(ChartModel(2, lambda x: np.eye(2), ((-1, 1),) * 2), P)
    with pytest.raises(PhpcrValidationError, match="nabla_P"):
        base.validate()


def test_extension_slices_and_structure():
    base = example3(2)
    s = hyperbolic_extension(base)
    assert validate_structure(s, points=4).passed
    assert check_para_sasaki_like(s, points=4).passed
    sl = slice_structure(s, 0.3)
    x = np.array([0.1, -0.2, 0.0, 0.15])
    h, ht = base.model.metric(x), base.model.metric(x) @ base.P
    np.testing.assert_allclose(sl.model.metric(x), np.cosh(0.6) * h + np.sinh(0.6) * ht, atol=1e-13)
    with pytest.raises(BackendError):
        slice_structure(parallel_product(1), 0.0)


def test_example3_is_einstein_base():
    assert check_slice_einstein(example3(2), -4.0, points=6).passed
    assert check_slice_einstein(example3(3), -6.0, points=4).passed


def test_example4_embedding_and_extension():
    assert check_example4_embedding(2, 2.0, 1.0, points=6).passed
    assert check_example4_embedding(3, 3.0, -1.0, points=4).passed
    s = hyperbolic_extension(example4(2, 2.0, 1.0))
    assert check_para_sasaki_like(s, points=4).passed


def test_flat_bases():
    P = swap_P(2)
    np.testing.assert_array_equal(P @ P, np.eye(4))
    assert flat_base(P).validate().passed
