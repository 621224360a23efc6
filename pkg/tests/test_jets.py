import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from parasasaki import jets


def f(X):
    x, y = X
    return jets.exp(x) * jets.sin(y) + x * x * y / (1.0 + y * y) + jets.cosh(x - y) * jets.tanh(y)


def fd_grad(fun, p, h=1e-6):
    p = np.asarray(p, dtype=float)
    out = []
    for i in range(len(p)):
        e = np.zeros_like(p)
        e[i] = h
        out.append((fun(p + e) - fun(p - e)) / (2 * h))
    return np.array(out)


def ref(X):
    x, y = X
    return math.exp(x) * math.sin(y) + x * x * y / (1 + y * y) + math.cosh(x - y) * math.tanh(y)


@given(st.floats(-1.5, 1.5), st.floats(-1.5, 1.5))
def test_gradient_matches_central_differences(x, y):
    val, grad, hess = jets.evaluate(f, [x, y])
    assert float(val) == pytest.approx(ref([x, y]), rel=1e-12, abs=1e-12)
    np.testing.assert_allclose(grad, fd_grad(ref, [x, y]), rtol=1e-6, atol=1e-7)


@given(st.floats(-1.0, 1.0), st.floats(-1.0, 1.0))
def test_hessian_matches_differences_of_gradient(x, y):
    _, _, hess = jets.evaluate(f, [x, y])

    def g(p):
        return jets.evaluate(f, p)[1]

    num = np.stack([fd_grad(lambda q, i=i: g(q)[i], [x, y], 1e-5) for i in range(2)])
    np.testing.assert_allclose(hess, num, rtol=1e-5, atol=1e-6)
    np.testing.assert_allclose(hess, hess.T, atol=1e-13)


def test_array_valued_field_and_matmul():
    def A(X):
        t, s = X
        return np.array([[jets.cosh(t), jets.sinh(t)], [s * s, 1.0]], dtype=object)

    val, grad, hess = jets.evaluate(A, [0.3, -0.7])
    assert val.shape == (2, 2) and grad.shape == (2, 2, 2) and hess.shape == (2, 2, 2, 2)
    assert grad[0, 1, 0] == pytest.approx(math.cosh(0.3))
    assert hess[1, 0, 1, 1] == pytest.approx(2.0)
    B = np.array([[1.0, 2.0], [0.0, -1.0]])
    val2 = jets.value(lambda X: jets.jet_matmul(A(X), B), [0.3, -0.7])
    np.testing.assert_allclose(val2, val @ B)


def test_elementary_functions_on_floats():
    assert jets.sqrt(4.0) == pytest.approx(2.0)
    assert jets.log(math.e) == pytest.approx(1.0)
    assert jets.cos(0.0) == pytest.approx(1.0)
