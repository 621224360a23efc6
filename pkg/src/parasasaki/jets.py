"""Second-order forward-mode jets.

A :class:`Jet` carries a value together with its gradient and Hessian with
respect to a fixed set of coordinates.  Fields on a chart are plain Python
callables of the coordinate sequence; calling them with jet coordinates
propagates exact first and second partial derivatives through the
arithmetic and the elementary functions defined here.
"""

from __future__ import annotations

import math
from typing import Any, Callable, Sequence

import numpy as np


class Jet:
    __slots__ = ("val", "grad", "hess")

    def __init__(self, val: float, grad: np.ndarray, hess: np.ndarray):
        self.val = float(val)
        self.grad = grad
        self.hess = hess

    @classmethod
    def variable(cls, value: float, index: int, dim: int) -> "Jet":
        grad = np.zeros(dim)
        grad[index] = 1.0
        return cls(value, grad, np.zeros((dim, dim)))

    def _lift(self, other: Any) -> "Jet":
        if isinstance(other, Jet):
            return other
        d = self.grad.shape[0]
        return Jet(float(other), np.zeros(d), np.zeros((d, d)))

    def _unary(self, f0: float, f1: float, f2: float) -> "Jet":
        g = self.grad
        return Jet(f0, f1 * g, f1 * self.hess + f2 * np.outer(g, g))

    def __add__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if isinstance(other, Jet):
            return Jet(self.val + other.val, self.grad + other.grad, self.hess + other.hess)
        return Jet(self.val + other, self.grad, self.hess)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.val, -self.grad, -self.hess)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if isinstance(other, Jet):
            return Jet(self.val - other.val, self.grad - other.grad, self.hess - other.hess)
        return Jet(self.val - other, self.grad, self.hess)

    def __rsub__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        return Jet(other - self.val, -self.grad, -self.hess)

    def __mul__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if isinstance(other, Jet):
            a, b = self, other
            cross = np.outer(a.grad, b.grad)
            return Jet(
                a.val * b.val,
                a.val * b.grad + b.val * a.grad,
                a.val * b.hess + b.val * a.hess + cross + cross.T,
            )
        other = float(other)
        return Jet(self.val * other, self.grad * other, self.hess * other)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        x = self.val
        if x == 0.0:
            raise ZeroDivisionError("jet division by zero")
        return self._unary(1.0 / x, -1.0 / x**2, 2.0 / x**3)

    def __truediv__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1.0 / float(other))

    def __rtruediv__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        return self.reciprocal() * other

    def __pow__(self, k):
        if isinstance(k, Jet):
            return exp(k * log(self))
        k = float(k)
        if k == 0.0:
            return self._lift(1.0)
        if k == 1.0:
            return self
        x = self.val
        return self._unary(x**k, k * x ** (k - 1), k * (k - 1) * x ** (k - 2))

    def __float__(self):
        return self.val

    def __repr__(self):
        return f"Jet({self.val!r}, grad={self.grad!r})"


def _elementary(name: str, f0: Callable, f1: Callable, f2: Callable) -> Callable:
    def fn(x):
        if isinstance(x, Jet):
            v = x.val
            return x._unary(f0(v), f1(v), f2(v))
        return f0(float(x))

    fn.__name__ = name
    return fn


exp = _elementary("exp", math.exp, math.exp, math.exp)
sin = _elementary("sin", math.sin, math.cos, lambda v: -math.sin(v))
cos = _elementary("cos", math.cos, lambda v: -math.sin(v), lambda v: -math.cos(v))
sinh = _elementary("sinh", math.sinh, math.cosh, math.sinh)
cosh = _elementary("cosh", math.cosh, math.sinh, math.cosh)
tanh = _elementary(
    "tanh",
    math.tanh,
    lambda v: 1.0 - math.tanh(v) ** 2,
    lambda v: -2.0 * math.tanh(v) * (1.0 - math.tanh(v) ** 2),
)
log = _elementary("log", math.log, lambda v: 1.0 / v, lambda v: -1.0 / v**2)
sqrt = _elementary(
    "sqrt", math.sqrt, lambda v: 0.5 / math.sqrt(v), lambda v: -0.25 * v**-1.5
)


def variables(point: Sequence[float]) -> list[Jet]:
    """Seed jets for the coordinates of ``point``."""
    d = len(point)
    return [Jet.variable(float(x), i, d) for i, x in enumerate(point)]


def unpack(obj: Any, dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split a (possibly nested) array of jets/floats into value, gradient, Hessian.

    Shapes are ``S``, ``S + (dim,)`` and ``S + (dim, dim)`` where ``S`` is the
    shape of ``obj``; plain numbers get zero derivatives.
    """
    arr = np.asarray(obj, dtype=object)
    shape = arr.shape
    val = np.zeros(shape)
    grad = np.zeros(shape + (dim,))
    hess = np.zeros(shape + (dim, dim))
    for idx in np.ndindex(*shape):
        item = arr[idx]
        if isinstance(item, Jet):
            val[idx] = item.val
            grad[idx] = item.grad
            hess[idx] = item.hess
        else:
            val[idx] = float(item)
    return val, grad, hess


def evaluate(field: Callable, point: Sequence[float]):
    """Value, gradient and Hessian of ``field`` at ``point``."""
    point = np.asarray(point, dtype=float)
    return unpack(field(variables(point)), point.shape[0])


def value(field: Callable, point: Sequence[float]) -> np.ndarray:
    """Plain float evaluation, no derivatives."""
    return np.asarray(field([float(x) for x in point]), dtype=float)


def jet_matmul(a, b):
    """Matrix product of object arrays holding jets (``np.dot`` semantics)."""
    return np.dot(np.asarray(a, dtype=object), np.asarray(b, dtype=object))
