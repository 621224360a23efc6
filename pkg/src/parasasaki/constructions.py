"""Paraholomorphic bases, the hyperbolic extension and the worked examples.

Chart fields here are plain functions of a coordinate sequence built from
:mod:`parasasaki.jets` elementary functions, so that they can be evaluated on
floats or on jets alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from . import jets
from .apcpc import ApcpcStructure
from .errors import BackendError, ParameterError, PhpcrValidationError
from .geometry import ChartModel, LieFrameModel, field_jet
from .reports import DEFAULT_TOL, Residuals, rel_residual, resolve_points

T_DOMAIN = (-1.5, 1.5)


@dataclass(frozen=True, eq=False)
class PhpcrModel:
    """Even-dimensional chart with a parallel product structure ``P``."""

    model: ChartModel
    P: Any  # constant matrix or jet-evaluable field
    name: str = "phpcr"

    @property
    def dim(self) -> int:
        return self.model.dim

    @property
    def n(self) -> int:
        return self.dim // 2

    def metric(self, x):
        return self.model.metric_field(x)

    def P_field(self) -> Callable:
        if callable(self.P):
            return self.P
        arr = np.asarray(self.P, dtype=float)
        return lambda x: arr

    def h_tilde(self, x):
        """``h~(X, Y) = h(X, PY)`` as a component array (jet-friendly)."""
        h = np.asarray(self.metric(x), dtype=object)
        P = np.asarray(self.P_field()(x), dtype=object)
        return jets.jet_matmul(h, P)

    def validate(self, points=8, seed: int = 0, tol: float = 1e-9):
        """Residuals of the base invariants; raises on failure."""
        pts = resolve_points(self.model.sample_domain, points, seed)
        res = Residuals(tol)
        d = self.dim
        for x in pts:
            loc = self.model.local(x)
            P, dP = field_jet(self.model, self.P, x)
            h = loc.g
            where = x.tolist()
            res.add("P_squared", rel_residual(P @ P, np.eye(d)), where)
            res.add("trace_P", abs(np.trace(P)), where)
            res.add("h_P_invariant", rel_residual(P.T @ h @ P, h), where)
            res.add("nabla_P", rel_residual(loc.nabla(P, dP, ("upper", "lower")), 0.0), where)
        report = res.report("phpcr_invariants", len(pts), seed)
        if not report.passed:
            raise PhpcrValidationError(str(report.first_failure()))
        return report


def _cosh2(t):
    return jets.cosh(2 * t)


def _sinh2(t):
    return jets.sinh(2 * t)


def hyperbolic_extension(base: PhpcrModel, t_range=T_DOMAIN, validate: bool = True, name: str | None = None) -> ApcpcStructure:
    """``R x N`` with ``g = dt^2 + cosh(2t) h + sinh(2t) h~``, ``xi = d/dt``, ``phi = 0 ⊕ P``.

    Coordinates are ``(t, x^1, ..., x^2n)``.
    """
    if validate:
        base.validate()
    m = base.dim
    P_of = base.P_field()

    def metric(X):
        t, x = X[0], X[1:]
        h = np.asarray(base.metric(x), dtype=object)
        ht = base.h_tilde(x)
        out = np.zeros((m + 1, m + 1), dtype=object)
        out[0, 0] = 1.0
        out[1:, 1:] = h * _cosh2(t) + ht * _sinh2(t)
        return out

    if callable(base.P):
        def phi(X):
            out = np.zeros((m + 1, m + 1), dtype=object)
            out[1:, 1:] = np.asarray(P_of(X[1:]), dtype=object)
            return out
    else:
        phi = np.zeros((m + 1, m + 1))
        phi[1:, 1:] = np.asarray(base.P, dtype=float)

    xi = np.zeros(m + 1)
    xi[0] = 1.0
    domain = (tuple(t_range),) + tuple(base.model.sample_domain)
    label = name or f"ext({base.name})"
    model = ChartModel(m + 1, metric, domain, name=label)
    return ApcpcStructure(model, phi, xi, xi.copy(), name=label, base=base)


def slice_structure(s: ApcpcStructure, t: float) -> PhpcrModel:
    """Horizontal slice ``{t} x N`` of an extension with its induced metric ``h(t)``."""
    if s.base is None:
        raise BackendError("structure is not a hyperbolic extension; no slice available")
    base: PhpcrModel = s.base
    c, sh = np.cosh(2 * t), np.sinh(2 * t)

    def metric(x):
        h = np.asarray(base.metric(x), dtype=object)
        return h * c + base.h_tilde(x) * sh

    model = ChartModel(base.dim, metric, base.model.sample_domain, name=f"{base.name}@t={t:g}")
    return PhpcrModel(model, base.P, name=model.name)


# -- flat bases -----------------------------------------------------------------

def swap_P(n: int) -> np.ndarray:
    """``P d/dx^i = d/dx^{n+i}`` and back."""
    P = np.zeros((2 * n, 2 * n))
    for i in range(n):
        P[n + i, i] = 1.0
        P[i, n + i] = 1.0
    return P


def flat_base(P: np.ndarray, scale: float = 1.0, name: str = "flat", box: float = 1.0) -> PhpcrModel:
    P = np.asarray(P, dtype=float)
    m = P.shape[0]
    h = scale * np.eye(m)
    model = ChartModel(m, lambda x: h, ((-box, box),) * m, name=name)
    return PhpcrModel(model, P, name=name)


# -- Example 1 ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TwinExample:
    """A Lie-frame structure, its chart twin, and the frame that aligns them."""

    lie: ApcpcStructure
    chart: ApcpcStructure | None
    coframe: Callable | None = None  # chart point -> rows are e^0..e^2n in dx components

    def frame_at(self, p) -> tuple[np.ndarray, np.ndarray]:
        """Frame vectors ``E[:, i] = e_i`` at ``p`` and derivatives ``dE[a, :, i]``."""
        theta, dtheta = field_jet(self.chart.model, self.coframe, np.asarray(p, dtype=float))
        E = np.linalg.inv(theta)
        dE = -np.einsum("ij,ajk,kl->ail", E, dtheta, E)
        return E, dE


def _lie_structure(c: np.ndarray, n: int, name: str) -> ApcpcStructure:
    d = 2 * n + 1
    phi = np.zeros((d, d))
    phi[1:, 1:] = swap_P(n)
    xi = np.zeros(d)
    xi[0] = 1.0
    model = LieFrameModel(c, np.eye(d), name=name)
    return ApcpcStructure(model, phi, xi, xi.copy(), name=name)


def example1_brackets(n: int) -> np.ndarray:
    d = 2 * n + 1
    c = np.zeros((d, d, d))
    for i in range(1, n + 1):
        # [e_0, e_i] = -e_{n+i}, [e_0, e_{n+i}] = -e_i
        c[n + i, 0, i], c[n + i, i, 0] = -1.0, 1.0
        c[i, 0, n + i], c[i, n + i, 0] = -1.0, 1.0
    return c


def example1(n: int = 2) -> TwinExample:
    """Solvable Lie group with its chart form over flat ``R^2n``."""
    if int(n) != n or n < 1:
        raise ParameterError(f"example1 needs n >= 1, got {n}")
    n = int(n)
    lie = _lie_structure(example1_brackets(n), n, f"example1(n={n})")
    base = flat_base(swap_P(n), name=f"flat{2 * n}")
    chart = hyperbolic_extension(base, name=f"example1-chart(n={n})")

    def coframe(X):
        t = X[0]
        ch, sh = jets.cosh(t), jets.sinh(t)
        out = np.zeros((2 * n + 1, 2 * n + 1), dtype=object)
        out[0, 0] = 1.0
        for i in range(1, n + 1):
            out[i, i], out[i, n + i] = ch, sh
            out[n + i, i], out[n + i, n + i] = sh, ch
        return out

    return TwinExample(lie, chart, coframe)


# -- Example 2 ------------------------------------------------------------------

def example2_brackets(lam: float, mu: float) -> np.ndarray:
    c = np.zeros((5, 5, 5))
    table = {
        1: {2: lam, 3: -1.0, 4: mu},
        2: {1: -lam, 3: -mu, 4: -1.0},
        3: {1: -1.0, 2: mu, 4: lam},
        4: {1: -mu, 2: -1.0, 3: -lam},
    }
    for j, row in table.items():
        for k, v in row.items():
            c[k, 0, j], c[k, j, 0] = v, -v
    return c


def example2(lam: float = 1.0, mu: float = 0.0, chart: bool | None = None) -> TwinExample:
    """Five-dimensional Lie group; the chart twin exists for ``mu == 0``.

    The chart metric is the extension of ``h = 2|dx|^2`` with
    ``P = diag(1, -1, 1, -1)``.
    """
    lam, mu = float(lam), float(mu)
    lie = _lie_structure(example2_brackets(lam, mu), 2, f"example2(lambda={lam:g},mu={mu:g})")
    if chart is None:
        chart = mu == 0.0
    if not chart:
        return TwinExample(lie, None, None)
    if mu != 0.0:
        raise ParameterError("the chart form of example2 exists only for mu = 0")
    base = flat_base(np.diag([1.0, -1.0, 1.0, -1.0]), scale=2.0, name="flat4x2")
    twin = hyperbolic_extension(base, name=f"example2-chart(lambda={lam:g})")

    def coframe(X):
        t = X[0]
        c, s = jets.cos(lam * t), jets.sin(lam * t)
        ep, em = jets.exp(t), jets.exp(-t)
        f1, f2, f3, f4 = ep * c, em * c, ep * s, em * s
        out = np.zeros((5, 5), dtype=object)
        out[0, 0] = 1.0
        out[1, 1:] = [f1, f2, f3, f4]
        out[2, 1:] = [-f3, -f4, f1, f2]
        out[3, 1:] = [f1, -f2, f3, -f4]
        out[4, 1:] = [-f3, f4, f1, -f2]
        return out

    return TwinExample(lie, twin, coframe)


# -- Example 3 ------------------------------------------------------------------

def _poincare(n: int, c: float):
    def metric(x):
        r2 = sum(xi * xi for xi in x)
        conf = (1 - r2) ** -2 * (4.0 * c)
        out = np.zeros((n, n), dtype=object)
        for i in range(n):
            out[i, i] = conf
        return out

    return metric


def _ball_domain(n: int, radius: float = 0.8):
    # a cube inside the ball of the given radius
    half = radius / np.sqrt(n)
    return ((-half, half),) * n


def example3(n: int = 2, scale: float = 1.0) -> PhpcrModel:
    """Product of two Poincare balls, each scaled so that ``Ric = -2n h``.

    ``scale`` multiplies the whole base metric (``scale = 1`` is Einstein
    with the constant needed for an Einstein extension).
    """
    if int(n) != n or n < 2:
        raise ParameterError(f"example3 needs n >= 2, got {n}")
    n = int(n)
    c = scale * (n - 1) / (2.0 * n)
    factor = _poincare(n, c)

    def metric(x):
        out = np.zeros((2 * n, 2 * n), dtype=object)
        out[:n, :n] = factor(x[:n])
        out[n:, n:] = factor(x[n:])
        return out

    P = np.diag([1.0] * n + [-1.0] * n)
    domain = _ball_domain(n) * 2
    label = f"example3(n={n})" if scale == 1.0 else f"example3(n={n},scale={scale:g})"
    return PhpcrModel(ChartModel(2 * n, metric, domain, name=label), P, name=label)


# -- Example 4 ------------------------------------------------------------------

POLAR = (0.2, np.pi - 0.2)


def _sphere_metric(n: int, rho2: float):
    def metric(th):
        out = np.zeros((n, n), dtype=object)
        w = rho2
        for i in range(n):
            out[i, i] = w
            w = w * jets.sin(th[i]) ** 2
        return out

    return metric


def _sphere_embedding(n: int, rho: float):
    def emb(th):
        out = []
        w = rho
        for i in range(n):
            out.append(w * jets.cos(th[i]))
            w = w * jets.sin(th[i])
        out.append(w)
        return out

    return emb


def example4(n: int = 2, a: float = 2.0, b: float = 1.0) -> PhpcrModel:
    """The ``P``-invariant sphere with parameters ``(a, b)``.

    It is the product of round ``n``-spheres of radii ``sqrt((a ± b) / 2)``
    in the ``±1`` eigenspaces of ``P'``; ``P`` is ``+1`` on the first factor
    and ``-1`` on the second.
    """
    if int(n) != n or n < 2:
        raise ParameterError(f"example4 needs n >= 2, got {n}")
    if not a > abs(b):
        raise ParameterError(f"example4 needs a > |b|, got a={a}, b={b}")
    n = int(n)
    plus, minus = _sphere_metric(n, (a + b) / 2.0), _sphere_metric(n, (a - b) / 2.0)

    def metric(x):
        out = np.zeros((2 * n, 2 * n), dtype=object)
        out[:n, :n] = plus(x[:n])
        out[n:, n:] = minus(x[n:])
        return out

    P = np.diag([1.0] * n + [-1.0] * n)
    label = f"example4(n={n},a={a:g},b={b:g})"
    return PhpcrModel(ChartModel(2 * n, metric, (POLAR,) * (2 * n), name=label), P, name=label)


def example4_embedding(n: int, a: float, b: float, z0=None) -> Callable:
    """Chart of :func:`example4` into ``R^{2n+2}`` with the swap structure ``P'``."""
    ep, em = _sphere_embedding(n, np.sqrt((a + b) / 2.0)), _sphere_embedding(n, np.sqrt((a - b) / 2.0))
    z0 = np.zeros(2 * n + 2) if z0 is None else np.asarray(z0, dtype=float)
    r = 1.0 / np.sqrt(2.0)

    def emb(x):
        A, B = ep(x[:n]), em(x[n:])
        first = [(p + q) * r for p, q in zip(A, B)]
        second = [(p - q) * r for p, q in zip(A, B)]
        return [z + c for z, c in zip(z0, first + second)]

    return emb


def ambient_forms(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(h', h~', P')`` on ``R^{2n+2}``."""
    m = 2 * n + 2
    Pp = swap_P(n + 1)
    return np.eye(m), Pp.copy(), Pp


def check_example4_embedding(n: int, a: float, b: float, points=8, seed: int = 0, tol: float = 1e-10):
    """Pullbacks of ``h'`` and ``h~'`` and the defining equations along the chart."""
    base = example4(n, a, b)
    emb = example4_embedding(n, a, b)
    hp, htp, Pp = ambient_forms(n)
    pts = resolve_points(base.model.sample_domain, points, seed)
    res = Residuals(tol)
    for x in pts:
        z, J, _ = jets.evaluate(emb, x)
        where = x.tolist()
        res.add("sphere_equation", abs(z @ hp @ z - a), where)
        res.add("hyperboloid_equation", abs(z @ htp @ z - b), where)
        h = base.model.metric(x)
        res.add("pullback_h", rel_residual(J.T @ hp @ J, h), where)
        res.add("pullback_h_tilde", rel_residual(J.T @ htp @ J, h @ base.P), where)
        # P' maps the tangent image onto itself as the image of P
        res.add("P_tangent", rel_residual(Pp @ J, J @ base.P), where)
    return res.report("example4_embedding", len(pts), seed)


# -- parallel structure -----------------------------------------------------------

def parallel_product(n: int = 2) -> ApcpcStructure:
    """Flat ``R^2n`` times a line with the product metric: ``F = 0``."""
    if int(n) != n or n < 1:
        raise ParameterError(f"parallel_product needs n >= 1, got {n}")
    n = int(n)
    d = 2 * n + 1
    g = np.eye(d)
    phi = np.zeros((d, d))
    phi[1:, 1:] = swap_P(n)
    xi = np.zeros(d)
    xi[0] = 1.0
    model = ChartModel(d, lambda x: g, ((-1.0, 1.0),) * d, name=f"parallel(n={n})")
    return ApcpcStructure(model, phi, xi, xi.copy(), name=f"parallel(n={n})")


def parallel_product_lie(n: int = 2) -> ApcpcStructure:
    d = 2 * n + 1
    return _lie_structure(np.zeros((d, d, d)), n, f"parallel-lie(n={n})")


def check_twin_alignment(ex: TwinExample, points=8, seed: int = 0, tol: float = DEFAULT_TOL):
    """Chart frame is orthonormal, reproduces the Lie brackets and carries phi, xi over."""
    chart, lie = ex.chart, ex.lie
    c = lie.model.structure_constants
    pts = resolve_points(chart.sample_domain, points, seed)
    res = Residuals(tol)
    d = chart.dim
    for p in pts:
        sp = chart.at(p)
        E, dE = ex.frame_at(p)
        where = p.tolist()
        res.add("orthonormal", rel_residual(E.T @ sp.g @ E, lie.model.frame_metric), where)
        res.add("phi", rel_residual(sp.phi @ E, E @ lie.phi), where)
        res.add("xi", rel_residual(sp.xi, E @ lie.xi), where)
        worst = 0.0
        for i in range(d):
            for j in range(d):
                br = sp.loc.bracket(E[:, i], dE[:, :, i], E[:, j], dE[:, :, j])
                worst = max(worst, rel_residual(br, E @ c[:, i, j]))
        res.add("brackets", worst, where)
    return res.report("twin_alignment", len(pts), seed)


__all__ = [
    "PhpcrModel",
    "TwinExample",
    "hyperbolic_extension",
    "slice_structure",
    "swap_P",
    "flat_base",
    "example1",
    "example1_brackets",
    "example2",
    "example2_brackets",
    "example3",
    "example4",
    "example4_embedding",
    "ambient_forms",
    "check_example4_embedding",
    "parallel_product",
    "parallel_product_lie",
    "check_twin_alignment",
]
