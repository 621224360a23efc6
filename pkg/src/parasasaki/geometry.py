"""Connection and curvature at a point.

Two backends describe a manifold locally:

* :class:`LieFrameModel` -- a left-invariant frame given by structure constants
  and constant metric components.  Everything is algebraic.
* :class:`ChartModel` -- metric components as a jet-evaluable function of the
  coordinates.  Derivatives come from :mod:`parasasaki.jets`.

Both reduce to a :class:`LocalGeometry`: metric components, their derivatives
along the working basis, and the bracket coefficients of that basis.  The
Koszul formula, covariant derivatives and the curvature are written once
against that common form.

Conventions: ``gamma[k, i, j]`` is the ``e_k`` component of ``∇_{e_i} e_j``;
``riemann[i, j, k, l] = g(R(e_i, e_j) e_k, e_l)`` with
``R(x, y) = [∇_x, ∇_y] - ∇_[x, y]``; ``Ric(x, y) = Σ R(E_a, x, y, E_a)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence, Union

import numpy as np

from . import jets
from .errors import BackendError, ShapeError, SingularMetricError
from .tensor_core import TensorValue, check_metric, inverse_metric

Field = Callable[[Sequence], object]


@dataclass(frozen=True, eq=False)
class LieFrameModel:
    structure_constants: np.ndarray
    frame_metric: np.ndarray
    name: str = "lie"

    def __post_init__(self):
        c = np.array(self.structure_constants, dtype=float)
        g = np.array(self.frame_metric, dtype=float)
        d = g.shape[0]
        if c.shape != (d, d, d):
            raise ShapeError(f"structure constants must be ({d},{d},{d}), got {c.shape}")
        if not np.array_equal(c, -np.swapaxes(c, 1, 2)):
            raise ShapeError("structure constants are not antisymmetric in the lower pair")
        # sum over cyclic permutations of [[e_i, e_j], e_k]
        jac = np.einsum("mij,lmk->lijk", c, c)
        jac = jac + np.einsum("ljki->lijk", jac) + np.einsum("lkij->lijk", jac)
        if np.max(np.abs(jac), initial=0.0) > 1e-12:
            raise ShapeError("structure constants violate the Jacobi identity")
        if not np.allclose(g, g.T, atol=0, rtol=0):
            raise ShapeError("frame metric not symmetric")
        if np.min(np.linalg.eigvalsh(g)) <= 0:
            raise SingularMetricError("frame metric not positive definite")
        c.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "structure_constants", c)
        object.__setattr__(self, "frame_metric", g)

    @property
    def dim(self) -> int:
        return self.frame_metric.shape[0]

    @property
    def frame_id(self) -> str:
        return f"frame:{self.name}"

    @property
    def sample_domain(self) -> tuple[tuple[float, float], ...]:
        # left-invariant: any point is as good as any other
        return ((-1.0, 1.0),) * self.dim

    def local(self, p=None) -> "LocalGeometry":
        d = self.dim
        return LocalGeometry(
            g=self.frame_metric,
            dg=np.zeros((d, d, d)),
            brackets=self.structure_constants,
            frame_id=self.frame_id,
        )

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Bracket of two left-invariant fields given by constant components."""
        return np.einsum("kij,i,j->k", self.structure_constants, x, y)


@dataclass(frozen=True, eq=False)
class ChartModel:
    dim: int
    metric_field: Field
    sample_domain: tuple[tuple[float, float], ...]
    name: str = "chart"

    def __post_init__(self):
        if len(self.sample_domain) != self.dim:
            raise ShapeError("sample domain does not match dimension")

    @property
    def frame_id(self) -> str:
        return f"chart:{self.name}"

    def metric_jets(self, p):
        val, grad, hess = jets.evaluate(self.metric_field, p)
        if val.shape != (self.dim, self.dim):
            raise ShapeError(f"metric field returned shape {val.shape}")
        g = 0.5 * (val + val.T)
        dg = 0.5 * (np.moveaxis(grad, 2, 0) + np.moveaxis(grad, 2, 0).transpose(0, 2, 1))
        d2 = np.moveaxis(np.moveaxis(hess, 2, 0), 3, 1)
        d2g = 0.5 * (d2 + np.swapaxes(d2, 2, 3))
        return g, dg, d2g

    def metric(self, p) -> np.ndarray:
        return jets.value(self.metric_field, p)

    def local(self, p) -> "LocalGeometry":
        g, dg, d2g = self.metric_jets(p)
        d = self.dim
        return LocalGeometry(
            g=g, dg=dg, brackets=np.zeros((d, d, d)), frame_id=self.frame_id, d2g=d2g
        )


ManifoldModel = Union[LieFrameModel, ChartModel]


@dataclass(eq=False)
class LocalGeometry:
    """Metric data at one point in the model's working basis."""

    g: np.ndarray
    dg: np.ndarray
    brackets: np.ndarray
    frame_id: str
    d2g: np.ndarray | None = None
    _frame: np.ndarray | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.g.shape[0]

    @cached_property
    def ginv(self) -> np.ndarray:
        return inverse_metric(self.g)

    @cached_property
    def koszul(self) -> np.ndarray:
        """``2 g(∇_{e_i} e_j, e_k)`` indexed ``[i, j, k]``."""
        g, dg, c = self.g, self.dg, self.brackets
        # e_i g_jk + e_j g_ik - e_k g_ij
        out = dg + np.swapaxes(dg, 0, 1) - np.einsum("kij->ijk", dg)
        out = out + np.einsum("mij,mk->ijk", c, g)
        out = out + np.einsum("mki,mj->ijk", c, g)
        out = out + np.einsum("mkj,mi->ijk", c, g)
        return out

    @cached_property
    def gamma(self) -> np.ndarray:
        return 0.5 * np.einsum("kl,ijl->kij", self.ginv, self.koszul)

    @cached_property
    def dgamma(self) -> np.ndarray:
        """``e_a(Γ^k_ij)`` indexed ``[a, k, i, j]``; zero for invariant frames."""
        d = self.dim
        if self.d2g is None:
            return np.zeros((d, d, d, d))
        ginv, dg, d2g = self.ginv, self.dg, self.d2g
        kos = dg + np.swapaxes(dg, 0, 1) - np.einsum("kij->ijk", dg)
        # d2g[a, b, i, j] = ∂_a ∂_b g_ij
        dkos = d2g + np.einsum("ajil->aijl", d2g) - np.einsum("alij->aijl", d2g)
        dginv = -np.einsum("km,amn,nl->akl", ginv, dg, ginv)
        return 0.5 * (np.einsum("akl,ijl->akij", dginv, kos) + np.einsum("kl,aijl->akij", ginv, dkos))

    @cached_property
    def riemann_up(self) -> np.ndarray:
        """``R(e_i, e_j) e_k = R^l_{ijk} e_l`` indexed ``[i, j, k, l]``."""
        G, dG, c = self.gamma, self.dgamma, self.brackets
        out = np.einsum("iljk->ijkl", dG) - np.einsum("jlik->ijkl", dG)
        out = out + np.einsum("mjk,lim->ijkl", G, G) - np.einsum("mik,ljm->ijkl", G, G)
        out = out - np.einsum("mij,lmk->ijkl", c, G)
        return out

    @cached_property
    def riemann(self) -> np.ndarray:
        return np.einsum("ijkm,ml->ijkl", self.riemann_up, self.g)

    @property
    def frame(self) -> np.ndarray:
        if self._frame is None:
            self._frame = orthonormal_frame(self.g)
        return self._frame

    @cached_property
    def ricci(self) -> np.ndarray:
        E = self.frame
        ric = np.einsum("ixyl,ia,la->xy", self.riemann, E, E)
        return ric

    @cached_property
    def scalar(self) -> float:
        E = self.frame
        return float(np.einsum("xy,xa,ya->", self.ricci, E, E))

    def bracket(self, x, dx, y, dy) -> np.ndarray:
        """``[X, Y]`` for fields with components ``x``, ``y`` and derivatives ``dx[a, k] = e_a(X^k)``."""
        return x @ dy - y @ dx + np.einsum("kij,i,j->k", self.brackets, x, y)

    def nabla(self, value: np.ndarray, deriv: np.ndarray, variance: Sequence[str]) -> np.ndarray:
        """Covariant derivative; output axis 0 is the differentiation direction."""
        return covariant_derivative_components(self.gamma, value, deriv, variance)


def covariant_derivative_components(gamma, value, deriv, variance) -> np.ndarray:
    value = np.asarray(value, dtype=float)
    out = np.array(deriv, dtype=float)
    d = gamma.shape[0]
    if out.shape != (d,) + value.shape:
        raise ShapeError(f"derivative shape {out.shape} does not match value {value.shape}")
    for s, kind in enumerate(variance):
        if kind == "upper":
            # + Γ^{i}_{a m} T^{..m..}
            term = np.tensordot(gamma, value, axes=([2], [s]))  # [i, a, rest...]
            term = np.moveaxis(term, 0, s + 1)
            out = out + term
        else:
            # - Γ^{m}_{a j} T_{..m..}
            term = np.tensordot(gamma, value, axes=([0], [s]))  # [a, j, rest...]
            term = np.moveaxis(term, 1, s + 1)
            out = out - term
    return out


def orthonormal_frame(g: np.ndarray, vectors: np.ndarray | None = None, drop_tol: float = 1e-10) -> np.ndarray:
    """Gram-Schmidt with pivoting on the largest remaining norm.

    ``vectors`` holds candidate vectors as columns (default: the basis).
    Returns a matrix whose columns are g-orthonormal; candidates whose
    remaining norm falls below ``drop_tol`` (relative) are discarded.
    """
    g = np.asarray(g, dtype=float)
    cand = np.eye(g.shape[0]) if vectors is None else np.array(vectors, dtype=float)
    cand = cand.copy()
    chosen: list[np.ndarray] = []
    scale = max(1.0, float(np.max(np.abs(np.einsum("ia,ij,ja->a", cand, g, cand)))))
    remaining = list(range(cand.shape[1]))
    while remaining:
        norms = np.array([cand[:, j] @ g @ cand[:, j] for j in remaining])
        best = int(np.argmax(norms))
        if norms[best] <= drop_tol * scale:
            break
        j = remaining.pop(best)
        e = cand[:, j] / np.sqrt(norms[best])
        chosen.append(e)
        for k in remaining:
            cand[:, k] = cand[:, k] - (e @ g @ cand[:, k]) * e
    return np.stack(chosen, axis=1) if chosen else np.zeros((g.shape[0], 0))


def _point(p) -> np.ndarray:
    return np.asarray(p if p is not None else [], dtype=float)


def christoffel(m: ManifoldModel, p) -> TensorValue:
    loc = m.local(_point(p))
    return TensorValue(loc.gamma, ("upper", "lower", "lower"), loc.frame_id)


def riemann(m: ManifoldModel, p) -> TensorValue:
    loc = m.local(_point(p))
    return TensorValue(loc.riemann, ("lower",) * 4, loc.frame_id)


def ricci(m: ManifoldModel, p) -> TensorValue:
    loc = m.local(_point(p))
    return TensorValue(loc.ricci, ("lower", "lower"), loc.frame_id)


def scalar(m: ManifoldModel, p) -> float:
    return m.local(_point(p)).scalar


def covariant_derivative(m: ManifoldModel, p, fld, variance: Sequence[str]) -> TensorValue:
    """``∇ T`` at ``p`` for a tensor field with the given slot kinds.

    ``fld`` is either a constant component array (invariant fields on a Lie
    frame, or constants on a chart) or a jet-evaluable callable on a chart.
    """
    loc = m.local(_point(p))
    value, deriv = field_jet(m, fld, p)
    return TensorValue(loc.nabla(value, deriv, variance), ("lower",) + tuple(variance), loc.frame_id)


def field_jet(m: ManifoldModel, fld, p) -> tuple[np.ndarray, np.ndarray]:
    """Components of a field and their derivatives ``[a, ...]`` along the basis."""
    if callable(fld):
        if isinstance(m, LieFrameModel):
            raise BackendError("Lie-frame fields must be given by constant components")
        val, grad, _ = jets.evaluate(fld, p)
        return val, np.moveaxis(grad, -1, 0)
    val = np.asarray(fld, dtype=float)
    return val, np.zeros((m.dim,) + val.shape)


def lie_model_from_json(doc) -> tuple[LieFrameModel, dict]:
    """Read ``{"dim", "c": [[i, j, k, value], ...], "g", "phi", "xi", "eta"}``.

    ``c`` entries mean ``[e_i, e_j] += value e_k``; the antisymmetric partner
    is filled in when absent.  Returns the model and the remaining arrays.
    """
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    d = int(doc["dim"])
    c = np.zeros((d, d, d))
    given = set()
    for i, j, k, v in doc["c"]:
        i, j, k = int(i), int(j), int(k)
        c[k, i, j] = float(v)
        given.add((i, j, k))
    for i, j, k in given:
        if (j, i, k) not in given:
            c[k, j, i] = -c[k, i, j]
    model = LieFrameModel(c, np.asarray(doc["g"], dtype=float), name=str(doc.get("name", "lie")))
    extras = {key: np.asarray(doc[key], dtype=float) for key in ("phi", "xi", "eta") if key in doc}
    return model, extras


def lie_model_to_json(model: LieFrameModel, **extras) -> str:
    d = model.dim
    c = model.structure_constants
    entries = [
        [i, j, k, float(c[k, i, j])]
        for i in range(d)
        for j in range(i + 1, d)
        for k in range(d)
        if c[k, i, j] != 0.0
    ]
    doc = {"dim": d, "c": entries, "g": model.frame_metric.tolist()}
    for key, arr in extras.items():
        doc[key] = np.asarray(arr, dtype=float).tolist()
    return json.dumps(doc)


def metric_is_positive(g: np.ndarray) -> bool:
    try:
        check_metric(g)
        np.linalg.cholesky(0.5 * (g + g.T))
    except (np.linalg.LinAlgError, SingularMetricError):
        return False
    return True
