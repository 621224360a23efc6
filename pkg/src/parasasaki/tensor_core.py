"""Point-local dense tensor algebra.

Tensors are dense ``numpy`` arrays with one axis per slot.  :class:`TensorValue`
wraps such an array with its variance signature and the frame the components
refer to, so that mismatched contractions are caught early.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import ShapeError, SingularMetricError, VarianceError

Slot = Literal["lower", "upper"]

ATOL = 1e-9
RTOL = 1e-9
SINGULAR_THRESHOLD = 1e-12


@dataclass(frozen=True, eq=False)
class TensorValue:
    components: np.ndarray
    variance: tuple[Slot, ...]
    frame_id: str = "coord"

    def __post_init__(self):
        comps = np.array(self.components, dtype=float)
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "variance", tuple(self.variance))
        for v in self.variance:
            if v not in ("lower", "upper"):
                raise VarianceError(f"unknown slot kind {v!r}")
        rank = len(self.variance)
        if comps.ndim != rank:
            raise ShapeError(f"rank {rank} variance but {comps.ndim}-d components")
        if rank and len(set(comps.shape)) != 1:
            raise ShapeError(f"components must be cubical, got {comps.shape}")

    @property
    def rank(self) -> int:
        return len(self.variance)

    @property
    def dim(self) -> int:
        return self.components.shape[0] if self.rank else 0

    def __call__(self, *vectors: np.ndarray) -> np.ndarray:
        """Feed vectors (or covectors) into the leading slots."""
        out = self.components
        for v in vectors:
            out = np.tensordot(np.asarray(v, dtype=float), out, axes=([0], [0]))
        return out

    def _check_compatible(self, other: "TensorValue") -> None:
        if self.frame_id != other.frame_id:
            raise ShapeError(f"frame mismatch: {self.frame_id} vs {other.frame_id}")
        if self.variance != other.variance:
            raise VarianceError(f"variance mismatch: {self.variance} vs {other.variance}")
        if self.components.shape != other.components.shape:
            raise ShapeError("dimension mismatch")

    def __add__(self, other: "TensorValue") -> "TensorValue":
        self._check_compatible(other)
        return TensorValue(self.components + other.components, self.variance, self.frame_id)

    def __sub__(self, other: "TensorValue") -> "TensorValue":
        self._check_compatible(other)
        return TensorValue(self.components - other.components, self.variance, self.frame_id)

    def __mul__(self, scalar: float) -> "TensorValue":
        return TensorValue(self.components * float(scalar), self.variance, self.frame_id)

    __rmul__ = __mul__

    def allclose(self, other: "TensorValue", atol: float = ATOL, rtol: float = RTOL) -> bool:
        self._check_compatible(other)
        return close(self.components, other.components, atol=atol, rtol=rtol)


def close(a, b, atol: float = ATOL, rtol: float = RTOL) -> bool:
    """``|a - b| <= atol + rtol * max(|a|, |b|)`` elementwise."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    bound = atol + rtol * np.maximum(np.abs(a), np.abs(b))
    return bool(np.all(np.abs(a - b) <= bound))


def _check_slot(t: TensorValue, slot: int) -> None:
    if not 0 <= slot < t.rank:
        raise IndexError(f"slot {slot} out of range for rank {t.rank}")


def contract(t: TensorValue, slot_a: int, slot_b: int) -> TensorValue:
    """Trace over one upper and one lower slot."""
    _check_slot(t, slot_a)
    _check_slot(t, slot_b)
    if slot_a == slot_b:
        raise VarianceError("cannot contract a slot with itself")
    if t.variance[slot_a] == t.variance[slot_b]:
        raise VarianceError(
            f"contraction needs one upper and one lower slot, got {t.variance[slot_a]} twice"
        )
    comps = np.trace(t.components, axis1=slot_a, axis2=slot_b)
    variance = tuple(v for i, v in enumerate(t.variance) if i not in (slot_a, slot_b))
    return TensorValue(comps, variance, t.frame_id)


def tensor_product(a: TensorValue, b: TensorValue) -> TensorValue:
    if a.frame_id != b.frame_id:
        raise ShapeError("frame mismatch")
    return TensorValue(np.multiply.outer(a.components, b.components), a.variance + b.variance, a.frame_id)


def check_metric(g: np.ndarray) -> None:
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ShapeError(f"metric must be square, got {g.shape}")
    scale = np.max(np.abs(g))
    if scale == 0.0:
        raise SingularMetricError("zero metric")
    if abs(np.linalg.det(g / scale)) < SINGULAR_THRESHOLD:
        raise SingularMetricError("metric determinant below threshold")


def inverse_metric(g: np.ndarray) -> np.ndarray:
    """Inverse of a symmetric nondegenerate matrix (LU with partial pivoting)."""
    check_metric(g)
    inv = np.linalg.solve(g, np.eye(g.shape[0]))
    return 0.5 * (inv + inv.T)


def _move_slot(t: TensorValue, slot: int, matrix: np.ndarray, new_kind: Slot) -> TensorValue:
    comps = np.moveaxis(np.tensordot(matrix, t.components, axes=([1], [slot])), 0, slot)
    variance = list(t.variance)
    variance[slot] = new_kind
    return TensorValue(comps, tuple(variance), t.frame_id)


def _as_matrix(m) -> np.ndarray:
    return m.components if isinstance(m, TensorValue) else np.asarray(m, dtype=float)


def raise_index(t: TensorValue, slot: int, g_inv) -> TensorValue:
    _check_slot(t, slot)
    if t.variance[slot] != "lower":
        raise VarianceError(f"slot {slot} is already upper")
    g_inv = _as_matrix(g_inv)
    check_metric(g_inv)
    return _move_slot(t, slot, g_inv, "upper")


def lower_index(t: TensorValue, slot: int, g) -> TensorValue:
    _check_slot(t, slot)
    if t.variance[slot] != "upper":
        raise VarianceError(f"slot {slot} is already lower")
    g = _as_matrix(g)
    check_metric(g)
    return _move_slot(t, slot, g, "lower")


def symmetrize(t: TensorValue, slots: Sequence[int] = (0, 1)) -> TensorValue:
    """Average over the two given slots."""
    a, b = slots
    _check_slot(t, a)
    _check_slot(t, b)
    if t.variance[a] != t.variance[b]:
        raise VarianceError("symmetrizing slots of different kinds")
    comps = 0.5 * (t.components + np.swapaxes(t.components, a, b))
    return TensorValue(comps, t.variance, t.frame_id)


def kn_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kulkarni-Nomizu product on raw component arrays.

    ``(a ⊘ b)(x,y,z,w) = a(y,z) b(x,w) - a(x,z) b(y,w) + b(y,z) a(x,w) - b(x,z) a(y,w)``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.einsum("yz,xw->xyzw", a, b) - np.einsum("xz,yw->xyzw", a, b)
    return out + np.einsum("yz,xw->xyzw", b, a) - np.einsum("xz,yw->xyzw", b, a)


def kulkarni_nomizu(a: TensorValue, b: TensorValue) -> TensorValue:
    for t in (a, b):
        if t.variance != ("lower", "lower"):
            raise ShapeError("Kulkarni-Nomizu product takes two (0,2) tensors")
    if a.frame_id != b.frame_id or a.dim != b.dim:
        raise ShapeError("operands live in different frames or dimensions")
    return TensorValue(kn_product(a.components, b.components), ("lower",) * 4, a.frame_id)


def curvature_symmetry_residuals(r: np.ndarray) -> dict[str, float]:
    """Residuals of the algebraic curvature symmetries of a (0,4) array."""
    r = np.asarray(r, dtype=float)
    bianchi = r + np.einsum("yzxw->xyzw", r) + np.einsum("zxyw->xyzw", r)
    return {
        "antisym_first_pair": float(np.max(np.abs(r + np.swapaxes(r, 0, 1)), initial=0.0)),
        "antisym_last_pair": float(np.max(np.abs(r + np.swapaxes(r, 2, 3)), initial=0.0)),
        "pair_symmetry": float(np.max(np.abs(r - np.einsum("zwxy->xyzw", r)), initial=0.0)),
        "first_bianchi": float(np.max(np.abs(bianchi), initial=0.0)),
    }
