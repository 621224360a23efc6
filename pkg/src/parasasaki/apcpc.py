"""Almost paracontact paracomplex Riemannian structures.

An :class:`ApcpcStructure` is a manifold model plus ``(phi, xi, eta)``.  All
pointwise quantities (the fundamental tensor ``F``, Lee forms, both Nijenhuis
tensors, ``d eta``) are computed by :class:`StructurePoint` in the model's
working basis; checks express them in an adapted orthonormal frame
``[xi, X_1, ..., X_2n]`` so residuals are scale free.

Index conventions: ``phi[i, j]`` is the ``e_i`` component of ``phi e_j``;
``F[a, b, c] = g((∇_{e_a} phi) e_b, e_c)``; ``d eta(x, y) = x eta(y) - y eta(x)
- eta([x, y])`` (no factor one half).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Any

import numpy as np

from .errors import (
    BackendError,
    DimensionError,
    InternalConsistencyError,
)
from .geometry import ChartModel, LieFrameModel, ManifoldModel, field_jet, orthonormal_frame
from .reports import (
    DEFAULT_TOL,
    CheckReport,
    Residuals,
    rel_residual,
    resolve_points,
    verdict,
)
from .tensor_core import TensorValue


@dataclass(frozen=True, eq=False)
class ApcpcStructure:
    model: ManifoldModel
    phi: Any
    xi: Any
    eta: Any
    name: str = "structure"
    # set by hyperbolic_extension: the phpcR base the structure extends
    base: Any = None

    @property
    def dim(self) -> int:
        return self.model.dim

    @property
    def n(self) -> int:
        return (self.dim - 1) // 2

    @property
    def frame_id(self) -> str:
        return self.model.frame_id

    @property
    def sample_domain(self):
        return self.model.sample_domain

    def at(self, p=None) -> "StructurePoint":
        if self.dim % 2 == 0:
            raise DimensionError(f"apcpcR structures live in odd dimension, got {self.dim}")
        p = np.zeros(self.dim) if p is None else np.asarray(p, dtype=float)
        return StructurePoint(self, p)

    def with_fields(self, **changes) -> "ApcpcStructure":
        return replace(self, **changes)


class StructurePoint:
    """Everything about a structure at one point, computed lazily."""

    def __init__(self, s: ApcpcStructure, p: np.ndarray):
        self.s = s
        self.p = p
        self.loc = s.model.local(p)
        self.phi, self.dphi = field_jet(s.model, s.phi, p)
        self.xi, self.dxi = field_jet(s.model, s.xi, p)
        self.eta, self.deta = field_jet(s.model, s.eta, p)

    @property
    def dim(self) -> int:
        return self.loc.dim

    @property
    def n(self) -> int:
        return (self.dim - 1) // 2

    @property
    def g(self) -> np.ndarray:
        return self.loc.g

    @cached_property
    def gphi(self) -> np.ndarray:
        """``g(x, phi y)`` components."""
        return self.g @ self.phi

    @cached_property
    def g_tilde(self) -> np.ndarray:
        return self.gphi + np.outer(self.eta, self.eta)

    @cached_property
    def horizontal_frame(self) -> np.ndarray:
        """g-orthonormal basis of ker(eta) as columns (2n of them)."""
        proj = np.eye(self.dim) - np.outer(self.xi, self.eta)
        return orthonormal_frame(self.g, proj)[:, : self.dim - 1]

    @cached_property
    def adapted_frame(self) -> np.ndarray:
        xi = self.xi / np.sqrt(self.xi @ self.g @ self.xi)
        return np.column_stack([xi, self.horizontal_frame])

    def in_frame(self, t: np.ndarray, frame: np.ndarray | None = None) -> np.ndarray:
        """Covariant components ``t(E_a, E_b, ...)`` in a frame (default: adapted)."""
        E = self.adapted_frame if frame is None else frame
        out = np.asarray(t, dtype=float)
        for _ in range(out.ndim):
            out = np.tensordot(out, E, axes=([0], [0]))
        return out

    # -- covariant derivatives -------------------------------------------
    @cached_property
    def nabla_phi(self) -> np.ndarray:
        """``(∇_{e_a} phi)^i_j`` indexed ``[a, i, j]``."""
        return self.loc.nabla(self.phi, self.dphi, ("upper", "lower"))

    @cached_property
    def nabla_eta(self) -> np.ndarray:
        """``(∇_{e_a} eta)(e_j)`` indexed ``[a, j]``."""
        return self.loc.nabla(self.eta, self.deta, ("lower",))

    @cached_property
    def nabla_xi(self) -> np.ndarray:
        """``(∇_{e_a} xi)^i`` indexed ``[a, i]``."""
        return self.loc.nabla(self.xi, self.dxi, ("upper",))

    @cached_property
    def F(self) -> np.ndarray:
        return np.einsum("aij,ik->ajk", self.nabla_phi, self.g)

    @cached_property
    def d_eta(self) -> np.ndarray:
        c = self.loc.brackets
        return self.deta - self.deta.T - np.einsum("k,kij->ij", self.eta, c)

    @cached_property
    def nabla_xi_xi(self) -> np.ndarray:
        return self.xi @ self.nabla_xi

    # -- Lee forms ---------------------------------------------------------
    @cached_property
    def lee_forms(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        H = self.horizontal_frame
        F = self.F
        theta = np.einsum("abk,ai,bi->k", F, H, H)
        theta_star = np.einsum("abk,ai,bi->k", F, H, self.phi @ H)
        omega = np.einsum("abk,a,b->k", F, self.xi, self.xi)
        return theta, theta_star, omega

    # -- Nijenhuis tensors from F ------------------------------------------
    def _phi_F_parts(self):
        F, phi, xi = self.F, self.phi, self.xi
        f_phix = np.einsum("ma,mbc->abc", phi, F)  # F(phi x, y, z)
        f_phiy_x = np.einsum("mb,mac->abc", phi, F)  # F(phi y, x, z)
        f_phiz = np.einsum("abm,mc->abc", F, phi)  # F(x, y, phi z)
        f_yx_phiz = np.einsum("bam,mc->abc", F, phi)  # F(y, x, phi z)
        f_x_phiy_xi = np.einsum("amk,mb,k->ab", F, phi, xi)  # F(x, phi y, xi)
        return f_phix, f_phiy_x, f_phiz, f_yx_phiz, f_x_phiy_xi

    @cached_property
    def nijenhuis_F(self) -> np.ndarray:
        a, b, c, d, e = self._phi_F_parts()
        return a - b - c + d + np.einsum("z,xy->xyz", self.eta, e - e.T)

    @cached_property
    def assoc_nijenhuis_F(self) -> np.ndarray:
        a, b, c, d, e = self._phi_F_parts()
        return a + b - c - d + np.einsum("z,xy->xyz", self.eta, e + e.T)

    # -- Nijenhuis tensors from brackets -----------------------------------
    def _basis_field(self, j: int):
        v = np.zeros(self.dim)
        v[j] = 1.0
        return v, np.zeros((self.dim, self.dim))

    def _phi_field(self, j: int):
        return self.phi[:, j], self.dphi[:, :, j]

    def _sym_bracket(self, x, dx, y, dy) -> np.ndarray:
        G = self.loc.gamma
        nxy = x @ dy + np.einsum("kab,a,b->k", G, x, y)
        nyx = y @ dx + np.einsum("kab,a,b->k", G, y, x)
        return nxy + nyx

    @cached_property
    def nijenhuis_bracket(self) -> np.ndarray:
        d = self.dim
        phi, loc = self.phi, self.loc
        out = np.zeros((d, d, d))
        for i in range(d):
            ei, dei = self._basis_field(i)
            pi, dpi = self._phi_field(i)
            for j in range(d):
                ej, dej = self._basis_field(j)
                pj, dpj = self._phi_field(j)
                v = loc.bracket(pi, dpi, pj, dpj)
                v = v + phi @ phi @ loc.bracket(ei, dei, ej, dej)
                v = v - phi @ loc.bracket(pi, dpi, ej, dej)
                v = v - phi @ loc.bracket(ei, dei, pj, dpj)
                v = v - self.d_eta[i, j] * self.xi
                out[i, j] = self.g @ v
        return out

    @cached_property
    def assoc_nijenhuis_bracket(self) -> np.ndarray:
        d = self.dim
        phi = self.phi
        lie_xi_g = self.nabla_eta + self.nabla_eta.T
        out = np.zeros((d, d, d))
        for i in range(d):
            ei, dei = self._basis_field(i)
            pi, dpi = self._phi_field(i)
            for j in range(d):
                ej, dej = self._basis_field(j)
                pj, dpj = self._phi_field(j)
                v = self._sym_bracket(pi, dpi, pj, dpj)
                v = v + phi @ phi @ self._sym_bracket(ei, dei, ej, dej)
                v = v - phi @ self._sym_bracket(pi, dpi, ej, dej)
                v = v - phi @ self._sym_bracket(ei, dei, pj, dpj)
                v = v - lie_xi_g[i, j] * self.xi
                out[i, j] = self.g @ v
        return out

    # -- identities ----------------------------------------------------------
    def defsl_rhs(self) -> np.ndarray:
        """``g((∇_x phi) y, z)`` demanded by the para-Sasaki-like condition."""
        g, eta = self.g, self.eta
        return (
            -np.einsum("xy,z->xyz", g, eta)
            - np.einsum("y,xz->xyz", eta, g)
            + 2.0 * np.einsum("x,y,z->xyz", eta, eta, eta)
        )

    def nabf_rhs(self) -> np.ndarray:
        N, Nh, phi, xi, eta = self.nijenhuis_F, self.assoc_nijenhuis_F, self.phi, self.xi, self.eta
        N_phix = np.einsum("mx,myz->xyz", phi, N)
        Nh_phix = np.einsum("mx,myz->xyz", phi, Nh)
        first = 0.25 * (N_phix + np.swapaxes(N_phix, 1, 2) + Nh_phix + np.swapaxes(Nh_phix, 1, 2))
        n_xi = np.einsum("a,aym,mz->yz", xi, N, phi)
        nh_xi = np.einsum("a,aym,mz->yz", xi, Nh, phi)
        nh_xixi = np.einsum("a,b,abm,my->y", xi, xi, Nh, phi)
        second = n_xi + nh_xi + np.einsum("z,y->yz", eta, nh_xixi)
        return first - 0.5 * np.einsum("x,yz->xyz", eta, second)


# ----------------------------------------------------------------------------
# operations
# ----------------------------------------------------------------------------

def _points(s: ApcpcStructure, points, seed):
    if s.dim % 2 == 0:
        raise DimensionError(f"apcpcR structures live in odd dimension, got {s.dim}")
    return resolve_points(s.sample_domain, points, seed)


def validate_structure(s: ApcpcStructure, points=8, seed: int = 0, tol: float = 1e-10) -> CheckReport:
    """Residuals of the structure axioms and metric compatibility."""
    pts = _points(s, points, seed)
    res = Residuals(tol)
    for p in pts:
        sp = s.at(p)
        g, phi, xi, eta = sp.g, sp.phi, sp.xi, sp.eta
        d = sp.dim
        where = p.tolist()
        res.add("phi_squared", rel_residual(phi @ phi, np.eye(d) - np.outer(xi, eta)), where)
        res.add("eta_xi", abs(eta @ xi - 1.0), where)
        res.add("phi_xi", rel_residual(phi @ xi, 0.0), where)
        res.add("eta_phi", rel_residual(eta @ phi, 0.0), where)
        res.add("g_xi_eta", rel_residual(g @ xi, eta), where)
        res.add("g_phi_compat", rel_residual(phi.T @ g @ phi, g - np.outer(eta, eta)), where)
        res.add("trace_phi", abs(np.trace(phi)), where)
    return res.report("validate_structure", len(pts), seed)


def associated_metric(s: ApcpcStructure, p=None) -> TensorValue:
    sp = s.at(p)
    return TensorValue(sp.g_tilde, ("lower", "lower"), s.frame_id)


def fundamental_F(s: ApcpcStructure, p=None) -> TensorValue:
    return TensorValue(s.at(p).F, ("lower",) * 3, s.frame_id)


def lee_forms(s: ApcpcStructure, p=None) -> tuple[TensorValue, TensorValue, TensorValue]:
    return tuple(TensorValue(f, ("lower",), s.frame_id) for f in s.at(p).lee_forms)


def nijenhuis(s: ApcpcStructure, p=None, route: str = "F") -> TensorValue:
    sp = s.at(p)
    comps = sp.nijenhuis_F if route == "F" else sp.nijenhuis_bracket
    return TensorValue(comps, ("lower",) * 3, s.frame_id)


def assoc_nijenhuis(s: ApcpcStructure, p=None, route: str = "F") -> TensorValue:
    sp = s.at(p)
    comps = sp.assoc_nijenhuis_F if route == "F" else sp.assoc_nijenhuis_bracket
    return TensorValue(comps, ("lower",) * 3, s.frame_id)


def scalar_star(s: ApcpcStructure, p=None) -> float:
    """``Σ Ric(E_a, phi E_a)`` over a g-orthonormal basis."""
    sp = s.at(p)
    E = sp.loc.frame
    return float(np.einsum("xy,xa,ya->", sp.loc.ricci, E, sp.phi @ E))


def check_nijenhuis_routes(s: ApcpcStructure, points=8, seed: int = 0, tol: float = DEFAULT_TOL) -> CheckReport:
    """Bracket definitions of N, N-hat against their F expressions."""
    pts = _points(s, points, seed)
    res = Residuals(tol)
    for p in pts:
        sp = s.at(p)
        where = p.tolist()
        res.add("N_bracket_vs_F", rel_residual(sp.in_frame(sp.nijenhuis_bracket), sp.in_frame(sp.nijenhuis_F)), where)
        res.add(
            "Nhat_bracket_vs_F",
            rel_residual(sp.in_frame(sp.assoc_nijenhuis_bracket), sp.in_frame(sp.assoc_nijenhuis_F)),
            where,
        )
    return res.report("nijenhuis_routes", len(pts), seed)


def verify_nabf(s: ApcpcStructure, points=8, seed: int = 0, tol: float = DEFAULT_TOL) -> CheckReport:
    """F recovered from N and N-hat by the general reconstruction formula."""
    pts = _points(s, points, seed)
    res = Residuals(tol)
    for p in pts:
        sp = s.at(p)
        res.add("nabf", rel_residual(sp.in_frame(sp.F), sp.in_frame(sp.nabf_rhs())), p.tolist())
    return res.report("nabf", len(pts), seed)


def check_F_properties(s: ApcpcStructure, points=8, seed: int = 0, tol: float = DEFAULT_TOL) -> CheckReport:
    """Symmetry of F in its last pair, the phi-twist identity, and the eta/xi relation."""
    pts = _points(s, points, seed)
    res = Residuals(tol)
    for p in pts:
        sp = s.at(p)
        F, phi, xi, eta = sp.F, sp.phi, sp.xi, sp.eta
        where = p.tolist()
        res.add("F_symmetric", rel_residual(sp.in_frame(F), sp.in_frame(np.swapaxes(F, 1, 2))), where)
        twisted = (
            -np.einsum("xab,ay,bz->xyz", F, phi, phi)
            + np.einsum("y,xz->xyz", eta, np.einsum("xaz,a->xz", F, xi))
            + np.einsum("z,xy->xyz", eta, np.einsum("xya,a->xy", F, xi))
        )
        res.add("F_phi_twist", rel_residual(sp.in_frame(F), sp.in_frame(twisted)), where)
        nabla_eta = sp.nabla_eta
        g_nabla_xi = np.einsum("ai,ij->aj", sp.nabla_xi, sp.g)
        minus_F_phi_xi = -np.einsum("xab,ay,b->xy", F, phi, xi)
        res.add("nabla_eta_vs_nabla_xi", rel_residual(sp.in_frame(nabla_eta), sp.in_frame(g_nabla_xi)), where)
        res.add("nabla_eta_vs_F", rel_residual(sp.in_frame(nabla_eta), sp.in_frame(minus_F_phi_xi)), where)
        theta, theta_star, omega = sp.lee_forms
        phi2 = phi @ phi
        res.add("theta_star_phi", rel_residual(theta_star @ phi, -(theta @ phi2)), where)
        res.add("omega_xi", abs(float(omega @ xi)), where)
    return res.report("F_properties", len(pts), seed)


def _characterizations(sp: StructurePoint) -> dict[str, float]:
    E = sp.adapted_frame
    F = sp.in_frame(sp.F)
    d = sp.dim
    H = slice(1, d)
    out = {
        "sasaki_F_XYZ": float(np.max(np.abs(F[H, H, H]))),
        "sasaki_F_xiYZ": float(np.max(np.abs(F[0, H, H]))),
        "sasaki_omega": float(np.max(np.abs(F[0, 0, H]))),
        "sasaki0": float(np.max(np.abs(F[H, H, 0] + np.eye(d - 1)))),
    }
    out["defsl"] = float(np.max(np.abs(F - sp.in_frame(sp.defsl_rhs()))))
    N = sp.in_frame(sp.nijenhuis_F)
    Nh = sp.in_frame(sp.assoc_nijenhuis_F)
    expected_Nh = -4.0 * np.einsum("xy,z->xyz", sp.in_frame(sp.gphi), E.T @ sp.eta)
    out["sasnn_N"] = float(np.max(np.abs(N)))
    out["sasnn_Nhat"] = float(np.max(np.abs(Nh - expected_Nh)))
    return out


def _corollaries(sp: StructurePoint) -> dict[str, float]:
    n = sp.n
    theta, theta_star, omega = sp.lee_forms
    E = sp.adapted_frame
    lie_xi_g = sp.nabla_eta + sp.nabla_eta.T
    return {
        "d_eta": float(np.max(np.abs(sp.in_frame(sp.d_eta)))),
        "nabla_xi_xi": float(np.sqrt(sp.nabla_xi_xi @ sp.g @ sp.nabla_xi_xi)),
        "theta_plus_2n_eta": float(np.max(np.abs(E.T @ (theta + 2 * n * sp.eta)))),
        "theta_star": float(np.max(np.abs(E.T @ theta_star))),
        "omega": float(np.max(np.abs(E.T @ omega))),
        "paracontact": float(np.max(np.abs(sp.in_frame(lie_xi_g - 2.0 * sp.gphi)))),
    }


GROUPS = {
    "a_sasaki": ("sasaki_F_XYZ", "sasaki_F_xiYZ", "sasaki_omega", "sasaki0"),
    "b_defsl": ("defsl",),
    "c_sasnn": ("sasnn_N", "sasnn_Nhat"),
}


def check_para_sasaki_like(s: ApcpcStructure, points=32, seed: int = 0, tol: float = DEFAULT_TOL) -> CheckReport:
    """Evaluate the three equivalent characterizations and require agreement.

    Raises :class:`InternalConsistencyError` when one characterization passes
    while another fails; that can only be an engine defect.
    """
    pts = _points(s, points, seed)
    res = Residuals(tol)
    cor = Residuals(tol)
    for p in pts:
        sp = s.at(p)
        where = p.tolist()
        for name, value in _characterizations(sp).items():
            res.add(name, value, where)
        for name, value in _corollaries(sp).items():
            cor.add(name, value, where)
    group_verdicts = {}
    detail = []
    for group, names in GROUPS.items():
        value = res.max(names)
        group_verdicts[group] = verdict(value, tol)
        detail.append({"name": group, "max_residual": value, "verdict": group_verdicts[group]})
    seen = set(group_verdicts.values())
    if "pass" in seen and "fail" in seen:
        raise InternalConsistencyError(f"characterizations disagree: {group_verdicts}")
    components = res.detail()
    corollaries = [dict(item, name="corollary_" + item["name"]) for item in cor.detail()]
    max_res = res.max()
    if group_verdicts and all(v == "pass" for v in group_verdicts.values()):
        max_res = max(max_res, cor.max())
    return CheckReport("para_sasaki_like", len(pts), max_res, tol, seed, detail + components + corollaries)


# ----------------------------------------------------------------------------
# Riemannian cone
# ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Cone:
    base: ApcpcStructure
    model: ChartModel
    P: Any  # jet-evaluable (1,1) field on the cone chart


def build_cone(s: ApcpcStructure, r_range=(0.5, 2.0)) -> Cone:
    """Cone ``M x R+`` with metric ``r^2 g + (1 - r^2) eta⊗eta + dr^2``; coordinates ``(x, r)``."""
    if not isinstance(s.model, ChartModel):
        raise BackendError("the cone needs a chart backend for the base; use the chart twin")
    if r_range[0] < 0.3:
        raise ValueError("cone radii must stay at or above 0.3")
    d = s.dim
    base_metric = s.model.metric_field
    phi_f, xi_f, eta_f = (_as_field(f) for f in (s.phi, s.xi, s.eta))

    def metric(X):
        x, r = X[:d], X[d]
        g = np.asarray(base_metric(x), dtype=object)
        eta = np.asarray(eta_f(x), dtype=object)
        out = np.empty((d + 1, d + 1), dtype=object)
        out[:d, :d] = g * (r * r) + np.multiply.outer(eta, eta) * (1 - r * r)
        out[:d, d] = 0.0
        out[d, :d] = 0.0
        out[d, d] = 1.0
        return out

    def P(X):
        x, r = X[:d], X[d]
        out = np.empty((d + 1, d + 1), dtype=object)
        out[:d, :d] = np.asarray(phi_f(x), dtype=object)
        out[:d, d] = np.asarray(xi_f(x), dtype=object) / r
        out[d, :d] = np.asarray(eta_f(x), dtype=object) * r
        out[d, d] = 0.0
        return out

    domain = tuple(s.sample_domain) + (tuple(r_range),)
    model = ChartModel(d + 1, metric, domain, name=f"cone({s.model.name})")
    return Cone(s, model, P)


def _as_field(f):
    if callable(f):
        return f
    arr = np.asarray(f, dtype=float)
    return lambda x: arr


class ConePoint:
    """Cone data at ``(p, r)`` together with the base data at ``p``."""

    def __init__(self, cone: Cone, p, r: float):
        self.cone = cone
        self.r = float(r)
        self.base = cone.base.at(p)
        X = np.append(np.asarray(p, dtype=float), self.r)
        self.loc = cone.model.local(X)
        P, dP = field_jet(cone.model, cone.P, X)
        self.P = P
        self.nabla_P = self.loc.nabla(P, dP, ("upper", "lower"))

    @cached_property
    def C(self) -> np.ndarray:
        """``ǧ((∇̌_a P̌) e_b, e_c)`` in cone coordinates."""
        return np.einsum("aib,ic->abc", self.nabla_P, self.loc.g)

    def lift(self, v: np.ndarray) -> np.ndarray:
        return np.append(v, 0.0)

    @cached_property
    def d_r(self) -> np.ndarray:
        e = np.zeros(self.loc.dim)
        e[-1] = 1.0
        return e

    @cached_property
    def adapted_frame(self) -> tuple[np.ndarray, list[str]]:
        """ǧ-orthonormal frame ``[X_i / r, xi, d/dr]`` with labels."""
        H = self.base.horizontal_frame
        cols = [self.lift(self.base.xi)] + [self.lift(H[:, i]) / self.r for i in range(H.shape[1])] + [self.d_r]
        labels = ["xi"] + [f"X{i + 1}" for i in range(H.shape[1])] + ["d_r"]
        return np.column_stack(cols), labels

    def evaluate(self, x, y, z) -> float:
        return float(np.einsum("abc,a,b,c->", self.C, x, y, z))

    def formulas(self, X, Y, Z) -> dict[str, tuple[float, float]]:
        """Component formulas of ∇̌P̌ next to their direct evaluation.

        ``X, Y, Z`` are horizontal base vectors; returns ``name -> (direct, formula)``.
        The ``XYxi`` and ``XYdr`` entries follow from the Koszul table of the
        cone with ``P̌ xi = r d/dr``; the ``*_r2`` / ``*_r1`` variants carry the
        other r-weighting (``r^2 g(X, Y)`` and ``r g(∇_X xi, Y)``), which only
        agrees with direct evaluation at ``r = 1`` or when those terms vanish.
        """
        b, r = self.base, self.r
        g, phi, xi = b.g, b.phi, b.xi
        F, deta = b.F, b.d_eta
        gxy = X @ g @ Y
        gx_phiy = X @ g @ phi @ Y
        nabla_xi_XY = X @ b.nabla_xi @ g @ Y
        lX, lY, lZ, lxi = self.lift(X), self.lift(Y), self.lift(Z), self.lift(xi)
        F_XYZ = np.einsum("abc,a,b,c->", F, X, Y, Z)
        F_XYxi = np.einsum("abc,a,b,c->", F, X, Y, xi)
        F_xiYZ = np.einsum("abc,a,b,c->", F, xi, Y, Z)
        deta_X_phiY = X @ deta @ (phi @ Y)
        deta_XY = X @ deta @ Y
        direct_xi = self.evaluate(lX, lY, lxi)
        direct_dr = self.evaluate(lX, lY, self.d_r)
        h = 0.5 * (r * r - 1)
        return {
            "XYZ": (self.evaluate(lX, lY, lZ), r * r * F_XYZ),
            "xiYZ": (
                self.evaluate(lxi, lY, lZ),
                r * r * F_xiYZ - h * ((phi @ Y) @ deta @ Z - Y @ deta @ (phi @ Z)),
            ),
            "XYxi": (direct_xi, r * r * F_XYxi + gxy + h * deta_X_phiY),
            "XYdr": (direct_dr, r**3 * nabla_xi_XY - r * gx_phiy - r * h * deta_XY),
            "XYxi_r2": (direct_xi, r * r * (F_XYxi + gxy) + h * deta_X_phiY),
            "XYdr_r1": (direct_dr, r * (nabla_xi_XY - gx_phiy) - h / r * deta_XY),
        }


def check_cone_parallel(
    s: ApcpcStructure,
    points=8,
    radii=(0.7, 1.0, 1.5),
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    cone: Cone | None = None,
) -> CheckReport:
    """Size of ∇̌P̌ on the cone; reports the largest offending component."""
    cone = build_cone(s) if cone is None else cone
    pts = _points(s, points, seed)
    worst = (0.0, None)
    res = Residuals(tol)
    for p in pts:
        for r in radii:
            cp = ConePoint(cone, p, r)
            E, labels = cp.adapted_frame
            C = np.einsum("abc,ai,bj,ck->ijk", cp.C, E, E, E)
            idx = np.unravel_index(int(np.argmax(np.abs(C))), C.shape)
            value = float(abs(C[idx]))
            res.add("nabla_P_check", value, p.tolist() + [float(r)])
            if value > worst[0]:
                worst = (value, {
                    "component": [labels[i] for i in idx],
                    "value": float(C[idx]),
                    "point": p.tolist(),
                    "r": float(r),
                })
    extra = [{"name": "largest_component", **worst[1]}] if worst[1] else []
    return res.report("cone_parallel", len(pts) * len(radii), seed, extra)


def structure_from_json(doc, name: str | None = None) -> ApcpcStructure:
    """Lie-frame structure from the JSON ingestion format."""
    from .geometry import lie_model_from_json

    model, extras = lie_model_from_json(doc)
    missing = {"phi", "xi", "eta"} - set(extras)
    if missing:
        raise KeyError(f"missing structure fields: {sorted(missing)}")
    return ApcpcStructure(model, extras["phi"], extras["xi"], extras["eta"], name=name or model.name)


def structure_to_json(s: ApcpcStructure) -> str:
    from .geometry import lie_model_to_json

    if not isinstance(s.model, LieFrameModel):
        raise BackendError("only Lie-frame structures have a JSON form")
    return lie_model_to_json(s.model, phi=s.phi, xi=s.xi, eta=s.eta)


def perturbed(s: ApcpcStructure, i: int, j: int, eps: float) -> ApcpcStructure:
    """Copy of a structure with one phi component shifted (defect injection)."""
    if callable(s.phi):
        base_phi = s.phi

        def phi(x):
            out = np.array(base_phi(x), dtype=object)
            out[i, j] = out[i, j] + eps
            return out
    else:
        phi = np.array(s.phi, dtype=float)
        phi[i, j] += eps
    return s.with_fields(phi=phi, name=s.name + "+defect")


__all__ = [
    "ApcpcStructure",
    "StructurePoint",
    "Cone",
    "ConePoint",
    "validate_structure",
    "associated_metric",
    "fundamental_F",
    "lee_forms",
    "nijenhuis",
    "assoc_nijenhuis",
    "scalar_star",
    "check_nijenhuis_routes",
    "verify_nabf",
    "check_F_properties",
    "check_para_sasaki_like",
    "build_cone",
    "check_cone_parallel",
    "structure_from_json",
    "structure_to_json",
    "perturbed",
]
