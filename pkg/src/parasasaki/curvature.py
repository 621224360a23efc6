"""Curvature identities of para-Sasaki-like structures and Ricci fits.

All identities are evaluated in the adapted orthonormal frame of
:class:`~parasasaki.apcpc.StructurePoint`, on random unit quadruples, with
residuals relative to the largest term.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .apcpc import ApcpcStructure, StructurePoint, check_para_sasaki_like
from .constructions import PhpcrModel, slice_structure
from .errors import BackendError, FitDegenerateError, PreconditionError
from .reports import (
    DEFAULT_TOL,
    CheckReport,
    Residuals,
    point_rngs,
    rel_residual,
    resolve_points,
    unit_vectors,
    vector_quadruples,
)
from .tensor_core import kn_product


class FrameData:
    """Structure tensors of a point expressed in its adapted orthonormal frame."""

    def __init__(self, sp: StructurePoint):
        self.sp = sp
        E = sp.adapted_frame
        self.E = E
        self.g = sp.in_frame(sp.g)
        self.eta = E.T @ sp.eta
        self.xi = np.linalg.solve(E, sp.xi)
        self.phi = np.linalg.solve(E, sp.phi @ E)
        self.gphi = self.g @ self.phi
        self.n = sp.n

    @cached_property
    def R(self) -> np.ndarray:
        return self.sp.in_frame(self.sp.loc.riemann)

    @cached_property
    def ric(self) -> np.ndarray:
        return np.einsum("ixyi->xy", self.R)


def _require_psl(s: ApcpcStructure, seed: int, tol: float) -> None:
    report = check_para_sasaki_like(s, points=4, seed=seed, tol=tol)
    if not report.passed:
        raise PreconditionError(f"{s.name} is not para-Sasaki-like ({report})")


def _quads(rng, k, dim):
    return vector_quadruples(rng, k, dim)


def _eval4(t, q):
    return float(np.einsum("abcd,a,b,c,d->", t, *q))


def _quad_residual(lhs: np.ndarray, rhs: np.ndarray, quads) -> float:
    worst = 0.0
    for q in quads:
        worst = max(worst, rel_residual(_eval4(lhs, q), _eval4(rhs, q)))
    return worst


def _per_point(total: int, points: int) -> int:
    return max(1, -(-total // points))


def curf_sides(fd: FrameData) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the phi-twisted curvature identity as (0,4) arrays."""
    R, g, eta, gphi = fd.R, fd.g, fd.eta, fd.gphi
    lhs = np.einsum("xyaw,az->xyzw", R, fd.phi) - np.einsum("xyza,aw->xyzw", R, fd.phi)
    k = g - 2.0 * np.outer(eta, eta)
    rhs = (
        -np.einsum("yz,xw->xyzw", k, gphi)
        - np.einsum("yw,xz->xyzw", k, gphi)
        + np.einsum("xz,yw->xyzw", k, gphi)
        + np.einsum("xw,yz->xyzw", k, gphi)
    )
    return lhs, rhs


def check_curf(
    s: ApcpcStructure, points=8, quadruples: int = 64, seed: int = 0, tol: float = DEFAULT_TOL, require: bool = True
) -> CheckReport:
    if require:
        _require_psl(s, seed, tol)
    pts = resolve_points(s.sample_domain, points, seed)
    per = _per_point(quadruples, len(pts))
    res = Residuals(tol)
    for p, rng in zip(pts, point_rngs(seed, len(pts))):
        fd = FrameData(s.at(p))
        lhs, rhs = curf_sides(fd)
        res.add("curf", _quad_residual(lhs, rhs, _quads(rng, per, s.dim)), p.tolist())
    return res.report("curf", len(pts), seed, [{"name": "quadruples", "count": per * len(pts)}])


def xi_identities(fd: FrameData) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Left and right sides of the identities involving xi."""
    R, g, eta, xi, n = fd.R, fd.g, fd.eta, fd.xi, fd.n
    d = g.shape[0]
    proj = np.eye(d) - np.outer(xi, eta)
    out = {}
    # R(x, y, xi, w) = -eta(y) g(x, w) + eta(x) g(y, w)
    out["cur"] = (
        np.einsum("xyaw,a->xyw", R, xi),
        -np.einsum("y,xw->xyw", eta, g) + np.einsum("x,yw->xyw", eta, g),
    )
    # R(xi, X) xi = X for horizontal X, lowered with g
    out["R_xi_X_xi"] = (
        np.einsum("axbw,a,b,xc->cw", R, xi, xi, proj),
        np.einsum("xc,xw->cw", proj, g),
    )
    out["ric_xi"] = (fd.ric @ xi, -2.0 * n * eta)
    rxi = np.einsum("xyza,a->xyz", R, xi)
    out["Rxi_swap"] = (rxi, np.einsum("azyx,a->xyz", R, xi))
    out["Rxi_closed"] = (rxi, -np.einsum("x,yz->xyz", eta, g) + np.einsum("y,xz->xyz", eta, g))
    return out


def check_xi_curvature(
    s: ApcpcStructure, points=8, seed: int = 0, tol: float = DEFAULT_TOL, require: bool = True
) -> CheckReport:
    if require:
        _require_psl(s, seed, tol)
    pts = resolve_points(s.sample_domain, points, seed)
    res = Residuals(tol)
    ric_xixi = []
    for p, rng in zip(pts, point_rngs(seed, len(pts))):
        fd = FrameData(s.at(p))
        vecs = unit_vectors(rng, 3, s.dim)
        for name, (lhs, rhs) in xi_identities(fd).items():
            # contract every slot with sampled unit vectors
            a, b = lhs, rhs
            for v in vecs[: lhs.ndim]:
                a, b = v @ a, v @ b
            res.add(name, max(rel_residual(a, b), rel_residual(lhs, rhs)), p.tolist())
        ric_xixi.append(float(fd.xi @ fd.ric @ fd.xi))
    extra = [{"name": "ric_xi_xi", "values": ric_xixi, "expected": -2.0 * s.n}]
    return res.report("xi_curvature", len(pts), seed, extra)


# -- horizontal (Gauss) decomposition -----------------------------------------------

@dataclass
class SliceData:
    R: np.ndarray  # padded (0,4) curvature of the slice in structure coordinates
    ric: np.ndarray
    scal: float
    scal_star: float


def slice_data(s: ApcpcStructure, p) -> SliceData:
    """Curvature of the horizontal slice through ``p``, padded with a zero t-slot."""
    p = np.asarray(p, dtype=float)
    sl = slice_structure(s, float(p[0]))
    loc = sl.model.local(p[1:])
    m = sl.dim
    R = np.zeros((m + 1,) * 4)
    R[1:, 1:, 1:, 1:] = loc.riemann
    ric = np.zeros((m + 1, m + 1))
    ric[1:, 1:] = loc.ricci
    E = loc.frame
    P = np.asarray(sl.P_field()(p[1:]), dtype=float)
    scal_star = float(np.einsum("xy,xa,ya->", loc.ricci, E, P @ E))
    return SliceData(R, ric, loc.scalar, scal_star)


def decomposition_rhs(sp: StructurePoint, Rh: np.ndarray) -> np.ndarray:
    """Full curvature predicted from the slice curvature (structure coordinates)."""
    g, eta, gphi = sp.g, sp.eta, sp.gphi
    proj = np.eye(sp.dim) - np.outer(sp.xi, eta)
    RhH = np.einsum("abcd,ax,by,cz,dw->xyzw", Rh, proj, proj, proj, proj)
    return (
        RhH
        - np.einsum("yz,xw->xyzw", gphi, gphi)
        + np.einsum("xz,yw->xyzw", gphi, gphi)
        - np.einsum("yz,x,w->xyzw", g, eta, eta)
        + np.einsum("xz,y,w->xyzw", g, eta, eta)
        - np.einsum("xw,y,z->xyzw", g, eta, eta)
        + np.einsum("yw,x,z->xyzw", g, eta, eta)
    )


def check_horizontal_decomposition(
    s: ApcpcStructure, points=8, quadruples: int = 64, seed: int = 0, tol: float = DEFAULT_TOL
) -> CheckReport:
    if s.base is None:
        raise BackendError("horizontal decomposition needs a hyperbolic extension")
    _require_psl(s, seed, tol)
    pts = resolve_points(s.sample_domain, points, seed)
    per = _per_point(quadruples, len(pts))
    res = Residuals(tol)
    values = []
    for p, rng in zip(pts, point_rngs(seed, len(pts))):
        sp = s.at(p)
        sd = slice_data(s, p)
        where = p.tolist()
        E = sp.adapted_frame
        H = E[:, 1:]
        R = sp.loc.riemann
        # Gauss equation on horizontal quadruples
        hq = _quads(rng, per, s.dim - 1)
        gauss_l = sp.in_frame(R, H)
        gauss_r = sp.in_frame(decomposition_rhs(sp, sd.R), H)
        res.add("gauss", _quad_residual(gauss_l, gauss_r, hq), where)
        full_l, full_r = sp.in_frame(R), sp.in_frame(decomposition_rhs(sp, sd.R))
        res.add("full_decomposition", _quad_residual(full_l, full_r, _quads(rng, per, s.dim)), where)
        ric_pred = sd.ric - 2.0 * s.n * np.outer(sp.eta, sp.eta)
        res.add("ricci", rel_residual(sp.in_frame(sp.loc.ricci), sp.in_frame(ric_pred)), where)
        scal = sp.loc.scalar
        scal_star = float(np.einsum("xy,xa,ya->", sp.loc.ricci, E, sp.phi @ E))
        res.add("scal", rel_residual(scal - sd.scal, -2.0 * s.n), where)
        res.add("scal_star", rel_residual(scal_star, sd.scal_star), where)
        values.append({"t": float(p[0]), "scal": scal, "scal_h": sd.scal, "scal_star": scal_star, "scal_h_star": sd.scal_star})
    return res.report("horizontal_decomposition", len(pts), seed, [{"name": "values", "samples": values}])


def check_horizontal_family(s: ApcpcStructure, points=8, seed: int = 0, tol: float = 1e-7) -> CheckReport:
    """Slice metric and slice curvature as cosh/sinh combinations of the base ones."""
    if s.base is None:
        raise BackendError("not a hyperbolic extension")
    base: PhpcrModel = s.base
    pts = resolve_points(s.sample_domain, points, seed)
    res = Residuals(tol)
    for p in pts:
        t, x = float(p[0]), p[1:]
        c, sh = np.cosh(2 * t), np.sinh(2 * t)
        hN = base.model.local(x)
        P = np.asarray(base.P_field()(x), dtype=float)
        sp = s.at(p)
        where = p.tolist()
        res.add("einm", rel_residual(sp.g[1:, 1:], c * hN.g + sh * hN.g @ P), where)
        Rt = slice_structure(s, t).model.local(x).riemann
        pred = c * hN.riemann + sh * np.einsum("xyzm,mw->xyzw", hN.riemann, P)
        res.add("ein2", rel_residual(Rt, pred), where)
        res.add("connection_t_independent", rel_residual(slice_structure(s, t).model.local(x).gamma, hN.gamma), where)
    return res.report("horizontal_family", len(pts), seed)


# -- fits ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EtaEinsteinFit:
    alpha: float
    beta: float
    gamma: float
    residual: float

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "residual": self.residual}


def _fit(target: np.ndarray, basis: list[np.ndarray]) -> tuple[np.ndarray, float]:
    A = np.stack([b.ravel() for b in basis], axis=1)
    gram = A.T @ A
    if np.linalg.cond(gram) > 1e12:
        raise FitDegenerateError("fit basis is linearly dependent at this point")
    coef = np.linalg.solve(gram, A.T @ target.ravel())
    return coef, float(np.linalg.norm(target.ravel() - A @ coef))


def einstein_fit(s: ApcpcStructure, p=None) -> tuple[float, float]:
    """Best ``lambda`` with ``Ric ≈ lambda g`` and the Frobenius residual."""
    fd = FrameData(s.at(p))
    (lam,), res = _fit(fd.ric, [fd.g])
    return float(lam), res


def eta_einstein_fit(s: ApcpcStructure, p=None) -> EtaEinsteinFit:
    """Least squares ``Ric ≈ alpha g + beta g(., phi .) + gamma eta⊗eta``."""
    fd = FrameData(s.at(p))
    coef, res = _fit(fd.ric, [fd.g, fd.gphi, np.outer(fd.eta, fd.eta)])
    return EtaEinsteinFit(float(coef[0]), float(coef[1]), float(coef[2]), res)


def eta_einstein_curve(s: ApcpcStructure, ts, x=None) -> list[tuple[float, EtaEinsteinFit]]:
    """Fits along ``t`` at a fixed base point (default: centre of the base domain)."""
    if x is None:
        x = [0.5 * (a + b) for a, b in s.sample_domain[1:]]
    return [(float(t), eta_einstein_fit(s, [t, *x])) for t in ts]


def example4_ricci_coefficients(n: int, a: float, b: float, t: float) -> tuple[float, float, float]:
    """Closed-form ``(alpha, beta, gamma)`` for the extension of the invariant sphere."""
    c, sh = np.cosh(2 * t), np.sinh(2 * t)
    k = 2.0 * (n - 1) / (a * a - b * b)
    alpha = k * (a * c + b * sh)
    beta = -k * (b * c + a * sh)
    return alpha, beta, -alpha - 2.0 * n


# -- invariant sphere -----------------------------------------------------------------

def invariant_sphere_curvature(h: np.ndarray, P: np.ndarray, a: float, b: float) -> np.ndarray:
    ht = h @ P
    pi1 = 0.5 * kn_product(h, h)
    pi2 = 0.5 * kn_product(ht, ht)
    pi3 = kn_product(h, ht)
    return (a * (pi1 + pi2) - b * pi3) / (a * a - b * b)


def check_invariant_sphere(base: PhpcrModel, n: int, a: float, b: float, points=16, seed: int = 0, tol: float = 1e-7) -> CheckReport:
    pts = resolve_points(base.model.sample_domain, points, seed)
    res = Residuals(tol)
    scal, scal_star = [], []
    for x in pts:
        loc = base.model.local(x)
        P = np.asarray(base.P_field()(x), dtype=float)
        where = x.tolist()
        res.add("curvature", rel_residual(loc.riemann, invariant_sphere_curvature(loc.g, P, a, b)), where)
        ric = 2.0 * (n - 1) / (a * a - b * b) * (a * loc.g - b * loc.g @ P)
        res.add("ricci", rel_residual(loc.ricci, ric), where)
        E = loc.frame
        s_star = float(np.einsum("xy,xa,ya->", loc.ricci, E, P @ E))
        res.add("scal", rel_residual(loc.scalar, 4.0 * n * (n - 1) * a / (a * a - b * b)), where)
        res.add("scal_star", rel_residual(s_star, -4.0 * n * (n - 1) * b / (a * a - b * b)), where)
        scal.append(loc.scalar)
        scal_star.append(s_star)
    extra = [{"name": "values", "scal": scal, "scal_star": scal_star}]
    return res.report("invariant_sphere", len(pts), seed, extra)


def phpcr_einstein_residual(base: PhpcrModel, x, lam: float) -> float:
    """``max |Ric^h - lam h|`` relative, at one point of a base."""
    loc = base.model.local(np.asarray(x, dtype=float))
    return rel_residual(loc.ricci, lam * loc.g)


def scalar_h(base: PhpcrModel, x) -> float:
    return base.model.local(np.asarray(x, dtype=float)).scalar


def check_slice_einstein(base: PhpcrModel, lam: float, points=8, seed: int = 0, tol: float = 1e-7) -> CheckReport:
    """``Ric^h = lam h`` on a paraholomorphic base."""
    pts = resolve_points(base.model.sample_domain, points, seed)
    res = Residuals(tol)
    for x in pts:
        res.add("slice_einstein", phpcr_einstein_residual(base, x, lam), x.tolist())
    return res.report("slice_einstein", len(pts), seed, [{"name": "lambda", "value": float(lam)}])


def check_extension_einstein(s: ApcpcStructure, ts=(-1.0, -0.5, 0.0, 0.5, 1.0), points=4, seed: int = 0, tol: float = 1e-7) -> CheckReport:
    """Einstein fit ``lambda = -2n`` and ``Scal = -2n(2n+1)`` on slices ``t = const``."""
    if s.base is None:
        raise BackendError("not a hyperbolic extension")
    n = s.n
    base_pts = resolve_points(s.base.model.sample_domain, points, seed)
    res = Residuals(tol)
    samples = []
    for t in ts:
        for x in base_pts:
            p = np.concatenate([[float(t)], x])
            lam, fit_res = einstein_fit(s, p)
            scal = s.at(p).loc.scalar
            where = p.tolist()
            res.add("lambda", abs(lam + 2.0 * n), where)
            res.add("einstein_fit_residual", fit_res / max(1.0, abs(lam)), where)
            res.add("scal", abs(scal + 2.0 * n * (2 * n + 1)) / max(1.0, abs(scal)), where)
        samples.append({"t": float(t), "lambda": lam, "scal": scal, "fit_residual": fit_res})
    return res.report("extension_einstein", len(ts) * len(base_pts), seed, [{"name": "samples", "values": samples}])


__all__ = [
    "check_slice_einstein",
    "check_extension_einstein",
    "FrameData",
    "check_curf",
    "check_xi_curvature",
    "check_horizontal_decomposition",
    "check_horizontal_family",
    "slice_data",
    "decomposition_rhs",
    "EtaEinsteinFit",
    "einstein_fit",
    "eta_einstein_fit",
    "eta_einstein_curve",
    "example4_ricci_coefficients",
    "invariant_sphere_curvature",
    "check_invariant_sphere",
    "phpcr_einstein_residual",
    "scalar_h",
]
