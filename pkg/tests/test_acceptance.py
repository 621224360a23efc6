"""Acceptance criteria, one test each, at the stated tolerances.

Every criterion records a ``CRITERION k: PASS|FAIL ...`` line that pytest
prints in its terminal summary; ``python3 tests/test_acceptance.py`` prints
the same lines directly.  Criteria 2, 5 and 9 do not hold as stated for
reasons analysed in the project notes, and their tests fail accordingly.
"""

import math
import time

import numpy as np
import pytest

import conftest
from parasasaki import jets
from parasasaki.apcpc import ConePoint, build_cone, check_cone_parallel, check_para_sasaki_like, scalar_star
from parasasaki.constructions import (
    check_twin_alignment,
    example1,
    example2,
    example3,
    example4,
    hyperbolic_extension,
    parallel_product,
)
from parasasaki.curvature import (
    FrameData,
    check_curf,
    check_invariant_sphere,
    check_slice_einstein,
    check_xi_curvature,
    einstein_fit,
    eta_einstein_fit,
    slice_data,
)
from parasasaki.geometry import ChartModel
from parasasaki.tensor_core import (
    TensorValue,
    curvature_symmetry_residuals,
    inverse_metric,
    kn_product,
    lower_index,
    raise_index,
)
from parasasaki.transformations import (
    ConformalData,
    apply_conformal,
    check_homothetic_laws,
    check_sssl,
    homothety,
    paraholomorphic_pair,
    verify_lemma_ff,
)


def record(k, ok, msg):
    line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'} {msg}"
    conftest.CRITERIA[k] = line
    print(line)
    return ok, line


def worst(items):
    """``(value, label)`` of the largest value in a dict."""
    label = max(items, key=lambda key: items[key])
    return items[label], label


# -- 1 -----------------------------------------------------------------------------------

def corpus():
    out = {}
    for n in (1, 2, 3):
        ex = example1(n)
        out[f"example1({n})/lie"] = ex.lie
        out[f"example1({n})/chart"] = ex.chart
    for lam, mu in ((0.0, 0.0), (1.0, 0.0), (2.0, 3.0)):
        ex = example2(lam, mu)
        out[f"example2({lam:g},{mu:g})/lie"] = ex.lie
        if ex.chart is not None:
            out[f"example2({lam:g},{mu:g})/chart"] = ex.chart
    return out


def criterion_1():
    t0 = time.perf_counter()
    residuals = {}
    for name, s in corpus().items():
        rep = check_para_sasaki_like(s, points=32, seed=0)
        groups = {d["name"]: d["max_residual"] for d in rep.detail if d["name"] in ("a_sasaki", "b_defsl", "c_sasnn")}
        for g, v in groups.items():
            residuals[f"{name}:{g}"] = v
    elapsed = time.perf_counter() - t0
    value, where = worst(residuals)
    ok = value < 1e-8 and elapsed < 10.0 and len(residuals) == 3 * len(corpus())
    return record(1, ok, f"para-Sasaki-like corpus: max residual {value:.2e} ({where}), {elapsed:.2f} s")


# -- 2 -----------------------------------------------------------------------------------

def criterion_2():
    s = example1(2).chart
    rep = check_cone_parallel(s, points=4, radii=(0.7, 1.0, 1.5), seed=0)
    largest = next(d for d in rep.detail if d["name"] == "largest_component")
    # counterexample: parallel base, component g((∇_X P)Y, xi) against r^2 g(X, Y)
    cex = 0.0
    pp = parallel_product(2)
    rng = np.random.default_rng(0)
    for r in (0.7, 1.0, 1.5):
        cp = ConePoint(build_cone(pp), [0.1, 0.2, 0.3, -0.1, 0.0], r)
        H = np.asarray(cp.base.horizontal_frame)
        X, Y = H @ rng.standard_normal(4), H @ rng.standard_normal(4)
        direct, _ = cp.formulas(X, Y, Y)["XYxi"]
        cex = max(cex, abs(direct - r * r * (X @ Y)))
    ok = rep.max_residual < 1e-8 and cex < 1e-8
    return record(
        2,
        ok,
        f"cone: |∇P| max {rep.max_residual:.3e} (component {largest['component']} at r={largest['r']:g}); "
        f"counterexample vs r^2 g(X,Y) off by {cex:.3e}",
    )


# -- 3 -----------------------------------------------------------------------------------

def psl_fixtures():
    out = dict(corpus())
    out["ext(example3(2))"] = hyperbolic_extension(example3(2))
    out["ext(example4(2,2,1))"] = hyperbolic_extension(example4(2, 2.0, 1.0))
    return out


XI_NAMES = ("cur", "R_xi_X_xi", "ric_xi", "Rxi_swap", "Rxi_closed")


def criterion_3():
    residuals = {}
    ric_err = 0.0
    for name, s in psl_fixtures().items():
        rep = check_curf(s, points=8, quadruples=64, seed=1, require=False)
        residuals[f"{name}:curf"] = rep.max_residual
        rep = check_xi_curvature(s, points=8, seed=1, require=False)
        for d in rep.detail:
            if d["name"] in XI_NAMES:
                residuals[f"{name}:{d['name']}"] = d["max_residual"]
        if s.n == 2:
            vals = next(d for d in rep.detail if d["name"] == "ric_xi_xi")["values"]
            ric_err = max(ric_err, max(abs(v + 4.0) for v in vals))
    value, where = worst(residuals)
    ok = value < 1e-8 and ric_err <= 1e-9
    return record(3, ok, f"curvature identities: max residual {value:.2e} ({where}); |Ric(xi,xi)+4| <= {ric_err:.1e}")


# -- 4 -----------------------------------------------------------------------------------

def criterion_4():
    s = hyperbolic_extension(example4(2, 2.0, 1.0))
    x = [1.0, 1.3, 0.8, 2.1]
    err_scal = err_star = 0.0
    for t in (-1.0, 0.0, 1.0):
        p = [t, *x]
        sd = slice_data(s, p)
        err_scal = max(err_scal, abs(s.at(p).loc.scalar - sd.scal + 4.0))
        err_star = max(err_star, abs(scalar_star(s, p) - sd.scal_star))
    ok = err_scal < 1e-7 and err_star < 1e-7
    return record(4, ok, f"decomposition: |Scal-Scal^h+4| {err_scal:.2e}, |Scal*-Scal^h*| {err_star:.2e}")


# -- 5 -----------------------------------------------------------------------------------

def criterion_5():
    s = hyperbolic_extension(example3(2))
    x = [0.1, -0.2, 0.15, 0.05]
    bad = []
    lam_err = scal_err = 0.0
    for t in (-1.0, -0.5, 0.0, 0.5, 1.0):
        lam, _ = einstein_fit(s, [t, *x])
        scal = s.at([t, *x]).loc.scalar
        lam_err, scal_err = max(lam_err, abs(lam + 4)), max(scal_err, abs(scal + 20))
        if abs(lam + 4) > 1e-7 or abs(scal + 20) > 1e-6:
            bad.append(f"t={t:g}: lambda={lam:.4f}, Scal={scal:.4f}")
    slice_rep = check_slice_einstein(example3(2), -4.0, points=8, tol=1e-7)
    ok = not bad and slice_rep.passed
    msg = f"Einstein extension: slice |Ric^h+4h| {slice_rep.max_residual:.1e}; |lambda+4| <= {lam_err:.3g}, |Scal+20| <= {scal_err:.3g}"
    if bad:
        msg += "; off at " + "; ".join(bad)
    return record(5, ok, msg)


# -- 6 -----------------------------------------------------------------------------------

def criterion_6():
    n, a, b = 2, 2.0, 1.0
    base = example4(n, a, b)
    rep = check_invariant_sphere(base, n, a, b, points=16, tol=1e-7)
    res = {d["name"]: d["max_residual"] for d in rep.detail if "max_residual" in d}
    vals = next(d for d in rep.detail if d["name"] == "values")
    scal_err = max(abs(v - 16 / 3) for v in vals["scal"])
    star_err = max(abs(v + 8 / 3) for v in vals["scal_star"])
    fit = eta_einstein_fit(hyperbolic_extension(base), [0.0, 1.0, 1.3, 0.8, 2.1])
    fit_err = max(abs(fit.alpha - 4 / 3), abs(fit.beta + 2 / 3), abs(fit.gamma + 16 / 3))
    ok = res["curvature"] < 1e-7 and scal_err < 1e-7 and star_err < 1e-7 and fit_err < 1e-6
    return record(
        6,
        ok,
        f"Example 4: R^h residual {res['curvature']:.1e}, Scal' err {scal_err:.1e}, Scal'* err {star_err:.1e}, "
        f"fit ({fit.alpha:.6f}, {fit.beta:.6f}, {fit.gamma:.6f})",
    )


# -- 7 -----------------------------------------------------------------------------------

FF_FIXTURE = ConformalData(lambda X: 0.1 * X[1], lambda X: 0.2 * X[2], lambda X: 0.3 * X[0])
ZERO_FIELDS = ConformalData(lambda X: 0.0 * X[1], lambda X: 0.0 * X[2], lambda X: 0.0 * X[0])


def criterion_7():
    s = example1(2).chart
    rep = verify_lemma_ff(s, FF_FIXTURE, points=32, seed=0)
    ident = verify_lemma_ff(s, ZERO_FIELDS, points=8, seed=0)
    F_err = 0.0
    for p in np.random.default_rng(2).uniform(-0.5, 0.5, size=(4, 5)):
        F_err = max(F_err, float(np.abs(apply_conformal(s, ZERO_FIELDS).at(p).F - s.at(p).F).max()))
    ok = rep.max_residual < 1e-7 and ident.max_residual < 1e-12 and F_err < 1e-12
    return record(7, ok, f"(ff): residual {rep.max_residual:.2e}; identity {ident.max_residual:.1e}, |F'-F| {F_err:.1e}")


# -- 8 -----------------------------------------------------------------------------------

def criterion_8():
    s = example1(2).chart
    u, v = paraholomorphic_pair(lambda a: 0.3 * jets.sin(a[0]) + 0.2 * a[1], lambda b: 0.1 * b[0] * b[1], 2)
    holo = ConformalData(u, v, 0.0)
    pred_ok, _ = check_sssl(s, holo, points=16)
    direct_ok = check_para_sasaki_like(apply_conformal(s, holo), points=16).passed
    bad = ConformalData(lambda X: X[1], 0.0, 0.0)
    pred_bad, rep = check_sssl(s, bad, points=16)
    direct_bad = check_para_sasaki_like(apply_conformal(s, bad), points=16).verdict
    ok = pred_ok and direct_ok and (not pred_bad) and direct_bad == "fail"
    return record(
        8,
        ok,
        f"(sssl): paraholomorphic predicate={pred_ok}, direct={direct_ok}; violating predicate={pred_bad}, direct={direct_bad}",
    )


# -- 9 -----------------------------------------------------------------------------------

TRIPLES = ((0.3, 0.2, 0.1), (-0.2, -0.4, 0.5), (0.1, 0.15, -0.3))


def criterion_9():
    fixtures = {"example1(2)/lie": example1(2).lie, "example2(1,0)/chart": example2(1.0, 0.0).chart}
    res = {}
    for fname, s in fixtures.items():
        for uvw in TRIPLES:
            rep = check_homothetic_laws(s, homothety(*uvw), points=4)
            for d in rep.detail:
                if d["name"] in ("ri", "scalsas", "scalsas_star"):
                    key = f"{fname}{uvw}:{d['name']}"
                    res[key] = d["max_residual"]
    ri = max(v for k, v in res.items() if k.endswith(":ri"))
    scal = max(v for k, v in res.items() if k.endswith(":scalsas"))
    star, star_at = worst({k: v for k, v in res.items() if k.endswith(":scalsas_star")})
    w = 0.1
    scal_bar = apply_conformal(example1(2).lie, homothety(0.3, 0.2, w)).at().loc.scalar
    ex1_err = abs(scal_bar + 4 * math.exp(-2 * w))
    ok = ri < 1e-8 and scal < 1e-7 and star < 1e-7 and ex1_err < 1e-7
    return record(
        9,
        ok,
        f"homothetic laws: (ri) {ri:.1e}, Scal relation {scal:.1e}, Scal* relation {star:.3e} ({star_at}), "
        f"Example 1 Scal' err {ex1_err:.1e}",
    )


# -- 10 ----------------------------------------------------------------------------------

def _random_metric(rng):
    A = rng.uniform(-1, 1, (3, 3))
    B = rng.uniform(-1, 1, (3, 3))

    def g(X):
        out = np.empty((3, 3), dtype=object)
        for i in range(3):
            for j in range(i, 3):
                v = (2.0 if i == j else 0.0) + 0.2 * (A[i, j] + A[j, i]) * jets.sin(X[0] + X[j]) + 0.1 * (B[i, j] + B[j, i]) * X[1] * X[2]
                out[i, j] = out[j, i] = v
        return out

    return ChartModel(3, g, ((-0.5, 0.5),) * 3)


def criterion_10():
    t0 = time.perf_counter()
    rng = np.random.default_rng(10)
    res = {}
    # curvature symmetries of random metrics
    v = 0.0
    for _ in range(20):
        m = _random_metric(rng)
        R = m.local(rng.uniform(-0.5, 0.5, 3)).riemann
        v = max(v, max(curvature_symmetry_residuals(R).values()) / max(1.0, np.abs(R).max()))
    res["curvature_symmetry"] = v
    # Kulkarni-Nomizu symmetry
    v = 0.0
    for _ in range(50):
        a, b = rng.standard_normal((2, 4, 4))
        a, b = a + a.T, b + b.T
        K = kn_product(a, b)
        v = max(v, max(curvature_symmetry_residuals(K).values()) / max(1.0, np.abs(K).max()))
        v = max(v, float(np.abs(K - kn_product(b, a)).max()))
    res["kulkarni_nomizu"] = v
    # raise/lower round trip
    v = 0.0
    for _ in range(50):
        M = rng.standard_normal((4, 4))
        g = M @ M.T + np.eye(4)
        t = TensorValue(rng.standard_normal((4, 4, 4)), ("lower", "upper", "lower"))
        back = lower_index(raise_index(t, 2, inverse_metric(g)), 2, g)
        v = max(v, float(np.abs(back.components - t.components).max()))
    res["raise_lower"] = v
    # conformal group additivity, constants and fields
    v = 0.0
    s = example1(2).lie
    for _ in range(20):
        d1, d2 = rng.uniform(-0.5, 0.5, 3), rng.uniform(-0.5, 0.5, 3)
        a = apply_conformal(apply_conformal(s, homothety(*d1)), homothety(*d2)).at().g
        b = apply_conformal(s, homothety(*(d1 + d2))).at().g
        v = max(v, float(np.abs(a - b).max()))
    c = example1(2).chart
    f1 = ConformalData(lambda X: 0.2 * X[1] * X[2], lambda X: 0.1 * jets.sin(X[3]), lambda X: 0.3 * X[0])
    twice = apply_conformal(apply_conformal(c, f1), FF_FIXTURE)
    once = apply_conformal(c, f1 + FF_FIXTURE)
    for p in rng.uniform(-0.5, 0.5, (5, 5)):
        v = max(v, float(np.abs(twice.model.metric(p) - once.model.metric(p)).max()))
    res["conformal_additivity"] = v
    # Example 1 in both backends: frame alignment and frame curvature
    ex = example1(2)
    v = check_twin_alignment(ex, points=8).max_residual
    R_lie = FrameData(ex.lie.at()).R
    for p in rng.uniform(-0.5, 0.5, (4, 5)):
        sp = ex.chart.at(p)
        E, _ = ex.frame_at(p)
        R_chart = np.einsum("abcd,ai,bj,ck,dl->ijkl", sp.loc.riemann, E, E, E, E)
        v = max(v, float(np.abs(R_chart - ex.lie.model.local().riemann).max()))
        v = max(v, abs(sp.loc.scalar - ex.lie.model.local().scalar))
    v = max(v, float(np.abs(R_lie - FrameData(ex.lie.at()).R).max()))
    res["cross_backend_example1"] = v
    elapsed = time.perf_counter() - t0
    value, where = worst(res)
    ok = value < 1e-8 and elapsed < 60
    return record(10, ok, f"property suites: max {value:.1e} ({where}), {elapsed:.2f} s")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k):
    ok, line = CRITERIA[k - 1]()
    assert ok, line


if __name__ == "__main__":
    for fn in CRITERIA:
        fn()
