"""Command-line front end: ``parasasaki verify|transform|cone|report``.

Reports are JSON documents with ``"schema": "1"``; curves are CSV with the
header ``t,alpha,beta,gamma``.  Exit codes: 0 when every check passes, 1 when
some check fails (the first failing residual is named on stderr), 2 for usage
or parameter errors.  ``PSL_SEED`` in the environment overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import platform
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import __version__
from .apcpc import (
    check_cone_parallel,
    check_F_properties,
    check_nijenhuis_routes,
    check_para_sasaki_like,
    validate_structure,
    verify_nabf,
)
from .constructions import (
    check_example4_embedding,
    check_twin_alignment,
    example1,
    example2,
    example3,
    example4,
    hyperbolic_extension,
    parallel_product,
)
from .curvature import (
    check_curf,
    check_extension_einstein,
    check_horizontal_decomposition,
    check_horizontal_family,
    check_invariant_sphere,
    check_slice_einstein,
    check_xi_curvature,
    eta_einstein_curve,
)
from .errors import GeometryError, ParameterError
from .expr import parse_scalar
from .reports import CheckReport, _jsonable
from .transformations import (
    ConformalData,
    check_eta_einstein_form,
    check_homothetic_laws,
    check_sssl,
    homothety_to_einstein,
    verify_lemma_ff,
)

SCHEMA = "1"
SUITES = ("example1", "example2", "example3", "example4", "extension-einstein", "parallel")
CURVES = ("eta-einstein",)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    suite: str
    n: int = 2
    lam: float = 1.0
    mu: float = 0.0
    a: float = 2.0
    b: float = 1.0
    p: float | None = None
    q: float | None = None
    u: str = "0"
    v: str = "0"
    w: str = "0"
    points: int = 32
    seed: int = 0
    tol: float | None = None
    radii: tuple = (0.7, 1.0, 1.5)
    t: str = "-1:1:0.5"
    curve: str | None = None
    out: str | None = None
    csv: str | None = None
    workers: int = 4
    extra: dict = field(default_factory=dict)

    def params(self) -> dict:
        d = asdict(self)
        for k in ("out", "csv", "workers", "extra", "command"):
            d.pop(k)
        d["radii"] = list(self.radii)
        return d


def parse_range(spec: str) -> list[float]:
    """``a:b:step`` inclusive of ``b`` (up to rounding), or a comma list."""
    try:
        if ":" in spec:
            a, b, step = (float(x) for x in spec.split(":"))
            if step <= 0 or b < a:
                raise ValueError
            k = int(round((b - a) / step))
            return [round(a + i * step, 12) for i in range(k + 1)]
        return [float(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad range {spec!r}; use a:b:step or a comma list") from None


def _kw(cfg: RunConfig, default_tol=None) -> dict:
    kw = {"seed": cfg.seed}
    tol = cfg.tol if cfg.tol is not None else default_tol
    if tol is not None:
        kw["tol"] = tol
    return kw


# -- fixtures ---------------------------------------------------------------------------

def structures(cfg: RunConfig) -> dict:
    """Named structures for a suite (``lie``, ``chart``, ``extension`` ...)."""
    s = cfg.suite
    if s == "example1":
        ex = example1(cfg.n)
        return {"lie": ex.lie, "chart": ex.chart, "twin": ex}
    if s == "example2":
        ex = example2(cfg.lam, cfg.mu)
        out = {"lie": ex.lie, "twin": ex}
        if ex.chart is not None:
            out["chart"] = ex.chart
        return out
    if s in ("example3", "extension-einstein"):
        base = example3(cfg.n)
        return {"slice": base, "extension": hyperbolic_extension(base)}
    if s == "example4":
        base = example4(cfg.n, cfg.a, cfg.b)
        return {"slice": base, "extension": hyperbolic_extension(base)}
    if s == "parallel":
        return {"chart": parallel_product(cfg.n)}
    raise UsageError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")


def _psl_checks(prefix: str, s, cfg: RunConfig) -> dict[str, Callable[[], CheckReport]]:
    P = cfg.points
    return {
        f"{prefix}/validate": lambda: validate_structure(s, points=P, **_kw(cfg, 1e-10)),
        f"{prefix}/para_sasaki_like": lambda: check_para_sasaki_like(s, points=P, **_kw(cfg)),
        f"{prefix}/nijenhuis_routes": lambda: check_nijenhuis_routes(s, points=P, **_kw(cfg)),
        f"{prefix}/nabla_phi_from_nijenhuis": lambda: verify_nabf(s, points=P, **_kw(cfg)),
        f"{prefix}/F_properties": lambda: check_F_properties(s, points=P, **_kw(cfg)),
        f"{prefix}/curvature_curf": lambda: check_curf(s, points=max(1, P // 4), require=False, **_kw(cfg)),
        f"{prefix}/curvature_xi": lambda: check_xi_curvature(s, points=P, require=False, **_kw(cfg)),
    }


def verify_checks(cfg: RunConfig) -> dict[str, Callable[[], CheckReport]]:
    st = structures(cfg)
    P = cfg.points
    checks: dict[str, Callable[[], CheckReport]] = {}
    if cfg.suite in ("example1", "example2"):
        checks.update(_psl_checks("lie", st["lie"], cfg))
        if "chart" in st:
            checks.update(_psl_checks("chart", st["chart"], cfg))
            checks["twin_alignment"] = lambda: check_twin_alignment(st["twin"], points=P, **_kw(cfg))
    elif cfg.suite == "parallel":
        s = st["chart"]
        checks["chart/validate"] = lambda: validate_structure(s, points=P, **_kw(cfg, 1e-10))
        checks["chart/para_sasaki_like"] = lambda: check_para_sasaki_like(s, points=P, **_kw(cfg))
    else:
        ext, base = st["extension"], st["slice"]
        n = cfg.n
        checks.update(_psl_checks("extension", ext, cfg))
        checks["extension/horizontal_decomposition"] = lambda: check_horizontal_decomposition(
            ext, points=max(1, P // 4), **_kw(cfg, 1e-7)
        )
        checks["extension/horizontal_family"] = lambda: check_horizontal_family(ext, points=max(1, P // 4), **_kw(cfg, 1e-7))
        if cfg.suite == "example4":
            a, b = cfg.a, cfg.b
            checks["slice/invariant_sphere"] = lambda: check_invariant_sphere(
                base, n, a, b, points=max(1, P // 2), **_kw(cfg, 1e-7)
            )
            checks["slice/embedding"] = lambda: check_example4_embedding(n, a, b, points=P, **_kw(cfg, 1e-10))
        else:
            checks["slice/einstein"] = lambda: check_slice_einstein(base, -2.0 * n, points=P, **_kw(cfg, 1e-7))
            ts = parse_range(cfg.t) if cfg.extra.get("t_given") else [-1.0, -0.5, 0.0, 0.5, 1.0]
            checks["extension/einstein"] = lambda: check_extension_einstein(
                ext, ts, points=max(1, P // 8), **_kw(cfg, 1e-7)
            )
    return checks


def transform_checks(cfg: RunConfig) -> dict[str, Callable[[], CheckReport]]:
    st = structures(cfg)
    s = st.get("chart") or st.get("extension") or st["lie"]
    d = ConformalData(*(parse_scalar(e, s.dim) for e in (cfg.u, cfg.v, cfg.w)))
    if d.kind != "homothetic" and "chart" not in st and "extension" not in st:
        raise UsageError("nonconstant u, v, w need a suite with a chart form")
    P = cfg.points
    checks: dict[str, Callable[[], CheckReport]] = {}
    checks["lemma_ff"] = lambda: verify_lemma_ff(s, d, points=P, **_kw(cfg, 1e-7))

    def sssl():
        # a false predicate is an answer, not a failure; disagreement with the
        # direct check raises and surfaces as an error entry
        predicate, report = check_sssl(s, d, points=P, **_kw(cfg, 1e-7))
        info = [dict(item, verdict="info") if "verdict" in item else item for item in report.detail]
        return CheckReport("sssl_agreement", report.points, 0.0, report.tol, report.seed,
                           [{"name": "predicate", "value": predicate}] + info)

    checks["sssl"] = sssl
    if d.kind == "homothetic" and any(float(f) != 0.0 for f in d.fields()):
        targets = {k: st[k] for k in ("lie", "chart", "extension") if k in st}
        for key, t in targets.items():
            checks[f"{key}/homothetic_laws"] = (lambda t=t: check_homothetic_laws(t, d, points=P, **_kw(cfg, 1e-7)))
    if cfg.p is not None or cfg.q is not None:
        if "extension" not in st:
            raise UsageError("--p/--q need an Einstein extension suite (example3, extension-einstein)")
        pq = (1.0 if cfg.p is None else cfg.p, 0.0 if cfg.q is None else cfg.q)
        checks["eta_einstein_form"] = lambda: check_eta_einstein_form(st["extension"], pq, points=P, **_kw(cfg, 1e-7))
    if cfg.extra.get("to_einstein"):
        ext = st.get("extension")
        if ext is None:
            raise UsageError("--to-einstein needs an extension suite")

        def to_einstein():
            dd, result = homothety_to_einstein(ext)
            report = check_extension_einstein(result, [0.0], points=max(1, P // 8), **_kw(cfg, 1e-7))
            report.detail.append({"name": "homothety", **dd.to_dict()})
            return report

        checks["homothety_to_einstein"] = to_einstein
    return checks


def cone_checks(cfg: RunConfig) -> dict[str, Callable[[], CheckReport]]:
    st = structures(cfg)
    s = st.get("chart") or st.get("extension")
    if s is None:
        raise UsageError(f"suite {cfg.suite!r} has no chart form for the cone")
    return {"cone_parallel": lambda: check_cone_parallel(s, points=max(1, cfg.points // 4), radii=cfg.radii, **_kw(cfg))}


def eta_curve_rows(cfg: RunConfig) -> list[tuple[float, float, float, float]]:
    st = structures(cfg)
    s = st.get("extension") or st.get("chart")
    if s is None or s.base is None:
        raise UsageError(f"suite {cfg.suite!r} has no hyperbolic extension for the eta-Einstein curve")
    return [(t, f.alpha, f.beta, f.gamma) for t, f in eta_einstein_curve(s, parse_range(cfg.t))]


# -- running ----------------------------------------------------------------------------

def run_checks(checks: dict[str, Callable[[], CheckReport]], workers: int = 4) -> list[dict]:
    """Run concurrently; entries come back sorted by check name."""
    def one(item):
        name, fn = item
        try:
            rep = fn().to_dict()
        except GeometryError as exc:
            rep = {"check": name, "pass": False, "verdict": "error", "error": f"{type(exc).__name__}: {exc}"}
        return {"name": name, **rep}

    items = sorted(checks.items())
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, items))
    return [one(it) for it in items]


def first_failure(entries: list[dict]) -> str | None:
    for e in entries:
        if not e.get("pass"):
            if "error" in e:
                return f"{e['name']}: {e['error']}"
            for item in e.get("detail", []):
                if item.get("verdict", "pass") != "pass" and "max_residual" in item:
                    return f"{e['name']}: {item['name']} residual {item['max_residual']:.3e} (tol {e['tol']:g})"
            return f"{e['name']}: max residual {e.get('max_residual', float('nan')):.3e}"
    return None


def build_report(cfg: RunConfig, entries: list[dict]) -> dict:
    return {
        "schema": SCHEMA,
        "command": cfg.command,
        "suite": cfg.suite,
        "config": cfg.params(),
        "seed": cfg.seed,
        "environment": {
            "package": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
        },
        "passed": all(e.get("pass") for e in entries),
        "checks": entries,
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, default=_jsonable) + "\n"


def write_csv(rows, path: str | None, stream) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "alpha", "beta", "gamma"])
    for row in rows:
        w.writerow([repr(float(x)) for x in row])
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        stream.write(buf.getvalue())


def run_suite(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    builders = {"verify": verify_checks, "transform": transform_checks, "cone": cone_checks}
    checks = builders[cfg.command](cfg)
    rows = eta_curve_rows(cfg) if cfg.curve else None
    entries = run_checks(checks, cfg.workers)
    doc = build_report(cfg, entries)
    if rows is not None:
        doc["curve"] = {"name": cfg.curve, "columns": ["t", "alpha", "beta", "gamma"], "rows": [list(r) for r in rows]}
    text = dumps(doc)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if rows is not None:
        write_csv(rows, cfg.csv, stdout)
    elif not cfg.out:
        stdout.write(text)
    for e in entries:
        stderr.write(f"{e['name']}: {e['verdict']} (max residual {e.get('max_residual', float('nan')):.3e})\n")
    fail = first_failure(entries)
    if fail:
        stderr.write(f"FAIL {fail}\n")
        return 1
    return 0


def summarize(paths: list[str], stdout) -> int:
    """``report`` subcommand: re-read JSON reports and print one line per check."""
    ok = True
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        if doc.get("schema") != SCHEMA:
            raise UsageError(f"{path}: unsupported report schema {doc.get('schema')!r}")
        stdout.write(f"{path}: {doc['command']} {doc['suite']} seed={doc['seed']}\n")
        for e in doc["checks"]:
            res = e.get("max_residual")
            res_s = f"{res:.3e}" if isinstance(res, (int, float)) else "-"
            stdout.write(f"  {'PASS' if e.get('pass') else 'FAIL'} {e['name']:<40} {res_s}\n")
        ok = ok and bool(doc.get("passed"))
    return 0 if ok else 1


# -- argument parsing -------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("suite", help=f"one of: {', '.join(SUITES)}")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--points", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    p.add_argument("--workers", type=int, default=4)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parasasaki", description="Numerical checks for para-Sasaki-like structures.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the identity checks of a suite")
    _add_common(v)
    v.add_argument("--curve", choices=CURVES, default=None)
    v.add_argument("--t", default=None, help="t values, a:b:step or comma list")
    v.add_argument("--csv", default=None, help="write the curve here instead of stdout")

    t = sub.add_parser("transform", help="apply a paracontact conformal change and check its laws")
    _add_common(t)
    t.add_argument("--u", default="0", help="constant or expression in t, x1..xN")
    t.add_argument("--v", default="0")
    t.add_argument("--w", default="0")
    t.add_argument("--p", type=float, default=None)
    t.add_argument("--q", type=float, default=None)
    t.add_argument("--to-einstein", action="store_true")

    c = sub.add_parser("cone", help="parallelism of the cone structure")
    _add_common(c)
    c.add_argument("--r", default="0.7,1,1.5", help="radii, comma list or a:b:step")

    r = sub.add_parser("report", help="summarize saved JSON reports")
    r.add_argument("files", nargs="+")
    return parser


def config_from_args(args, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    seed = args.seed
    if environ.get("PSL_SEED"):
        try:
            seed = int(environ["PSL_SEED"])
        except ValueError:
            raise UsageError(f"PSL_SEED must be an integer, got {environ['PSL_SEED']!r}") from None
    if args.points < 1:
        raise UsageError("--points must be positive")
    cfg = RunConfig(
        command=args.command,
        suite=args.suite,
        n=args.n,
        lam=args.lam,
        mu=args.mu,
        a=args.a,
        b=args.b,
        points=args.points,
        seed=seed,
        tol=args.tol,
        out=args.out,
        workers=args.workers,
    )
    if args.command == "verify":
        cfg.curve, cfg.csv = args.curve, args.csv
        if args.t is not None:
            cfg.t = args.t
            cfg.extra["t_given"] = True
        elif args.curve:
            cfg.t = "-1:1:0.25"
    elif args.command == "transform":
        cfg.u, cfg.v, cfg.w, cfg.p, cfg.q = args.u, args.v, args.w, args.p, args.q
        cfg.extra["to_einstein"] = args.to_einstein
    elif args.command == "cone":
        cfg.radii = tuple(parse_range(args.r))
    return cfg


def _glue_values(argv: list[str]) -> list[str]:
    # ranges such as "-1:1:0.25" look like options to argparse
    out, i = [], 0
    while i < len(argv):
        if argv[i] in ("--t", "--r", "--u", "--v", "--w") and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = make_parser()
    argv = _glue_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "report":
            return summarize(args.files, stdout)
        return run_suite(config_from_args(args), stdout, stderr)
    except (UsageError, ParameterError, OSError, json.JSONDecodeError) as exc:
        stderr.write(f"parasasaki: error: {exc}\n")
        return 2
    except GeometryError as exc:
        stderr.write(f"parasasaki: error: {type(exc).__name__}: {exc}\n")
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
