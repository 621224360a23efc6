"""Check reports, verdicts and seeded sampling."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

DEFAULT_TOL = 1e-8
FAIL_FACTOR = 100.0


def verdict(residual: float, tol: float) -> str:
    """``pass`` below tol, ``fail`` above 100 tol, ``indeterminate`` in between."""
    if not math.isfinite(residual):
        return "fail"
    if residual < tol:
        return "pass"
    if residual > FAIL_FACTOR * tol:
        return "fail"
    return "indeterminate"


@dataclass
class CheckReport:
    check: str
    points: int
    max_residual: float
    tol: float
    seed: int | None = None
    detail: list[dict] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return verdict(self.max_residual, self.tol)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "points": self.points,
            "max_residual": float(self.max_residual),
            "tol": self.tol,
            "pass": self.passed,
            "verdict": self.verdict,
            "seed": self.seed,
            "detail": self.detail,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=False, default=_jsonable, **kw)

    def first_failure(self) -> dict | None:
        for item in self.detail:
            if item.get("verdict", "pass") != "pass":
                return item
        return None

    def __str__(self) -> str:
        return f"{self.check}: {self.verdict} (max residual {self.max_residual:.3e}, tol {self.tol:g}, {self.points} points)"


def _jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not serializable: {type(obj)}")


class Residuals:
    """Running max of named residuals across sample points."""

    def __init__(self, tol: float):
        self.tol = tol
        self._max: dict[str, float] = {}
        self._where: dict[str, object] = {}

    def add(self, name: str, value: float, where=None) -> None:
        value = float(value)
        if math.isnan(value):
            value = math.inf
        if name not in self._max or value > self._max[name]:
            self._max[name] = value
            self._where[name] = where

    def merge(self, other: "Residuals") -> None:
        for name, value in other._max.items():
            self.add(name, value, other._where[name])

    def __getitem__(self, name: str) -> float:
        return self._max[name]

    def names(self) -> list[str]:
        return list(self._max)

    def max(self, names: Iterable[str] | None = None) -> float:
        names = self._max if names is None else names
        return max((self._max[n] for n in names), default=0.0)

    def detail(self) -> list[dict]:
        out = []
        for name, value in self._max.items():
            item = {"name": name, "max_residual": value, "verdict": verdict(value, self.tol)}
            where = self._where[name]
            if where is not None:
                item["at"] = where
            out.append(item)
        return out

    def report(self, check: str, points: int, seed, extra: Sequence[dict] = ()) -> CheckReport:
        return CheckReport(check, points, self.max(), self.tol, seed, self.detail() + list(extra))


def rel_residual(lhs, rhs) -> float:
    """Max abs difference relative to the largest term (floored at one)."""
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    scale = max(1.0, float(np.max(np.abs(lhs), initial=0.0)), float(np.max(np.abs(rhs), initial=0.0)))
    return float(np.max(np.abs(lhs - rhs), initial=0.0)) / scale


def point_rngs(seed: int, k: int) -> list[np.random.Generator]:
    """One independent generator per sample point, reproducible for a seed."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(k)]


def sample_points(domain, k: int, seed: int = 0) -> np.ndarray:
    lo = np.array([a for a, _ in domain], dtype=float)
    hi = np.array([b for _, b in domain], dtype=float)
    return np.array([lo + (hi - lo) * rng.random(lo.shape[0]) for rng in point_rngs(seed, k)])


def resolve_points(domain, points, seed: int = 0) -> np.ndarray:
    """Accept a sample count or an explicit array of points."""
    if isinstance(points, (int, np.integer)):
        return sample_points(domain, int(points), seed)
    return np.atleast_2d(np.asarray(points, dtype=float))


def unit_vectors(rng: np.random.Generator, k: int, dim: int) -> np.ndarray:
    """``k`` random unit coefficient vectors (rows) in an orthonormal frame."""
    v = rng.standard_normal((k, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def vector_quadruples(rng: np.random.Generator, k: int, dim: int, max_cos: float = 0.99) -> np.ndarray:
    """``k`` quadruples of unit vectors, rejecting nearly parallel first pairs."""
    out = np.empty((k, 4, dim))
    filled = 0
    while filled < k:
        cand = unit_vectors(rng, 4, dim)
        if abs(cand[0] @ cand[1]) > max_cos:
            continue
        out[filled] = cand
        filled += 1
    return out
