"""Scalar fields from short expressions over chart coordinates.

Grammar (fixed)::

    expr   := expr ('+' | '-' | '*' | '/') expr | '-' expr | '+' expr
            | NUMBER | NAME | FUNC '(' expr ')' | '(' expr ')'
    NAME   := 't' | 'x1' | 'x2' | ...      (t is coordinate 0, xi is coordinate i)
    FUNC   := 'exp' | 'sinh' | 'cosh' | 'sin' | 'cos'

Anything else (powers, attribute access, other names, keywords) is rejected.
The result is a callable of the coordinate vector that works on floats and
on :class:`parasasaki.jets.Jet` values alike.
"""

from __future__ import annotations

import ast
import operator
import re

from . import jets
from .errors import ParameterError

FUNCS = {"exp": jets.exp, "sinh": jets.sinh, "cosh": jets.cosh, "sin": jets.sin, "cos": jets.cos}
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_COORD = re.compile(r"x([1-9][0-9]*)\Z")


class ScalarExpr:
    """Compiled expression; call it with a coordinate vector."""

    def __init__(self, source: str, dim: int | None = None):
        self.source = source.strip()
        try:
            tree = ast.parse(self.source, mode="eval")
        except SyntaxError as exc:
            raise ParameterError(f"cannot parse {source!r}: {exc.msg}") from None
        self._tree = tree.body
        self.max_index = 0
        self.uses_coords = False
        self._validate(self._tree)
        if dim is not None and self.max_index >= dim:
            raise ParameterError(f"{source!r} uses x{self.max_index} but the chart has dimension {dim}")

    def _validate(self, node) -> None:
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            self._validate(node.left)
            self._validate(node.right)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            self._validate(node.operand)
        elif isinstance(node, ast.Constant) and type(node.value) in (int, float):
            pass
        elif isinstance(node, ast.Name):
            self.uses_coords = True
            if node.id != "t":
                m = _COORD.match(node.id)
                if not m:
                    raise ParameterError(f"unknown name {node.id!r} in {self.source!r}")
                self.max_index = max(self.max_index, int(m.group(1)))
        elif isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in FUNCS:
                raise ParameterError(f"unsupported function in {self.source!r}")
            if len(node.args) != 1 or node.keywords:
                raise ParameterError(f"{node.func.id} takes exactly one argument")
            self._validate(node.args[0])
        else:
            raise ParameterError(f"unsupported syntax {type(node).__name__} in {self.source!r}")

    @property
    def is_constant(self) -> bool:
        return not self.uses_coords

    def _eval(self, node, X):
        if isinstance(node, ast.BinOp):
            return _BINOPS[type(node.op)](self._eval(node.left, X), self._eval(node.right, X))
        if isinstance(node, ast.UnaryOp):
            val = self._eval(node.operand, X)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.Constant):
            return float(node.value)
        if isinstance(node, ast.Name):
            return X[0] if node.id == "t" else X[int(node.id[1:])]
        return FUNCS[node.func.id](self._eval(node.args[0], X))

    def __call__(self, X):
        return self._eval(self._tree, X)

    def __repr__(self) -> str:
        return f"ScalarExpr({self.source!r})"


def parse_scalar(source, dim: int | None = None):
    """A float for constant expressions, otherwise a :class:`ScalarExpr`."""
    if isinstance(source, (int, float)):
        return float(source)
    e = ScalarExpr(str(source), dim)
    if e.is_constant:
        return float(e(()))
    return e
