"""Safe parser for coefficient rules written as rational functions of ``n``.

Only numbers, the variable ``n``, named rational parameters, ``+ - * /``,
unary minus and integer powers are accepted.  Evaluation is exact.

>>> rule = parse_rule("(n - a)/(n + 1)", {"a": Fraction(3)})
>>> rule(5)
Fraction(1, 3)
"""

from __future__ import annotations

import ast
import operator
from fractions import Fraction
from typing import Mapping

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer or a plain decimal like ``"0.25"`` exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


class RationalRule:
    """Callable ``n -> Fraction`` compiled from an expression string."""

    def __init__(self, source: str, params: Mapping[str, Fraction] | None = None):
        self.source = source
        self.params = dict(params or {})
        try:
            tree = ast.parse(source.strip(), mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse rule {source!r}: {exc.msg}") from exc
        self._check(tree.body)
        self._tree = tree.body

    def _check(self, node) -> None:
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                self._check(node.left)
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError(f"exponents must be integer literals in {self.source!r}")
                return
            if type(node.op) not in _BINOPS:
                raise ValueError(f"operator {type(node.op).__name__} not allowed in {self.source!r}")
            self._check(node.left)
            self._check(node.right)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            self._check(node.operand)
        elif isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
                raise ValueError(f"bad constant {node.value!r} in {self.source!r}")
        elif isinstance(node, ast.Name):
            if node.id != "n" and node.id not in self.params:
                raise ValueError(f"unknown name {node.id!r} in {self.source!r}")
        else:
            raise ValueError(f"unsupported syntax {type(node).__name__} in {self.source!r}")

    def _eval(self, node, n: int) -> Fraction:
        if isinstance(node, ast.BinOp):
            left = self._eval(node.left, n)
            if isinstance(node.op, ast.Pow):
                return left ** node.right.value
            return _BINOPS[type(node.op)](left, self._eval(node.right, n))
        if isinstance(node, ast.UnaryOp):
            value = self._eval(node.operand, n)
            return -value if isinstance(node.op, ast.USub) else value
        if isinstance(node, ast.Constant):
            # decimal literals are read from their text, not the binary float
            return Fraction(str(node.value)) if isinstance(node.value, float) else Fraction(node.value)
        if node.id == "n":
            return Fraction(n)
        return self.params[node.id]

    def __call__(self, n: int) -> Fraction:
        return self._eval(self._tree, n)

    def __repr__(self):
        return f"RationalRule({self.source!r})"


def parse_rule(source: str, params: Mapping[str, Fraction] | None = None) -> RationalRule:
    return RationalRule(source, params)


def parse_inline_equation(text: str, params: Mapping[str, Fraction] | None = None) -> list[RationalRule]:
    """Parse ``"A=...;B=..."`` into rules ordered A, B, C, D.

    Labels must form a prefix of A, B, C, D.
    """
    found = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ValueError(f"inline rule {chunk!r} must look like LABEL=expression")
        label, body = chunk.split("=", 1)
        label = label.strip().upper()
        if label not in "ABCD" or len(label) != 1:
            raise ValueError(f"rule label must be one of A, B, C, D, got {label!r}")
        if label in found:
            raise ValueError(f"rule {label} given twice")
        found[label] = parse_rule(body, params)
    labels = "ABCD"[:len(found)]
    if set(found) != set(labels):
        raise ValueError(f"rules must be a prefix of A, B, C, D; got {sorted(found)}")
    return [found[label] for label in labels]


def looks_inline(text: str) -> bool:
    return "=" in text
