"""Evaluate class expressions.

A value is a finite sum ``sum a^p u^q M_{p,q}`` stored as ``{(p, q): M}``.
Expressions without ``a`` and ``u`` evaluate to an :class:`EqClass`; the rest
are reduced to the normal form of the extended ring.
"""

from __future__ import annotations

from ..equivariant import EqClass, EquivariantRing, twisted_projective
from ..extended import ExtClass, gamma, normalize
from . import parser as P

Value = dict[tuple[int, int], EqClass]


class EvalError(ValueError):
    pass


def _clean(v: Value) -> Value:
    return {k: m for k, m in v.items() if m.poly}


def _add(x: Value, y: Value) -> Value:
    out = dict(x)
    for k, m in y.items():
        out[k] = out[k] + m if k in out else m
    return _clean(out)


def _mul(x: Value, y: Value) -> Value:
    out: Value = {}
    for (p1, q1), m1 in x.items():
        for (p2, q2), m2 in y.items():
            k = (p1 + p2, q1 + q2)
            prod = m1 * m2
            out[k] = out[k] + prod if k in out else prod
    return _clean(out)


def evaluate_value(R: EquivariantRing, node: P.Node) -> Value:
    if isinstance(node, P.Const):
        return {(0, 0): R.one()} if node.value else {}
    if isinstance(node, P.RPs):
        return _clean({(0, 0): twisted_projective(R, node.m, node.j)})
    if isinstance(node, P.D):
        return {(0, 0): R.d(node.i, node.j)}
    if isinstance(node, P.X):
        return {(0, 0): R.x(node.g)}
    if isinstance(node, P.A):
        return {(1, 0): R.one()}
    if isinstance(node, P.U):
        return {(0, 1): R.one()}
    if isinstance(node, P.Add):
        return _add(evaluate_value(R, node.left), evaluate_value(R, node.right))
    if isinstance(node, P.Mul):
        return _mul(evaluate_value(R, node.left), evaluate_value(R, node.right))
    if isinstance(node, P.Pow):
        base = evaluate_value(R, node.base)
        acc: Value = {(0, 0): R.one()}
        for _ in range(node.exp):
            acc = _mul(acc, base)
        return acc
    if isinstance(node, P.Gamma):
        inner = evaluate_value(R, node.arg)
        if any(k != (0, 0) for k in inner):
            raise EvalError("Gamma applies to classes without a and u; "
                            "use multiplication by u for the extended ring")
        if not inner:
            return {}
        return _clean({(0, 0): gamma(inner[(0, 0)])})
    raise TypeError(f"not an expression node: {node!r}")


def to_ext(R: EquivariantRing, v: Value) -> ExtClass:
    """Normal form of a value that involves ``a`` or ``u``; it must be bihomogeneous."""
    groups: dict[tuple[int, int], list] = {}
    for (p, q), M in v.items():
        by_deg: dict[int, set] = {}
        vt = R.ring.vars
        for mono in M.poly.terms:
            by_deg.setdefault(vt.degree(mono), set()).add(mono)
        for deg, monos in by_deg.items():
            part = EqClass(R, R.ring.from_monomials(monos))
            groups.setdefault((p + q, deg + q), []).append((p, q, part))
    if len(groups) > 1:
        found = ", ".join(f"(s={s}, t={t})" for s, t in sorted(groups))
        raise EvalError(f"expression is not bihomogeneous: parts in {found}")
    (s, t), terms = next(iter(groups.items()))
    return normalize(R, s, t, terms)


def evaluate(R: EquivariantRing, node: P.Node) -> EqClass | ExtClass:
    v = evaluate_value(R, node)
    if not v:
        return R.zero()
    if set(v) == {(0, 0)}:
        return v[(0, 0)]
    return to_ext(R, v)
