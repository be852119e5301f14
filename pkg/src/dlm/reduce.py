"""Compilation of dynamic formulas into the static fragment.

Dynamic boxes are eliminated innermost-first through the four reduction
equivalences:

* ``[A,e]x            <->  (pre(e) -> post(e)(x))``   for an atom ``x``
* ``[A,e]~f           <->  (pre(e) -> ~[A,e]f)``
* ``[A,e](f & g)      <->  ([A,e]f & [A,e]g)``
* ``[A,e]B[a]f        <->  (pre(e) -> /\\ { B[a][A,f']f : e ->_a f' })``

``post(e)(x)`` materializes as ``true``, ``false`` or the atom itself.
Preconditions quoted into the output are translated as well, so the result
is always static; the action models themselves are left untouched.
"""

from __future__ import annotations

from .action import PointedAction
from .formula import (
    And,
    Believes,
    DynBox,
    Formula,
    Not,
    Obs,
    Prop,
    Registry,
    Truth,
    conj,
    false_,
    implies,
)


def dynamic_depth(f: Formula) -> int:
    """Maximal nesting count of dynamic boxes; the termination measure of
    the rewriting."""
    if isinstance(f, (Truth, Prop, Obs)):
        return 0
    if isinstance(f, Not):
        return dynamic_depth(f.sub)
    if isinstance(f, And):
        return max(dynamic_depth(f.left), dynamic_depth(f.right))
    if isinstance(f, Believes):
        return dynamic_depth(f.sub)
    if isinstance(f, DynBox):
        return 1 + dynamic_depth(f.body)
    raise TypeError(f"not a formula: {f!r}")


def translate(f: Formula, registry: Registry) -> Formula:
    """Equivalent static formula, by inside-out reduction.

    No boolean simplification is performed; apply :func:`simplify` for a
    tidier but less predictable form.
    """
    if isinstance(f, (Truth, Prop, Obs)):
        return f
    if isinstance(f, Not):
        return Not(translate(f.sub, registry))
    if isinstance(f, And):
        return And(translate(f.left, registry), translate(f.right, registry))
    if isinstance(f, Believes):
        return Believes(f.agent, translate(f.sub, registry))
    if isinstance(f, DynBox):
        pa = f.act.resolve(registry)
        return _reduce_box(pa, translate(f.body, registry), registry)
    raise TypeError(f"not a formula: {f!r}")


def _reduce_box(pa: PointedAction, g: Formula, registry: Registry) -> Formula:
    """Push one dynamic box through the static formula ``g``."""
    a, e = pa.action, pa.point
    pre = translate(a.pre[e], registry)
    if isinstance(g, Truth):
        return implies(pre, g)
    if isinstance(g, Prop):
        return implies(pre, _materialize(a.post[e].get(g.name), g))
    if isinstance(g, Obs):
        return implies(pre, _materialize(a.post[e].get(g.atom), g))
    if isinstance(g, Not):
        return implies(pre, Not(_reduce_box(pa, g.sub, registry)))
    if isinstance(g, And):
        return And(_reduce_box(pa, g.left, registry), _reduce_box(pa, g.right, registry))
    if isinstance(g, Believes):
        boxes = [
            Believes(g.agent, _reduce_box(PointedAction(a, f2), g.sub, registry))
            for f2 in a.successors(g.agent, e)
        ]
        return implies(pre, conj(boxes))
    raise TypeError(f"reduction reached a non-static formula: {g!r}")


def _materialize(assigned, atom: Formula) -> Formula:
    if assigned is None:
        return atom
    return Truth() if assigned else false_()


def simplify(f: Formula) -> Formula:
    """Optional boolean tidy-up: constant folding and double negation."""
    if isinstance(f, Not):
        sub = simplify(f.sub)
        if isinstance(sub, Not):
            return sub.sub
        return Not(sub)
    if isinstance(f, And):
        left = simplify(f.left)
        right = simplify(f.right)
        if isinstance(left, Truth):
            return right
        if isinstance(right, Truth):
            return left
        if left == false_() or right == false_():
            return false_()
        return And(left, right)
    if isinstance(f, Believes):
        return Believes(f.agent, simplify(f.sub))
    if isinstance(f, DynBox):
        return DynBox(f.act, simplify(f.body))
    return f
