"""Named inputs shared by the tests, the demos and the command line.

* three pairs of terms, one per structural equation, that translate to
  the same net;
* two nets that satisfy every net condition but are not correct;
* the term ``(delta (y z)) delta`` with ``delta = \\x. x x``.
"""

from __future__ import annotations

from .nets import BANG, DER, PAR, WEAK, Link, Net
from .terms import kernelize, parse_term

EQUATIONS = {
    # t[x/s][y/u] = t[y/u][x/s]   when x is not free in u and y not in s
    "vo_cs": (r"(x y)[x/a][y/b]", r"(x y)[y/b][x/a]"),
    # v u[x/s] = (v u)[x/s]   when x is not free in v
    "vo_1": (r"a (x x)[x/\z. z]", r"(a (x x))[x/\z. z]"),
    # t[x/s[y/u]] = t[x/s][y/u]   when y is not free in t
    "vo_2": (r"(x a)[x/(y y)[y/b]]", r"(x a)[x/y y][y/b]"),
}


def equation_pair(name):
    lhs, rhs = EQUATIONS[name]
    return parse_term(lhs), parse_term(rhs)


def delta_term():
    """The kernel form of ``(delta (y z)) delta``."""
    return kernelize(parse_term(r"(\x. x x) (y z) (\x. x x)", extended=True))


def _bang_der(e, m, target):
    return [Link(BANG, (e,), (m,)), Link(DER, (m,), (target,))]


def cyclic_boxes():
    """Two par-boxes, each using the node the other one hangs from.

    Every net condition holds, but the collapsed boxes close a cycle
    ``y -> box -> z -> box -> y`` in the correction graph.
    """
    root = _bang_der("r", "#1", "w")
    # y hangs over the first box, whose interior uses z
    box1 = _bang_der("q1", "#3", "z") + [Link(WEAK, (), ("x1",))]
    par1 = Link(PAR, ("#2", "x1"), ("q1",))
    box2 = _bang_der("q2", "#5", "y") + [Link(WEAK, (), ("x2",))]
    par2 = Link(PAR, ("#4", "x2"), ("q2",))
    links = root + box1 + box2 + [Link(BANG, ("y",), ("#2",)), par1, Link(BANG, ("z",), ("#4",)), par2]
    return Net.build(links, {par1: box1, par2: box2}, "r")


def incorrect_box():
    """A par-box whose interior has a second e-source.

    Collapsing the box hides the problem: the level-0 correction graph
    is fine, only the recursive check on the interior fails.
    """
    inner = _bang_der("q", "#3", "x") + _bang_der("s", "#4", "x")
    par = Link(PAR, ("#1", "x"), ("q",))
    links = [Link(BANG, ("r",), ("#1",)), par] + inner
    return Net.build(links, {par: inner}, "r")


COUNTEREXAMPLES = {
    "cyclic-boxes": cyclic_boxes,
    "incorrect-box": incorrect_box,
}


def counterexample(name):
    return COUNTEREXAMPLES[name]()
