"""Translation of kernel terms to nets.

* ``x``        a bang over a dereliction entering the e-node ``x``;
* ``\\x. t``    a bang over a par-link whose box is the translation of
                ``t`` (with ``x`` weakened inside the box when unused);
* ``v s``      a tensor from the root to the head of ``v`` (its
                dereliction, or its par-link and box) and to the root of ``s``;
* ``t[x/u]``   the translation of ``t`` where the e-node ``x`` is also the
                root of the translation of ``u`` (a weakening enters ``x``
                when ``x`` is not free in ``t``).

Free variables are contracted by construction, since every occurrence
enters the e-node carrying the variable's name.  Names in ``X`` that are
not free in ``t`` become free weakenings.
"""

from .nets import BANG, DER, PAR, TENSOR, WEAK, Link, Net
from .terms import Abs, App, ESub, Var, is_value, is_well_named, split_value_list

ROOT = "#0"


class _Builder:
    def __init__(self):
        self.links = []
        self.boxes = {}
        self.stack = []
        self.counter = 0
        self.cuts = {}
        self._fv = {}

    def fresh(self):
        self.counter += 1
        return f"#{self.counter}"

    def emit(self, link):
        self.links.append(link)
        for p in self.stack:
            self.boxes[p].add(link)

    def fv(self, t):
        key = id(t)
        if key not in self._fv:
            if isinstance(t, Var):
                r = frozenset((t.name,))
            elif isinstance(t, Abs):
                r = self.fv(t.body) - {t.var}
            elif isinstance(t, App):
                r = self.fv(t.fun) | self.fv(t.arg)
            else:
                r = (self.fv(t.body) - {t.var}) | self.fv(t.defn)
            self._fv[key] = (t, r)
        return self._fv[key][1]

    def term(self, t, r, path):
        if isinstance(t, Var):
            a = self.fresh()
            self.emit(Link(BANG, (r,), (a,)))
            self.emit(Link(DER, (a,), (t.name,)))
        elif isinstance(t, Abs):
            a = self.fresh()
            self.emit(Link(BANG, (r,), (a,)))
            self.head(t, a, path)
        elif isinstance(t, App):
            a, s = self.fresh(), self.fresh()
            self.emit(Link(TENSOR, (r,), (a, s)))
            if isinstance(t.fun, Abs):
                self.cuts[path] = ("m", a)
            self.head(t.fun, a, path + (0,))
            self.term(t.arg, s, path + (1,))
        elif isinstance(t, ESub):
            self.term(t.body, r, path + (0,))
            if t.var not in self.fv(t.body):
                self.emit(Link(WEAK, (), (t.var,)))
            if is_value(split_value_list(t.defn)[0]):
                self.cuts[path] = ("e", t.var)
            self.term(t.defn, t.var, path + (1,))
        else:
            raise TypeError(f"not a kernel term: {t!r}")

    def head(self, v, a, path):
        if isinstance(v, Var):
            self.emit(Link(DER, (a,), (v.name,)))
            return
        q = self.fresh()
        p = Link(PAR, (a, v.var), (q,))
        self.emit(p)
        self.boxes[p] = set()
        self.stack.append(p)
        self.term(v.body, q, path + (0,))
        if v.var not in self.fv(v.body):
            self.emit(Link(WEAK, (), (v.var,)))
        self.stack.pop()


def translate_annotated(t, X=()):
    """Translate and also return the cut created for each redex position.

    The second result maps a term path to ``(kind, node)``.
    """
    X = frozenset(X)
    b = _Builder()
    free = b.fv(t)
    if not is_well_named(t, avoid=X - free):
        raise ValueError("translate needs a well-named term whose binders avoid X")
    b.term(t, ROOT, ())
    for y in sorted(X - free):
        b.emit(Link(WEAK, (), (y,)))
    return Net.build(b.links, b.boxes, ROOT), b.cuts


def translate(t, X=()):
    return translate_annotated(t, X)[0]
