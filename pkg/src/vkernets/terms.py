"""Syntax and small-step rewriting of the value substitution kernel.

Terms are immutable dataclasses::

    t, s, u ::= x | \\x. t | v s | t[x/u]        v ::= x | \\x. t

The head of an application is always a value; :class:`App` refuses
anything else at construction time.  :class:`RawApp` exists only as input
to :func:`kernelize`, which rewrites unrestricted applications into the
kernel.

The two rules are

* ``(\\x. t) u  ->m  t[x/u]``
* ``t[x/v L]    ->e  t{x/v} L``   where ``L`` is a list of substitutions.
"""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Union

from .errors import IteratedApplication, NotAValue, StaleRedex, TermSyntaxError


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Abs:
    var: str
    body: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"

    def __post_init__(self):
        if not isinstance(self.fun, (Var, Abs)):
            raise IteratedApplication(
                f"application head must be a value, got {type(self.fun).__name__}")

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class ESub:
    body: "Term"
    var: str
    defn: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class RawApp:
    """Application with an arbitrary head; only valid before kernelization."""

    fun: "Term"
    arg: "Term"

    def __str__(self):
        return show(self)


Term = Union[Var, Abs, App, ESub]
Value = Union[Var, Abs]


def is_value(t):
    return isinstance(t, (Var, Abs))


# ---------------------------------------------------------------------------
# Concrete syntax

_TOKEN = re.compile(r"\s*(?:(\\|λ)|([.()\[\]/])|([A-Za-z_][A-Za-z0-9_']*))")


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1):
            tokens.append(("lam", "\\", m.start(1)))
        elif m.group(2):
            tokens.append((m.group(2), m.group(2), m.start(2)))
        else:
            tokens.append(("id", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("eof", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, extended):
        self.tokens = _tokenize(text)
        self.i = 0
        self.extended = extended

    def peek(self):
        return self.tokens[self.i][0]

    def take(self, kind):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = tok[1] if tok[0] != "eof" else "end of input"
            raise TermSyntaxError(f"expected {kind!r}, found {what!r}", tok[2])
        self.i += 1
        return tok

    def term(self):
        if self.peek() == "lam":
            return self.lam()
        return self.app()

    def lam(self):
        self.take("lam")
        names = [self.take("id")[1]]
        while self.peek() == "id":
            names.append(self.take("id")[1])
        self.take(".")
        body = self.term()
        for name in reversed(names):
            body = Abs(name, body)
        return body

    def app(self):
        pos = self.tokens[self.i][2]
        items = [self.postfix()]
        while self.peek() in ("id", "(", "lam"):
            if self.peek() == "lam":
                items.append(self.lam())
                break
            items.append(self.postfix())
        head = items[0]
        for arg in items[1:]:
            head = self.apply(head, arg, pos)
        return head

    def apply(self, head, arg, pos):
        if is_value(head):
            return App(head, arg)
        if self.extended:
            return RawApp(head, arg)
        raise IteratedApplication(
            "iterated application: the head of an application must be a "
            "variable or a parenthesised abstraction", pos)

    def postfix(self):
        t = self.atom()
        while self.peek() == "[":
            self.take("[")
            name = self.take("id")[1]
            self.take("/")
            defn = self.term()
            self.take("]")
            t = ESub(t, name, defn)
        return t

    def atom(self):
        if self.peek() == "id":
            return Var(self.take("id")[1])
        if self.peek() == "(":
            self.take("(")
            t = self.term()
            self.take(")")
            return t
        tok = self.tokens[self.i]
        what = tok[1] if tok[0] != "eof" else "end of input"
        raise TermSyntaxError(f"unexpected {what!r}", tok[2])


def parse_term(text, extended=False):
    """Parse concrete syntax into a term.

    With ``extended=True`` applications with non-value heads are accepted
    and produce :class:`RawApp` nodes (input for :func:`kernelize`).
    """
    p = _Parser(text, extended)
    t = p.term()
    if p.peek() != "eof":
        tok = p.tokens[p.i]
        raise TermSyntaxError(f"trailing input {tok[1]!r}", tok[2])
    return t


def show(t):
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Abs):
        return f"\\{t.var}. {show(t.body)}"
    if isinstance(t, (App, RawApp)):
        head = show(t.fun) if isinstance(t.fun, Var) else f"({show(t.fun)})"
        if isinstance(t.fun, RawApp):
            head = show(t.fun)
        return f"{head} {_show_operand(t.arg)}"
    if isinstance(t, ESub):
        return f"{_show_operand(t.body)}[{t.var}/{show(t.defn)}]"
    raise TypeError(f"not a term: {t!r}")


def _show_operand(t):
    if isinstance(t, (Var, ESub)):
        return show(t)
    return f"({show(t)})"


# ---------------------------------------------------------------------------
# Basic queries


def children(t):
    if isinstance(t, Abs):
        return (t.body,)
    if isinstance(t, (App, RawApp)):
        return (t.fun, t.arg)
    if isinstance(t, ESub):
        return (t.body, t.defn)
    return ()


def fv(t):
    """Free variables; ``t[x/u]`` binds ``x`` in ``t`` only."""
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Abs):
        return fv(t.body) - {t.var}
    if isinstance(t, (App, RawApp)):
        return fv(t.fun) | fv(t.arg)
    if isinstance(t, ESub):
        return (fv(t.body) - {t.var}) | fv(t.defn)
    raise TypeError(f"not a term: {t!r}")


def size(t):
    return 1 + sum(size(c) for c in children(t))


def binders(t):
    """All binder names in preorder, duplicates included."""
    out = []

    def go(t):
        if isinstance(t, (Abs, ESub)):
            out.append(t.var)
        for c in children(t):
            go(c)

    go(t)
    return out


def is_well_named(t, avoid=()):
    bs = binders(t)
    taken = fv(t) | set(avoid)
    return len(bs) == len(set(bs)) and not taken.intersection(bs)


def occurrences(t, x):
    """Number of free occurrences of ``x`` in ``t``."""
    if isinstance(t, Var):
        return int(t.name == x)
    if isinstance(t, (Abs, ESub)) and t.var == x:
        return occurrences(t.defn, x) if isinstance(t, ESub) else 0
    return sum(occurrences(c, x) for c in children(t))


# ---------------------------------------------------------------------------
# Names

_TRAILING_DIGITS = re.compile(r"\d+$")


class FreshNames:
    """Monotone renaming supply: ``x`` becomes ``x1``, ``x2``, ..."""

    def __init__(self, used=()):
        self.used = set(used)

    def fresh(self, name):
        base = _TRAILING_DIGITS.sub("", name) or name
        k = 1
        while f"{base}{k}" in self.used:
            k += 1
        new = f"{base}{k}"
        self.used.add(new)
        return new

    def claim(self, name):
        if name in self.used:
            return self.fresh(name)
        self.used.add(name)
        return name


def well_name(t, avoid=()):
    """Rename binders apart from each other, from free names and from ``avoid``.

    Binders are visited in preorder; the first binder of a given name keeps
    it, later clashes get the next free numeric suffix.
    """
    names = FreshNames(fv(t) | set(avoid))

    def go(t, env):
        if isinstance(t, Var):
            return Var(env.get(t.name, t.name))
        if isinstance(t, Abs):
            x = names.claim(t.var)
            return Abs(x, go(t.body, {**env, t.var: x}))
        if isinstance(t, App):
            return App(go(t.fun, env), go(t.arg, env))
        if isinstance(t, RawApp):
            return RawApp(go(t.fun, env), go(t.arg, env))
        if isinstance(t, ESub):
            x = names.claim(t.var)
            body = go(t.body, {**env, t.var: x})
            return ESub(body, x, go(t.defn, env))
        raise TypeError(f"not a term: {t!r}")

    return go(t, {})


def alpha_key(t):
    """A string equal for two terms iff they are alpha-equivalent."""
    counter = [0]
    parts = []

    def go(t, env):
        if isinstance(t, Var):
            parts.append(env.get(t.name, "'" + t.name))
        elif isinstance(t, Abs):
            k = f"#{counter[0]}"
            counter[0] += 1
            parts.append("(L" + k + " ")
            go(t.body, {**env, t.var: k})
            parts.append(")")
        elif isinstance(t, (App, RawApp)):
            parts.append("(A ")
            go(t.fun, env)
            parts.append(" ")
            go(t.arg, env)
            parts.append(")")
        else:
            k = f"#{counter[0]}"
            counter[0] += 1
            parts.append("(S" + k + " ")
            go(t.body, {**env, t.var: k})
            parts.append(" ")
            go(t.defn, env)
            parts.append(")")

    go(t, {})
    return "".join(parts)


def alpha_equiv(t, s):
    return alpha_key(t) == alpha_key(s)


# ---------------------------------------------------------------------------
# Kernelization and substitution


def kernelize(t, names=None):
    """Map unrestricted applications into the kernel.

    A non-value head ``h`` in ``h s`` is named: the application becomes
    ``(x s)[x/h]`` with ``x`` fresh.  The result is well-named.
    """
    if names is None:
        t = well_name(t)
        names = FreshNames(fv(t) | set(binders(t)))

    def go(t):
        if isinstance(t, Var):
            return t
        if isinstance(t, Abs):
            return Abs(t.var, go(t.body))
        if isinstance(t, ESub):
            return ESub(go(t.body), t.var, go(t.defn))
        head, arg = go(t.fun), go(t.arg)
        if is_value(head):
            return App(head, arg)
        x = names.claim("w")
        return ESub(App(Var(x), arg), x, head)

    return go(t)


def subst(t, x, v):
    """Meta-level substitution ``t{x/v}`` of a value for a variable.

    Assumes ``t`` is well-named relative to ``v``: no binder of ``t`` captures
    a free variable of ``v``.
    """
    if not is_value(v):
        raise NotAValue(f"cannot substitute non-value {show(v)!r}")

    def go(t):
        if isinstance(t, Var):
            return v if t.name == x else t
        if isinstance(t, Abs):
            return t if t.var == x else Abs(t.var, go(t.body))
        if isinstance(t, App):
            return App(go(t.fun), go(t.arg))
        if isinstance(t, ESub):
            body = t.body if t.var == x else go(t.body)
            return ESub(body, t.var, go(t.defn))
        raise TypeError(f"not a kernel term: {t!r}")

    return go(t)


def split_value_list(t):
    """Decompose ``t`` as ``v L``; return ``(core, L)`` with ``L`` innermost first.

    ``core`` is a value exactly when ``t`` is the argument of an e-redex.
    """
    subs = []
    while isinstance(t, ESub):
        subs.append((t.var, t.defn))
        t = t.body
    subs.reverse()
    return t, subs


def wrap_subs(t, subs):
    for x, u in subs:
        t = ESub(t, x, u)
    return t


# ---------------------------------------------------------------------------
# Redexes and steps


@dataclass(frozen=True)
class TermRedex:
    """A rewrite position: ``kind`` is ``"m"`` or ``"e"``; ``path`` indexes children.

    For e-redexes ``var`` names the substitution being fired.
    """

    kind: str
    path: tuple
    var: str | None = None

    def __str__(self):
        where = ".".join(map(str, self.path)) or "root"
        return f"{self.kind}@{where}" + (f"[{self.var}]" if self.var else "")


def subterm(t, path):
    for i in path:
        t = children(t)[i]
    return t


def replace_at(t, path, new):
    if not path:
        return new
    i, rest = path[0], path[1:]
    if isinstance(t, Abs):
        return Abs(t.var, replace_at(t.body, rest, new))
    if isinstance(t, App):
        if i == 0:
            return App(replace_at(t.fun, rest, new), t.arg)
        return App(t.fun, replace_at(t.arg, rest, new))
    if isinstance(t, ESub):
        if i == 0:
            return ESub(replace_at(t.body, rest, new), t.var, t.defn)
        return ESub(t.body, t.var, replace_at(t.defn, rest, new))
    raise StaleRedex(f"path {path} leaves the term")


def find_redexes(t):
    """All redexes of ``t`` in leftmost-outermost (preorder) order."""
    out = []

    def go(t, path):
        if isinstance(t, App) and isinstance(t.fun, Abs):
            out.append(TermRedex("m", path))
        elif isinstance(t, ESub) and is_value(split_value_list(t.defn)[0]):
            out.append(TermRedex("e", path, t.var))
        for i, c in enumerate(children(t)):
            go(c, path + (i,))

    go(t, ())
    return out


def contract(redex_term, kind):
    """Contract a term that is itself a redex of the given kind."""
    if kind == "m":
        if not (isinstance(redex_term, App) and isinstance(redex_term.fun, Abs)):
            raise StaleRedex("not an m-redex")
        lam = redex_term.fun
        return ESub(lam.body, lam.var, redex_term.arg)
    if kind == "e":
        if not isinstance(redex_term, ESub):
            raise StaleRedex("not an e-redex")
        v, subs = split_value_list(redex_term.defn)
        if not is_value(v):
            raise StaleRedex("substitution argument is not of the form v L")
        return wrap_subs(subst(redex_term.body, redex_term.var, v), subs)
    raise ValueError(f"unknown redex kind {kind!r}")


def step(t, r, avoid=()):
    """Fire redex ``r`` of ``t``; the result is well-named again.

    Names in ``avoid`` are never chosen when binders must be freshened.
    """
    try:
        target = subterm(t, r.path)
    except (IndexError, TypeError):
        raise StaleRedex(f"{r} does not address a subterm") from None
    if r.kind == "e" and r.var is not None and getattr(target, "var", None) != r.var:
        raise StaleRedex(f"{r} does not address substitution {r.var}")
    out = replace_at(t, r.path, contract(target, r.kind))
    if r.kind == "e":
        out = well_name(out, avoid)
    return out


def _occurrence_paths(t, x, path=()):
    if isinstance(t, Var):
        return [path] if t.name == x else []
    if isinstance(t, Abs):
        return [] if t.var == x else _occurrence_paths(t.body, x, path + (0,))
    if isinstance(t, App):
        return _occurrence_paths(t.fun, x, path + (0,)) + _occurrence_paths(t.arg, x, path + (1,))
    body = [] if t.var == x else _occurrence_paths(t.body, x, path + (0,))
    return body + _occurrence_paths(t.defn, x, path + (1,))


def residual_paths(t, r, q):
    """Paths in ``step(t, r)`` of the residuals of the redex ``q`` of ``t``."""
    p, qp = r.path, q.path
    if qp == p:
        return []
    if qp[:len(p)] != p:
        return [qp]
    rest = qp[len(p):]
    if r.kind == "m":
        # (\x. body) arg  ->  body[x/arg]
        if rest[:2] == (0, 0):
            return [p + (0,) + rest[2:]]
        return [qp]
    target = subterm(t, p)
    _, subs = split_value_list(target.defn)
    k = len(subs)
    if rest[0] == 0:
        return [p + (0,) * k + rest[1:]]
    inner = rest[1:]
    if inner[:k] == (0,) * k:
        # inside the value: one copy per occurrence of the variable
        return [p + (0,) * k + o + inner[k:] for o in _occurrence_paths(target.body, target.var)]
    return [p + inner]


def residuals(t, r, qs, reduct=None):
    """Residuals after firing ``r`` of the redexes ``qs`` of ``t``, as redexes of the reduct."""
    out = step(t, r) if reduct is None else reduct
    found = {x.path: x for x in find_redexes(out)}
    res = []
    for q in qs:
        for path in residual_paths(t, r, q):
            x = found.get(path)
            if x is None or x.kind != q.kind:
                raise StaleRedex(f"residual of {q} at {path} is not a redex")
            res.append(x)
    return res


def develop(t, qs, avoid=()):
    """Fire the redexes ``qs`` of ``t`` and all their residuals.

    Returns the reduct and the list of redexes fired, each relative to
    the term it was fired in.
    """
    path = []
    qs = list(qs)
    while qs:
        r = qs.pop()
        t2 = step(t, r, avoid)
        qs = residuals(t, r, qs, t2)
        t = t2
        path.append(r)
    return t, path


@dataclass
class NormalForm:
    term: Term
    steps: Counter = field(default_factory=Counter)

    @property
    def total(self):
        return sum(self.steps.values())


@dataclass
class FuelExhausted:
    term: Term
    steps: Counter = field(default_factory=Counter)

    @property
    def total(self):
        return sum(self.steps.values())


def choose_redex(redexes, strategy, rng=None):
    if strategy == "leftmost":
        return redexes[0]
    if strategy == "rightmost":
        return redexes[-1]
    if strategy == "random":
        return rng.choice(redexes)
    raise ValueError(f"unknown strategy {strategy!r}")


def normalize(t, strategy="leftmost", fuel=1000, seed=0, avoid=()):
    """Rewrite until no redex is left or ``fuel`` steps have been spent."""
    rng = random.Random(seed)
    steps = Counter()
    for _ in range(fuel):
        rs = find_redexes(t)
        if not rs:
            return NormalForm(t, steps)
        r = choose_redex(rs, strategy, rng)
        t = step(t, r, avoid)
        steps[r.kind] += 1
    if not find_redexes(t):
        return NormalForm(t, steps)
    return FuelExhausted(t, steps)
