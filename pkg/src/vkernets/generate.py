"""Random and exhaustive generation of well-named kernel terms."""

from __future__ import annotations

import random

from .terms import Abs, App, ESub, FreshNames, Var, well_name

FREE = ("a", "b", "c")
WEAK_POOL = ("d", "e")
BINDERS = "xyzuvw"


class _Gen:
    def __init__(self, rng, free):
        self.rng = rng
        self.free = tuple(free)
        self.names = FreshNames(self.free)

    def binder(self):
        return self.names.fresh(self.rng.choice(BINDERS))

    def var(self, scope):
        if scope and (not self.free or self.rng.random() < 0.75):
            return Var(self.rng.choice(scope))
        return Var(self.rng.choice(self.free))

    def value(self, n, scope):
        if n <= 1:
            return self.var(scope)
        x = self.binder()
        return Abs(x, self.term(n - 1, scope + [x]))

    def term(self, n, scope):
        rng = self.rng
        if n <= 1:
            return self.var(scope)
        if n == 2:
            return self.value(2, scope)
        pick = rng.choices(("abs", "app", "sub"), weights=(2, 4, 3))[0]
        if pick == "abs":
            return self.value(n, scope)
        if pick == "app":
            # favour abstraction heads so that m-redexes are common
            h = 1 if rng.random() < 0.35 else rng.randint(2, n - 2) if n > 3 else 1
            head = self.value(h, scope)
            return App(head, self.term(n - 1 - h, scope))
        b = rng.randint(1, n - 2)
        x = self.binder()
        body = self.term(b, scope + [x])
        d = n - 1 - b
        defn = self.value(d, scope) if rng.random() < 0.6 else self.term(d, scope)
        return ESub(body, x, defn)


def random_term(rng, max_size=50, free=FREE):
    """A random well-named kernel term of size at most ``max_size``."""
    n = rng.randint(1, max_size)
    return _Gen(rng, free).term(n, [])


def random_weakenings(rng, pool=WEAK_POOL):
    return frozenset(y for y in pool if rng.random() < 0.3)


def random_corpus(n, seed=0, max_size=50, free=FREE):
    """``n`` pairs ``(t, X)`` with ``X`` disjoint from the free pool."""
    rng = random.Random(seed)
    return [(random_term(rng, max_size, free), random_weakenings(rng)) for _ in range(n)]


def enumerate_terms(size, free=("a",)):
    """Every kernel term of exactly ``size`` nodes, up to renaming of binders."""

    def terms(n, depth):
        scope = [f"x{i}" for i in range(depth)]
        if n == 1:
            for x in scope + list(free):
                yield Var(x)
            return
        yield from values(n, depth)
        for h in range(1, n - 1):
            for head in values(h, depth):
                for arg in terms(n - 1 - h, depth):
                    yield App(head, arg)
        x = f"x{depth}"
        for b in range(1, n - 1):
            for body in terms(b, depth + 1):
                for defn in terms(n - 1 - b, depth):
                    yield ESub(body, x, defn)

    def values(n, depth):
        if n == 1:
            yield from (Var(x) for x in [f"x{i}" for i in range(depth)] + list(free))
        else:
            x = f"x{depth}"
            for body in terms(n - 1, depth + 1):
                yield Abs(x, body)

    for t in terms(size, 0):
        yield well_name(t)


def count_terms(size, free=("a",)):
    """Number of terms :func:`enumerate_terms` yields, computed without building them."""
    from functools import lru_cache

    k = len(free)

    @lru_cache(maxsize=None)
    def terms(n, depth):
        if n == 1:
            return depth + k
        total = values(n, depth)
        for h in range(1, n - 1):
            total += values(h, depth) * terms(n - 1 - h, depth)
        for b in range(1, n - 1):
            total += terms(b, depth + 1) * terms(n - 1 - b, depth)
        return total

    @lru_cache(maxsize=None)
    def values(n, depth):
        return depth + k if n == 1 else terms(n - 1, depth + 1)

    return terms(size, 0)


def random_vo_instance(rng, name, max_size=15, free=FREE):
    """Random sides ``(lhs, rhs)`` of one structural equation.

    ``name`` is ``"vo_cs"``, ``"vo_1"`` or ``"vo_2"``; the pieces are
    generated in scopes that make the side conditions hold.
    """
    g = _Gen(rng, free)
    size = lambda: rng.randint(1, max_size)
    x, y = g.binder(), g.binder()
    if name == "vo_cs":
        t, s, u = g.term(size(), [x, y]), g.term(size(), []), g.term(size(), [])
        return ESub(ESub(t, x, s), y, u), ESub(ESub(t, y, u), x, s)
    if name == "vo_1":
        v, u, s = g.value(size(), []), g.term(size(), [x]), g.term(size(), [])
        return App(v, ESub(u, x, s)), ESub(App(v, u), x, s)
    if name == "vo_2":
        t, s, u = g.term(size(), [x]), g.term(size(), [y]), g.term(size(), [])
        return ESub(t, x, ESub(s, y, u)), ESub(ESub(t, x, s), y, u)
    raise ValueError(f"unknown equation {name!r}")
