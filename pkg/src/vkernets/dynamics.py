"""Cut detection and cut elimination on nets.

A cut is a node where an incoming and an outgoing link are both
principal.  Two shapes occur:

* an m-cut: an m-node below a tensor and above a par-link;
* an e-cut: an e-node below derelictions or one weakening and above a
  bang, whose m-target carries ``H``: a dereliction, or a par-link with
  its box.

The m-rule removes the tensor and the par-link and opens the box.  The
dereliction rule gives each dereliction its own copy of ``H``, placed in
the boxes of that dereliction; copies share the free targets of ``H``.
The weakening rule erases ``H`` and leaves one weakening on each target
that nothing else enters any more, pushed out of every box it may leave.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .errors import NotECut, NotMCut, StaleCut
from .nets import BANG, DER, PAR, TENSOR, WEAK, Link, Net, box_free_vars, link_key, weakening_home
from .terms import FreshNames


@dataclass(frozen=True, order=True)
class Cut:
    """``kind`` is ``"m"`` or ``"e"``; ``node`` is the cut node.

    For e-cuts ``consumer`` is ``"der"`` or ``"weak"`` and ``k`` counts
    the consuming links.
    """

    kind: str
    node: str
    consumer: str | None = None
    k: int = 1

    def __str__(self):
        if self.kind == "m":
            return f"m-cut@{self.node}"
        return f"e-cut@{self.node}({self.consumer} x{self.k})"


def _m_cut(G, a):
    ins, out = G.incoming(a), G.out_link(a)
    if G.nodes.get(a) != "m" or len(ins) != 1 or out is None:
        return None
    t = ins[0]
    if t.kind == TENSOR and t.targets[0] == a and out.kind == PAR and out.sources[0] == a:
        return t, out
    return None


def _e_cut(G, x):
    out = G.out_link(x)
    if G.nodes.get(x) != "e" or out is None or out.kind != BANG:
        return None
    ins = G.incoming(x)
    if not ins or any(l.kind not in (DER, WEAK) for l in ins):
        return None
    return out, ins


def find_cuts(G):
    """All cuts of ``G``, sorted by node."""
    cuts = []
    for n, ty in G.nodes.items():
        if ty == "m":
            if _m_cut(G, n):
                cuts.append(Cut("m", n))
        else:
            e = _e_cut(G, n)
            if e:
                ins = e[1]
                cuts.append(Cut("e", n, ins[0].kind, len(ins)))
    return sorted(cuts, key=lambda c: (c.node, c.kind))


def _assemble(entries, root, nodes=None):
    """Build a net from ``(link, containers)`` pairs."""
    boxes = {l: set() for l, _ in entries if l.kind == PAR}
    for l, holders in entries:
        for p in holders:
            boxes[p].add(l)
    return Net.build([l for l, _ in entries], boxes, root, nodes)


def reduce_m(G, c):
    """Multiplicative step: drop the tensor and par-link and open the box."""
    found = _m_cut(G, c.node) if c.kind == "m" else None
    if not found:
        raise NotMCut(f"{c} is not an m-cut")
    t, p = found
    r, s = t.sources[0], t.targets[1]
    x, q = p.sources[1], p.targets[0]
    mapping = {q: r, s: x}
    renamed = {}
    for l in G.links - {t, p}:
        renamed[l] = l.rename(mapping)
    entries = [(renamed[l], {renamed[P] for P in G.containers[l] if P != p}) for l in renamed]
    return _assemble(entries, G.root)


def _head(G, a):
    h = G.out_link(a)
    if h.kind == DER:
        return [h], [h.targets[0]]
    return [h] + sorted(G.boxes[h], key=link_key), sorted(box_free_vars(G, h) - {h.sources[1]})


_HASH = re.compile(r"#(\d+)$")


class _Namer:
    """Fresh names for copied nodes: ``#k`` ids continue the counter,
    variable names get a numeric suffix."""

    def __init__(self, G):
        self.names = FreshNames(G.nodes)
        self.counter = max((int(m.group(1)) for n in G.nodes if (m := _HASH.match(n))), default=0)

    def fresh(self, n):
        if _HASH.match(n):
            self.counter += 1
            new = f"#{self.counter}"
            self.names.used.add(new)
            return new
        return self.names.fresh(n)


def reduce_e_der(G, c):
    """Exponential step on derelictions: one copy of ``H`` per dereliction."""
    found = _e_cut(G, c.node) if c.kind == "e" else None
    if not found or found[1][0].kind != DER:
        raise NotECut(f"{c} is not an e-cut on derelictions")
    bang, ders = found
    a = bang.targets[0]
    H, targets = _head(G, a)
    shared = set(targets)
    Hset = set(H)
    inner_pars = {l for l in H if l.kind == PAR}
    entries = [(l, set(G.containers[l])) for l in G.links - Hset - {bang} - set(ders)]
    namer = _Namer(G)
    for i, d in enumerate(sorted(ders, key=link_key)):
        b = d.sources[0]
        if i == 0:
            mapping = {a: b}
        else:
            mapping = {a: b}
            for l in H:
                for n in l.nodes:
                    if n not in shared and n not in mapping:
                        mapping[n] = namer.fresh(n)
        outer = set(G.containers[d])
        copy = {l: l.rename(mapping) for l in H}
        for l in H:
            holders = {copy[P] for P in G.containers[l] if P in inner_pars}
            entries.append((copy[l], holders | outer))
    return _assemble(entries, G.root)


def reduce_e_weak(G, c):
    """Exponential step on a weakening: erase ``H`` and weaken its targets."""
    found = _e_cut(G, c.node) if c.kind == "e" else None
    if not found or found[1][0].kind != WEAK:
        raise NotECut(f"{c} is not an e-cut on a weakening")
    bang, (w,) = found
    H, targets = _head(G, bang.targets[0])
    gone = set(H) | {bang, w}
    entries = [(l, set(G.containers[l])) for l in G.links - gone]
    rest = _assemble(entries, G.root)
    for y in targets:
        if y in rest.nodes and rest.incoming(y):
            continue  # the weakening would contract with another link
        entries.append((Link(WEAK, (), (y,)), set(weakening_home(rest, y))))
    return _assemble(entries, G.root)


def step_net(G, c):
    """Fire the cut ``c`` of ``G``."""
    if c not in find_cuts(G):
        raise StaleCut(f"{c} is not a cut of the net")
    if c.kind == "m":
        return reduce_m(G, c)
    if c.consumer == DER:
        return reduce_e_der(G, c)
    return reduce_e_weak(G, c)


def normalize_net(G, strategy="leftmost", fuel=1000, seed=0):
    """Fire cuts until none is left; returns ``(net, steps, done)``."""
    rng = random.Random(seed)
    steps = 0
    for _ in range(fuel):
        cuts = find_cuts(G)
        if not cuts:
            return G, steps, True
        if strategy == "leftmost":
            c = cuts[0]
        elif strategy == "rightmost":
            c = cuts[-1]
        else:
            c = rng.choice(cuts)
        G = step_net(G, c)
        steps += 1
    return G, steps, not find_cuts(G)
