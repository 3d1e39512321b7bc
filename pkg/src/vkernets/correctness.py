"""Correctness criterion, kingdoms, subnets and readback of nets to terms.

The correction graph of a net collapses every outermost par-box into a
single ``box`` link from the par-link's m-node to the free variables of
the box (its variable excluded).  A net is correct when its correction
graph has the root as only e-source, has no directed cycle, and every box
interior is itself correct.

Readback works on subsets of the links of one net, so the recursion never
rebuilds net objects: free weakenings are stripped, then the net is split
at a free substitution, and otherwise the root link decides the term
constructor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NotAnInternalENode, NotCorrect, NotFreeSubstitution
from .nets import (BANG, BOX, DER, PAR, TENSOR, WEAK, Link, Violation, box_free_vars, box_interior, link_key, sub_net,
                   validate_net)
from .terms import Abs, App, ESub, FreshNames, Var, well_name


def _top_links(G, L):
    inner = set()
    for l in L:
        if l.kind == PAR:
            inner |= G.boxes[l]
    return [l for l in L if l not in inner]


# ---------------------------------------------------------------------------
# Correction graph and criterion


@dataclass
class CorrectionGraph:
    nodes: dict
    links: list
    root: str

    def successors(self):
        succ = {n: set() for n in self.nodes}
        for l in self.links:
            for s in l.sources:
                succ[s].update(l.targets)
        return succ

    def e_sources(self):
        entered = {t for l in self.links for t in l.targets}
        return sorted(n for n, ty in self.nodes.items() if ty == "e" and n not in entered)


def _collapse(G, L):
    links = []
    for l in _top_links(G, L):
        if l.kind == PAR:
            links.append(Link(BOX, (l.sources[0],), tuple(sorted(box_free_vars(G, l) - {l.sources[1]}))))
        else:
            links.append(l)
    nodes = {n: G.nodes[n] for l in links for n in l.nodes}
    return links, nodes


def correction_graph(G):
    links, nodes = _collapse(G, G.links)
    nodes.setdefault(G.root, "e")
    return CorrectionGraph(dict(sorted(nodes.items())), sorted(links, key=link_key), G.root)


def _find_cycle(succ):
    """Some directed cycle as a node list, or ``None``."""
    color = {}
    for start in sorted(succ):
        if start in color:
            continue
        stack = [(start, iter(sorted(succ[start])))]
        color[start] = 1
        path = [start]
        while stack:
            n, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[n] = 2
                stack.pop()
                path.pop()
            elif color.get(nxt) == 1:
                return path[path.index(nxt):] + [nxt]
            elif nxt not in color:
                color[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(sorted(succ.get(nxt, ())))))
    return None


@dataclass
class CorrectnessReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        if self.ok:
            return "correct"
        return "\n".join(map(str, self.violations))

    def to_json(self):
        return {"ok": self.ok, "violations": [
            {"condition": v.condition, "where": v.where, "message": v.message} for v in self.violations]}


def _check(G, out, prefix):
    H = correction_graph(G)
    sources = H.e_sources()
    if sources != [G.root]:
        out.append(Violation(prefix + "Source", ",".join(sources) or "-",
                             f"e-sources of the correction graph are {sources}, expected only the root {G.root}"))
    cycle = _find_cycle(H.successors())
    if cycle:
        out.append(Violation(prefix + "Acyclicity", " -> ".join(cycle), "the correction graph has a cycle"))
    for l in H.links:
        if l.kind == BOX:
            p = next(q for q in G.boxes if q.sources[0] == l.sources[0] and not G.containers[q])
            _check(box_interior(G, p), out, f"{prefix}Recursive correctness/{p}/")


def check_correct(G):
    """Source, acyclicity and recursive correctness; returns a report."""
    report = CorrectnessReport()
    _check(G, report.violations, "")
    return report


def is_correct(G):
    return check_correct(G).ok


# ---------------------------------------------------------------------------
# Kingdoms and subnets


def _head_links(G, a, L=None):
    h = G.out_link(a)
    if h is None or (L is not None and h not in L):
        raise NotCorrect(f"m-node {a} has no outgoing link")
    if h.kind == DER:
        return {h}
    if h.kind == PAR:
        return {h} | G.boxes[h]
    raise NotCorrect(f"unexpected {h.kind} link below m-node {a}")


def _kingdom(G, x):
    out = set()
    while True:
        l = G.out_link(x)
        if l is None or l.kind not in (BANG, TENSOR):
            raise NotAnInternalENode(f"{x} is not the source of a bang or tensor link")
        out.add(l)
        out |= _head_links(G, l.targets[0])
        if l.kind == BANG:
            return frozenset(out)
        x = l.targets[1]


def kingdom(G, x):
    """Links of the smallest subnet of ``G`` rooted at the e-node ``x``."""
    if G.nodes.get(x) != "e" or x in G.free_vars:
        raise NotAnInternalENode(f"{x} is not an internal e-node")
    return _kingdom(G, x)


def kingdom_net(G, x):
    return sub_net(G, kingdom(G, x), x)


def subnet_root(G, H):
    """The unique e-source of the link set ``H``, or ``None``."""
    entered = {t for l in H for t in l.targets}
    roots = {s for l in H for s in l.sources if G.nodes[s] == "e" and s not in entered}
    # a box variable is a source of its par-link but never a root
    roots -= {l.sources[1] for l in H if l.kind == PAR}
    return roots.pop() if len(roots) == 1 else None


def is_subnet(G, H, root=None):
    """Whether the link set ``H`` is a subnet of the correct net ``G``."""
    H = frozenset(H)
    if not H or not H <= G.links:
        return False
    if root is None:
        root = subnet_root(G, H)
        if root is None:
            return False
    # closure conditions first, they are cheap and reject most candidates
    internal = {s for l in H for s in l.sources if s != root and G.nodes[s] == "e"}
    for n in internal:
        if any(l not in H for l in G.incoming(n)):
            return False
    for p in G.boxes:
        if p in H and not G.boxes[p] <= H:
            return False
        if box_free_vars(G, p) & internal and not (G.boxes[p] | {p}) <= H:
            return False
    S = sub_net(G, H, root)
    return not validate_net(S) and is_correct(S)


# ---------------------------------------------------------------------------
# Substitutions


@dataclass(frozen=True)
class SubstitutionNode:
    node: str
    classification: str  # "free", "ground" or "non-ground"


def _substitutions(G, L):
    """Classify substitutions of the link subset ``L``; returns ``{node: class}``."""
    top = _top_links(G, L)
    entered_dw = {l.targets[0] for l in L if l.kind in (DER, WEAK)}
    # box variables source their par-link but are bound, not substitutions
    subs = sorted(n for n in entered_dw
                  if G.out_link(n) in L and G.out_link(n).kind in (BANG, TENSOR))
    if not subs:
        return {}
    top_set = set(top)
    ground = {n for n in subs if G.out_link(n) in top_set}
    succ = {}
    for l in top:
        if l.kind == PAR:
            tgts = box_free_vars(G, l) - {l.sources[1]}
            succ.setdefault(l.sources[0], set()).update(tgts)
        else:
            for s in l.sources:
                succ.setdefault(s, set()).update(l.targets)
    out = {}
    for n in subs:
        if n not in ground:
            out[n] = "non-ground"
            continue
        seen, stack, free = {n}, [n], True
        while stack and free:
            for m in succ.get(stack.pop(), ()):
                if m in ground and m != n:
                    free = False
                    break
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        out[n] = "free" if free else "ground"
    return out


def classify_substitutions(G):
    return [SubstitutionNode(n, c) for n, c in sorted(_substitutions(G, G.links).items())]


def free_substitutions(G):
    return sorted(n for n, c in _substitutions(G, G.links).items() if c == "free")


def split_free_substitution(G, x):
    """Split ``G`` into the kingdom of ``x`` and the rest, where ``x`` becomes free."""
    if _substitutions(G, G.links).get(x) != "free":
        raise NotFreeSubstitution(f"{x} is not a free substitution")
    K = _kingdom(G, x)
    return sub_net(G, K, x), sub_net(G, G.links - K, G.root)


# ---------------------------------------------------------------------------
# Sequentialization

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")


class _Reader:
    def __init__(self, G):
        self.G = G

    def read(self, L, r):
        G = self.G
        X = set()
        weak = [l for l in L if l.kind == WEAK and G.out_link(l.targets[0]) not in L]
        if weak:
            L = L - set(weak)
            X = {w.targets[0] for w in weak}
        subs = _substitutions(G, L)
        free = sorted(n for n, c in subs.items() if c == "free")
        if free:
            x = free[0]
            K = _kingdom(G, x)
            if not K <= L:
                raise NotCorrect(f"kingdom of {x} escapes the net")
            body, xb = self.read(L - K, r)
            defn, xd = self.read(K, x)
            return ESub(body, x, defn), X | (xb - {x}) | xd
        if "ground" in subs.values():
            raise NotCorrect("ground substitutions without a free one")
        l = G.out_link(r)
        if l is None or l not in L:
            raise NotCorrect(f"{r} has no outgoing link")
        if l.kind == BANG:
            v, used = self.value(L, l.targets[0])
            if L - used - {l}:
                raise NotCorrect("links left over below a value")
            return v, X
        if l.kind == TENSOR:
            v, used = self.value(L, l.targets[0])
            arg, xa = self.read(L - used - {l}, l.targets[1])
            return App(v, arg), X | xa
        raise NotCorrect(f"root {r} is the source of a {l.kind} link")

    def value(self, L, a):
        G = self.G
        h = G.out_link(a)
        if h is None or h not in L:
            raise NotCorrect(f"m-node {a} has no outgoing link")
        if h.kind == DER:
            return Var(h.targets[0]), {h}
        if h.kind == PAR:
            x = h.sources[1]
            body, xb = self.read(G.boxes[h], h.targets[0])
            if xb - {x}:
                raise NotCorrect(f"box of {h} closes on weakenings {sorted(xb - {x})}")
            return Abs(x, body), {h} | G.boxes[h]
        raise NotCorrect(f"unexpected {h.kind} link below m-node {a}")


def _tidy_names(t, X):
    """Give identifier names to variables read back from internal node ids."""
    names = FreshNames(set(X))
    ids = {}

    def nm(x):
        if _IDENT.match(x):
            return x
        if x not in ids:
            ids[x] = names.fresh("v")
        return ids[x]

    def go(t):
        if isinstance(t, Var):
            return Var(nm(t.name))
        if isinstance(t, Abs):
            return Abs(nm(t.var), go(t.body))
        if isinstance(t, App):
            return App(go(t.fun), go(t.arg))
        return ESub(go(t.body), nm(t.var), go(t.defn))

    def collect(t):
        if isinstance(t, Var):
            names.used.add(t.name)
        elif isinstance(t, Abs):
            names.used.add(t.var)
            collect(t.body)
        elif isinstance(t, App):
            collect(t.fun)
            collect(t.arg)
        else:
            names.used.add(t.var)
            collect(t.body)
            collect(t.defn)

    collect(t)
    return go(t)


def sequentialize(G):
    """Read a correct net back as ``(t, X)`` with ``translate(t, X)`` isomorphic to ``G``.

    Raises :class:`NotCorrect` carrying the violation report otherwise.
    """
    report = CorrectnessReport(validate_net(G))
    if report.ok:
        report = check_correct(G)
    if not report.ok:
        raise NotCorrect(report)
    t, X = _Reader(G).read(G.links, G.root)
    t = _tidy_names(t, X)
    return well_name(t, X), frozenset(X)


readback = sequentialize
