"""Isomorphism of nets up to renaming of internal nodes.

Free variables match by name, everything else up to renaming.  The fast
path numbers nodes, links and boxes by a deterministic traversal that
never looks at internal names: from the root, every link is reached
through its unique source, and substitution nodes (which are only entered
by derelictions or weakenings) are scheduled in the order they are first
referenced.  Substitutions nobody references are ordered by the structure
below them, then by colour refinement.  Equal numberings mean isomorphic nets.

The traversal can in principle tie between non-equivalent candidates; in
that case keys may differ for isomorphic nets, so unequal keys fall back
to an exact VF2 check (networkx) whenever cheap invariants agree.
"""

from __future__ import annotations

import heapq
from collections import Counter

import networkx as nx
from networkx.algorithms import isomorphism as nxiso

from .nets import BANG, DER, PAR, TENSOR, WEAK, link_key


def refine_colors(G):
    """Colour refinement: each round a node's colour absorbs the kinds,
    positions and endpoint colours of its links (and the boxes holding
    them); par m-nodes also absorb the links of their box.  Colours are ranks of sorted signatures, so isomorphic nets get
    identical colourings."""
    color = {n: (ty, n if n in G.free_vars else "", n == G.root) for n, ty in G.nodes.items()}
    ranks = {c: i for i, c in enumerate(sorted(set(color.values())))}
    color = {n: ranks[c] for n, c in color.items()}
    links = list(G.links)
    classes = len(ranks)
    while True:
        sig = {n: [] for n in G.nodes}
        for l in links:
            boxes = tuple(sorted(color[p.sources[0]] for p in G.containers[l]))
            ls = (l.kind, boxes, tuple(color[n] for n in l.nodes))
            for pos, n in enumerate(l.nodes):
                sig[n].append((pos, ls))
            # a box also sees its contents, through the m-node of its par-link
            for p in G.containers[l]:
                sig[p.sources[0]].append((-1, ls))
        full = {n: (color[n], tuple(sorted(sig[n]))) for n in G.nodes}
        ranks = {c: i for i, c in enumerate(sorted(set(full.values())))}
        color = {n: ranks[c] for n, c in full.items()}
        if len(ranks) == classes:
            return color
        classes = len(ranks)


class _Numbering:
    def __init__(self, G):
        self.G = G
        self.node = {}
        self.link = {}
        self.box = {}
        self.pending = {}
        self._colors = None
        self.exact = True
        inline = {G.root}
        for l in G.links:
            if l.kind == TENSOR:
                inline.add(l.targets[1])
            elif l.kind == PAR:
                inline.add(l.targets[0])
        self.floating = {}
        for n, ty in G.nodes.items():
            out = G.out_link(n)
            if ty == "e" and out is not None and out.kind in (BANG, TENSOR) and n not in inline:
                self.floating.setdefault(G.innermost_box(out), []).append(n)
        self.weak = {}
        for l in G.links:
            if l.kind == WEAK:
                self.weak.setdefault(G.innermost_box(l), []).append(l)

    def num_node(self, n):
        if n in self.node:
            return False
        self.node[n] = len(self.node)
        return True

    def visit_e(self, n):
        self.num_node(n)
        out = self.G.out_link(n)
        if out is not None:
            self.visit_link(out)

    def visit_m(self, a):
        self.num_node(a)
        out = self.G.out_link(a)
        if out is not None:
            self.visit_link(out)

    def ref(self, y):
        self.num_node(y)
        out = self.G.out_link(y)
        if out is not None and out not in self.link and out.kind in (BANG, TENSOR):
            sec = self.G.innermost_box(out)
            heapq.heappush(self.pending.setdefault(sec, []), (self.node[y], y))

    def visit_link(self, l):
        if l in self.link:
            return
        self.link[l] = len(self.link)
        if l.kind == BANG:
            self.visit_m(l.targets[0])
        elif l.kind == TENSOR:
            self.visit_m(l.targets[0])
            self.visit_e(l.targets[1])
        elif l.kind == PAR:
            self.num_node(l.sources[1])
            self.box[l] = len(self.box)
            self.visit_e(l.targets[0])
            self.section(l)
        else:
            self.ref(l.targets[0])

    def section(self, sec):
        G = self.G
        while True:
            heap = self.pending.get(sec)
            if heap:
                _, y = heapq.heappop(heap)
                out = G.out_link(y)
                if out not in self.link:
                    self.visit_link(out)
                continue
            ws = [w for w in self.weak.get(sec, ()) if w not in self.link and w.targets[0] in self.node]
            if ws:
                for w in sorted(ws, key=lambda w: self.node[w.targets[0]]):
                    self.visit_link(w)
                continue
            garbage = [y for y in self.floating.get(sec, ()) if G.out_link(y) not in self.link]
            if garbage:
                # start from weakened substitutions: what they use is then
                # scheduled through the ordinary references
                top = [y for y in garbage if any(l.kind == WEAK for l in G.incoming(y))]
                y = self.pick(top or garbage)
                self.num_node(y)
                self.visit_link(G.out_link(y))
                continue
            ws = [w for w in self.weak.get(sec, ()) if w not in self.link and w.targets[0] in G.free_vars]
            if ws:
                for w in sorted(ws, key=lambda w: w.targets[0]):
                    self.visit_link(w)
                continue
            return

    def pick(self, candidates):
        if len(candidates) == 1:
            return candidates[0]
        shapes = {y: self.shape(y) for y in candidates}
        best = min(shapes.values())
        tied = [y for y in candidates if shapes[y] == best]
        if len(tied) > 1:
            # shapes only look below a node; colours see the whole net
            colors = self.colors()
            best = min(colors[y] for y in tied)
            tied = sorted(y for y in tied if colors[y] == best)
            if len(tied) > 1:
                self.exact = False
        return tied[0]

    def shape(self, n):
        """Structure below ``n`` with references to numbered nodes."""
        G = self.G
        seen = set()
        local = {}
        parts = []

        def ref(y):
            if y in self.node:
                parts.append(f"#{self.node[y]}")
            elif y in G.free_vars:
                parts.append("'" + y)
            else:
                local.setdefault(y, len(local))
                parts.append(f"?{local[y]}")

        def e(n):
            if n in seen:
                ref(n)
                return
            seen.add(n)
            out = G.out_link(n)
            if out is None:
                ref(n)
            elif out.kind == BANG:
                parts.append("!")
                m(out.targets[0])
            elif out.kind == TENSOR:
                parts.append("T(")
                m(out.targets[0])
                parts.append(",")
                e(out.targets[1])
                parts.append(")")
            else:
                parts.append("?" + out.kind)

        def m(a):
            out = G.out_link(a)
            if out is None:
                parts.append("_")
            elif out.kind == DER:
                parts.append("d")
                ref(out.targets[0])
            elif out.kind == PAR:
                parts.append("P(")
                ref(out.sources[1])
                e(out.targets[0])
                parts.append(")")
            else:
                parts.append("?" + out.kind)

        e(n)
        return "".join(parts)

    def colors(self):
        """Iso-invariant node colours by iterated neighbourhood refinement."""
        if self._colors is None:
            self._colors = refine_colors(self.G)
        return self._colors

    def run(self):
        G = self.G
        self.visit_e(G.root)
        self.section(None)
        leftovers = False
        for n in sorted(G.nodes):
            if n not in self.node:
                leftovers = True
                self.num_node(n)
        for l in sorted(G.links, key=link_key):
            if l not in self.link:
                leftovers = True
                self.link[l] = len(self.link)
        for p in sorted(G.boxes, key=link_key):
            if p not in self.box:
                leftovers = True
                self.box[p] = len(self.box)
        if leftovers:
            self.exact = False
        return self


def canonical_numbering(G):
    cached = G.__dict__.get("_numbering")
    if cached is None:
        cached = _Numbering(G).run()
        G.__dict__["_numbering"] = cached
    return cached


def canonical_key(G):
    """A hashable description of ``G`` that ignores internal node names."""
    cached = G.__dict__.get("_canonical_key")
    if cached is not None:
        return cached
    num = canonical_numbering(G)
    nn, box = num.node, num.box
    nodes = sorted(nn, key=nn.get)
    links = sorted(num.link, key=num.link.get)
    inner = G._innermost
    key = (
        nn.get(G.root),
        tuple((G.nodes[n], n if n in G.free_vars else None) for n in nodes),
        # boxes nest, so the innermost one determines all the others
        tuple((l.kind, tuple([nn[s] for s in l.sources]), tuple([nn[t] for t in l.targets]),
               box[inner[l]] if l in inner else -1) for l in links),
        tuple((num.link[p], box[inner[p]] if p in inner else -1) for p in sorted(box, key=box.get)),
    )
    G.__dict__["_canonical_key"] = key
    return key


def _invariants(G):
    return (
        Counter(G.nodes.values()),
        Counter((l.kind, len(G.containers[l])) for l in G.links),
        tuple(sorted(G.free_vars)),
        tuple(sorted(len(m) for m in G.boxes.values())),
        G.nodes.get(G.root),
    )


def _nx_graph(G):
    D = nx.DiGraph()
    for n, ty in G.nodes.items():
        D.add_node(("n", n), label=(ty, n if n in G.free_vars else None, n == G.root))
    for l in G.links:
        D.add_node(("l", l), label=(l.kind,))
        for i, s in enumerate(l.sources):
            D.add_edge(("n", s), ("l", l), label=("s", i))
        for j, t in enumerate(l.targets):
            D.add_edge(("l", l), ("n", t), label=("t", j))
    for p, members in G.boxes.items():
        D.add_node(("b", p), label=("box",))
        D.add_edge(("b", p), ("l", p), label=("own",))
        for l in members:
            D.add_edge(("b", p), ("l", l), label=("mem",))
    return D


def _vf2(G, H):
    same = lambda a, b: a["label"] == b["label"]
    return nxiso.DiGraphMatcher(_nx_graph(G), _nx_graph(H), node_match=same, edge_match=same)


def iso_mapping(G, H):
    """A node renaming ``G -> H`` witnessing isomorphism, or ``None``."""
    if canonical_key(G) == canonical_key(H):
        ng, nh = canonical_numbering(G), canonical_numbering(H)
        back = {v: k for k, v in nh.node.items()}
        return {n: back[i] for n, i in ng.node.items()}
    if _invariants(G) != _invariants(H):
        return None
    matcher = _vf2(G, H)
    if not matcher.is_isomorphic():
        return None
    return {a[1]: b[1] for a, b in matcher.mapping.items() if a[0] == "n"}


def net_iso(G, H):
    """True iff the nets agree up to renaming of non-free nodes."""
    if canonical_key(G) == canonical_key(H):
        return True
    if _invariants(G) != _invariants(H):
        return False
    if canonical_numbering(G).exact and canonical_numbering(H).exact:
        return False
    return _vf2(G, H).is_isomorphic()
