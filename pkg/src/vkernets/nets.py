"""Hypergraph nets with boxes on par-links.

A net is a directed hypergraph whose nodes are typed ``e`` (exponential)
or ``m`` (multiplicative) and whose links are drawn from five kinds.
Orientation follows the syntax tree of the represented term: the root is
at the top, free variables at the bottom.

=========  ==============  =================  ===============
kind       sources         targets            principal node
=========  ==============  =================  ===============
``bang``   ``(e,)``        ``(m,)``           the e-source
``der``    ``(m,)``        ``(e,)``           the e-target
``weak``   ``()``          ``(e,)``           the e-target
``tensor`` ``(e,)``        ``(m, e)``         the m-target
``par``    ``(m, e)``      ``(e,)``           the m-source
=========  ==============  =================  ===============

For a par-link the second source is the variable bound by the link and
the target is the root of its box.  Contraction and cut are implicit: an
e-node entered by several der-links is a contraction, and a node where an
incoming and an outgoing link are both principal is a cut.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from operator import attrgetter
from functools import cached_property
from itertools import combinations

from .errors import FormatError

BANG, DER, WEAK, TENSOR, PAR = "bang", "der", "weak", "tensor", "par"
BOX = "box"  # collapsed par-box, correction graphs only

KINDS = (BANG, DER, WEAK, TENSOR, PAR)

SIGNATURES = {
    BANG: (("e",), ("m",)),
    DER: (("m",), ("e",)),
    WEAK: ((), ("e",)),
    TENSOR: (("e",), ("m", "e")),
    PAR: (("m", "e"), ("e",)),
}

link_key = attrgetter("kind", "sources", "targets")

SYMBOLS = {BANG: "!", DER: "d", WEAK: "w", TENSOR: "⊗", PAR: "⅋", BOX: "□"}


@dataclass(frozen=True, order=True)
class Link:
    kind: str
    sources: tuple
    targets: tuple

    def __post_init__(self):
        # links are dictionary keys everywhere; hash once
        object.__setattr__(self, "_hash", hash((self.kind, self.sources, self.targets)))

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        # string hashes differ between processes, so never pickle _hash
        return Link, (self.kind, self.sources, self.targets)

    @property
    def principal(self):
        if self.kind in (BANG, PAR):
            return self.sources[0]
        if self.kind in (DER, WEAK, TENSOR):
            return self.targets[0]
        return None

    @property
    def nodes(self):
        return self.sources + self.targets

    def rename(self, mapping):
        return Link(self.kind,
                    tuple(mapping.get(n, n) for n in self.sources),
                    tuple(mapping.get(n, n) for n in self.targets))

    def __str__(self):
        return f"{SYMBOLS.get(self.kind, self.kind)}({','.join(self.sources)}->{','.join(self.targets)})"


@dataclass(frozen=True)
class ParBox:
    owner: Link
    members: frozenset

    @property
    def variable(self):
        return self.owner.sources[1]

    @property
    def root(self):
        return self.owner.targets[0]


@dataclass
class Net:
    """An immutable net; build new ones rather than mutating fields.

    ``boxes`` maps every par-link to the set of links of its box.
    """

    nodes: dict
    links: frozenset
    boxes: dict
    root: str
    free_vars: frozenset

    @classmethod
    def build(cls, links, boxes, root, nodes=None):
        """Assemble a net, inferring node types and free variables."""
        links = frozenset(links)
        types = {}
        for l in links:
            srcs, tgts = SIGNATURES[l.kind]
            for n, ty in zip(l.sources + l.targets, srcs + tgts):
                types[n] = ty
        if nodes:
            for n, ty in nodes.items():
                types.setdefault(n, ty)
        types.setdefault(root, "e")
        has_out = {s for l in links for s in l.sources}
        fvs = frozenset(n for n, ty in types.items() if ty == "e" and n not in has_out and n != root)
        return cls(dict(sorted(types.items())), links,
                   {p: frozenset(m) for p, m in boxes.items()}, root, fvs)

    # -- indices -----------------------------------------------------------

    @cached_property
    def out_links(self):
        out = {}
        for l in self.links:
            for s in l.sources:
                out.setdefault(s, []).append(l)
        return out

    @cached_property
    def in_links(self):
        inc = {}
        for l in sorted(self.links, key=link_key):
            for t in l.targets:
                inc.setdefault(t, []).append(l)
        return inc

    def out_link(self, n):
        ls = self.out_links.get(n)
        return ls[0] if ls else None

    def incoming(self, n):
        return self.in_links.get(n, [])

    @cached_property
    def containers(self):
        """Link -> frozenset of par-links whose box contains it."""
        acc = {l: set() for l in self.links}
        for p, members in self.boxes.items():
            for l in members:
                if l in acc:
                    acc[l].add(p)
        return {l: frozenset(ps) for l, ps in acc.items()}

    @cached_property
    def box_nodes(self):
        return {p: frozenset(n for l in m for n in l.nodes) for p, m in self.boxes.items()}

    @cached_property
    def _innermost(self):
        inner = {}
        # visiting larger boxes first leaves each link with its smallest box
        for p in sorted(self.boxes, key=lambda p: -len(self.boxes[p])):
            for l in self.boxes[p]:
                inner[l] = p
        return inner

    def innermost_box(self, l):
        return self._innermost.get(l)

    def par_boxes(self):
        return [ParBox(p, self.boxes[p]) for p in sorted(self.boxes)]

    @property
    def e_nodes(self):
        return [n for n, ty in self.nodes.items() if ty == "e"]

    def __repr__(self):
        return f"Net(root={self.root!r}, links={len(self.links)}, boxes={len(self.boxes)}, fv={sorted(self.free_vars)})"


def sub_net(G, links, root):
    """The net induced by a subset of ``G``'s links, rooted at ``root``."""
    links = frozenset(links)
    boxes = {p: G.boxes[p] for p in links if p.kind == PAR and p in G.boxes}
    types = {n: G.nodes[n] for l in links for n in l.nodes}
    types.setdefault(root, G.nodes.get(root, "e"))
    has_out = {s for l in links for s in l.sources}
    fvs = frozenset(n for n, ty in types.items() if ty == "e" and n not in has_out and n != root)
    return Net(dict(sorted(types.items())), links, boxes, root, fvs)


def box_interior(G, par):
    return sub_net(G, G.boxes[par], par.targets[0])


def box_free_vars(G, p):
    """Free variables of the box of ``p``, its own variable included."""
    cache = G.__dict__.setdefault("_box_fv", {})
    if p not in cache:
        members = G.boxes[p]
        cache[p] = frozenset(
            n for l in members for n in l.targets
            if G.nodes.get(n) == "e" and G.out_link(n) not in members and n != p.targets[0])
    return cache[p]


# ---------------------------------------------------------------------------
# Well-formedness


@dataclass(frozen=True)
class Violation:
    condition: str
    where: str
    message: str

    def __str__(self):
        return f"{self.condition} at {self.where}: {self.message}"


def _local_conditions(G, prefix=""):
    """Root, Conclusions, Multiplicative and Exponential conditions."""
    out = []
    v = lambda cond, where, msg: out.append(Violation(prefix + cond, str(where), msg))
    if G.root not in G.nodes or G.nodes[G.root] != "e":
        v("Root", G.root, "root is not an e-node of the net")
    elif G.incoming(G.root):
        v("Root", G.root, "root has incoming links")
    targets = {n for n, ty in G.nodes.items() if ty == "e" and not G.out_links.get(n)} - {G.root}
    if set(G.free_vars) != targets:
        v("Conclusions", ",".join(sorted(set(G.free_vars) ^ targets)),
          "free variables differ from the nodes without outgoing links")
    for y in sorted(targets):
        bad = [l for l in G.incoming(y) if l.kind not in (DER, WEAK)]
        if bad:
            v("Conclusions", y, f"free variable is the target of {bad[0].kind}")
    for n, ty in G.nodes.items():
        ins, outs = G.incoming(n), G.out_links.get(n, [])
        if ty == "m":
            if len(ins) != 1 or len(outs) != 1:
                v("Multiplicative", n, f"{len(ins)} incoming and {len(outs)} outgoing links")
        else:
            if len(outs) > 1:
                v("Exponential", n, f"{len(outs)} outgoing links")
            if len(ins) > 1 and any(l.kind != DER for l in ins):
                v("Exponential", n, "contracted links are not all derelictions")
            if not ins and not outs:
                v("Exponential", n, "isolated e-node")
    return out


def validate_net(G):
    """Check every net condition; an empty list means ``G`` is a net."""
    out = []
    for l in sorted(G.links, key=link_key):
        sig = SIGNATURES.get(l.kind)
        if sig is None:
            out.append(Violation("Typing", str(l), f"unknown link kind {l.kind!r}"))
            continue
        if len(l.sources) != len(sig[0]) or len(l.targets) != len(sig[1]):
            out.append(Violation("Typing", str(l), "wrong arity"))
            continue
        for n, ty in zip(l.nodes, sig[0] + sig[1]):
            if G.nodes.get(n) != ty:
                out.append(Violation("Typing", str(l), f"node {n} should have type {ty}"))
    if out:
        return out
    out.extend(_local_conditions(G))
    pars = {l for l in G.links if l.kind == PAR}
    if set(G.boxes) != pars:
        out.append(Violation("Boxes", "-", "boxes do not correspond one-to-one to par-links"))
        return out
    for p in sorted(pars):
        members = G.boxes[p]
        where = str(p)
        if not members <= G.links or p in members:
            out.append(Violation("Boxes/Subnet", where, "box members must be links of the net, excluding the owner"))
            continue
        B = box_interior(G, p)
        out.extend(Violation("Boxes/" + x.condition, where, x.message) for x in _local_conditions(B))
        x = p.sources[1]
        if x not in B.free_vars:
            out.append(Violation("Boxes/Border", where, f"variable {x} is not a free variable of the box"))
        for y in sorted(B.free_vars - {x}):
            if any(l.kind == WEAK for l in B.incoming(y)):
                out.append(Violation("Boxes/Border", where, f"free variable {y} of the box is weakened"))
        if any(l not in members for l in G.incoming(x)):
            out.append(Violation("Boxes/Border", where, f"variable {x} is the target of a link outside the box"))
        for q in members:
            if q.kind == PAR and not G.boxes[q] <= members:
                out.append(Violation("Boxes/Subnet", where, f"nested box of {q} is not inside the box"))
        for n in B.nodes:
            if n == B.root or n in B.free_vars or B.nodes[n] != "e":
                continue
            if any(l not in members for l in G.incoming(n)):
                out.append(Violation("Boxes/InternalClosure", where, f"internal node {n} is entered from outside"))
    fvs = {p: box_free_vars(G, p) for p in pars}
    for p, q in combinations(sorted(pars), 2):
        mp, mq = G.boxes[p], G.boxes[q]
        if mp <= mq or mq <= mp:
            continue
        if mp & mq:
            out.append(Violation("Boxes/Nesting", f"{p} / {q}", "boxes share links without being nested"))
            continue
        shared = G.box_nodes[p] & G.box_nodes[q]
        if shared and not shared <= (fvs[p] & fvs[q]):
            out.append(Violation("Boxes/Nesting", f"{p} / {q}", "boxes overlap beyond free variables"))
    return out


def is_net(G):
    return not validate_net(G)


# ---------------------------------------------------------------------------
# Levels and weakenings


def level(G, item):
    """Box depth of a link or node; a par-link is outside its own box."""
    if isinstance(item, Link):
        return len(G.containers[item])
    holders = [p for p, ns in G.box_nodes.items() if item in ns]
    depth = {}
    for p in sorted(holders, key=lambda p: len(G.boxes[p])):
        inner = [depth[q] for q in depth if G.boxes[q] < G.boxes[p]]
        depth[p] = 1 + max(inner, default=0)
    return max(depth.values(), default=0)


def free_weakenings(G):
    """Nodes of weakenings that are free variables of ``G``."""
    return {l.targets[0] for l in G.links if l.kind == WEAK and l.targets[0] in G.free_vars}


def weakening_home(G, y):
    """The boxes a weakening on ``y`` must belong to when pushed out maximally."""
    out = G.out_link(y)
    if out is None:
        return frozenset()
    home = set(G.containers[out])
    if out.kind == PAR and out.sources[1] == y:
        home.add(out)
    return frozenset(home)


def misplaced_weakenings(G):
    """Weakenings not at the outermost position allowed by the box borders."""
    return sorted(l for l in G.links
                  if l.kind == WEAK and G.containers[l] != weakening_home(G, l.targets[0]))


# ---------------------------------------------------------------------------
# Serialization


def to_json(G):
    links = sorted(G.links, key=link_key)
    index = {l: i for i, l in enumerate(links)}
    return {
        "nodes": [{"id": n, "type": ty} for n, ty in sorted(G.nodes.items())],
        "links": [{"kind": l.kind, "sources": list(l.sources), "targets": list(l.targets),
                   "principal": l.principal} for l in links],
        "boxes": [{"owner": index[p], "members": sorted(index[l] for l in G.boxes[p]),
                   "variable": p.sources[1]} for p in sorted(G.boxes)],
        "root": G.root,
        "freeVars": sorted(G.free_vars),
    }


def serialize(G):
    return json.dumps(to_json(G), indent=1, ensure_ascii=False)


def from_json(data):
    try:
        nodes = {}
        for entry in data["nodes"]:
            if entry["type"] not in ("e", "m"):
                raise FormatError(f"bad node type {entry['type']!r}")
            nodes[str(entry["id"])] = entry["type"]
        links = []
        for entry in data["links"]:
            if entry["kind"] not in KINDS:
                raise FormatError(f"bad link kind {entry['kind']!r}")
            l = Link(entry["kind"], tuple(map(str, entry["sources"])), tuple(map(str, entry["targets"])))
            if len(l.sources) != len(SIGNATURES[l.kind][0]) or len(l.targets) != len(SIGNATURES[l.kind][1]):
                raise FormatError(f"wrong arity for {l.kind} link")
            if "principal" in entry and entry["principal"] != l.principal:
                raise FormatError(f"principal node of {l} must be {l.principal}")
            links.append(l)
        boxes = {}
        for entry in data["boxes"]:
            owner = links[entry["owner"]]
            if owner.kind != PAR:
                raise FormatError("box owner must be a par link")
            if entry.get("variable", owner.sources[1]) != owner.sources[1]:
                raise FormatError("box variable must be the second source of its par link")
            boxes[owner] = frozenset(links[i] for i in entry["members"])
        return Net(dict(sorted(nodes.items())), frozenset(links), boxes,
                   str(data["root"]), frozenset(map(str, data["freeVars"])))
    except FormatError:
        raise
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed net: {exc!r}") from None


def deserialize(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FormatError("a net must be a JSON object")
    return from_json(data)


# ---------------------------------------------------------------------------
# Graphviz


def _q(s):
    return '"' + str(s).replace('"', '\\"') + '"'


def export_dot(G, name="net"):
    """DOT text; par-boxes become (nested) clusters."""
    links = sorted(G.links, key=link_key)
    lid = {l: f"l{i}" for i, l in enumerate(links)}
    parent = {p: G.innermost_box(p) for p in G.boxes}
    bid = {p: f"cluster_{i}" for i, p in enumerate(sorted(G.boxes))}
    fvs = {p: box_interior(G, p).free_vars - {p.sources[1]} for p in G.boxes}

    def node_home(n):
        homes = [p for p in G.boxes if n in G.box_nodes[p] and n not in fvs[p]]
        return min(homes, key=lambda p: len(G.boxes[p])) if homes else None

    content = {None: []}
    for p in G.boxes:
        content[p] = []
    for n, ty in G.nodes.items():
        if ty == "e":
            style = "shape=circle, style=filled, fillcolor=\"#bff2f7\", width=0.3"
            if n == G.root:
                style += ", peripheries=2"
            label = n if not n.startswith("#") else ""
            content[node_home(n)].append(f"{_q('n:' + n)} [{style}, label={_q(label)}];")
        else:
            content[node_home(n)].append(f"{_q('n:' + n)} [shape=point, color=\"#8b4513\", width=0.1];")
    for l in links:
        content[G.innermost_box(l)].append(f"{lid[l]} [shape=plaintext, label={_q(SYMBOLS[l.kind])}];")

    lines = [f"digraph {_q(name)} {{", "  rankdir=TB;", "  node [fontname=\"Helvetica\"];"]

    def emit(p, indent):
        pad = "  " * indent
        for stmt in content[p]:
            lines.append(pad + stmt)
        for q in sorted(G.boxes):
            if parent[q] == p:
                lines.append(f"{pad}subgraph {bid[q]} {{")
                lines.append(f"{pad}  label={_q('⅋-box ' + q.sources[1])}; style=rounded; color=gray;")
                emit(q, indent + 1)
                lines.append(f"{pad}}}")

    emit(None, 1)
    for l in links:
        for s in l.sources:
            attr = " [arrowhead=none, penwidth=2]" if s == l.principal else " [arrowhead=none]"
            lines.append(f"  {_q('n:' + s)} -> {lid[l]}{attr};")
        for t in l.targets:
            attr = " [penwidth=2]" if t == l.principal else ""
            lines.append(f"  {lid[l]} -> {_q('n:' + t)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
