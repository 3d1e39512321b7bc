"""Running terms and their nets side by side.

The translation records, for every redex position of the term, the cut
it creates in the net (:func:`translate_annotated`).  That map is the
bijection between redexes and cuts.  To fire the partner of a redex in a
net that is only isomorphic to the translation (as happens after a few
steps), the cut node is carried along an isomorphism.
"""

from __future__ import annotations

import json
import random
from collections import Counter, deque
from dataclasses import dataclass, field

from .correctness import check_correct
from .dynamics import find_cuts, step_net
from .errors import BijectionMismatch, DivergenceDetected
from .iso import canonical_key, iso_mapping, net_iso
from .nets import misplaced_weakenings, serialize, validate_net
from .terms import alpha_key, choose_redex, develop, find_redexes, fv, residuals, show, step
from .translation import translate, translate_annotated


@dataclass
class RedexBijection:
    pairs: list
    net: object = None

    def __len__(self):
        return len(self.pairs)

    def kinds(self):
        return Counter(r.kind for r, _ in self.pairs)


def _pair_up(t, G, cuts_at, X, mapping=None):
    net_cuts = {c.node: c for c in find_cuts(G)}
    pairs, used = [], set()
    for r in find_redexes(t):
        kind, node = cuts_at[r.path]
        if mapping is not None:
            node = mapping[node]
        c = net_cuts.get(node)
        if c is None or c.kind != r.kind or node in used:
            raise BijectionMismatch(f"redex {r} of {show(t)} has no partner cut",
                                    {"term": show(t), "X": sorted(X), "net": serialize(G)})
        used.add(node)
        pairs.append((r, c))
    if len(pairs) != len(net_cuts):
        extra = sorted(set(net_cuts) - used)
        raise BijectionMismatch(f"cuts at {extra} do not come from redexes of {show(t)}",
                                {"term": show(t), "X": sorted(X), "net": serialize(G)})
    return pairs


def redex_bijection(t, X=()):
    """Pair every redex of ``t`` with the cut it becomes in ``translate(t, X)``."""
    G, cuts_at = translate_annotated(t, X)
    return RedexBijection(_pair_up(t, G, cuts_at, X), G)


def _align(t, N, X):
    """Translation cuts of ``t`` and a renaming of its translation onto ``N``."""
    G, cuts_at = translate_annotated(t, X)
    m = iso_mapping(G, N)
    if m is None:
        raise DivergenceDetected(f"net is not the translation of {show(t)}",
                                 {"term": show(t), "X": sorted(X), "net": serialize(N)})
    return cuts_at, m


def mirror(t, N, X):
    """Bijection between redexes of ``t`` and cuts of ``N``, which must be
    isomorphic to ``translate(t, X)``."""
    cuts_at, m = _align(t, N, X)
    return RedexBijection(_pair_up(t, N, cuts_at, X, m), N)


def _check_net(N, t, X, where):
    problems = [str(v) for v in validate_net(N)]
    if not problems:
        problems = [str(v) for v in check_correct(N).violations]
    problems += [f"misplaced weakening {w}" for w in misplaced_weakenings(N)]
    if problems:
        raise DivergenceDetected(f"{where}: net breaks an invariant: {problems[0]}",
                                 {"term": show(t), "X": sorted(X), "net": serialize(N)})


def _step_both(t, N, r, c, X):
    """Fire ``r`` and ``c``; returns the reducts and their alignment."""
    t2 = step(t, r, avoid=X)
    N2 = step_net(N, c)
    G2, cuts_at = translate_annotated(t2, X)
    m = iso_mapping(G2, N2)
    if m is None:
        raise DivergenceDetected(f"firing {r} / {c} on {show(t)} breaks the correspondence",
                                 {"term": show(t), "after": show(t2), "X": sorted(X),
                                  "net": serialize(N), "net_after": serialize(N2)})
    return t2, N2, (cuts_at, m)


def effective_weakenings(t, X):
    """Names a co-simulation keeps in the interface: ``X`` and ``fv(t)``."""
    return frozenset(X) | fv(t)


# ---------------------------------------------------------------------------
# Co-simulation


@dataclass
class CoSimStep:
    index: int
    redex: str
    cut: str
    kind: str
    term_before: str
    term_after: str
    links_before: int
    links_after: int
    iso: bool = True

    def to_json(self):
        return json.dumps(self.__dict__, ensure_ascii=False, sort_keys=True)


@dataclass
class CoSimTrace:
    term: object
    net: object
    X: frozenset
    steps: list = field(default_factory=list)
    normal: bool = False

    @property
    def counts(self):
        return Counter(s.kind for s in self.steps)

    def json_lines(self):
        lines = [s.to_json() for s in self.steps]
        lines.append(json.dumps({"final_term": show(self.term), "normal": self.normal,
                                 "steps": len(self.steps), "m": self.counts["m"], "e": self.counts["e"],
                                 "final_links": len(self.net.links)}, sort_keys=True))
        return "\n".join(lines)


def cosimulate(t, X=(), strategy="leftmost", fuel=1000, seed=0, check=True):
    """Reduce ``t`` and its net in lockstep, checking isomorphism after each step.

    The net keeps ``X`` together with the free variables of the initial
    term as its interface, so erased variables survive as weakenings.
    """
    X = effective_weakenings(t, X)
    rng = random.Random(seed)
    N = translate(t, X)
    if check:
        _check_net(N, t, X, "translation")
    trace = CoSimTrace(t, N, X)
    cuts_at, m = _align(t, N, X)
    for i in range(fuel):
        pairs = _pair_up(t, N, cuts_at, X, m)
        if not pairs:
            trace.normal = True
            break
        r = choose_redex([r for r, _ in pairs], strategy, rng)
        c = dict(pairs)[r]
        t2, N2, (cuts_at, m) = _step_both(t, N, r, c, X)
        if check:
            _check_net(N2, t2, X, f"step {i + 1}")
        trace.steps.append(CoSimStep(i + 1, str(r), str(c), r.kind, show(t), show(t2),
                                     len(N.links), len(N2.links)))
        t, N = t2, N2
    else:
        trace.normal = not find_redexes(t)
        if trace.normal != (not find_cuts(N)):
            raise DivergenceDetected("one side is normal and the other is not",
                                     {"term": show(t), "net": serialize(N)})
    trace.term, trace.net = t, N
    return trace


def check_one_step(t, X=()):
    """Both directions of the step correspondence at ``t``.

    Every redex, fired on both sides, gives isomorphic results, and every
    cut of the net is the partner of a redex.  Returns the number of
    redexes checked.
    """
    X = effective_weakenings(t, X)
    bij = redex_bijection(t, X)
    for r, c in bij.pairs:
        _step_both(t, bij.net, r, c, X)
    return len(bij.pairs)


# ---------------------------------------------------------------------------
# Local confluence


def _expand(frontier, seen, X, cap):
    nxt = {}
    for key, (s, path) in frontier.items():
        for r in find_redexes(s):
            s2 = step(s, r, avoid=X)
            k2 = alpha_key(s2)
            if k2 not in seen and k2 not in nxt:
                nxt[k2] = (s2, path + [r])
                if len(seen) + len(nxt) > cap:
                    return nxt, False
    return nxt, True


def join_peak(t, r1, r2, X=(), t1=None, t2=None):
    """Close the peak ``r1``/``r2`` of ``t`` by developing residuals.

    ``t1`` and ``t2`` are the one-step reducts if already known.  Returns
    paths from each to a common reduct, or ``None`` when the developments
    disagree.
    """
    t1 = step(t, r1, avoid=X) if t1 is None else t1
    t2 = step(t, r2, avoid=X) if t2 is None else t2
    s1, p1 = develop(t1, residuals(t, r1, [r2], t1), X)
    s2, p2 = develop(t2, residuals(t, r2, [r1], t2), X)
    if alpha_key(s1) != alpha_key(s2):
        return None
    return p1, p2


def join(t1, t2, X=(), depth=4, cap=5000):
    """Paths ``(p1, p2)`` from ``t1`` and ``t2`` to a common reduct, or ``None``.

    Breadth-first search over both reduction trees.
    """
    a = {alpha_key(t1): (t1, [])}
    b = {alpha_key(t2): (t2, [])}
    fa, fb = dict(a), dict(b)
    for _ in range(depth + 1):
        common = sorted(set(a) & set(b), key=lambda k: len(a[k][1]) + len(b[k][1]))
        if common:
            k = common[0]
            return a[k][1], b[k][1]
        grown = False
        for side, front in ((a, fa), (b, fb)):
            if not front:
                continue
            new, ok = _expand(front, side, X, cap)
            side.update(new)
            front.clear()
            front.update(new)
            grown = grown or bool(new)
            if not ok:
                return None
        if not grown:
            break
    common = set(a) & set(b)
    if common:
        k = min(common, key=lambda k: len(a[k][1]) + len(b[k][1]))
        return a[k][1], b[k][1]
    return None


def _replay(t, N, align, path, X):
    for r in path:
        cuts_at, m = align
        c = dict(_pair_up(t, N, cuts_at, X, m))[r]
        t, N, align = _step_both(t, N, r, c, X)
    return t, N


@dataclass
class ConfluenceReport:
    peaks: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def check_local_confluence(t, X=(), depth=4, nets=True):
    """Join every one-step peak of ``t``, and mirror the joins on the net.

    Returns a :class:`ConfluenceReport`; failures list the offending
    redex pairs.
    """
    X = effective_weakenings(t, X)
    report = ConfluenceReport()
    bij = redex_bijection(t, X) if nets else None
    redexes = [r for r, _ in bij.pairs] if nets else find_redexes(t)
    pairs = dict(bij.pairs) if nets else {}
    first = {}

    def fire(r):
        # one-step reducts are shared by all peaks of a redex
        if r not in first:
            if nets:
                first[r] = _step_both(t, bij.net, r, pairs[r], X)
            else:
                first[r] = (step(t, r, avoid=X), None, None)
        return first[r]

    for i, r1 in enumerate(redexes):
        for r2 in redexes[i + 1:]:
            report.peaks += 1
            try:
                u1, N1, a1 = fire(r1)
                u2, N2, a2 = fire(r2)
            except DivergenceDetected as exc:
                report.failures.append((str(r1), str(r2), str(exc)))
                continue
            paths = join_peak(t, r1, r2, X, u1, u2) or join(u1, u2, X, depth)
            if paths is None:
                report.failures.append((str(r1), str(r2), "no common reduct"))
                continue
            if not nets:
                continue
            try:
                _, M1 = _replay(u1, N1, a1, paths[0], X)
                _, M2 = _replay(u2, N2, a2, paths[1], X)
            except DivergenceDetected as exc:
                report.failures.append((str(r1), str(r2), str(exc)))
                continue
            if not net_iso(M1, M2):
                report.failures.append((str(r1), str(r2), "joined nets are not isomorphic"))
    return report


# ---------------------------------------------------------------------------
# Termination


@dataclass
class ReductionGraph:
    """Reachable states from a start; ``status`` is ``"sn"``, ``"loop"`` or ``"unknown"``."""

    status: str
    states: int
    longest: int | None


def _explore(start, key, successors, limit):
    index = {key(start): 0}
    states = [start]
    edges = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        succ = []
        for s in successors(states[i]):
            k = key(s)
            if k not in index:
                if len(states) >= limit:
                    return ReductionGraph("unknown", len(states), None)
                index[k] = len(states)
                states.append(s)
                queue.append(index[k])
            succ.append(index[k])
        edges.append(succ)
    # longest path by memoised DFS; a back edge means a loop
    longest = {}
    state = {}
    for root in range(len(states)):
        if root in longest:
            continue
        stack = [(root, iter(edges[root]))]
        state[root] = 1
        while stack:
            n, it = stack[-1]
            m = next(it, None)
            if m is None:
                longest[n] = max((longest[c] + 1 for c in edges[n]), default=0)
                state[n] = 2
                stack.pop()
            elif state.get(m) == 1:
                return ReductionGraph("loop", len(states), None)
            elif m not in state:
                state[m] = 1
                stack.append((m, iter(edges[m])))
    return ReductionGraph("sn", len(states), longest[0])


def term_reduction_graph(t, X=(), limit=2000):
    X = effective_weakenings(t, X)
    return _explore(t, alpha_key, lambda s: [step(s, r, avoid=X) for r in find_redexes(s)], limit)


def net_reduction_graph(G, limit=2000):
    return _explore(G, canonical_key, lambda N: [step_net(N, c) for c in find_cuts(N)], limit)
