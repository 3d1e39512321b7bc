"""Structural equivalence of terms: commutation, exchange and flattening.

The three generating equations are

* ``t[x/s][y/u]  =  t[y/u][x/s]``   if ``x`` not free in ``u`` and ``y`` not free in ``s``
* ``v (u[x/s])   =  (v u)[x/s]``    if ``x`` not free in ``v``
* ``t[x/s[y/u]]  =  t[x/s][y/u]``   if ``y`` not free in ``t``

On well-named terms the side conditions always hold, so every
substitution can be hoisted out of application arguments and substitution
arguments.  What remains is, per scope (the whole term or an abstraction
body), a substitution-free core and an unordered set of substitutions.
Two terms are equivalent iff these scope structures agree up to renaming
of bound names; :func:`vo_key` renders them canonically.
"""

from __future__ import annotations

from .terms import Abs, App, ESub, Var, fv, well_name


def _norm(t):
    """Return ``(core, subs)`` where subs is a list of ``(name, core)``."""
    if isinstance(t, Var):
        return ("v", t.name), []
    if isinstance(t, Abs):
        return ("l", t.var, _scope(t.body)), []
    if isinstance(t, App):
        head, _ = _norm(t.fun)
        arg, subs = _norm(t.arg)
        return ("a", head, arg), subs
    if isinstance(t, ESub):
        body, bsubs = _norm(t.body)
        defn, dsubs = _norm(t.defn)
        return body, bsubs + [(t.var, defn)] + dsubs
    raise TypeError(f"not a kernel term: {t!r}")


def _scope(t):
    core, subs = _norm(t)
    return ("s", core, dict(subs))


class _Encoder:
    def __init__(self, free):
        self.free = free
        self.num = {}
        self.out = []

    def fork(self):
        e = _Encoder(self.free)
        e.num = dict(self.num)
        e.out = list(self.out)
        return e

    def name(self, x):
        if x in self.free:
            return "'" + x
        if x not in self.num:
            self.num[x] = len(self.num)
        return f"#{self.num[x]}"

    def core(self, c):
        tag = c[0]
        if tag == "v":
            self.out.append(self.name(c[1]))
        elif tag == "a":
            self.out.append("(")
            self.core(c[1])
            self.out.append(" ")
            self.core(c[2])
            self.out.append(")")
        else:
            self.out.append("\\" + self.name(c[1]) + ".")
            self.scope(c[2])

    def sub(self, x, defn, pending):
        self.out.append("[" + self.name(x) + "/")
        self.core(defn)
        self.out.append("]")
        del pending[x]
        self.drain(pending)

    def drain(self, pending):
        while True:
            ready = [x for x in pending if x in self.num]
            if not ready:
                return
            x = min(ready, key=self.num.__getitem__)
            self.sub(x, pending[x], pending)

    def scope(self, s):
        _, core, subs = s
        pending = dict(subs)
        self.out.append("{")
        self.core(core)
        self.drain(pending)
        self.garbage(pending)
        self.out.append("}")

    def garbage(self, pending):
        """Emit substitutions nothing refers to.

        Only substitutions that no other pending one uses are candidates;
        emitting one numbers what it uses, so those follow by ``drain``.
        Candidates compare by what they would emit next; exact ties are
        resolved by trying each and keeping the smallest output.
        """
        while pending:
            used = set()
            for c in pending.values():
                used |= _names(c)
            top = [x for x in sorted(pending) if x not in used]
            frags = {}
            for x in top:
                trial = self.fork()
                trial.sub(x, pending[x], dict(pending))
                frags[x] = "".join(trial.out[len(self.out):])
            best = min(frags.values())
            tied = [x for x in top if frags[x] == best]
            if len(tied) == 1:
                self.sub(tied[0], pending[tied[0]], pending)
                continue
            runs = []
            for x in tied:
                trial = self.fork()
                rest = dict(pending)
                trial.sub(x, rest[x], rest)
                trial.garbage(rest)
                runs.append(("".join(trial.out[len(self.out):]), trial))
            out, trial = min(runs, key=lambda r: r[0])
            self.out.append(out)
            self.num = trial.num
            return


def _names(c):
    """Every variable name occurring in a core, nested scopes included."""
    tag = c[0]
    if tag == "v":
        return {c[1]}
    if tag == "a":
        return _names(c[1]) | _names(c[2])
    _, core, subs = c[2]
    out = _names(core)
    for d in subs.values():
        out |= _names(d)
    return out


def vo_key(t):
    """Canonical string of the structural-equivalence class of ``t``."""
    t = well_name(t)
    enc = _Encoder(fv(t))
    enc.scope(_scope(t))
    return "".join(enc.out)


def vo_equiv(t, s):
    return vo_key(t) == vo_key(s)
