"""The term and its net reduce in lockstep.

Every term redex has exactly one partner cut, and firing both keeps the
net isomorphic to the translation of the new term.
"""
from vkernets.bisim import cosimulate, redex_bijection
from vkernets.corpus import delta_term
from vkernets.terms import parse_term, show

t = parse_term(r"(\x. x x) ((\y. y) z)")
for r, c in redex_bijection(t).pairs:
    print(f"redex {r}  <->  cut {c}")

tr = cosimulate(t)
for s in tr.steps:
    print(f"{s.index}. {s.kind}: {s.term_before}  ->  {s.term_after}  ({s.links_before} -> {s.links_after} links)")
print("normal form:", show(tr.term), "| steps:", dict(tr.counts))

# the delta example: both sides stop after a single m-step
tr = cosimulate(delta_term())
print("\ndelta:", show(delta_term()))
print("  ->", show(tr.term), dict(tr.counts))
