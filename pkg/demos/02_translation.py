"""Terms become nets with par-boxes.

Each variable occurrence gives a dereliction, each abstraction a box
closed by a par-link, each application a tensor, and an explicit
substitution just plugs the value's net into the variable.
"""
from collections import Counter

from vkernets.nets import export_dot, level, serialize, validate_net
from vkernets.terms import parse_term
from vkernets.translation import translate

for src in ["x", r"\x. x", "x y", r"(x x)[x/\y. y]", r"\x. \y. x y"]:
    G = translate(parse_term(src))
    kinds = Counter(l.kind for l in G.links)
    depth = max((level(G, l) for l in G.links), default=0)
    print(f"{src:18} links={len(G.links):2} {dict(kinds)}  deepest level={depth}  valid={validate_net(G) == []}")

# an unused variable can be kept on the interface with a weakening
G = translate(parse_term("x"), {"y"})
print("\nx with y weakened:", sorted(l.kind for l in G.links))

text = serialize(translate(parse_term("x y")))
print(f"\nJSON for x y: {len(text)} characters, first line {text.splitlines()[0]!r}")
print("\nDOT for \\x. x (first lines):")
print("\n".join(export_dot(translate(parse_term(r"\x. x"))).splitlines()[:6]))
