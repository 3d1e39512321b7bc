"""Kernel terms: parsing, redexes and small-step reduction.

Run with ``python3 demos/01_terms.py``.
"""
from vkernets.terms import find_redexes, kernelize, normalize, parse_term, show, step

t = parse_term(r"(\x. x x) (\y. y)")
print("term:        ", show(t))

# an m-step turns the beta redex into an explicit substitution
while True:
    rs = find_redexes(t)
    if not rs:
        break
    r = rs[0]
    t = step(t, r)
    print(f"{r.kind}-step ->    ", show(t))

# applications with a non-value head are named first
u = parse_term("(f a) b", extended=True)
print("\nkernelized:  ", show(kernelize(u)))

# a term that never stops, cut off by the fuel limit
omega = parse_term(r"(\x. x x) (\x. x x)")
out = normalize(omega, fuel=20)
print("omega after 20 steps:", type(out).__name__, dict(out.steps))
